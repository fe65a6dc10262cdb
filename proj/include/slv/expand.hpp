#pragma once

#include <map>
#include <set>
#include <string>

#include "slv/ast.hpp"

namespace slv {

/// Expands the program-variable abbreviations: `v` becomes `*&v`, `e->n`
/// becomes `*&e->n`, and `X.n` / `X[i]` become `*&X.n` / `*&X[i]` when X is
/// itself a dereference. Names outside `progvars`, and names shadowed by a
/// quantifier, are left as logical variables.
TermPtr expand(const TermPtr& t, const std::set<std::string>& progvars);
FormulaPtr expand(const FormulaPtr& f, const std::set<std::string>& progvars);
/// Throws SyntaxError if an assignment target does not denote a location.
StmtPtr expand(const StmtPtr& s, const std::set<std::string>& progvars);

/// Simultaneous substitution of terms for logical variables.
using Subst = std::map<std::string, TermPtr>;
TermPtr substitute(const TermPtr& t, const Subst& s);
/// Throws std::invalid_argument if a quantifier would capture a variable of
/// a substituted term.
FormulaPtr substitute(const FormulaPtr& f, const Subst& s);

/// Replaces every occurrence of `from` (structurally) by `to`.
TermPtr replace_term(const TermPtr& t, const Term& from, const TermPtr& to);
FormulaPtr replace_term(const FormulaPtr& f, const Term& from, const TermPtr& to);

}  // namespace slv
