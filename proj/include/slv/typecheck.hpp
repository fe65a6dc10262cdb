#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "slv/ast.hpp"
#include "slv/context.hpp"
#include "slv/lexer.hpp"

namespace slv {

class TypeError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

struct Diagnostic {
  Pos pos;
  std::string message;
  std::string str() const { return to_string(pos) + ": " + message; }
};

using Locals = std::map<std::string, Type>;

/// True for operator and builtin symbols (everything that is not a user or
/// prelude definition).
bool is_builtin(const std::string& name);

/// Static type of an expanded term. Throws TypeError.
Type type_of(const Context& ctx, const Term& t, const Locals& locals = {});
/// Throws TypeError if the formula is ill-typed.
void check_formula(const Context& ctx, const Formula& f, const Locals& locals = {});
/// Rejects free variables and symbols not permitted in program expressions.
void check_program_expr(const Context& ctx, const Term& t);
/// Throws TypeError on the first violation inside `s`.
void check_statement(const Context& ctx, const Statement& s);

/// Direct callees (user and prelude definitions) of each user definition.
std::map<std::string, std::set<std::string>> call_graph(const Context& ctx);

/// Conditional guards must not reach their own definition through the call
/// graph, and bodies may only use parameters as free variables.
std::vector<Diagnostic> check_drf_wellformed(const Context& ctx);

/// Function bodies, lemmas, program statements and DRF well-formedness.
std::vector<Diagnostic> typecheck_all(const Context& ctx);

}  // namespace slv
