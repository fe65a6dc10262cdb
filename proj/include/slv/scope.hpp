#pragma once

#include <map>
#include <string>
#include <vector>

#include "slv/ast.hpp"
#include "slv/context.hpp"

namespace slv {

/// A derived memory-scope function, raw and simplified.
struct DerivedMsf {
  std::string drf;   // source definition
  FuncDef raw;       // body is the literal scope form of the DRF body
  FuncDef simple;    // same name and parameters, simplified body
};

/// Memory-scope functions derived from the user definitions of a context.
class ScopeTable {
 public:
  explicit ScopeTable(const Context& ctx);

  /// Name of the scope function of `f`, e.g. `NodeSet_m`.
  static std::string msf_name(const std::string& f) { return f + "_m"; }

  /// Scope form of an expanded term. Throws std::runtime_error for symbols
  /// without an entry.
  TermPtr scope(const TermPtr& e) const;

  const std::vector<DerivedMsf>& derived() const { return derived_; }
  const DerivedMsf* find(const std::string& drf) const;

  /// Adds the simplified (or raw) definitions to `ctx` so they can be
  /// evaluated and referenced from lemmas.
  void install(Context& ctx, bool raw = false) const;

 private:
  const Context& ctx_;
  std::vector<DerivedMsf> derived_;
};

/// Scope form with the rewrites ∅∪s, s∪∅, c?s:s, literal merging and
/// duplicate-operand removal applied bottom-up.
TermPtr simplify_scope(const TermPtr& e);

/// A maximal term of a formula together with the quantifier binders in
/// scope where it occurs.
struct TopTerm {
  TermPtr term;
  std::vector<Param> bound;
};

std::vector<TopTerm> top_level_terms(const FormulaPtr& q);

/// `{}` as a set of pointers, unions and singleton sets.
TermPtr set_union(TermPtr a, TermPtr b);
TermPtr singleton(TermPtr e);

/// Loads a context and installs the simplified MSFs of every DRF.
Context load_context_with_msfs(const std::string& spec_path, const std::string& program_path);

/// Prints the derived definitions in spec syntax, in definition order.
std::string print_msfs(const ScopeTable& st, bool raw);

}  // namespace slv
