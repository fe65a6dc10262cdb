#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "slv/ast.hpp"
#include "slv/types.hpp"

namespace slv {

/// Linked environment: declarations, function definitions, lemmas and
/// assertion macros of a specification together with an optional program.
/// Everything stored here has had its abbreviations expanded.
struct Context {
  TypeTable types;
  std::map<std::string, Type> vars;
  std::vector<std::string> var_order;
  std::map<std::string, Type> consts;
  std::map<std::string, FuncDef> funcs;
  std::vector<std::string> func_order;  // user definitions, in source order
  std::vector<Lemma> lemmas;
  std::map<std::string, AssertionDef> assertions;
  StmtPtr program;  // null if no program was linked

  std::set<std::string> progvars() const;
  const FuncDef* func(const std::string& name) const;
  const Lemma* lemma(const std::string& name) const;

  void add_type(const TypeDecl& d);
  void add_var(const VarDecl& d);
  void add_const(const VarDecl& d);
  /// Adds (or replaces) a function; the body is expanded here.
  void add_func(FuncDef f);
  void add_lemma(Lemma l);
  void add_assertion(AssertionDef d);
  void add_declarations(const Declarations& d);

  /// Expands abbreviations and assertion macros in source-level syntax.
  TermPtr prepare(const TermPtr& t) const;
  FormulaPtr prepare(const FormulaPtr& f) const;
  StmtPtr prepare(const StmtPtr& s) const;
};

/// Replaces uses of `define`d assertions by their (instantiated) bodies.
FormulaPtr expand_macros_in(const FormulaPtr& f, const Context& ctx);

/// Names of the short-circuit connectives defined by the prelude.
bool is_prelude_function(const std::string& name);

/// Reads a spec file and everything it includes (paths are relative to the
/// including file), in dependency order, each file once.
std::vector<SpecUnit> load_spec_files(const std::string& path);

/// Builds a context from spec units and an optional program. Throws
/// std::runtime_error / SyntaxError on conflicting declarations.
Context build_context(const std::vector<SpecUnit>& specs, const ProgramUnit* program);

/// Convenience: either path may be empty.
Context load_context(const std::string& spec_path, const std::string& program_path);

}  // namespace slv
