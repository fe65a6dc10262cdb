#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "slv/types.hpp"

namespace slv {

/// Source position; never participates in structural equality.
struct Pos {
  std::string file;
  int line = 0;
  int col = 0;
};

std::string to_string(const Pos& p);

struct Term;
struct Formula;
struct Statement;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;
using StmtPtr = std::shared_ptr<const Statement>;

/// Extended-LPF term. Terms never contain formulae: conditional guards are
/// themselves boolean terms, and the logical connectives only exist at the
/// Formula level.
struct Term {
  enum class Kind {
    IntLit,
    BoolLit,
    Nil,
    EmptyColl,  // {}  (empty set or empty map)
    EmptySeq,   // []
    Var,        // logical variable, or program-variable sugar before expansion
    AddrOfVar,  // &v
    Deref,      // *e
    FieldAddr,  // &e->n
    IndexAddr,  // &e[i]
    Arrow,      // e->n   sugar for *(&e->n)
    Dot,        // X.n    sugar for *(&addr(X)->n)
    Index,      // X[i]   sugar for *(&addr(X)[i])
    Apply,      // f(e1..en), including builtin operators
    Cond,       // e0 ? e1 : e2
    SetLit,     // {e1, ..., en}
    MapLit,     // {k1 |-> v1, ...}  args = k1, v1, k2, v2, ...
    SeqLit,     // [e1, ..., en]
  };

  Kind kind = Kind::IntLit;
  std::string name;  // Var / AddrOfVar / Apply symbol / field name
  std::int64_t value = 0;
  std::vector<TermPtr> args;
  Pos pos;

  const Term& arg(std::size_t i) const { return *args.at(i); }
};

struct Formula {
  enum class Kind { BoolTerm, Undef, Eq, HasType, Delta, Not, And, Forall };

  Kind kind = Kind::Undef;
  std::vector<TermPtr> terms;
  std::vector<FormulaPtr> subs;
  std::string binder;  // Forall
  Type type;           // Forall binder type / HasType target type
  Pos pos;

  const Formula& sub(std::size_t i) const { return *subs.at(i); }
  const Term& term(std::size_t i) const { return *terms.at(i); }
};

struct Statement {
  enum class Kind { Skip, Assign, Alloc, Seq, If, While };

  Kind kind = Kind::Skip;
  TermPtr target;  // Assign/Alloc: the place written (expands to *addr)
  TermPtr rhs;     // Assign
  Type alloc_type; // Alloc
  TermPtr cond;    // If/While
  std::vector<StmtPtr> body;  // Seq: items; If: {then, else}; While: {body}
  Pos pos;
};

struct Param {
  std::string name;
  Type type;
};

struct FuncDef {
  std::string name;
  std::vector<Param> params;
  Type result;
  TermPtr body;
  /// Inline definitions (cand/cor/not) are unfolded at the call site instead
  /// of being evaluated call-by-value, so they short-circuit.
  bool inline_def = false;
  Pos pos;
};

struct Lemma {
  std::string name;
  std::vector<Param> binders;
  std::vector<FormulaPtr> hyps;
  FormulaPtr concl;
  Pos pos;
};

struct VarDecl {
  std::string name;
  Type type;
  Pos pos;
};

struct TypeDecl {
  std::string name;
  Type type;
  Pos pos;
};

/// Named assertion abbreviation: `define PRE = ...;` or `define LOOP(x) = ...;`.
struct AssertionDef {
  std::string name;
  std::vector<std::string> params;
  FormulaPtr body;
  Pos pos;
};

/// Declarations shared by every source kind.
struct Declarations {
  std::vector<TypeDecl> types;
  std::vector<VarDecl> vars;
  std::vector<VarDecl> consts;
};

struct ProgramUnit {
  Declarations decls;
  StmtPtr body;
};

struct SpecUnit {
  Declarations decls;
  std::vector<std::string> includes;
  std::vector<FuncDef> funcs;
  std::vector<Lemma> lemmas;
  std::vector<AssertionDef> assertions;
};

// Constructors.
TermPtr make_int(std::int64_t v, Pos p = {});
TermPtr make_bool(bool v, Pos p = {});
TermPtr make_nil(Pos p = {});
TermPtr make_empty_coll(Pos p = {});
TermPtr make_empty_seq(Pos p = {});
TermPtr make_var(std::string name, Pos p = {});
TermPtr make_addr_of_var(std::string name, Pos p = {});
TermPtr make_deref(TermPtr e, Pos p = {});
TermPtr make_field_addr(TermPtr e, std::string field, Pos p = {});
TermPtr make_index_addr(TermPtr e, TermPtr index, Pos p = {});
TermPtr make_apply(std::string f, std::vector<TermPtr> args, Pos p = {});
TermPtr make_cond(TermPtr guard, TermPtr then_t, TermPtr else_t, Pos p = {});
TermPtr make_term(Term::Kind k, std::string name, std::vector<TermPtr> args, Pos p = {});
TermPtr make_set(std::vector<TermPtr> elems, Pos p = {});

FormulaPtr make_bool_term(TermPtr t, Pos p = {});
FormulaPtr make_undef(Pos p = {});
FormulaPtr make_eq(TermPtr a, TermPtr b, Pos p = {});
FormulaPtr make_has_type(TermPtr e, Type t, Pos p = {});
FormulaPtr make_delta(FormulaPtr f, Pos p = {});
FormulaPtr make_not(FormulaPtr f, Pos p = {});
FormulaPtr make_and(FormulaPtr a, FormulaPtr b, Pos p = {});
FormulaPtr make_or(FormulaPtr a, FormulaPtr b, Pos p = {});
FormulaPtr make_implies(FormulaPtr a, FormulaPtr b, Pos p = {});
FormulaPtr make_forall(std::string var, Type t, FormulaPtr body, Pos p = {});
/// Right-nested conjunction of a non-empty list.
FormulaPtr make_conj(const std::vector<FormulaPtr>& fs);

StmtPtr make_skip(Pos p = {});
StmtPtr make_assign(TermPtr target, TermPtr rhs, Pos p = {});
StmtPtr make_alloc(TermPtr target, Type t, Pos p = {});
StmtPtr make_seq(std::vector<StmtPtr> items, Pos p = {});
StmtPtr make_if(TermPtr cond, StmtPtr then_s, StmtPtr else_s, Pos p = {});
StmtPtr make_while(TermPtr cond, StmtPtr body, Pos p = {});

// Structural equality (positions ignored).
bool equal(const Term& a, const Term& b);
bool equal(const Formula& a, const Formula& b);
bool equal(const Statement& a, const Statement& b);
inline bool equal(const TermPtr& a, const TermPtr& b) { return equal(*a, *b); }
inline bool equal(const FormulaPtr& a, const FormulaPtr& b) { return equal(*a, *b); }

/// Free (logical) variables, respecting Forall binding.
std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Formula& f);

/// Flattens nested And into its conjunct list.
std::vector<FormulaPtr> conjuncts(const FormulaPtr& f);

/// Recognizes the encodings produced by make_or / make_implies.
bool match_or(const Formula& f, FormulaPtr& a, FormulaPtr& b);
bool match_implies(const Formula& f, FormulaPtr& a, FormulaPtr& b);

/// Visits every sub-term of a term (pre-order, including the term itself).
template <typename F>
void for_each_subterm(const TermPtr& t, F&& fn) {
  fn(t);
  for (const auto& a : t->args) for_each_subterm(a, fn);
}

}  // namespace slv
