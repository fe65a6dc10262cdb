#include "slv/ast.hpp"

namespace slv {

std::string to_string(const Pos& p) {
  std::string s = p.file.empty() ? "<input>" : p.file;
  return s + ":" + std::to_string(p.line) + ":" + std::to_string(p.col);
}

TermPtr make_term(Term::Kind k, std::string name, std::vector<TermPtr> args, Pos p) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->name = std::move(name);
  t->args = std::move(args);
  t->pos = std::move(p);
  return t;
}

TermPtr make_int(std::int64_t v, Pos p) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::IntLit;
  t->value = v;
  t->pos = std::move(p);
  return t;
}

TermPtr make_bool(bool v, Pos p) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::BoolLit;
  t->value = v ? 1 : 0;
  t->pos = std::move(p);
  return t;
}

TermPtr make_nil(Pos p) { return make_term(Term::Kind::Nil, "", {}, std::move(p)); }
TermPtr make_empty_coll(Pos p) { return make_term(Term::Kind::EmptyColl, "", {}, std::move(p)); }
TermPtr make_empty_seq(Pos p) { return make_term(Term::Kind::EmptySeq, "", {}, std::move(p)); }
TermPtr make_var(std::string name, Pos p) { return make_term(Term::Kind::Var, std::move(name), {}, std::move(p)); }
TermPtr make_addr_of_var(std::string name, Pos p) {
  return make_term(Term::Kind::AddrOfVar, std::move(name), {}, std::move(p));
}
TermPtr make_deref(TermPtr e, Pos p) { return make_term(Term::Kind::Deref, "", {std::move(e)}, std::move(p)); }
TermPtr make_field_addr(TermPtr e, std::string field, Pos p) {
  return make_term(Term::Kind::FieldAddr, std::move(field), {std::move(e)}, std::move(p));
}
TermPtr make_index_addr(TermPtr e, TermPtr index, Pos p) {
  return make_term(Term::Kind::IndexAddr, "", {std::move(e), std::move(index)}, std::move(p));
}
TermPtr make_apply(std::string f, std::vector<TermPtr> args, Pos p) {
  return make_term(Term::Kind::Apply, std::move(f), std::move(args), std::move(p));
}
TermPtr make_cond(TermPtr guard, TermPtr then_t, TermPtr else_t, Pos p) {
  return make_term(Term::Kind::Cond, "", {std::move(guard), std::move(then_t), std::move(else_t)}, std::move(p));
}
TermPtr make_set(std::vector<TermPtr> elems, Pos p) {
  if (elems.empty()) return make_empty_coll(std::move(p));
  return make_term(Term::Kind::SetLit, "", std::move(elems), std::move(p));
}

namespace {
std::shared_ptr<Formula> new_formula(Formula::Kind k, Pos p) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->pos = std::move(p);
  return f;
}
}  // namespace

FormulaPtr make_bool_term(TermPtr t, Pos p) {
  auto f = new_formula(Formula::Kind::BoolTerm, std::move(p));
  f->terms.push_back(std::move(t));
  return f;
}
FormulaPtr make_undef(Pos p) { return new_formula(Formula::Kind::Undef, std::move(p)); }
FormulaPtr make_eq(TermPtr a, TermPtr b, Pos p) {
  auto f = new_formula(Formula::Kind::Eq, std::move(p));
  f->terms = {std::move(a), std::move(b)};
  return f;
}
FormulaPtr make_has_type(TermPtr e, Type t, Pos p) {
  auto f = new_formula(Formula::Kind::HasType, std::move(p));
  f->terms.push_back(std::move(e));
  f->type = std::move(t);
  return f;
}
FormulaPtr make_delta(FormulaPtr g, Pos p) {
  auto f = new_formula(Formula::Kind::Delta, std::move(p));
  f->subs.push_back(std::move(g));
  return f;
}
FormulaPtr make_not(FormulaPtr g, Pos p) {
  auto f = new_formula(Formula::Kind::Not, std::move(p));
  f->subs.push_back(std::move(g));
  return f;
}
FormulaPtr make_and(FormulaPtr a, FormulaPtr b, Pos p) {
  auto f = new_formula(Formula::Kind::And, std::move(p));
  f->subs = {std::move(a), std::move(b)};
  return f;
}
FormulaPtr make_or(FormulaPtr a, FormulaPtr b, Pos p) {
  return make_not(make_and(make_not(std::move(a)), make_not(std::move(b))), std::move(p));
}
FormulaPtr make_implies(FormulaPtr a, FormulaPtr b, Pos p) {
  return make_not(make_and(std::move(a), make_not(std::move(b))), std::move(p));
}
FormulaPtr make_forall(std::string var, Type t, FormulaPtr body, Pos p) {
  auto f = new_formula(Formula::Kind::Forall, std::move(p));
  f->binder = std::move(var);
  f->type = std::move(t);
  f->subs.push_back(std::move(body));
  return f;
}

FormulaPtr make_conj(const std::vector<FormulaPtr>& fs) {
  FormulaPtr acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = make_and(fs[i], acc);
  return acc;
}

namespace {
std::shared_ptr<Statement> new_stmt(Statement::Kind k, Pos p) {
  auto s = std::make_shared<Statement>();
  s->kind = k;
  s->pos = std::move(p);
  return s;
}
}  // namespace

StmtPtr make_skip(Pos p) { return new_stmt(Statement::Kind::Skip, std::move(p)); }
StmtPtr make_assign(TermPtr target, TermPtr rhs, Pos p) {
  auto s = new_stmt(Statement::Kind::Assign, std::move(p));
  s->target = std::move(target);
  s->rhs = std::move(rhs);
  return s;
}
StmtPtr make_alloc(TermPtr target, Type t, Pos p) {
  auto s = new_stmt(Statement::Kind::Alloc, std::move(p));
  s->target = std::move(target);
  s->alloc_type = std::move(t);
  return s;
}
StmtPtr make_seq(std::vector<StmtPtr> items, Pos p) {
  auto s = new_stmt(Statement::Kind::Seq, std::move(p));
  s->body = std::move(items);
  return s;
}
StmtPtr make_if(TermPtr cond, StmtPtr then_s, StmtPtr else_s, Pos p) {
  auto s = new_stmt(Statement::Kind::If, std::move(p));
  s->cond = std::move(cond);
  s->body = {std::move(then_s), std::move(else_s)};
  return s;
}
StmtPtr make_while(TermPtr cond, StmtPtr body, Pos p) {
  auto s = new_stmt(Statement::Kind::While, std::move(p));
  s->cond = std::move(cond);
  s->body = {std::move(body)};
  return s;
}

bool equal(const Term& a, const Term& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.name != b.name || a.value != b.value || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!equal(*a.args[i], *b.args[i])) return false;
  return true;
}

bool equal(const Formula& a, const Formula& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.binder != b.binder || !(a.type == b.type) || a.terms.size() != b.terms.size() ||
      a.subs.size() != b.subs.size())
    return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i)
    if (!equal(*a.terms[i], *b.terms[i])) return false;
  for (std::size_t i = 0; i < a.subs.size(); ++i)
    if (!equal(*a.subs[i], *b.subs[i])) return false;
  return true;
}

namespace {
bool opt_equal(const TermPtr& a, const TermPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}
}  // namespace

bool equal(const Statement& a, const Statement& b) {
  if (a.kind != b.kind || !(a.alloc_type == b.alloc_type) || a.body.size() != b.body.size()) return false;
  if (!opt_equal(a.target, b.target) || !opt_equal(a.rhs, b.rhs) || !opt_equal(a.cond, b.cond)) return false;
  for (std::size_t i = 0; i < a.body.size(); ++i)
    if (!equal(*a.body[i], *b.body[i])) return false;
  return true;
}

namespace {
void collect(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Var) out.insert(t.name);
  for (const auto& a : t.args) collect(*a, out);
}

void collect(const Formula& f, std::set<std::string>& out) {
  for (const auto& t : f.terms) collect(*t, out);
  if (f.kind == Formula::Kind::Forall) {
    std::set<std::string> inner;
    collect(f.sub(0), inner);
    inner.erase(f.binder);
    out.insert(inner.begin(), inner.end());
    return;
  }
  for (const auto& s : f.subs) collect(*s, out);
}
}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect(t, out);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  collect(f, out);
  return out;
}

std::vector<FormulaPtr> conjuncts(const FormulaPtr& f) {
  std::vector<FormulaPtr> out;
  std::vector<FormulaPtr> stack{f};
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    if (cur->kind == Formula::Kind::And) {
      stack.push_back(cur->subs[1]);
      stack.push_back(cur->subs[0]);
    } else {
      out.push_back(cur);
    }
  }
  return out;
}

bool match_or(const Formula& f, FormulaPtr& a, FormulaPtr& b) {
  if (f.kind != Formula::Kind::Not) return false;
  const Formula& c = f.sub(0);
  if (c.kind != Formula::Kind::And) return false;
  if (c.sub(0).kind != Formula::Kind::Not || c.sub(1).kind != Formula::Kind::Not) return false;
  a = c.sub(0).subs[0];
  b = c.sub(1).subs[0];
  return true;
}

bool match_implies(const Formula& f, FormulaPtr& a, FormulaPtr& b) {
  if (f.kind != Formula::Kind::Not) return false;
  const Formula& c = f.sub(0);
  if (c.kind != Formula::Kind::And || c.sub(1).kind != Formula::Kind::Not) return false;
  a = c.subs[0];
  b = c.sub(1).subs[0];
  return true;
}

}  // namespace slv
