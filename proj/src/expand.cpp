#include "slv/expand.hpp"

#include <stdexcept>

#include "slv/lexer.hpp"

namespace slv {

namespace {

TermPtr rebuild(const Term& t, std::vector<TermPtr> args) {
  auto n = std::make_shared<Term>(t);
  n->args = std::move(args);
  return n;
}

std::shared_ptr<Formula> clone(const Formula& f) { return std::make_shared<Formula>(f); }

}  // namespace

TermPtr expand(const TermPtr& t, const std::set<std::string>& progvars) {
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(expand(a, progvars));
  switch (t->kind) {
    case Term::Kind::Var:
      if (progvars.count(t->name)) return make_deref(make_addr_of_var(t->name, t->pos), t->pos);
      return t;
    case Term::Kind::Arrow:
      return make_deref(make_field_addr(args[0], t->name, t->pos), t->pos);
    case Term::Kind::Dot:
      if (args[0]->kind == Term::Kind::Deref)
        return make_deref(make_field_addr(args[0]->args[0], t->name, t->pos), t->pos);
      return rebuild(*t, std::move(args));
    case Term::Kind::Index:
      if (args[0]->kind == Term::Kind::Deref)
        return make_deref(make_index_addr(args[0]->args[0], args[1], t->pos), t->pos);
      return rebuild(*t, std::move(args));
    default:
      if (t->args.empty()) return t;
      return rebuild(*t, std::move(args));
  }
}

FormulaPtr expand(const FormulaPtr& f, const std::set<std::string>& progvars) {
  auto n = clone(*f);
  if (f->kind == Formula::Kind::Forall && progvars.count(f->binder)) {
    std::set<std::string> inner = progvars;
    inner.erase(f->binder);
    n->subs[0] = expand(f->subs[0], inner);
    return n;
  }
  for (auto& t : n->terms) t = expand(t, progvars);
  for (auto& s : n->subs) s = expand(s, progvars);
  return n;
}

StmtPtr expand(const StmtPtr& s, const std::set<std::string>& progvars) {
  auto n = std::make_shared<Statement>(*s);
  if (n->target) {
    n->target = expand(n->target, progvars);
    if (n->target->kind != Term::Kind::Deref)
      throw SyntaxError(s->pos, "assignment target does not denote a memory location");
  }
  if (n->rhs) n->rhs = expand(n->rhs, progvars);
  if (n->cond) n->cond = expand(n->cond, progvars);
  for (auto& b : n->body) b = expand(b, progvars);
  return n;
}

TermPtr substitute(const TermPtr& t, const Subst& s) {
  if (t->kind == Term::Kind::Var) {
    auto it = s.find(t->name);
    return it == s.end() ? t : it->second;
  }
  if (t->args.empty()) return t;
  std::vector<TermPtr> args;
  bool changed = false;
  for (const auto& a : t->args) {
    args.push_back(substitute(a, s));
    changed |= args.back() != a;
  }
  return changed ? rebuild(*t, std::move(args)) : t;
}

FormulaPtr substitute(const FormulaPtr& f, const Subst& s) {
  if (s.empty()) return f;
  auto n = clone(*f);
  if (f->kind == Formula::Kind::Forall) {
    Subst inner = s;
    inner.erase(f->binder);
    for (const auto& [v, t] : inner) {
      if (free_vars(*t).count(f->binder) && free_vars(*f->subs[0]).count(v))
        throw std::invalid_argument("substitution for '" + v + "' would be captured by the quantifier over '" +
                                    f->binder + "'");
    }
    n->subs[0] = substitute(f->subs[0], inner);
    return n;
  }
  for (auto& t : n->terms) t = substitute(t, s);
  for (auto& g : n->subs) g = substitute(g, s);
  return n;
}

TermPtr replace_term(const TermPtr& t, const Term& from, const TermPtr& to) {
  if (equal(*t, from)) return to;
  if (t->args.empty()) return t;
  std::vector<TermPtr> args;
  for (const auto& a : t->args) args.push_back(replace_term(a, from, to));
  return rebuild(*t, std::move(args));
}

FormulaPtr replace_term(const FormulaPtr& f, const Term& from, const TermPtr& to) {
  auto n = clone(*f);
  for (auto& t : n->terms) t = replace_term(t, from, to);
  for (auto& g : n->subs) g = replace_term(g, from, to);
  return n;
}

}  // namespace slv
