#include "slv/normalize.hpp"

#include "slv/printer.hpp"

namespace slv {

namespace {

FormulaPtr truth() { return make_bool_term(make_bool(true)); }

FormulaPtr from_term(const TermPtr& t, const Pos& pos);

FormulaPtr negate(const FormulaPtr& f) {
  if (f->kind == Formula::Kind::Not) return f->subs[0];
  if (f->kind == Formula::Kind::BoolTerm) {
    const Term& t = f->term(0);
    if (t.kind == Term::Kind::Apply && t.args.size() == 2) {
      if (t.name == "<") return make_bool_term(make_apply("<=", {t.args[1], t.args[0]}), f->pos);
      if (t.name == "<=") return make_bool_term(make_apply("<", {t.args[1], t.args[0]}), f->pos);
    }
    if (t.kind == Term::Kind::BoolLit) return make_bool_term(make_bool(!t.value), f->pos);
  }
  return make_not(f, f->pos);
}

FormulaPtr from_term(const TermPtr& t, const Pos& pos) {
  if (t->kind == Term::Kind::Apply) {
    const auto& a = t->args;
    const std::string& n = t->name;
    if (n == "and" && a.size() == 2) return normalize(make_and(from_term(a[0], pos), from_term(a[1], pos), pos));
    if (n == "or" && a.size() == 2) return normalize(make_or(from_term(a[0], pos), from_term(a[1], pos), pos));
    if (n == "not" && a.size() == 1) return negate(from_term(a[0], pos));
    if (n == "=" && a.size() == 2) return normalize(make_eq(a[0], a[1], pos));
    if (n == "!=" && a.size() == 2) return negate(normalize(make_eq(a[0], a[1], pos)));
    if (n == "notin" && a.size() == 2) return negate(make_bool_term(make_apply("in", a), pos));
    if (n == ">" && a.size() == 2) return make_bool_term(make_apply("<", {a[1], a[0]}), pos);
    if (n == ">=" && a.size() == 2) return make_bool_term(make_apply("<=", {a[1], a[0]}), pos);
  }
  return make_bool_term(t, pos);
}

void flatten_and(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind == Formula::Kind::And) {
    for (const auto& s : f->subs) flatten_and(s, out);
  } else if (!is_true(*f)) {
    out.push_back(f);
  }
}

}  // namespace

bool is_true(const Formula& f) {
  return f.kind == Formula::Kind::BoolTerm && f.term(0).kind == Term::Kind::BoolLit && f.term(0).value;
}

FormulaPtr normalize(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::BoolTerm: return from_term(f->terms[0], f->pos);
    case Formula::Kind::Eq: {
      TermPtr a = f->terms[0], b = f->terms[1];
      if (equal(*a, *b)) return truth();
      if (print(a) > print(b)) std::swap(a, b);
      return make_eq(a, b, f->pos);
    }
    case Formula::Kind::Not: return negate(normalize(f->subs[0]));
    case Formula::Kind::And: {
      std::vector<FormulaPtr> parts;
      for (const auto& s : f->subs) flatten_and(normalize(s), parts);
      if (parts.empty()) return truth();
      return make_conj(parts);
    }
    case Formula::Kind::Forall:
      return make_forall(f->binder, f->type, normalize(f->subs[0]), f->pos);
    case Formula::Kind::Delta: return make_delta(normalize(f->subs[0]), f->pos);
    case Formula::Kind::HasType:
    case Formula::Kind::Undef: return f;
  }
  return f;
}

std::vector<FormulaPtr> normal_conjuncts(const FormulaPtr& f) {
  std::vector<FormulaPtr> parts, out;
  flatten_and(normalize(f), parts);
  std::set<std::string> seen;
  for (const auto& p : parts)
    if (seen.insert(print(p)).second) out.push_back(p);
  return out;
}

std::set<std::string> conjunct_keys(const FormulaPtr& f) {
  std::set<std::string> out;
  for (const auto& c : normal_conjuncts(f)) out.insert(print(c));
  return out;
}

bool same_assertion(const FormulaPtr& a, const FormulaPtr& b) { return conjunct_keys(a) == conjunct_keys(b); }

std::vector<std::string> missing_conjuncts(const FormulaPtr& a, const FormulaPtr& b) {
  std::set<std::string> kb = conjunct_keys(b);
  std::vector<std::string> out;
  for (const auto& c : normal_conjuncts(a))
    if (!kb.count(print(c))) out.push_back(print(c, PrintMode::Sugared));
  return out;
}

}  // namespace slv
