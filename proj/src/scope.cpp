#include "slv/scope.hpp"

#include <sstream>
#include <stdexcept>

#include "slv/expand.hpp"
#include "slv/printer.hpp"
#include "slv/typecheck.hpp"

namespace slv {

TermPtr set_union(TermPtr a, TermPtr b) { return make_apply("union", {std::move(a), std::move(b)}); }

TermPtr singleton(TermPtr e) { return make_set({std::move(e)}); }

namespace {

bool is_empty_set(const Term& t) {
  return t.kind == Term::Kind::EmptyColl || (t.kind == Term::Kind::SetLit && t.args.empty());
}

bool has_msf_suffix(const std::string& name) {
  const std::string suffix = "_m";
  return name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_msf_of_existing(const Context& ctx, const std::string& name) {
  return has_msf_suffix(name) && ctx.func(name.substr(0, name.size() - 2)) != nullptr;
}

TermPtr union_all(const std::vector<TermPtr>& parts) {
  TermPtr acc;
  for (const auto& p : parts) acc = acc ? set_union(acc, p) : p;
  return acc ? acc : make_empty_coll();
}

TermPtr scope_of(const Context& ctx, const TermPtr& e) {
  switch (e->kind) {
    case Term::Kind::IntLit:
    case Term::Kind::BoolLit:
    case Term::Kind::Nil:
    case Term::Kind::EmptyColl:
    case Term::Kind::EmptySeq:
    case Term::Kind::Var:
    case Term::Kind::AddrOfVar: return make_empty_coll();
    case Term::Kind::Deref: return set_union(singleton(e->args[0]), scope_of(ctx, e->args[0]));
    case Term::Kind::FieldAddr: return scope_of(ctx, e->args[0]);
    case Term::Kind::IndexAddr: return set_union(scope_of(ctx, e->args[0]), scope_of(ctx, e->args[1]));
    case Term::Kind::Arrow:
    case Term::Kind::Dot:
    case Term::Kind::Index: throw std::runtime_error("scope of an unexpanded term");
    case Term::Kind::Cond:
      return set_union(scope_of(ctx, e->args[0]),
                       make_cond(e->args[0], scope_of(ctx, e->args[1]), scope_of(ctx, e->args[2])));
    case Term::Kind::SetLit:
    case Term::Kind::SeqLit:
    case Term::Kind::MapLit: {
      std::vector<TermPtr> parts;
      for (const auto& a : e->args) parts.push_back(scope_of(ctx, a));
      return union_all(parts);
    }
    case Term::Kind::Apply: {
      if (!is_builtin(e->name)) {
        const FuncDef* f = ctx.func(e->name);
        if (!f) throw std::runtime_error("no scope function for '" + e->name + "'");
        if (f->inline_def) {
          Subst s;
          for (std::size_t i = 0; i < f->params.size() && i < e->args.size(); ++i) s[f->params[i].name] = e->args[i];
          return scope_of(ctx, substitute(f->body, s));
        }
      }
      std::vector<TermPtr> parts;
      for (const auto& a : e->args) parts.push_back(scope_of(ctx, a));
      if (!is_builtin(e->name)) {
        parts.push_back(make_apply(ScopeTable::msf_name(e->name), e->args));
      } else if (e->name == "PtrInit") {
        parts.push_back(make_apply("Block", e->args));
      } else if (e->name == "Unique") {
        parts.push_back(make_apply("Unique_m", e->args));
      }
      return union_all(parts);
    }
  }
  throw std::runtime_error("scope of unknown term");
}

void flatten_union(const TermPtr& t, std::vector<TermPtr>& out) {
  if (t->kind == Term::Kind::Apply && t->name == "union" && t->args.size() == 2) {
    flatten_union(t->args[0], out);
    flatten_union(t->args[1], out);
  } else {
    out.push_back(t);
  }
}

void push_unique(std::vector<TermPtr>& v, const TermPtr& t) {
  for (const auto& x : v)
    if (equal(*x, *t)) return;
  v.push_back(t);
}

}  // namespace

TermPtr simplify_scope(const TermPtr& e) {
  if (e->kind == Term::Kind::Cond) {
    TermPtr a = simplify_scope(e->args[1]);
    TermPtr b = simplify_scope(e->args[2]);
    if (equal(*a, *b)) return a;
    return make_cond(e->args[0], a, b, e->pos);
  }
  if (e->kind == Term::Kind::Apply && e->name == "union" && e->args.size() == 2) {
    std::vector<TermPtr> parts;
    flatten_union(e, parts);
    std::vector<TermPtr> elems, rest;
    bool any_literal = false;
    for (const auto& raw : parts) {
      TermPtr p = simplify_scope(raw);
      if (is_empty_set(*p)) continue;
      if (p->kind == Term::Kind::SetLit) {
        any_literal = true;
        for (const auto& x : p->args) push_unique(elems, x);
      } else {
        push_unique(rest, p);
      }
    }
    std::vector<TermPtr> all;
    if (any_literal) all.push_back(make_set(elems));
    all.insert(all.end(), rest.begin(), rest.end());
    return union_all(all);
  }
  return e;
}

ScopeTable::ScopeTable(const Context& ctx) : ctx_(ctx) {
  for (const auto& name : ctx.func_order) {
    if (has_msf_suffix(name)) continue;
    const FuncDef& f = *ctx.func(name);
    DerivedMsf d;
    d.drf = name;
    d.raw.name = msf_name(name);
    d.raw.params = f.params;
    d.raw.result = Type::set_of(Type::any_ptr());
    d.raw.pos = f.pos;
    d.raw.body = scope_of(ctx, f.body);
    d.simple = d.raw;
    d.simple.body = simplify_scope(d.raw.body);
    derived_.push_back(std::move(d));
  }
}

TermPtr ScopeTable::scope(const TermPtr& e) const { return scope_of(ctx_, e); }

const DerivedMsf* ScopeTable::find(const std::string& drf) const {
  for (const auto& d : derived_)
    if (d.drf == drf) return &d;
  return nullptr;
}

void ScopeTable::install(Context& ctx, bool raw) const {
  for (const auto& d : derived_) {
    const FuncDef& f = raw ? d.raw : d.simple;
    const FuncDef* existing = ctx.func(f.name);
    if (existing && !is_msf_of_existing(ctx, f.name))
      throw std::runtime_error("'" + f.name + "' is reserved for the scope function of " + d.drf);
    ctx.add_func(f);
  }
}

namespace {

void collect_top(const FormulaPtr& q, std::vector<Param>& bound, std::vector<TopTerm>& out) {
  switch (q->kind) {
    case Formula::Kind::BoolTerm:
    case Formula::Kind::Eq:
    case Formula::Kind::HasType:
      for (const auto& t : q->terms) out.push_back({t, bound});
      break;
    case Formula::Kind::Undef: break;
    case Formula::Kind::Delta:
    case Formula::Kind::Not:
    case Formula::Kind::And:
      for (const auto& s : q->subs) collect_top(s, bound, out);
      break;
    case Formula::Kind::Forall:
      bound.push_back({q->binder, q->type});
      collect_top(q->subs[0], bound, out);
      bound.pop_back();
      break;
  }
}

}  // namespace

std::vector<TopTerm> top_level_terms(const FormulaPtr& q) {
  std::vector<TopTerm> out;
  std::vector<Param> bound;
  collect_top(q, bound, out);
  return out;
}

Context load_context_with_msfs(const std::string& spec_path, const std::string& program_path) {
  Context ctx = load_context(spec_path, program_path);
  ScopeTable st(ctx);
  st.install(ctx);
  return ctx;
}

std::string print_msfs(const ScopeTable& st, bool raw) {
  std::ostringstream os;
  for (const auto& d : st.derived()) {
    const FuncDef& f = raw ? d.raw : d.simple;
    os << "fun " << f.name << "(";
    for (std::size_t i = 0; i < f.params.size(); ++i)
      os << (i ? ", " : "") << f.params[i].name << ": " << to_string(f.params[i].type);
    os << "): " << to_string(f.result) << " =\n  " << print(f.body, PrintMode::Sugared) << ";\n";
  }
  return os.str();
}

}  // namespace slv
