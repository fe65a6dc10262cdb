#include "slv/eval.hpp"

#include <algorithm>
#include <sstream>

#include "slv/expand.hpp"
#include "slv/typecheck.hpp"

namespace slv {

using VK = Value::Kind;
using S = TermResult::Status;

const char* to_string(Truth t) {
  switch (t) {
    case Truth::T: return "T";
    case Truth::F: return "F";
    case Truth::N: return "N";
    case Truth::Fuel: return "fuel-exhausted";
  }
  return "?";
}

std::string to_string(const TermResult& r) {
  switch (r.status) {
    case S::Defined: return to_string(r.value);
    case S::Bottom: return "bottom (" + r.reason + ")";
    case S::Fuel: return "fuel-exhausted";
  }
  return "?";
}

bool value_equal(const Value& a, const Value& b) {
  auto empty_coll = [](const Value& v) {
    return (v.kind == VK::Set && v.elems.empty()) || (v.kind == VK::Map && v.map.empty());
  };
  if (empty_coll(a) && empty_coll(b)) return true;
  return a == b;
}

bool has_type(const State& st, const Value& v, const Type& t) {
  const Type& r = st.types().resolve(t);
  switch (r.kind) {
    case Type::Kind::Int: return v.kind == VK::Int;
    case Type::Kind::Bool: return v.kind == VK::Bool;
    case Type::Kind::AnyPtr: return v.kind == VK::Ptr;
    case Type::Kind::Ptr: {
      if (v.kind != VK::Ptr) return false;
      if (!v.ptr) return true;
      auto at = st.type_at(*v.ptr);
      return at && st.types().resolve(*at) == st.types().resolve(r.elem());
    }
    case Type::Kind::Set:
      if (v.kind == VK::Map && v.map.empty()) return true;
      if (v.kind != VK::Set) return false;
      return std::all_of(v.elems.begin(), v.elems.end(), [&](const Value& e) { return has_type(st, e, r.elem()); });
    case Type::Kind::Seq:
      if (v.kind != VK::Seq) return false;
      return std::all_of(v.elems.begin(), v.elems.end(), [&](const Value& e) { return has_type(st, e, r.elem()); });
    case Type::Kind::Map: return v.kind == VK::Map || (v.kind == VK::Set && v.elems.empty());
    default: return false;
  }
}

Value block_value(const State& st, const Value& p) {
  std::vector<Value> out;
  if (p.ptr)
    for (const auto& a : st.block_units(*p.ptr)) out.push_back(Value::pointer(a));
  return Value::set(std::move(out));
}

std::vector<Address> all_addresses(const State& st) {
  std::set<Address> out;
  for (const auto& [id, info] : st.blocks()) out.insert(Address{id, {}});
  for (const auto& [a, v] : st.contents()) {
    Address prefix{a.block, {}};
    for (const auto& sel : a.path) {
      prefix.path.push_back(sel);
      out.insert(prefix);
    }
  }
  return {out.begin(), out.end()};
}

Evaluator::Evaluator(const Context& ctx, const State& state, EvalOptions opt)
    : ctx_(ctx), st_(state), opt_(opt) {}

void Evaluator::reset() {
  fuel_ = opt_.fuel;
  depth_ = 0;
  trace_.clear();
}

TermResult Evaluator::eval(const Term& t, const Env& env) {
  reset();
  return term(t, env);
}

Truth Evaluator::eval(const Formula& f, const Env& env) {
  reset();
  return formula(f, env);
}

namespace {

TermResult need_int(const TermResult& r, std::int64_t& out) {
  if (!r.defined()) return r;
  if (r.value.kind != VK::Int) return TermResult::bottom("integer expected");
  out = r.value.i;
  return r;
}

bool is_set_like(const Value& v) { return v.kind == VK::Set || (v.kind == VK::Map && v.map.empty()); }
bool is_map_like(const Value& v) { return v.kind == VK::Map || (v.kind == VK::Set && v.elems.empty()); }

}  // namespace

TermResult Evaluator::term(const Term& t, const Env& env) {
  switch (t.kind) {
    case Term::Kind::IntLit: return TermResult::ok(Value::integer(t.value));
    case Term::Kind::BoolLit: return TermResult::ok(Value::boolean(t.value != 0));
    case Term::Kind::Nil: return TermResult::ok(Value::nil());
    case Term::Kind::EmptyColl: return TermResult::ok(Value::set({}));
    case Term::Kind::EmptySeq: return TermResult::ok(Value::seq({}));
    case Term::Kind::Var: {
      auto it = env.find(t.name);
      if (it == env.end()) return TermResult::bottom("unbound variable " + t.name);
      return TermResult::ok(it->second);
    }
    case Term::Kind::AddrOfVar: {
      auto a = st_.var_addr(t.name);
      if (!a) return TermResult::bottom("no block for variable " + t.name);
      return TermResult::ok(Value::pointer(*a));
    }
    case Term::Kind::Deref: {
      auto r = term(t.arg(0), env);
      if (!r.defined()) return r;
      if (r.value.kind != VK::Ptr) return TermResult::bottom("dereference of a non-pointer");
      if (!r.value.ptr) return TermResult::bottom("dereference of nil");
      const Address& a = *r.value.ptr;
      if (!st_.is_unit(a)) return TermResult::bottom("dereference of non-unit address " + to_string(a));
      trace_.insert(a);
      return TermResult::ok(st_.read(a));
    }
    case Term::Kind::FieldAddr: {
      auto r = term(t.arg(0), env);
      if (!r.defined()) return r;
      if (r.value.kind != VK::Ptr) return TermResult::bottom("field address of a non-pointer");
      if (!r.value.ptr) return TermResult::bottom("field address of nil");
      Address a = r.value.ptr->field(t.name);
      if (!st_.valid(a)) return TermResult::bottom("no field " + t.name + " at " + to_string(*r.value.ptr));
      return TermResult::ok(Value::pointer(a));
    }
    case Term::Kind::IndexAddr: {
      auto r = term(t.arg(0), env);
      if (!r.defined()) return r;
      std::int64_t i = 0;
      auto ir = need_int(term(t.arg(1), env), i);
      if (!ir.defined()) return ir;
      if (r.value.kind != VK::Ptr) return TermResult::bottom("index address of a non-pointer");
      if (!r.value.ptr) return TermResult::bottom("index address of nil");
      Address a = r.value.ptr->index(i);
      if (!st_.valid(a)) return TermResult::bottom("index " + std::to_string(i) + " out of range");
      return TermResult::ok(Value::pointer(a));
    }
    case Term::Kind::Arrow:
    case Term::Kind::Dot:
    case Term::Kind::Index: return TermResult::bottom("unexpanded abbreviation");
    case Term::Kind::Cond: {
      auto g = term(t.arg(0), env);
      if (!g.defined()) return g;
      if (g.value.kind != VK::Bool) return TermResult::bottom("non-boolean guard");
      return term(t.arg(g.value.b ? 1 : 2), env);
    }
    case Term::Kind::SetLit:
    case Term::Kind::SeqLit: {
      std::vector<Value> elems;
      for (const auto& a : t.args) {
        auto r = term(*a, env);
        if (!r.defined()) return r;
        elems.push_back(r.value);
      }
      return TermResult::ok(t.kind == Term::Kind::SetLit ? Value::set(std::move(elems)) : Value::seq(std::move(elems)));
    }
    case Term::Kind::MapLit: {
      std::map<std::int64_t, std::int64_t> m;
      for (std::size_t i = 0; i + 1 < t.args.size(); i += 2) {
        std::int64_t k = 0, v = 0;
        auto kr = need_int(term(*t.args[i], env), k);
        if (!kr.defined()) return kr;
        auto vr = need_int(term(*t.args[i + 1], env), v);
        if (!vr.defined()) return vr;
        m[k] = v;
      }
      return TermResult::ok(Value::map_of(std::move(m)));
    }
    case Term::Kind::Apply: return apply(t, env);
  }
  return TermResult::bottom("unknown term");
}

TermResult Evaluator::apply(const Term& t, const Env& env) {
  if (!is_builtin(t.name)) {
    const FuncDef* f = ctx_.func(t.name);
    if (!f) return TermResult::bottom("unknown function " + t.name);
    if (f->params.size() != t.args.size()) return TermResult::bottom("arity mismatch for " + t.name);
    if (f->inline_def) {
      Subst s;
      for (std::size_t i = 0; i < f->params.size(); ++i) s[f->params[i].name] = t.args[i];
      return term(*substitute(f->body, s), env);
    }
    Env callee;
    for (std::size_t i = 0; i < f->params.size(); ++i) {
      auto r = term(*t.args[i], env);
      if (!r.defined()) return r;
      callee[f->params[i].name] = r.value;
    }
    if (fuel_ <= 0 || depth_ >= opt_.max_depth) return TermResult::out_of_fuel();
    --fuel_;
    ++depth_;
    auto r = term(*f->body, callee);
    --depth_;
    return r;
  }
  std::vector<Value> args;
  for (const auto& a : t.args) {
    auto r = term(*a, env);
    if (!r.defined()) return r;
    args.push_back(r.value);
  }
  return builtin(t.name, args);
}

TermResult Evaluator::builtin(const std::string& name, const std::vector<Value>& a) {
  auto bad = [&] { return TermResult::bottom("ill-typed arguments to " + name); };
  auto ints = [&] { return a.size() == 2 && a[0].kind == VK::Int && a[1].kind == VK::Int; };
  auto bools = [&] { return a.size() == 2 && a[0].kind == VK::Bool && a[1].kind == VK::Bool; };
  auto I = [](std::int64_t v) { return TermResult::ok(Value::integer(v)); };
  auto B = [](bool v) { return TermResult::ok(Value::boolean(v)); };

  if (name == "+") return ints() ? I(a[0].i + a[1].i) : bad();
  if (name == "-") return ints() ? I(a[0].i - a[1].i) : bad();
  if (name == "*") return ints() ? I(a[0].i * a[1].i) : bad();
  if (name == "/" || name == "%") {
    if (!ints()) return bad();
    if (a[1].i == 0) return TermResult::bottom("division by zero");
    return I(name == "/" ? a[0].i / a[1].i : a[0].i % a[1].i);
  }
  if (name == "neg") return a.size() == 1 && a[0].kind == VK::Int ? I(-a[0].i) : bad();
  if (name == "<") return ints() ? B(a[0].i < a[1].i) : bad();
  if (name == "<=") return ints() ? B(a[0].i <= a[1].i) : bad();
  if (name == ">") return ints() ? B(a[0].i > a[1].i) : bad();
  if (name == ">=") return ints() ? B(a[0].i >= a[1].i) : bad();
  if (name == "=") return B(value_equal(a[0], a[1]));
  if (name == "!=") return B(!value_equal(a[0], a[1]));
  if (name == "and") return bools() ? B(a[0].b && a[1].b) : bad();
  if (name == "or") return bools() ? B(a[0].b || a[1].b) : bad();
  if (name == "in" || name == "notin") {
    bool found = false;
    if (is_set_like(a[1])) found = a[1].kind == VK::Set && a[1].contains(a[0]);
    else if (a[1].kind == VK::Seq) found = std::find(a[1].elems.begin(), a[1].elems.end(), a[0]) != a[1].elems.end();
    else return bad();
    return B(name == "in" ? found : !found);
  }
  if (name == "subset") {
    if (!is_set_like(a[0]) || !is_set_like(a[1])) return bad();
    return B(std::all_of(a[0].elems.begin(), a[0].elems.end(), [&](const Value& v) { return a[1].contains(v); }));
  }
  if (name == "union" || name == "inter" || name == "diff") {
    if (!is_set_like(a[0]) || !is_set_like(a[1])) return bad();
    std::vector<Value> out;
    const auto &x = a[0].elems, &y = a[1].elems;
    if (name == "union") std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    else if (name == "inter") std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    else std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return TermResult::ok(Value::set(std::move(out)));
  }
  if (name == "dagger") {
    if (!is_map_like(a[0]) || !is_map_like(a[1])) return bad();
    auto m = a[0].map;
    for (const auto& [k, v] : a[1].map) m[k] = v;
    return TermResult::ok(Value::map_of(std::move(m)));
  }
  if (name == "dom") {
    if (!is_map_like(a[0])) return bad();
    std::vector<Value> ks;
    for (const auto& [k, v] : a[0].map) ks.push_back(Value::integer(k));
    return TermResult::ok(Value::set(std::move(ks)));
  }
  if (name == "conc") {
    if (a[0].kind != VK::Seq || a[1].kind != VK::Seq) return bad();
    auto out = a[0].elems;
    out.insert(out.end(), a[1].elems.begin(), a[1].elems.end());
    return TermResult::ok(Value::seq(std::move(out)));
  }
  if (name == "head" || name == "tail") {
    if (a.size() != 1 || a[0].kind != VK::Seq) return bad();
    if (a[0].elems.empty()) return TermResult::bottom(name + " of empty sequence");
    if (name == "head") return TermResult::ok(a[0].elems.front());
    return TermResult::ok(Value::seq({a[0].elems.begin() + 1, a[0].elems.end()}));
  }
  if (name == "max" || name == "min") {
    if (a.size() != 1 || !is_set_like(a[0])) return bad();
    if (a[0].elems.empty()) return TermResult::bottom(name + " of empty set");
    const Value& v = name == "max" ? a[0].elems.back() : a[0].elems.front();
    return v.kind == VK::Int ? TermResult::ok(v) : bad();
  }
  // Memory predicates. Pointer arguments must be nil or valid.
  if (a.size() == 1 && a[0].kind == VK::Ptr && a[0].ptr && !st_.valid(*a[0].ptr))
    return TermResult::bottom("dangling pointer passed to " + name);
  if (name == "Block") {
    if (a.size() != 1 || a[0].kind != VK::Ptr) return bad();
    return TermResult::ok(block_value(st_, a[0]));
  }
  if (name == "InHeap") {
    if (a.size() != 1 || a[0].kind != VK::Ptr) return bad();
    return B(!a[0].ptr || st_.blocks().at(a[0].ptr->block).heap);
  }
  if (name == "PtrInit") {
    if (a.size() != 1 || a[0].kind != VK::Ptr) return bad();
    if (!a[0].ptr) return B(true);
    bool ok = true;
    for (const auto& u : st_.block_units(*a[0].ptr)) {
      trace_.insert(u);
      const Value& v = st_.read(u);
      if (v.kind == VK::Ptr && v.ptr) ok = false;
    }
    return B(ok);
  }
  if (name == "Unique" || name == "Unique_m") {
    if (a.size() != 1 || a[0].kind != VK::Ptr) return bad();
    if (name == "Unique_m") {
      std::vector<Value> all;
      for (const auto& [u, v] : st_.contents()) all.push_back(Value::pointer(u));
      return TermResult::ok(Value::set(std::move(all)));
    }
    if (!a[0].ptr) return TermResult::bottom("dereference of nil");
    const Address& x = *a[0].ptr;
    if (!st_.is_unit(x)) return TermResult::bottom("dereference of non-unit address");
    for (const auto& [u, v] : st_.contents()) trace_.insert(u);
    const Value& target = st_.read(x);
    if (target.kind != VK::Ptr) return bad();
    if (!target.ptr) return B(true);
    for (const auto& [u, v] : st_.contents()) {
      if (u == x || v.kind != VK::Ptr || !v.ptr) continue;
      // Blocks of two addresses overlap iff one lies within the other.
      if (v.ptr->within(*target.ptr) || target.ptr->within(*v.ptr)) return B(false);
    }
    return B(true);
  }
  if (name == "snap") {
    if (a.size() != 1 || a[0].kind != VK::Ptr || !a[0].ptr) return TermResult::bottom("snap of nil");
    if (!st_.has_snapshot() || !st_.snapshot().count(*a[0].ptr)) return TermResult::bottom("address not in snapshot");
    return TermResult::ok(st_.snapshot_read(*a[0].ptr));
  }
  return TermResult::bottom("unknown builtin " + name);
}

namespace {

Truth t_not(Truth a) {
  switch (a) {
    case Truth::T: return Truth::F;
    case Truth::F: return Truth::T;
    default: return a;
  }
}

// Strong Kleene conjunction; fuel exhaustion behaves like N but is kept
// distinct so it is never mistaken for a genuine N.
Truth t_and(Truth a, Truth b) {
  if (a == Truth::F || b == Truth::F) return Truth::F;
  if (a == Truth::Fuel || b == Truth::Fuel) return Truth::Fuel;
  if (a == Truth::N || b == Truth::N) return Truth::N;
  return Truth::T;
}

Truth from_result(const TermResult& r) {
  if (r.status == S::Fuel) return Truth::Fuel;
  if (!r.defined() || r.value.kind != VK::Bool) return Truth::N;
  return r.value.b ? Truth::T : Truth::F;
}

}  // namespace

Truth Evaluator::formula(const Formula& f, const Env& env) {
  switch (f.kind) {
    case Formula::Kind::BoolTerm: return from_result(term(f.term(0), env));
    case Formula::Kind::Undef: return Truth::N;
    case Formula::Kind::Eq: {
      auto a = term(f.term(0), env);
      auto b = term(f.term(1), env);
      if (a.status == S::Fuel || b.status == S::Fuel) return Truth::Fuel;
      if (!a.defined() || !b.defined()) return Truth::N;
      return value_equal(a.value, b.value) ? Truth::T : Truth::F;
    }
    case Formula::Kind::HasType: {
      auto a = term(f.term(0), env);
      if (a.status == S::Fuel) return Truth::Fuel;
      if (!a.defined()) return Truth::N;
      return has_type(st_, a.value, f.type) ? Truth::T : Truth::F;
    }
    case Formula::Kind::Delta: {
      Truth a = formula(f.sub(0), env);
      if (a == Truth::Fuel) return a;
      return a == Truth::N ? Truth::F : Truth::T;
    }
    case Formula::Kind::Not: return t_not(formula(f.sub(0), env));
    case Formula::Kind::And: {
      Truth a = formula(f.sub(0), env);
      if (a == Truth::F) return a;
      return t_and(a, formula(f.sub(1), env));
    }
    case Formula::Kind::Forall: return forall(f, env);
  }
  return Truth::N;
}

Truth Evaluator::forall(const Formula& f, const Env& env) {
  std::vector<Value> domain;
  const Type& r = st_.types().resolve(f.type);
  switch (r.kind) {
    case Type::Kind::Int:
      for (std::int64_t i = opt_.int_lo; i <= opt_.int_hi; ++i) domain.push_back(Value::integer(i));
      break;
    case Type::Kind::Bool: domain = {Value::boolean(false), Value::boolean(true)}; break;
    case Type::Kind::AnyPtr:
      domain.push_back(Value::nil());
      for (const auto& [u, v] : st_.contents()) domain.push_back(Value::pointer(u));
      break;
    case Type::Kind::Ptr: {
      domain.push_back(Value::nil());
      const Type& want = st_.types().resolve(r.elem());
      for (const auto& a : all_addresses(st_))
        if (st_.types().resolve(*st_.type_at(a)) == want) domain.push_back(Value::pointer(a));
      break;
    }
    default: throw EvalError("quantifier over unbounded type " + to_string(f.type));
  }
  Env inner = env;
  Truth acc = Truth::T;
  for (const auto& v : domain) {
    inner[f.binder] = v;
    acc = t_and(acc, formula(f.sub(0), inner));
    if (acc == Truth::F) break;
  }
  return acc;
}

}  // namespace slv
