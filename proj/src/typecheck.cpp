#include "slv/typecheck.hpp"

#include <functional>

#include "slv/printer.hpp"

namespace slv {

namespace {

using K = Type::Kind;

const std::set<std::string> kArith = {"+", "-", "*", "/", "%"};
const std::set<std::string> kCompare = {"<", "<=", ">", ">="};
const std::set<std::string> kSetOps = {"union", "inter", "diff"};
const std::set<std::string> kBuiltins = {
    "+", "-", "*", "/", "%", "neg", "<", "<=", ">", ">=", "=", "!=", "and", "or",
    "in", "notin", "subset", "union", "inter", "diff", "dagger", "conc", "head", "tail",
    "max", "min", "dom", "InHeap", "Unique", "PtrInit", "Block", "snap", "Unique_m"};
const std::set<std::string> kProgramOps = {"+", "-", "*", "/", "%", "neg", "<", "<=", ">",
                                           ">=", "=", "!=", "not", "cand", "cor"};

[[noreturn]] void fail(const Pos& pos, const std::string& msg) { throw TypeError(pos, msg); }

class Checker {
 public:
  Checker(const Context& ctx, const Locals& locals) : ctx_(ctx), tt_(ctx.types), locals_(locals) {}

  Type term(const Term& t) {
    switch (t.kind) {
      case Term::Kind::IntLit: return Type::integer();
      case Term::Kind::BoolLit: return Type::boolean();
      case Term::Kind::Nil: return Type::nil();
      case Term::Kind::EmptyColl: return Type::of(K::EmptyColl);
      case Term::Kind::EmptySeq: return Type::of(K::EmptySeq);
      case Term::Kind::Var: {
        auto it = locals_.find(t.name);
        if (it != locals_.end()) return it->second;
        auto c = ctx_.consts.find(t.name);
        if (c != ctx_.consts.end()) return c->second;
        fail(t.pos, "unbound variable '" + t.name + "'");
      }
      case Term::Kind::AddrOfVar: {
        auto it = ctx_.vars.find(t.name);
        if (it == ctx_.vars.end()) fail(t.pos, "'&" + t.name + "' does not name a program variable");
        return Type::ptr(it->second);
      }
      case Term::Kind::Deref: {
        Type a = term(t.arg(0));
        const Type& r = tt_.resolve(a);
        if (r.kind == K::Ptr) return r.elem();
        if (r.kind == K::AnyPtr || r.kind == K::Nil || r.kind == K::Unknown) return Type::unknown();
        fail(t.pos, "dereference of non-pointer type " + to_string(a));
      }
      case Term::Kind::FieldAddr: {
        Type a = term(t.arg(0));
        const Type& r = tt_.resolve(a);
        if (r.kind == K::AnyPtr || r.kind == K::Unknown) return Type::any_ptr();
        if (r.kind != K::Ptr) fail(t.pos, "field address of non-pointer type " + to_string(a));
        auto ft = tt_.field_type(r.elem(), t.name);
        if (!ft) fail(t.pos, "type " + to_string(r.elem()) + " has no field '" + t.name + "'");
        return Type::ptr(*ft);
      }
      case Term::Kind::IndexAddr: {
        Type a = term(t.arg(0));
        expect(t.arg(1), Type::integer(), "array index");
        const Type& r = tt_.resolve(a);
        if (r.kind == K::AnyPtr || r.kind == K::Unknown) return Type::any_ptr();
        if (r.kind != K::Ptr || !tt_.is_array(r.elem()))
          fail(t.pos, "index address of non-array pointer type " + to_string(a));
        return Type::ptr(tt_.resolve(r.elem()).elem());
      }
      case Term::Kind::Arrow:
      case Term::Kind::Dot:
      case Term::Kind::Index: fail(t.pos, "selection does not apply to a memory location");
      case Term::Kind::Cond: {
        expect(t.arg(0), Type::boolean(), "conditional guard");
        Type a = term(t.arg(1));
        Type b = term(t.arg(2));
        auto u = unify(tt_, a, b);
        if (!u) fail(t.pos, "conditional branches have different types " + to_string(a) + " and " + to_string(b));
        return *u;
      }
      case Term::Kind::SetLit: {
        Type e = Type::unknown();
        for (const auto& a : t.args) e = join(e, term(*a), a->pos, "set elements");
        require_unit(e, t.pos);
        return Type::set_of(e);
      }
      case Term::Kind::SeqLit: {
        Type e = Type::unknown();
        for (const auto& a : t.args) e = join(e, term(*a), a->pos, "sequence elements");
        require_unit(e, t.pos);
        return Type::seq_of(e);
      }
      case Term::Kind::MapLit:
        for (const auto& a : t.args) expect(*a, Type::integer(), "map entry");
        return Type::map();
      case Term::Kind::Apply: return apply(t);
    }
    fail(t.pos, "unknown term");
  }

  void formula(const Formula& f) {
    switch (f.kind) {
      case Formula::Kind::BoolTerm: expect(f.term(0), Type::boolean(), "formula"); return;
      case Formula::Kind::Undef: return;
      case Formula::Kind::Eq: {
        Type a = term(f.term(0));
        Type b = term(f.term(1));
        if (!unify(tt_, a, b)) fail(f.pos, "cannot compare " + to_string(a) + " with " + to_string(b));
        return;
      }
      case Formula::Kind::HasType: term(f.term(0)); return;
      case Formula::Kind::Forall: {
        auto saved = locals_;
        locals_[f.binder] = f.type;
        formula(f.sub(0));
        locals_ = saved;
        return;
      }
      default:
        for (const auto& s : f.subs) formula(*s);
    }
  }

  void expect(const Term& t, const Type& want, const std::string& what) {
    Type got = term(t);
    if (!assignable(tt_, got, want))
      fail(t.pos, what + " has type " + to_string(got) + ", expected " + to_string(want));
  }

 private:
  const Context& ctx_;
  const TypeTable& tt_;
  Locals locals_;

  Type join(const Type& a, const Type& b, const Pos& pos, const std::string& what) {
    auto u = unify(tt_, a, b);
    if (!u) fail(pos, what + " have incompatible types " + to_string(a) + " and " + to_string(b));
    return *u;
  }

  void require_unit(const Type& e, const Pos& pos) {
    if (e.kind != K::Unknown && !tt_.is_unit(e))
      fail(pos, "collections may only hold integer, boolean or pointer values, not " + to_string(e));
  }

  Type kind_of(const Term& t, K want, const std::string& what) {
    Type got = term(t);
    const Type& r = tt_.resolve(got);
    if (r.kind == want || r.kind == K::Unknown) return r;
    if (r.kind == K::EmptyColl && (want == K::Set || want == K::Map)) return r;
    if (r.kind == K::EmptySeq && want == K::Seq) return r;
    fail(t.pos, what + " has type " + to_string(got));
  }

  Type apply(const Term& t) {
    const std::string& f = t.name;
    auto arity = [&](std::size_t n) {
      if (t.args.size() != n)
        fail(t.pos, "'" + f + "' expects " + std::to_string(n) + " argument(s), got " + std::to_string(t.args.size()));
    };
    if (kBuiltins.count(f)) {
      if (f == "neg") {
        arity(1);
        expect(t.arg(0), Type::integer(), "operand of '-'");
        return Type::integer();
      }
      if (f == "head" || f == "tail") {
        arity(1);
        Type s = kind_of(t.arg(0), K::Seq, "operand of '" + f + "'");
        if (f == "tail") return s.kind == K::Seq ? s : Type::of(K::EmptySeq);
        return s.kind == K::Seq ? s.elem() : Type::unknown();
      }
      if (f == "max" || f == "min") {
        arity(1);
        expect(t.arg(0), Type::set_of(Type::integer()), "operand of '" + f + "'");
        return Type::integer();
      }
      if (f == "dom") {
        arity(1);
        kind_of(t.arg(0), K::Map, "operand of 'dom'");
        return Type::set_of(Type::integer());
      }
      if (f == "InHeap" || f == "Unique" || f == "PtrInit" || f == "Block" || f == "Unique_m") {
        arity(1);
        Type a = term(t.arg(0));
        if (!tt_.is_pointer(a) && a.kind != K::Unknown) fail(t.pos, "'" + f + "' expects a pointer");
        if (f == "Block" || f == "Unique_m") return Type::set_of(Type::any_ptr());
        return Type::boolean();
      }
      if (f == "snap") {
        arity(1);
        Type a = term(t.arg(0));
        const Type& r = tt_.resolve(a);
        if (r.kind == K::Ptr && tt_.is_unit(r.elem())) return r.elem();
        if (r.kind == K::AnyPtr || r.kind == K::Unknown) return Type::unknown();
        fail(t.pos, "'snap' expects the address of a memory unit");
      }
      arity(2);
      if (kArith.count(f)) {
        expect(t.arg(0), Type::integer(), "operand of '" + f + "'");
        expect(t.arg(1), Type::integer(), "operand of '" + f + "'");
        return Type::integer();
      }
      if (kCompare.count(f)) {
        expect(t.arg(0), Type::integer(), "operand of '" + f + "'");
        expect(t.arg(1), Type::integer(), "operand of '" + f + "'");
        return Type::boolean();
      }
      if (f == "=" || f == "!=") {
        Type a = term(t.arg(0));
        Type b = term(t.arg(1));
        if (!unify(tt_, a, b)) fail(t.pos, "cannot compare " + to_string(a) + " with " + to_string(b));
        return Type::boolean();
      }
      if (f == "and" || f == "or") {
        expect(t.arg(0), Type::boolean(), "operand of '" + f + "'");
        expect(t.arg(1), Type::boolean(), "operand of '" + f + "'");
        return Type::boolean();
      }
      if (f == "in" || f == "notin") {
        Type e = term(t.arg(0));
        Type s = term(t.arg(1));
        if (tt_.resolve(s).kind != K::Seq) s = kind_of(t.arg(1), K::Set, "right operand of '" + f + "'");
        else s = tt_.resolve(s);
        if ((s.kind == K::Set || s.kind == K::Seq) && !unify(tt_, e, s.elem()))
          fail(t.pos, "element of type " + to_string(e) + " cannot belong to " + to_string(s));
        return Type::boolean();
      }
      if (f == "subset") {
        Type a = kind_of(t.arg(0), K::Set, "operand of 'subset'");
        Type b = kind_of(t.arg(1), K::Set, "operand of 'subset'");
        join(a, b, t.pos, "operands of 'subset'");
        return Type::boolean();
      }
      if (kSetOps.count(f)) {
        Type a = kind_of(t.arg(0), K::Set, "operand of '" + f + "'");
        Type b = kind_of(t.arg(1), K::Set, "operand of '" + f + "'");
        return join(a, b, t.pos, "operands of '" + f + "'");
      }
      if (f == "dagger") {
        kind_of(t.arg(0), K::Map, "operand of 'dagger'");
        kind_of(t.arg(1), K::Map, "operand of 'dagger'");
        return Type::map();
      }
      if (f == "conc") {
        Type a = kind_of(t.arg(0), K::Seq, "operand of 'conc'");
        Type b = kind_of(t.arg(1), K::Seq, "operand of 'conc'");
        return join(a, b, t.pos, "operands of 'conc'");
      }
    }
    const FuncDef* def = ctx_.func(f);
    if (!def) fail(t.pos, "unknown function '" + f + "'");
    arity(def->params.size());
    for (std::size_t i = 0; i < t.args.size(); ++i)
      expect(t.arg(i), def->params[i].type, "argument " + std::to_string(i + 1) + " of '" + f + "'");
    return def->result;
  }
};

void collect_calls(const Term& t, const Context& ctx, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Apply && ctx.func(t.name)) out.insert(t.name);
  for (const auto& a : t.args) collect_calls(*a, ctx, out);
}

}  // namespace

bool is_builtin(const std::string& name) { return kBuiltins.count(name) != 0; }

Type type_of(const Context& ctx, const Term& t, const Locals& locals) { return Checker(ctx, locals).term(t); }

void check_formula(const Context& ctx, const Formula& f, const Locals& locals) { Checker(ctx, locals).formula(f); }

void check_program_expr(const Context& ctx, const Term& t) {
  switch (t.kind) {
    case Term::Kind::IntLit:
    case Term::Kind::BoolLit:
    case Term::Kind::Nil:
    case Term::Kind::AddrOfVar:
    case Term::Kind::Deref:
    case Term::Kind::FieldAddr:
    case Term::Kind::IndexAddr: break;
    case Term::Kind::Var: fail(t.pos, "free variable '" + t.name + "' in program expression");
    case Term::Kind::Apply:
      if (!kProgramOps.count(t.name)) {
        std::string hint = t.name == "and" ? " (use cand)" : t.name == "or" ? " (use cor)" : "";
        fail(t.pos, "'" + t.name + "' is not allowed in program expressions" + hint);
      }
      break;
    default: fail(t.pos, "'" + print(t) + "' is not allowed in program expressions");
  }
  for (const auto& a : t.args) check_program_expr(ctx, *a);
}

void check_statement(const Context& ctx, const Statement& s) {
  Checker c(ctx, {});
  const TypeTable& tt = ctx.types;
  switch (s.kind) {
    case Statement::Kind::Skip: return;
    case Statement::Kind::Assign: {
      check_program_expr(ctx, *s.target);
      check_program_expr(ctx, *s.rhs);
      Type lhs = c.term(*s.target);
      Type rhs = c.term(*s.rhs);
      if (!tt.is_unit(lhs) || tt.resolve(lhs).kind == K::Nil)
        fail(s.pos, "assignment to a location of type " + to_string(lhs) + " (must be integer, boolean or pointer)");
      if (!assignable(tt, rhs, lhs))
        fail(s.pos, "type mismatch: cannot assign " + to_string(rhs) + " to " + to_string(lhs));
      return;
    }
    case Statement::Kind::Alloc: {
      check_program_expr(ctx, *s.target);
      Type lhs = c.term(*s.target);
      if (!assignable(tt, Type::ptr(s.alloc_type), lhs) || tt.resolve(lhs).kind != K::Ptr)
        fail(s.pos, "type mismatch: alloc(" + to_string(s.alloc_type) + ") assigned to " + to_string(lhs));
      if (s.alloc_type.kind == K::Named && !tt.contains(s.alloc_type.name))
        fail(s.pos, "unknown type '" + s.alloc_type.name + "'");
      return;
    }
    case Statement::Kind::If:
    case Statement::Kind::While:
      check_program_expr(ctx, *s.cond);
      c.expect(*s.cond, Type::boolean(), "condition");
      for (const auto& b : s.body) check_statement(ctx, *b);
      return;
    case Statement::Kind::Seq:
      for (const auto& b : s.body) check_statement(ctx, *b);
      return;
  }
}

std::map<std::string, std::set<std::string>> call_graph(const Context& ctx) {
  std::map<std::string, std::set<std::string>> g;
  for (const auto& [name, def] : ctx.funcs) {
    auto& out = g[name];
    collect_calls(*def.body, ctx, out);
  }
  return g;
}

std::vector<Diagnostic> check_drf_wellformed(const Context& ctx) {
  std::vector<Diagnostic> out;
  auto graph = call_graph(ctx);
  // Path from `from` to `target` through the call graph, empty if none.
  auto path_to = [&](const std::string& from, const std::string& target) {
    std::map<std::string, std::string> parent;
    std::vector<std::string> queue{from};
    parent[from] = "";
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const std::string cur = queue[i];
      if (cur == target) {
        std::vector<std::string> p;
        for (std::string n = cur; !n.empty(); n = parent[n]) p.insert(p.begin(), n);
        return p;
      }
      for (const auto& nxt : graph[cur])
        if (!parent.count(nxt)) {
          parent[nxt] = cur;
          queue.push_back(nxt);
        }
    }
    return std::vector<std::string>{};
  };

  for (const auto& name : ctx.func_order) {
    const FuncDef& def = ctx.funcs.at(name);
    std::set<std::string> params;
    for (const auto& p : def.params) params.insert(p.name);
    for (const auto& v : free_vars(*def.body))
      if (!params.count(v)) out.push_back({def.pos, "in '" + name + "': free variable '" + v + "' is not a parameter"});

    std::function<void(const Term&)> guard_check = [&](const Term& g) {
      std::set<std::string> callees;
      collect_calls(g, ctx, callees);
      for (const auto& c : callees) {
        auto p = path_to(c, name);
        if (p.empty()) continue;
        std::string s;
        for (const auto& n : p) s += (s.empty() ? "" : " -> ") + n;
        out.push_back({g.pos, "in '" + name + "': guard depends on '" + name + "' via " + s});
      }
    };
    std::function<void(const Term&)> walk = [&](const Term& t) {
      if (t.kind == Term::Kind::Cond) guard_check(t.arg(0));
      if (t.kind == Term::Kind::Apply && is_prelude_function(t.name) && !t.args.empty()) guard_check(t.arg(0));
      for (const auto& a : t.args) walk(*a);
    };
    walk(*def.body);
  }
  return out;
}

std::vector<Diagnostic> typecheck_all(const Context& ctx) {
  std::vector<Diagnostic> out;
  auto guard = [&](auto&& fn) {
    try {
      fn();
    } catch (const SyntaxError& e) {
      out.push_back({e.pos(), e.message()});
    }
  };
  for (const auto& name : ctx.func_order) {
    const FuncDef& def = ctx.funcs.at(name);
    guard([&] {
      Locals locals;
      for (const auto& p : def.params) locals[p.name] = p.type;
      Checker c(ctx, locals);
      Type body = c.term(*def.body);
      if (!assignable(ctx.types, body, def.result))
        fail(def.body->pos, "body of '" + name + "' has type " + to_string(body) + ", declared " + to_string(def.result));
    });
  }
  for (const auto& d : check_drf_wellformed(ctx)) out.push_back(d);
  for (const auto& l : ctx.lemmas) {
    guard([&] {
      Locals locals;
      for (const auto& p : l.binders) locals[p.name] = p.type;
      for (const auto& h : l.hyps) check_formula(ctx, *h, locals);
      check_formula(ctx, *l.concl, locals);
    });
  }
  if (ctx.program) {
    std::function<void(const Statement&)> walk = [&](const Statement& s) {
      if (s.kind == Statement::Kind::Seq) {
        for (const auto& b : s.body) walk(*b);
        return;
      }
      if (s.kind == Statement::Kind::If || s.kind == Statement::Kind::While) {
        guard([&] {
          check_program_expr(ctx, *s.cond);
          Checker(ctx, {}).expect(*s.cond, Type::boolean(), "condition");
        });
        for (const auto& b : s.body) walk(*b);
        return;
      }
      guard([&] { check_statement(ctx, s); });
    };
    walk(*ctx.program);
  }
  return out;
}

}  // namespace slv
