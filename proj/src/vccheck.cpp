#include "slv/vccheck.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "slv/gen.hpp"
#include "slv/normalize.hpp"
#include "slv/printer.hpp"

namespace slv {

Entailment entailment_of(const VC& vc) {
  Entailment e;
  e.name = "vc " + std::to_string(vc.id);
  e.hyps = vc.hyps;
  e.concl = vc.show;
  return e;
}

Entailment entailment_of(const Lemma& l) {
  Entailment e;
  e.name = l.name;
  e.binders = l.binders;
  for (const auto& h : l.hyps)
    for (const auto& c : normal_conjuncts(h)) e.hyps.push_back(c);
  e.concl = l.concl;
  return e;
}

std::string Counterexample::dump() const {
  std::ostringstream os;
  os << "trial " << trial << " shape " << shape << " conclusion " << to_string(concl) << "\n";
  for (const auto& [k, v] : env) os << "let " << k << " = " << to_string(v) << "\n";
  os << state.dump();
  return os.str();
}

std::string Verdict::summary() const {
  switch (status) {
    case Status::Proved: return "proved(" + method + ")";
    case Status::Refuted: return "refuted";
    case Status::Unknown: return "unknown(" + reason + ")";
  }
  return "";
}

namespace {

using TK = Term::Kind;
using FK = Formula::Kind;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

bool has_fields(const TypeTable& tt, const Type& t, std::initializer_list<const char*> names) {
  const Type& r = tt.resolve(t);
  if (r.kind != Type::Kind::Rec) return false;
  for (const char* n : names)
    if (std::find(r.fields.begin(), r.fields.end(), n) == r.fields.end()) return false;
  return true;
}

struct Plan {
  Shape::Kind kind = Shape::Kind::Arbitrary;
  std::string root;  // shape root variable, empty for `any`
  Type node;         // record type of the root
  std::vector<std::string> fixed;
};

Plan plan_for(const Context& ctx) {
  Plan p;
  auto ptr_rec = [&](const std::string& v, std::initializer_list<const char*> f) {
    const Type& t = ctx.types.resolve(ctx.vars.at(v));
    return t.kind == Type::Kind::Ptr && has_fields(ctx.types, t.elem(), f);
  };
  if (ctx.vars.count("vroot") && ctx.vars.count("root") && ptr_rec("root", {"l", "r", "m"})) {
    p.kind = Shape::Kind::TwoSuccessor;
    p.root = "root";
    p.fixed = {"root", "vroot"};
  } else {
    for (const auto& v : ctx.var_order)
      if (ptr_rec(v, {"l", "r", "K", "D"})) {
        p.kind = Shape::Kind::Bst;
        p.root = v;
        p.fixed = {v};
        break;
      }
  }
  if (!p.root.empty()) p.node = ctx.types.resolve(ctx.vars.at(p.root)).elem();
  return p;
}

Value pick(const std::vector<Value>& pool, Rng& rng) {
  return pool[uniform(rng, 0, static_cast<std::int64_t>(pool.size()) - 1)];
}

// Fresh heap node with nil pointer fields and pool integers.
Value fresh_node(State& st, const Type& rec, Rng& rng) {
  auto ints = int_pool(st);
  Address a = st.alloc(rec);
  for (const auto& u : st.block_units(a)) {
    const Type t = st.types().resolve(*st.type_at(u));
    if (t.kind == Type::Kind::Int) st.write(u, Value::integer(ints[uniform(rng, 0, static_cast<std::int64_t>(ints.size()) - 1)]));
  }
  return Value::pointer(a);
}

// A slot on a random downward path from the root variable.
Value walk_slot(const State& st, const Plan& plan, Rng& rng) {
  Address slot = *st.var_addr(plan.root);
  const Type& node = st.types().resolve(plan.node);
  std::vector<std::string> links;
  for (std::size_t i = 0; i < node.fields.size(); ++i) {
    const Type& ft = st.types().resolve(node.elems[i]);
    if (ft.kind == Type::Kind::Ptr && st.types().resolve(ft.elem()) == node) links.push_back(node.fields[i]);
  }
  int steps = static_cast<int>(uniform(rng, 0, 8));
  for (int i = 0; i < steps && !links.empty(); ++i) {
    const Value& cur = st.read(slot);
    if (!cur.ptr) break;
    slot = cur.ptr->field(links[uniform(rng, 0, static_cast<std::int64_t>(links.size()) - 1)]);
  }
  return Value::pointer(slot);
}

void randomize_program_vars(State& st, const Context& ctx, const Plan& plan, Rng& rng) {
  for (const auto& v : ctx.var_order) {
    if (std::find(plan.fixed.begin(), plan.fixed.end(), v) != plan.fixed.end()) continue;
    const Type& t = ctx.types.resolve(ctx.vars.at(v));
    Address addr = *st.var_addr(v);
    if (t.kind == Type::Kind::Ptr && ctx.types.is_record(t.elem()) && uniform(rng, 0, 1) == 0) {
      st.write(addr, fresh_node(st, t.elem(), rng));
      continue;
    }
    if (!plan.root.empty() && t.kind == Type::Kind::Ptr) {
      const Type& inner = ctx.types.resolve(t.elem());
      if (inner.kind == Type::Kind::Ptr && ctx.types.resolve(inner.elem()) == ctx.types.resolve(plan.node) &&
          uniform(rng, 0, 1) == 0) {
        st.write(addr, walk_slot(st, plan, rng));
        continue;
      }
    }
    randomize_vars(st, ctx, {v}, rng);
  }
}

std::optional<Value> random_binding(const State& st, const Type& t, Rng& rng) {
  const Type& r = st.types().resolve(t);
  switch (r.kind) {
    case Type::Kind::Int:
    case Type::Kind::Bool:
    case Type::Kind::Ptr:
    case Type::Kind::AnyPtr: return random_value(st, r, rng);
    default: return std::nullopt;
  }
}

bool mentions_block(const Value& v, int id) {
  if (v.ptr && v.ptr->block == id) return true;
  for (const auto& e : v.elems)
    if (mentions_block(e, id)) return true;
  return false;
}

class Sampler {
 public:
  Sampler(const Context& ctx, const Entailment& e, const CheckOptions& opt) : ctx_(ctx), e_(e), opt_(opt) {
    for (const auto& b : e.binders) types_[b.name] = b.type;
    std::set<std::string> free;
    for (const auto& h : e.hyps) {
      auto f = free_vars(*h);
      free.insert(f.begin(), f.end());
    }
    auto f = free_vars(*e.concl);
    free.insert(f.begin(), f.end());
    for (const auto& v : free)
      if (ctx.consts.count(v)) types_[v] = ctx.consts.at(v);
    plan_ = plan_for(ctx);
  }

  std::string blocker;

  std::optional<std::pair<State, Env>> sample(int trial, std::string* shape_out) {
    Rng rng(splitmix(opt_.seed ^ splitmix(static_cast<std::uint64_t>(trial) + 1)));
    Shape shape;
    shape.kind = plan_.kind;
    shape.root = plan_.root;
    int hi = std::max(0, opt_.max_size);
    shape.size = static_cast<int>(plan_.kind == Shape::Kind::Arbitrary ? uniform(rng, 0, std::min(hi, 3))
                                  : plan_.kind == Shape::Kind::TwoSuccessor ? uniform(rng, 1, std::max(1, hi))
                                                                            : uniform(rng, 0, hi));
    if (shape_out) *shape_out = to_string(shape);
    State st;
    try {
      st = gen_state(ctx_, shape, rng);
    } catch (const GenError& err) {
      blocker = err.what();
      return std::nullopt;
    }
    randomize_program_vars(st, ctx_, plan_, rng);
    Env env;
    if (!bind(st, env, rng)) return std::nullopt;
    repair(st, env);
    return std::make_pair(std::move(st), std::move(env));
  }

 private:
  const Context& ctx_;
  const Entailment& e_;
  const CheckOptions& opt_;
  std::map<std::string, Type> types_;
  Plan plan_;

  bool unbound(const Env& env, const std::string& v) const { return types_.count(v) && !env.count(v); }

  // `v = e`, `e = v` or `v in S` with v unbound: v is the variable the
  // hypothesis determines.
  std::string target_of(const Formula& h, const Env& env, TermPtr& source, bool& member) const {
    member = false;
    if (h.kind == FK::Eq) {
      for (int i = 0; i < 2; ++i) {
        const TermPtr& x = h.terms[i];
        if (x->kind == TK::Var && unbound(env, x->name)) {
          source = h.terms[1 - i];
          return x->name;
        }
      }
    }
    if (h.kind == FK::BoolTerm) {
      const Term& t = h.term(0);
      if (t.kind == TK::Apply && t.name == "in" && t.args.size() == 2 && t.args[0]->kind == TK::Var &&
          unbound(env, t.args[0]->name)) {
        source = t.args[1];
        member = true;
        return t.args[0]->name;
      }
    }
    return "";
  }

  bool bind_random(const State& st, Env& env, const std::string& v, Rng& rng) {
    auto val = random_binding(st, types_.at(v), rng);
    if (!val) return false;
    env[v] = *val;
    return true;
  }

  bool bind(State& st, Env& env, Rng& rng) {
    for (const auto& h : e_.hyps) {
      TermPtr source;
      bool member = false;
      std::string target = target_of(*h, env, source, member);
      for (const auto& v : free_vars(*h)) {
        if (v == target || !unbound(env, v)) continue;
        // Wait for a later defining hypothesis when no random value exists.
        if (!random_binding(st, types_.at(v), rng)) continue;
        bind_random(st, env, v, rng);
      }
      if (target.empty()) {
        repair_one(st, env, *h, rng);
        continue;
      }
      bool ready = true;
      for (const auto& v : free_vars(*source))
        if (unbound(env, v)) ready = false;
      if (!ready) continue;
      Evaluator ev(ctx_, st, opt_.eval);
      TermResult r = ev.eval(source, env);
      if (!r.defined()) continue;
      if (!member) {
        env[target] = r.value;
      } else if ((r.value.kind == Value::Kind::Set || r.value.kind == Value::Kind::Seq) && !r.value.elems.empty()) {
        env[target] = pick(r.value.elems, rng);
      }
    }
    for (const auto& [v, t] : types_) {
      if (env.count(v)) continue;
      if (!bind_random(st, env, v, rng)) {
        blocker = "no sampler for '" + v + "' of type " + to_string(t);
        return false;
      }
    }
    return true;
  }

  bool write_at(State& st, const Env& env, const TermPtr& addr, const Value& v) {
    Evaluator ev(ctx_, st, opt_.eval);
    TermResult a = ev.eval(addr, env);
    if (!a.defined() || !a.value.ptr || !st.is_unit(*a.value.ptr)) return false;
    try {
      st.write(*a.value.ptr, v);
    } catch (const std::exception&) {
      return false;
    }
    return true;
  }

  // Makes `*a = e` true by writing e at a, and `*a in S` by writing a
  // random member of S.
  void repair_one(State& st, const Env& env, const Formula& h, Rng& rng) {
    Evaluator ev(ctx_, st, opt_.eval);
    if (ev.eval(h, env) == Truth::T) return;
    if (h.kind == FK::Eq) {
      for (int i = 0; i < 2; ++i) {
        const TermPtr& lhs = h.terms[i];
        if (lhs->kind != TK::Deref) continue;
        TermResult v = ev.eval(h.terms[1 - i], env);
        if (v.defined() && write_at(st, env, lhs->args[0], v.value)) return;
      }
    } else if (h.kind == FK::BoolTerm) {
      const Term& t = h.term(0);
      if (t.kind != TK::Apply || t.name != "in" || t.args.size() != 2 || t.args[0]->kind != TK::Deref) return;
      TermResult s = ev.eval(t.args[1], env);
      if (!s.defined() || s.value.elems.empty()) return;
      write_at(st, env, t.args[0]->args[0], pick(s.value.elems, rng));
    }
  }

  void repair(State& st, const Env& env) {
    Rng none(0);
    for (const auto& h : e_.hyps)
      if (h->kind == FK::Eq) repair_one(st, env, *h, none);
  }
};

Counterexample shrink(const Context& ctx, const Entailment& e, Counterexample cex, const EvalOptions& eo) {
  int attempts = 0;
  bool changed = true;
  while (changed && attempts < 64) {
    changed = false;
    std::vector<int> heap;
    for (const auto& [id, info] : cex.state.blocks())
      if (info.heap) heap.push_back(id);
    for (int id : heap) {
      if (++attempts > 64) break;
      bool pinned = false;
      for (const auto& [k, v] : cex.env) pinned = pinned || mentions_block(v, id);
      if (pinned) continue;
      State s = cex.state;
      std::vector<Address> refs;
      for (const auto& [a, v] : s.contents())
        if (a.block != id && v.ptr && v.ptr->block == id) refs.push_back(a);
      for (const auto& a : refs) s.write(a, Value::nil());
      s.drop_block(id);
      ReplayResult r = replay(ctx, e, s, cex.env, eo);
      if (r.refutes()) {
        cex.state = std::move(s);
        cex.concl = r.concl;
        changed = true;
        break;
      }
    }
  }
  return cex;
}

}  // namespace

ReplayResult replay(const Context& ctx, const Entailment& e, const State& st, const Env& env, const EvalOptions& opt) {
  ReplayResult r;
  Evaluator ev(ctx, st, opt);
  for (const auto& h : e.hyps)
    if (ev.eval(h, env) != Truth::T) return r;
  r.hyps_true = true;
  r.concl = ev.eval(e.concl, env);
  return r;
}

std::optional<std::pair<State, Env>> sample_trial(const Context& ctx, const Entailment& e, const CheckOptions& opt,
                                                  int trial, std::string* shape) {
  Sampler s(ctx, e, opt);
  return s.sample(trial, shape);
}

FalsifyResult falsify(const Context& ctx, const Entailment& e, const CheckOptions& opt) {
  FalsifyResult out;
  Sampler sampler(ctx, e, opt);
  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < opt.trials; ++i) {
    if (opt.budget_ms > 0 &&
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count() >
            opt.budget_ms)
      break;
    ++out.trials;
    std::string shape;
    auto s = sampler.sample(i, &shape);
    if (!s) {
      if (!sampler.blocker.empty()) {
        out.blocker = sampler.blocker;
        break;
      }
      continue;
    }
    ReplayResult r;
    try {
      r = replay(ctx, e, s->first, s->second, opt.eval);
    } catch (const EvalError& err) {
      out.blocker = err.what();
      break;
    }
    if (!r.hyps_true) continue;
    ++out.satisfied;
    if (r.concl == Truth::Fuel) {
      ++out.fuel;
      continue;
    }
    if (r.concl == Truth::T) continue;
    Counterexample c{std::move(s->first), std::move(s->second), shape, i, r.concl};
    out.cex = shrink(ctx, e, std::move(c), opt.eval);
    break;
  }
  return out;
}

namespace {

Verdict from_falsify(Verdict v, const FalsifyResult& f) {
  v.trials = f.trials;
  v.satisfied = f.satisfied;
  if (f.cex) {
    v.status = Verdict::Status::Refuted;
    v.cex = f.cex;
  } else if (!f.blocker.empty()) {
    v.reason = "not testable: " + f.blocker;
  } else if (f.satisfied == 0) {
    v.reason = "hypotheses never satisfied in " + std::to_string(f.trials) + " trials";
  } else {
    v.reason = "tested, 0 counterexamples";
  }
  return v;
}

}  // namespace

Verdict check_vc(const Context& ctx, const VC& vc, const CheckOptions& opt) {
  Verdict v;
  v.id = std::to_string(vc.id);
  v.seed = opt.seed;
  ProverOptions po = opt.prover;
  // Consequence steps may only use the lemmas they cite.
  if (vc.rule == "CONSEQ") {
    for (const auto& h : vc.hints)
      if (ctx.lemma(h)) po.only.push_back(h);
    if (po.only.empty()) po.use_lemmas = false;
  }
  ProofResult p = prove(ctx, vc.hyps, vc.show, po);
  if (p.proved && !opt.falsify_proved) {
    v.status = Verdict::Status::Proved;
    v.method = p.method();
    return v;
  }
  Verdict t = from_falsify(v, falsify(ctx, entailment_of(vc), opt));
  if (p.proved && t.status != Verdict::Status::Refuted) {
    t.status = Verdict::Status::Proved;
    t.method = p.method();
  }
  return t;
}

Verdict check_lemma(const Context& ctx, const Lemma& l, const CheckOptions& opt) {
  Verdict v;
  v.id = l.name;
  v.seed = opt.seed;
  return from_falsify(v, falsify(ctx, entailment_of(l), opt));
}

std::string format_verdict(const Verdict& v, bool with_cex) {
  std::ostringstream os;
  os << v.id << ": " << v.summary();
  if (v.status != Verdict::Status::Proved)
    os << " trials=" << v.trials << " satisfied=" << v.satisfied << " seed=" << v.seed;
  os << "\n";
  if (with_cex && v.cex) {
    std::istringstream in(v.cex->dump());
    for (std::string line; std::getline(in, line);) os << "  " << line << "\n";
  }
  return os.str();
}

}  // namespace slv
