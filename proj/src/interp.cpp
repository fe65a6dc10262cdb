#include "slv/interp.hpp"

#include <stdexcept>

#include "slv/printer.hpp"

namespace slv {

const char* to_string(RunEvent::Kind k) {
  switch (k) {
    case RunEvent::Kind::Assign: return "assign";
    case RunEvent::Kind::Alloc: return "alloc";
    case RunEvent::Kind::LoopHead: return "loop-head";
    case RunEvent::Kind::Check: return "check";
    case RunEvent::Kind::AllocCheck: return "alloc-check";
    case RunEvent::Kind::Inconclusive: return "inconclusive";
    case RunEvent::Kind::Error: return "error";
  }
  return "?";
}

namespace {

struct RunFailure : std::runtime_error {
  Pos pos;
  RunFailure(const Pos& p, const std::string& m) : std::runtime_error(m), pos(p) {}
};

class Machine {
 public:
  Machine(const Context& ctx, const RunConfig& cfg, RunResult& res) : ctx_(ctx), cfg_(cfg), res_(res) {}

  void exec(const Statement& s) {
    run_checks(s, false);
    switch (s.kind) {
      case Statement::Kind::Skip: tick(s); break;
      case Statement::Kind::Seq:
        for (const auto& b : s.body) exec(*b);
        break;
      case Statement::Kind::Assign: {
        tick(s);
        Address dst = target_address(s);
        TermResult v = Evaluator(ctx_, res_.state, cfg_.eval).eval(*s.rhs);
        if (!v.defined()) throw RunFailure(s.pos, "right-hand side is " + to_string(v));
        try {
          res_.state.write(dst, v.value);
        } catch (const HeapError& e) {
          throw RunFailure(s.pos, e.what());
        }
        if (cfg_.log_steps) log(RunEvent::Kind::Assign, s.pos, to_string(dst) + " := " + to_string(v.value));
        break;
      }
      case Statement::Kind::Alloc: {
        tick(s);
        Address dst = target_address(s);
        Address fresh = res_.state.alloc(s.alloc_type);
        try {
          res_.state.write(dst, Value::pointer(fresh));
        } catch (const HeapError& e) {
          throw RunFailure(s.pos, e.what());
        }
        ++res_.allocs;
        if (cfg_.log_steps) log(RunEvent::Kind::Alloc, s.pos, to_string(dst) + " := " + to_string(fresh));
        if (cfg_.check_alloc) check_alloc_post(s);
        break;
      }
      case Statement::Kind::If:
        exec(*s.body[condition(s) ? 0 : 1]);
        break;
      case Statement::Kind::While:
        for (;;) {
          run_checks(s, true);
          if (!condition(s)) break;
          exec(*s.body[0]);
        }
        break;
    }
  }

 private:
  const Context& ctx_;
  const RunConfig& cfg_;
  RunResult& res_;

  void log(RunEvent::Kind k, const Pos& p, std::string d) { res_.log.push_back({k, p, std::move(d)}); }

  void tick(const Statement& s) {
    if (++res_.steps > cfg_.step_limit) throw RunFailure(s.pos, "step limit exceeded");
  }

  Address target_address(const Statement& s) {
    if (s.target->kind != Term::Kind::Deref) throw RunFailure(s.pos, "assignment target is not a dereference");
    TermResult a = Evaluator(ctx_, res_.state, cfg_.eval).eval(s.target->arg(0));
    if (!a.defined()) throw RunFailure(s.pos, "target address is " + to_string(a));
    if (a.value.kind != Value::Kind::Ptr || !a.value.ptr) throw RunFailure(s.pos, "assignment through nil");
    if (!res_.state.is_unit(*a.value.ptr)) throw RunFailure(s.pos, "assignment to non-unit address");
    return *a.value.ptr;
  }

  bool condition(const Statement& s) {
    tick(s);
    TermResult c = Evaluator(ctx_, res_.state, cfg_.eval).eval(*s.cond);
    if (!c.defined() || c.value.kind != Value::Kind::Bool)
      throw RunFailure(s.pos, "condition " + print(s.cond, PrintMode::Sugared) + " is " + to_string(c));
    return c.value.b;
  }

  void judge(const Pos& pos, const std::string& label, Truth t, RunEvent::Kind kind) {
    ++res_.checks_run;
    if (t == Truth::T) return;
    if (t == Truth::Fuel) {
      log(RunEvent::Kind::Inconclusive, pos, label + " ran out of fuel");
      return;
    }
    log(kind, pos, label + " is " + to_string(t));
    throw RunFailure(pos, label + " evaluated to " + std::string(to_string(t)));
  }

  void run_checks(const Statement& s, bool loop_head) {
    for (const auto& c : cfg_.checks) {
      if (c.at != &s || (s.kind == Statement::Kind::While) != loop_head) continue;
      if (loop_head) log(RunEvent::Kind::LoopHead, s.pos, c.label);
      Truth t = Evaluator(ctx_, res_.state, cfg_.eval).eval(*c.formula, cfg_.env);
      judge(s.pos, c.label, t, RunEvent::Kind::Check);
    }
  }

  void check_alloc_post(const Statement& s) {
    const TermPtr& e = s.target->args[0];
    const TermPtr star_e = s.target;
    const FormulaPtr posts[] = {
        make_bool_term(make_apply("InHeap", {star_e})),
        make_bool_term(make_apply("Unique", {e})),
        make_bool_term(make_apply("PtrInit", {star_e})),
        make_not(make_eq(star_e, make_nil())),
    };
    const char* names[] = {"InHeap(*e)", "Unique(e)", "PtrInit(*e)", "*e != nil"};
    for (int i = 0; i < 4; ++i) {
      Truth t = Evaluator(ctx_, res_.state, cfg_.eval).eval(*posts[i]);
      judge(s.pos, std::string("alloc postcondition ") + names[i], t, RunEvent::Kind::AllocCheck);
    }
  }
};

}  // namespace

RunResult run(const Context& ctx, const Statement& prog, State initial, const RunConfig& cfg) {
  RunResult res;
  res.state = std::move(initial);
  if (cfg.snapshot_at_start) res.state.take_snapshot();
  Machine m(ctx, cfg, res);
  try {
    m.exec(prog);
  } catch (const RunFailure& f) {
    res.ok = false;
    res.error = f.what();
    res.error_pos = f.pos;
    res.log.push_back({RunEvent::Kind::Error, f.pos, f.what()});
  }
  return res;
}

}  // namespace slv
