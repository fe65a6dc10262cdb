#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slv/ast.hpp"
#include "slv/context.hpp"
#include "slv/eval.hpp"
#include "slv/heap.hpp"

namespace slv {

/// A formula checked while running: at every loop head of `at` (a While
/// node) or just before `at` executes.
struct RunCheck {
  const Statement* at = nullptr;
  FormulaPtr formula;
  std::string label;
};

struct RunConfig {
  std::int64_t step_limit = 1000000;
  EvalOptions eval;
  Env env;                     // values of logical constants used by checks
  std::vector<RunCheck> checks;
  bool snapshot_at_start = false;
  bool check_alloc = true;     // ALLOC-ST postconditions after every alloc
  bool log_steps = false;      // record one event per primitive statement
};

struct RunEvent {
  enum class Kind { Assign, Alloc, LoopHead, Check, AllocCheck, Inconclusive, Error };
  Kind kind = Kind::Assign;
  Pos pos;
  std::string detail;
};

const char* to_string(RunEvent::Kind k);

struct RunResult {
  State state;
  bool ok = true;
  std::string error;  // first failure, empty when ok
  Pos error_pos;
  std::int64_t steps = 0;
  std::int64_t allocs = 0;
  std::int64_t checks_run = 0;
  std::vector<RunEvent> log;
};

/// Executes `prog` from `initial`. Runtime errors (nil dereference,
/// undefined condition, step limit, failed check) stop the run and are
/// reported in the result; they never throw.
RunResult run(const Context& ctx, const Statement& prog, State initial, const RunConfig& cfg = {});

}  // namespace slv
