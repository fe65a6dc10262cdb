#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slv/ast.hpp"
#include "slv/context.hpp"
#include "slv/eval.hpp"
#include "slv/heap.hpp"
#include "slv/prover.hpp"
#include "slv/vcgen.hpp"

namespace slv {

/// `binders . hyps |- concl`, the common form of VCs and lemmas.
struct Entailment {
  std::string name;
  std::vector<Param> binders;
  std::vector<FormulaPtr> hyps;
  FormulaPtr concl;
};

Entailment entailment_of(const VC& vc);
Entailment entailment_of(const Lemma& l);

struct CheckOptions {
  std::uint64_t seed = 0;
  int trials = 1000;
  std::int64_t budget_ms = 0;  // wall-clock cap per entailment; 0 = none
  EvalOptions eval;
  ProverOptions prover;
  bool falsify_proved = false;  // also test goals the prover closed
  int max_size = 8;             // largest generated structure
};

/// A state and variable assignment with all hypotheses T and the
/// conclusion not T.
struct Counterexample {
  State state;
  Env env;
  std::string shape;
  int trial = 0;
  Truth concl = Truth::F;

  std::string dump() const;
};

struct FalsifyResult {
  int trials = 0;     // trials attempted
  int satisfied = 0;  // trials whose hypotheses all evaluated T
  int fuel = 0;       // trials abandoned on fuel exhaustion
  std::string blocker;  // set when sampling is impossible (e.g. a map binder)
  std::optional<Counterexample> cex;
};

/// Randomized search for a counterexample. Trial i depends only on
/// (seed, i), so any trial can be regenerated; counterexamples are shrunk
/// by greedy heap-node removal.
FalsifyResult falsify(const Context& ctx, const Entailment& e, const CheckOptions& opt);

/// Builds the state and assignment of one trial without evaluating the
/// conclusion. Returns nullopt when the trial cannot be sampled.
std::optional<std::pair<State, Env>> sample_trial(const Context& ctx, const Entailment& e, const CheckOptions& opt,
                                                  int trial, std::string* shape = nullptr);

struct ReplayResult {
  bool hyps_true = false;
  Truth concl = Truth::N;
  bool refutes() const { return hyps_true && concl != Truth::T && concl != Truth::Fuel; }
};

ReplayResult replay(const Context& ctx, const Entailment& e, const State& st, const Env& env,
                    const EvalOptions& opt = {});

struct Verdict {
  enum class Status { Proved, Refuted, Unknown };
  std::string id;
  Status status = Status::Unknown;
  std::string method;  // Proved
  std::string reason;  // Unknown
  int trials = 0;
  int satisfied = 0;
  std::uint64_t seed = 0;
  std::optional<Counterexample> cex;

  /// "proved(builtin)", "refuted", "unknown(tested, 0 counterexamples)".
  std::string summary() const;
};

Verdict check_vc(const Context& ctx, const VC& vc, const CheckOptions& opt);

/// Lemmas are never proved; they are tested by falsification.
Verdict check_lemma(const Context& ctx, const Lemma& l, const CheckOptions& opt);

std::string format_verdict(const Verdict& v, bool with_cex = true);

}  // namespace slv
