#include <doctest.h>

#include "slv/corpus.hpp"
#include "slv/scope.hpp"
#include "slv/vccheck.hpp"

using namespace slv;

TEST_CASE("falsification is deterministic per seed and replayable") {
  Context ctx = load_context_with_msfs(corpus_path("corrupted_update.sls"), "");
  const Lemma* flip = ctx.lemma("LeftTravFlip");
  REQUIRE(flip);
  CheckOptions opt;
  opt.seed = 9;
  Entailment e = entailment_of(*flip);
  FalsifyResult a = falsify(ctx, e, opt);
  FalsifyResult b = falsify(ctx, e, opt);
  REQUIRE(a.cex);
  REQUIRE(b.cex);
  CHECK(a.trials == b.trials);
  CHECK(a.cex->trial == b.cex->trial);
  CHECK(a.cex->state == b.cex->state);
  CHECK(replay(ctx, e, a.cex->state, a.cex->env).refutes());

  // The unshrunk trial regenerates from (seed, trial) alone.
  auto again = sample_trial(ctx, e, opt, a.cex->trial);
  REQUIRE(again);
  CHECK(replay(ctx, e, again->first, again->second).refutes());
}

TEST_CASE("shrinking never grows the counterexample") {
  Context ctx = load_context_with_msfs(corpus_path("corrupted_insert.sls"), "");
  CheckOptions opt;
  for (const char* name : {"GoLeftFlip", "MapPPNilDrop", "KeyNotKDrop"}) {
    Entailment e = entailment_of(*ctx.lemma(name));
    FalsifyResult r = falsify(ctx, e, opt);
    REQUIRE_MESSAGE(r.cex, name);
    auto raw = sample_trial(ctx, e, opt, r.cex->trial);
    REQUIRE(raw);
    CHECK(r.cex->state.blocks().size() <= raw->first.blocks().size());
  }
}

TEST_CASE("sound lemmas survive and verdicts read as documented") {
  Context ctx = load_context_with_msfs(corpus_path("bst_update.sls"), "");
  CheckOptions opt;
  opt.trials = 300;
  Verdict v = check_lemma(ctx, *ctx.lemma("LeftTrav"), opt);
  CHECK(v.status == Verdict::Status::Unknown);
  CHECK(v.summary() == "unknown(tested, 0 counterexamples)");
  CHECK(v.satisfied > 0);

  Context bad = load_context_with_msfs(corpus_path("corrupted_update.sls"), "");
  Verdict r = check_lemma(bad, *bad.lemma("NodeSetContainsDrop"), opt);
  CHECK(r.status == Verdict::Status::Refuted);
  CHECK(r.summary() == "refuted");
  CHECK(format_verdict(r).find("conclusion") != std::string::npos);
}
