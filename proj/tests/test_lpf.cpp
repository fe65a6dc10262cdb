#include <doctest.h>

#include <functional>
#include <random>

#include "slv/corpus.hpp"
#include "slv/eval.hpp"
#include "slv/gen.hpp"
#include "slv/parser.hpp"
#include "slv/scope.hpp"

using namespace slv;

namespace {

enum class K3 { T, F, N };

K3 k_not(K3 a) { return a == K3::T ? K3::F : a == K3::F ? K3::T : K3::N; }
K3 k_and(K3 a, K3 b) {
  if (a == K3::F || b == K3::F) return K3::F;
  if (a == K3::T && b == K3::T) return K3::T;
  return K3::N;
}
K3 k_or(K3 a, K3 b) { return k_not(k_and(k_not(a), k_not(b))); }
K3 k_delta(K3 a) { return a == K3::N ? K3::F : K3::T; }

Truth as_truth(K3 a) { return a == K3::T ? Truth::T : a == K3::F ? Truth::F : Truth::N; }

struct Gen {
  std::mt19937_64 rng;
  int pick(int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

  // Random formula text together with its expected value.
  std::pair<std::string, K3> formula(int depth) {
    if (depth == 0 || pick(4) == 0) {
      switch (pick(5)) {
        case 0: return {"true", K3::T};
        case 1: return {"false", K3::F};
        case 2: return {"1 / 0 = 0", K3::N};
        case 3: return {"root->K = 1", K3::N};  // root is nil
        default: return {"k < k + 1", K3::T};
      }
    }
    auto [a, va] = formula(depth - 1);
    switch (pick(5)) {
      case 0: return {"!(" + a + ")", k_not(va)};
      case 1: return {"Delta(" + a + ")", k_delta(va)};
      default: {
        auto [b, vb] = formula(depth - 1);
        switch (pick(3)) {
          case 0: return {"(" + a + ") && (" + b + ")", k_and(va, vb)};
          case 1: return {"(" + a + ") || (" + b + ")", k_or(va, vb)};
          default: return {"(" + a + ") ==> (" + b + ")", k_or(k_not(va), vb)};
        }
      }
    }
  }
};

}  // namespace

TEST_CASE("random connective trees follow strong Kleene logic") {
  Context ctx = load_context_with_msfs(corpus_path("bst_update.sls"), "");
  State st = init_state(ctx);
  Evaluator ev(ctx, st);
  Gen g{std::mt19937_64(3)};
  for (int i = 0; i < 2000; ++i) {
    auto [text, want] = g.formula(4);
    CHECK_MESSAGE(ev.eval(ctx.prepare(parse_formula(text))) == as_truth(want), text);
  }
}

TEST_CASE("terms are strict and dereferencing nil is bottom") {
  Context ctx = load_context_with_msfs(corpus_path("bst_update.sls"), "");
  State st = init_state(ctx);
  Evaluator ev(ctx, st);
  CHECK(ev.eval(ctx.prepare(parse_term("root->K"))).status == TermResult::Status::Bottom);
  CHECK(ev.eval(ctx.prepare(parse_term("{1 / 0}"))).status == TermResult::Status::Bottom);
  CHECK(ev.eval(ctx.prepare(parse_term("root = nil ? 1 : root->K"))).value == Value::integer(1));
  CHECK(ev.eval(ctx.prepare(parse_term("NodeSet(root)"))).value == Value::set({}));
  CHECK(ev.eval(ctx.prepare(parse_formula("NodeSet(root) = Map(root)"))) == Truth::T);
}

TEST_CASE("isHBST agrees with a native search-tree check") {
  Context ctx = load_context_with_msfs(corpus_path("bst_update.sls"), "");
  Rng rng(42);
  FormulaPtr hbst = ctx.prepare(parse_formula("isHBST(root)"));
  for (int i = 0; i < 300; ++i) {
    State st = gen_state(ctx, Shape{Shape::Kind::Bst, static_cast<int>(uniform(rng, 1, 8)), "root"}, rng);
    CHECK(Evaluator(ctx, st).eval(hbst) == Truth::T);
    // Swap the root key with its left child's, when there is one: no longer ordered.
    Address r = *st.read(*st.var_addr("root")).ptr;
    Value left = st.read(r.field("l"));
    if (!left.ptr) continue;
    Value kr = st.read(r.field("K")), kl = st.read(left.ptr->field("K"));
    st.write(r.field("K"), kl);
    st.write(left.ptr->field("K"), kr);
    CHECK(Evaluator(ctx, st).eval(hbst) == Truth::F);
  }
}

TEST_CASE("fuel exhaustion is reported separately") {
  Context ctx = load_context_with_msfs(corpus_path("bst_update.sls"), "");
  Rng rng(1);
  State st = gen_state(ctx, Shape{Shape::Kind::Bst, 8, "root"}, rng);
  EvalOptions tight;
  tight.fuel = 3;
  Evaluator ev(ctx, st, tight);
  CHECK(ev.eval(ctx.prepare(parse_term("NodeSet(root)"))).status == TermResult::Status::Fuel);
  CHECK(ev.eval(ctx.prepare(parse_formula("isHBST(root)"))) == Truth::Fuel);
}
