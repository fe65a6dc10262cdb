#include <doctest.h>

#include "slv/corpus.hpp"
#include "slv/normalize.hpp"
#include "slv/parser.hpp"
#include "slv/prover.hpp"
#include "slv/scope.hpp"

using namespace slv;

namespace {

struct Fixture {
  Context ctx = load_context_with_msfs(corpus_path("bst_update.sls"), "");

  ProofResult attempt(std::vector<std::string> hyps, const std::string& show, bool lemmas = true) {
    std::vector<FormulaPtr> hs;
    for (const auto& h : hyps)
      for (const auto& c : normal_conjuncts(ctx.prepare(parse_formula(h)))) hs.push_back(c);
    ProverOptions opt;
    opt.use_lemmas = lemmas;
    return prove(ctx, hs, ctx.prepare(parse_formula(show)), opt);
  }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "false goals are not proved") {
  CHECK_FALSE(attempt({}, "&p notin {&p}").proved);
  CHECK_FALSE(attempt({}, "&p->D notin {&p->K}").proved);  // p may be nil
  CHECK_FALSE(attempt({}, "isHBST(p)").proved);
  CHECK_FALSE(attempt({"p in NodeSet(root)"}, "p = root").proved);
  CHECK_FALSE(attempt({"k in Dom(root)"}, "k in Dom(root->l)").proved);
  CHECK_FALSE(attempt({}, "root != nil").proved);
  CHECK_FALSE(attempt({"k <= d"}, "k < d").proved);
  CHECK_FALSE(attempt({}, "p->K = k || !(p->K = k)").proved);
}

TEST_CASE_FIXTURE(Fixture, "address distinctness is builtin") {
  ProofResult r = attempt({}, "&p notin {&root, &k}");
  CHECK(r.proved);
  CHECK(r.method() == "builtin");
  r = attempt({"p != nil"}, "&p->D notin {&root, &p, &p->K, &k, &d}");
  CHECK(r.proved);
  CHECK(r.method() == "builtin");
  CHECK(attempt({"p != nil"}, "&p->l != &p->r", false).proved);
  CHECK(attempt({"k <= d", "k != d"}, "k < d", false).proved);
  CHECK(attempt({}, "k notin {}", false).proved);
}

TEST_CASE_FIXTURE(Fixture, "cited lemmas close structural goals") {
  ProofResult r = attempt({"isHBST(root)", "k in Dom(root)", "k < root->K"}, "k in Dom(root->l)");
  CHECK(r.proved);
  CHECK(r.lemmas == std::vector<std::string>{"LeftTrav"});
  CHECK(r.method() == "lemma(LeftTrav)");
  CHECK_FALSE(attempt({"isHBST(root)", "k in Dom(root)", "k < root->K"}, "k in Dom(root->l)", false).proved);
}

TEST_CASE_FIXTURE(Fixture, "definedness obligations") {
  CHECK(attempt({"p != nil"}, "p->K = k || !(p->K = k)").proved);
  CHECK_FALSE(attempt({}, "k / d = 1 || !(k / d = 1)").proved);
}
