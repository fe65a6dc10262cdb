#include <doctest.h>

#include "slv/context.hpp"
#include "slv/corpus.hpp"
#include "slv/lexer.hpp"
#include "slv/parser.hpp"
#include "slv/printer.hpp"
#include "slv/scope.hpp"
#include "slv/typecheck.hpp"

using namespace slv;

TEST_CASE("formula printing round-trips through the parser") {
  const char* texts[] = {
      "isHBST(root) && Map(root) = M && k in Dom(root)",
      "&p->D notin {&root, &p, &p->K, &k, &d}",
      "forall x: ptr T . x in NodeSet(root) ==> x->l :: ptr T",
      "!(a = b) || Delta(1 / 0 < 0)",
      "(c ? {&x->l} : {}) union {&y} = S",
  };
  for (const char* t : texts) {
    FormulaPtr f = parse_formula(t);
    std::string once = print(f);
    FormulaPtr g = parse_formula(once);
    CHECK(equal(f, g));
    CHECK(print(g) == once);
  }
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_formula("x in {1, 2", "f.sls");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.pos().file == "f.sls");
    CHECK(e.pos().line == 1);
    CHECK(e.pos().col > 1);
  }
  CHECK_THROWS_AS(parse_term("forall x: int . x = 1"), SyntaxError);
}

TEST_CASE("corpus specifications type-check") {
  for (const char* f : {"bst_update.sls", "bst_insert.sls", "schorr.sls", "bst_msf.sls", "bst_insert_msf.sls"}) {
    Context ctx = load_context_with_msfs(corpus_path(f), "");
    CHECK_MESSAGE(typecheck_all(ctx).empty(), f);
  }
  Context prog = load_context_with_msfs(corpus_path("bst_update.sls"), corpus_path("bst_update.slp"));
  CHECK(typecheck_all(prog).empty());
}

TEST_CASE("ill-typed terms are rejected") {
  Context ctx = load_context(corpus_path("bst_update.sls"), "");
  CHECK_THROWS(type_of(ctx, *ctx.prepare(parse_term("root + 1"))));
  CHECK_THROWS(check_formula(ctx, *ctx.prepare(parse_formula("Map(root) = NodeSet(root)"))));
  CHECK(type_of(ctx, *ctx.prepare(parse_term("&root->K"))) == Type::ptr(Type::integer()));
}
