#include <doctest.h>

#include <set>

#include "slv/corpus.hpp"
#include "slv/gen.hpp"
#include "slv/heap.hpp"
#include "slv/scope.hpp"

using namespace slv;

namespace {

// In-order walk; false on a cycle, a shared node or an out-of-order key.
bool native_bst(const State& st, const Value& n, std::int64_t lo, std::int64_t hi, std::set<int>& seen) {
  if (!n.ptr) return true;
  if (!seen.insert(n.ptr->block).second) return false;
  std::int64_t k = st.read(n.ptr->field("K")).i;
  if (k <= lo || k >= hi) return false;
  return native_bst(st, st.read(n.ptr->field("l")), lo, k, seen) &&
         native_bst(st, st.read(n.ptr->field("r")), k, hi, seen);
}

}  // namespace

TEST_CASE("state dumps round-trip") {
  Context ctx = load_context_with_msfs(corpus_path("bst_insert.sls"), "");
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const char* kinds[] = {"bst", "any"};
    Shape s = parse_shape(std::string(kinds[i % 2]) + ":" + std::to_string(uniform(rng, 0, 8)));
    State st = gen_state(ctx, s, rng);
    randomize_vars(st, ctx, {"p", "tmp", "k", "d"}, rng);
    CHECK(st.validate().empty());
    State back = parse_state(st.dump(), ctx);
    CHECK(back == st);
    CHECK(back.dump() == st.dump());
  }
}

TEST_CASE("bst generator yields search trees of the requested size") {
  Context ctx = load_context_with_msfs(corpus_path("bst_update.sls"), "");
  Rng rng(5);
  for (int n = 0; n <= 8; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      State st = gen_state(ctx, Shape{Shape::Kind::Bst, n, "root"}, rng);
      std::set<int> seen;
      CHECK(native_bst(st, st.read(*st.var_addr("root")), INT64_MIN, INT64_MAX, seen));
      CHECK(static_cast<int>(seen.size()) == n);
    }
  }
}

TEST_CASE("writes are unit-typed and addresses are fresh") {
  Context ctx = load_context_with_msfs(corpus_path("bst_update.sls"), "");
  State st = init_state(ctx);
  Address a = st.alloc(Type::named("T"));
  Address b = st.alloc(Type::named("T"));
  CHECK(a.block != b.block);
  CHECK(st.read(a.field("l")).is_nil());
  CHECK(st.read(a.field("K")).i == 0);
  CHECK_THROWS_AS(st.write(a.field("K"), Value::nil()), HeapError);
  CHECK_THROWS_AS(st.write(a.field("zz"), Value::integer(1)), HeapError);
  CHECK_THROWS_AS(st.write(a, Value::integer(1)), HeapError);
  st.write(a.field("l"), Value::pointer(b));
  CHECK(st.read(a.field("l")) == Value::pointer(b));
  CHECK(st.block_units(a).size() == 4);
}

TEST_CASE("blocks typed by a structural record parse back") {
  Context ctx = load_context_with_msfs(corpus_path("bst.sls"), "");
  const char* dump =
      "next 3\nblock 1 heap : rec { l: ptr T; r: ptr T; K: int; D: int; }\n"
      "unit #1.D = 0\nunit #1.K = 7\nunit #1.l = nil\nunit #1.r = nil\n";
  State st = parse_state(dump, ctx);
  CHECK(st.read(Address{1, {}}.field("K")) == Value::integer(7));
  CHECK(st.validate().empty());
}
