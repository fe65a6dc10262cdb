#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "slv/context.hpp"
#include "slv/heap.hpp"

namespace slv {

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi);  // inclusive

/// Shape descriptors: `bst:N`, `graph:N` (two-successor graph) and `any:N`,
/// optionally followed by `@var` naming the root variable.
struct Shape {
  enum class Kind { Bst, TwoSuccessor, Arbitrary };
  Kind kind = Kind::Bst;
  int size = 0;
  std::string root;  // empty: pick the first suitable variable
};

Shape parse_shape(const std::string& text);
std::string to_string(const Shape& s);

class GenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Random state of the requested shape; every variable not wired by the
/// shape keeps its initial value. Deterministic for a given rng state.
State gen_state(const Context& ctx, const Shape& shape, Rng& rng);

/// Addresses whose type is `target` (any type when `target` is Ptr),
/// followed by nil when `with_nil`.
std::vector<Value> pointer_pool(const State& st, const Type& target, bool with_nil = true);

/// Integers that make good test values for `st`: every integer stored in
/// the state, its neighbours, and a few small constants.
std::vector<std::int64_t> int_pool(const State& st);

/// Random value of a unit type drawn from the pools above.
Value random_value(const State& st, const Type& t, Rng& rng);

/// Overwrites the named variables with random values of their types.
void randomize_vars(State& st, const Context& ctx, const std::vector<std::string>& names, Rng& rng);

/// Independent structural checks used as generator oracles.
bool is_bst_shape(const State& st, const Value& root);
bool is_two_successor_graph(const State& st, const std::string& root_var, const std::string& vroot_var);

}  // namespace slv
