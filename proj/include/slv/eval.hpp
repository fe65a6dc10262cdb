#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "slv/ast.hpp"
#include "slv/context.hpp"
#include "slv/heap.hpp"
#include "slv/value.hpp"

namespace slv {

/// LPF truth values plus a distinct marker for exhausted fuel.
enum class Truth { T, F, N, Fuel };

const char* to_string(Truth t);

struct TermResult {
  enum class Status { Defined, Bottom, Fuel };
  Status status = Status::Bottom;
  Value value;
  std::string reason;  // for Bottom

  bool defined() const { return status == Status::Defined; }
  static TermResult ok(Value v) { return {Status::Defined, std::move(v), {}}; }
  static TermResult bottom(std::string why) { return {Status::Bottom, {}, std::move(why)}; }
  static TermResult out_of_fuel() { return {Status::Fuel, {}, "fuel exhausted"}; }
};

std::string to_string(const TermResult& r);

struct EvalOptions {
  std::int64_t fuel = 100000;  // DRF applications per top-level evaluation
  int max_depth = 2000;        // nested DRF applications; deeper counts as fuel exhaustion
  std::int64_t int_lo = -16;   // window for integer quantifiers
  std::int64_t int_hi = 16;
};

/// Raised for requests the evaluator cannot answer at all, such as a
/// quantifier over an unbounded abstract type.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Env = std::map<std::string, Value>;

/// Evaluates expanded terms and formulae over one state. Every public call
/// starts with a full fuel budget and an empty trace.
class Evaluator {
 public:
  Evaluator(const Context& ctx, const State& state, EvalOptions opt = {});

  TermResult eval(const Term& t, const Env& env = {});
  Truth eval(const Formula& f, const Env& env = {});
  TermResult eval(const TermPtr& t, const Env& env = {}) { return eval(*t, env); }
  Truth eval(const FormulaPtr& f, const Env& env = {}) { return eval(*f, env); }

  /// Unit addresses read by Deref (and the memory-reading builtins) during
  /// the last public call.
  const std::set<Address>& trace() const { return trace_; }
  std::int64_t fuel_used() const { return opt_.fuel - fuel_; }

 private:
  const Context& ctx_;
  const State& st_;
  EvalOptions opt_;
  std::int64_t fuel_ = 0;
  int depth_ = 0;
  std::set<Address> trace_;

  void reset();
  TermResult term(const Term& t, const Env& env);
  Truth formula(const Formula& f, const Env& env);
  TermResult apply(const Term& t, const Env& env);
  TermResult builtin(const std::string& name, const std::vector<Value>& args);
  Truth forall(const Formula& f, const Env& env);
};

/// Runtime membership test behind `e :: t`.
bool has_type(const State& st, const Value& v, const Type& t);

/// Equality used by `=`: the empty set and the empty map coincide, since
/// both are written `{}`.
bool value_equal(const Value& a, const Value& b);

/// Unit addresses of Block(p) as a set value; nil gives the empty set.
Value block_value(const State& st, const Value& p);

/// All valid addresses of the state: block roots, sub-blocks and units.
std::vector<Address> all_addresses(const State& st);

}  // namespace slv
