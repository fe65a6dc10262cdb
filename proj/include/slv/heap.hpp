#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slv/context.hpp"
#include "slv/types.hpp"
#include "slv/value.hpp"

namespace slv {

class HeapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BlockInfo {
  Type root;        // type of the whole block
  bool heap = false;
  std::string var;  // owning program variable, empty for heap blocks
};

/// Concrete program state. Addresses are never reused; there is no free.
class State {
 public:
  State() = default;
  explicit State(std::shared_ptr<const TypeTable> types) : types_(std::move(types)) {}

  const TypeTable& types() const { return *types_; }
  std::shared_ptr<const TypeTable> type_table() const { return types_; }

  /// Creates the block of a program variable (zero/false/nil initialised).
  Address add_var(const std::string& name, const Type& t);
  /// Allocates a fresh heap block of type t; returns its address.
  Address alloc(const Type& t);

  std::optional<Address> var_addr(const std::string& name) const;
  const std::map<std::string, int>& vars() const { return vars_; }
  const std::map<int, BlockInfo>& blocks() const { return blocks_; }
  const std::map<Address, Value>& contents() const { return contents_; }

  /// Type of the cell or sub-block at `a`, or nullopt if `a` is not valid.
  std::optional<Type> type_at(const Address& a) const;
  bool valid(const Address& a) const { return type_at(a).has_value(); }
  bool is_unit(const Address& a) const { return contents_.count(a) != 0; }

  /// Unit addresses of Block(a), in address order.
  std::vector<Address> block_units(const Address& a) const;

  const Value& read(const Address& a) const;
  /// Writes exactly one unit; throws on invalid address or type mismatch.
  void write(const Address& a, const Value& v);

  void take_snapshot() { snapshot_ = contents_; }
  bool has_snapshot() const { return snapshot_.has_value(); }
  const Value& snapshot_read(const Address& a) const;
  const std::map<Address, Value>& snapshot() const { return *snapshot_; }

  /// Checks the layout and typing invariants; returns violations.
  std::vector<std::string> validate() const;

  /// Removes a heap block (used only by counterexample shrinking).
  void drop_block(int id);

  std::string dump() const;
  int next_block() const { return next_; }

  bool operator==(const State& o) const {
    return blocks_.size() == o.blocks_.size() && contents_ == o.contents_ && vars_ == o.vars_;
  }

 private:
  std::shared_ptr<const TypeTable> types_ = std::make_shared<TypeTable>();
  std::map<int, BlockInfo> blocks_;
  std::map<Address, Value> contents_;
  std::optional<std::map<Address, Value>> snapshot_;
  std::map<std::string, int> vars_;
  int next_ = 1;

  void populate(const Address& a, const Type& t);
  bool value_fits(const Value& v, const Type& t) const;

  friend State parse_state(const std::string& text, const Context& ctx);
};

/// One block per declared program variable, in declaration order.
State init_state(const Context& ctx);

/// Inverse of State::dump. Throws HeapError on malformed input.
State parse_state(const std::string& text, const Context& ctx);

/// Parses `nil`, integers, `true`/`false` and addresses `#3.l[2]`.
Value parse_unit_value(const std::string& text);

}  // namespace slv
