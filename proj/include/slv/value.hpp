#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace slv {

/// One step of an address path: a record field or an array index.
struct Selector {
  bool is_index = false;
  std::string field;
  std::int64_t index = 0;

  auto operator<=>(const Selector&) const = default;
  bool operator==(const Selector&) const = default;
};

/// Symbolic address: a block plus a path into it. Distinct blocks are
/// disjoint and sub-blocks share the block id, so layout disjointness holds
/// by construction.
struct Address {
  int block = 0;
  std::vector<Selector> path;

  auto operator<=>(const Address&) const = default;
  bool operator==(const Address&) const = default;

  Address field(const std::string& name) const;
  Address index(std::int64_t i) const;
  /// True if `this` equals `other` or lies inside it.
  bool within(const Address& other) const;
};

std::string to_string(const Address& a);

struct Value {
  enum class Kind { Int, Bool, Ptr, Set, Map, Seq };

  Kind kind = Kind::Int;
  std::int64_t i = 0;
  bool b = false;
  std::optional<Address> ptr;  // nullopt is nil
  std::vector<Value> elems;    // sets: sorted and unique
  std::map<std::int64_t, std::int64_t> map;

  static Value integer(std::int64_t v);
  static Value boolean(bool v);
  static Value nil();
  static Value pointer(Address a);
  static Value set(std::vector<Value> elems);  // sorts and removes duplicates
  static Value seq(std::vector<Value> elems);
  static Value map_of(std::map<std::int64_t, std::int64_t> m);

  bool is_nil() const { return kind == Kind::Ptr && !ptr; }
  bool contains(const Value& v) const;  // set membership
};

bool operator==(const Value& a, const Value& b);
bool operator<(const Value& a, const Value& b);
inline bool operator!=(const Value& a, const Value& b) { return !(a == b); }

std::string to_string(const Value& v);

}  // namespace slv
