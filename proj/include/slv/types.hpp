#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace slv {

/// Program types (P-types) plus the abstract and pseudo types used by the
/// static checker. Records are nominal: a record type is always reached
/// through a Named entry of the TypeTable so that recursive types work.
struct Type {
  enum class Kind {
    Int,
    Bool,
    Ptr,       // P(t)
    AnyPtr,    // the Ptr supertype
    Arr,       // ARR(t, c)
    Rec,       // REC((n1,t1) x ... x (nk,tk))
    Named,     // reference to a TypeTable entry
    Set,       // SetOf(t)
    Seq,       // SeqOf(t)
    Map,       // Map integer to integer
    Nil,       // static type of the untyped nil literal
    EmptyColl, // static type of {} (empty set or empty map)
    EmptySeq,  // static type of []
    Unknown,
  };

  Kind kind = Kind::Unknown;
  std::vector<Type> elems;
  std::vector<std::string> fields;
  std::int64_t length = 0;
  std::string name;

  static Type of(Kind k) {
    Type t;
    t.kind = k;
    return t;
  }
  static Type integer() { return of(Kind::Int); }
  static Type boolean() { return of(Kind::Bool); }
  static Type any_ptr() { return of(Kind::AnyPtr); }
  static Type map() { return of(Kind::Map); }
  static Type nil() { return of(Kind::Nil); }
  static Type unknown() { return of(Kind::Unknown); }
  static Type ptr(Type target);
  static Type arr(Type elem, std::int64_t length);
  static Type rec(std::vector<std::string> names, std::vector<Type> types);
  static Type named(std::string name);
  static Type set_of(Type elem);
  static Type seq_of(Type elem);

  bool operator==(const Type& other) const = default;

  const Type& elem() const { return elems.at(0); }
};

std::string to_string(const Type& t);

/// Named type definitions (`type T = rec { ... }`).
class TypeTable {
 public:
  void define(const std::string& name, Type t);
  bool contains(const std::string& name) const { return defs_.count(name) != 0; }
  const std::map<std::string, Type>& defs() const { return defs_; }

  /// Follows Named links until a structural type is reached.
  const Type& resolve(const Type& t) const;

  /// Field type of a record, or nullopt if `rec` is not a record or has no such field.
  std::optional<Type> field_type(const Type& rec, const std::string& field) const;

  bool is_unit(const Type& t) const;     // integer, boolean or pointer
  bool is_pointer(const Type& t) const;  // P(t), Ptr or nil
  bool is_record(const Type& t) const;
  bool is_array(const Type& t) const;

  /// True if a block of type `outer` can contain a sub-block of type `inner`
  /// (including outer == inner).
  bool may_contain(const Type& outer, const Type& inner) const;

 private:
  std::map<std::string, Type> defs_;
};

/// Least common static type of two expressions, if they are compatible.
std::optional<Type> unify(const TypeTable& tt, const Type& a, const Type& b);

/// True if a value of static type `from` may be used where `to` is expected.
bool assignable(const TypeTable& tt, const Type& from, const Type& to);

}  // namespace slv
