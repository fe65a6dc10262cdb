#include "slv/value.hpp"

#include <algorithm>
#include <sstream>

namespace slv {

Address Address::field(const std::string& name) const {
  Address a = *this;
  a.path.push_back({false, name, 0});
  return a;
}

Address Address::index(std::int64_t i) const {
  Address a = *this;
  a.path.push_back({true, "", i});
  return a;
}

bool Address::within(const Address& other) const {
  if (block != other.block || path.size() < other.path.size()) return false;
  return std::equal(other.path.begin(), other.path.end(), path.begin());
}

std::string to_string(const Address& a) {
  std::string s = "#" + std::to_string(a.block);
  for (const auto& sel : a.path) s += sel.is_index ? "[" + std::to_string(sel.index) + "]" : "." + sel.field;
  return s;
}

Value Value::integer(std::int64_t v) {
  Value x;
  x.kind = Kind::Int;
  x.i = v;
  return x;
}

Value Value::boolean(bool v) {
  Value x;
  x.kind = Kind::Bool;
  x.b = v;
  return x;
}

Value Value::nil() {
  Value x;
  x.kind = Kind::Ptr;
  return x;
}

Value Value::pointer(Address a) {
  Value x;
  x.kind = Kind::Ptr;
  x.ptr = std::move(a);
  return x;
}

Value Value::set(std::vector<Value> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Value x;
  x.kind = Kind::Set;
  x.elems = std::move(elems);
  return x;
}

Value Value::seq(std::vector<Value> elems) {
  Value x;
  x.kind = Kind::Seq;
  x.elems = std::move(elems);
  return x;
}

Value Value::map_of(std::map<std::int64_t, std::int64_t> m) {
  Value x;
  x.kind = Kind::Map;
  x.map = std::move(m);
  return x;
}

bool Value::contains(const Value& v) const { return std::binary_search(elems.begin(), elems.end(), v); }

bool operator==(const Value& a, const Value& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Value::Kind::Int: return a.i == b.i;
    case Value::Kind::Bool: return a.b == b.b;
    case Value::Kind::Ptr: return a.ptr == b.ptr;
    case Value::Kind::Map: return a.map == b.map;
    case Value::Kind::Set:
    case Value::Kind::Seq: return a.elems == b.elems;
  }
  return false;
}

bool operator<(const Value& a, const Value& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  switch (a.kind) {
    case Value::Kind::Int: return a.i < b.i;
    case Value::Kind::Bool: return a.b < b.b;
    case Value::Kind::Ptr:
      if (!a.ptr || !b.ptr) return !a.ptr && b.ptr;
      return *a.ptr < *b.ptr;
    case Value::Kind::Map: return a.map < b.map;
    case Value::Kind::Set:
    case Value::Kind::Seq:
      return std::lexicographical_compare(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end());
  }
  return false;
}

std::string to_string(const Value& v) {
  std::ostringstream os;
  switch (v.kind) {
    case Value::Kind::Int: os << v.i; break;
    case Value::Kind::Bool: os << (v.b ? "true" : "false"); break;
    case Value::Kind::Ptr: os << (v.ptr ? to_string(*v.ptr) : "nil"); break;
    case Value::Kind::Set:
    case Value::Kind::Seq: {
      os << (v.kind == Value::Kind::Set ? "{" : "[");
      for (std::size_t k = 0; k < v.elems.size(); ++k) os << (k ? ", " : "") << to_string(v.elems[k]);
      os << (v.kind == Value::Kind::Set ? "}" : "]");
      break;
    }
    case Value::Kind::Map: {
      os << "{";
      bool first = true;
      for (const auto& [key, val] : v.map) {
        os << (first ? "" : ", ") << key << " |-> " << val;
        first = false;
      }
      os << "}";
      break;
    }
  }
  return os.str();
}

}  // namespace slv
