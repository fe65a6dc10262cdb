#include "slv/types.hpp"

#include <sstream>
#include <stdexcept>

namespace slv {

Type Type::ptr(Type target) {
  Type t = of(Kind::Ptr);
  t.elems.push_back(std::move(target));
  return t;
}

Type Type::arr(Type elem, std::int64_t length) {
  Type t = of(Kind::Arr);
  t.elems.push_back(std::move(elem));
  t.length = length;
  return t;
}

Type Type::rec(std::vector<std::string> names, std::vector<Type> types) {
  Type t = of(Kind::Rec);
  t.fields = std::move(names);
  t.elems = std::move(types);
  return t;
}

Type Type::named(std::string name) {
  Type t = of(Kind::Named);
  t.name = std::move(name);
  return t;
}

Type Type::set_of(Type elem) {
  Type t = of(Kind::Set);
  t.elems.push_back(std::move(elem));
  return t;
}

Type Type::seq_of(Type elem) {
  Type t = of(Kind::Seq);
  t.elems.push_back(std::move(elem));
  return t;
}

std::string to_string(const Type& t) {
  switch (t.kind) {
    case Type::Kind::Int: return "int";
    case Type::Kind::Bool: return "bool";
    case Type::Kind::Ptr: return "ptr " + to_string(t.elem());
    case Type::Kind::AnyPtr: return "Ptr";
    case Type::Kind::Arr: return "arr[" + std::to_string(t.length) + "] " + to_string(t.elem());
    case Type::Kind::Rec: {
      std::ostringstream os;
      os << "rec { ";
      for (std::size_t i = 0; i < t.fields.size(); ++i)
        os << t.fields[i] << ": " << to_string(t.elems[i]) << "; ";
      os << "}";
      return os.str();
    }
    case Type::Kind::Named: return t.name;
    case Type::Kind::Set: return "set " + to_string(t.elem());
    case Type::Kind::Seq: return "seq " + to_string(t.elem());
    case Type::Kind::Map: return "map";
    case Type::Kind::Nil: return "nil";
    case Type::Kind::EmptyColl: return "{}";
    case Type::Kind::EmptySeq: return "[]";
    case Type::Kind::Unknown: return "?";
  }
  return "?";
}

void TypeTable::define(const std::string& name, Type t) {
  auto [it, inserted] = defs_.emplace(name, t);
  if (!inserted && !(it->second == t))
    throw std::invalid_argument("conflicting definitions of type " + name);
}

const Type& TypeTable::resolve(const Type& t) const {
  const Type* cur = &t;
  for (int guard = 0; cur->kind == Type::Kind::Named; ++guard) {
    auto it = defs_.find(cur->name);
    if (it == defs_.end() || guard > 64) return *cur;
    cur = &it->second;
  }
  return *cur;
}

std::optional<Type> TypeTable::field_type(const Type& rec, const std::string& field) const {
  const Type& r = resolve(rec);
  if (r.kind != Type::Kind::Rec) return std::nullopt;
  for (std::size_t i = 0; i < r.fields.size(); ++i)
    if (r.fields[i] == field) return r.elems[i];
  return std::nullopt;
}

bool TypeTable::is_unit(const Type& t) const {
  const Type& r = resolve(t);
  return r.kind == Type::Kind::Int || r.kind == Type::Kind::Bool || is_pointer(r);
}

bool TypeTable::is_pointer(const Type& t) const {
  const Type& r = resolve(t);
  return r.kind == Type::Kind::Ptr || r.kind == Type::Kind::AnyPtr || r.kind == Type::Kind::Nil;
}

bool TypeTable::is_record(const Type& t) const { return resolve(t).kind == Type::Kind::Rec; }
bool TypeTable::is_array(const Type& t) const { return resolve(t).kind == Type::Kind::Arr; }

namespace {

bool same(const TypeTable& tt, const Type& a, const Type& b) {
  if (a == b) return true;
  const Type& ra = tt.resolve(a);
  const Type& rb = tt.resolve(b);
  if (ra.kind != rb.kind) return false;
  // Records are nominal; two distinct names never denote the same record.
  if (ra.kind == Type::Kind::Rec) return ra == rb;
  if (ra.kind == Type::Kind::Arr && ra.length != rb.length) return false;
  if (ra.elems.size() != rb.elems.size()) return false;
  for (std::size_t i = 0; i < ra.elems.size(); ++i)
    if (!same(tt, ra.elems[i], rb.elems[i])) return false;
  return true;
}

bool contains_rec(const TypeTable& tt, const Type& outer, const Type& inner, int depth) {
  if (depth > 32) return false;
  if (same(tt, outer, inner)) return true;
  const Type& r = tt.resolve(outer);
  if (r.kind == Type::Kind::Rec) {
    for (const auto& f : r.elems)
      if (contains_rec(tt, f, inner, depth + 1)) return true;
  } else if (r.kind == Type::Kind::Arr) {
    return contains_rec(tt, r.elem(), inner, depth + 1);
  }
  return false;
}

}  // namespace

bool TypeTable::may_contain(const Type& outer, const Type& inner) const {
  return contains_rec(*this, outer, inner, 0);
}

std::optional<Type> unify(const TypeTable& tt, const Type& a, const Type& b) {
  using K = Type::Kind;
  if (same(tt, a, b)) return a;
  if (a.kind == K::Unknown) return b;
  if (b.kind == K::Unknown) return a;
  const Type& ra = tt.resolve(a);
  const Type& rb = tt.resolve(b);
  auto is_ptr = [](const Type& t) { return t.kind == K::Ptr || t.kind == K::AnyPtr; };
  if (ra.kind == K::Nil && (is_ptr(rb) || rb.kind == K::Nil)) return b;
  if (rb.kind == K::Nil && is_ptr(ra)) return a;
  if (is_ptr(ra) && is_ptr(rb)) return Type::any_ptr();
  if (ra.kind == K::EmptyColl && (rb.kind == K::Set || rb.kind == K::Map || rb.kind == K::EmptyColl)) return b;
  if (rb.kind == K::EmptyColl && (ra.kind == K::Set || ra.kind == K::Map)) return a;
  if (ra.kind == K::EmptySeq && (rb.kind == K::Seq || rb.kind == K::EmptySeq)) return b;
  if (rb.kind == K::EmptySeq && ra.kind == K::Seq) return a;
  if ((ra.kind == K::Set || ra.kind == K::Seq) && ra.kind == rb.kind) {
    auto e = unify(tt, ra.elem(), rb.elem());
    if (!e) return std::nullopt;
    return ra.kind == K::Set ? Type::set_of(*e) : Type::seq_of(*e);
  }
  return std::nullopt;
}

bool assignable(const TypeTable& tt, const Type& from, const Type& to) {
  using K = Type::Kind;
  if (same(tt, from, to)) return true;
  if (from.kind == K::Unknown || to.kind == K::Unknown) return true;
  const Type& f = tt.resolve(from);
  const Type& t = tt.resolve(to);
  switch (f.kind) {
    case K::Nil: return t.kind == K::Ptr || t.kind == K::AnyPtr;
    case K::Ptr: return t.kind == K::AnyPtr;
    case K::EmptyColl: return t.kind == K::Set || t.kind == K::Map;
    case K::EmptySeq: return t.kind == K::Seq;
    case K::Set:
    case K::Seq: return t.kind == f.kind && assignable(tt, f.elem(), t.elem());
    default: return false;
  }
}

}  // namespace slv
