#include "slv/heap.hpp"

#include <sstream>

#include "slv/lexer.hpp"
#include "slv/parser.hpp"

namespace slv {

using K = Type::Kind;

Address State::add_var(const std::string& name, const Type& t) {
  if (vars_.count(name)) throw HeapError("variable '" + name + "' already has a block");
  Address a{next_++, {}};
  blocks_[a.block] = BlockInfo{t, false, name};
  vars_[name] = a.block;
  populate(a, t);
  return a;
}

Address State::alloc(const Type& t) {
  Address a{next_++, {}};
  blocks_[a.block] = BlockInfo{t, true, ""};
  populate(a, t);
  return a;
}

std::optional<Address> State::var_addr(const std::string& name) const {
  auto it = vars_.find(name);
  if (it == vars_.end()) return std::nullopt;
  return Address{it->second, {}};
}

void State::populate(const Address& a, const Type& t) {
  const Type& r = types_->resolve(t);
  switch (r.kind) {
    case K::Int: contents_[a] = Value::integer(0); break;
    case K::Bool: contents_[a] = Value::boolean(false); break;
    case K::Ptr:
    case K::AnyPtr: contents_[a] = Value::nil(); break;
    case K::Rec:
      for (std::size_t i = 0; i < r.fields.size(); ++i) populate(a.field(r.fields[i]), r.elems[i]);
      break;
    case K::Arr:
      for (std::int64_t i = 0; i < r.length; ++i) populate(a.index(i), r.elem());
      break;
    default: throw HeapError("cannot allocate a block of type " + to_string(t));
  }
}

std::optional<Type> State::type_at(const Address& a) const {
  auto it = blocks_.find(a.block);
  if (it == blocks_.end()) return std::nullopt;
  Type t = it->second.root;
  for (const auto& sel : a.path) {
    const Type& r = types_->resolve(t);
    if (sel.is_index) {
      if (r.kind != K::Arr || sel.index < 0 || sel.index >= r.length) return std::nullopt;
      t = r.elem();
    } else {
      auto ft = types_->field_type(r, sel.field);
      if (!ft) return std::nullopt;
      t = *ft;
    }
  }
  return t;
}

std::vector<Address> State::block_units(const Address& a) const {
  if (!valid(a)) throw HeapError("dangling address " + to_string(a));
  std::vector<Address> out;
  for (auto it = contents_.lower_bound(a); it != contents_.end() && it->first.within(a); ++it) out.push_back(it->first);
  return out;
}

const Value& State::read(const Address& a) const {
  auto it = contents_.find(a);
  if (it == contents_.end()) throw HeapError("read of non-unit address " + to_string(a));
  return it->second;
}

bool State::value_fits(const Value& v, const Type& t) const {
  const Type& r = types_->resolve(t);
  switch (r.kind) {
    case K::Int: return v.kind == Value::Kind::Int;
    case K::Bool: return v.kind == Value::Kind::Bool;
    case K::AnyPtr: return v.kind == Value::Kind::Ptr && (!v.ptr || valid(*v.ptr));
    case K::Ptr: {
      if (v.kind != Value::Kind::Ptr) return false;
      if (!v.ptr) return true;
      auto target = type_at(*v.ptr);
      return target && types_->resolve(*target) == types_->resolve(r.elem());
    }
    default: return false;
  }
}

void State::write(const Address& a, const Value& v) {
  auto it = contents_.find(a);
  if (it == contents_.end()) throw HeapError("write to non-unit address " + to_string(a));
  if (!value_fits(v, *type_at(a)))
    throw HeapError("type mismatch writing " + to_string(v) + " to " + to_string(a) + " : " + to_string(*type_at(a)));
  it->second = v;
}

const Value& State::snapshot_read(const Address& a) const {
  if (!snapshot_) throw HeapError("no snapshot taken");
  auto it = snapshot_->find(a);
  if (it == snapshot_->end()) throw HeapError("address " + to_string(a) + " not in snapshot");
  return it->second;
}

std::vector<std::string> State::validate() const {
  std::vector<std::string> out;
  std::map<Address, bool> expected;
  for (const auto& [id, info] : blocks_) {
    if (!info.heap && (!vars_.count(info.var) || vars_.at(info.var) != id))
      out.push_back("block " + std::to_string(id) + " claims variable '" + info.var + "' but is not its block");
    Address root{id, {}};
    std::vector<Address> pending{root};
    while (!pending.empty()) {
      Address a = pending.back();
      pending.pop_back();
      const Type r = types_->resolve(*type_at(a));
      if (r.kind == K::Rec) {
        for (const auto& f : r.fields) pending.push_back(a.field(f));
      } else if (r.kind == K::Arr) {
        for (std::int64_t i = 0; i < r.length; ++i) pending.push_back(a.index(i));
      } else {
        expected[a] = true;
        if (!contents_.count(a)) out.push_back("unit " + to_string(a) + " missing");
      }
    }
  }
  for (const auto& [a, v] : contents_) {
    if (!expected.count(a)) {
      out.push_back("stray unit " + to_string(a));
      continue;
    }
    if (!value_fits(v, *type_at(a))) out.push_back("unit " + to_string(a) + " holds ill-typed " + to_string(v));
  }
  for (const auto& [name, id] : vars_)
    if (!blocks_.count(id) || blocks_.at(id).heap) out.push_back("variable '" + name + "' has no variable block");
  return out;
}

void State::drop_block(int id) {
  auto it = blocks_.find(id);
  if (it == blocks_.end() || !it->second.heap) return;
  blocks_.erase(it);
  Address root{id, {}};
  for (auto c = contents_.lower_bound(root); c != contents_.end() && c->first.block == id;) c = contents_.erase(c);
  if (snapshot_)
    for (auto c = snapshot_->lower_bound(root); c != snapshot_->end() && c->first.block == id;) c = snapshot_->erase(c);
}

std::string State::dump() const {
  std::ostringstream os;
  os << "next " << next_ << "\n";
  for (const auto& [id, info] : blocks_) {
    os << "block " << id << (info.heap ? " heap" : " var " + info.var) << " : " << to_string(info.root) << "\n";
  }
  for (const auto& [a, v] : contents_) os << "unit " << to_string(a) << " = " << to_string(v) << "\n";
  if (snapshot_) {
    os << "snapshot\n";
    for (const auto& [a, v] : *snapshot_) os << "unit " << to_string(a) << " = " << to_string(v) << "\n";
  }
  return os.str();
}

State init_state(const Context& ctx) {
  State s(std::make_shared<TypeTable>(ctx.types));
  for (const auto& name : ctx.var_order) s.add_var(name, ctx.vars.at(name));
  return s;
}

namespace {

Address parse_address(const std::string& text) {
  std::size_t i = 0;
  if (text.empty() || text[0] != '#') throw HeapError("bad address '" + text + "'");
  ++i;
  std::size_t j = i;
  while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
  if (j == i) throw HeapError("bad address '" + text + "'");
  Address a{std::stoi(text.substr(i, j - i)), {}};
  i = j;
  while (i < text.size()) {
    if (text[i] == '.') {
      j = ++i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      if (j == i) throw HeapError("bad field in address '" + text + "'");
      a = a.field(text.substr(i, j - i));
      i = j;
    } else if (text[i] == '[') {
      j = text.find(']', i);
      if (j == std::string::npos) throw HeapError("bad index in address '" + text + "'");
      a = a.index(std::stoll(text.substr(i + 1, j - i - 1)));
      i = j + 1;
    } else {
      throw HeapError("bad address '" + text + "'");
    }
  }
  return a;
}

}  // namespace

Value parse_unit_value(const std::string& text) {
  if (text == "nil") return Value::nil();
  if (text == "true") return Value::boolean(true);
  if (text == "false") return Value::boolean(false);
  if (!text.empty() && text[0] == '#') return Value::pointer(parse_address(text));
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(text, &used);
    if (used == text.size()) return Value::integer(v);
  } catch (const std::exception&) {
  }
  throw HeapError("bad unit value '" + text + "'");
}

State parse_state(const std::string& text, const Context& ctx) {
  State s(std::make_shared<TypeTable>(ctx.types));
  std::istringstream in(text);
  std::string line;
  bool in_snapshot = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto where = [&] { return "state line " + std::to_string(lineno) + ": "; };
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "next") {
      ls >> s.next_;
    } else if (kw == "snapshot") {
      in_snapshot = true;
      s.snapshot_.emplace();
    } else if (kw == "block") {
      int id = 0;
      std::string origin, name;
      ls >> id >> origin;
      if (origin == "var") ls >> name;
      else if (origin != "heap") throw HeapError(where() + "expected 'var' or 'heap'");
      std::string colon;
      ls >> colon;
      if (colon != ":") throw HeapError(where() + "expected ':'");
      std::string rest;
      std::getline(ls, rest);
      Type t;
      try {
        Parser p(rest, "<state>");
        t = p.parse_type();
      } catch (const SyntaxError& e) {
        throw HeapError(where() + e.message());
      }
      s.blocks_[id] = BlockInfo{t, origin == "heap", name};
      if (origin == "var") s.vars_[name] = id;
      if (id >= s.next_) s.next_ = id + 1;
    } else if (kw == "unit") {
      std::string addr, eq, val;
      ls >> addr >> eq >> val;
      if (eq != "=") throw HeapError(where() + "expected '='");
      Address a = parse_address(addr);
      Value v = parse_unit_value(val);
      if (in_snapshot) (*s.snapshot_)[a] = v;
      else s.contents_[a] = v;
    } else {
      throw HeapError(where() + "unknown record '" + kw + "'");
    }
  }
  auto problems = s.validate();
  if (!problems.empty()) throw HeapError("invalid state: " + problems.front());
  return s;
}

}  // namespace slv
