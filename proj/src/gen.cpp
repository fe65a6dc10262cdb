#include "slv/gen.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "slv/eval.hpp"

namespace slv {

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return lo;
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

Shape parse_shape(const std::string& text) {
  Shape s;
  std::string body = text;
  auto at = body.find('@');
  if (at != std::string::npos) {
    s.root = body.substr(at + 1);
    body = body.substr(0, at);
  }
  auto colon = body.find(':');
  std::string kind = body.substr(0, colon);
  if (kind == "bst") s.kind = Shape::Kind::Bst;
  else if (kind == "graph") s.kind = Shape::Kind::TwoSuccessor;
  else if (kind == "any") s.kind = Shape::Kind::Arbitrary;
  else throw GenError("unknown shape '" + kind + "' (expected bst, graph or any)");
  if (colon != std::string::npos) {
    try {
      s.size = std::stoi(body.substr(colon + 1));
    } catch (const std::exception&) {
      throw GenError("bad shape size in '" + text + "'");
    }
  }
  if (s.size < 0) throw GenError("negative shape size");
  return s;
}

std::string to_string(const Shape& s) {
  const char* k = s.kind == Shape::Kind::Bst ? "bst" : s.kind == Shape::Kind::TwoSuccessor ? "graph" : "any";
  return std::string(k) + ":" + std::to_string(s.size) + (s.root.empty() ? "" : "@" + s.root);
}

namespace {

bool has_fields(const TypeTable& tt, const Type& rec, std::initializer_list<const char*> names) {
  const Type& r = tt.resolve(rec);
  if (r.kind != Type::Kind::Rec) return false;
  for (const char* n : names)
    if (std::find(r.fields.begin(), r.fields.end(), n) == r.fields.end()) return false;
  return true;
}

// First pointer-to-record variable whose record has the given fields.
std::string pick_root(const Context& ctx, const std::string& wanted, std::initializer_list<const char*> fields) {
  auto fits = [&](const std::string& v) {
    const Type& t = ctx.types.resolve(ctx.vars.at(v));
    return t.kind == Type::Kind::Ptr && has_fields(ctx.types, t.elem(), fields);
  };
  if (!wanted.empty()) {
    if (!ctx.vars.count(wanted) || !fits(wanted)) throw GenError("'" + wanted + "' is not a suitable root variable");
    return wanted;
  }
  for (const auto& v : ctx.var_order)
    if (fits(v)) return v;
  throw GenError("no variable points to a suitable record type");
}

Address field(const Value& node, const char* f) { return node.ptr->field(f); }

State gen_bst(const Context& ctx, const Shape& shape, Rng& rng) {
  std::string root = pick_root(ctx, shape.root, {"l", "r", "K", "D"});
  State st = init_state(ctx);
  Type node_t = ctx.types.resolve(ctx.vars.at(root)).elem();
  Address root_addr = *st.var_addr(root);
  int n = shape.size;
  std::vector<std::int64_t> keys;
  for (std::int64_t k = 0; k <= 3 * n + 2; ++k) keys.push_back(k);
  std::shuffle(keys.begin(), keys.end(), rng);
  keys.resize(n);
  for (std::int64_t key : keys) {
    Value node = Value::pointer(st.alloc(node_t));
    st.write(field(node, "K"), Value::integer(key));
    st.write(field(node, "D"), Value::integer(uniform(rng, 0, 99)));
    Address slot = root_addr;
    while (st.read(slot).ptr) {
      Value cur = st.read(slot);
      slot = field(cur, key < st.read(field(cur, "K")).i ? "l" : "r");
    }
    st.write(slot, node);
  }
  if (!is_bst_shape(st, st.read(root_addr))) throw GenError("bst generator produced an invalid tree");
  return st;
}

State gen_graph(const Context& ctx, const Shape& shape, Rng& rng) {
  std::string root = pick_root(ctx, shape.root.empty() && ctx.vars.count("root") ? "root" : shape.root, {"l", "r", "m"});
  if (!ctx.vars.count("vroot")) throw GenError("two-successor graphs need a 'vroot' variable");
  State st = init_state(ctx);
  Type node_t = ctx.types.resolve(ctx.vars.at(root)).elem();
  int n = std::max(1, shape.size);
  std::vector<Value> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back(Value::pointer(st.alloc(node_t)));
  for (const auto& v : nodes) {
    st.write(field(v, "l"), nodes[uniform(rng, 0, n - 1)]);
    st.write(field(v, "r"), nodes[uniform(rng, 0, n - 1)]);
  }
  st.write(*st.var_addr(root), nodes[0]);
  Value vroot = Value::pointer(st.alloc(node_t));
  st.write(field(vroot, "l"), nodes[0]);
  st.write(field(vroot, "r"), nodes[0]);
  st.write(*st.var_addr("vroot"), vroot);
  if (!is_two_successor_graph(st, root, "vroot")) throw GenError("graph generator produced an invalid graph");
  return st;
}

State gen_any(const Context& ctx, const Shape& shape, Rng& rng) {
  State st = init_state(ctx);
  std::set<std::string> recs;
  for (const auto& v : ctx.var_order) {
    Type t = ctx.types.resolve(ctx.vars.at(v));
    while (t.kind == Type::Kind::Ptr) {
      if (t.elem().kind == Type::Kind::Named) recs.insert(t.elem().name);
      t = ctx.types.resolve(t.elem());
    }
  }
  for (const auto& r : recs)
    for (int i = 0; i < shape.size; ++i) st.alloc(Type::named(r));
  std::vector<Address> units;
  for (const auto& [a, v] : st.contents()) units.push_back(a);
  for (const auto& a : units) st.write(a, random_value(st, *st.type_at(a), rng));
  return st;
}

}  // namespace

State gen_state(const Context& ctx, const Shape& shape, Rng& rng) {
  switch (shape.kind) {
    case Shape::Kind::Bst: return gen_bst(ctx, shape, rng);
    case Shape::Kind::TwoSuccessor: return gen_graph(ctx, shape, rng);
    case Shape::Kind::Arbitrary: return gen_any(ctx, shape, rng);
  }
  throw GenError("unknown shape");
}

std::vector<Value> pointer_pool(const State& st, const Type& target, bool with_nil) {
  std::vector<Value> out;
  const Type& want = st.types().resolve(target);
  if (want.kind == Type::Kind::AnyPtr) {
    for (const auto& [a, v] : st.contents()) out.push_back(Value::pointer(a));
  } else {
    for (const auto& a : all_addresses(st))
      if (st.types().resolve(*st.type_at(a)) == want) out.push_back(Value::pointer(a));
  }
  if (with_nil) out.push_back(Value::nil());
  return out;
}

std::vector<std::int64_t> int_pool(const State& st) {
  std::set<std::int64_t> s = {-1, 0, 1};
  for (const auto& [a, v] : st.contents())
    if (v.kind == Value::Kind::Int) s.insert({v.i - 1, v.i, v.i + 1});
  return {s.begin(), s.end()};
}

Value random_value(const State& st, const Type& t, Rng& rng) {
  const Type& r = st.types().resolve(t);
  switch (r.kind) {
    case Type::Kind::Int: {
      auto pool = int_pool(st);
      return Value::integer(pool[uniform(rng, 0, static_cast<std::int64_t>(pool.size()) - 1)]);
    }
    case Type::Kind::Bool: return Value::boolean(uniform(rng, 0, 1) == 1);
    case Type::Kind::Ptr:
    case Type::Kind::AnyPtr: {
      auto pool = pointer_pool(st, r.kind == Type::Kind::Ptr ? r.elem() : r);
      return pool[uniform(rng, 0, static_cast<std::int64_t>(pool.size()) - 1)];
    }
    default: throw GenError("no random values of type " + to_string(t));
  }
}

void randomize_vars(State& st, const Context& ctx, const std::vector<std::string>& names, Rng& rng) {
  for (const auto& name : names) {
    auto addr = st.var_addr(name);
    if (!addr) continue;
    for (const auto& u : st.block_units(*addr)) st.write(u, random_value(st, *st.type_at(u), rng));
  }
  (void)ctx;
}

bool is_bst_shape(const State& st, const Value& root) {
  std::set<Address> seen;
  std::vector<std::int64_t> inorder;
  std::function<bool(const Value&)> walk = [&](const Value& n) {
    if (!n.ptr) return true;
    if (!st.valid(*n.ptr) || !seen.insert(*n.ptr).second) return false;
    if (!st.blocks().at(n.ptr->block).heap) return false;
    if (!walk(st.read(n.ptr->field("l")))) return false;
    inorder.push_back(st.read(n.ptr->field("K")).i);
    return walk(st.read(n.ptr->field("r")));
  };
  if (!walk(root)) return false;
  return std::adjacent_find(inorder.begin(), inorder.end(), std::greater_equal<>()) == inorder.end();
}

bool is_two_successor_graph(const State& st, const std::string& root_var, const std::string& vroot_var) {
  Value root = st.read(*st.var_addr(root_var));
  Value vroot = st.read(*st.var_addr(vroot_var));
  if (!root.ptr || !vroot.ptr) return false;
  if (st.read(vroot.ptr->field("l")) != root || st.read(vroot.ptr->field("r")) != root) return false;
  std::set<Address> seen;
  std::vector<Value> todo{root};
  while (!todo.empty()) {
    Value n = todo.back();
    todo.pop_back();
    if (!n.ptr) return false;
    if (!seen.insert(*n.ptr).second) continue;
    if (st.read(n.ptr->field("m")).i != 0) return false;
    todo.push_back(st.read(n.ptr->field("l")));
    todo.push_back(st.read(n.ptr->field("r")));
  }
  return true;
}

}  // namespace slv
