#include "slv/parser.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace slv {

struct Syn {
  enum class K {
    Leaf, Call, Unary, Addr, Arrow, Dot, Index, Binary, Ternary,
    SetLit, MapLit, SeqLit, Forall, Delta, Undef, HasType,
  };
  K k = K::Leaf;
  std::string op;  // operator, callee, field or binder name
  TermPtr leaf;
  std::vector<SynPtr> kids;
  Type type;
  Pos pos;
};

namespace {

const std::set<std::string> kReserved = {
    "true", "false", "nil", "forall", "Delta", "undef", "in", "notin", "subset", "union", "inter",
    "diff", "dagger", "conc", "cand", "cor", "alloc", "skip", "if", "else", "while", "type", "var",
    "const", "fun", "lemma", "define", "include", "inline", "invariant", "conseq", "using", "by"};

SynPtr syn(Syn::K k, std::string op, std::vector<SynPtr> kids, Pos pos) {
  auto s = std::make_shared<Syn>();
  s->k = k;
  s->op = std::move(op);
  s->kids = std::move(kids);
  s->pos = std::move(pos);
  return s;
}

SynPtr leaf(TermPtr t) {
  auto s = std::make_shared<Syn>();
  s->k = Syn::K::Leaf;
  s->pos = t->pos;
  s->leaf = std::move(t);
  return s;
}

}  // namespace

Parser::Parser(const std::string& source, const std::string& file) : toks_(tokenize(source, file)) {}

const Token& Parser::peek(std::size_t ahead) const {
  std::size_t i = std::min(idx_ + ahead, toks_.size() - 1);
  return toks_[i];
}

bool Parser::is(const std::string& text, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return (t.kind == Token::Kind::Punct || t.kind == Token::Kind::Ident) && t.text == text;
}

bool Parser::accept(const std::string& text) {
  if (!is(text)) return false;
  ++idx_;
  return true;
}

const Token& Parser::next() {
  const Token& t = toks_[idx_];
  if (idx_ + 1 < toks_.size()) ++idx_;
  return t;
}

void Parser::fail(const std::string& msg) const { throw SyntaxError(peek().pos, msg); }

const Token& Parser::expect(const std::string& text) {
  if (!is(text)) {
    const Token& t = peek();
    fail("expected '" + text + "' but found " + (t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'"));
  }
  return next();
}

std::string Parser::expect_ident() {
  const Token& t = peek();
  if (t.kind != Token::Kind::Ident || kReserved.count(t.text)) fail("expected identifier");
  return next().text;
}

std::string Parser::expect_string() {
  if (peek().kind != Token::Kind::String) fail("expected string literal");
  return next().text;
}

// ---------------------------------------------------------------- types

Type Parser::parse_type() {
  if (accept("int") || accept("integer")) return Type::integer();
  if (accept("bool") || accept("boolean")) return Type::boolean();
  if (accept("Ptr")) return Type::any_ptr();
  if (accept("map")) return Type::map();
  if (accept("ptr")) return Type::ptr(parse_type());
  if (accept("set")) return Type::set_of(parse_type());
  if (accept("seq")) return Type::seq_of(parse_type());
  if (accept("arr")) {
    expect("[");
    if (peek().kind != Token::Kind::Int) fail("expected array length");
    std::int64_t n = next().value;
    if (n < 1) throw SyntaxError(peek().pos, "array length must be positive");
    expect("]");
    return Type::arr(parse_type(), n);
  }
  if (is("rec")) {
    Pos pos = next().pos;
    expect("{");
    std::vector<std::string> names;
    std::vector<Type> types;
    while (!accept("}")) {
      std::string n = expect_ident();
      for (const auto& existing : names)
        if (existing == n) throw SyntaxError(pos, "duplicate field name '" + n + "'");
      expect(":");
      names.push_back(n);
      types.push_back(parse_type());
      if (!accept(";") && !is("}")) fail("expected ';' or '}' in record type");
    }
    if (names.empty()) throw SyntaxError(pos, "record type needs at least one field");
    return Type::rec(std::move(names), std::move(types));
  }
  return Type::named(expect_ident());
}

// ---------------------------------------------------------------- expressions

SynPtr Parser::parse_expr() { return parse_quant(); }

SynPtr Parser::parse_quant() {
  if (is("forall")) {
    Pos pos = next().pos;
    std::string v = expect_ident();
    expect(":");
    Type t = parse_type();
    expect(".");
    auto body = parse_quant();
    auto s = syn(Syn::K::Forall, v, {body}, pos);
    std::const_pointer_cast<Syn>(s)->type = t;
    return s;
  }
  return parse_implies();
}

SynPtr Parser::parse_implies() {
  auto lhs = parse_ternary();
  if (is("==>")) {
    Pos pos = next().pos;
    auto rhs = parse_quant();
    return syn(Syn::K::Binary, "==>", {lhs, rhs}, pos);
  }
  return lhs;
}

SynPtr Parser::parse_ternary() {
  auto c = parse_or();
  if (is("?")) {
    Pos pos = next().pos;
    auto a = parse_ternary();
    expect(":");
    auto b = parse_ternary();
    return syn(Syn::K::Ternary, "?", {c, a, b}, pos);
  }
  return c;
}

SynPtr Parser::parse_or() {
  auto lhs = parse_and();
  while (is("||") || is("cor")) {
    const Token& t = next();
    std::string op = t.text == "||" ? "or" : "cor";
    lhs = syn(Syn::K::Binary, op, {lhs, parse_and()}, t.pos);
  }
  return lhs;
}

SynPtr Parser::parse_and() {
  auto lhs = parse_cmp();
  while (is("&&") || is("cand")) {
    const Token& t = next();
    std::string op = t.text == "&&" ? "and" : "cand";
    lhs = syn(Syn::K::Binary, op, {lhs, parse_cmp()}, t.pos);
  }
  return lhs;
}

SynPtr Parser::parse_cmp() {
  static const std::set<std::string> ops = {"=", "!=", "<", "<=", ">", ">=", "in", "notin", "subset"};
  auto lhs = parse_setop();
  const Token& t = peek();
  if ((t.kind == Token::Kind::Punct || t.kind == Token::Kind::Ident) && ops.count(t.text)) {
    Pos pos = next().pos;
    return syn(Syn::K::Binary, t.text, {lhs, parse_setop()}, pos);
  }
  if (is("::")) {
    Pos pos = next().pos;
    auto s = syn(Syn::K::HasType, "::", {lhs}, pos);
    std::const_pointer_cast<Syn>(s)->type = parse_type();
    return s;
  }
  return lhs;
}

SynPtr Parser::parse_setop() {
  static const std::set<std::string> ops = {"union", "inter", "diff", "dagger", "conc"};
  auto lhs = parse_add();
  while (peek().kind == Token::Kind::Ident && ops.count(peek().text)) {
    const Token& t = next();
    lhs = syn(Syn::K::Binary, t.text, {lhs, parse_add()}, t.pos);
  }
  return lhs;
}

SynPtr Parser::parse_add() {
  auto lhs = parse_mul();
  while (is("+") || is("-")) {
    const Token& t = next();
    lhs = syn(Syn::K::Binary, t.text, {lhs, parse_mul()}, t.pos);
  }
  return lhs;
}

SynPtr Parser::parse_mul() {
  auto lhs = parse_unary();
  while (is("*") || is("/") || is("%")) {
    const Token& t = next();
    lhs = syn(Syn::K::Binary, t.text, {lhs, parse_unary()}, t.pos);
  }
  return lhs;
}

SynPtr Parser::parse_unary() {
  if (is("-")) {
    Pos pos = next().pos;
    auto arg = parse_unary();
    if (arg->k == Syn::K::Leaf && arg->leaf->kind == Term::Kind::IntLit && arg->leaf->value >= 0)
      return leaf(make_int(-arg->leaf->value, pos));
    return syn(Syn::K::Unary, "-", {arg}, pos);
  }
  if (is("!") || is("*")) {
    const Token& t = next();
    return syn(Syn::K::Unary, t.text, {parse_unary()}, t.pos);
  }
  if (is("&")) {
    Pos pos = next().pos;
    return syn(Syn::K::Addr, "&", {parse_postfix()}, pos);
  }
  return parse_postfix();
}

SynPtr Parser::parse_postfix() {
  auto e = parse_primary();
  for (;;) {
    if (is("->")) {
      Pos pos = next().pos;
      e = syn(Syn::K::Arrow, expect_ident(), {e}, pos);
    } else if (is(".") && peek(1).kind == Token::Kind::Ident) {
      Pos pos = next().pos;
      e = syn(Syn::K::Dot, expect_ident(), {e}, pos);
    } else if (is("[")) {
      Pos pos = next().pos;
      auto idx = parse_expr();
      expect("]");
      e = syn(Syn::K::Index, "[]", {e, idx}, pos);
    } else {
      return e;
    }
  }
}

SynPtr Parser::parse_primary() {
  const Token& t = peek();
  Pos pos = t.pos;
  if (t.kind == Token::Kind::Int) {
    next();
    return leaf(make_int(t.value, pos));
  }
  if (accept("(")) {
    auto e = parse_expr();
    expect(")");
    return e;
  }
  if (accept("{")) {
    if (accept("}")) return leaf(make_empty_coll(pos));
    auto first = parse_expr();
    if (accept("|->")) {
      std::vector<SynPtr> kids{first, parse_expr()};
      while (accept(",")) {
        kids.push_back(parse_expr());
        expect("|->");
        kids.push_back(parse_expr());
      }
      expect("}");
      return syn(Syn::K::MapLit, "map", kids, pos);
    }
    std::vector<SynPtr> kids{first};
    while (accept(",")) kids.push_back(parse_expr());
    expect("}");
    return syn(Syn::K::SetLit, "set", kids, pos);
  }
  if (accept("[")) {
    if (accept("]")) return leaf(make_empty_seq(pos));
    std::vector<SynPtr> kids{parse_expr()};
    while (accept(",")) kids.push_back(parse_expr());
    expect("]");
    return syn(Syn::K::SeqLit, "seq", kids, pos);
  }
  if (t.kind != Token::Kind::Ident) fail("expected expression");
  if (accept("true")) return leaf(make_bool(true, pos));
  if (accept("false")) return leaf(make_bool(false, pos));
  if (accept("nil")) return leaf(make_nil(pos));
  if (accept("undef")) return syn(Syn::K::Undef, "undef", {}, pos);
  if (accept("Delta")) {
    expect("(");
    auto body = parse_expr();
    expect(")");
    return syn(Syn::K::Delta, "Delta", {body}, pos);
  }
  std::string name = expect_ident();
  if (accept("(")) {
    std::vector<SynPtr> args;
    if (!accept(")")) {
      args.push_back(parse_expr());
      while (accept(",")) args.push_back(parse_expr());
      expect(")");
    }
    return syn(Syn::K::Call, name, args, pos);
  }
  return leaf(make_var(name, pos));
}

TermPtr Parser::place_addr(const SynPtr& s) const {
  switch (s->k) {
    case Syn::K::Leaf:
      if (s->leaf->kind == Term::Kind::Var) return make_addr_of_var(s->leaf->name, s->pos);
      break;
    case Syn::K::Unary:
      if (s->op == "*") return to_term(s->kids[0]);
      break;
    case Syn::K::Arrow: return make_field_addr(to_term(s->kids[0]), s->op, s->pos);
    case Syn::K::Dot: return make_field_addr(place_addr(s->kids[0]), s->op, s->pos);
    case Syn::K::Index: return make_index_addr(place_addr(s->kids[0]), to_term(s->kids[1]), s->pos);
    default: break;
  }
  throw SyntaxError(s->pos, "expression does not denote a memory location");
}

TermPtr Parser::to_term(const SynPtr& s) const {
  switch (s->k) {
    case Syn::K::Leaf: return s->leaf;
    case Syn::K::Call: {
      std::vector<TermPtr> args;
      for (const auto& k : s->kids) args.push_back(to_term(k));
      return make_apply(s->op, std::move(args), s->pos);
    }
    case Syn::K::Unary:
      if (s->op == "*") return make_deref(to_term(s->kids[0]), s->pos);
      if (s->op == "-") return make_apply("neg", {to_term(s->kids[0])}, s->pos);
      return make_apply("not", {to_term(s->kids[0])}, s->pos);
    case Syn::K::Addr: {
      const SynPtr& p = s->kids[0];
      switch (p->k) {
        case Syn::K::Leaf:
          if (p->leaf->kind == Term::Kind::Var) return make_addr_of_var(p->leaf->name, s->pos);
          break;
        case Syn::K::Arrow: return make_field_addr(to_term(p->kids[0]), p->op, s->pos);
        case Syn::K::Dot: return make_field_addr(place_addr(p->kids[0]), p->op, s->pos);
        case Syn::K::Index: return make_index_addr(place_addr(p->kids[0]), to_term(p->kids[1]), s->pos);
        default: break;
      }
      throw SyntaxError(s->pos, "'&' must be applied to a variable, e->n, X.n or X[i]");
    }
    case Syn::K::Arrow: return make_term(Term::Kind::Arrow, s->op, {to_term(s->kids[0])}, s->pos);
    case Syn::K::Dot: return make_term(Term::Kind::Dot, s->op, {to_term(s->kids[0])}, s->pos);
    case Syn::K::Index:
      return make_term(Term::Kind::Index, "", {to_term(s->kids[0]), to_term(s->kids[1])}, s->pos);
    case Syn::K::Binary:
      if (s->op == "==>") break;
      return make_apply(s->op, {to_term(s->kids[0]), to_term(s->kids[1])}, s->pos);
    case Syn::K::Ternary:
      return make_cond(to_term(s->kids[0]), to_term(s->kids[1]), to_term(s->kids[2]), s->pos);
    case Syn::K::SetLit:
    case Syn::K::MapLit:
    case Syn::K::SeqLit: {
      std::vector<TermPtr> args;
      for (const auto& k : s->kids) args.push_back(to_term(k));
      auto kind = s->k == Syn::K::SetLit ? Term::Kind::SetLit
                  : s->k == Syn::K::MapLit ? Term::Kind::MapLit
                                           : Term::Kind::SeqLit;
      return make_term(kind, "", std::move(args), s->pos);
    }
    default: break;
  }
  throw SyntaxError(s->pos, "logical connectives, quantifiers, Delta and undef cannot occur in a term");
}

FormulaPtr Parser::to_formula(const SynPtr& s) const {
  switch (s->k) {
    case Syn::K::Binary:
      if (s->op == "and") return make_and(to_formula(s->kids[0]), to_formula(s->kids[1]), s->pos);
      if (s->op == "or") return make_or(to_formula(s->kids[0]), to_formula(s->kids[1]), s->pos);
      if (s->op == "==>") return make_implies(to_formula(s->kids[0]), to_formula(s->kids[1]), s->pos);
      if (s->op == "=") return make_eq(to_term(s->kids[0]), to_term(s->kids[1]), s->pos);
      if (s->op == "!=") return make_not(make_eq(to_term(s->kids[0]), to_term(s->kids[1]), s->pos), s->pos);
      break;
    case Syn::K::Unary:
      if (s->op == "!") return make_not(to_formula(s->kids[0]), s->pos);
      break;
    case Syn::K::Forall: return make_forall(s->op, s->type, to_formula(s->kids[0]), s->pos);
    case Syn::K::Delta: return make_delta(to_formula(s->kids[0]), s->pos);
    case Syn::K::Undef: return make_undef(s->pos);
    case Syn::K::HasType: return make_has_type(to_term(s->kids[0]), s->type, s->pos);
    default: break;
  }
  return make_bool_term(to_term(s), s->pos);
}

TermPtr Parser::parse_term() { return to_term(parse_expr()); }
FormulaPtr Parser::parse_formula() { return to_formula(parse_expr()); }

// ---------------------------------------------------------------- statements

StmtPtr Parser::finish_assignment(const TermPtr& place, const Pos& pos) {
  expect(":=");
  if (accept("alloc")) {
    expect("(");
    Type t = parse_type();
    expect(")");
    expect(";");
    return make_alloc(place, t, pos);
  }
  TermPtr rhs = parse_term();
  expect(";");
  return make_assign(place, rhs, pos);
}

StmtPtr Parser::parse_statement() {
  Pos pos = peek().pos;
  if (accept("skip")) {
    expect(";");
    return make_skip(pos);
  }
  if (accept("if")) {
    expect("(");
    TermPtr c = parse_term();
    expect(")");
    StmtPtr then_s = parse_block_or_statement();
    StmtPtr else_s = accept("else") ? parse_block_or_statement() : make_seq({make_skip(pos)}, pos);
    return make_if(c, then_s, else_s, pos);
  }
  if (accept("while")) {
    expect("(");
    TermPtr c = parse_term();
    expect(")");
    return make_while(c, parse_block_or_statement(), pos);
  }
  if (is("{")) return parse_block_or_statement();
  TermPtr place = to_term(parse_unary());
  return finish_assignment(place, pos);
}

StmtPtr Parser::parse_block_or_statement() {
  Pos pos = peek().pos;
  if (accept("{")) {
    std::vector<StmtPtr> items;
    while (!accept("}")) {
      if (at_end()) fail("unterminated block");
      items.push_back(parse_statement());
    }
    if (items.empty()) items.push_back(make_skip(pos));
    return make_seq(std::move(items), pos);
  }
  return make_seq({parse_statement()}, pos);
}

bool Parser::parse_declaration(Declarations& decls) {
  Pos pos = peek().pos;
  if (accept("type")) {
    std::string name = expect_ident();
    expect("=");
    Type t = parse_type();
    expect(";");
    for (const auto& d : decls.types)
      if (d.name == name) throw SyntaxError(pos, "duplicate type name '" + name + "'");
    decls.types.push_back({name, t, pos});
    return true;
  }
  if (is("var") || is("const")) {
    bool is_const = next().text == "const";
    std::vector<std::pair<std::string, Pos>> names;
    do {
      Pos npos = peek().pos;
      names.emplace_back(expect_ident(), npos);
    } while (accept(","));
    expect(":");
    Type t = parse_type();
    expect(";");
    auto& list = is_const ? decls.consts : decls.vars;
    for (const auto& [n, p] : names) {
      for (const auto& d : decls.vars)
        if (d.name == n) throw SyntaxError(p, "duplicate variable name '" + n + "'");
      for (const auto& d : decls.consts)
        if (d.name == n) throw SyntaxError(p, "duplicate variable name '" + n + "'");
      list.push_back({n, t, p});
    }
    return true;
  }
  return false;
}

// ---------------------------------------------------------------- units

ProgramUnit parse_program(const std::string& source, const std::string& file) {
  Parser p(source, file);
  ProgramUnit unit;
  Pos start = p.peek().pos;
  while (p.parse_declaration(unit.decls)) {
  }
  std::vector<StmtPtr> items;
  while (!p.at_end()) items.push_back(p.parse_statement());
  if (items.empty()) items.push_back(make_skip(start));
  unit.body = make_seq(std::move(items), start);
  return unit;
}

namespace {

std::vector<Param> parse_params(Parser& p, const std::string& close) {
  std::vector<Param> out;
  if (p.accept(close)) return out;
  do {
    Param prm;
    prm.name = p.expect_ident();
    p.expect(":");
    prm.type = p.parse_type();
    for (const auto& q : out)
      if (q.name == prm.name) p.fail("duplicate parameter '" + prm.name + "'");
    out.push_back(prm);
  } while (p.accept(","));
  p.expect(close);
  return out;
}

}  // namespace

SpecUnit parse_spec(const std::string& source, const std::string& file) {
  Parser p(source, file);
  SpecUnit unit;
  while (!p.at_end()) {
    if (p.parse_declaration(unit.decls)) continue;
    Pos pos = p.peek().pos;
    if (p.accept("include")) {
      unit.includes.push_back(p.expect_string());
      p.expect(";");
    } else if (p.is("fun") || p.is("inline")) {
      FuncDef f;
      f.inline_def = p.accept("inline");
      p.expect("fun");
      f.pos = pos;
      // The prelude defines the reserved connectives themselves.
      if (f.inline_def && (p.is("cand") || p.is("cor"))) f.name = p.next().text;
      else f.name = p.expect_ident();
      p.expect("(");
      f.params = parse_params(p, ")");
      p.expect(":");
      f.result = p.parse_type();
      p.expect("=");
      f.body = p.parse_term();
      p.expect(";");
      for (const auto& g : unit.funcs)
        if (g.name == f.name) throw SyntaxError(pos, "duplicate function '" + f.name + "'");
      unit.funcs.push_back(std::move(f));
    } else if (p.accept("lemma")) {
      Lemma l;
      l.pos = pos;
      l.name = p.expect_ident();
      if (p.accept("[")) l.binders = parse_params(p, "]");
      p.expect(":");
      if (!p.is("|-")) {
        l.hyps.push_back(p.parse_formula());
        while (p.accept(",")) l.hyps.push_back(p.parse_formula());
      }
      p.expect("|-");
      l.concl = p.parse_formula();
      p.expect(";");
      for (const auto& g : unit.lemmas)
        if (g.name == l.name) throw SyntaxError(pos, "duplicate lemma '" + l.name + "'");
      unit.lemmas.push_back(std::move(l));
    } else if (p.accept("define")) {
      AssertionDef d;
      d.pos = pos;
      d.name = p.expect_ident();
      if (p.accept("(")) {
        d.params.push_back(p.expect_ident());
        while (p.accept(",")) d.params.push_back(p.expect_ident());
        p.expect(")");
      }
      p.expect("=");
      d.body = p.parse_formula();
      p.expect(";");
      unit.assertions.push_back(std::move(d));
    } else {
      p.fail("expected declaration, 'fun', 'lemma', 'define' or 'include'");
    }
  }
  return unit;
}

TermPtr parse_term(const std::string& source, const std::string& file) {
  Parser p(source, file);
  auto t = p.parse_term();
  if (!p.at_end()) p.fail("unexpected trailing input");
  return t;
}

FormulaPtr parse_formula(const std::string& source, const std::string& file) {
  Parser p(source, file);
  auto f = p.parse_formula();
  if (!p.at_end()) p.fail("unexpected trailing input");
  return f;
}

StmtPtr parse_statements(const std::string& source, const std::string& file) {
  return parse_program(source, file).body;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace slv
