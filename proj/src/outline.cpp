#include "slv/outline.hpp"

#include <filesystem>
#include <set>
#include <stdexcept>

#include "slv/expand.hpp"
#include "slv/lexer.hpp"
#include "slv/parser.hpp"
#include "slv/scope.hpp"

namespace slv {

namespace {

class OutlineParser {
 public:
  OutlineParser(const std::string& src, const std::string& file) : p_(src, file) {}

  Outline parse() {
    Outline o;
    for (;;) {
      if (p_.is("spec")) {
        p_.next();
        o.spec_path = p_.expect_string();
        p_.expect(";");
      } else if (p_.is("program")) {
        p_.next();
        o.program_path = p_.expect_string();
        p_.expect(";");
      } else {
        break;
      }
    }
    o.body = seq();
    if (!p_.at_end()) p_.fail("unexpected text after the proof outline");
    return o;
  }

 private:
  Parser p_;

  FormulaPtr assertion(Pos* pos = nullptr) {
    if (pos) *pos = p_.peek().pos;
    p_.expect("{|");
    FormulaPtr f = p_.parse_formula();
    p_.expect("|}");
    return f;
  }

  // Items until `}` or end of input.
  OutlineSeq seq() {
    OutlineSeq s;
    s.pre = assertion(&s.pre_pos);
    while (!p_.at_end() && !p_.is("}")) s.items.push_back(item());
    return s;
  }

  OutlineSeq block() {
    p_.expect("{");
    OutlineSeq s = seq();
    p_.expect("}");
    return s;
  }

  OutlineItem item() {
    OutlineItem it;
    it.pos = p_.peek().pos;
    if (p_.accept("conseq")) {
      it.kind = OutlineItem::Kind::Conseq;
      if (p_.accept("using")) {
        it.cites.push_back(p_.expect_ident());
        while (p_.accept(",")) it.cites.push_back(p_.expect_ident());
      }
      p_.expect(";");
    } else if (p_.accept("by")) {
      std::string rule = p_.expect_ident();
      if (rule != "assign") p_.fail("expected 'assign' after 'by'");
      it.kind = OutlineItem::Kind::Assign;
      p_.expect("(");
      it.tvar = p_.expect_ident();
      p_.expect(":");
      it.ttype = p_.parse_type();
      p_.expect(")");
      it.templ = assertion();
      it.stmt = p_.parse_statement();
      if (it.stmt->kind != Statement::Kind::Assign) throw SyntaxError(it.pos, "'by assign' must annotate an assignment");
    } else if (p_.accept("if")) {
      it.kind = OutlineItem::Kind::If;
      p_.expect("(");
      it.cond = p_.parse_term();
      p_.expect(")");
      it.blocks.push_back(block());
      p_.expect("else");
      it.blocks.push_back(block());
    } else if (p_.accept("while")) {
      it.kind = OutlineItem::Kind::While;
      p_.expect("(");
      it.cond = p_.parse_term();
      p_.expect(")");
      p_.expect("invariant");
      it.invariant = assertion();
      it.blocks.push_back(block());
    } else {
      it.stmt = p_.parse_statement();
      switch (it.stmt->kind) {
        case Statement::Kind::Alloc: it.kind = OutlineItem::Kind::Alloc; break;
        case Statement::Kind::Skip: it.kind = OutlineItem::Kind::Skip; break;
        case Statement::Kind::Assign:
          throw SyntaxError(it.pos, "assignment needs a 'by assign(x: T) {| q |}' annotation");
        default: throw SyntaxError(it.pos, "unexpected statement form in outline");
      }
    }
    it.post = assertion(&it.post_pos);
    return it;
  }
};

StmtPtr seq_program(const OutlineSeq& s, const Pos& pos) {
  std::vector<StmtPtr> items;
  for (const auto& it : s.items) {
    switch (it.kind) {
      case OutlineItem::Kind::Conseq: break;
      case OutlineItem::Kind::Assign:
      case OutlineItem::Kind::Alloc:
      case OutlineItem::Kind::Skip: items.push_back(it.stmt); break;
      case OutlineItem::Kind::If:
        items.push_back(make_if(it.cond, seq_program(it.blocks[0], it.pos), seq_program(it.blocks[1], it.pos), it.pos));
        break;
      case OutlineItem::Kind::While:
        items.push_back(make_while(it.cond, seq_program(it.blocks[0], it.pos), it.pos));
        break;
    }
  }
  if (items.empty()) items.push_back(make_skip(pos));
  return make_seq(std::move(items), pos);
}

void flatten(const StmtPtr& s, std::vector<StmtPtr>& out) {
  if (s->kind == Statement::Kind::Seq) {
    for (const auto& b : s->body) flatten(b, out);
  } else {
    out.push_back(s);
  }
}

// Structural equality up to Seq nesting and lone skips in blocks.
bool same_program(const StmtPtr& a, const StmtPtr& b) {
  std::vector<StmtPtr> xs, ys;
  flatten(a, xs);
  flatten(b, ys);
  auto drop_skip = [](std::vector<StmtPtr>& v) {
    if (v.size() == 1 && v[0]->kind == Statement::Kind::Skip) v.clear();
  };
  drop_skip(xs);
  drop_skip(ys);
  if (xs.size() != ys.size()) return false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Statement& x = *xs[i];
    const Statement& y = *ys[i];
    if (x.kind != y.kind) return false;
    switch (x.kind) {
      case Statement::Kind::Skip: break;
      case Statement::Kind::Assign:
        if (!equal(*x.target, *y.target) || !equal(*x.rhs, *y.rhs)) return false;
        break;
      case Statement::Kind::Alloc:
        if (!equal(*x.target, *y.target) || !(x.alloc_type == y.alloc_type)) return false;
        break;
      case Statement::Kind::If:
        if (!equal(*x.cond, *y.cond) || !same_program(x.body[0], y.body[0]) || !same_program(x.body[1], y.body[1]))
          return false;
        break;
      case Statement::Kind::While:
        if (!equal(*x.cond, *y.cond) || !same_program(x.body[0], y.body[0])) return false;
        break;
      case Statement::Kind::Seq: return false;
    }
  }
  return true;
}

void prepare_seq(OutlineSeq& s, const Context& ctx) {
  s.pre = ctx.prepare(s.pre);
  for (auto& it : s.items) {
    if (it.stmt) it.stmt = ctx.prepare(it.stmt);
    if (it.cond) it.cond = ctx.prepare(it.cond);
    if (it.invariant) it.invariant = ctx.prepare(it.invariant);
    if (it.templ) {
      std::set<std::string> pv = ctx.progvars();
      if (pv.count(it.tvar) || ctx.consts.count(it.tvar))
        throw SyntaxError(it.pos, "template variable '" + it.tvar + "' clashes with a declared name");
      it.templ = expand_macros_in(expand(it.templ, pv), ctx);
    }
    for (auto& b : it.blocks) prepare_seq(b, ctx);
    it.post = ctx.prepare(it.post);
  }
}

}  // namespace

Outline parse_outline(const std::string& source, const std::string& file) {
  Outline o = OutlineParser(source, file).parse();
  o.file = file;
  return o;
}

StmtPtr outline_program(const OutlineSeq& seq) { return seq_program(seq, seq.pre_pos); }

void prepare_outline(Outline& o, const Context& ctx) {
  prepare_seq(o.body, ctx);
  if (ctx.program && !same_program(outline_program(o.body), ctx.program))
    throw SyntaxError(o.body.pre_pos, "annotated statements differ from the program");
}

LoadedOutline load_outline(const std::string& path) {
  namespace fs = std::filesystem;
  LoadedOutline lo;
  lo.outline = parse_outline(read_file(path), path);
  fs::path dir = fs::path(path).parent_path();
  auto resolve = [&](const std::string& rel) { return rel.empty() ? std::string() : (dir / rel).string(); };
  if (lo.outline.spec_path.empty()) throw std::runtime_error(path + ": outline names no spec file");
  lo.ctx = load_context_with_msfs(resolve(lo.outline.spec_path), resolve(lo.outline.program_path));
  prepare_outline(lo.outline, lo.ctx);
  return lo;
}

}  // namespace slv
