#include "slv/vcgen.hpp"

#include <filesystem>
#include <set>
#include <sstream>

#include "slv/expand.hpp"
#include "slv/normalize.hpp"
#include "slv/printer.hpp"
#include "slv/scope.hpp"
#include "slv/typecheck.hpp"

namespace slv {

namespace {

std::string point_of(const Pos& p) {
  return std::filesystem::path(p.file).filename().string() + ":" + std::to_string(p.line) + ":" +
         std::to_string(p.col);
}

FormulaPtr notin(const TermPtr& a, const TermPtr& s) { return make_bool_term(make_apply("notin", {a, s})); }
FormulaPtr not_nil(const TermPtr& a) { return make_not(make_eq(a, make_nil())); }
FormulaPtr defined(const TermPtr& c) {
  return make_or(make_bool_term(c), make_not(make_bool_term(c)));
}

class Generator {
 public:
  Generator(const Context& ctx, VcSet& out) : ctx_(ctx), scopes_(ctx), out_(out) {}

  FormulaPtr seq(const OutlineSeq& s) {
    FormulaPtr cur = s.pre;
    for (const auto& it : s.items) {
      step(it, cur);
      cur = it.post;
    }
    return cur;
  }

 private:
  const Context& ctx_;
  ScopeTable scopes_;
  VcSet& out_;

  void error(const Pos& p, const std::string& m) { out_.errors.push_back({p, m}); }

  void expect_same(const Pos& p, const std::string& what, const FormulaPtr& have, const FormulaPtr& want) {
    if (same_assertion(have, want)) return;
    std::string m = what + " does not match the rule";
    for (const auto& c : missing_conjuncts(want, have)) m += "; missing " + c;
    for (const auto& c : missing_conjuncts(have, want)) m += "; unexpected " + c;
    error(p, m);
  }

  void emit(const OutlineItem& it, const std::string& rule, const std::string& label, const FormulaPtr& hyp,
            FormulaPtr show) {
    VC vc;
    vc.id = static_cast<int>(out_.vcs.size()) + 1;
    vc.rule = rule;
    vc.point = point_of(it.pos);
    vc.label = label;
    vc.hints = it.cites;
    vc.hyps = normal_conjuncts(hyp);
    vc.show = std::move(show);
    for (const auto& v : out_.vcs)
      if (v.point == vc.point && print(v.show) == print(vc.show)) return;
    out_.vcs.push_back(std::move(vc));
  }

  std::set<std::string> free_nonconst(const FormulaPtr& f) {
    std::set<std::string> out;
    for (const auto& v : free_vars(*f))
      if (!ctx_.consts.count(v)) out.insert(v);
    return out;
  }

  TermPtr scope(const TermPtr& e) { return simplify_scope(scopes_.scope(e)); }

  // `a notin S` for each top-level term of q, with S substituted.
  void isolation(const OutlineItem& it, const std::string& rule, const FormulaPtr& hyp, const TermPtr& addr,
                 const FormulaPtr& q, const Subst& sub) {
    for (const auto& top : top_level_terms(q)) {
      TermPtr s = scope(top.term);
      if (!sub.empty()) s = substitute(s, sub);
      FormulaPtr show = notin(addr, s);
      for (auto b = top.bound.rbegin(); b != top.bound.rend(); ++b) show = make_forall(b->name, b->type, show);
      emit(it, rule, "isolation of " + print(top.term, PrintMode::Sugared), hyp, show);
    }
  }

  void step(const OutlineItem& it, const FormulaPtr& cur) {
    switch (it.kind) {
      case OutlineItem::Kind::Skip: expect_same(it.post_pos, "postcondition of skip", it.post, cur); break;
      case OutlineItem::Kind::Conseq: {
        for (const auto& c : it.cites)
          if (!ctx_.lemma(c)) error(it.pos, "unknown lemma '" + c + "'");
        emit(it, "CONSEQ", "entailment", cur, it.post);
        break;
      }
      case OutlineItem::Kind::Assign: assign(it, cur); break;
      case OutlineItem::Kind::Alloc: alloc(it, cur); break;
      case OutlineItem::Kind::If: {
        emit(it, "IF-ST", "definedness of the condition", cur, defined(it.cond));
        expect_same(it.blocks[0].pre_pos, "then-block precondition", it.blocks[0].pre,
                    make_and(cur, make_bool_term(it.cond)));
        expect_same(it.blocks[1].pre_pos, "else-block precondition", it.blocks[1].pre,
                    make_and(cur, make_not(make_bool_term(it.cond))));
        FormulaPtr a = seq(it.blocks[0]);
        FormulaPtr b = seq(it.blocks[1]);
        expect_same(it.post_pos, "then-block postcondition", a, it.post);
        expect_same(it.post_pos, "else-block postcondition", b, it.post);
        break;
      }
      case OutlineItem::Kind::While: {
        const FormulaPtr& inv = it.invariant;
        expect_same(it.pos, "loop entry assertion", cur, inv);
        emit(it, "WHILE-ST", "definedness of the condition", inv, defined(it.cond));
        expect_same(it.blocks[0].pre_pos, "loop body precondition", it.blocks[0].pre,
                    make_and(inv, make_bool_term(it.cond)));
        FormulaPtr end = seq(it.blocks[0]);
        expect_same(it.pos, "loop body postcondition", end, inv);
        expect_same(it.post_pos, "loop exit assertion", it.post, make_and(inv, make_not(make_bool_term(it.cond))));
        break;
      }
    }
  }

  void assign(const OutlineItem& it, const FormulaPtr& cur) {
    const Statement& s = *it.stmt;
    if (s.target->kind != Term::Kind::Deref) {
      error(it.pos, "assignment target is not a dereference");
      return;
    }
    for (const auto& v : free_nonconst(it.templ))
      if (v != it.tvar) error(it.pos, "template has free variable '" + v + "' besides '" + it.tvar + "'");
    TermPtr e1 = s.target->args[0];
    Subst pre_sub{{it.tvar, s.rhs}};
    Subst post_sub{{it.tvar, s.target}};
    FormulaPtr pre, post;
    try {
      pre = substitute(it.templ, pre_sub);
      post = substitute(it.templ, post_sub);
    } catch (const std::exception& e) {
      error(it.pos, e.what());
      return;
    }
    expect_same(it.pos, "precondition of the assignment", cur, pre);
    expect_same(it.post_pos, "postcondition of the assignment", it.post, post);
    Type t;
    try {
      t = type_of(ctx_, *s.target);
    } catch (const std::exception& e) {
      error(it.pos, e.what());
      return;
    }
    emit(it, "ASSIGN-ST", "target", pre,
         make_conj({not_nil(e1), notin(e1, scope(e1)), make_has_type(s.rhs, t)}));
    isolation(it, "ASSIGN-ST", pre, e1, it.templ, pre_sub);
  }

  void alloc(const OutlineItem& it, const FormulaPtr& cur) {
    const Statement& s = *it.stmt;
    if (s.target->kind != Term::Kind::Deref) {
      error(it.pos, "allocation target is not a dereference");
      return;
    }
    for (const auto& v : free_nonconst(cur)) error(it.pos, "precondition of alloc has free variable '" + v + "'");
    TermPtr e = s.target->args[0];
    const TermPtr& star = s.target;
    FormulaPtr want = make_conj({cur, make_bool_term(make_apply("InHeap", {star})),
                                 make_bool_term(make_apply("Unique", {e})),
                                 make_bool_term(make_apply("PtrInit", {star})), not_nil(star)});
    expect_same(it.post_pos, "postcondition of the allocation", it.post, want);
    emit(it, "ALLOC-ST", "target", cur, make_conj({not_nil(e), notin(e, scope(e))}));
    isolation(it, "ALLOC-ST", cur, e, cur, {});
  }
};

}  // namespace

VcSet generate_vcs(const Context& ctx, const Outline& o) {
  VcSet out;
  Generator g(ctx, out);
  g.seq(o.body);
  return out;
}

std::string format_vc(const VC& vc) {
  std::ostringstream os;
  os << "vc " << vc.id << " origin=" << vc.rule << "@" << vc.point << "\n";
  os << "given: P";
  for (const auto& h : vc.hints) os << ", " << h;
  os << "\n";
  for (const auto& h : vc.hyps) os << "hyp: " << print(h, PrintMode::Sugared) << "\n";
  os << "show: " << print(vc.show, PrintMode::Sugared) << "\n";
  return os.str();
}

std::string format_vcs(const std::vector<VC>& vcs) {
  std::string out;
  for (std::size_t i = 0; i < vcs.size(); ++i) {
    if (i) out += "\n";
    out += format_vc(vcs[i]);
  }
  return out;
}

}  // namespace slv
