#include "slv/prover.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "slv/expand.hpp"
#include "slv/normalize.hpp"
#include "slv/printer.hpp"
#include "slv/typecheck.hpp"

namespace slv {

std::string ProofResult::method() const {
  if (!proved) return "";
  std::string m;
  if (used_builtin || lemmas.empty()) m = "builtin";
  if (!lemmas.empty()) {
    if (!m.empty()) m += "+";
    m += "lemma(";
    for (std::size_t i = 0; i < lemmas.size(); ++i) m += (i ? "," : "") + lemmas[i];
    m += ")";
  }
  return m;
}

namespace {

using TK = Term::Kind;
using FK = Formula::Kind;

struct Trace {
  std::set<std::string> lemmas;
  bool builtin = false;
  void merge(const Trace& o) {
    lemmas.insert(o.lemmas.begin(), o.lemmas.end());
    builtin = builtin || o.builtin;
  }
};

struct NLemma {
  std::string name;
  std::set<std::string> vars;
  std::vector<FormulaPtr> hyps;
  std::vector<FormulaPtr> concl;
};

FormulaPtr notin_atom(const TermPtr& a, const TermPtr& s) {
  return make_not(make_bool_term(make_apply("in", {a, s})));
}

void union_parts(const TermPtr& s, std::vector<TermPtr>& out) {
  if (s->kind == TK::Apply && s->name == "union" && s->args.size() == 2) {
    union_parts(s->args[0], out);
    union_parts(s->args[1], out);
  } else {
    out.push_back(s);
  }
}

// `a notin S` with S a union of parts, as one atom per part.
bool notin_parts(const Formula& f, TermPtr& a, std::vector<TermPtr>& parts) {
  if (f.kind != FK::Not) return false;
  const Formula& in = f.sub(0);
  if (in.kind != FK::BoolTerm) return false;
  const Term& t = in.term(0);
  if (t.kind != TK::Apply || t.name != "in" || t.args.size() != 2) return false;
  a = t.args[0];
  union_parts(t.args[1], parts);
  return true;
}

std::vector<FormulaPtr> split_atoms(const FormulaPtr& f) {
  std::vector<FormulaPtr> out;
  for (const auto& c : normal_conjuncts(f)) {
    TermPtr a;
    std::vector<TermPtr> parts;
    if (notin_parts(*c, a, parts) && parts.size() > 1) {
      for (const auto& p : parts) out.push_back(notin_atom(a, p));
    } else {
      out.push_back(c);
    }
  }
  return out;
}

bool is_partial_builtin(const std::string& n) {
  return n == "/" || n == "%" || n == "max" || n == "min" || n == "head" || n == "tail";
}

class Session {
 public:
  Session(const Context& ctx, const ProverOptions& opt) : ctx_(ctx), opt_(opt) {
    if (!opt_.use_lemmas) return;
    for (const auto& l : ctx.lemmas) {
      if (!opt_.only.empty() && std::find(opt_.only.begin(), opt_.only.end(), l.name) == opt_.only.end()) continue;
      NLemma n;
      n.name = l.name;
      for (const auto& b : l.binders) n.vars.insert(b.name);
      for (const auto& h : l.hyps)
        for (const auto& a : split_atoms(h)) n.hyps.push_back(a);
      n.concl = split_atoms(l.concl);
      lemmas_.push_back(std::move(n));
    }
  }

  ProofResult run(const std::vector<FormulaPtr>& hyps, const FormulaPtr& show) {
    for (const auto& h : hyps) add_fact(h, {});
    if (opt_.use_lemmas) forward();

    std::vector<FormulaPtr> pending;
    std::vector<std::string> stuck;
    for (const auto& c : conjuncts(show)) {
      FormulaPtr a, b;
      if (match_or(*c, a, b) && same_assertion(a, make_not(b))) {
        std::string why;
        if (!definedness(a, pending, why)) stuck.push_back(why);
      } else {
        for (const auto& g : split_atoms(c)) pending.push_back(g);
      }
    }

    Trace total;
    bool progress = true;
    while (progress && !pending.empty()) {
      progress = false;
      std::vector<FormulaPtr> left;
      for (const auto& g : pending) {
        Trace t;
        if (prove(g, opt_.depth, t)) {
          total.merge(t);
          add_fact(g, t.lemmas);
          progress = true;
        } else {
          left.push_back(g);
        }
      }
      pending = std::move(left);
    }

    ProofResult r;
    r.proved = pending.empty() && stuck.empty();
    r.used_builtin = total.builtin;
    r.lemmas.assign(total.lemmas.begin(), total.lemmas.end());
    if (!stuck.empty()) r.open_goal = stuck.front();
    else if (!pending.empty()) r.open_goal = print(pending.front(), PrintMode::Sugared);
    return r;
  }

 private:
  const Context& ctx_;
  ProverOptions opt_;
  std::vector<NLemma> lemmas_;

  std::vector<FormulaPtr> facts_;
  std::set<std::string> fact_keys_;
  std::map<std::string, std::set<std::string>> prov_;
  std::set<std::string> eq_lemmas_;  // lemmas behind derived equations

  std::map<std::string, std::string> parent_;
  std::map<std::string, std::vector<TermPtr>> members_;

  std::map<std::string, Trace> proved_;
  std::map<std::string, int> failed_;
  std::set<std::string> active_;
  int skolem_ = 0;

  // --- equality classes -------------------------------------------------

  std::string find(const std::string& k) {
    auto it = parent_.find(k);
    if (it == parent_.end() || it->second == k) return k;
    std::string r = find(it->second);
    parent_[k] = r;
    return r;
  }

  void register_term(const TermPtr& t) {
    std::string k = print(t);
    if (parent_.count(k)) return;
    parent_[k] = k;
    members_[k].push_back(t);
  }

  void unite(const TermPtr& a, const TermPtr& b) {
    register_term(a);
    register_term(b);
    std::string ra = find(print(a)), rb = find(print(b));
    if (ra == rb) return;
    parent_[rb] = ra;
    auto& ma = members_[ra];
    auto& mb = members_[rb];
    ma.insert(ma.end(), mb.begin(), mb.end());
    mb.clear();
  }

  std::vector<TermPtr> class_of(const TermPtr& t) {
    std::string k = print(t);
    if (!parent_.count(k)) return {};
    return members_[find(k)];
  }

  bool same_shape(const TermPtr& a, const TermPtr& b, int budget) {
    if (a->kind != b->kind || a->name != b->name || a->value != b->value || a->args.size() != b->args.size() ||
        a->args.empty())
      return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
      if (!congruent(a->args[i], b->args[i], budget)) return false;
    return true;
  }

  bool congruent(const TermPtr& a, const TermPtr& b, int budget = 2) {
    std::string pa = print(a), pb = print(b);
    if (pa == pb) return true;
    if (parent_.count(pa) && parent_.count(pb) && find(pa) == find(pb)) return true;
    if (same_shape(a, b, budget)) return true;
    if (budget <= 0) return false;
    for (const auto& m : class_of(a))
      if (print(m) != pa && same_shape(m, b, budget - 1)) return true;
    for (const auto& m : class_of(b))
      if (print(m) != pb && same_shape(a, m, budget - 1)) return true;
    return false;
  }

  bool congruent(const Formula& f, const Formula& g) {
    if (f.kind != g.kind) return false;
    switch (f.kind) {
      case FK::BoolTerm: return congruent(f.terms[0], g.terms[0]);
      case FK::Eq:
        return (congruent(f.terms[0], g.terms[0]) && congruent(f.terms[1], g.terms[1])) ||
               (congruent(f.terms[0], g.terms[1]) && congruent(f.terms[1], g.terms[0]));
      case FK::Not: return congruent(f.sub(0), g.sub(0));
      case FK::HasType: return f.type == g.type && congruent(f.terms[0], g.terms[0]);
      default: return equal(f, g);
    }
  }

  void add_fact(const FormulaPtr& f, const std::set<std::string>& prov) {
    for (const auto& c : split_atoms(f)) {
      std::string k = print(c);
      if (!fact_keys_.insert(k).second) continue;
      facts_.push_back(c);
      prov_[k] = prov;
      if (c->kind == FK::Eq) {
        unite(c->terms[0], c->terms[1]);
        eq_lemmas_.insert(prov.begin(), prov.end());
      }
      failed_.clear();
    }
  }

  bool from_facts(const FormulaPtr& g, Trace& t) {
    auto it = prov_.find(print(g));
    if (fact_keys_.count(print(g))) {
      t.lemmas.insert(it->second.begin(), it->second.end());
      return true;
    }
    for (const auto& f : facts_) {
      if (f->kind != g->kind) continue;
      if (congruent(*f, *g)) {
        const auto& p = prov_[print(f)];
        t.lemmas.insert(p.begin(), p.end());
        t.lemmas.insert(eq_lemmas_.begin(), eq_lemmas_.end());
        return true;
      }
    }
    return false;
  }

  // --- matching ---------------------------------------------------------

  static bool ground(const TermPtr& p, const Subst& s, const std::set<std::string>& vars) {
    for (const auto& v : free_vars(*p))
      if (vars.count(v) && !s.count(v)) return false;
    return true;
  }
  static bool ground(const FormulaPtr& p, const Subst& s, const std::set<std::string>& vars) {
    for (const auto& v : free_vars(*p))
      if (vars.count(v) && !s.count(v)) return false;
    return true;
  }

  bool match(const TermPtr& p, const TermPtr& t, Subst& s, const std::set<std::string>& vars, bool via_class = true) {
    if (p->kind == TK::Var && vars.count(p->name)) {
      auto it = s.find(p->name);
      if (it != s.end()) return congruent(it->second, t);
      s[p->name] = t;
      return true;
    }
    if (ground(p, s, vars)) return congruent(substitute(p, s), t);
    Subst save = s;
    if (p->kind == t->kind && p->name == t->name && p->value == t->value && p->args.size() == t->args.size()) {
      bool ok = true;
      for (std::size_t i = 0; ok && i < p->args.size(); ++i) ok = match(p->args[i], t->args[i], s, vars);
      if (ok) return true;
      s = save;
    }
    if (via_class) {
      std::string k = print(t);
      for (const auto& m : class_of(t)) {
        if (print(m) == k) continue;
        if (match(p, m, s, vars, false)) return true;
        s = save;
      }
    }
    return false;
  }

  bool match(const FormulaPtr& p, const FormulaPtr& f, Subst& s, const std::set<std::string>& vars) {
    if (p->kind != f->kind) return false;
    Subst save = s;
    switch (p->kind) {
      case FK::BoolTerm: return match(p->terms[0], f->terms[0], s, vars);
      case FK::Eq:
        if (match(p->terms[0], f->terms[0], s, vars) && match(p->terms[1], f->terms[1], s, vars)) return true;
        s = save;
        if (match(p->terms[0], f->terms[1], s, vars) && match(p->terms[1], f->terms[0], s, vars)) return true;
        s = save;
        return false;
      case FK::Not: return match(p->subs[0], f->subs[0], s, vars);
      case FK::HasType: return p->type == f->type && match(p->terms[0], f->terms[0], s, vars);
      case FK::And:
        if (p->subs.size() != f->subs.size()) return false;
        for (std::size_t i = 0; i < p->subs.size(); ++i)
          if (!match(p->subs[i], f->subs[i], s, vars)) return false;
        return true;
      default: return ground(p, s, vars) && equal(*substitute(p, s), *f);
    }
  }

  // --- goals ------------------------------------------------------------

  bool prove(const FormulaPtr& g, int depth, Trace& tr) {
    if (is_true(*g)) return true;
    std::string k = print(g);
    if (auto it = proved_.find(k); it != proved_.end()) {
      tr.merge(it->second);
      return true;
    }
    if (auto it = failed_.find(k); it != failed_.end() && it->second >= depth) return false;
    if (active_.count(k)) return false;
    active_.insert(k);
    Trace t;
    bool ok = attempt(g, depth, t);
    active_.erase(k);
    if (ok) {
      proved_[k] = t;
      tr.merge(t);
    } else {
      failed_[k] = std::max(failed_[k], depth);
    }
    return ok;
  }

  bool builtin(Trace& t) {
    t.builtin = true;
    return true;
  }

  bool attempt(const FormulaPtr& g, int depth, Trace& t) {
    if (from_facts(g, t)) return true;
    switch (g->kind) {
      case FK::And:
        for (const auto& s : g->subs)
          if (!prove(s, depth, t)) return false;
        return true;
      case FK::Forall: {
        std::string sk = "$" + g->binder + std::to_string(++skolem_);
        return prove(normalize(substitute(g->subs[0], Subst{{g->binder, make_var(sk)}})), depth, t);
      }
      case FK::Eq:
        if (congruent(g->terms[0], g->terms[1])) {
          t.lemmas.insert(eq_lemmas_.begin(), eq_lemmas_.end());
          return builtin(t);
        }
        if (ptr_init(g->terms[0], g->terms[1], t) || ptr_init(g->terms[1], g->terms[0], t)) return true;
        break;
      case FK::HasType:
        try {
          if (assignable(ctx_.types, type_of(ctx_, *g->terms[0]), g->type)) return builtin(t);
        } catch (const std::exception&) {
        }
        return false;
      case FK::Not: {
        const Formula& s = g->sub(0);
        TermPtr a;
        std::vector<TermPtr> parts;
        if (notin_parts(*g, a, parts)) {
          if (notin_builtin(a, parts, depth, t)) return true;
        } else if (s.kind == FK::Eq) {
          Trace bt;
          if (distinct(s.terms[0], s.terms[1], depth, bt)) {
            t.merge(bt);
            return builtin(t);
          }
        } else if (s.kind == FK::And) {
          for (const auto& c : s.subs) {
            Trace ct;
            if (prove(normalize(make_not(c)), depth, ct)) {
              t.merge(ct);
              return true;
            }
          }
        }
        break;
      }
      case FK::BoolTerm: {
        const Term& x = g->term(0);
        if (x.kind == TK::BoolLit) return x.value != 0;
        if (x.kind == TK::Apply && x.name == "in" && x.args.size() == 2 && in_builtin(x.args[0], x.args[1], t))
          return true;
        if (x.kind == TK::Apply && x.name == "<" && x.args.size() == 2 && less_builtin(x.args[0], x.args[1], depth, t))
          return true;
        break;
      }
      default: break;
    }
    return by_lemma(g, depth, t);
  }

  bool notin_builtin(const TermPtr& a, const std::vector<TermPtr>& parts, int depth, Trace& t) {
    if (parts.size() > 1) {
      Trace pt;
      for (const auto& p : parts)
        if (!prove(notin_atom(a, p), depth, pt)) return false;
      t.merge(pt);
      return true;
    }
    const TermPtr& s = parts[0];
    if (s->kind == TK::EmptyColl) return builtin(t);
    if (s->kind == TK::SetLit) {
      Trace pt;
      for (const auto& e : s->args)
        if (!prove(normalize(make_not(make_eq(a, e))), depth, pt)) return false;
      t.merge(pt);
      return builtin(t);
    }
    if (s->kind == TK::Cond) {
      Trace pt;
      if (prove(notin_atom(a, s->args[1]), depth, pt) && prove(notin_atom(a, s->args[2]), depth, pt)) {
        t.merge(pt);
        return true;
      }
    }
    return false;
  }

  bool in_builtin(const TermPtr& a, const TermPtr& s, Trace& t) {
    std::vector<TermPtr> parts;
    union_parts(s, parts);
    for (const auto& p : parts) {
      if (p->kind == TK::SetLit)
        for (const auto& e : p->args)
          if (congruent(a, e)) return builtin(t);
    }
    return false;
  }

  bool less_builtin(const TermPtr& a, const TermPtr& b, int depth, Trace& t) {
    if (a->kind == TK::IntLit && b->kind == TK::IntLit) return a->value < b->value && builtin(t);
    for (const auto& f : facts_) {
      if (f->kind != FK::BoolTerm) continue;
      const Term& x = f->term(0);
      if (x.kind != TK::Apply || x.name != "<=" || x.args.size() != 2) continue;
      if (!congruent(x.args[0], a) || !congruent(x.args[1], b)) continue;
      Trace dt;
      if (prove(normalize(make_not(make_eq(a, b))), depth, dt)) {
        t.merge(dt);
        const auto& p = prov_[print(f)];
        t.lemmas.insert(p.begin(), p.end());
        return builtin(t);
      }
    }
    return false;
  }

  // PtrInit(e) gives e->f = nil for every pointer field f.
  bool ptr_init(const TermPtr& x, const TermPtr& nil, Trace& t) {
    if (nil->kind != TK::Nil || x->kind != TK::Deref || x->args[0]->kind != TK::FieldAddr) return false;
    auto ft = static_type(x);
    if (!ft || !ctx_.types.is_pointer(*ft)) return false;
    const TermPtr& base = x->args[0]->args[0];
    for (const auto& f : facts_) {
      if (f->kind != FK::BoolTerm) continue;
      const Term& a = f->term(0);
      if (a.kind == TK::Apply && a.name == "PtrInit" && a.args.size() == 1 && congruent(a.args[0], base)) {
        const auto& p = prov_[print(f)];
        t.lemmas.insert(p.begin(), p.end());
        return builtin(t);
      }
    }
    return false;
  }

  bool nonnil(const TermPtr& x, int depth, Trace& t) {
    return prove(normalize(make_not(make_eq(x, make_nil()))), depth, t);
  }

  std::optional<Type> static_type(const TermPtr& x) {
    try {
      return ctx_.types.resolve(type_of(ctx_, *x));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  bool var_is_aggregate(const std::string& v) {
    auto it = ctx_.vars.find(v);
    if (it == ctx_.vars.end()) return true;
    return ctx_.types.is_record(it->second) || ctx_.types.is_array(it->second);
  }

  static bool is_field_like(const Term& x) { return x.kind == TK::FieldAddr || x.kind == TK::IndexAddr; }

  // Layout facts of the memory model. Returns false when they do not apply.
  bool distinct(const TermPtr& a, const TermPtr& b, int depth, Trace& t) {
    if (congruent(a, b)) return false;
    if (a->kind == TK::IntLit && b->kind == TK::IntLit) return a->value != b->value;
    if (a->kind == TK::BoolLit && b->kind == TK::BoolLit) return a->value != b->value;
    if (a->kind == TK::Nil || b->kind == TK::Nil) {
      const TermPtr& x = a->kind == TK::Nil ? b : a;
      if (x->kind == TK::AddrOfVar) return true;
      if (is_field_like(*x)) return nonnil(x->args[0], depth, t);
      return false;
    }
    if (a->kind == TK::AddrOfVar && b->kind == TK::AddrOfVar) return a->name != b->name;
    if ((a->kind == TK::AddrOfVar && is_field_like(*b)) || (b->kind == TK::AddrOfVar && is_field_like(*a))) {
      const TermPtr& v = a->kind == TK::AddrOfVar ? a : b;
      const TermPtr& f = a->kind == TK::AddrOfVar ? b : a;
      if (!var_is_aggregate(v->name) && nonnil(f->args[0], depth, t)) return true;
    }
    if (a->kind == TK::FieldAddr && b->kind == TK::FieldAddr && a->name != b->name &&
        congruent(a->args[0], b->args[0]))
      return nonnil(a->args[0], depth, t);
    auto ta = static_type(a), tb = static_type(b);
    if (ta && tb && ta->kind == Type::Kind::Ptr && tb->kind == Type::Kind::Ptr &&
        !(ctx_.types.resolve(ta->elem()) == ctx_.types.resolve(tb->elem()))) {
      Trace nt;
      if (nonnil(a, depth, nt) || nonnil(b, depth, nt)) {
        t.merge(nt);
        return true;
      }
    }
    return false;
  }

  // --- lemmas -----------------------------------------------------------

  bool by_lemma(const FormulaPtr& g, int depth, Trace& t) {
    if (!opt_.use_lemmas || depth <= 0) return false;
    for (const auto& l : lemmas_) {
      for (const auto& c : l.concl) {
        Subst s;
        if (!match(c, g, s, l.vars)) continue;
        std::vector<int> todo(l.hyps.size());
        for (std::size_t i = 0; i < todo.size(); ++i) todo[i] = static_cast<int>(i);
        Trace lt;
        if (solve(l, todo, s, depth - 1, lt)) {
          lt.lemmas.insert(l.name);
          t.merge(lt);
          return true;
        }
      }
    }
    return false;
  }

  bool complete(const NLemma& l, const Subst& s) {
    for (const auto& v : l.vars)
      if (!s.count(v)) return false;
    return true;
  }

  // Proves the remaining hypotheses under `s`, binding open variables by
  // matching against facts. With `all`, collects every solution.
  bool solve(const NLemma& l, std::vector<int> todo, const Subst& s, int depth, Trace& tr,
             std::vector<std::pair<Subst, Trace>>* all = nullptr) {
    if (todo.empty()) {
      if (!complete(l, s)) return false;
      if (all) all->push_back({s, tr});
      return true;
    }
    for (std::size_t i = 0; i < todo.size(); ++i) {
      const FormulaPtr& h = l.hyps[todo[i]];
      if (!ground(h, s, l.vars)) continue;
      Trace ht;
      if (!prove(normalize(substitute(h, s)), depth, ht)) return false;
      Trace next = tr;
      next.merge(ht);
      std::vector<int> rest = todo;
      rest.erase(rest.begin() + static_cast<long>(i));
      if (!solve(l, rest, s, depth, next, all)) return false;
      if (!all) tr = next;
      return true;
    }
    // Enumerate facts for the hypothesis that is most constrained already.
    std::size_t pick = 0;
    int best = -1;
    for (std::size_t i = 0; i < todo.size(); ++i) {
      const FormulaPtr& h = l.hyps[todo[i]];
      int score = 0;
      for (const auto& v : free_vars(*h))
        if (s.count(v)) score += 2;
      if (h->kind != FK::Not) score += 1;
      if (score > best) {
        best = score;
        pick = i;
      }
    }
    const FormulaPtr& h = l.hyps[todo[pick]];
    std::vector<int> rest = todo;
    rest.erase(rest.begin() + static_cast<long>(pick));
    bool any = false;
    std::size_t n = facts_.size();
    for (std::size_t i = 0; i < n; ++i) {
      Subst s2 = s;
      if (!match(h, facts_[i], s2, l.vars)) continue;
      Trace next = tr;
      const auto& p = prov_[print(facts_[i])];
      next.lemmas.insert(p.begin(), p.end());
      if (solve(l, rest, s2, depth, next, all)) {
        any = true;
        if (!all) {
          tr = next;
          return true;
        }
        if (all->size() >= 32) return true;
      }
    }
    return any;
  }

  void forward() {
    for (int round = 0; round < opt_.forward_rounds; ++round) {
      std::size_t before = facts_.size();
      for (const auto& l : lemmas_) {
        if (l.hyps.empty()) continue;
        std::vector<std::pair<Subst, Trace>> sols;
        std::vector<int> todo(l.hyps.size());
        for (std::size_t i = 0; i < todo.size(); ++i) todo[i] = static_cast<int>(i);
        Trace tr;
        solve(l, todo, Subst{}, 0, tr, &sols);
        for (const auto& [s, st] : sols) {
          std::set<std::string> prov = st.lemmas;
          prov.insert(l.name);
          for (const auto& c : l.concl) add_fact(normalize(substitute(c, s)), prov);
        }
      }
      if (facts_.size() == before || facts_.size() > 400) break;
    }
  }

  // --- definedness ------------------------------------------------------

  bool obligations(const TermPtr& x, std::vector<FormulaPtr>& out, std::string& why) {
    switch (x->kind) {
      case TK::Deref:
        if (x->args[0]->kind != TK::AddrOfVar) out.push_back(normalize(make_not(make_eq(x->args[0], make_nil()))));
        break;
      case TK::FieldAddr:
        out.push_back(normalize(make_not(make_eq(x->args[0], make_nil()))));
        break;
      case TK::IndexAddr:
        why = "definedness of " + print(x, PrintMode::Sugared) + " needs bounds reasoning";
        return false;
      case TK::Apply:
        if (is_partial_builtin(x->name)) {
          why = "definedness of " + print(x, PrintMode::Sugared) + " is not decided by the builtins";
          return false;
        }
        break;
      default: break;
    }
    for (const auto& a : x->args)
      if (!obligations(a, out, why)) return false;
    return true;
  }

  bool definedness(const FormulaPtr& f, std::vector<FormulaPtr>& out, std::string& why) {
    for (const auto& t : f->terms)
      if (!obligations(t, out, why)) return false;
    for (const auto& s : f->subs)
      if (!definedness(s, out, why)) return false;
    return true;
  }
};

}  // namespace

ProofResult prove(const Context& ctx, const std::vector<FormulaPtr>& hyps, const FormulaPtr& show,
                  const ProverOptions& opt) {
  Session s(ctx, opt);
  return s.run(hyps, show);
}

}  // namespace slv
