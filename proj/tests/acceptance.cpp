// Acceptance checks, one line per criterion. Reference values come from
// native oracles written here, not from the evaluator under test.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "slv/corpus.hpp"
#include "slv/eval.hpp"
#include "slv/gen.hpp"
#include "slv/interp.hpp"
#include "slv/normalize.hpp"
#include "slv/outline.hpp"
#include "slv/parser.hpp"
#include "slv/printer.hpp"
#include "slv/scope.hpp"
#include "slv/vccheck.hpp"

using namespace slv;

namespace {

constexpr std::uint64_t kSeed = 20261018;

struct Outcome {
  bool ok = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------- helpers

std::set<Address> addresses_of(const Value& set) {
  std::set<Address> out;
  for (const auto& e : set.elems)
    if (e.ptr) out.insert(*e.ptr);
  return out;
}

bool same_result(const TermResult& a, const TermResult& b) {
  if (a.status != b.status) return false;
  return !a.defined() || value_equal(a.value, b.value);
}

std::vector<Address> units_outside(const State& st, const std::set<Address>& scope) {
  std::vector<Address> out;
  for (const auto& [a, v] : st.contents())
    if (!scope.count(a)) out.push_back(a);
  return out;
}

// One random unit write outside `scope`; returns false if every unit is in scope.
bool mutate_outside(State& st, const std::set<Address>& scope, Rng& rng) {
  auto pool = units_outside(st, scope);
  if (pool.empty()) return false;
  Address a = pool[uniform(rng, 0, static_cast<std::int64_t>(pool.size()) - 1)];
  Type t = *st.type_at(a);
  Value old = st.read(a);
  Value v = old;
  for (int i = 0; i < 8 && v == old; ++i) v = random_value(st, t, rng);
  st.write(a, v);
  return true;
}

// Native in-order view of a tree: key -> data; nullopt on sharing, cycles
// or order violations.
std::optional<std::map<std::int64_t, std::int64_t>> native_tree(const State& st, const Value& root) {
  std::map<std::int64_t, std::int64_t> out;
  std::set<int> seen;
  std::function<bool(const Value&, std::int64_t, std::int64_t)> walk = [&](const Value& n, std::int64_t lo,
                                                                           std::int64_t hi) {
    if (!n.ptr) return true;
    if (!seen.insert(n.ptr->block).second) return false;
    std::int64_t k = st.read(n.ptr->field("K")).i;
    if (k <= lo || k >= hi) return false;
    out[k] = st.read(n.ptr->field("D")).i;
    return walk(st.read(n.ptr->field("l")), lo, k) && walk(st.read(n.ptr->field("r")), k, hi);
  };
  if (!walk(root, INT64_MIN, INT64_MAX)) return std::nullopt;
  return out;
}

std::vector<Value> pool_of(const State& st, const Type& target, bool with_nil) {
  return pointer_pool(st, target, with_nil);
}

Value pick(const std::vector<Value>& xs, Rng& rng) { return xs[uniform(rng, 0, static_cast<std::int64_t>(xs.size()) - 1)]; }

// A context with the derived scope functions installed, plus the table
// that produced them.
struct ScopedContext {
  Context base;
  ScopeTable table;
  Context eval;
  explicit ScopedContext(const std::string& spec)
      : base(load_context(corpus_path(spec), "")), table(base), eval(base) {
    table.install(eval);
  }
};

// ------------------------------------------------------------- criteria

Outcome msf_equivalence() {
  struct Pair {
    const char* derived;
    const char* hand;
    int arity;
  };
  struct Group {
    const char* file;
    const char* root;
    Type arg;
    std::vector<Pair> pairs;
  };
  const Type T = Type::named("T");
  std::vector<Group> groups = {
      {"bst_msf.sls", "root", Type::ptr(T),
       {{"NodeSet_m", "NS_m", 1}, {"Map_m", "MP_m", 1}, {"MapP_m", "MPP_m", 2}, {"Dom_m", "DM_m", 1},
        {"isHBST_m", "HBST_m", 1}}},
      {"bst_insert_msf.sls", "rt", Type::ptr(Type::ptr(T)),
       {{"DomK_m", "DMK_m", 2}, {"isHBSTK_m", "HBSTK_m", 2}, {"MapPP_m", "MPPP_m", 2}, {"PNodeSet_m", "PNS_m", 2}}},
  };
  int states = 0, comparisons = 0, mismatches = 0, nonempty = 0;
  std::string first;
  for (const auto& g : groups) {
    Context ctx = load_context_with_msfs(corpus_path(g.file), "");
    std::vector<std::pair<TermPtr, TermPtr>> terms;
    for (const auto& p : g.pairs) {
      std::string args = p.arity == 1 ? "(x)" : "(x, y)";
      terms.push_back({ctx.prepare(parse_term(std::string(p.derived) + args)),
                       ctx.prepare(parse_term(std::string(p.hand) + args))});
    }
    Rng rng(kSeed + states);
    const bool slots = g.arg.elem().kind == Type::Kind::Ptr;
    for (int i = 0; i < 1000; ++i, ++states) {
      State st = gen_state(ctx, Shape{Shape::Kind::Bst, static_cast<int>(uniform(rng, 0, 8)), g.root}, rng);
      randomize_vars(st, ctx, {"k"}, rng);
      auto pool = pool_of(st, g.arg.elem(), !slots);
      Value root_slot = Value::pointer(*st.var_addr(g.root));
      Value x = slots ? (uniform(rng, 0, 1) ? root_slot : pick(pool, rng)) : pick(pool, rng);
      Value y = pick(pool, rng);
      Env env{{"x", x}, {"y", y}};
      Evaluator ev(ctx, st);
      for (std::size_t j = 0; j < terms.size(); ++j) {
        TermResult a = ev.eval(terms[j].first, env);
        TermResult b = ev.eval(terms[j].second, env);
        ++comparisons;
        if (a.defined() && !a.value.elems.empty()) ++nonempty;
        if (!a.defined() || !same_result(a, b)) {
          if (++mismatches == 1) first = g.pairs[j].derived + std::string(": ") + to_string(a) + " vs " + to_string(b);
        }
      }
    }
  }
  std::ostringstream os;
  os << states << " states, " << comparisons << " comparisons (" << nonempty << " non-empty), " << mismatches
     << " mismatches";
  if (!first.empty()) os << " [" << first << "]";
  return {mismatches == 0 && nonempty > comparisons / 2, os.str()};
}

struct DrfCase {
  const char* spec;
  const char* root;
  std::vector<std::string> randomized;
  std::vector<const char*> apps;
};

const std::vector<DrfCase>& drf_cases() {
  static const std::vector<DrfCase> cases = {
      {"bst_update.sls", "root", {"p", "k", "d"},
       {"NodeSet(root)", "Map(root)", "MapP(root, p)", "Dom(root)", "isHBST(root)", "Dom(p)", "MapP(p, root)",
        "isHBST(p)"}},
      {"bst_insert.sls", "rt", {"p", "tmp", "k", "d"},
       {"DomK(&rt, p)", "isHBSTK(&rt, p)", "MapPP(&rt, p)", "PNodeSet(&rt, p)", "isHBST(*p)", "DomK(p, &rt)",
        "Map(rt)"}},
  };
  return cases;
}

Outcome scope_trace() {
  int pairs = 0, defined = 0, trace_bad = 0, mutations = 0, mutation_bad = 0;
  std::string first;
  for (const auto& c : drf_cases()) {
    ScopedContext sc(c.spec);
    std::vector<std::pair<TermPtr, TermPtr>> apps;
    for (const char* a : c.apps) {
      TermPtr e = sc.eval.prepare(parse_term(a));
      apps.push_back({e, sc.table.scope(e)});
    }
    Rng rng(kSeed ^ 0x51);
    for (int i = 0; i < 500; ++i, ++pairs) {
      State st = gen_state(sc.eval, Shape{Shape::Kind::Bst, static_cast<int>(uniform(rng, 0, 8)), c.root}, rng);
      randomize_vars(st, sc.eval, c.randomized, rng);
      const auto& [e, m] = apps[uniform(rng, 0, static_cast<std::int64_t>(apps.size()) - 1)];
      Evaluator ev(sc.eval, st);
      TermResult val = ev.eval(e);
      if (!val.defined()) continue;
      ++defined;
      std::set<Address> trace = ev.trace();
      TermResult scope = Evaluator(sc.eval, st).eval(m);
      if (!scope.defined() || addresses_of(scope.value) != trace) {
        if (++trace_bad == 1) first = "trace of " + print(e) + " differs from its scope form";
        continue;
      }
      std::set<Address> sc_set = trace;
      for (int j = 0; j < 10; ++j) {
        State mut = st;
        if (!mutate_outside(mut, sc_set, rng)) break;
        ++mutations;
        Evaluator mev(sc.eval, mut);
        if (!same_result(mev.eval(e), val) || !same_result(mev.eval(m), scope)) {
          if (++mutation_bad == 1) first = print(e) + " changed under an out-of-scope write";
        }
      }
    }
  }
  std::ostringstream os;
  os << pairs << " pairs (" << defined << " defined), " << mutations << " mutations, " << trace_bad
     << " trace violations, " << mutation_bad << " mutation violations";
  if (!first.empty()) os << " [" << first << "]";
  return {trace_bad == 0 && mutation_bad == 0 && defined > pairs / 2 && mutations > 0, os.str()};
}

Outcome formula_stability() {
  struct Case {
    const char* spec;
    const char* root;
    const char* mconst;
    std::vector<std::string> randomized;
  };
  const Case cases[] = {{"bst_update.sls", "root", "M", {"p", "d"}}, {"bst_insert.sls", "rt", "M0", {"p", "tmp", "d"}}};
  int trials = 0, held = 0, mutations = 0, bad = 0;
  for (const auto& c : cases) {
    ScopedContext sc(c.spec);
    FormulaPtr pre = sc.eval.prepare(parse_formula("PRE"));
    TermPtr scope = make_empty_coll();
    for (const auto& tt : top_level_terms(pre)) scope = set_union(scope, sc.table.scope(tt.term));
    TermPtr map = sc.eval.prepare(parse_term(std::string("Map(") + c.root + ")"));
    Rng rng(kSeed ^ 0x33);
    for (int i = 0; i < 500; ++i, ++trials) {
      State st = gen_state(sc.eval, Shape{Shape::Kind::Bst, static_cast<int>(uniform(rng, 0, 8)), c.root}, rng);
      randomize_vars(st, sc.eval, c.randomized, rng);
      auto keys = native_tree(st, st.read(*st.var_addr(c.root)));
      std::int64_t k = uniform(rng, -2, 20);
      if (keys && !keys->empty() && uniform(rng, 0, 1)) k = std::next(keys->begin(), uniform(rng, 0, keys->size() - 1))->first;
      st.write(*st.var_addr("k"), Value::integer(k));
      Env env{{c.mconst, Evaluator(sc.eval, st).eval(map).value}};
      if (uniform(rng, 0, 3) == 0) env[c.mconst] = Value::map_of({{k, 1}});
      Truth t = Evaluator(sc.eval, st).eval(pre, env);
      held += t == Truth::T;
      std::set<Address> s = addresses_of(Evaluator(sc.eval, st).eval(scope).value);
      for (int j = 0; j < 10; ++j) {
        State mut = st;
        if (!mutate_outside(mut, s, rng)) break;
        ++mutations;
        bad += Evaluator(sc.eval, mut).eval(pre, env) != t;
      }
    }
  }
  std::ostringstream os;
  os << trials << " trials (PRE true in " << held << "), " << mutations << " mutations, " << bad << " violations";
  return {bad == 0 && held > 0 && held < trials, os.str()};
}

bool distinctness_only(const FormulaPtr& show) {
  auto literal = [](const Term& s) { return s.kind == Term::Kind::SetLit || s.kind == Term::Kind::EmptyColl; };
  for (const auto& c : normal_conjuncts(show)) {
    if (c->kind != Formula::Kind::Not) return false;
    const Formula& in = *c->subs[0];
    if (in.kind == Formula::Kind::Eq) continue;
    if (in.kind != Formula::Kind::BoolTerm) return false;
    const Term& t = *in.terms[0];
    if (t.kind != Term::Kind::Apply || t.name != "in" || !literal(t.arg(1))) return false;
  }
  return true;
}

std::set<std::string> lemmas_in(const std::string& method) {
  std::set<std::string> out;
  auto at = method.find("lemma(");
  if (at == std::string::npos) return out;
  std::string body = method.substr(at + 6, method.find(')', at) - at - 6);
  std::stringstream ss(body);
  for (std::string s; std::getline(ss, s, ',');) out.insert(s);
  return out;
}

Outcome replay_outline(const char* slo) {
  CheckOptions opt;
  opt.seed = kSeed;
  LoadedOutline lo = load_outline(corpus_path(slo));
  OutlineReport rep = check_outline(lo, opt, true);
  int distinct = 0, distinct_builtin = 0, conseq = 0, conseq_cited = 0, lemma_tested = 0;
  std::string first;
  for (std::size_t i = 0; i < rep.vcs.size(); ++i) {
    const VC& vc = rep.vcs[i];
    const Verdict& v = rep.verdicts[i];
    if ((vc.rule == "ASSIGN-ST" || vc.rule == "ALLOC-ST") && distinctness_only(vc.show)) {
      ++distinct;
      if (v.status == Verdict::Status::Proved && v.method == "builtin") ++distinct_builtin;
      else if (first.empty()) first = "vc " + std::to_string(vc.id) + " " + v.summary();
    }
    if (vc.rule == "CONSEQ") {
      ++conseq;
      std::set<std::string> cited(vc.hints.begin(), vc.hints.end());
      bool ok = v.status == Verdict::Status::Proved;
      for (const auto& l : lemmas_in(v.method)) ok = ok && cited.count(l);
      if (ok) ++conseq_cited;
      else if (first.empty()) first = "vc " + std::to_string(vc.id) + " " + v.summary();
    }
  }
  for (const auto& l : rep.lemmas) lemma_tested += l.status == Verdict::Status::Unknown && l.trials == opt.trials;
  std::ostringstream os;
  os << rep.vcs.size() << " VCs, " << rep.proved << " proved, " << rep.refuted << " refuted, "
     << rep.shape_errors.size() << " shape errors; distinctness " << distinct_builtin << "/" << distinct
     << " builtin; CONSEQ " << conseq_cited << "/" << conseq << " within cited lemmas; lemmas " << lemma_tested << "/"
     << rep.lemmas.size() << " with 0 counterexamples at " << opt.trials << " trials";
  if (!first.empty()) os << " [" << first << "]";
  bool ok = rep.ok() && distinct > 0 && distinct == distinct_builtin && conseq == conseq_cited &&
            lemma_tested == static_cast<int>(rep.lemmas.size());
  return {ok, os.str()};
}

Outcome corrupted_lemmas() {
  int total = 0, refuted = 0, replayed = 0;
  std::string first;
  for (const char* f : {"corrupted_update.sls", "corrupted_insert.sls"}) {
    CheckOptions opt;
    opt.seed = kSeed;
    opt.trials = 1000;
    Context ctx = load_context_with_msfs(corpus_path(f), "");
    for (const auto& v : check_spec_lemmas(corpus_path(f), opt)) {
      ++total;
      if (v.status != Verdict::Status::Refuted || !v.cex || v.trials > 1000) {
        if (first.empty()) first = v.id + " " + v.summary();
        continue;
      }
      ++refuted;
      // Replay from the printed dump, not the in-memory state.
      Entailment e = entailment_of(*ctx.lemma(v.id));
      State st = parse_state(v.cex->state.dump(), ctx);
      if (replay(ctx, e, st, v.cex->env).refutes()) ++replayed;
      else if (first.empty()) first = v.id + " does not replay";
    }
  }
  std::ostringstream os;
  os << refuted << "/" << total << " refuted, " << replayed << " replayed";
  if (!first.empty()) os << " [" << first << "]";
  return {total == 6 && refuted == 6 && replayed == 6, os.str()};
}

Outcome hoare_conformance() {
  struct Case {
    const char* stem;
    const char* root;
    bool present;
  };
  const Case cases[] = {{"bst_update", "root", true}, {"bst_insert", "rt", false}};
  int runs = 0, failures = 0;
  std::string first;
  for (const auto& c : cases) {
    Context ctx = load_context_with_msfs(corpus_path(std::string(c.stem) + ".sls"),
                                         corpus_path(std::string(c.stem) + ".slp"));
    Rng rng(kSeed + (c.present ? 7 : 8));
    for (int i = 0; i < 500; ++i, ++runs) {
      int n = static_cast<int>(uniform(rng, c.present ? 1 : 0, 8));
      State st = gen_state(ctx, Shape{Shape::Kind::Bst, n, c.root}, rng);
      auto before = *native_tree(st, st.read(*st.var_addr(c.root)));
      std::int64_t k;
      if (c.present) {
        k = std::next(before.begin(), uniform(rng, 0, before.size() - 1))->first;
      } else {
        do k = uniform(rng, -4, 3 * n + 6);
        while (before.count(k));
      }
      std::int64_t d = uniform(rng, 100, 199);
      st.write(*st.var_addr("k"), Value::integer(k));
      st.write(*st.var_addr("d"), Value::integer(d));
      RunResult r = run(ctx, *ctx.program, st);
      auto after = r.ok ? native_tree(r.state, r.state.read(*r.state.var_addr(c.root))) : std::nullopt;
      auto want = before;
      want[k] = d;
      if (!after || *after != want || r.allocs != (c.present ? 0 : 1)) {
        if (++failures == 1) first = std::string(c.stem) + " run " + std::to_string(i) + (r.ok ? "" : ": " + r.error);
      }
    }
  }
  // The evaluator-based postcondition must agree with the native verdicts.
  RunsReport u = bst_update_runs(500, kSeed), ins = bst_insert_runs(500, kSeed);
  std::ostringstream os;
  os << runs << " native runs, " << failures << " failures; postcondition formula: " << u.runs + ins.runs << " runs, "
     << u.failures + ins.failures << " failures";
  if (!first.empty()) os << " [" << first << "]";
  return {failures == 0 && u.ok() && ins.ok() && u.runs == 500 && ins.runs == 500, os.str()};
}

Outcome schorr_waite() {
  Context ctx = load_context_with_msfs(corpus_path("schorr.sls"), corpus_path("schorr.slp"));
  const Statement* loop = nullptr;
  for (const auto& s : ctx.program->body)
    if (s->kind == Statement::Kind::While) loop = s.get();
  RunConfig cfg;
  cfg.snapshot_at_start = true;
  cfg.step_limit = 100000;
  cfg.checks.push_back({loop, ctx.prepare(parse_formula("AcyclicSeq(StackPath(p))")), "stack"});
  Rng rng(kSeed ^ 0x5c);
  int runs = 0, failures = 0, max_nodes = 0;
  std::int64_t heads = 0;
  std::string first;
  for (int i = 0; i < 200; ++i, ++runs) {
    int n = static_cast<int>(uniform(rng, 1, 12));
    max_nodes = std::max(max_nodes, n);
    State st = gen_state(ctx, Shape{Shape::Kind::TwoSuccessor, n, "root"}, rng);
    Value vroot = st.read(*st.var_addr("vroot"));
    std::set<int> reach;
    std::vector<Value> todo{st.read(*st.var_addr("root"))};
    while (!todo.empty()) {
      Value v = todo.back();
      todo.pop_back();
      if (!v.ptr || v == vroot || !reach.insert(v.ptr->block).second) continue;
      todo.push_back(st.read(v.ptr->field("l")));
      todo.push_back(st.read(v.ptr->field("r")));
    }
    RunResult r = run(ctx, *ctx.program, st, cfg);
    heads += r.checks_run;
    bool ok = r.ok;
    for (const auto& [id, info] : st.blocks()) {
      if (!ok || !info.heap || Value::pointer(Address{id, {}}) == vroot) continue;
      Address a{id, {}};
      ok = r.state.read(a.field("m")).i == (reach.count(id) ? 3 : 0) &&
           r.state.read(a.field("l")) == st.read(a.field("l")) && r.state.read(a.field("r")) == st.read(a.field("r"));
    }
    if (!ok && ++failures == 1) first = "graph " + std::to_string(i) + (r.ok ? "" : ": " + r.error);
  }
  std::ostringstream os;
  os << runs << " graphs (up to " << max_nodes << " nodes), " << heads << " loop-head checks, " << failures
     << " failures";
  if (!first.empty()) os << " [" << first << "]";
  return {failures == 0 && heads > runs, os.str()};
}

Outcome semantics_tables() {
  Context ctx = load_context_with_msfs(corpus_path("bst.sls"), "");
  State st = init_state(ctx);
  Evaluator ev(ctx, st);
  int cells = 0, bad = 0;
  std::string first;
  auto expect = [&](const std::string& text, const std::string& want, const std::string& got) {
    ++cells;
    if (want != got && ++bad == 1) first = text + " gave " + got + ", expected " + want;
  };

  // Formula level: T, F, N.
  const char* atoms3[] = {"true", "false", "1 / 0 = 0"};
  const char* and3[3][3] = {{"T", "F", "N"}, {"F", "F", "F"}, {"N", "F", "N"}};
  const char* not3[3] = {"F", "T", "N"};
  const char* delta3[3] = {"T", "T", "F"};
  for (int a = 0; a < 3; ++a) {
    std::string na = std::string("!(") + atoms3[a] + ")";
    expect(na, not3[a], to_string(ev.eval(ctx.prepare(parse_formula(na)))));
    std::string da = std::string("Delta(") + atoms3[a] + ")";
    expect(da, delta3[a], to_string(ev.eval(ctx.prepare(parse_formula(da)))));
    for (int b = 0; b < 3; ++b) {
      std::string t = std::string("(") + atoms3[a] + ") && (" + atoms3[b] + ")";
      expect(t, and3[a][b], to_string(ev.eval(ctx.prepare(parse_formula(t)))));
    }
  }

  // Term level: true, false, bottom; "B" stands for bottom.
  const char* atomsb[] = {"true", "false", "(1 / 0 < 0)"};
  const char* cand[3][3] = {{"true", "false", "B"}, {"false", "false", "false"}, {"B", "B", "B"}};
  const char* cor[3][3] = {{"true", "true", "true"}, {"true", "false", "B"}, {"B", "B", "B"}};
  const char* notb[3] = {"false", "true", "B"};
  auto term = [&](const std::string& text) {
    TermResult r = ev.eval(ctx.prepare(parse_term(text)));
    return r.defined() ? to_string(r.value) : std::string("B");
  };
  for (int a = 0; a < 3; ++a) {
    std::string n = std::string("not(") + atomsb[a] + ")";
    expect(n, notb[a], term(n));
    for (int b = 0; b < 3; ++b) {
      std::string x = std::string(atomsb[a]) + " cand " + atomsb[b];
      expect(x, cand[a][b], term(x));
      std::string y = std::string(atomsb[a]) + " cor " + atomsb[b];
      expect(y, cor[a][b], term(y));
    }
  }
  std::ostringstream os;
  os << cells << " table cells, " << bad << " mismatches";
  if (!first.empty()) os << " [" << first << "]";
  return {bad == 0 && cells == 9 + 3 + 3 + 9 + 9 + 3, os.str()};
}

Outcome alloc_postconditions() {
  Context ctx = load_context_with_msfs(corpus_path("bst_insert.sls"), corpus_path("bst_insert.slp"));
  // The program up to and including the allocation, for the native check.
  StmtPtr prefix = ctx.prepare(parse_statements(
      "p := &rt; while (*p != nil) { if (k < (*p)->K) p := &(*p)->l; else p := &(*p)->r; } tmp := alloc(T);"));
  Rng rng(kSeed ^ 0xa1);
  int runs = 0, allocs = 0, failures = 0;
  std::int64_t checks = 0;
  std::string first;
  for (int i = 0; i < 500; ++i, ++runs) {
    State st = gen_state(ctx, Shape{Shape::Kind::Bst, static_cast<int>(uniform(rng, 0, 8)), "rt"}, rng);
    randomize_vars(st, ctx, {"k", "d", "tmp"}, rng);
    RunResult full = run(ctx, *ctx.program, st);
    allocs += static_cast<int>(full.allocs);
    checks += full.checks_run;
    bool inconclusive = false;
    for (const auto& ev : full.log) inconclusive = inconclusive || ev.kind == RunEvent::Kind::Inconclusive;

    RunConfig quiet;
    quiet.check_alloc = false;
    RunResult pre = run(ctx, *prefix, st, quiet);
    bool native = pre.ok;
    if (native) {
      Value tmp = pre.state.read(*pre.state.var_addr("tmp"));
      native = tmp.ptr && pre.state.blocks().at(tmp.ptr->block).heap && !st.blocks().count(tmp.ptr->block) &&
               pre.state.read(tmp.ptr->field("l")).is_nil() && pre.state.read(tmp.ptr->field("r")).is_nil();
      for (const auto& [a, v] : pre.state.contents()) {
        if (!native) break;
        bool points_in = v.ptr && v.ptr->block == tmp.ptr->block;
        native = !points_in || a == *pre.state.var_addr("tmp");
      }
    }
    if ((!full.ok || inconclusive || !native) && ++failures == 1)
      first = "run " + std::to_string(i) + (full.ok ? "" : ": " + full.error);
  }
  std::ostringstream os;
  os << runs << " runs, " << allocs << " allocations, " << checks << " postcondition checks, " << failures
     << " failures";
  if (!first.empty()) os << " [" << first << "]";
  return {failures == 0 && allocs == runs && checks >= 4 * allocs, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double bound_s;  // pinned wall-clock limit
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> criteria = {
      {1, "msf-equivalence", 60, msf_equivalence},
      {2, "scope-trace", 120, scope_trace},
      {3, "formula-stability", 120, formula_stability},
      {4, "update-replay", 30, [] { return replay_outline("bst_update.slo"); }},
      {5, "insert-replay", 120, [] { return replay_outline("bst_insert.slo"); }},
      {6, "corrupted-lemmas", 120, corrupted_lemmas},
      {7, "hoare-conformance", 120, hoare_conformance},
      {8, "schorr-waite", 180, schorr_waite},
      {9, "semantics-tables", 10, semantics_tables},
      {10, "alloc-postconditions", 60, alloc_postconditions},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    bool ok = o.ok && s < c.bound_s;
    failed += !ok;
    std::printf("criterion %2d %-20s %s  %.2fs (limit %.0fs)  %s\n", c.id, c.name, ok ? "PASS" : "FAIL", s, c.bound_s,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
