#include "slv/corpus.hpp"

#include <chrono>
#include <set>
#include <sstream>

#include "slv/gen.hpp"
#include "slv/interp.hpp"
#include "slv/parser.hpp"
#include "slv/scope.hpp"

namespace slv {

std::string corpus_dir() { return SLV_CORPUS_DIR; }
std::string corpus_path(const std::string& file) { return corpus_dir() + "/" + file; }

OutlineReport check_outline(const LoadedOutline& lo, const CheckOptions& opt, bool with_lemmas) {
  OutlineReport rep;
  VcSet vs = generate_vcs(lo.ctx, lo.outline);
  rep.shape_errors = vs.errors;
  rep.vcs = vs.vcs;
  for (const auto& vc : vs.vcs) {
    Verdict v = check_vc(lo.ctx, vc, opt);
    switch (v.status) {
      case Verdict::Status::Proved: ++rep.proved; break;
      case Verdict::Status::Refuted: ++rep.refuted; break;
      case Verdict::Status::Unknown: ++rep.unknown; break;
    }
    rep.verdicts.push_back(std::move(v));
  }
  if (with_lemmas) {
    for (const auto& l : lo.ctx.lemmas) {
      Verdict v = check_lemma(lo.ctx, l, opt);
      if (v.status == Verdict::Status::Refuted) ++rep.lemma_cex;
      rep.lemmas.push_back(std::move(v));
    }
  }
  return rep;
}

namespace {

Rng run_rng(std::uint64_t seed, int salt) { return Rng(seed * 0x2545F4914F6CDD1DULL + static_cast<std::uint64_t>(salt)); }

std::vector<std::int64_t> keys_of(const State& st, const Value& root) {
  std::vector<std::int64_t> out;
  std::vector<Value> todo{root};
  while (!todo.empty()) {
    Value n = todo.back();
    todo.pop_back();
    if (!n.ptr) continue;
    out.push_back(st.read(n.ptr->field("K")).i);
    todo.push_back(st.read(n.ptr->field("l")));
    todo.push_back(st.read(n.ptr->field("r")));
  }
  return out;
}

void note_failure(RunsReport& rep, int i, const std::string& what) {
  ++rep.failures;
  if (rep.first_failure.empty()) rep.first_failure = "run " + std::to_string(i) + ": " + what;
}

// Shared driver for the two tree examples.
RunsReport tree_runs(const std::string& stem, const std::string& root, const std::string& mconst, bool key_present,
                     int runs, std::uint64_t seed, const EvalOptions& eval) {
  RunsReport rep;
  Context ctx = load_context_with_msfs(corpus_path(stem + ".sls"), corpus_path(stem + ".slp"));
  FormulaPtr post = ctx.prepare(parse_formula("isHBST(" + root + ") && Map(" + root + ") = " + mconst +
                                              " dagger {k |-> d}"));
  TermPtr map = ctx.prepare(parse_term("Map(" + root + ")"));
  Rng rng = run_rng(seed, key_present ? 1 : 2);
  RunConfig cfg;
  cfg.eval = eval;
  for (int i = 0; i < runs; ++i) {
    int n = static_cast<int>(uniform(rng, key_present ? 1 : 0, 8));
    State st = gen_state(ctx, Shape{Shape::Kind::Bst, n, root}, rng);
    auto keys = keys_of(st, st.read(*st.var_addr(root)));
    std::int64_t k;
    if (key_present) {
      k = keys[uniform(rng, 0, static_cast<std::int64_t>(keys.size()) - 1)];
    } else {
      std::set<std::int64_t> used(keys.begin(), keys.end());
      do k = uniform(rng, -4, 3 * n + 6);
      while (used.count(k));
    }
    st.write(*st.var_addr("k"), Value::integer(k));
    st.write(*st.var_addr("d"), Value::integer(uniform(rng, 100, 199)));
    TermResult m = Evaluator(ctx, st, eval).eval(map);
    if (!m.defined()) {
      note_failure(rep, i, "Map undefined on the initial state");
      continue;
    }
    ++rep.runs;
    RunResult r = run(ctx, *ctx.program, st, cfg);
    rep.allocs += r.allocs;
    if (!r.ok) {
      note_failure(rep, i, r.error);
      continue;
    }
    Truth t = Evaluator(ctx, r.state, eval).eval(post, Env{{mconst, m.value}});
    if (t != Truth::T) note_failure(rep, i, std::string("postcondition is ") + to_string(t));
  }
  return rep;
}

const Statement* first_loop(const Statement& s) {
  if (s.kind == Statement::Kind::While) return &s;
  for (const auto& b : s.body)
    if (const Statement* w = first_loop(*b)) return w;
  return nullptr;
}

}  // namespace

RunsReport bst_update_runs(int runs, std::uint64_t seed, const EvalOptions& eval) {
  return tree_runs("bst_update", "root", "M", true, runs, seed, eval);
}

RunsReport bst_insert_runs(int runs, std::uint64_t seed, const EvalOptions& eval) {
  return tree_runs("bst_insert", "rt", "M0", false, runs, seed, eval);
}

RunsReport schorr_runs(int runs, std::uint64_t seed, const EvalOptions& eval) {
  RunsReport rep;
  Context ctx = load_context_with_msfs(corpus_path("schorr.sls"), corpus_path("schorr.slp"));
  RunConfig cfg;
  cfg.eval = eval;
  cfg.snapshot_at_start = true;
  cfg.step_limit = 100000;
  const Statement* loop = first_loop(*ctx.program);
  cfg.checks.push_back({loop, ctx.prepare(parse_formula("AcyclicSeq(StackPath(p))")), "acyclic stack path"});
  Rng rng = run_rng(seed, 3);
  for (int i = 0; i < runs; ++i) {
    State st = gen_state(ctx, Shape{Shape::Kind::TwoSuccessor, static_cast<int>(uniform(rng, 1, 12)), "root"}, rng);
    Value root = st.read(*st.var_addr("root"));
    Value vroot = st.read(*st.var_addr("vroot"));
    std::set<Address> reach;
    std::vector<Value> todo{root};
    while (!todo.empty()) {
      Value n = todo.back();
      todo.pop_back();
      if (!n.ptr || n == vroot || !reach.insert(*n.ptr).second) continue;
      todo.push_back(st.read(n.ptr->field("l")));
      todo.push_back(st.read(n.ptr->field("r")));
    }
    ++rep.runs;
    RunResult r = run(ctx, *ctx.program, st, cfg);
    rep.allocs += r.allocs;
    if (!r.ok) {
      note_failure(rep, i, r.error);
      continue;
    }
    for (const auto& [id, info] : st.blocks()) {
      if (!info.heap) continue;
      Address a{id, {}};
      if (Value::pointer(a) == vroot) continue;
      std::int64_t want = reach.count(a) ? 3 : 0;
      if (r.state.read(a.field("m")).i != want) {
        note_failure(rep, i, "mark of " + to_string(a) + " is " + std::to_string(r.state.read(a.field("m")).i));
        break;
      }
      if (r.state.read(a.field("l")) != st.read(a.field("l")) || r.state.read(a.field("r")) != st.read(a.field("r"))) {
        note_failure(rep, i, "links of " + to_string(a) + " not restored");
        break;
      }
    }
  }
  return rep;
}

std::vector<Verdict> check_spec_lemmas(const std::string& file, const CheckOptions& opt) {
  auto units = load_spec_files(file);
  std::set<std::string> own;
  for (const auto& l : units.back().lemmas) own.insert(l.name);
  Context ctx = load_context_with_msfs(file, "");
  std::vector<Verdict> out;
  for (const auto& l : ctx.lemmas)
    if (own.count(l.name)) out.push_back(check_lemma(ctx, l, opt));
  return out;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CorpusRow tree_row(const std::string& name, const std::string& slo, const CorpusOptions& opt, bool update) {
  auto t0 = std::chrono::steady_clock::now();
  CorpusRow row;
  row.name = name;
  try {
    LoadedOutline lo = load_outline(corpus_path(slo));
    OutlineReport rep = check_outline(lo, opt.check, true);
    RunsReport runs = update ? bst_update_runs(opt.runs, opt.check.seed, opt.check.eval)
                             : bst_insert_runs(opt.runs, opt.check.seed, opt.check.eval);
    std::ostringstream os;
    os << rep.vcs.size() << " VCs (" << rep.proved << " proved, " << rep.unknown << " unknown, " << rep.refuted
       << " refuted), " << rep.shape_errors.size() << " shape errors; " << rep.lemmas.size() << " lemmas, "
       << rep.lemma_cex << " refuted; " << runs.runs << " runs, " << runs.failures << " failures";
    if (!runs.first_failure.empty()) os << " [" << runs.first_failure << "]";
    row.detail = os.str();
    row.ok = rep.ok() && runs.ok();
  } catch (const std::exception& e) {
    row.detail = e.what();
  }
  row.seconds = seconds_since(t0);
  return row;
}

}  // namespace

std::vector<CorpusRow> run_corpus(const CorpusOptions& opt) {
  std::vector<CorpusRow> rows;
  rows.push_back(tree_row("bst-insert", "bst_insert.slo", opt, false));
  rows.push_back(tree_row("bst-update", "bst_update.slo", opt, true));

  {
    auto t0 = std::chrono::steady_clock::now();
    CorpusRow row;
    row.name = "corrupted-lemmas";
    try {
      int total = 0, refuted = 0;
      for (const char* f : {"corrupted_update.sls", "corrupted_insert.sls"}) {
        for (const auto& v : check_spec_lemmas(corpus_path(f), opt.check)) {
          ++total;
          if (v.status == Verdict::Status::Refuted) ++refuted;
        }
      }
      row.detail = std::to_string(refuted) + "/" + std::to_string(total) + " mutated lemmas refuted";
      row.ok = total > 0 && refuted == total;
    } catch (const std::exception& e) {
      row.detail = e.what();
    }
    row.seconds = seconds_since(t0);
    rows.push_back(row);
  }

  {
    auto t0 = std::chrono::steady_clock::now();
    CorpusRow row;
    row.name = "schorr-waite";
    try {
      RunsReport r = schorr_runs(opt.schorr_runs, opt.check.seed, opt.check.eval);
      row.detail = std::to_string(r.runs) + " runs, " + std::to_string(r.failures) + " failures";
      if (!r.first_failure.empty()) row.detail += " [" + r.first_failure + "]";
      row.ok = r.ok();
    } catch (const std::exception& e) {
      row.detail = e.what();
    }
    row.seconds = seconds_since(t0);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace slv
