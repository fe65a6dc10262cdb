#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "slv/corpus.hpp"
#include "slv/eval.hpp"
#include "slv/gen.hpp"
#include "slv/interp.hpp"
#include "slv/outline.hpp"
#include "slv/parser.hpp"
#include "slv/printer.hpp"
#include "slv/scope.hpp"
#include "slv/typecheck.hpp"
#include "slv/vccheck.hpp"
#include "slv/vcgen.hpp"

using namespace slv;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kRefuted = 1, kUsage = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 0;
  int trials = 1000;
  std::int64_t fuel = 100000;
  bool json = false;
};

std::string need_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw UsageError("no such file: " + path);
  return path;
}

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

EvalOptions eval_opts(const Globals& g) {
  EvalOptions e;
  e.fuel = g.fuel;
  return e;
}

CheckOptions check_opts(const Globals& g) {
  CheckOptions c;
  c.seed = g.seed;
  c.trials = g.trials;
  c.eval = eval_opts(g);
  return c;
}

// `.slp` files carry their own declarations; `.sls` files are specs.
Context load_any(const std::string& file, const std::string& spec) {
  if (ends_with(file, ".slp")) return load_context_with_msfs(spec.empty() ? "" : need_file(spec), need_file(file));
  return load_context_with_msfs(need_file(file), "");
}

int cmd_typecheck(const Globals& g, const std::string& file, const std::string& spec) {
  if (ends_with(file, ".slo")) {
    LoadedOutline lo = load_outline(need_file(file));
    auto diags = typecheck_all(lo.ctx);
    for (const auto& d : diags) std::cout << d.str() << "\n";
    if (g.json) std::cout << json{{"file", file}, {"diagnostics", diags.size()}}.dump() << "\n";
    return diags.empty() ? kOk : kRefuted;
  }
  Context ctx = ends_with(file, ".slp") ? load_context_with_msfs(spec.empty() ? "" : need_file(spec), need_file(file))
                                        : load_context_with_msfs(need_file(file), "");
  auto diags = typecheck_all(ctx);
  for (const auto& d : diags) std::cout << d.str() << "\n";
  if (g.json) std::cout << json{{"file", file}, {"diagnostics", diags.size()}}.dump() << "\n";
  else if (diags.empty()) std::cout << file << ": ok\n";
  return diags.empty() ? kOk : kRefuted;
}

int cmd_msf(const std::string& file, bool raw) {
  Context ctx = load_context(need_file(file), "");
  ScopeTable st(ctx);
  std::cout << print_msfs(st, raw);
  return kOk;
}

int cmd_eval(const Globals& g, const std::string& spec, const std::string& state_file, const std::string& expr,
             bool formula) {
  Context ctx = load_any(spec, "");
  State st = state_file.empty() ? init_state(ctx) : parse_state(read_file(need_file(state_file)), ctx);
  Evaluator ev(ctx, st, eval_opts(g));
  std::string result;
  if (formula) {
    result = to_string(ev.eval(ctx.prepare(parse_formula(expr, "<expr>"))));
  } else {
    result = to_string(ev.eval(ctx.prepare(parse_term(expr, "<expr>"))));
  }
  std::vector<std::string> trace;
  for (const auto& a : ev.trace()) trace.push_back(to_string(a));
  if (g.json) {
    std::cout << json{{"value", result}, {"trace", trace}, {"fuel_used", ev.fuel_used()}}.dump() << "\n";
  } else {
    std::cout << "value: " << result << "\ntrace:";
    for (const auto& t : trace) std::cout << " " << t;
    std::cout << "\nfuel used: " << ev.fuel_used() << "\n";
  }
  return kOk;
}

int cmd_run(const Globals& g, const std::string& prog, const std::string& spec, const std::string& state_file,
            const std::string& shape, std::int64_t steps) {
  Context ctx = load_context_with_msfs(spec.empty() ? "" : need_file(spec), need_file(prog));
  State st;
  if (!state_file.empty()) {
    st = parse_state(read_file(need_file(state_file)), ctx);
  } else if (!shape.empty()) {
    Rng rng(g.seed);
    st = gen_state(ctx, parse_shape(shape), rng);
  } else {
    st = init_state(ctx);
  }
  RunConfig cfg;
  cfg.eval = eval_opts(g);
  cfg.step_limit = steps;
  cfg.snapshot_at_start = true;
  RunResult r = run(ctx, *ctx.program, st, cfg);
  if (g.json) {
    std::cout << json{{"ok", r.ok}, {"error", r.error}, {"steps", r.steps}, {"allocs", r.allocs},
                      {"state", r.state.dump()}}
                     .dump()
              << "\n";
  } else {
    std::cout << (r.ok ? "ok" : "error: " + r.error) << "\nsteps: " << r.steps << "\nallocs: " << r.allocs << "\n"
              << r.state.dump();
  }
  return r.ok ? kOk : kRefuted;
}

int cmd_vcgen(const Globals& g, const std::string& file, const std::string& out) {
  LoadedOutline lo = load_outline(need_file(file));
  VcSet vs = generate_vcs(lo.ctx, lo.outline);
  for (const auto& e : vs.errors) std::cerr << to_string(e.pos) << ": " << e.message << "\n";
  std::string text = format_vcs(vs.vcs);
  if (!out.empty()) {
    std::ofstream(out) << text;
  } else if (g.json) {
    for (const auto& vc : vs.vcs)
      std::cout << json{{"id", vc.id}, {"rule", vc.rule}, {"point", vc.point}, {"label", vc.label},
                        {"show", print(vc.show, PrintMode::Sugared)}}
                       .dump()
                << "\n";
  } else {
    std::cout << text;
  }
  return vs.ok() ? kOk : kRefuted;
}

json verdict_json(const Verdict& v) {
  json j{{"id", v.id}, {"verdict", v.summary()}, {"trials", v.trials}, {"satisfied", v.satisfied}, {"seed", v.seed}};
  if (v.cex) j["counterexample"] = v.cex->dump();
  return j;
}

int cmd_check(const Globals& g, const std::string& file, std::int64_t budget, const std::string& emit) {
  CheckOptions opt = check_opts(g);
  opt.budget_ms = budget;
  if (ends_with(file, ".sls")) {
    int refuted = 0;
    for (const auto& v : check_spec_lemmas(need_file(file), opt)) {
      refuted += v.status == Verdict::Status::Refuted;
      std::cout << (g.json ? verdict_json(v).dump() + "\n" : format_verdict(v));
    }
    return refuted ? kRefuted : kOk;
  }
  LoadedOutline lo = load_outline(need_file(file));
  OutlineReport rep = check_outline(lo, opt, false);
  for (const auto& e : rep.shape_errors) std::cerr << to_string(e.pos) << ": " << e.message << "\n";
  std::vector<VC> open;
  for (std::size_t i = 0; i < rep.vcs.size(); ++i) {
    const VC& vc = rep.vcs[i];
    const Verdict& v = rep.verdicts[i];
    if (v.status != Verdict::Status::Proved) open.push_back(vc);
    if (g.json) {
      json j = verdict_json(v);
      j["rule"] = vc.rule;
      j["point"] = vc.point;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "vc " << vc.id << " " << vc.rule << "@" << vc.point << " " << vc.label << ": ";
      std::string f = format_verdict(v);
      std::cout << f.substr(f.find(": ") + 2);
    }
  }
  if (!emit.empty()) std::ofstream(emit) << format_vcs(open);
  std::string summary = std::to_string(rep.vcs.size()) + " VCs: " + std::to_string(rep.proved) + " proved, " +
                        std::to_string(rep.unknown) + " unknown, " + std::to_string(rep.refuted) + " refuted, " +
                        std::to_string(rep.shape_errors.size()) + " shape errors";
  if (g.json) std::cout << json{{"summary", summary}}.dump() << "\n";
  else std::cout << summary << "\n";
  return rep.refuted == 0 && rep.shape_errors.empty() ? kOk : kRefuted;
}

int cmd_corpus(const Globals& g, int runs, int schorr) {
  CorpusOptions opt;
  opt.check = check_opts(g);
  opt.runs = runs;
  opt.schorr_runs = schorr;
  bool all = true;
  for (const auto& r : run_corpus(opt)) {
    all = all && r.ok;
    if (g.json) {
      std::cout << json{{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}, {"seconds", r.seconds}}.dump() << "\n";
    } else {
      char secs[32];
      std::snprintf(secs, sizeof secs, "%7.2fs", r.seconds);
      std::cout << (r.ok ? "PASS " : "FAIL ") << r.name << std::string(r.name.size() < 18 ? 18 - r.name.size() : 1, ' ')
                << secs << "  " << r.detail << "\n";
    }
  }
  return all ? kOk : kRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slv: scope logic verification toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--trials", g.trials, "falsification trials per entailment")->capture_default_str();
  app.add_option("--fuel", g.fuel, "evaluation fuel")->capture_default_str();
  app.add_flag("--json", g.json, "line-structured JSON output");

  std::string file, spec, state, expr, shape, out, emit;
  bool raw = false, formula = false;
  std::int64_t budget = 0, steps = 1000000;
  int runs = 500, schorr = 200;

  auto* tc = app.add_subcommand("typecheck", "type-check a spec, program or outline");
  tc->add_option("file", file)->required();
  tc->add_option("--spec", spec, "spec for a program file");

  auto* msf = app.add_subcommand("msf", "print the derived memory-scope functions");
  msf->add_option("spec", file)->required();
  msf->add_flag("--raw", raw, "print before simplification");

  auto* ev = app.add_subcommand("eval", "evaluate a term or formula on a state");
  ev->add_option("spec", file)->required();
  ev->add_option("--state", state, "state dump file");
  ev->add_option("--expr", expr, "term or formula")->required();
  ev->add_flag("--formula", formula, "parse --expr as a formula");

  auto* rn = app.add_subcommand("run", "execute a program");
  rn->add_option("program", file)->required();
  rn->add_option("--spec", spec);
  rn->add_option("--state", state, "initial state dump file");
  rn->add_option("--shape", shape, "random initial state, e.g. bst:5 or graph:8");
  rn->add_option("--steps", steps, "step limit")->capture_default_str();

  auto* vg = app.add_subcommand("vcgen", "validate an outline and print its VCs");
  vg->add_option("outline", file)->required();
  vg->add_option("-o,--out", out, "write .slvc records here");

  auto* ck = app.add_subcommand("check", "discharge the VCs of an outline, or test the lemmas of a spec");
  ck->add_option("file", file)->required();
  ck->add_option("--budget-ms", budget, "time cap per entailment")->capture_default_str();
  ck->add_option("--emit-vcs", emit, "write unresolved VCs here");

  auto* cp = app.add_subcommand("corpus", "run the bundled examples");
  cp->add_option("--runs", runs, "conformance runs per tree example")->capture_default_str();
  cp->add_option("--schorr-runs", schorr, "pointer-reversal runs")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*tc) return cmd_typecheck(g, file, spec);
    if (*msf) return cmd_msf(file, raw);
    if (*ev) return cmd_eval(g, file, state, expr, formula);
    if (*rn) return cmd_run(g, file, spec, state, shape, steps);
    if (*vg) return cmd_vcgen(g, file, out);
    if (*ck) return cmd_check(g, file, budget, emit);
    if (*cp) return cmd_corpus(g, runs, schorr);
  } catch (const UsageError& e) {
    std::cerr << "slv: " << e.what() << "\n";
    return kUsage;
  } catch (const SyntaxError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "slv: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
