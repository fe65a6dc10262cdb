#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slv/outline.hpp"
#include "slv/vccheck.hpp"

namespace slv {

/// Directory holding the bundled examples.
std::string corpus_dir();
std::string corpus_path(const std::string& file);

struct OutlineReport {
  std::vector<ShapeError> shape_errors;
  std::vector<VC> vcs;
  std::vector<Verdict> verdicts;  // parallel to vcs
  std::vector<Verdict> lemmas;    // empty unless requested
  int proved = 0, refuted = 0, unknown = 0;
  int lemma_cex = 0;
  bool ok() const { return shape_errors.empty() && refuted == 0 && lemma_cex == 0; }
};

OutlineReport check_outline(const LoadedOutline& lo, const CheckOptions& opt, bool with_lemmas);

struct RunsReport {
  int runs = 0;
  int failures = 0;
  std::int64_t allocs = 0;
  std::string first_failure;
  bool ok() const { return failures == 0 && runs > 0; }
};

/// The update program on random trees with k in Dom(root); checks isHBST(root) and
/// Map(root) = M dagger {k |-> d} with M captured before the run.
RunsReport bst_update_runs(int runs, std::uint64_t seed, const EvalOptions& eval = {});
/// Insertion analog with k notin Dom(rt).
RunsReport bst_insert_runs(int runs, std::uint64_t seed, const EvalOptions& eval = {});
/// Pointer-reversal marking on random two-successor graphs: termination,
/// marks 3 on exactly the reachable nodes, links restored, acyclic stack
/// path at every loop head.
RunsReport schorr_runs(int runs, std::uint64_t seed, const EvalOptions& eval = {});

/// Verdicts for the lemmas declared in `file` itself (not its includes).
std::vector<Verdict> check_spec_lemmas(const std::string& file, const CheckOptions& opt);

struct CorpusRow {
  std::string name;
  bool ok = false;
  std::string detail;
  double seconds = 0;
};

struct CorpusOptions {
  CheckOptions check;
  int runs = 500;         // Hoare conformance runs per bst example
  int schorr_runs = 200;
};

/// One row per bundled example, ordered by name.
std::vector<CorpusRow> run_corpus(const CorpusOptions& opt);

}  // namespace slv
