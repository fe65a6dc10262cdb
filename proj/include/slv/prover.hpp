#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "slv/ast.hpp"
#include "slv/context.hpp"

namespace slv {

struct ProverOptions {
  bool use_lemmas = true;
  int depth = 3;           // nested lemma applications in backward chaining
  int forward_rounds = 2;  // saturation rounds over the hypotheses
  std::vector<std::string> only;  // restrict to these lemmas; empty = all
};

struct ProofResult {
  bool proved = false;
  bool used_builtin = false;
  std::vector<std::string> lemmas;  // lemmas that contributed, sorted
  std::string open_goal;            // first conjunct left unproved (sugared)

  /// "builtin", "lemma(A,B)" or "builtin+lemma(A,B)"; empty if not proved.
  std::string method() const;
};

/// Tries to establish `hyps |- show` from the hypotheses, the layout facts
/// of the memory model (distinct variables and fields, non-nil addresses,
/// static types) and the lemmas of the context. Incomplete by design.
ProofResult prove(const Context& ctx, const std::vector<FormulaPtr>& hyps, const FormulaPtr& show,
                  const ProverOptions& opt = {});

}  // namespace slv
