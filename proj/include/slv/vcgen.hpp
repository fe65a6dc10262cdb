#pragma once

#include <string>
#include <vector>

#include "slv/ast.hpp"
#include "slv/context.hpp"
#include "slv/outline.hpp"

namespace slv {

/// One entailment `P, hyps |- show` demanded by a rule application.
struct VC {
  int id = 0;
  std::string rule;   // ASSIGN-ST, ALLOC-ST, IF-ST, WHILE-ST, CONSEQ
  std::string point;  // file:line:col of the annotated step
  std::string label;  // which premise of the rule
  std::vector<std::string> hints;  // lemmas cited by the step
  std::vector<FormulaPtr> hyps;
  FormulaPtr show;
};

struct ShapeError {
  Pos pos;
  std::string message;
};

struct VcSet {
  std::vector<VC> vcs;
  std::vector<ShapeError> errors;
  bool ok() const { return errors.empty(); }
};

/// Checks that every annotated step instantiates its rule and collects the
/// rule's side conditions. Shape errors do not stop generation.
VcSet generate_vcs(const Context& ctx, const Outline& o);

/// `.slvc` records: `vc <id> origin=<rule>@<point>`, `given:`, `hyp:` lines,
/// `show:`; records separated by blank lines.
std::string format_vc(const VC& vc);
std::string format_vcs(const std::vector<VC>& vcs);

}  // namespace slv
