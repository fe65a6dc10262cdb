#pragma once

#include <string>

#include "slv/ast.hpp"

namespace slv {

/// Print modes. `Exact` writes core syntax that parses back to the same tree
/// (`*&p`, `*&(*&p)->K`). `Sugared` re-introduces the `p`, `p->K`, `X.n`,
/// `X[i]` abbreviations; its output parses and expands to the same tree.
enum class PrintMode { Exact, Sugared };

std::string print(const Term& t, PrintMode mode = PrintMode::Exact);
std::string print(const Formula& f, PrintMode mode = PrintMode::Exact);
std::string print(const Statement& s, PrintMode mode = PrintMode::Exact, int indent = 0);

inline std::string print(const TermPtr& t, PrintMode mode = PrintMode::Exact) { return print(*t, mode); }
inline std::string print(const FormulaPtr& f, PrintMode mode = PrintMode::Exact) { return print(*f, mode); }
inline std::string print(const StmtPtr& s, PrintMode mode = PrintMode::Exact, int indent = 0) {
  return print(*s, mode, indent);
}

}  // namespace slv
