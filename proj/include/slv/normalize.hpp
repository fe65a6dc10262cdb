#pragma once

#include <set>
#include <string>
#include <vector>

#include "slv/ast.hpp"

namespace slv {

/// Canonical form used to compare assertions and match lemmas:
/// term-level connectives and comparisons become formulas (`a != b` is
/// `!(a = b)`, `a notin S` is `!(a in S)`, `a > b` is `b < a`), double
/// negations and negated orderings are removed, equations are oriented by
/// their printed form, and `true` / `e = e` conjuncts are dropped.
FormulaPtr normalize(const FormulaPtr& f);

/// Conjuncts of the normalized formula (flattened, duplicates removed,
/// in first-occurrence order).
std::vector<FormulaPtr> normal_conjuncts(const FormulaPtr& f);

/// Printed conjuncts; two assertions are interchangeable when these sets
/// are equal.
std::set<std::string> conjunct_keys(const FormulaPtr& f);

bool same_assertion(const FormulaPtr& a, const FormulaPtr& b);

/// Keys present in `a` and missing from `b`, printed in sugared syntax.
std::vector<std::string> missing_conjuncts(const FormulaPtr& a, const FormulaPtr& b);

bool is_true(const Formula& f);

}  // namespace slv
