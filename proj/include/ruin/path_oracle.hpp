#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ruin/params.hpp"
#include "ruin/series.hpp"

namespace ruin {

struct PathSignature {
  int runs = 0;
  int shortRuns = 0;
  int longRuns = 0;
  int steps = 0;
  int height = 0;
  auto operator<=>(const PathSignature&) const = default;
};

struct JointDist {
  std::map<PathSignature, Rational> mass;
  Rational total = 0;
};

inline constexpr std::int64_t kDefaultEdgeBudget = 100'000'000;
inline constexpr int kMaxEnumerationLength = 30;

// Steps are +1 / -1. Throws EmptyPath on an empty sequence.
PathSignature count_path_stats(const std::vector<int>& steps);

// Splits a walk started at 0 into its completed excursions and the trailing piece.
struct ExcursionSplit {
  std::vector<std::vector<int>> excursions;
  std::vector<int> tail;
};
ExcursionSplit split_excursions(const std::vector<int>& steps);

// Exact law of (R, V, U, L, H) over excursions from 0 (both signs) with
// L <= maxLength and H <= heightCap. Levels keep their persistence beyond N.
JointDist enum_excursions(const ModelParams& p, int maxLength, int heightCap,
                          std::int64_t edgeBudget = kDefaultEdgeBudget);

// One-sided first passage from m to n whose first two steps point toward n.
struct FirstPassageEnum {
  Series3 numerator;  // sum of weight * r^R y^V z^L over paths with L <= maxLength
  Rational mass;      // total weight of all qualifying paths, any length
};
FirstPassageEnum enum_first_passage(int m, int n, const ModelParams& p, int maxLength,
                                    std::int64_t edgeBudget = kDefaultEdgeBudget);

// Walks from 0 that leave upward, never return to 0, and stop on first reaching N.
FirstPassageEnum enum_meander(const ModelParams& p, int maxLength,
                              std::int64_t edgeBudget = kDefaultEdgeBudget);

// (1-a) P_a(L=2n, R=2k, U=l) against a P_{1-a}(L=2n, L-R=2k, U=l).
struct SymmetryCell {
  int n = 0, k = 0, l = 0;
  Rational lhs, rhs;
};
struct SymmetryReport {
  int cellsChecked = 0;
  std::vector<SymmetryCell> failures;       // cells with n >= 2 that disagree
  std::vector<SymmetryCell> shortestCells;  // n = 1 cells, outside the identity's range
  bool ok() const { return failures.empty(); }
};
SymmetryReport symmetry_check(const Rational& a, int nMax);

void write_csv(std::ostream& os, const JointDist& dist);

}  // namespace ruin
