#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ruin/rational.hpp"

namespace ruin {

// Two-strata chain: persistence a on levels 0..f-1, b on levels f and above,
// absorption at |X| = N. First steps are up or down with probability 1/2.
struct ModelParams {
  Rational a;
  Rational b;
  int f = 1;
  int N = 2;
  std::optional<double> eta;

  // Validates 0 < a, b < 1 and 1 <= f < N; throws InvalidParams.
  static ModelParams make(const Rational& a, const Rational& b, int f, int N,
                          std::optional<double> eta = std::nullopt);
  // Chooses f = round(eta * N), clamped into [1, N-1].
  static ModelParams from_eta(const Rational& a, const Rational& b, double eta, int N);

  bool homogeneous() const { return a == b; }
  // Persistence at level k >= 0 (levels beyond N continue with b).
  const Rational& persistence(int level) const { return level <= f - 1 ? a : b; }
  Rational gamma(int level) const { return 1 - persistence(level); }
  std::string describe() const;
};

enum class Direction { Up, Down };

// [a,b]^+_m and [a,b]^-_n: the persistence pair governing a return to the
// floor m (upward passages) or ceiling n (downward passages).
std::pair<Rational, Rational> strata_pair(int index, Direction dir, const ModelParams& p);

// Turning probability at level m, checked against 0 <= m < N.
Rational gamma_turn(int m, const ModelParams& p);

}  // namespace ruin
