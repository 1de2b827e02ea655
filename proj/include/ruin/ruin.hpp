#pragma once

#include <map>

#include "ruin/params.hpp"

namespace ruin {

// Denominator of the one-sided passage probability from level `from` to `to`.
// Checked variant: both levels within [0, N].
Rational pi_value(int from, int to, const ModelParams& p);
// Same closed form without the upper bound (levels beyond N keep persistence b).
Rational pi_formula(int from, int to, const ModelParams& p);

// Probability that the walk started at `from` reaches `to` before crossing back past `from`.
Rational rho(int from, int to, const ModelParams& p);
Rational rho_formula(int from, int to, const ModelParams& p);

// Exact absorbing-chain solve: probability of hitting `target` before leaving the band
// [lo, hi], starting at `level` having just stepped in direction `dir` (+1 or -1).
Rational band_hit_probability(int level, int dir, int lo, int hi, int target,
                              const ModelParams& p);
Rational rho_oracle(int from, int to, const ModelParams& p);

// (1 - 4 gamma_m gamma_j rho_{m,j} rho_{j,m})^{-1} for m < j.
Rational u_factor(int m, int j, const ModelParams& p);

struct HeightDist {
  std::map<int, Rational> pmf;   // P(H = n), 1 <= n <= N
  std::map<int, Rational> cdf;   // P(H <= n)
  std::map<int, Rational> tail;  // P(H >= n), 1 <= n <= N + 1
};

HeightDist height_dist(const ModelParams& p);
// P(H <= n) for any n >= 1.
Rational prob_height_at_most(int n, const ModelParams& p);
// P(M_N = nu) = P(H < N)^nu P(H >= N).
Rational m_count_pmf(int nu, const ModelParams& p);

}  // namespace ruin
