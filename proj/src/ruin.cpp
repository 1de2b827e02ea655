#include "ruin/ruin.hpp"

#include <vector>

#include "ruin/errors.hpp"

namespace ruin {

namespace {

void check_levels(int from, int to, const ModelParams& p, int upper) {
  if (from < 0 || to < 0 || from > upper || to > upper)
    throw RuinError(ErrorKind::IndexOutOfRange,
                    "levels must lie in [0, " + std::to_string(upper) + "]");
  if (from == to) throw RuinError(ErrorKind::EqualIndices, "passage needs distinct levels");
  (void)p;
}

}  // namespace

Rational pi_formula(int from, int to, const ModelParams& p) {
  check_levels(from, to, p, std::max(from, to));
  const int f = p.f;
  const Rational &a = p.a, &b = p.b;
  const Rational ba = b / a;
  if (from < to) {
    const int m = from, n = to;
    if (m >= f) return (n - m) - (n - m - 1) * b;
    if (n <= f) return ba * ((n - m) - (n - m - 1) * a);
    const int ell = f - m, j = n - f;
    return j + ell * ba - (ell + j - 1) * b;
  }
  const int n = from, m = to;
  if (n <= f - 1) return ba * ((n - m) - (n - m - 1) * a);
  if (m >= f - 1) return (n - m) - (n - m - 1) * b;
  const int j = n - f, ell = f - m;
  return (j + 1) + (ell - 1) * ba - (ell + j - 1) * b;
}

Rational pi_value(int from, int to, const ModelParams& p) {
  check_levels(from, to, p, p.N);
  return pi_formula(from, to, p);
}

Rational rho_formula(int from, int to, const ModelParams& p) {
  Rational pi = pi_formula(from, to, p);
  Rational half(1, 2);
  return from <= p.f - 1 ? half * (p.b / p.a) / pi : half / pi;
}

Rational rho(int from, int to, const ModelParams& p) {
  check_levels(from, to, p, p.N);
  return rho_formula(from, to, p);
}

Rational band_hit_probability(int level, int dir, int lo, int hi, int target,
                              const ModelParams& p) {
  if (level == target) return 1;
  if (level < lo || level > hi) return 0;
  const int width = hi - lo + 1;
  auto index = [&](int k, int d) { return 2 * (k - lo) + (d > 0 ? 1 : 0); };
  const int n = 2 * width;
  // Rows: h(k,d) - a_k H(k+d,d) - (1-a_k) H(k-d,-d) = known constants.
  std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(n + 1));
  for (int k = lo; k <= hi; ++k) {
    for (int d : {-1, 1}) {
      int row = index(k, d);
      mat[row][row] += 1;
      if (k == target) {
        mat[row][n] = 1;
        continue;
      }
      const Rational& keep = p.persistence(k);
      auto link = [&](int next, int nd, const Rational& w) {
        if (next == target) mat[row][n] += w;
        else if (next >= lo && next <= hi) mat[row][index(next, nd)] -= w;
      };
      link(k + d, d, keep);
      link(k - d, -d, 1 - keep);
    }
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && mat[pivot][col] == 0) ++pivot;
    if (pivot == n) throw RuinError(ErrorKind::SingularSystem, "passage system is singular");
    std::swap(mat[col], mat[pivot]);
    Rational inv = 1 / mat[col][col];
    for (int c = col; c <= n; ++c) mat[col][c] *= inv;
    for (int row = 0; row < n; ++row) {
      if (row == col || mat[row][col] == 0) continue;
      Rational factor = mat[row][col];
      for (int c = col; c <= n; ++c) mat[row][c] -= factor * mat[col][c];
    }
  }
  return mat[index(level, dir)][n];
}

Rational rho_oracle(int from, int to, const ModelParams& p) {
  check_levels(from, to, p, p.N);
  const int dir = to > from ? 1 : -1;
  return Rational(1, 2) *
         band_hit_probability(from + dir, dir, std::min(from, to), std::max(from, to), to, p);
}

Rational u_factor(int m, int j, const ModelParams& p) {
  if (m < 0 || j > p.N || m + 1 > j)
    throw RuinError(ErrorKind::IndexOutOfRange, "u_factor needs 0 <= m < j <= N");
  return 1 / (1 - 4 * p.gamma(m) * p.gamma(j) * rho_formula(m, j, p) * rho_formula(j, m, p));
}

Rational prob_height_at_most(int n, const ModelParams& p) {
  if (n < 1) throw RuinError(ErrorKind::IndexOutOfRange, "height bound must be >= 1");
  return 1 - 2 * p.persistence(1) * rho_formula(1, n + 1, p);
}

HeightDist height_dist(const ModelParams& p) {
  HeightDist hd;
  const Rational& a1 = p.persistence(1);
  for (int n = 1; n <= p.N; ++n) {
    hd.pmf[n] = n == 1 ? 1 - a1 : 4 * a1 * rho_formula(1, n, p) * p.gamma(n) * rho_formula(n, 0, p);
    hd.cdf[n] = prob_height_at_most(n, p);
  }
  for (int n = 1; n <= p.N + 1; ++n) hd.tail[n] = n == 1 ? Rational(1) : 2 * a1 * rho_formula(1, n, p);
  return hd;
}

Rational m_count_pmf(int nu, const ModelParams& p) {
  if (nu < 0) throw RuinError(ErrorKind::IndexOutOfRange, "count must be >= 0");
  Rational below = prob_height_at_most(p.N - 1, p);
  return rational_pow(below, nu) * (1 - below);
}

}  // namespace ruin
