#pragma once

#include <complex>
#include <cstdlib>
#include <map>
#include <mutex>
#include <utility>

#include "ruin/fibonacci.hpp"
#include "ruin/kernels.hpp"
#include "ruin/ruin.hpp"

namespace ruin {

template <class A>
Kernels<A> strata_kernels(const A& alg, int index, Direction dir, const ModelParams& p) {
  auto [x, y] = strata_pair(index, dir, p);
  return kernels(alg, x, y);
}

// r^2 z^2 q*_n(a) / w*_n(a) scaled by (n - (n-1)a)/n.
template <class A>
typename A::value_type homogeneous_excursion_gf(const A& alg, const Rational& a, int n) {
  if (n < 1) throw RuinError(ErrorKind::IndexOutOfRange, "height bound must be >= 1");
  StarSeq<A> s(alg, a);
  auto rz = alg.r() * alg.z();
  Rational c = (n - (n - 1) * a) / Rational(n);
  return alg.constant(c) * rz * rz * alg.div(s.q(n), s.w(n));
}

// One-sided first-passage generating functions and everything assembled from them.
// g(m, n) = r z^{|n-m|} * g_reduced(m, n); the reduced factor is a unit equal to 1 at (1,1,1).
template <class A>
class GfTable {
 public:
  using V = typename A::value_type;

  GfTable(const A& alg, const ModelParams& p, int limit = -1)
      : alg_(alg), p_(p), den_(alg, p, limit < 0 ? p.N + 1 : limit),
        one_(RationalAlgebra::at_one(), p, limit < 0 ? p.N + 1 : limit) {}

  const ModelParams& params() const { return p_; }
  const A& algebra() const { return alg_; }
  const Denominators<A>& denominators() const { return den_; }

  V g_reduced(int m, int n) const {
    check_pair(m, n);
    auto key = std::make_pair(m, n);
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = reduced_.find(key); it != reduced_.end()) return it->second;
    V v = closed_reduced(m, n);
    reduced_.emplace(key, v);
    return v;
  }

  V g(int m, int n) const {
    return alg_.r() * ipow(alg_, alg_.z(), std::abs(n - m)) * g_reduced(m, n);
  }

  // 1 / (1 - 4 gamma_m gamma_n rho_{m,n} rho_{n,m} k^-_n k^+_m g_{m,n} g_{n,m}).
  V lambda_definition(int m, int n) const {
    if (m < 0 || n > p_.N || n < m + 2) throw RuinError(ErrorKind::IndexOutOfRange, "lambda needs m+2 <= n <= N");
    Rational c = 4 * p_.gamma(m) * p_.gamma(n) * rho(m, n, p_) * rho(n, m, p_);
    auto kdown = strata_kernels(alg_, n, Direction::Down, p_).kk;
    auto kup = strata_kernels(alg_, m, Direction::Up, p_).kk;
    return alg_.div(alg_.constant(1), alg_.constant(1) - alg_.constant(c) * kdown * kup * g(m, n) * g(n, m));
  }

  V lambda_ratio(int m, int n) const {
    if (m < 0 || n + 1 > den_.limit() || n < m + 2)
      throw RuinError(ErrorKind::IndexOutOfRange, "lambda needs m+2 <= n < limit");
    return alg_.div(den_.wbar(m, n) * den_.wbar(m + 1, n + 1), den_.wbar(m, n + 1) * den_.wbar(m + 1, n));
  }

  // Conditional generating function of (R, V, L) for an excursion of height exactly n.
  V excursion_given_height(int n) const {
    if (n < 1 || n >= p_.N) throw RuinError(ErrorKind::IndexOutOfRange, "height must satisfy 1 <= n < N");
    auto rz = alg_.r() * alg_.z();
    if (n == 1) return rz * rz * alg_.y() * alg_.y();
    if (n == 2) return rz * rz * alg_.z() * alg_.z() * strata_kernels(alg_, 2, Direction::Down, p_).kk;
    if (p_.f < 3) throw RuinError(ErrorKind::StrataTooLow, "height >= 3 decomposition needs f >= 3");
    return initial_factor() * g(1, n) * strata_kernels(alg_, n, Direction::Down, p_).kk * g(n, 0);
  }

  // K_n: conditional generating function of an excursion given height <= n.
  V excursion_gf(int n) const {
    if (n < 1) throw RuinError(ErrorKind::IndexOutOfRange, "height bound must be >= 1");
    if (p_.homogeneous() || n < p_.f) return homogeneous_excursion_gf(alg_, p_.a, n);
    // Every level an excursion can turn at lies in the upper stratum.
    if (p_.f == 1) return homogeneous_excursion_gf(alg_, p_.b, n);
    if (n + 1 > den_.limit()) throw RuinError(ErrorKind::IndexOutOfRange, "height bound beyond table limit");
    Rational c = (1 - p_.a) / prob_height_at_most(n, p_);
    auto rz = alg_.r() * alg_.z();
    return alg_.constant(c) * rz * rz * alg_.div(den_.qbar(n), den_.wbar(1, n + 1));
  }

  // Meander triple (R', V', L') generating function.
  V meander() const {
    if (p_.f < 3) throw RuinError(ErrorKind::StrataTooLow, "meander decomposition needs f >= 3");
    return initial_factor() * g(1, p_.N);
  }

  // a(2-a) z h_a: the U(UD)^l prefix that precedes the first UU from level 1.
  V initial_factor() const {
    const Rational& a = p_.a;
    return alg_.constant(a * (2 - a)) * alg_.z() * kernels(alg_, a, a).h;
  }

 private:
  void check_pair(int m, int n) const {
    if (m < 0 || n < 0 || m > p_.N || n > p_.N)
      throw RuinError(ErrorKind::IndexOutOfRange, "first-passage levels must lie in [0, N]");
    if (std::abs(n - m) < 2) throw RuinError(ErrorKind::TooClose, "first passage needs |n - m| >= 2");
  }

  // omega(strata) * tau-factors / wbar, scaled to 1 at (1,1,1).
  V closed_reduced(int m, int n) const {
    const int f = p_.f;
    const Rational &a = p_.a, &b = p_.b;
    const bool up = m < n;
    const int lo = up ? m : n, hi = up ? n : m;
    auto [x, y] = up ? strata_pair(lo, Direction::Up, p_) : strata_pair(hi, Direction::Down, p_);
    V num = omega(alg_, x, y);
    auto ta = [&](int e) { return ipow(alg_, tau(alg_, a, a), e); };
    auto tb = [&](int e) { return ipow(alg_, tau(alg_, b, b), e); };
    const int gap = hi - lo;
    if (hi <= f) {
      num = num * ta(gap - 2);
    } else if (lo >= f) {
      num = num * tb(gap - 2);
    } else if (lo == f - 1) {
      num = num * tb(hi - f - 1);
    } else {
      num = num * tau(alg_, a, b) * ta(f - lo - 2) * tb(hi - f - 1);
    }
    Rational scale = one_.wbar(m, n) / omega(RationalAlgebra::at_one(), x, y);
    return alg_.constant(scale) * alg_.div(num, den_.wbar(m, n));
  }

  A alg_;
  ModelParams p_;
  Denominators<A> den_;
  Denominators<RationalAlgebra> one_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, V> reduced_;
};

// Rebuilds every reduced g from the two-step seeds using the first-passage
// decompositions, each entry rescaled to mass one. Keyed by (from, to).
template <class A>
std::map<std::pair<int, int>, typename A::value_type> g_by_recurrence(const A& alg, const ModelParams& p) {
  using T = TrackedAlgebra<A>;
  using TV = typename T::value_type;
  T ta{alg};
  std::map<std::pair<int, int>, TV> g;  // reduced values
  auto lambda = [&](int m, int n) {
    int d = n - m;
    Rational c = 4 * p.gamma(m) * p.gamma(n) * rho(m, n, p) * rho(n, m, p);
    auto kdown = strata_kernels(ta, n, Direction::Down, p).kk;
    auto kup = strata_kernels(ta, m, Direction::Up, p).kk;
    auto z2d = ipow(ta, ta.z(), 2 * d);
    return ta.div(ta.constant(1),
                  ta.constant(1) - ta.constant(c) * kdown * kup * ta.r() * ta.r() * z2d * g.at({m, n}) * g.at({n, m}));
  };
  for (int m = 0; m + 2 <= p.N; ++m) {
    g[{m, m + 2}] = ta.constant(1);
    g[{m + 2, m}] = ta.constant(1);
  }
  for (int d = 3; d <= p.N; ++d) {
    for (int m = 0; m + d <= p.N; ++m) {
      int n = m + d;
      if (d == 3) {
        auto lam = lambda(m, m + 2);
        g[{m, n}] = ta.normalize(strata_kernels(ta, m + 2, Direction::Down, p).h * lam);
        g[{n, m}] = ta.normalize(strata_kernels(ta, m + 1, Direction::Up, p).h * lambda(m + 1, n));
      } else {
        // Up: g_{m,n} from g_{m,n-1} g_{m+1,n} / g_{m+1,n-1} and lambda_{m,n-1}.
        g[{m, n}] = ta.normalize(ta.div(g.at({m, n - 1}) * g.at({m + 1, n}), g.at({m + 1, n - 1})) *
                                 lambda(m, n - 1));
        // Down: g_{n,m} from g_{n,m+1} g_{n-1,m} / g_{n-1,m+1} and lambda_{m+1,n}.
        g[{n, m}] = ta.normalize(ta.div(g.at({n, m + 1}) * g.at({n - 1, m}), g.at({n - 1, m + 1})) *
                                 lambda(m + 1, n));
      }
    }
  }
  std::map<std::pair<int, int>, typename A::value_type> out;
  for (auto& [k, v] : g) out.emplace(k, v.v);
  return out;
}

// Unconditional excursion generating function in the homogeneous case at a complex point.
std::complex<double> excursion_gf_limit(const Rational& a, const Rational& b, std::complex<double> r,
                                        std::complex<double> y, std::complex<double> z);

// E{r^R y^V z^L u^M} over the last-visit portion: P(H>=N) / (1 - u P(H<N) K_{N-1}).
std::complex<double> last_visit_gf(const ModelParams& p, std::complex<double> r, std::complex<double> y,
                                   std::complex<double> z, std::complex<double> u);

}  // namespace ruin
