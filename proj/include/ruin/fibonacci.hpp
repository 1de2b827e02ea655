#pragma once

// Fibonacci-type polynomial sequences and the stratified denominators
// wbar_{m,n} / numerators qbar_n of the two-strata excursion generating functions.

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "ruin/algebra.hpp"
#include "ruin/kernels.hpp"
#include "ruin/params.hpp"

namespace ruin {

template <class V>
struct FibCoeffs {
  V x;
  V beta;
};

// (q_n, w_n) with q_0 = 0, q_1 = 1, w_0 = w_1 = 1 and v_{n+1} = beta v_n - x v_{n-1}.
template <class A>
std::pair<typename A::value_type, typename A::value_type> fib_pair(
    int n, const FibCoeffs<typename A::value_type>& c, const A& alg) {
  if (n < 0) throw RuinError(ErrorKind::IndexOutOfRange, "fib_pair needs n >= 0");
  auto q_prev = alg.constant(0), q = alg.constant(1);
  auto w_prev = alg.constant(1), w = alg.constant(1);
  if (n == 0) return {q_prev, w_prev};
  for (int k = 1; k < n; ++k) {
    auto qn = c.beta * q - c.x * q_prev;
    auto wn = c.beta * w - c.x * w_prev;
    q_prev = std::move(q);
    q = std::move(qn);
    w_prev = std::move(w);
    w = std::move(wn);
  }
  return {q, w};
}

// Binet-type closed form; DegenerateAlpha when beta^2 - 4x is numerically zero.
std::pair<Complex, Complex> fib_closed(int n, const FibCoeffs<Complex>& c, double tol = 1e-12);

template <class A>
struct HomogCoeffs {
  using V = typename A::value_type;
  FibCoeffs<V> c;  // x_a, beta_a
  V omega;
  V tau;
  V w0star;
  V q0star;
  V q1star;
};

template <class A>
HomogCoeffs<A> homog_coeffs(const A& alg, const Rational& a) {
  HomogCoeffs<A> h;
  auto one = alg.constant(1);
  auto r = alg.r(), y = alg.y(), z = alg.z();
  auto z2 = z * z, r2 = r * r, y2 = y * y, omy = one - y;
  h.omega = omega(alg, a, a);
  h.tau = tau(alg, a, a);
  auto tau2 = h.tau * h.tau;
  const Rational s = (1 - a) * (1 - a);
  h.c.x = alg.constant(a * a) * z2 * tau2;
  h.c.beta = one + z2 * (alg.constant(a * a) -
                         alg.constant(s) * r2 * (y2 + alg.constant(a * a) * omy * omy * z2));
  // (beta_a - omega_a) / x_a with the common factor a^2 z^2 cancelled.
  h.w0star = alg.div(one - alg.constant(s) * r2 * omy * omy * z2, tau2);
  h.q0star = alg.div(-(omy * (one + y + alg.constant(s) * r2 * y2 * z2 * omy)), tau2);
  h.q1star = y2;
  return h;
}

// x(a,b) = b^2 z^2 tau(a,b)^2, beta(a,b) = beta_b - (b-a) b^2 (1-b) r^2 (1-y)^2 z^4.
template <class A>
FibCoeffs<typename A::value_type> mixed_coeffs(const A& alg, const Rational& a,
                                               const Rational& b) {
  auto hb = homog_coeffs(alg, b);
  auto t = tau(alg, a, b);
  auto z2 = alg.z() * alg.z();
  auto omy = alg.constant(1) - alg.y();
  FibCoeffs<typename A::value_type> c;
  c.x = alg.constant(b * b) * z2 * t * t;
  c.beta = hb.c.beta - alg.constant((b - a) * b * b * (1 - b)) * alg.r() * alg.r() * omy * omy *
                           z2 * z2;
  return c;
}

// q*_n(a), w*_n(a): the homogeneous numerator/denominator sequences.
template <class A>
class StarSeq {
 public:
  using V = typename A::value_type;

  StarSeq(const A& alg, const Rational& a) : alg_(alg), a_(a), h_(homog_coeffs(alg, a)) {
    q_ = {h_.q0star, h_.q1star};
    w_ = {h_.w0star, alg.constant(1), h_.omega};
  }

  const HomogCoeffs<A>& coeffs() const { return h_; }
  const Rational& a() const { return a_; }

  const V& q(int n) {
    check(n);
    while (static_cast<int>(q_.size()) <= n) {
      std::size_t k = q_.size();
      q_.push_back(h_.c.beta * q_[k - 1] - h_.c.x * q_[k - 2]);
    }
    return q_[n];
  }
  const V& w(int n) {
    check(n);
    while (static_cast<int>(w_.size()) <= n) {
      std::size_t k = w_.size();
      w_.push_back(h_.c.beta * w_[k - 1] - h_.c.x * w_[k - 2]);
    }
    return w_[n];
  }

  // Same sequences as linear combinations of the plain Fibonacci pair.
  std::pair<V, V> via_fib(int n) const {
    check(n);
    auto [qn, wn] = fib_pair(n, h_.c, alg_);
    V c2 = h_.q0star, c1 = h_.q1star - c2;
    V c2p = h_.w0star, c1p = alg_.constant(1) - c2p;
    return {c1 * qn + c2 * wn, c1p * qn + c2p * wn};
  }

 private:
  static void check(int n) {
    if (n < 0) throw RuinError(ErrorKind::IndexOutOfRange, "star sequence index must be >= 0");
  }
  A alg_;
  Rational a_;
  HomogCoeffs<A> h_;
  std::vector<V> q_, w_;
};

template <class V>
using Mat2 = std::array<std::array<V, 2>, 2>;

template <class V>
struct CrossMatrices {
  Mat2<V> Q;
  Mat2<V> B;
  Mat2<V> M;
  V kappaAB;
  V detQ;
};

// Stratified denominators and numerators for one parameter set and one ring.
// Entries are built lazily by the defining recurrences and memoized; every
// public accessor is safe to call concurrently.
template <class A>
class Denominators {
 public:
  using V = typename A::value_type;

  Denominators(const A& alg, const ModelParams& p, int limit = -1)
      : alg_(alg), p_(p), limit_(limit < 0 ? p.N + 1 : limit), sa_(alg, p.a), sb_(alg, p.b) {
    mixed_ab_ = mixed_coeffs(alg, p.a, p.b);
    mixed_ba_ = mixed_coeffs(alg, p.b, p.a);
    omega_ab_ = omega(alg, p.a, p.b);
    tau_ab_ = tau(alg, p.a, p.b);
  }

  const A& algebra() const { return alg_; }
  const ModelParams& params() const { return p_; }
  int limit() const { return limit_; }

  V wstar_a(int n) const { return locked([&] { return sa_.w(n); }); }
  V qstar_a(int n) const { return locked([&] { return sa_.q(n); }); }
  V wstar_b(int n) const { return locked([&] { return sb_.w(n); }); }
  V qstar_b(int n) const { return locked([&] { return sb_.q(n); }); }
  const HomogCoeffs<A>& homog_a() const { return sa_.coeffs(); }
  const HomogCoeffs<A>& homog_b() const { return sb_.coeffs(); }
  const FibCoeffs<V>& mixed_ab() const { return mixed_ab_; }
  const FibCoeffs<V>& mixed_ba() const { return mixed_ba_; }
  const V& omega_ab() const { return omega_ab_; }
  const V& tau_ab() const { return tau_ab_; }

  // Upward (m < n) or downward (m > n) denominator.
  V wbar(int m, int n) const {
    check_pair(m, n);
    return locked([&] { return wbar_impl(m, n); });
  }

  V qbar(int n) const {
    if (n < 0 || n > limit_) throw RuinError(ErrorKind::IndexOutOfRange, "qbar index out of range");
    return locked([&] { return qbar_impl(n); });
  }

  CrossMatrices<V> cross() const {
    return locked([&] {
      if (!cross_) cross_ = build_cross();
      return *cross_;
    });
  }

  // d(l) = M (w*_l(a), w*_{l+1}(a))^T.
  std::pair<V, V> d(int ell) const {
    auto cm = cross();
    V w1 = wstar_a(ell), w2 = wstar_a(ell + 1);
    return {cm.M[0][0] * w1 + cm.M[0][1] * w2, cm.M[1][0] * w1 + cm.M[1][1] * w2};
  }

  // Closed form for wbar_{f-l, f+j}, l, j >= 1.
  V wbar_closed(int m, int n) const {
    const int f = p_.f;
    if (!(m <= f - 1 && n >= f + 1 && m >= 0))
      throw RuinError(ErrorKind::IndexOutOfRange, "closed form needs m <= f-1 < f+1 <= n");
    auto [d1, d2] = d(f - m);
    return d1 * qstar_b(n - f) + d2 * wstar_b(n - f);
  }

  // qbar_{f+j-1} = (q*_j(b), w*_j(b)) M (q*_{f-1}(a), q*_f(a))^T for n >= f.
  V qbar_matrix(int n) const {
    const int f = p_.f;
    if (n < f) throw RuinError(ErrorKind::IndexOutOfRange, "matrix form needs n >= f");
    auto cm = cross();
    int j = n - f + 1;
    V q0 = qstar_a(f - 1), q1 = qstar_a(f);
    return qstar_b(j) * (cm.M[0][0] * q0 + cm.M[0][1] * q1) +
           wstar_b(j) * (cm.M[1][0] * q0 + cm.M[1][1] * q1);
  }

  V bracket_w(int m, int n) const {
    if (m < 0 || m > n - 2 || n + 1 > limit_)
      throw RuinError(ErrorKind::IndexOutOfRange, "bracket needs 0 <= m <= n-2, n+1 <= limit");
    return wbar(m, n) * wbar(m + 1, n + 1) - wbar(m, n + 1) * wbar(m + 1, n);
  }

  // Downward bracket started at n and ending at m.
  V bracket_w_down(int n, int m) const {
    if (m < 1 || m > n - 2 || n > limit_)
      throw RuinError(ErrorKind::IndexOutOfRange, "downward bracket needs 1 <= m <= n-2");
    return wbar(n, m) * wbar(n - 1, m - 1) - wbar(n, m - 1) * wbar(n - 1, m);
  }

  V bracket_w_closed(int m, int n) const {
    const int f = p_.f;
    const Rational &a = p_.a, &b = p_.b;
    if (m < 0 || m > n - 2) throw RuinError(ErrorKind::IndexOutOfRange, "bracket needs m <= n-2");
    auto r2z4 = alg_.r() * alg_.r() * ipow(alg_, alg_.z(), 4);
    const V& xa = sa_.coeffs().c.x;
    const V& xb = sb_.coeffs().c.x;
    if (n <= f - 1) return alg_.constant(a * a * (1 - a) * (1 - a)) * r2z4 * ipow(alg_, xa, n - m - 2);
    if (m >= f) return alg_.constant(b * b * (1 - b) * (1 - b)) * r2z4 * ipow(alg_, xb, n - m - 2);
    Rational mix = (1 - a) * (1 - b);
    if (n == f) return alg_.constant(a * a * mix) * r2z4 * ipow(alg_, xa, f - m - 2);
    if (m == f - 1) return alg_.constant(b * b * mix) * r2z4 * ipow(alg_, xb, n - f - 1);
    return alg_.constant(a * a * mix) * r2z4 * ipow(alg_, xa, f - m - 2) * mixed_ab_.x *
           ipow(alg_, xb, n - f - 1);
  }

  V bracket_wq(int n) const {
    if (n < 1 || n + 1 > limit_) throw RuinError(ErrorKind::IndexOutOfRange, "bracket_wq needs n >= 1");
    return wbar(n, 0) * qbar(n + 1) - qbar(n) * wbar(n + 1, 0);
  }

  V bracket_wq_closed(int n) const {
    const int f = p_.f;
    const Rational &a = p_.a, &b = p_.b;
    if (n < 1) throw RuinError(ErrorKind::IndexOutOfRange, "bracket_wq needs n >= 1");
    if (n <= f - 2) return a2z2_xa_pow(n - 1);
    V base = alg_.constant((1 - b) / (1 - a)) * a2z2_xa_pow(f - 2);
    if (n == f - 1) return base;
    return base * mixed_ab_.x * ipow(alg_, sb_.coeffs().c.x, n - f);
  }

  // a^2 z^2 x_a^e for e >= -1 (the e = -1 case reduces to 1/tau_a^2).
  V a2z2_xa_pow(int e) const {
    const auto& h = sa_.coeffs();
    if (e == -1) return alg_.div(alg_.constant(1), h.tau * h.tau);
    return alg_.constant(p_.a * p_.a) * alg_.z() * alg_.z() * ipow(alg_, h.c.x, e);
  }

 private:
  template <class F>
  auto locked(F&& fn) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return fn();
  }

  void check_pair(int m, int n) const {
    if (m < 0 || n < 0 || m > limit_ || n > limit_ || m == n)
      throw RuinError(ErrorKind::IndexOutOfRange,
                      "wbar indices must be distinct and within [0, " + std::to_string(limit_) + "]");
  }

  V wbar_impl(int m, int n) const {
    auto key = std::make_pair(m, n);
    if (auto it = wbar_cache_.find(key); it != wbar_cache_.end()) return it->second;
    V v = m < n ? up(m, n) : down(m, n);
    wbar_cache_.emplace(key, v);
    return v;
  }

  V up(int m, int n) const {
    const int f = p_.f, ell = n - m;
    const Rational &a = p_.a, &b = p_.b;
    if (ell == 1) return alg_.constant(1);
    if (ell == 2) {
      auto [x, y] = strata_pair(m, Direction::Up, p_);
      return omega(alg_, x, y);
    }
    if (n <= f) return sa_.w(ell);
    if (m >= f) return sb_.w(ell);
    if (n == f + 1)
      return alg_.constant((1 - b) / (1 - a)) * sa_.w(f - m + 1) +
             alg_.constant((b - a) / (1 - a)) * sa_.w(f - m);
    if (n == f + 2) return mixed_ab_.beta * wbar_impl(m, f + 1) - mixed_ab_.x * wbar_impl(m, f);
    const auto& hb = sb_.coeffs().c;
    return hb.beta * wbar_impl(m, n - 1) - hb.x * wbar_impl(m, n - 2);
  }

  // Downward from n to m (n > m); arguments arrive as (start, end).
  V down(int n, int m) const {
    const int f = p_.f, ell = n - m;
    const Rational &a = p_.a, &b = p_.b;
    if (ell == 1) return alg_.constant(1);
    if (ell == 2) {
      auto [x, y] = strata_pair(n, Direction::Down, p_);
      return omega(alg_, x, y);
    }
    if (n <= f - 1) return sa_.w(ell);
    if (m >= f - 1) return sb_.w(ell);
    if (m == f - 2)
      return alg_.constant((1 - a) / (1 - b)) * sb_.w(n - f + 2) +
             alg_.constant((a - b) / (1 - b)) * sb_.w(n - f + 1);
    if (m == f - 3) return mixed_ba_.beta * wbar_impl(n, f - 2) - mixed_ba_.x * wbar_impl(n, f - 1);
    const auto& ha = sa_.coeffs().c;
    return ha.beta * wbar_impl(n, m + 1) - ha.x * wbar_impl(n, m + 2);
  }

  V qbar_impl(int n) const {
    const int f = p_.f;
    const Rational &a = p_.a, &b = p_.b;
    if (auto it = qbar_cache_.find(n); it != qbar_cache_.end()) return it->second;
    V v;
    if (n < f) v = sa_.q(n);
    else if (n == f)
      v = alg_.constant((1 - b) / (1 - a)) * sa_.q(f) + alg_.constant((b - a) / (1 - a)) * sa_.q(f - 1);
    else if (n == f + 1)
      v = mixed_ab_.beta * qbar_impl(f) - mixed_ab_.x * qbar_impl(f - 1);
    else
      v = sb_.coeffs().c.beta * qbar_impl(n - 1) - sb_.coeffs().c.x * qbar_impl(n - 2);
    qbar_cache_.emplace(n, v);
    return v;
  }

  CrossMatrices<V> build_cross() const {
    const Rational &a = p_.a, &b = p_.b;
    CrossMatrices<V> cm;
    V q1 = sb_.q(1), w1 = sb_.w(1), q2 = sb_.q(2), w2 = sb_.w(2);
    cm.Q = {{{q1, w1}, {q2, w2}}};
    cm.detQ = q1 * w2 - w1 * q2;
    V ratio = alg_.constant((1 - b) / (1 - a));
    V shift = alg_.constant((b - a) / (1 - a));
    cm.kappaAB = shift * mixed_ab_.beta - mixed_ab_.x;
    cm.B = {{{shift, ratio}, {cm.kappaAB, ratio * mixed_ab_.beta}}};
    Mat2<V> adj = {{{w2, -w1}, {-q2, q1}}};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        cm.M[i][j] = alg_.div_shift(adj[i][0] * cm.B[0][j] + adj[i][1] * cm.B[1][j], cm.detQ);
    return cm;
  }

  A alg_;
  ModelParams p_;
  int limit_;
  mutable StarSeq<A> sa_, sb_;
  FibCoeffs<V> mixed_ab_, mixed_ba_;
  V omega_ab_, tau_ab_;
  mutable std::recursive_mutex mu_;
  mutable std::map<std::pair<int, int>, V> wbar_cache_;
  mutable std::map<int, V> qbar_cache_;
  mutable std::optional<CrossMatrices<V>> cross_;
};

}  // namespace ruin
