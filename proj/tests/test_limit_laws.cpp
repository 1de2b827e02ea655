#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "ruin/errors.hpp"
#include "ruin/limit_laws.hpp"
#include "ruin/simulator.hpp"

using namespace ruin;
using C = std::complex<double>;

namespace {

const double kTs[] = {-7.5, -3.0, -1.3, -0.4, -1e-6, 1e-6, 0.25, 0.9, 2.0, 5.5};

double homog_A1(double a) { return std::sqrt(a / (1 - a)); }

}  // namespace

TEST_CASE("limit constants") {
  auto lp = LimitParams::make(0.25, 0.75, 0.25);
  CHECK(lp.sigma1 == doctest::Approx(std::sqrt(0.25 + 0.5625 - 0.375)));
  CHECK(lp.sigma2 == doctest::Approx(std::sqrt(0.75 + 0.0625 - 0.375)));
  CHECK(lp.kappa1 == doctest::Approx(0.25 * lp.sigma1 / 0.25));
  CHECK(lp.kappa2 == doctest::Approx(0.75 * lp.sigma2 / 0.75));
  CHECK_THROWS_AS(LimitParams::make(0.0, 0.5, 0.5), RuinError);
  CHECK_THROWS_AS(LimitParams::make(0.5, 0.5, 1.0), RuinError);
}

TEST_CASE("every cf is 1 at the origin and conjugate symmetric") {
  auto lp = LimitParams::make(1.0 / 3, 3.0 / 5, 2.0 / 5);
  CHECK(phi_hat(0, lp) == C(1));
  CHECK(psi_hat(0, lp) == C(1));
  CHECK(xcal_cf(0, lp) == C(1));
  CHECK(special_phi_hat(0, 0.25) == C(1));
  CHECK(joint_cf_homog(0, 0, 0.3) == C(1));
  CHECK(z_joint_cf(0, 0, 0.3) == C(1));
  for (double t : kTs) {
    CAPTURE(t);
    CHECK(std::abs(phi_hat(-t, lp) - std::conj(phi_hat(t, lp))) < 1e-14);
    CHECK(std::abs(psi_hat(-t, lp) - std::conj(psi_hat(t, lp))) < 1e-14);
    CHECK(std::abs(xcal_cf(-t, lp) - std::conj(xcal_cf(t, lp))) < 1e-14);
    CHECK(std::abs(special_phi_hat(-t, 0.25) - std::conj(special_phi_hat(t, 0.25))) < 1e-14);
    CHECK(std::abs(joint_cf_homog(-t, -t, 0.3) - std::conj(joint_cf_homog(t, t, 0.3))) < 1e-14);
    CHECK(std::abs(z_joint_cf(-t, 0.5 * t, 0.3) - std::conj(z_joint_cf(t, -0.5 * t, 0.3))) < 1e-14);
  }
  // Near 0 each cf follows its first-order expansion 1 + i mean t.
  const double tiny = 1e-9;
  for (CfFunction cf : {CfFunction([&](double t) { return phi_hat(t, lp); }),
                        CfFunction([&](double t) { return xcal_cf(t, lp); })})
    CHECK(std::abs(cf(tiny) - C(1.0, cf_mean(cf) * tiny)) < 1e-15);
  // Large |t| neither overflows nor produces NaN.
  CHECK(std::abs(phi_hat(2000, lp)) < 1e-100);
  CHECK(std::isfinite(std::abs(xcal_cf(2000, lp))));
}

TEST_CASE("phi_hat is a bounded cf on a grid") {
  for (auto lp : {LimitParams::make(0.25, 0.75, 0.25), LimitParams::make(0.8, 0.1, 0.6),
                  LimitParams::make(1.0 / 3, 3.0 / 5, 2.0 / 5)})
    for (double t = -20; t <= 20; t += 0.05) {
      CHECK(std::abs(phi_hat(t, lp)) <= 1.0 + 1e-12);
      CHECK(std::abs(xcal_cf(t, lp)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("homogeneous reductions") {
  for (double a : {0.2, 0.5, 0.7}) {
    const double A1 = homog_A1(a);
    for (double eta : {0.1, 0.5, 0.9}) {
      auto lp = LimitParams::make(a, a, eta);
      for (double t : kTs) {
        CAPTURE(a);
        CAPTURE(eta);
        CAPTURE(t);
        CHECK(std::abs(phi_hat(t, lp) - A1 * t / std::sinh(A1 * t)) < 1e-12);
        CHECK(std::abs(xcal_cf(t, lp) - std::tanh(A1 * t) / (A1 * t)) < 1e-12);
        // The last-visit law is the Z law along s = -a t / (1 - a).
        CHECK(std::abs(xcal_cf(t, lp) - z_joint_cf(-a * t / (1 - a), t, a)) < 1e-12);
      }
    }
    for (double t : kTs) {
      CHECK(std::abs(joint_cf_homog(t, t, a) - t / std::sinh(t)) < 1e-12);
      for (double zeta : {-0.5, 0.3, 1.0, 2.0}) {
        double Az = std::sqrt(((2 * zeta - 1) * a + (1 - zeta) * (1 - zeta)) / (1 - a));
        CHECK(std::abs(joint_cf_homog((1 - a - zeta) * t / (1 - a), t, a) - Az * t / std::sinh(Az * t)) < 1e-12);
      }
    }
  }
}

TEST_CASE("special case b = 1 - a, eta = a") {
  for (double a : {0.15, 0.25, 0.4, 0.5, 0.8}) {
    auto lp = LimitParams::make(a, 1 - a, a);
    for (double t : kTs) {
      CAPTURE(a);
      CAPTURE(t);
      CHECK(std::abs(phi_hat(t, lp) - special_phi_hat(t, a)) < 1e-12);
    }
  }
  for (double t : kTs) CHECK(std::abs(special_phi_hat(t, 0.5) - t / std::sinh(t)) < 1e-12);
  C root = special_first_root(0.25);
  CHECK(root.real() == 0.0);
  CHECK(std::abs(special_denominator_factor(root, 0.25)) < 1e-8);
  // No root of smaller modulus on the imaginary axis.
  for (double y = 0.001; y < root.imag() - 1e-3; y += 0.001)
    CHECK(std::abs(special_denominator_factor(C(0, y), 0.25)) > 1e-6);
}

TEST_CASE("means from the cf derivative") {
  for (double a : {0.1, 0.25, 0.5, 0.7})
    CHECK(cf_mean([a](double t) { return special_phi_hat(t, a); }) ==
          doctest::Approx(-(1 - 2 * a) * (1 - 2 * a)).epsilon(1e-9));
}

TEST_CASE("inverse transform of t/sinh t is the sech^2 density") {
  auto cf = [](double t) { return t == 0 ? C(1) : C(t / std::sinh(t)); };
  auto g = invert_cf(cf, XGrid{-8, 8, 801}, 40, 1e-3);
  double err = 0;
  for (std::size_t i = 0; i < g.xs.size(); ++i) {
    double x = g.xs[i];
    double exact = std::numbers::pi / 4 / std::pow(std::cosh(std::numbers::pi * x / 2), 2);
    err = std::max(err, std::abs(g.values[i] - exact));
    CHECK(std::abs(g.values[i] - g.values[g.xs.size() - 1 - i]) < 1e-6);
  }
  CHECK(err < 1e-6);
  CHECK(g.maxImagResidue < 1e-8);
  CHECK(g.integral == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(std::abs(g.mean) < 1e-9);
  CHECK(std::abs(g.argmax) < 1e-5);
  CHECK_THROWS_AS(invert_cf(cf, XGrid{}, 10, 1e-3), RuinError);
}

TEST_CASE("density of the special case at a = 1/4") {
  CfFunction cf = [](double t) { return special_phi_hat(t, 0.25); };
  double T = auto_truncation(cf, special_sigma(0.25));
  CHECK(std::abs(cf(T)) < 1e-12);
  auto g = invert_cf(cf, XGrid{-25, 25, 2501}, T, 1e-3);
  CHECK(g.mean == doctest::Approx(-0.25).epsilon(1e-5 / 0.25));
  CHECK(std::abs(g.gridMean - g.mean) < 1e-5);
  CHECK(std::abs(g.argmax - (-0.131619)) < 1e-3);
  CHECK(g.maxImagResidue < 1e-8);
  CHECK(std::abs(g.integral - 1) < 1e-4);
  for (double v : g.values) CHECK(v >= -1e-9);
  std::ostringstream os;
  write_density_csv(os, g);
  CHECK(os.str().rfind("x,density\n", 0) == 0);
}

TEST_CASE("simulated last-visit statistic approaches its limit") {
  // (a, b, eta) = (1/3, 3/5, 2/5), N = 100.
  ModelParams p = ModelParams::from_eta(Rational(1, 3), Rational(3, 5), 0.4, 100);
  auto lp = LimitParams::make(1.0 / 3, 3.0 / 5, 0.4);
  auto rows = simulate_batch(p, 31, 20000);
  std::vector<ScaledSample> xs;
  for (const auto& r : rows) xs.push_back(scaled_statistic(r, p, {StatKind::Xcal}));
  for (double t : {-1.0, 1.0}) {
    auto e = empirical_cf(xs, t);
    CAPTURE(t);
    CHECK(std::abs(e.value - xcal_cf(t, lp)) < 0.05);
  }
}

TEST_CASE("simulated homogeneous pairs approach the joint laws") {
  ModelParams p = ModelParams::from_eta(Rational(1, 3), Rational(1, 3), 0.5, 100);
  auto rows = simulate_batch(p, 8, 20000);
  std::vector<ScaledSample> ys, zs;
  for (const auto& r : rows) {
    ys.push_back(scaled_statistic(r, p, {StatKind::Y1Y2}));
    zs.push_back(scaled_statistic(r, p, {StatKind::Z1Z2}));
  }
  CHECK(std::abs(empirical_cf(zs, 1.0, 1.0).value - z_joint_cf(1.0, 1.0, 1.0 / 3)) < 0.05);
  CHECK(std::abs(empirical_cf(ys, 1.0, 1.0).value - joint_cf_homog(1.0, 1.0, 1.0 / 3)) < 0.05);
  CHECK(std::abs(empirical_cf(ys, -0.5, 1.5).value - joint_cf_homog(-0.5, 1.5, 1.0 / 3)) < 0.05);
}
