#include "ruin/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <thread>

#include "ruin/errors.hpp"
#include "ruin/simulator.hpp"

namespace ruin {

namespace {

using C = std::complex<double>;
constexpr C I(0.0, 1.0);

// tanh(k t) / t, equal to k at t = 0.
double tanh_over(double k, double t) { return t == 0.0 ? k : std::tanh(k * t) / t; }

double sech(double x) {
  double ax = std::abs(x);
  if (ax > 700) return 0.0;
  return 1.0 / std::cosh(ax);
}

// Denominator of phi_hat divided by t cosh(k1 t) cosh(k2 t).
C phi_denominator(double t, const LimitParams& lp) {
  const double d2 = (lp.b - lp.a) * (lp.b - lp.a);
  return lp.a * lp.sigma1 * tanh_over(lp.kappa2, t) + lp.b * lp.sigma2 * tanh_over(lp.kappa1, t) +
         I * d2 * tanh_over(lp.kappa1, t) * std::tanh(lp.kappa2 * t);
}

double phi_numerator(const LimitParams& lp) {
  return lp.b * lp.kappa1 * lp.sigma2 + lp.a * lp.kappa2 * lp.sigma1;
}

// Denominator of 1/psi_hat scaled by sech(k1 t) sech(k2 t) and divided by a sigma1.
C psi_denominator(double t, const LimitParams& lp) {
  const double d2 = (lp.b - lp.a) * (lp.b - lp.a);
  return lp.b * lp.sigma2 + lp.a * lp.sigma1 * std::tanh(lp.kappa1 * t) * std::tanh(lp.kappa2 * t) +
         I * d2 * std::tanh(lp.kappa2 * t);
}

}  // namespace

LimitParams LimitParams::make(double a, double b, double eta) {
  auto inside = [](double v) { return v > 0 && v < 1; };
  if (!inside(a) || !inside(b)) throw RuinError(ErrorKind::InvalidParams, "a and b must lie in (0,1)");
  if (!inside(eta)) throw RuinError(ErrorKind::InvalidParams, "eta must lie in (0,1)");
  LimitParams lp;
  lp.a = a;
  lp.b = b;
  lp.eta = eta;
  lp.sigma1 = std::sqrt(a + b * b - 2 * a * b);
  lp.sigma2 = std::sqrt(b + a * a - 2 * a * b);
  lp.kappa1 = eta * lp.sigma1 / (1 - b);
  lp.kappa2 = (1 - eta) * lp.sigma2 / (1 - a);
  return lp;
}

C phi_hat(double t, const LimitParams& lp) {
  if (t == 0.0) return 1.0;
  return phi_numerator(lp) * sech(lp.kappa1 * t) * sech(lp.kappa2 * t) / phi_denominator(t, lp);
}

double special_sigma(double a) { return std::sqrt(1 - 3 * a + 3 * a * a); }

C special_phi_hat(double t, double a) {
  if (!(a > 0 && a < 1)) throw RuinError(ErrorKind::InvalidParams, "a must lie in (0,1)");
  if (t == 0.0) return 1.0;
  const double s = special_sigma(a), c = (1 - 2 * a) * (1 - 2 * a);
  const double th = std::tanh(s * t);
  const double sh = sech(s * t);
  return s * s * (1.0 / tanh_over(s, t)) * sh * sh / (s + I * c * th);
}

C special_denominator_factor(C t, double a) {
  const double s = special_sigma(a), c = (1 - 2 * a) * (1 - 2 * a);
  return s * std::cosh(s * t) + I * c * std::sinh(s * t);
}

C special_first_root(double a) {
  const double s = special_sigma(a), c = (1 - 2 * a) * (1 - 2 * a);
  return I / (2 * s) * (std::numbers::pi - std::atan(2 * s * c / (s * s - c * c)));
}

C psi_hat(double t, const LimitParams& lp) {
  if (t == 0.0) return 1.0;
  return lp.b * lp.sigma2 * sech(lp.kappa1 * t) * sech(lp.kappa2 * t) / psi_denominator(t, lp);
}

C xcal_cf(double t, const LimitParams& lp) {
  if (t == 0.0) return 1.0;
  // The sech factors of psi_hat and phi_hat cancel.
  return lp.b * lp.sigma2 * phi_denominator(t, lp) / (phi_numerator(lp) * psi_denominator(t, lp));
}

C joint_cf_homog(double s, double t, double a) {
  if (!(a > 0 && a < 1)) throw RuinError(ErrorKind::InvalidParams, "a must lie in (0,1)");
  const double q = std::sqrt((1 - a) * s * s + a * t * t);
  if (q == 0.0) return 1.0;
  if (q > 700) return 0.0;
  return q / std::sinh(q);
}

C z_joint_cf(double s, double t, double a) {
  if (!(a > 0 && a < 1)) throw RuinError(ErrorKind::InvalidParams, "a must lie in (0,1)");
  const double q = std::sqrt((1 - a) * s * s + a * t * t);
  if (q == 0.0) return 1.0;
  return std::tanh(q) / q;
}

namespace {

// Trapezoid sum of e^{-itx} cf(t) over the precomputed nodes, rotating the phase
// incrementally. Returns the complex value of the density at x.
C transform_at(const std::vector<C>& cfv, double T, double dt, double x) {
  const C rot = std::exp(C(0, -dt * x));
  C phase = std::exp(C(0, T * x));  // e^{-i t x} at t = -T
  C sum = 0;
  const std::size_t n = cfv.size();
  for (std::size_t k = 0; k < n; ++k) {
    C term = phase * cfv[k];
    sum += (k == 0 || k + 1 == n) ? 0.5 * term : term;
    phase *= rot;
    // Renormalize occasionally so the rotation stays on the unit circle.
    if ((k & 1023) == 1023) phase /= std::abs(phase);
  }
  return sum * dt / (2 * std::numbers::pi);
}

}  // namespace

DensityGrid invert_cf(const CfFunction& cf, const XGrid& grid, double T, double dt) {
  if (!(T > 0) || !(dt > 0) || grid.count < 3 || !(grid.hi > grid.lo))
    throw RuinError(ErrorKind::InvalidParams, "inversion needs T > 0, dt > 0 and a grid of at least 3 points");
  if (std::abs(cf(T)) >= 1e-12 || std::abs(cf(-T)) >= 1e-12)
    throw RuinError(ErrorKind::TailNotDecayed, "|cf(+-T)| >= 1e-12; increase T");
  const auto steps = static_cast<std::size_t>(std::llround(2 * T / dt));
  const double h = 2 * T / static_cast<double>(steps);
  std::vector<C> cfv(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) cfv[k] = cf(-T + static_cast<double>(k) * h);

  DensityGrid g;
  g.xs.resize(grid.count);
  g.values.resize(grid.count);
  std::vector<double> imag(grid.count);
  const int workers = std::min(worker_count(0), grid.count);
  auto work = [&](int w) {
    for (int i = w; i < grid.count; i += workers) {
      C v = transform_at(cfv, T, h, grid.at(i));
      g.xs[i] = grid.at(i);
      g.values[i] = v.real();
      imag[i] = std::abs(v.imag());
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  g.maxImagResidue = *std::max_element(imag.begin(), imag.end());

  const double dx = grid.step();
  for (int i = 0; i < grid.count; ++i) {
    double wgt = (i == 0 || i + 1 == grid.count) ? 0.5 * dx : dx;
    g.integral += wgt * g.values[i];
    g.gridMean += wgt * g.xs[i] * g.values[i];
  }
  g.mean = cf_mean(cf);

  // Golden-section refinement around the best grid point.
  auto best = static_cast<int>(std::max_element(g.values.begin(), g.values.end()) - g.values.begin());
  double lo = g.xs[std::max(best - 1, 0)], hi = g.xs[std::min(best + 1, grid.count - 1)];
  auto density = [&](double x) { return transform_at(cfv, T, h, x).real(); };
  const double invPhi = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - invPhi * (hi - lo), x2 = lo + invPhi * (hi - lo);
  double f1 = density(x1), f2 = density(x2);
  while (hi - lo > 1e-7) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invPhi * (hi - lo);
      f2 = density(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invPhi * (hi - lo);
      f1 = density(x1);
    }
  }
  g.argmax = (lo + hi) / 2;
  return g;
}

double auto_truncation(const CfFunction& cf, double decayRate) {
  if (!(decayRate > 0)) throw RuinError(ErrorKind::InvalidParams, "decay rate must be positive");
  double T = 30 / decayRate;
  for (int i = 0; i < 40; ++i, T *= 1.25)
    if (std::abs(cf(T)) < 1e-13 && std::abs(cf(-T)) < 1e-13) return T;
  throw RuinError(ErrorKind::TailNotDecayed, "cf does not decay below 1e-13");
}

double cf_mean(const CfFunction& cf, double h) {
  auto diff = [&](double step) { return (cf(step) - cf(-step)) / (2 * step); };
  C d = (4.0 * diff(h / 2) - diff(h)) / 3.0;
  return (-I * d).real();
}

void write_density_csv(std::ostream& os, const DensityGrid& g) {
  os << "x,density\n" << std::setprecision(17);
  for (std::size_t i = 0; i < g.xs.size(); ++i) os << g.xs[i] << ',' << g.values[i] << '\n';
}

void write_cf_csv(std::ostream& os, const CfFunction& cf, const std::vector<double>& ts) {
  os << "t,re,im\n" << std::setprecision(17);
  for (double t : ts) {
    C v = cf(t);
    os << t << ',' << v.real() << ',' << v.imag() << '\n';
  }
}

}  // namespace ruin
