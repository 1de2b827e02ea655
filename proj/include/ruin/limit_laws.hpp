#pragma once

#include <complex>
#include <functional>
#include <ostream>
#include <vector>

namespace ruin {

using CfFunction = std::function<std::complex<double>(double)>;

struct LimitParams {
  double a = 0.5, b = 0.5, eta = 0.5;
  double sigma1 = 0, sigma2 = 0, kappa1 = 0, kappa2 = 0;

  // Throws InvalidParams unless a, b, eta lie in (0, 1).
  static LimitParams make(double a, double b, double eta);
};

// Limit cf of the meander statistic. Evaluated in tanh/sech form, so it neither
// overflows for large |t| nor loses accuracy near t = 0, where it equals 1.
std::complex<double> phi_hat(double t, const LimitParams& lp);

// The b = 1 - a, eta = a case written with sigma = sqrt(1 - 3a + 3a^2).
std::complex<double> special_phi_hat(double t, double a);
double special_sigma(double a);
// sigma cosh(sigma t) + i (1 - 2a)^2 sinh(sigma t) at complex t, and its root nearest 0.
std::complex<double> special_denominator_factor(std::complex<double> t, double a);
std::complex<double> special_first_root(double a);

// Ratio factor of the last-visit limit; xcal_cf = psi_hat / phi_hat.
std::complex<double> psi_hat(double t, const LimitParams& lp);
std::complex<double> xcal_cf(double t, const LimitParams& lp);

// Homogeneous joint laws: sqrt(Q)/sinh(sqrt(Q)) and tanh(sqrt(Q))/sqrt(Q), Q = (1-a)s^2 + a t^2.
std::complex<double> joint_cf_homog(double s, double t, double a);
std::complex<double> z_joint_cf(double s, double t, double a);

struct XGrid {
  double lo = -10, hi = 10;
  int count = 2001;
  double step() const { return (hi - lo) / (count - 1); }
  double at(int i) const { return lo + i * step(); }
};

struct DensityGrid {
  std::vector<double> xs;
  std::vector<double> values;
  double maxImagResidue = 0;  // largest |Im| of the quadrature before taking the real part
  double integral = 0;        // trapezoid integral over the grid
  double gridMean = 0;        // trapezoid first moment over the grid
  double mean = 0;            // from the cf derivative at 0
  double argmax = 0;          // refined by golden-section search
};

// Trapezoid inverse transform (1/2pi) int_{-T}^{T} e^{-itx} cf(t) dt on the grid.
// Throws TailNotDecayed when |cf(+-T)| >= 1e-12.
DensityGrid invert_cf(const CfFunction& cf, const XGrid& grid, double T, double dt);

// Smallest T on a geometric ladder with |cf(+-T)| < 1e-13, starting from 30 / decayRate.
double auto_truncation(const CfFunction& cf, double decayRate);

// E[X] = -i cf'(0), from central differences with Richardson extrapolation.
double cf_mean(const CfFunction& cf, double h = 1e-5);

void write_density_csv(std::ostream& os, const DensityGrid& g);
void write_cf_csv(std::ostream& os, const CfFunction& cf, const std::vector<double>& ts);

}  // namespace ruin
