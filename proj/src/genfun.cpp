#include "ruin/genfun.hpp"

#include <algorithm>
#include <cmath>

namespace ruin {

std::complex<double> excursion_gf_limit(const Rational& a, const Rational& b, std::complex<double> r,
                                        std::complex<double> y, std::complex<double> z) {
  if (a != b) throw RuinError(ErrorKind::HomogeneousOnly, "the infinite-height limit is only available for a = b");
  ComplexAlgebra alg{r, y, z};
  auto h = homog_coeffs(alg, a);
  const Complex beta = h.c.beta, x = h.c.x;
  const Complex disc = beta * beta - 4.0 * x;
  // A discriminant at round-off level is the double root; its square root would amplify the noise.
  Complex alpha = std::abs(disc) <= 1e-14 * std::max(1.0, std::norm(beta)) ? Complex(0.0) : std::sqrt(disc);
  const double minus = std::abs(beta - alpha), plus = std::abs(beta + alpha);
  const double scale = std::max({1.0, minus, plus});
  if (std::abs(alpha) > 1e-12 * scale && std::abs(minus - plus) <= 1e-12 * scale)
    throw RuinError(ErrorKind::BranchAmbiguity, "both square-root branches have equal modulus");
  if (minus > plus) alpha = -alpha;
  return (1.0 - 0.5 * beta - 0.5 * alpha) / (1.0 - to_double(a));
}

std::complex<double> last_visit_gf(const ModelParams& p, std::complex<double> r, std::complex<double> y,
                                   std::complex<double> z, std::complex<double> u) {
  ComplexAlgebra alg{r, y, z};
  GfTable<ComplexAlgebra> table(alg, p);
  const Rational below = prob_height_at_most(p.N - 1, p);
  const Complex ratio = u * to_double(below) * table.excursion_gf(p.N - 1);
  if (std::abs(ratio) >= 1.0)
    throw RuinError(ErrorKind::DivergentGeometricSum, "|u P(H<N) K_{N-1}| must be below 1");
  return to_double(1 - below) / (1.0 - ratio);
}

}  // namespace ruin
