#include "ruin/fibonacci.hpp"

namespace ruin {

std::pair<Complex, Complex> fib_closed(int n, const FibCoeffs<Complex>& c, double tol) {
  if (n < 1) throw RuinError(ErrorKind::IndexOutOfRange, "closed form needs n >= 1");
  Complex disc = c.beta * c.beta - 4.0 * c.x;
  double scale = std::max({1.0, std::abs(c.beta * c.beta), std::abs(4.0 * c.x)});
  if (std::abs(disc) <= tol * scale)
    throw RuinError(ErrorKind::DegenerateAlpha, "beta^2 - 4x vanishes; use the recurrence");
  Complex alpha = std::sqrt(disc);
  auto q = [&](int k) {
    if (k == 0) return Complex(0.0);
    return std::pow(0.5, k) * (std::pow(c.beta + alpha, k) - std::pow(c.beta - alpha, k)) / alpha;
  };
  Complex qn = q(n);
  return {qn, qn - c.x * q(n - 1)};
}

}  // namespace ruin
