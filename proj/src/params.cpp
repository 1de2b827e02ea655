#include "ruin/params.hpp"

#include <cmath>

#include "ruin/errors.hpp"

namespace ruin {

ModelParams ModelParams::make(const Rational& a, const Rational& b, int f, int N,
                              std::optional<double> eta) {
  if (!(a > 0 && a < 1)) throw RuinError(ErrorKind::InvalidParams, "a must lie in (0,1)");
  if (!(b > 0 && b < 1)) throw RuinError(ErrorKind::InvalidParams, "b must lie in (0,1)");
  if (f < 1) throw RuinError(ErrorKind::InvalidParams, "f must be at least 1");
  if (N <= f) throw RuinError(ErrorKind::InvalidParams, "N must exceed f");
  if (eta && !(*eta > 0 && *eta < 1))
    throw RuinError(ErrorKind::InvalidParams, "eta must lie in (0,1)");
  ModelParams p;
  p.a = a;
  p.b = b;
  p.f = f;
  p.N = N;
  p.eta = eta;
  return p;
}

ModelParams ModelParams::from_eta(const Rational& a, const Rational& b, double eta, int N) {
  if (!(eta > 0 && eta < 1)) throw RuinError(ErrorKind::InvalidParams, "eta must lie in (0,1)");
  int f = static_cast<int>(std::lround(eta * N));
  if (f < 1) f = 1;
  if (f > N - 1) f = N - 1;
  return make(a, b, f, N, eta);
}

std::string ModelParams::describe() const {
  return "a=" + a.str() + " b=" + b.str() + " f=" + std::to_string(f) +
         " N=" + std::to_string(N);
}

std::pair<Rational, Rational> strata_pair(int index, Direction dir, const ModelParams& p) {
  if (index < 0) throw RuinError(ErrorKind::IndexOutOfRange, "negative level");
  const int f = p.f;
  if (dir == Direction::Up) {
    if (index <= f - 2) return {p.a, p.a};
    if (index == f - 1) return {p.a, p.b};
    return {p.b, p.b};
  }
  if (index <= f - 1) return {p.a, p.a};
  if (index == f) return {p.a, p.b};
  return {p.b, p.b};
}

Rational gamma_turn(int m, const ModelParams& p) {
  if (m < 0 || m >= p.N)
    throw RuinError(ErrorKind::IndexOutOfRange, "level outside [0, N)");
  return p.gamma(m);
}

}  // namespace ruin
