#include "ruin/scalar.hpp"

#include "ruin/errors.hpp"

namespace ruin {

namespace {

template <class T>
bool is_zero_value(const T& v) {
  if constexpr (std::is_same_v<T, Series3>) return !v.is_unit();
  else return v == T(0);
}

template <class T>
T apply(ArithOp op, const T& x, const T& y) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div:
      if (is_zero_value(y)) throw RuinError(ErrorKind::NonUnitDivisor, "divisor is not a unit");
      return x / y;
  }
  return x;
}

}  // namespace

Scalar scalar_arith(ArithOp op, const Scalar& x, const Scalar& y) {
  if (x.index() != y.index())
    throw RuinError(ErrorKind::VariantMismatch, "operands belong to different scalar rings");
  return std::visit(
      [&](const auto& xv) -> Scalar {
        using T = std::decay_t<decltype(xv)>;
        return apply<T>(op, xv, std::get<T>(y));
      },
      x);
}

Complex series_eval(const Series3& s, Complex r, Complex y, Complex z) { return s.eval(r, y, z); }

Rational series_coeff(const Series3& s, int i, int j, int k) { return s.coeff(i, j, k); }

}  // namespace ruin
