#pragma once

#include <complex>
#include <variant>

#include "ruin/rational.hpp"
#include "ruin/series.hpp"

namespace ruin {

using Complex = std::complex<double>;
using Scalar = std::variant<Rational, Complex, Series3>;

enum class ArithOp { Add, Sub, Mul, Div };

// Same-variant arithmetic; VariantMismatch otherwise, NonUnitDivisor for non-units.
Scalar scalar_arith(ArithOp op, const Scalar& x, const Scalar& y);

Complex series_eval(const Series3& s, Complex r, Complex y, Complex z);
Rational series_coeff(const Series3& s, int i, int j, int k);

}  // namespace ruin
