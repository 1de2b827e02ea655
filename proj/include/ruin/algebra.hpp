#pragma once

// Coefficient rings over which every generating-function formula is written once.
// An algebra supplies constants, the three formal variables and checked division;
// values support +, -, * directly.

#include "ruin/errors.hpp"
#include "ruin/scalar.hpp"

namespace ruin {

// Exact evaluation at a rational point (r, y, z); at (1,1,1) this gives total masses.
struct RationalAlgebra {
  using value_type = Rational;
  Rational rv = 1, yv = 1, zv = 1;

  static RationalAlgebra at_one() { return {}; }
  value_type constant(const Rational& q) const { return q; }
  value_type r() const { return rv; }
  value_type y() const { return yv; }
  value_type z() const { return zv; }
  value_type div(const value_type& x, const value_type& d) const {
    if (d == 0) throw RuinError(ErrorKind::NonUnitDivisor, "rational division by zero");
    return x / d;
  }
  value_type div_shift(const value_type& x, const value_type& d) const { return div(x, d); }
};

// Floating evaluation at a complex point.
struct ComplexAlgebra {
  using value_type = Complex;
  Complex rv = 1.0, yv = 1.0, zv = 1.0;

  value_type constant(const Rational& q) const { return to_double(q); }
  value_type r() const { return rv; }
  value_type y() const { return yv; }
  value_type z() const { return zv; }
  value_type div(const value_type& x, const value_type& d) const {
    if (d == Complex(0.0)) throw RuinError(ErrorKind::NonUnitDivisor, "complex division by zero");
    return x / d;
  }
  value_type div_shift(const value_type& x, const value_type& d) const { return div(x, d); }
};

// Formal expansion in (r, y, z) truncated at z^degree.
struct SeriesAlgebra {
  using value_type = Series3;
  int degree = Series3::kDefaultDegree;

  value_type constant(const Rational& q) const { return Series3::constant(q, degree); }
  value_type r() const { return Series3::monomial(1, 1, 0, 0, degree); }
  value_type y() const { return Series3::monomial(1, 0, 1, 0, degree); }
  value_type z() const { return Series3::monomial(1, 0, 0, 1, degree); }
  value_type div(const value_type& x, const value_type& d) const { return x / d; }
  // Exact quotient by a divisor whose lowest z-slice is a monomial (loses precision).
  value_type div_shift(const value_type& x, const value_type& d) const {
    return divide_with_shift(x, d);
  }
};

// A value paired with its evaluation at (1,1,1); lets recurrences with
// unknown normalizing constants rescale each entry to total mass one.
template <class V>
struct Tracked {
  V v;
  Rational one;

  friend Tracked operator+(const Tracked& x, const Tracked& y) { return {x.v + y.v, x.one + y.one}; }
  friend Tracked operator-(const Tracked& x, const Tracked& y) { return {x.v - y.v, x.one - y.one}; }
  friend Tracked operator*(const Tracked& x, const Tracked& y) { return {x.v * y.v, x.one * y.one}; }
  Tracked operator-() const { return {-v, -one}; }
};

template <class A>
struct TrackedAlgebra {
  using base_value = typename A::value_type;
  using value_type = Tracked<base_value>;
  A base;

  value_type constant(const Rational& q) const { return {base.constant(q), q}; }
  value_type r() const { return {base.r(), 1}; }
  value_type y() const { return {base.y(), 1}; }
  value_type z() const { return {base.z(), 1}; }
  value_type div(const value_type& x, const value_type& d) const {
    if (d.one == 0) throw RuinError(ErrorKind::NonUnitDivisor, "divisor vanishes at (1,1,1)");
    return {base.div(x.v, d.v), x.one / d.one};
  }
  value_type normalize(const value_type& x) const {
    if (x.one == 0) throw RuinError(ErrorKind::NonUnitDivisor, "cannot normalize a massless value");
    return {x.v * base.constant(1 / x.one), 1};
  }
};

template <class A>
typename A::value_type ipow(const A& alg, typename A::value_type base, int e) {
  if (e < 0) throw RuinError(ErrorKind::IndexOutOfRange, "negative power");
  auto acc = alg.constant(1);
  for (; e > 0; e >>= 1) {
    if (e & 1) acc = acc * base;
    if (e > 1) base = base * base;
  }
  return acc;
}

}  // namespace ruin
