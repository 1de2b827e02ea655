#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ruin/rational.hpp"

namespace ruin {

struct Monomial {
  int i = 0;  // power of r
  int j = 0;  // power of y
  int k = 0;  // power of z
  auto operator<=>(const Monomial&) const = default;
};

// Power series in r, y, z with rational coefficients, truncated above z^maxDegree.
// Coefficients of each z-power form a polynomial in (r, y); a series is a unit
// exactly when its z^0 polynomial is a nonzero constant.
class Series3 {
 public:
  static constexpr int kDefaultDegree = 24;

  explicit Series3(int maxDegree = kDefaultDegree);
  static Series3 constant(const Rational& c, int maxDegree = kDefaultDegree);
  static Series3 monomial(const Rational& c, int i, int j, int k, int maxDegree = kDefaultDegree);

  int max_degree() const { return static_cast<int>(slices_.size()) - 1; }
  bool is_zero() const;
  bool is_unit() const;

  // Throws TruncationExceeded when k > maxDegree.
  Rational coeff(int i, int j, int k) const;
  void add_term(const Rational& c, int i, int j, int k);

  // Terms in graded-lex order: total degree, then powers of r, y, z descending.
  std::vector<std::pair<Monomial, Rational>> terms() const;
  std::size_t term_count() const;

  std::complex<double> eval(std::complex<double> r, std::complex<double> y,
                            std::complex<double> z) const;
  Rational eval_exact(const Rational& r, const Rational& y, const Rational& z) const;

  Series3 truncated(int maxDegree) const;
  // Exact division by c * r^i y^j z^k; every term must be divisible.
  // The result loses k orders of precision.
  Series3 divide_monomial(const Rational& c, int i, int j, int k) const;
  // Lowest nonzero z-slice as a single monomial, if it is one.
  bool leading_monomial(Monomial& mono, Rational& c) const;

  Series3 operator-() const;
  Series3& operator+=(const Series3& o);
  Series3& operator-=(const Series3& o);
  Series3& operator*=(const Series3& o);
  Series3& operator/=(const Series3& o);
  Series3& operator*=(const Rational& c);

  friend Series3 operator+(Series3 x, const Series3& y) { return x += y; }
  friend Series3 operator-(Series3 x, const Series3& y) { return x -= y; }
  friend Series3 operator*(const Series3& x, const Series3& y);
  friend Series3 operator/(const Series3& x, const Series3& y);
  friend Series3 operator*(Series3 x, const Rational& c) { return x *= c; }
  friend Series3 operator*(const Rational& c, Series3 x) { return x *= c; }
  friend bool operator==(const Series3& x, const Series3& y);
  friend bool operator!=(const Series3& x, const Series3& y) { return !(x == y); }

  std::string to_string() const;

 private:
  using Slice = std::map<std::pair<int, int>, Rational>;
  std::vector<Slice> slices_;  // index = power of z

  static void accumulate(Slice& dst, const Slice& a, const Slice& b);
  static void prune(Slice& s);
};

// Divides x by y where y's lowest z-slice is a monomial; precision drops accordingly.
Series3 divide_with_shift(const Series3& x, const Series3& y);

}  // namespace ruin
