#include "ruin/series.hpp"

#include <algorithm>
#include <sstream>

#include "ruin/errors.hpp"

namespace ruin {

Series3::Series3(int maxDegree) {
  if (maxDegree < 0) throw RuinError(ErrorKind::TruncationExceeded, "negative truncation order");
  slices_.resize(static_cast<std::size_t>(maxDegree) + 1);
}

Series3 Series3::constant(const Rational& c, int maxDegree) {
  Series3 s(maxDegree);
  s.add_term(c, 0, 0, 0);
  return s;
}

Series3 Series3::monomial(const Rational& c, int i, int j, int k, int maxDegree) {
  Series3 s(maxDegree);
  if (k <= maxDegree) s.add_term(c, i, j, k);
  return s;
}

bool Series3::is_zero() const {
  return std::all_of(slices_.begin(), slices_.end(), [](const Slice& s) { return s.empty(); });
}

bool Series3::is_unit() const {
  const Slice& s0 = slices_[0];
  return s0.size() == 1 && s0.begin()->first == std::make_pair(0, 0);
}

Rational Series3::coeff(int i, int j, int k) const {
  if (k > max_degree() || k < 0)
    throw RuinError(ErrorKind::TruncationExceeded,
                    "z^" + std::to_string(k) + " beyond truncation order " +
                        std::to_string(max_degree()));
  auto it = slices_[k].find({i, j});
  return it == slices_[k].end() ? Rational(0) : it->second;
}

void Series3::add_term(const Rational& c, int i, int j, int k) {
  if (k > max_degree()) return;
  if (i < 0 || j < 0 || k < 0)
    throw RuinError(ErrorKind::NonUnitDivisor, "negative exponent in series term");
  if (c == 0) return;
  auto& slot = slices_[k][{i, j}];
  slot += c;
  if (slot == 0) slices_[k].erase({i, j});
}

std::vector<std::pair<Monomial, Rational>> Series3::terms() const {
  std::vector<std::pair<Monomial, Rational>> out;
  for (int k = 0; k <= max_degree(); ++k)
    for (const auto& [ij, c] : slices_[k]) out.push_back({Monomial{ij.first, ij.second, k}, c});
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    const Monomial& a = x.first;
    const Monomial& b = y.first;
    int da = a.i + a.j + a.k, db = b.i + b.j + b.k;
    if (da != db) return da < db;
    return std::tie(b.i, b.j, b.k) < std::tie(a.i, a.j, a.k);
  });
  return out;
}

std::size_t Series3::term_count() const {
  std::size_t n = 0;
  for (const auto& s : slices_) n += s.size();
  return n;
}

std::complex<double> Series3::eval(std::complex<double> r, std::complex<double> y,
                                   std::complex<double> z) const {
  std::complex<double> total = 0.0, zk = 1.0;
  for (int k = 0; k <= max_degree(); ++k, zk *= z) {
    for (const auto& [ij, c] : slices_[k]) {
      total += to_double(c) * std::pow(r, ij.first) * std::pow(y, ij.second) * zk;
    }
  }
  return total;
}

Rational Series3::eval_exact(const Rational& r, const Rational& y, const Rational& z) const {
  Rational total = 0;
  for (int k = 0; k <= max_degree(); ++k) {
    Rational zk = rational_pow(z, k);
    for (const auto& [ij, c] : slices_[k])
      total += c * rational_pow(r, ij.first) * rational_pow(y, ij.second) * zk;
  }
  return total;
}

Series3 Series3::truncated(int maxDegree) const {
  Series3 out(maxDegree);
  for (int k = 0; k <= std::min(maxDegree, max_degree()); ++k) out.slices_[k] = slices_[k];
  return out;
}

Series3 Series3::divide_monomial(const Rational& c, int i, int j, int k) const {
  if (c == 0 || k > max_degree())
    throw RuinError(ErrorKind::NonUnitDivisor, "monomial divisor is zero or beyond truncation");
  Series3 out(max_degree() - k);
  for (int kk = 0; kk <= max_degree(); ++kk) {
    for (const auto& [ij, v] : slices_[kk]) {
      if (kk < k || ij.first < i || ij.second < j)
        throw RuinError(ErrorKind::NonUnitDivisor, "series not divisible by monomial");
      out.slices_[kk - k][{ij.first - i, ij.second - j}] = v / c;
    }
  }
  return out;
}

bool Series3::leading_monomial(Monomial& mono, Rational& c) const {
  for (int k = 0; k <= max_degree(); ++k) {
    if (slices_[k].empty()) continue;
    if (slices_[k].size() != 1) return false;
    mono = Monomial{slices_[k].begin()->first.first, slices_[k].begin()->first.second, k};
    c = slices_[k].begin()->second;
    return true;
  }
  return false;
}

Series3 Series3::operator-() const {
  Series3 out = *this;
  for (auto& s : out.slices_)
    for (auto& [ij, c] : s) c = -c;
  return out;
}

void Series3::prune(Slice& s) {
  for (auto it = s.begin(); it != s.end();) it = it->second == 0 ? s.erase(it) : std::next(it);
}

Series3& Series3::operator+=(const Series3& o) {
  if (o.max_degree() < max_degree()) slices_.resize(o.slices_.size());
  for (int k = 0; k <= max_degree(); ++k) {
    for (const auto& [ij, c] : o.slices_[k]) slices_[k][ij] += c;
    prune(slices_[k]);
  }
  return *this;
}

Series3& Series3::operator-=(const Series3& o) {
  if (o.max_degree() < max_degree()) slices_.resize(o.slices_.size());
  for (int k = 0; k <= max_degree(); ++k) {
    for (const auto& [ij, c] : o.slices_[k]) slices_[k][ij] -= c;
    prune(slices_[k]);
  }
  return *this;
}

Series3& Series3::operator*=(const Rational& c) {
  if (c == 0) {
    for (auto& s : slices_) s.clear();
    return *this;
  }
  for (auto& s : slices_)
    for (auto& [ij, v] : s) v *= c;
  return *this;
}

void Series3::accumulate(Slice& dst, const Slice& a, const Slice& b) {
  Rational prod;
  for (const auto& [ija, ca] : a) {
    for (const auto& [ijb, cb] : b) {
      mpq_mul(prod.backend().data(), ca.backend().data(), cb.backend().data());
      auto& slot = dst[{ija.first + ijb.first, ija.second + ijb.second}];
      mpq_add(slot.backend().data(), slot.backend().data(), prod.backend().data());
    }
  }
}

Series3 operator*(const Series3& x, const Series3& y) {
  int d = std::min(x.max_degree(), y.max_degree());
  Series3 out(d);
  for (int ka = 0; ka <= d; ++ka) {
    if (x.slices_[ka].empty()) continue;
    for (int kb = 0; ka + kb <= d; ++kb) {
      if (y.slices_[kb].empty()) continue;
      Series3::accumulate(out.slices_[ka + kb], x.slices_[ka], y.slices_[kb]);
    }
  }
  for (auto& s : out.slices_) Series3::prune(s);
  return out;
}

Series3& Series3::operator*=(const Series3& o) { return *this = *this * o; }

Series3 operator/(const Series3& x, const Series3& y) {
  if (!y.is_unit())
    throw RuinError(ErrorKind::NonUnitDivisor,
                    "series divisor needs a nonzero constant z^0 part");
  int d = std::min(x.max_degree(), y.max_degree());
  Rational inv_c = 1 / y.slices_[0].begin()->second;
  Series3 q(d);
  for (int k = 0; k <= d; ++k) {
    Series3::Slice acc = x.slices_[k];
    Series3::Slice sub;
    for (int t = 1; t <= k; ++t) {
      if (y.slices_[t].empty() || q.slices_[k - t].empty()) continue;
      Series3::accumulate(sub, y.slices_[t], q.slices_[k - t]);
    }
    for (const auto& [ij, c] : sub) acc[ij] -= c;
    for (auto& [ij, c] : acc) c *= inv_c;
    Series3::prune(acc);
    q.slices_[k] = std::move(acc);
  }
  return q;
}

Series3& Series3::operator/=(const Series3& o) { return *this = *this / o; }

bool operator==(const Series3& x, const Series3& y) {
  return x.max_degree() == y.max_degree() && x.slices_ == y.slices_;
}

std::string Series3::to_string() const {
  auto ts = terms();
  if (ts.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : ts) {
    if (!first) os << " + ";
    first = false;
    os << c.str() << " * r^" << m.i << " y^" << m.j << " z^" << m.k;
  }
  return os.str();
}

Series3 divide_with_shift(const Series3& x, const Series3& y) {
  Monomial m;
  Rational c;
  if (!y.leading_monomial(m, c))
    throw RuinError(ErrorKind::NonUnitDivisor, "divisor has no monomial leading slice");
  return x.divide_monomial(c, m.i, m.j, m.k) / y.divide_monomial(c, m.i, m.j, m.k);
}

}  // namespace ruin
