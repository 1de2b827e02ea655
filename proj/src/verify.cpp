#include "ruin/verify.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "ruin/genfun.hpp"
#include "ruin/limit_laws.hpp"
#include "ruin/path_oracle.hpp"

namespace ruin {

bool VerifyReport::pass() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return true;
}

namespace {

bool same(const Series3& x, const Series3& y) {
  int d = std::min(x.max_degree(), y.max_degree());
  return x.truncated(d) == y.truncated(d);
}
bool same(const Rational& x, const Rational& y) { return x == y; }

std::string show(const Series3& s) { return s.to_string(); }
std::string show(const Rational& q) { return to_string(q); }

class Recorder {
 public:
  explicit Recorder(std::string name) { res_.name = std::move(name); }

  template <class V>
  void equal(const V& lhs, const V& rhs, const std::string& where) {
    ++res_.cases;
    if (same(lhs, rhs)) return;
    if (res_.failures++ == 0) res_.witness = where + ": lhs = " + show(lhs) + ", rhs = " + show(rhs);
  }

  void truth(bool ok, const std::string& where) {
    ++res_.cases;
    if (!ok && res_.failures++ == 0) res_.witness = where;
  }

  void close(const std::string& where, double got, double want, double tol) {
    std::ostringstream os;
    os.precision(12);
    os << where << ": got " << got << ", want " << want << " within " << tol;
    truth(std::abs(got - want) <= tol, os.str());
  }

  CheckResult done() const { return res_; }

 private:
  CheckResult res_;
};

std::string at(int m, int n) { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; }
std::string at(int n) { return "(" + std::to_string(n) + ")"; }

template <class A>
void identities_in(const A& alg, const ModelParams& p, const std::string& ring, std::vector<Recorder>& rec) {
  const Rational &a = p.a, &b = p.b;
  const int N = p.N;
  Denominators<A> den(alg, p);
  auto r2z2 = alg.r() * alg.r() * alg.z() * alg.z();
  auto r2z4 = r2z2 * alg.z() * alg.z();

  for (const Rational& s : {a, b}) {
    StarSeq<A> star(alg, s);
    for (int n = 0; n <= N + 1; ++n) {
      auto [q, w] = star.via_fib(n);
      rec[0].equal(q, star.q(n), ring + " q*" + at(n));
      rec[0].equal(w, star.w(n), ring + " w*" + at(n));
    }
  }

  for (int n = 1; n <= N; ++n) {
    auto lhs = den.wstar_a(n) * den.wstar_a(n) - den.wstar_a(n + 1) * den.wstar_a(n - 1);
    rec[1].equal(lhs, alg.constant((1 - a) * (1 - a)) * r2z2 * den.a2z2_xa_pow(n - 2), ring + " w*" + at(n));
  }
  for (int n = 0; n <= N; ++n) {
    auto lhs = den.wstar_a(n) * den.qstar_a(n + 1) - den.qstar_a(n) * den.wstar_a(n + 1);
    rec[1].equal(lhs, den.a2z2_xa_pow(n - 1), ring + " [w*,q*]" + at(n));
  }

  for (int m = 0; m + 2 <= N; ++m)
    for (int n = m + 2; n <= N; ++n) {
      rec[2].equal(den.bracket_w(m, n), den.bracket_w_closed(m, n), ring + " [wbar]" + at(m, n));
      if (m >= 1) rec[2].equal(den.bracket_w_down(n, m), den.bracket_w(m, n), ring + " down" + at(n, m));
    }
  rec[2].equal(den.bracket_w(p.f - 1, p.f + 1), alg.constant(b * b * (1 - a) * (1 - b)) * r2z4,
               ring + " straddle");

  for (int m = 1; m <= N; ++m)
    for (int n = m + 1; n <= N; ++n) rec[3].equal(den.wbar(m, n), den.wbar(n - 1, m - 1), ring + " wbar" + at(m, n));

  for (int n = 1; n <= N; ++n) rec[4].equal(den.bracket_wq(n), den.bracket_wq_closed(n), ring + " [wbar,qbar]" + at(n));

  GfTable<A> t(alg, p);
  for (int m = 0; m + 2 <= N; ++m)
    for (int n = m + 2; n <= N; ++n)
      rec[6].equal(t.lambda_definition(m, n), t.lambda_ratio(m, n), ring + " lambda" + at(m, n));
}

}  // namespace

VerifyReport verify_identities(const ModelParams& p, int seriesDegree) {
  std::vector<Recorder> rec{Recorder("fibonacci-reduction"),   Recorder("homogeneous-interlacing"),
                            Recorder("denominator-brackets"),  Recorder("denominator-reflection"),
                            Recorder("numerator-brackets"),    Recorder("values-at-one"),
                            Recorder("lambda-two-ways")};
  identities_in(SeriesAlgebra{seriesDegree}, p, "series", rec);
  identities_in(RationalAlgebra{Rational(2, 3), Rational(-1, 4), Rational(3, 5)}, p, "point", rec);

  const Rational &a = p.a, &b = p.b;
  const int f = p.f, N = p.N;
  for (const Rational& s : {a, b}) {
    StarSeq<RationalAlgebra> one(RationalAlgebra::at_one(), s);
    for (int n = 1; n <= N + 1; ++n) {
      rec[5].equal(one.w(n), rational_pow(s, n - 1) * (n - (n - 1) * s), "w*" + at(n));
      rec[5].equal(one.q(n), n * rational_pow(s, n - 1), "q*" + at(n));
    }
  }
  Denominators<RationalAlgebra> one(RationalAlgebra::at_one(), p);
  for (int ell = 1; ell <= f; ++ell)
    for (int j = 1; f + j <= N; ++j)
      rec[5].equal(one.wbar(f - ell, f + j),
                   rational_pow(a, ell) * rational_pow(b, j - 1) * (j + ell * (b / a) - (ell + j - 1) * b),
                   "wbar" + at(f - ell, f + j));
  for (int ell = 2; ell <= f; ++ell)
    for (int j = 0; f + j <= N; ++j)
      rec[5].equal(one.wbar(f + j, f - ell),
                   rational_pow(a, ell - 1) * rational_pow(b, j) * ((j + 1) + (ell - 1) * (b / a) - (ell + j - 1) * b),
                   "wbar" + at(f + j, f - ell));
  GfTable<RationalAlgebra> gone(RationalAlgebra::at_one(), p);
  for (int m = 0; m <= N; ++m)
    for (int n = 0; n <= N; ++n)
      if (std::abs(n - m) >= 2) rec[5].equal(gone.g(m, n), Rational(1), "g" + at(m, n));

  VerifyReport rep{"identities", p.describe(), {}};
  for (auto& r : rec) rep.checks.push_back(r.done());
  return rep;
}

VerifyReport verify_symmetry(const Rational& a, int nMax) {
  auto sr = symmetry_check(a, nMax);
  CheckResult c{"runs-symmetry", sr.cellsChecked, static_cast<int>(sr.failures.size()), ""};
  if (!sr.failures.empty()) {
    const auto& f = sr.failures.front();
    c.witness = "cell n=" + std::to_string(f.n) + " k=" + std::to_string(f.k) + " l=" + std::to_string(f.l) +
                ": " + to_string(f.lhs) + " vs " + to_string(f.rhs);
  }
  return {"symmetry", "a=" + to_string(a) + " nmax=" + std::to_string(nMax), {c}};
}

VerifyReport verify_rho(const ModelParams& p) {
  Recorder rec("rho-vs-chain");
  for (int m = 0; m <= p.N; ++m)
    for (int n = 0; n <= p.N; ++n)
      if (m != n) rec.equal(rho(m, n, p), rho_oracle(m, n, p), "rho" + at(m, n));
  return {"rho", p.describe(), {rec.done()}};
}

VerifyReport verify_oracle(const ModelParams& p, int lmax) {
  SeriesAlgebra alg{lmax};
  GfTable<SeriesAlgebra> t(alg, p);
  Recorder kn("excursion-law"), fp("first-passage"), me("meander");
  for (int n = 1; n <= p.N; ++n) {
    Series3 exact(lmax);
    for (const auto& [sig, w] : enum_excursions(p, lmax, n).mass) exact.add_term(w, sig.runs, sig.shortRuns, sig.steps);
    kn.equal(t.excursion_gf(n) * prob_height_at_most(n, p), exact, "K" + at(n));
  }
  for (int m = 0; m <= p.N; ++m)
    for (int n = 0; n <= p.N; ++n) {
      if (std::abs(n - m) < 2) continue;
      auto e = enum_first_passage(m, n, p, lmax);
      fp.equal(e.numerator * (1 / e.mass), t.g(m, n), "g" + at(m, n));
    }
  VerifyReport rep{"oracle", p.describe() + " lmax=" + std::to_string(lmax), {kn.done(), fp.done()}};
  if (p.f >= 3) {
    auto e = enum_meander(p, lmax);
    me.equal(e.numerator * (1 / e.mass), t.meander(), "meander");
    rep.checks.push_back(me.done());
  }
  return rep;
}

VerifyReport verify_limits(double a) {
  using C = std::complex<double>;
  VerifyReport rep{"limits", "a=" + std::to_string(a), {}};

  Recorder dens("special-density");
  CfFunction cf = [a](double t) { return special_phi_hat(t, a); };
  double T = auto_truncation(cf, special_sigma(a));
  auto g = invert_cf(cf, XGrid{-25, 25, 2501}, T, 1e-3);
  dens.close("mean from cf derivative", g.mean, -(1 - 2 * a) * (1 - 2 * a), 1e-5);
  dens.close("mean from grid", g.gridMean, g.mean, 1e-5);
  dens.close("total mass", g.integral, 1.0, 1e-4);
  dens.truth(g.maxImagResidue < 1e-8, "imaginary residue " + std::to_string(g.maxImagResidue));
  double minValue = 0;
  for (double v : g.values) minValue = std::min(minValue, v);
  dens.truth(minValue >= -1e-9, "negative density " + std::to_string(minValue));
  if (std::abs(a - 0.25) < 1e-15) dens.close("argmax", g.argmax, -0.131619, 1e-3);
  rep.checks.push_back(dens.done());

  Recorder sech("sech-squared-inversion");
  auto base = invert_cf([](double t) { return t == 0 ? C(1) : C(t / std::sinh(t)); }, XGrid{-8, 8, 801}, 40, 1e-3);
  double err = 0;
  for (std::size_t i = 0; i < base.xs.size(); ++i) {
    double exact = std::numbers::pi / 4 / std::pow(std::cosh(std::numbers::pi * base.xs[i] / 2), 2);
    err = std::max(err, std::abs(base.values[i] - exact));
  }
  sech.close("max grid error", err, 0.0, 1e-6);
  rep.checks.push_back(sech.done());

  Recorder hom("homogeneous-reductions");
  const double A1 = std::sqrt(a / (1 - a));
  for (double eta : {0.1, 0.5, 0.9}) {
    auto lp = LimitParams::make(a, a, eta);
    for (double t : {-4.0, -1.5, -0.3, 0.2, 0.7, 1.0, 2.5, 6.0}) {
      std::string where = "eta=" + std::to_string(eta) + " t=" + std::to_string(t);
      hom.close(where + " phi", std::abs(phi_hat(t, lp) - A1 * t / std::sinh(A1 * t)), 0.0, 1e-12);
      hom.close(where + " xcal", std::abs(xcal_cf(t, lp) - std::tanh(A1 * t) / (A1 * t)), 0.0, 1e-12);
      hom.close(where + " joint", std::abs(joint_cf_homog(t, t, a) - t / std::sinh(t)), 0.0, 1e-12);
    }
  }
  rep.checks.push_back(hom.done());
  return rep;
}

}  // namespace ruin
