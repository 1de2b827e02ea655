#include <tuple>
#include <vector>

#include "doctest.h"
#include "ruin/errors.hpp"
#include "ruin/ruin.hpp"

using namespace ruin;

namespace {

std::vector<ModelParams> parameter_sets() {
  return {ModelParams::make(Rational(1, 3), Rational(3, 5), 3, 8),
          ModelParams::make(Rational(2, 5), Rational(2, 5), 4, 9),
          ModelParams::make(Rational(4, 5), Rational(1, 4), 5, 10),
          ModelParams::make(Rational(1, 2), Rational(2, 3), 1, 6),
          ModelParams::make(Rational(3, 7), Rational(1, 6), 2, 7)};
}

}  // namespace

TEST_CASE("pi closed forms") {
  ModelParams hom = ModelParams::make(Rational(2, 7), Rational(2, 7), 3, 9);
  for (int m = 0; m <= 9; ++m)
    for (int n = 0; n <= 9; ++n)
      if (m != n) CHECK(pi_value(m, n, hom) == std::abs(n - m) - (std::abs(n - m) - 1) * hom.a);
  ModelParams p = ModelParams::make(Rational(1, 3), Rational(3, 5), 4, 9);
  const Rational &a = p.a, &b = p.b;
  CHECK(pi_value(p.f - 1, p.f + 1, p) == 1 + b / a - b);
  for (int m = 0; m <= p.f - 2; ++m)
    for (int n = p.f; n + 1 <= p.N; ++n) CHECK(pi_value(m + 1, n + 1, p) == pi_value(n, m, p));
  CHECK_THROWS_AS(pi_value(2, 2, p), RuinError);
  CHECK_THROWS_AS(pi_value(0, 10, p), RuinError);
}

TEST_CASE("rho special values") {
  ModelParams p = ModelParams::make(Rational(1, 3), Rational(3, 5), 4, 9);
  const Rational &a = p.a, &b = p.b;
  for (int m = 0; m < p.N; ++m) {
    CHECK(rho(m, m + 1, p) == Rational(1, 2));
    CHECK(rho(m + 1, m, p) == Rational(1, 2));
  }
  CHECK(rho(p.f - 1, p.f + 1, p) == Rational(1, 2) * b / (1 - (1 - a) * (1 - b)));
  for (int m = 0; m + 2 <= p.N; ++m) {
    Rational g0 = p.gamma(m), g1 = p.gamma(m + 1);
    CHECK(rho(m, m + 2, p) == Rational(1, 2) * (1 - g1) / (1 - g0 * g1));
  }
  ModelParams fair = ModelParams::make(Rational(1, 2), Rational(1, 2), 2, 8);
  for (int ell = 1; ell <= 8; ++ell)
    CHECK(rho(0, ell, fair) == Rational(1, 2) / (ell - Rational(ell - 1, 2)));
}

TEST_CASE("rho matches the absorbing-chain solve on every admissible pair") {
  for (const auto& p : parameter_sets()) {
    CAPTURE(p.describe());
    for (int m = 0; m <= p.N; ++m)
      for (int n = 0; n <= p.N; ++n)
        if (m != n) {
          CAPTURE(m);
          CAPTURE(n);
          CHECK(rho(m, n, p) == rho_oracle(m, n, p));
        }
  }
}

TEST_CASE("u factors and product recurrences") {
  for (const auto& p : parameter_sets()) {
    CAPTURE(p.describe());
    for (int m = 0; m + 1 <= p.N; ++m)
      CHECK(u_factor(m, m + 1, p) == 1 / (1 - p.gamma(m) * p.gamma(m + 1)));
    for (int m = 0; m <= p.N; ++m)
      for (int n = m + 1; n + 1 <= p.N; ++n) {
        Rational prod = 1;
        for (int j = m; j <= n - 1; ++j) prod *= u_factor(j, n, p);
        CHECK(rho(m, n + 1, p) == (1 - p.gamma(n)) * rho(m, n, p) * prod);
        CHECK(u_factor(m, n, p) > 1);
      }
    for (int m = 1; m <= p.N; ++m)
      for (int n = m + 1; n <= p.N; ++n) {
        Rational prod = 1;
        for (int j = m + 1; j <= n; ++j) prod *= u_factor(m, j, p);
        CHECK(rho(n, m - 1, p) == (1 - p.gamma(m)) * rho(n, m, p) * prod);
      }
    // Closed recurrences in ratio form.
    for (int m = 0; m <= p.N; ++m)
      for (int n = m + 2; n + 1 <= p.N; ++n)
        CHECK(rho(m, n + 1, p) ==
              rho(m, n, p) * rho(m + 1, n + 1, p) * u_factor(m, n, p) / rho(m + 1, n, p));
    for (int m = 1; m <= p.N; ++m)
      for (int n = m + 2; n <= p.N; ++n)
        CHECK(rho(n, m - 1, p) ==
              rho(n, m, p) * rho(n - 1, m - 1, p) * u_factor(m, n, p) / rho(n - 1, m, p));
  }
}

TEST_CASE("pi product identity across strata") {
  for (const auto& p : parameter_sets()) {
    const Rational ba = p.b / p.a;
    for (int ell = 1; ell <= p.f; ++ell)
      for (int j = 0; p.f + j <= p.N; ++j) {
        if (ell + j < 2) continue;
        int m = p.f - ell, n = p.f + j;
        Rational lhs = pi_value(m, n, p) * pi_value(n, m, p) - p.gamma(m) * p.gamma(n) * ba;
        CHECK(lhs == (j + 1 + ell * ba - (ell + j) * p.b) * pi_value(m + 1, n, p));
      }
  }
}

TEST_CASE("height distribution") {
  for (const auto& p : parameter_sets()) {
    CAPTURE(p.describe());
    auto hd = height_dist(p);
    CHECK(hd.pmf.at(1) == 1 - p.persistence(1));
    Rational cum = 0;
    for (int n = 1; n <= p.N; ++n) {
      cum += hd.pmf.at(n);
      CHECK(hd.pmf.at(n) == hd.tail.at(n) - hd.tail.at(n + 1));
      CHECK(hd.cdf.at(n) == cum);
      CHECK(hd.pmf.at(n) >= 0);
      CHECK(hd.pmf.at(n) <= 1);
    }
    CHECK(hd.cdf.at(p.N) < 1);
    // Height distribution from the exact chain: P(H >= n+1) = P(first step persists) * hit.
    for (int n = 1; n <= p.N; ++n)
      CHECK(hd.tail.at(n + 1) ==
            p.persistence(1) * band_hit_probability(2, 1, 1, n + 1, n + 1, p));
  }
  ModelParams hom = ModelParams::make(Rational(2, 7), Rational(2, 7), 3, 9);
  for (int n = 1; n <= 9; ++n)
    CHECK(prob_height_at_most(n, hom) == n * (1 - hom.a) / (n - (n - 1) * hom.a));
  ModelParams p = ModelParams::make(Rational(1, 3), Rational(3, 5), 3, 9);
  const Rational &a = p.a, &b = p.b;
  for (int n = p.f; n <= 12; ++n) {
    Rational inv = ((n + 1 - p.f) * a + (p.f - 1) * b - (n - 1) * a * b) /
                   ((n + 1 - p.f) * a + (p.f - 1) * b - n * a * b);
    CHECK(1 / prob_height_at_most(n, p) == inv);
  }
}

TEST_CASE("excursion count is geometric") {
  ModelParams p = ModelParams::make(Rational(1, 3), Rational(3, 5), 3, 6);
  Rational below = prob_height_at_most(p.N - 1, p);
  CHECK(m_count_pmf(0, p) == 1 - below);
  Rational partial = 0;
  for (int nu = 0; nu <= 20; ++nu) {
    partial += m_count_pmf(nu, p);
    CHECK(partial == 1 - rational_pow(below, nu + 1));
  }
}
