#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ruin/genfun.hpp"
#include "ruin/simulator.hpp"

using namespace ruin;

namespace {

std::vector<int> parse_steps(const std::string& s) {
  std::vector<int> out;
  for (char c : s) {
    if (c == 'U') out.push_back(1);
    if (c == 'D') out.push_back(-1);
  }
  return out;
}

const char* kSampleWalk = "D D U U D U U U U D D D D D U D U U U U U D U U";

struct MeanEstimate {
  std::complex<double> mean;
  double seRe, seIm;
};

template <class F>
MeanEstimate complex_mean(const std::vector<TrajectoryStats>& rows, F&& f) {
  std::complex<double> sum = 0;
  double sqRe = 0, sqIm = 0;
  for (const auto& r : rows) {
    auto v = f(r);
    sum += v;
    sqRe += v.real() * v.real();
    sqIm += v.imag() * v.imag();
  }
  const double n = static_cast<double>(rows.size());
  auto m = sum / n;
  return {m, std::sqrt((sqRe / n - m.real() * m.real()) / (n - 1)),
          std::sqrt((sqIm / n - m.imag() * m.imag()) / (n - 1))};
}

}  // namespace

TEST_CASE("replay of the illustrated walk") {
  auto ts = stats_from_steps(parse_steps(kSampleWalk), 4);
  CHECK(ts.excursionCount == 4);
  CHECK(ts.lv.R == 10);
  CHECK(ts.lv.V == 4);
  CHECK(ts.lv.L == 18);
  CHECK(ts.lastVisitEpoch == 18);
  CHECK(ts.meander.R == 3);
  CHECK(ts.meander.V == 1);
  CHECK(ts.meander.L == 6);
  CHECK(ts.absorption_time() == 24);
  CHECK(ts.lv.V + ts.lv.U == ts.lv.R);
  CHECK(ts.meander.V + ts.meander.U == ts.meander.R);

  ModelParams half = ModelParams::make(Rational(1, 2), Rational(1, 2), 2, 4);
  CHECK(scaled_statistic(ts, half, {StatKind::X}).value[0] == doctest::Approx(-0.5));
  CHECK(scaled_statistic(ts, half, {StatKind::Xzeta, 1.0}).value[0] ==
        doctest::Approx(scaled_statistic(ts, half, {StatKind::X}).value[0]));
  CHECK(scaled_statistic(TrajectoryStats{}, half, {StatKind::Xcal}).value[0] == 0.0);

  auto extended = parse_steps(kSampleWalk);
  extended.push_back(1);
  CHECK_THROWS_AS(stats_from_steps(extended, 4), RuinError);
  CHECK_THROWS_AS(stats_from_steps({}, 4), RuinError);
}

TEST_CASE("a run through 0 is split between excursions") {
  // Down to 0 then straight on: |X| reflects, so the two pieces are separate runs.
  auto ts = stats_from_steps({1, -1, -1, 1, 1, 1}, 2);
  CHECK(ts.excursionCount == 2);
  CHECK(ts.lv.R == 4);
  CHECK(ts.lv.V == 4);
  CHECK(ts.meander.R == 1);
  CHECK(ts.meander.U == 1);
  CHECK(ts.meander.L == 2);
}

TEST_CASE("scaled statistics: restricted kinds and the joint reductions") {
  ModelParams het = ModelParams::make(Rational(1, 3), Rational(3, 5), 3, 6);
  TrajectoryStats ts = simulate_trajectory(het, 11, 0);
  CHECK_THROWS_AS(scaled_statistic(ts, het, {StatKind::Y1Y2}), RuinError);
  CHECK_THROWS_AS(scaled_statistic(ts, het, {StatKind::Z1Z2}), RuinError);
  CHECK_THROWS_AS(scaled_statistic(ts, het, {StatKind::Xzeta, 0.5}), RuinError);

  // At a = b, s Z1 + t Z2 with s = -a t/(1-a) is t times the last-visit statistic.
  ModelParams hom = ModelParams::make(Rational(1, 3), Rational(1, 3), 3, 12);
  const double a = 1.0 / 3;
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto s = simulate_trajectory(hom, 5, i);
    auto z = scaled_statistic(s, hom, {StatKind::Z1Z2});
    auto xc = scaled_statistic(s, hom, {StatKind::Xcal});
    CHECK(z.dim == 2);
    CHECK(-a / (1 - a) * z.value[0] + z.value[1] == doctest::Approx(xc.value[0]).epsilon(1e-12));
    // Y1 + Y2 with weights (s, t) = ((1 - a - zeta) t/(1 - a), t) gives X_zeta.
    const double zeta = 0.3;
    auto y = scaled_statistic(s, hom, {StatKind::Y1Y2});
    auto xz = scaled_statistic(s, hom, {StatKind::Xzeta, zeta});
    CHECK((1 - a - zeta) / (1 - a) * y.value[0] + y.value[1] == doctest::Approx(xz.value[0]).epsilon(1e-12));
  }
}

TEST_CASE("trajectories are reproducible and independent of scheduling") {
  ModelParams p = ModelParams::make(Rational(1, 4), Rational(3, 4), 5, 20);
  CHECK(simulate_trajectory(p, 42, 7) == simulate_trajectory(p, 42, 7));
  CHECK_FALSE(simulate_trajectory(p, 42, 7) == simulate_trajectory(p, 43, 7));
  auto serial = simulate_batch(p, 9, 600, 1);
  auto parallel = simulate_batch(p, 9, 600, 3);
  CHECK(serial == parallel);
  CHECK(serial[123] == simulate_trajectory(p, 9, 123));
  for (const auto& t : serial) {
    CHECK(t.lv.L == t.lastVisitEpoch);
    CHECK(t.meander.L >= p.N);
    CHECK(t.lv.V + t.lv.U == t.lv.R);
    CHECK(t.meander.V + t.meander.U == t.meander.R);
  }
  CHECK_THROWS_AS(simulate_trajectory(p, 1, 0, 5), RuinError);
}

TEST_CASE("empirical characteristic function") {
  std::vector<ScaledSample> xs(10);
  for (auto& x : xs) x.value[0] = 0.7;
  auto e0 = empirical_cf(xs, 0.0);
  CHECK(e0.value == std::complex<double>(1.0, 0.0));
  CHECK(e0.stderrRe == 0.0);
  CHECK(e0.stderrIm == 0.0);
  auto e = empirical_cf(xs, 2.0);
  CHECK(std::abs(e.value - std::exp(std::complex<double>(0, 1.4))) < 1e-15);
  CHECK_THROWS_AS(empirical_cf(std::span(xs).first(1), 1.0), RuinError);
  CHECK_THROWS_AS(empirical_cf(xs, 1.0, 1.0), RuinError);
}

TEST_CASE("simulated excursion count is geometric") {
  ModelParams p = ModelParams::make(Rational(1, 3), Rational(3, 5), 3, 6);
  const std::int64_t n = 100000;
  auto rows = simulate_batch(p, 2024, n);
  std::map<std::int64_t, double> freq;
  for (const auto& r : rows) freq[r.excursionCount] += 1;
  int checked = 0;
  for (int nu = 0; nu < 40; ++nu) {
    double prob = to_double(m_count_pmf(nu, p));
    if (prob * n < 20) continue;
    double se = std::sqrt(prob * (1 - prob) / n);
    CAPTURE(nu);
    CHECK(std::abs(freq[nu] / n - prob) < 3 * se);
    ++checked;
  }
  CHECK(checked >= 5);
}

TEST_CASE("meander and last-visit generating functions against simulation") {
  ModelParams p = ModelParams::make(Rational(1, 3), Rational(3, 5), 3, 5);
  auto rows = simulate_batch(p, 77, 200000);

  const std::complex<double> r(0.9), y(0.9), z(0.95);
  GfTable<ComplexAlgebra> t(ComplexAlgebra{r, y, z}, p);
  std::complex<double> exact = t.meander();
  auto est = complex_mean(rows, [&](const TrajectoryStats& s) {
    return std::pow(r, s.meander.R) * std::pow(y, s.meander.V) * std::pow(z, s.meander.L);
  });
  CHECK(std::abs(est.mean.real() - exact.real()) < 4 * est.seRe);
  CHECK(std::abs(exact.imag()) < 1e-12);

  // Complex evaluation points exercise the phase of the generating function.
  const std::complex<double> rc = std::polar(0.95, 0.3), yc(0.95), zc = std::polar(0.97, -0.2), uc(0.9);
  std::complex<double> lv = last_visit_gf(p, rc, yc, zc, uc);
  auto lvEst = complex_mean(rows, [&](const TrajectoryStats& s) {
    return std::pow(rc, s.lv.R) * std::pow(yc, s.lv.V) * std::pow(zc, s.lv.L) *
           std::pow(uc, s.excursionCount);
  });
  CHECK(std::abs(lvEst.mean.real() - lv.real()) < 4 * lvEst.seRe);
  CHECK(std::abs(lvEst.mean.imag() - lv.imag()) < 4 * lvEst.seIm);
  std::complex<double> lvReal = last_visit_gf(p, 0.95, 0.95, 0.97, 0.9);
  auto lvRealEst = complex_mean(rows, [&](const TrajectoryStats& s) {
    return std::complex<double>(std::pow(0.95, s.lv.R) * std::pow(0.95, s.lv.V) * std::pow(0.97, s.lv.L) *
                                std::pow(0.9, s.excursionCount));
  });
  CHECK(std::abs(lvRealEst.mean.real() - lvReal.real()) < 4 * lvRealEst.seRe);
}

TEST_CASE("trajectory csv") {
  std::ostringstream os;
  std::vector<TrajectoryStats> rows{stats_from_steps(parse_steps(kSampleWalk), 4)};
  write_trajectory_csv(os, rows, 5);
  CHECK(os.str() == "seed_index,M,R,V,L,Rp,Vp,Lp,lastVisit,absorptionTime\n5,4,10,4,18,3,1,6,18,24\n");
}
