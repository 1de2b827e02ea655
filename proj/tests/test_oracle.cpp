#include <sstream>
#include <string>

#include "doctest.h"
#include "ruin/genfun.hpp"
#include "ruin/path_oracle.hpp"

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
const char* kSamplePassage = "D D U D U U D D D D U D U U U D U D D D U U D D U D D";

// Series sum_{sig} mass * r^R y^V z^L.
Series3 as_series(const JointDist& d, int degree) {
  Series3 s(degree);
  for (const auto& [sig, w] : d.mass) s.add_term(w, sig.runs, sig.shortRuns, sig.steps);
  return s;
}

}  // namespace

TEST_CASE("path statistics of small and illustrated walks") {
  auto ud = count_path_stats({1, -1});
  CHECK(ud.runs == 2);
  CHECK(ud.shortRuns == 2);
  CHECK(ud.longRuns == 0);
  CHECK(ud.steps == 2);
  CHECK(ud.height == 1);
  CHECK_THROWS_AS(count_path_stats({}), RuinError);

  auto passage = count_path_stats(parse_steps(kSamplePassage));
  CHECK(passage.runs == 15);
  CHECK(passage.shortRuns == 7);
  CHECK(passage.longRuns == 8);
  CHECK(passage.steps == 27);
  CHECK(passage.height == 5);

  auto split = split_excursions(parse_steps(kSampleWalk));
  REQUIRE(split.excursions.size() == 4);
  const int runs[] = {2, 2, 2, 4}, shorts[] = {0, 2, 0, 2};
  int R = 0, V = 0, L = 0;
  for (int i = 0; i < 4; ++i) {
    auto s = count_path_stats(split.excursions[i]);
    CHECK(s.runs == runs[i]);
    CHECK(s.shortRuns == shorts[i]);
    R += s.runs;
    V += s.shortRuns;
    L += s.steps;
  }
  CHECK(R == 10);
  CHECK(V == 4);
  CHECK(L == 18);
  auto meander = count_path_stats(split.tail);
  CHECK(meander.runs == 3);
  CHECK(meander.shortRuns == 1);
  CHECK(meander.steps == 6);
  CHECK(meander.height == 4);
}

TEST_CASE("excursion enumeration: small cells and signature invariants") {
  Rational a(2, 7);
  ModelParams p = ModelParams::make(a, a, 2, 6);
  auto d = enum_excursions(p, 12, 6);
  CHECK(d.mass.at({2, 2, 0, 2, 1}) == 1 - a);
  Rational l4r2 = 0;
  for (const auto& [sig, w] : d.mass) {
    CHECK(w > 0);
    CHECK(sig.shortRuns + sig.longRuns == sig.runs);
    CHECK(sig.shortRuns + 2 * sig.longRuns <= sig.steps);
    CHECK(sig.steps % 2 == 0);
    CHECK(sig.runs % 2 == 0);
    if (sig.steps == 4 && sig.runs == 2) l4r2 += w;
  }
  CHECK(l4r2 == a * a * (1 - a));
  CHECK_THROWS_AS(enum_excursions(p, 32, 6), RuinError);
  CHECK_THROWS_AS(enum_excursions(p, 20, 6, 1000), RuinError);
}

TEST_CASE("excursion mass approaches the height distribution from below") {
  ModelParams p = ModelParams::make(Rational(1, 3), Rational(3, 5), 3, 5);
  Rational limit = prob_height_at_most(p.N, p), prev = 0;
  for (int L = 2; L <= 20; L += 2) {
    auto d = enum_excursions(p, L, p.N);
    CHECK(d.total >= prev);
    CHECK(d.total < limit);
    prev = d.total;
  }
  CHECK(limit - prev < Rational(1, 20));
}

TEST_CASE("K_n coefficients equal enumerated excursion masses") {
  const int Lmax = 16;
  for (const auto& p : {ModelParams::make(Rational(1, 3), Rational(3, 5), 3, 5),
                        ModelParams::make(Rational(4, 5), Rational(1, 4), 2, 5),
                        ModelParams::make(Rational(2, 5), Rational(2, 3), 1, 4),
                        ModelParams::make(Rational(3, 7), Rational(5, 6), 4, 6)}) {
    CAPTURE(p.describe());
    SeriesAlgebra alg{Lmax};
    GfTable<SeriesAlgebra> t(alg, p);
    for (int n = 1; n <= p.N; ++n) {
      CAPTURE(n);
      auto expect = as_series(enum_excursions(p, Lmax, n), Lmax);
      CHECK(t.excursion_gf(n) * prob_height_at_most(n, p) == expect);
    }
  }
}

TEST_CASE("excursions of fixed height match the height decomposition") {
  const int Lmax = 16;
  ModelParams p = ModelParams::make(Rational(1, 3), Rational(3, 5), 3, 6);
  GfTable<SeriesAlgebra> t(SeriesAlgebra{Lmax}, p);
  auto hd = height_dist(p);
  for (int n = 1; n < p.N; ++n) {
    CAPTURE(n);
    JointDist exact;
    for (const auto& [sig, w] : enum_excursions(p, Lmax, n).mass)
      if (sig.height == n) exact.mass[sig] += w;
    CHECK(t.excursion_given_height(n) * hd.pmf.at(n) == as_series(exact, Lmax));
  }
}

TEST_CASE("first-passage enumeration against the closed forms") {
  const int Lmax = 16;
  SeriesAlgebra alg{Lmax};
  ModelParams first = ModelParams::make(Rational(1, 3), Rational(3, 5), 3, 5);
  auto up = enum_first_passage(0, 2, first, Lmax);
  CHECK(up.numerator == Series3::monomial(up.mass, 1, 0, 2, Lmax));
  auto down = enum_first_passage(2, 0, first, Lmax);
  CHECK(down.numerator == Series3::monomial(down.mass, 1, 0, 2, Lmax));
  CHECK(up.mass == Rational(1, 2) * first.a);

  for (const auto& p : {first, ModelParams::make(Rational(4, 5), Rational(1, 4), 2, 6),
                        ModelParams::make(Rational(1, 2), Rational(1, 2), 2, 5),
                        ModelParams::make(Rational(2, 5), Rational(2, 3), 4, 7)}) {
    CAPTURE(p.describe());
    GfTable<SeriesAlgebra> t(alg, p);
    for (int m = 0; m <= p.N; ++m)
      for (int n = 0; n <= p.N; ++n) {
        if (std::abs(n - m) < 2) continue;
        CAPTURE(m);
        CAPTURE(n);
        auto e = enum_first_passage(m, n, p, Lmax);
        CHECK(e.numerator * (1 / e.mass) == t.g(m, n));
        CHECK(e.numerator.eval_exact(1, 1, 1) <= e.mass);
      }
  }
}

TEST_CASE("meander generating function against enumeration") {
  const int Lmax = 18;
  for (const auto& p : {ModelParams::make(Rational(1, 3), Rational(3, 5), 3, 5),
                        ModelParams::make(Rational(4, 5), Rational(1, 4), 3, 6),
                        ModelParams::make(Rational(2, 5), Rational(2, 3), 4, 6)}) {
    CAPTURE(p.describe());
    GfTable<SeriesAlgebra> t(SeriesAlgebra{Lmax}, p);
    auto e = enum_meander(p, Lmax);
    CHECK(e.numerator * (1 / e.mass) == t.meander());
  }
}

TEST_CASE("runs symmetry between a and 1-a") {
  for (Rational a : {Rational(1, 3), Rational(1, 2), Rational(4, 5)}) {
    CAPTURE(a);
    auto rep = symmetry_check(a, 7);
    CHECK(rep.ok());
    CHECK(rep.cellsChecked > 20);
    bool shortestDiffers = false;
    for (const auto& c : rep.shortestCells) shortestDiffers |= c.lhs != c.rhs;
    CHECK(shortestDiffers);
  }
  // Fair case: runs and steps-minus-runs are equidistributed for n >= 2.
  ModelParams fair = ModelParams::make(Rational(1, 2), Rational(1, 2), 1, 9);
  std::map<std::pair<int, int>, Rational> cell;
  for (const auto& [sig, w] : enum_excursions(fair, 16, 8).mass) cell[{sig.steps, sig.runs}] += w;
  for (const auto& [key, w] : cell) {
    if (key.first < 4) continue;
    CHECK(w == cell[{key.first, key.first - key.second}]);
  }
}

TEST_CASE("csv export") {
  ModelParams p = ModelParams::make(Rational(1, 3), Rational(3, 5), 2, 4);
  std::ostringstream os;
  write_csv(os, enum_excursions(p, 4, 4));
  std::string text = os.str();
  CHECK(text.rfind("runs,shortRuns,longRuns,steps,height,probability_num,probability_den\n", 0) == 0);
  CHECK(text.find("2,2,0,2,1,2,3\n") != std::string::npos);
}
