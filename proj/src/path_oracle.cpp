#include "ruin/path_oracle.hpp"

#include <cstdlib>
#include <tuple>

#include "ruin/errors.hpp"
#include "ruin/ruin.hpp"

namespace ruin {

PathSignature count_path_stats(const std::vector<int>& steps) {
  if (steps.empty()) throw RuinError(ErrorKind::EmptyPath, "no steps");
  PathSignature s;
  s.steps = static_cast<int>(steps.size());
  int level = 0, runLen = 0, prev = 0;
  auto close = [&] {
    if (runLen == 1) ++s.shortRuns;
    else if (runLen >= 2) ++s.longRuns;
  };
  for (int step : steps) {
    if (step != 1 && step != -1) throw RuinError(ErrorKind::ParseError, "steps must be +1 or -1");
    if (step != prev) {
      close();
      ++s.runs;
      runLen = 0;
    }
    ++runLen;
    prev = step;
    level += step;
    s.height = std::max(s.height, std::abs(level));
  }
  close();
  return s;
}

ExcursionSplit split_excursions(const std::vector<int>& steps) {
  ExcursionSplit out;
  std::vector<int> cur;
  int level = 0;
  for (int step : steps) {
    cur.push_back(step);
    level += step;
    if (level == 0) {
      out.excursions.push_back(std::move(cur));
      cur.clear();
    }
  }
  out.tail = std::move(cur);
  return out;
}

namespace {

// Walk state between steps; steps taken is implicit in the layer.
struct WalkState {
  int level, dir, runLen, runs, shortRuns, longRuns, height;
  auto operator<=>(const WalkState&) const = default;
};

using Layer = std::map<WalkState, Rational>;

// Advances one step in each direction, invoking `emit` on the successor state.
template <class Emit>
void advance(const Layer& layer, const ModelParams& p, std::int64_t& edges, std::int64_t budget, Emit&& emit) {
  for (const auto& [s, w] : layer) {
    const Rational& keep = p.persistence(s.level);
    for (int turn = 0; turn < 2; ++turn) {
      if (++edges > budget) throw RuinError(ErrorKind::BudgetExceeded, "enumeration edge budget exhausted");
      WalkState t = s;
      Rational wt = w * (turn ? 1 - keep : keep);
      if (turn) {
        if (s.runLen == 1) ++t.shortRuns;
        else ++t.longRuns;
        ++t.runs;
        t.dir = -s.dir;
        t.runLen = 1;
      } else {
        t.runLen = 2;
      }
      t.level += t.dir;
      t.height = std::max(t.height, t.level);
      emit(t, wt);
    }
  }
}

void close_run(WalkState& s) {
  if (s.runLen == 1) ++s.shortRuns;
  else ++s.longRuns;
}

void check_length(int maxLength) {
  if (maxLength > kMaxEnumerationLength)
    throw RuinError(ErrorKind::BudgetExceeded, "path length above the enumeration guard");
  if (maxLength < 0) throw RuinError(ErrorKind::IndexOutOfRange, "negative length");
}

}  // namespace

JointDist enum_excursions(const ModelParams& p, int maxLength, int heightCap, std::int64_t edgeBudget) {
  check_length(maxLength);
  if (heightCap < 1 || heightCap > p.N) throw RuinError(ErrorKind::IndexOutOfRange, "height cap must lie in [1, N]");
  JointDist dist;
  std::int64_t edges = 0;
  Layer layer;
  // Positive side; the mirror image carries the same weight.
  if (maxLength >= 2) layer[{1, 1, 1, 1, 0, 0, 1}] = Rational(1, 2);
  for (int steps = 1; steps < maxLength && !layer.empty(); ++steps) {
    Layer next;
    advance(layer, p, edges, edgeBudget, [&](WalkState t, const Rational& w) {
      if (t.height > heightCap) return;
      if (t.level == 0) {
        close_run(t);
        PathSignature sig{t.runs, t.shortRuns, t.longRuns, steps + 1, t.height};
        dist.mass[sig] += 2 * w;
        dist.total += 2 * w;
        return;
      }
      next[t] += w;
    });
    layer = std::move(next);
  }
  return dist;
}

FirstPassageEnum enum_first_passage(int m, int n, const ModelParams& p, int maxLength, std::int64_t edgeBudget) {
  check_length(maxLength);
  if (m < 0 || n < 0 || m > p.N || n > p.N)
    throw RuinError(ErrorKind::IndexOutOfRange, "levels must lie in [0, N]");
  if (std::abs(n - m) < 2) throw RuinError(ErrorKind::TooClose, "first passage needs |n - m| >= 2");
  const int d = n > m ? 1 : -1;
  const int lo = std::min(m, n), hi = std::max(m, n);
  FirstPassageEnum out{Series3(maxLength), 0};
  const Rational start = Rational(1, 2) * p.persistence(m + d);
  out.mass = start * band_hit_probability(m + 2 * d, d, lo, hi, n, p);

  auto record = [&](WalkState t, int steps, const Rational& w) {
    close_run(t);
    out.numerator.add_term(w, t.runs, t.shortRuns, steps);
  };
  std::int64_t edges = 0;
  Layer layer;
  WalkState s0{m + 2 * d, d, 2, 1, 0, 0, 0};
  if (maxLength >= 2) {
    if (s0.level == n) record(s0, 2, start);
    else layer[s0] = start;
  }
  for (int steps = 2; steps < maxLength && !layer.empty(); ++steps) {
    Layer next;
    advance(layer, p, edges, edgeBudget, [&](WalkState t, const Rational& w) {
      if (t.level < lo || t.level > hi) return;
      t.height = 0;
      if (t.level == n) return record(t, steps + 1, w);
      next[t] += w;
    });
    layer = std::move(next);
  }
  return out;
}

FirstPassageEnum enum_meander(const ModelParams& p, int maxLength, std::int64_t edgeBudget) {
  check_length(maxLength);
  FirstPassageEnum out{Series3(maxLength), 0};
  out.mass = Rational(1, 2) * band_hit_probability(1, 1, 1, p.N, p.N, p);
  std::int64_t edges = 0;
  Layer layer;
  if (maxLength >= 1) layer[{1, 1, 1, 1, 0, 0, 1}] = Rational(1, 2);
  for (int steps = 1; steps < maxLength && !layer.empty(); ++steps) {
    Layer next;
    advance(layer, p, edges, edgeBudget, [&](WalkState t, const Rational& w) {
      if (t.level < 1) return;
      if (t.level == p.N) {
        close_run(t);
        out.numerator.add_term(w, t.runs, t.shortRuns, steps + 1);
        return;
      }
      next[t] += w;
    });
    layer = std::move(next);
  }
  return out;
}

SymmetryReport symmetry_check(const Rational& a, int nMax) {
  if (nMax < 2 || nMax > 12) throw RuinError(ErrorKind::IndexOutOfRange, "nMax must lie in [2, 12]");
  using Cell = std::tuple<int, int, int>;  // (L, R, U)
  auto marginal = [&](const Rational& persist) {
    ModelParams p = ModelParams::make(persist, persist, 1, nMax + 1);
    std::map<Cell, Rational> out;
    for (const auto& [sig, w] : enum_excursions(p, 2 * nMax, nMax).mass)
      out[{sig.steps, sig.runs, sig.longRuns}] += w;
    return out;
  };
  const auto pa = marginal(a), pb = marginal(1 - a);
  std::map<Cell, std::pair<Rational, Rational>> cells;  // keyed by (L, R, U) on the a side
  for (const auto& [c, w] : pa) cells[c].first = (1 - a) * w;
  for (const auto& [c, w] : pb) {
    auto [L, R, U] = c;
    cells[{L, L - R, U}].second = a * w;
  }
  SymmetryReport rep;
  for (const auto& [c, v] : cells) {
    auto [L, R, U] = c;
    SymmetryCell cell{L / 2, R / 2, U, v.first, v.second};
    if (cell.n == 1) {
      rep.shortestCells.push_back(cell);
      continue;
    }
    ++rep.cellsChecked;
    if (v.first != v.second) rep.failures.push_back(cell);
  }
  return rep;
}

void write_csv(std::ostream& os, const JointDist& dist) {
  os << "runs,shortRuns,longRuns,steps,height,probability_num,probability_den\n";
  for (const auto& [s, w] : dist.mass)
    os << s.runs << ',' << s.shortRuns << ',' << s.longRuns << ',' << s.steps << ',' << s.height << ','
       << numerator(w) << ',' << denominator(w) << '\n';
}

}  // namespace ruin
