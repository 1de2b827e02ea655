#include "ruin/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "ruin/errors.hpp"

namespace ruin {

namespace {

// Incremental run bookkeeping. A visit to 0 closes the current excursion, so runs
// are never merged across it.
class Tracker {
 public:
  explicit Tracker(int N) : N_(N) {}

  // Returns true once |X| reaches N.
  bool step(int s) {
    if (s != runDir_) {
      close_run();
      ++seg_.R;
      runDir_ = s;
    }
    ++runLen_;
    ++seg_.L;
    ++time_;
    level_ += s;
    if (level_ == 0) {
      close_run();
      add(out_.lv, seg_);
      seg_ = {};
      runDir_ = 0;
      ++out_.excursionCount;
      out_.lastVisitEpoch = time_;
    } else if (level_ == N_ || level_ == -N_) {
      finish();
      return true;
    }
    return false;
  }

  void finish() {
    close_run();
    out_.meander = seg_;
    seg_ = {};
  }

  int level() const { return level_; }
  std::int64_t time() const { return time_; }
  const TrajectoryStats& stats() const { return out_; }

 private:
  void close_run() {
    if (runLen_ == 1) ++seg_.V;
    else if (runLen_ >= 2) ++seg_.U;
    runLen_ = 0;
  }
  static void add(RunTotals& to, const RunTotals& from) {
    to.R += from.R;
    to.V += from.V;
    to.U += from.U;
    to.L += from.L;
  }

  int N_;
  int level_ = 0;
  int runDir_ = 0;
  std::int64_t runLen_ = 0;
  std::int64_t time_ = 0;
  RunTotals seg_;
  TrajectoryStats out_;
};

// floor(q * 2^64) for q in (0, 1), so that a uniform 64-bit draw falls below it with
// probability q up to 2^-64.
std::uint64_t threshold(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
  BigInt scaled = (num << 64) / den;
  return scaled.convert_to<std::uint64_t>();
}

}  // namespace

TrajectoryStats simulate_trajectory(const ModelParams& p, std::uint64_t seed, std::uint64_t index,
                                    std::int64_t stepCap) {
  std::vector<std::uint64_t> keep(p.N);
  for (int k = 0; k < p.N; ++k) keep[k] = threshold(p.persistence(k));

  std::seed_seq key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 gen(key);

  Tracker tr(p.N);
  int prev = (gen() >> 63) ? 1 : -1;
  if (tr.step(prev)) return tr.stats();
  for (;;) {
    if (tr.time() >= stepCap)
      throw RuinError(ErrorKind::StepCapExceeded, "trajectory " + std::to_string(index) + " exceeded " +
                                                      std::to_string(stepCap) + " steps");
    int lvl = tr.level() < 0 ? -tr.level() : tr.level();
    if (gen() >= keep[lvl]) prev = -prev;
    if (tr.step(prev)) return tr.stats();
  }
}

TrajectoryStats stats_from_steps(const std::vector<int>& steps, int N) {
  if (steps.empty()) throw RuinError(ErrorKind::EmptyPath, "no steps");
  if (N < 1) throw RuinError(ErrorKind::InvalidParams, "N must be positive");
  Tracker tr(N);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] != 1 && steps[i] != -1) throw RuinError(ErrorKind::ParseError, "steps must be +1 or -1");
    if (tr.step(steps[i])) {
      if (i + 1 != steps.size()) throw RuinError(ErrorKind::IndexOutOfRange, "steps continue past absorption");
      return tr.stats();
    }
  }
  tr.finish();
  return tr.stats();
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RUIN_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<TrajectoryStats> simulate_batch(const ModelParams& p, std::uint64_t seed, std::int64_t count,
                                            int threads) {
  if (count < 0) throw RuinError(ErrorKind::IndexOutOfRange, "negative sample count");
  std::vector<TrajectoryStats> out(static_cast<std::size_t>(count));
  const int workers = static_cast<int>(std::min<std::int64_t>(worker_count(threads), std::max<std::int64_t>(count, 1)));
  constexpr std::int64_t kChunk = 256;
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failureMutex;
  auto work = [&] {
    for (;;) {
      std::int64_t begin = next.fetch_add(kChunk);
      if (begin >= count) return;
      std::int64_t end = std::min(count, begin + kChunk);
      try {
        for (std::int64_t i = begin; i < end; ++i)
          out[static_cast<std::size_t>(i)] = simulate_trajectory(p, seed, static_cast<std::uint64_t>(i));
      } catch (...) {
        std::lock_guard lock(failureMutex);
        if (!failure) failure = std::current_exception();
        next = count;
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

ScaledSample scaled_statistic(const TrajectoryStats& ts, const ModelParams& p, StatSpec spec) {
  const double a = to_double(p.a), b = to_double(p.b), N = p.N;
  const bool restricted = spec.kind == StatKind::Y1Y2 || spec.kind == StatKind::Xzeta || spec.kind == StatKind::Z1Z2;
  if (restricted && !p.homogeneous())
    throw RuinError(ErrorKind::HomogeneousOnly, "this statistic is defined for a = b only");
  const double ga = 1 - a, gb = 1 - b;
  const auto& m = ts.meander;
  const auto& l = ts.lv;
  const double M = static_cast<double>(ts.excursionCount);
  ScaledSample s;
  switch (spec.kind) {
    case StatKind::X:
      s.value[0] = (m.L - (2 - a - b) / (ga * gb) * m.R + m.V / (ga * gb)) / N;
      break;
    case StatKind::Xcal:
      s.value[0] = (l.L - (2 - a - b) / (ga * gb) * l.R + l.V / (ga * gb) - a * (b - a) / (ga * gb) * M) / N;
      break;
    case StatKind::Xzeta:
      s.value[0] = (m.L - (1 + spec.zeta) / ga * m.R + spec.zeta / (ga * ga) * m.V) / N;
      break;
    case StatKind::Y1Y2: {
      s.dim = 2;
      double y1 = (m.R - m.V / ga) / N;
      s.value[0] = y1;
      s.value[1] = (m.L - m.R / ga) / N - y1;
      break;
    }
    case StatKind::Z1Z2: {
      s.dim = 2;
      double z1 = (l.R - l.V / ga + a * M) / N;
      s.value[0] = z1;
      s.value[1] = (l.L - l.R / ga + a / ga * M) / N - z1;
      break;
    }
  }
  return s;
}

namespace {

CfEstimate cf_mean(std::span<const ScaledSample> samples, int dim, double s, double t) {
  if (samples.size() < 2) throw RuinError(ErrorKind::TooFewSamples, "need at least two samples");
  double sumRe = 0, sumIm = 0, sqRe = 0, sqIm = 0;
  for (const auto& x : samples) {
    if (x.dim != dim) throw RuinError(ErrorKind::VariantMismatch, "sample dimension does not match the argument");
    double phase = dim == 1 ? t * x.value[0] : s * x.value[0] + t * x.value[1];
    double c = std::cos(phase), si = std::sin(phase);
    sumRe += c;
    sumIm += si;
    sqRe += c * c;
    sqIm += si * si;
  }
  const double n = static_cast<double>(samples.size());
  const double mRe = sumRe / n, mIm = sumIm / n;
  auto se = [n](double sq, double mean) { return std::sqrt(std::max(0.0, sq / n - mean * mean) / (n - 1)); };
  CfEstimate e;
  e.value = {mRe, mIm};
  e.stderrRe = se(sqRe, mRe);
  e.stderrIm = se(sqIm, mIm);
  return e;
}

}  // namespace

CfEstimate empirical_cf(std::span<const ScaledSample> samples, double t) { return cf_mean(samples, 1, 0, t); }

CfEstimate empirical_cf(std::span<const ScaledSample> samples, double s, double t) {
  return cf_mean(samples, 2, s, t);
}

void write_trajectory_csv(std::ostream& os, std::span<const TrajectoryStats> rows, std::uint64_t firstIndex) {
  os << "seed_index,M,R,V,L,Rp,Vp,Lp,lastVisit,absorptionTime\n";
  std::uint64_t i = firstIndex;
  for (const auto& r : rows)
    os << i++ << ',' << r.excursionCount << ',' << r.lv.R << ',' << r.lv.V << ',' << r.lv.L << ',' << r.meander.R
       << ',' << r.meander.V << ',' << r.meander.L << ',' << r.lastVisitEpoch << ',' << r.absorption_time() << '\n';
}

}  // namespace ruin
