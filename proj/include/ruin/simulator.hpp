#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "ruin/params.hpp"

namespace ruin {

// Runs R, short runs V, long runs U and steps L over one portion of a trajectory.
struct RunTotals {
  std::int64_t R = 0, V = 0, U = 0, L = 0;
  bool operator==(const RunTotals&) const = default;
};

struct TrajectoryStats {
  std::int64_t lastVisitEpoch = 0;  // time of the final visit to 0
  std::int64_t excursionCount = 0;  // completed excursions before the last visit
  RunTotals lv;                     // summed per excursion of |X| up to the last visit
  RunTotals meander;                // from the last visit to absorption at |X| = N
  std::int64_t absorption_time() const { return lv.L + meander.L; }
  bool operator==(const TrajectoryStats&) const = default;
};

inline constexpr std::int64_t kStepCap = 1'000'000'000;

// One trajectory from X = 0 until |X| = N. The random stream is keyed by (seed, index),
// so results do not depend on scheduling. Throws StepCapExceeded past kStepCap steps.
TrajectoryStats simulate_trajectory(const ModelParams& p, std::uint64_t seed, std::uint64_t index = 0,
                                    std::int64_t stepCap = kStepCap);

// Applies the same bookkeeping to a given +1/-1 step sequence. Steps past absorption
// are rejected; a sequence that stops early leaves its unfinished piece as the meander.
TrajectoryStats stats_from_steps(const std::vector<int>& steps, int N);

// Trajectories with indices 0..count-1. Worker count comes from `threads`, or from
// RUIN_THREADS (default: hardware concurrency) when threads <= 0.
std::vector<TrajectoryStats> simulate_batch(const ModelParams& p, std::uint64_t seed, std::int64_t count,
                                            int threads = 0);
int worker_count(int requested);

enum class StatKind { X, Xcal, Y1Y2, Xzeta, Z1Z2 };

struct StatSpec {
  StatKind kind = StatKind::X;
  double zeta = 1.0;  // used by Xzeta only
};

struct ScaledSample {
  int dim = 1;
  double value[2] = {0.0, 0.0};
};

// Linear combinations of the counts divided by N. Y1Y2, Xzeta and Z1Z2 need a = b
// and throw HomogeneousOnly otherwise.
ScaledSample scaled_statistic(const TrajectoryStats& ts, const ModelParams& p, StatSpec spec);

struct CfEstimate {
  std::complex<double> value;
  double stderrRe = 0.0;
  double stderrIm = 0.0;
};

// Sample mean of exp(i t x) (one-dimensional samples) or exp(i (s x1 + t x2)).
// Throws TooFewSamples below two samples and VariantMismatch on a dimension clash.
CfEstimate empirical_cf(std::span<const ScaledSample> samples, double t);
CfEstimate empirical_cf(std::span<const ScaledSample> samples, double s, double t);

void write_trajectory_csv(std::ostream& os, std::span<const TrajectoryStats> rows, std::uint64_t firstIndex = 0);

}  // namespace ruin
