#pragma once

#include <cstdint>
#include <vector>

#include "hdt/harness.hpp"
#include "hdt/solver.hpp"
#include "hdt/stats.hpp"

namespace hdt {

struct WalkTrace {
  int start = 0;
  std::uint64_t seed = 0;
  double duration = 0.0;
  Clock clock = Clock::jump_rate;
  std::vector<double> times;     // times[0] = 0, then strictly increasing jump times
  std::vector<int> vertices;     // vertex occupied from times[k]
  std::vector<Vec2> unwrapped;   // start position plus the summed jump displacements
};

/// Continuous-time walk on the graph; deterministic per seed.
WalkTrace walk(const GraphPtr& graph, int start, double t_max, std::uint64_t seed, Clock clock);

/// max_s ||sum_{s'} (H(s') - H(s))||_inf, the drift of the embedded chain
/// scaled by a(s).
double martingale_residual(const DeformedGraph& deformed);

struct MsdReport {
  std::vector<double> times;
  std::vector<double> msd;                 // E|H(Y_t) - H(Y_0)|^2
  std::vector<Estimate> mean_x, mean_y;    // components of E[H(Y_t) - H(Y_0)]
  double slope = 0.0;                      // least squares through the origin
  double r2 = 0.0;                         // centered coefficient of determination
};

/// Jump-rate walks from uniformly drawn start vertices (the stationary law of
/// the jump-rate walk), sampled on `grid_points` equally spaced times in
/// (0, t_max].
MsdReport msd_diagnostic(const DeformedGraph& deformed, std::uint64_t n_walks, double t_max, std::uint64_t seed,
                         int grid_points = 20);

struct EnvironmentReport {
  double time_average = 0.0;
  double spatial_average = 0.0;  // sum a(s) f(s) / sum a(s)
  double std_error = 0.0;        // batch means
  double difference() const noexcept { return time_average - spatial_average; }
};

/// Time average of f along the embedded discrete chain (uniform neighbor
/// choice), started from the degree-biased law.
EnvironmentReport environment_check(const DelaunayGraph& graph, const std::vector<double>& f,
                                    std::uint64_t n_steps, std::uint64_t seed);

/// r-th moment of a Poisson(t) variable, sum_k S(r, k) t^k (integer r >= 0).
double poisson_moment(int r, double t);

struct MomentRow {
  double t = 0.0;
  Estimate moment;         // E|gamma(X_t) - gamma(X_0)|^r
  double bound = 0.0;      // 2 C(|grad gamma|^r) m^r(t)
  double ratio_sq = 0.0;   // E|gamma(X_t) - gamma(X_0)|^2 / t
  bool within() const noexcept { return moment.mean <= bound + 4 * moment.std_error; }
};

/// Uniformized walks from degree-biased start vertices.
std::vector<MomentRow> moment_check(const Surface& gamma, int r, const std::vector<double>& times,
                                    std::uint64_t n_walks, std::uint64_t seed);

/// Draws a vertex with probability a(s) / sum a.
class DegreeSampler {
 public:
  explicit DegreeSampler(const DelaunayGraph& g);
  int operator()(Rng& rng) const;

 private:
  std::vector<int> half_owner_;  // one entry per half-edge
};

}  // namespace hdt
