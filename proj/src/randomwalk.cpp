#include "hdt/randomwalk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hdt/error.hpp"

namespace hdt {

WalkTrace walk(const GraphPtr& graph, int start, double t_max, std::uint64_t seed, Clock clock) {
  if (!(t_max > 0)) throw ConfigError("t_max must be positive");
  const auto& g = *graph;
  if (start < 0 || static_cast<std::size_t>(start) >= g.vertex_count()) throw ConfigError("start vertex out of range");
  WalkTrace tr;
  tr.start = start;
  tr.seed = seed;
  tr.duration = t_max;
  tr.clock = clock;
  tr.times.push_back(0.0);
  tr.vertices.push_back(start);
  tr.unwrapped.push_back(g.position(start));
  Rng rng(seed, Stream::walks);
  run_walk(g, start, t_max, clock, rng, [&](double t, int, const HalfEdge& h) {
    tr.times.push_back(t);
    tr.vertices.push_back(h.neighbor);
    tr.unwrapped.push_back(tr.unwrapped.back() + h.delta);
  });
  return tr;
}

double martingale_residual(const DeformedGraph& d) {
  const auto& g = *d.graph;
  double worst = 0.0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    Vec2 drift{};
    // H(s') - H(s) through the wrapped displacement, so torus wraps cancel.
    for (const auto& h : g.neighbors(static_cast<int>(v)))
      drift += h.delta + d.chi[static_cast<std::size_t>(h.neighbor)] - d.chi[v];
    worst = std::max({worst, std::fabs(drift.x), std::fabs(drift.y)});
  }
  return worst;
}

MsdReport msd_diagnostic(const DeformedGraph& d, std::uint64_t n_walks, double t_max, std::uint64_t seed,
                         int grid_points) {
  if (n_walks == 0) throw ConfigError("n_walks must be positive");
  if (grid_points < 1) throw ConfigError("grid_points must be positive");
  const auto& g = *d.graph;
  MsdReport rep;
  const auto m = static_cast<std::size_t>(grid_points);
  for (std::size_t k = 1; k <= m; ++k) rep.times.push_back(t_max * static_cast<double>(k) / static_cast<double>(m));
  if (!(t_max > 0)) {
    rep.times.assign(m, 0.0);
    rep.msd.assign(m, 0.0);
    rep.mean_x.assign(m, Estimate{});
    rep.mean_y.assign(m, Estimate{});
    return rep;
  }
  std::vector<RunningStats> sq(m), mx(m), my(m);
  for (std::uint64_t w = 0; w < n_walks; ++w) {
    Rng rng(seed, Stream::walks, w);
    const int start = static_cast<int>(rng.below(g.vertex_count()));
    Vec2 disp{};
    std::size_t next = 0;
    auto record_until = [&](double t) {
      while (next < m && rep.times[next] < t) {
        sq[next].add(norm2(disp));
        mx[next].add(disp.x);
        my[next].add(disp.y);
        ++next;
      }
    };
    run_walk(g, start, t_max, Clock::jump_rate, rng, [&](double t, int from, const HalfEdge& h) {
      record_until(t);
      disp += h.delta + d.chi[static_cast<std::size_t>(h.neighbor)] - d.chi[static_cast<std::size_t>(from)];
    });
    record_until(std::numeric_limits<double>::infinity());
  }
  double sxy = 0.0, sxx = 0.0, ymean = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    rep.msd.push_back(sq[k].mean());
    rep.mean_x.push_back(mx[k].estimate());
    rep.mean_y.push_back(my[k].estimate());
    sxy += rep.times[k] * rep.msd[k];
    sxx += rep.times[k] * rep.times[k];
    ymean += rep.msd[k];
  }
  ymean /= static_cast<double>(m);
  rep.slope = sxy / sxx;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    ss_res += std::pow(rep.msd[k] - rep.slope * rep.times[k], 2);
    ss_tot += std::pow(rep.msd[k] - ymean, 2);
  }
  rep.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return rep;
}

DegreeSampler::DegreeSampler(const DelaunayGraph& g) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    half_owner_.insert(half_owner_.end(), static_cast<std::size_t>(g.degree(static_cast<int>(v))), static_cast<int>(v));
}

int DegreeSampler::operator()(Rng& rng) const { return half_owner_[rng.below(half_owner_.size())]; }

EnvironmentReport environment_check(const DelaunayGraph& g, const std::vector<double>& f, std::uint64_t n_steps,
                                    std::uint64_t seed) {
  if (f.size() != g.vertex_count()) throw ConfigError("functional size does not match the graph");
  if (n_steps == 0) throw ConfigError("n_steps must be positive");
  EnvironmentReport rep;
  double num = 0.0, den = 0.0;
  for (std::size_t v = 0; v < f.size(); ++v) {
    const double a = g.degree(static_cast<int>(v));
    num += a * f[v];
    den += a;
  }
  rep.spatial_average = num / den;

  Rng rng(seed, Stream::environment);
  int s = DegreeSampler(g)(rng);
  // Batch means absorb the autocorrelation of the chain.
  const std::uint64_t batches = std::min<std::uint64_t>(100, n_steps);
  const std::uint64_t per_batch = n_steps / batches;
  RunningStats batch_means;
  double total = 0.0;
  std::uint64_t counted = 0;
  for (std::uint64_t b = 0; b < batches; ++b) {
    double sum = 0.0;
    for (std::uint64_t k = 0; k < per_batch; ++k) {
      sum += f[static_cast<std::size_t>(s)];
      const auto nbrs = g.neighbors(s);
      s = nbrs[rng.below(nbrs.size())].neighbor;
    }
    batch_means.add(sum / static_cast<double>(per_batch));
    total += sum;
    counted += per_batch;
  }
  rep.time_average = total / static_cast<double>(counted);
  rep.std_error = batch_means.estimate().std_error;
  return rep;
}

double poisson_moment(int r, double t) {
  if (r < 0) throw ConfigError("moment order must be non-negative");
  // Stirling numbers of the second kind, S(r, k) = k S(r-1, k) + S(r-1, k-1).
  std::vector<double> S{1.0};
  for (int n = 1; n <= r; ++n) {
    std::vector<double> next(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 1; k <= n; ++k) {
      const double keep = k < n ? k * S[static_cast<std::size_t>(k)] : 0.0;
      next[static_cast<std::size_t>(k)] = keep + S[static_cast<std::size_t>(k) - 1];
    }
    S = std::move(next);
  }
  double sum = 0.0, power = 1.0;
  for (std::size_t k = 0; k < S.size(); ++k) {
    sum += S[k] * power;
    power *= t;
  }
  return sum;
}

std::vector<MomentRow> moment_check(const Surface& gamma, int r, const std::vector<double>& times,
                                    std::uint64_t n_walks, std::uint64_t seed) {
  if (r < 1) throw ConfigError("moment order r must be at least 1");
  if (n_walks == 0) throw ConfigError("n_walks must be positive");
  const auto& g = *gamma.graph;
  const double c_r = campbell_power(gradient(gamma), r);
  const DegreeSampler sampler(g);
  std::vector<MomentRow> rows;
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const double t = times[ti];
    if (!(t >= 0)) throw ConfigError("times must be non-negative");
    MomentRow row;
    row.t = t;
    row.bound = 2.0 * c_r * poisson_moment(r, t);
    RunningStats mom, sq;
    for (std::uint64_t w = 0; w < n_walks; ++w) {
      Rng rng(seed, Stream::walks, ti * n_walks + w);
      const int start = sampler(rng);
      double rise = 0.0;
      run_walk(g, start, t, Clock::uniformized, rng,
               [&](double, int from, const HalfEdge& h) { rise += gamma.increment(from, h); });
      mom.add(std::pow(std::fabs(rise), r));
      sq.add(rise * rise);
    }
    row.moment = mom.estimate();
    row.ratio_sq = t > 0 ? sq.mean() / t : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hdt
