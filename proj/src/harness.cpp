#include "hdt/harness.hpp"

#include <algorithm>
#include <cmath>

#include "hdt/error.hpp"

namespace hdt {

double m_s_update(Surface& eta, int s) {
  const auto nbrs = eta.graph->neighbors(s);
  if (nbrs.empty()) throw GeometryError("internal: isolated vertex");
  double sum = 0.0;
  for (const auto& h : nbrs) sum += eta.psi[static_cast<std::size_t>(h.neighbor)] + dot(eta.tilt, h.delta);
  const double next = sum / static_cast<double>(nbrs.size());
  double& cur = eta.psi[static_cast<std::size_t>(s)];
  const double change = next - cur;
  cur = next;
  return change;
}

double energy(const Surface& eta) {
  const EdgeField g = gradient(eta);
  return campbell_inner(g, g);
}

Harness::Harness(Surface initial, std::uint64_t seed)
    : eta_(std::move(initial)), rng_(seed, Stream::harness_clocks) {
  for (std::size_t v = 0; v < eta_.size(); ++v) queue_.push({rng_.exponential(), static_cast<int>(v)});
  energy_ = hdt::energy(eta_);
}

double Harness::local_square_sum(int s) const {
  double sum = 0.0;
  for (const auto& h : eta_.graph->neighbors(s)) {
    const double d = eta_.increment(s, h);
    sum += d * d;
  }
  return sum;
}

Harness::Event Harness::step() {
  const Alarm c = queue_.top();
  queue_.pop();
  Event ev;
  ev.vertex = c.vertex;
  ev.t = c.time;
  ev.energy_before = energy_;
  const double before = local_square_sum(c.vertex);
  m_s_update(eta_, c.vertex);
  const double after = local_square_sum(c.vertex);
  // Only edges at the updated vertex change; each is stored once.
  energy_ += (after - before) / eta_.graph->volume();
  ev.energy_after = energy_;
  t_ = c.time;
  ++events_;
  queue_.push({c.time + rng_.exponential(), c.vertex});
  return ev;
}

double Harness::resync_energy() {
  const double exact = hdt::energy(eta_);
  // Absolute floor keeps a relaxed (near-zero energy) state from reporting
  // rounding noise as drift.
  const double drift = std::fabs(exact - energy_) / std::max(std::fabs(exact), 1e-12);
  energy_ = exact;
  return drift;
}

namespace {

TracePoint snapshot(const Harness& h, bool track_tilt) {
  TracePoint p;
  p.event = h.events();
  p.t = h.time();
  p.energy = h.energy();
  p.max_laplacian = max_abs(laplacian(h.surface()));
  if (track_tilt)
    for (int axis = 0; axis < h.surface().graph->dim(); ++axis)
      p.tilt[static_cast<std::size_t>(axis)] = tilt_J(h.surface(), axis);
  return p;
}

}  // namespace

HarnessResult harness_run(const Surface& gamma, const HarnessOptions& options) {
  if (!(options.t_max > 0)) throw ConfigError("t_max must be positive");
  const bool track_tilt = options.track_tilt && gamma.graph->has_facets();
  Harness h(gamma, options.seed);
  HarnessResult res;
  res.trace.push_back(snapshot(h, track_tilt));
  const auto initial_tilt = res.trace.front().tilt;

  const std::size_t n = gamma.size();
  std::vector<char> fired(n, 0);
  std::size_t unfired = n;
  while (n > 0 && h.next_time() <= options.t_max) {
    const auto ev = h.step();
    res.max_energy_increase = std::max(res.max_energy_increase, ev.energy_after - ev.energy_before);
    if (options.recompute_every > 0 && h.events() % options.recompute_every == 0) {
      const double drift = h.resync_energy();
      res.max_energy_resync_drift = std::max(res.max_energy_resync_drift, drift);
      if (drift > 1e-9) throw Error("incremental energy drifted from the exact value");
    }
    if (options.trace_every > 0 && h.events() % options.trace_every == 0) res.trace.push_back(snapshot(h, track_tilt));
    if (options.stop_tol > 0) {
      if (!fired[static_cast<std::size_t>(ev.vertex)]) {
        fired[static_cast<std::size_t>(ev.vertex)] = 1;
        --unfired;
      }
      if (unfired == 0) {
        if (max_abs(laplacian(h.surface())) < options.stop_tol) {
          res.converged = true;
          break;
        }
        std::fill(fired.begin(), fired.end(), 0);
        unfired = n;
      }
    }
  }
  if (res.trace.back().event != h.events() || res.trace.size() == 1) res.trace.push_back(snapshot(h, track_tilt));
  for (const auto& p : res.trace)
    for (std::size_t a = 0; a < 2; ++a)
      res.max_tilt_drift = std::max(res.max_tilt_drift, std::fabs(p.tilt[a] - initial_tilt[a]));
  res.final = h.surface();
  res.events = h.events();
  res.t = h.time();
  return res;
}

Estimate backward_walk_estimate(const Surface& gamma, int s, double t, std::uint64_t n_samples,
                                std::uint64_t seed) {
  if (!(t >= 0)) throw ConfigError("t must be non-negative");
  if (n_samples == 0) throw ConfigError("n_samples must be positive");
  const auto& g = *gamma.graph;
  const double base = gamma.height(s);
  RunningStats stats;
  for (std::uint64_t k = 0; k < n_samples; ++k) {
    Rng rng(seed, Stream::backward_walks, k);
    double value = base;
    run_walk(g, s, t, Clock::uniformized, rng,
             [&](double, int from, const HalfEdge& h) { value += gamma.increment(from, h); });
    stats.add(value);
  }
  return stats.estimate();
}

}  // namespace hdt
