#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "hdt/fields.hpp"
#include "hdt/rng.hpp"
#include "hdt/stats.hpp"

namespace hdt {

/// Clock of a continuous-time nearest-neighbor walk. Both modes pick the next
/// vertex uniformly among the neighbors.
enum class Clock {
  jump_rate,    // holding time Exp(a(s))
  uniformized,  // holding time Exp(1)
};

/// Runs a walk from `start` for duration `t`, calling on_jump(time, from, h)
/// for every jump in order. Returns the final vertex. Shared by the duality
/// estimator and the random-walk diagnostics.
template <class OnJump>
int run_walk(const DelaunayGraph& g, int start, double t, Clock clock, Rng& rng, OnJump&& on_jump) {
  int s = start;
  double now = 0.0;
  for (;;) {
    const auto nbrs = g.neighbors(s);
    const double rate = clock == Clock::jump_rate ? static_cast<double>(nbrs.size()) : 1.0;
    now += rng.exponential(rate);
    if (now > t) return s;
    const HalfEdge& h = nbrs[rng.below(nbrs.size())];
    on_jump(now, s, h);
    s = h.neighbor;
  }
}

/// Replaces psi(s) by the neighbor average of psi(s') + c . delta(s, s').
/// Returns the change in psi(s).
double m_s_update(Surface& eta, int s);

/// C(|grad eta|^2).
double energy(const Surface& eta);

struct TracePoint {
  std::uint64_t event = 0;
  double t = 0.0;
  double energy = 0.0;
  double max_laplacian = 0.0;
  std::array<double, 2> tilt{};
};

struct HarnessOptions {
  double t_max = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t trace_every = 0;       // events between trace rows; 0 keeps only start and end
  std::uint64_t recompute_every = 10000;
  bool track_tilt = true;              // tilt columns need periodic facets
  double stop_tol = 0.0;               // > 0 selects the convergence-stop variant
};

/// Event-driven zero-temperature harness on a fixed graph.
///
/// Each vertex carries an independent rate-1 exponential clock; a global
/// priority queue fires them in time order. The tilt part of the surface is
/// never modified.
class Harness {
 public:
  Harness(Surface initial, std::uint64_t seed);

  const Surface& surface() const noexcept { return eta_; }
  double time() const noexcept { return t_; }
  std::uint64_t events() const noexcept { return events_; }
  /// Incrementally maintained C(|grad eta|^2).
  double energy() const noexcept { return energy_; }
  double next_time() const { return queue_.top().time; }

  struct Event {
    int vertex = 0;
    double t = 0.0;
    double energy_before = 0.0;
    double energy_after = 0.0;
  };

  /// Fires the next clock.
  Event step();
  /// Recomputes the energy from scratch; returns the relative drift of the
  /// incremental value.
  double resync_energy();

 private:
  struct Alarm {
    double time;
    int vertex;
    bool operator>(const Alarm& o) const noexcept { return time != o.time ? time > o.time : vertex > o.vertex; }
  };
  double local_square_sum(int s) const;

  Surface eta_;
  Rng rng_;
  std::priority_queue<Alarm, std::vector<Alarm>, std::greater<>> queue_;
  double t_ = 0.0;
  double energy_ = 0.0;
  std::uint64_t events_ = 0;
};

struct HarnessResult {
  Surface final;
  std::vector<TracePoint> trace;
  std::uint64_t events = 0;
  double t = 0.0;
  bool converged = false;              // convergence-stop variant only
  double max_energy_increase = 0.0;    // largest per-event energy increase (<= 0 ideally)
  double max_tilt_drift = 0.0;         // over trace rows, against the initial tilt
  double max_energy_resync_drift = 0.0;
};

/// Runs the harness from gamma up to t_max (or until ||Delta eta||_inf <
/// stop_tol after every vertex has fired since the previous check).
HarnessResult harness_run(const Surface& gamma, const HarnessOptions& options);

/// Monte Carlo estimate of E[gamma(B_t)] for the backward walk started at s,
/// with gamma continued through edge increments. The walk is the rate-1
/// uniformized walk that is dual to the update rule.
Estimate backward_walk_estimate(const Surface& gamma, int s, double t, std::uint64_t n_samples,
                                std::uint64_t seed);

}  // namespace hdt
