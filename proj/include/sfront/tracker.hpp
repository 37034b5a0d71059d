/** \file tracker.hpp
 *  \brief Event-driven wave-front tracking engine: advances a y-ordered front
 *         list in x, detects pairwise interactions and wall hits, applies the
 *         Riemann / boundary solvers with generation-order bookkeeping, and
 *         applies the fractional reaction step at every mesh station x = kh.
 */
#ifndef SFRONT_TRACKER_HPP
#define SFRONT_TRACKER_HPP

#include "sfront/numerics.hpp"
#include "sfront/reaction.hpp"
#include "sfront/riemann.hpp"
#include "sfront/wall.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace sfront {

/** \brief One tracked front. Strength is signed for genuinely nonlinear
 *  families (negative = shock), a per-family triple for the composite contact
 *  (strength = sum of component magnitudes), and a nonnegative magnitude for
 *  non-physical fronts. */
struct WaveFront {
  std::uint64_t id = 0;
  int family = 0;                         ///< 1, kFamilyContact, 5 or kFamilyNP
  double strength = 0;                    ///< signed strength / NP magnitude
  std::array<double, 3> contact{0, 0, 0}; ///< (alpha2, alpha3, alpha4)
  int order = 1;                          ///< generation order, NP = nu + 1
  double y = 0;                           ///< position at SimulationState::x
  double slope = 0;                       ///< trajectory slope dy/dx
  FlowState below, above;                 ///< flanking constant states
  bool is_strong = false;                 ///< strong 5-rarefaction fan member
};

/** \brief Piecewise-constant inflow profile at x = 0: `bottom` below the first
 *  breakpoint, layers[i].second above layers[i].first (top-open; the last
 *  layer state is the far-field state). */
struct InflowProfile {
  FlowState bottom;
  std::vector<std::pair<double, FlowState>> layers;

  /// Far-field state (the topmost layer, or `bottom` when no layers).
  const FlowState& far_field() const {
    return layers.empty() ? bottom : layers.back().second;
  }
};

/** \brief Discrete event the engine processes. */
struct Event {
  enum class Kind { front_front, front_wall, corner, reaction_line };
  Kind kind = Kind::front_front;
  double x = 0;
  std::array<std::uint64_t, 2> participants{0, 0}; ///< front ids (when any)
  long station = -1;                               ///< k for events at x = kh
};

/** \brief Log record of one processed event (one row per outgoing front in
 *  the event CSV; composite contacts expand to one row per component). */
struct EventRecord {
  double x = 0;
  std::string kind;          ///< init|interaction|np-crossing|wall|corner|reaction
  double y = 0;
  int family = 0;
  int order = 0;
  double strength = 0;
  double slope = 0;
  double np_strength = 0;    ///< outgoing non-physical strength of the event
};

/** \brief Classification of a processed event for the interaction measure. */
struct EventSummary {
  std::string kind;              ///< as in EventRecord::kind
  double x = 0;
  bool weak_weak = false;        ///< two weak physical fronts interacted
  bool with_np = false;          ///< a non-physical front crossed a physical
  bool with_strong = false;      ///< a weak front crossed a strong-fan front
  double strength_a = 0;         ///< |alpha| of the (first / weak) front
  double strength_b = 0;         ///< |beta| (partner weak strength, |s|, |eps|)
  double omega = 0;              ///< corner turning angle (corner events)
  double epsilon5 = 0;           ///< emitted 5-wave strength (corner/wall)

  // Touched-span bookkeeping for incremental per-event monitors: the event
  // replaced fronts [span_lo, span_lo + span_removed.size()) of the previous
  // list by the span_added fronts now starting at span_lo, and changed
  // nothing else. Only interaction and np-crossing events set it.
  bool span_tracked = false;
  std::size_t span_lo = 0;
  std::uint32_t span_added = 0;
  std::vector<WaveFront> span_removed;
};

/** \brief One tie-breaking speed nudge: front `id` changed slope to
 *  `new_slope` at x (its position there is unchanged). */
struct SlopeNudge {
  std::uint64_t id = 0;
  double x = 0;
  double new_slope = 0;
};

/** \brief Per-reaction-line decay diagnostics. */
struct ReactionLineRecord {
  double x = 0;                 ///< station kh
  double sup_Z = 0;             ///< sup over regions of Z just after the step
  double min_rate_over_u = 0;   ///< min phi(T)/u over the stepped states
  bool budget_warning = false;  ///< any step used over half its heat budget
};

/** \brief Snapshot of the front list over one inter-event window, for point
 *  sampling and weak-form residual integration (recorded when enabled). */
struct HistoryWindow {
  double x_lo = 0, x_hi = 0;
  FlowState bottom;                 ///< region state below the lowest front
  std::vector<double> y_at_lo;      ///< front positions at x_lo
  std::vector<double> slopes;       ///< front slopes over the window
  std::vector<FlowState> above;     ///< region state above front i
};

/** \brief Whole-run numerical parameters. */
struct TrackerParams {
  int nu = 8;                    ///< rarefaction split count / order ceiling
  double h = 0.1;                ///< mesh station spacing
  std::uint64_t seed = 1;        ///< perturbation stream seed
  bool record_history = false;   ///< keep HistoryWindows for residuals
  double strength_floor = 1e-9; ///< bridge physical jumps weaker than this
  double simplified_threshold = 0.0; ///< weak pairs with |a||b| below this take
                                     ///< the simplified solver (0 disables)
  double delta0 = 0.4;           ///< admissible-region radius for inflow checks
  double theta_crit = std::numeric_limits<double>::quiet_NaN(); ///< NaN = compute
};

/** \brief Mutable engine state. Fronts are strictly ordered in y at every
 *  non-event x and the bottom state is tangent to the effective wall angle. */
struct SimulationState {
  double x = 0;
  std::vector<WaveFront> fronts;     ///< ordered bottom to top
  FlowState bottom;                  ///< region state below the lowest front
  WallMesh wall;
  GasModel gas;
  TrackerParams params;
  double lambda_hat = 0;             ///< common non-physical slope
  double norm_Z_bar = 0;             ///< sup of Z over the inflow profile
  bool tangent_ok = true;            ///< bottom state tangency flag
  double theta_effective = 0;        ///< wall angle the bottom state follows
  double wall_ref_x = 0;             ///< anchor of the effective wall line
  double wall_ref_y = 0;
  std::vector<double> corner_effective; ///< rule-iv effective turning per station
  std::uint64_t next_id = 1;
  SplitMix64 rng{1};
  long next_station = 1;             ///< next kh station to process
  long pending_corner = -1;          ///< corner waiting after a reaction line
  std::uint64_t perturbation_count = 0;

  // run log
  std::vector<EventRecord> records;
  std::vector<EventSummary> summaries;
  std::vector<ReactionLineRecord> reaction_lines;
  std::vector<HistoryWindow> history;
  std::vector<SlopeNudge> slope_nudges;
  std::vector<std::string> notices;

  /// Effective wall elevation (the polygon the bottom state follows).
  double wall_elevation_effective(double at_x) const {
    return wall_ref_y + std::tan(theta_effective) * (at_x - wall_ref_x);
  }
};

/** \brief Piecewise-constant slice in y: states[i] between breakpoints[i-1]
 *  and breakpoints[i] (states.front() starts at the wall, states.back()
 *  extends to infinity). */
struct SliceProfile {
  std::vector<double> breakpoints;
  std::vector<FlowState> states;  ///< size = breakpoints.size() + 1
};

/** \brief Builds the initial state: one accurate nu-split fan per inflow jump
 *  at x = 0 and the corner wave of the wall's first turning angle. All orders
 *  start at 1. Throws domain_error naming the offending jump index for
 *  inadmissible inflow data. */
SimulationState initialize(const InflowProfile& inflow, const WallMesh& wall,
                           const GasModel& gas, const TrackerParams& params);

/** \brief Earliest upcoming event: pairwise crossings of y-adjacent fronts,
 *  the bottom front against the wall, or the next mesh station (reaction
 *  line, then corner). Applies the deterministic sub-2^{-nu} speed
 *  perturbation lazily when two candidate events coincide within 2^{-nu-4},
 *  which is why the state is mutable. */
Event next_event(SimulationState& state);

/** \brief Processes one event in place, appending log records. */
void handle_event(SimulationState& state, const Event& event);

/** \brief Runs the engine until x_max, sampling slices at the requested
 *  stations on the way (each shifted off events by one perturbation quantum
 *  when needed). `on_event` (optional) fires after every handled event, with
 *  the event's summary at state.summaries.back(). Returns the slice profiles
 *  in slice_xs order. */
std::vector<SliceProfile> run(SimulationState& state, double x_max,
                              const std::vector<double>& slice_xs,
                              const std::function<void(const SimulationState&)>&
                                  on_event = {});

/** \brief Slice of the current state at station x >= state.x, assuming no
 *  event occurs in between (callers use run()'s scheduling to guarantee it).
 */
SliceProfile sample_slice(const SimulationState& state, double x);

/** \brief Point sample from the recorded history (record_history must have
 *  been on). Throws domain_error outside the recorded x-range. */
FlowState sample_history(const SimulationState& state, double x, double y);

} // namespace sfront

#endif // SFRONT_TRACKER_HPP
