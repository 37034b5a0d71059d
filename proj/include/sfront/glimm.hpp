/** \file glimm.hpp
 *  \brief Interaction-potential bookkeeping for the front tracker: weighted
 *         strength sums, the corner-modified variation functional, per-event
 *         interaction measures, run audits, and the weak-form residual.
 */
#ifndef SFRONT_GLIMM_HPP
#define SFRONT_GLIMM_HPP

#include "sfront/tracker.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace sfront {

/** \brief Weights of the variation functional. All configurable; defaults are
 *  the values used by the bundled configurations. */
struct GlimmConstants {
  double K = 10;        ///< multiplies the interaction potential Q in F0
  double K0 = 1;        ///< weight of the pairwise approaching sum Q0
  double K1 = 4;        ///< weight of the family-1..4 weighted strength sums
  double K_c = 10;      ///< weight of the pending concave-corner sum
  double K_b = 2;       ///< corner weight rate in the downstream exponent
  double K_w = 2;       ///< strong-front weight rate in the downstream exponent
  double K_np = 2;      ///< strong-front weight rate for non-physical fronts
  double C_star = 10;   ///< couples F0 into F = F1 + C_star * F0
  double script_K = 50; ///< weight of the reaction tail sum in script_F
  double L = 1;         ///< decay rate used by the reaction tail sum
};

/** \brief One evaluation of the functional (piecewise constant between
 *  events; rows are recorded immediately after each event). */
struct GlimmBreakdown {
  double L_w = 0;       ///< total weak strength incl. non-physical fronts
  double Q0 = 0;        ///< sum of |alpha||beta| over approaching weak pairs
  double Q_B[5] = {0, 0, 0, 0, 0}; ///< weighted per-family strength sums
  double Q_BNP = 0;     ///< weighted non-physical strength sum
  double Q_c = 0;       ///< pending concave corner turning ahead of x
  double theta_hat = 0; ///< processed convex turning behind x
  double tv_theta = 0;  ///< TV of the flow angle, wall leg included
  double Q = 0;         ///< K0*Q0 + K1*(QB1..QB4) + QB5 + QBNP + K_c*Q_c
  double F1 = 0;        ///< |TV(theta) above the wall - theta_hat|
  double F0 = 0;        ///< L_w + K*Q
  double F = 0;         ///< F1 + C_star*F0
  double script_F = 0;  ///< F + reaction tail sum
};

/** \brief One audit row (one per processed event, plus the initial row). */
struct GlimmRow {
  double x = 0;
  std::string kind;     ///< init|interaction|np-crossing|wall|corner|reaction
  double L_w = 0, Q = 0, F1 = 0, F0 = 0, F = 0, script_F = 0;
  double E = 0;         ///< interaction measure of the event
};

/** \brief Audit outcome. */
struct AuditFinding {
  std::size_t row = 0;  ///< index of the offending row
  std::string what;     ///< which inequality failed
  double lhs = 0, rhs = 0;
};
struct AuditReport {
  std::vector<AuditFinding> violations;
  double sum_E = 0;         ///< total interaction measure over the run
  double initial_script_F = 0;
  double max_script_F = 0;
};

/** \brief Whether two fronts (lower below upper) approach: a larger family
 *  below a smaller one, or the same genuinely nonlinear family with at least
 *  one shock among them. Equal-tag composite contacts never approach. */
bool approaching(const WaveFront& lower, const WaveFront& upper);

/** \brief Evaluates the functional on the state's fronts at x_eval (callers
 *  offset x_eval just past the event station so that corner-set membership is
 *  unambiguous; the variation term is undefined exactly at stations). */
GlimmBreakdown functional(const SimulationState& state,
                          const GlimmConstants& constants, double x_eval);

/** \brief x at which to evaluate the functional for a just-processed event:
 *  just past station events (so the station's corner counts as processed),
 *  just before interior events' x (the variation term is undefined exactly at
 *  stations, and corner-set membership must match the front list). */
inline double evaluation_offset_x(const std::string& kind, double x_event,
                                  double h) {
  const double tiny = h * 1e-9;
  if (kind == "reaction" || kind == "corner" || kind == "init")
    return x_event + tiny;
  return x_event - tiny;
}

/** \brief Builds the audit row for one processed event (functional at the
 *  offset evaluation point plus the event's interaction measure). */
GlimmRow glimm_row(const SimulationState& state, const GlimmConstants& constants,
                   const EventSummary& summary);

/** \brief Interaction measure E of a processed event per the case table:
 *  |alpha||beta| for weak pairs, |alpha||eps| for non-physical crossings,
 *  |alpha||s| for weak-strong crossings, |alpha_1| for wall reflections,
 *  |omega| for concave corners, zero for convex corners and stations.
 *  Throws contract_error with an event dump when no case matches. */
double event_interaction_measure(const EventSummary& ev);

/** \brief Checks the two decay laws over consecutive rows: F must drop by at
 *  least E/4 across events between stations, and script_F must never
 *  increase. Station rows (x within rounding of a multiple of h) are exempt
 *  from the first law. */
AuditReport audit_monotonicity(const std::vector<GlimmRow>& rows, double h);

/** \brief Maintains the functional across a run, producing one audit row per
 *  event in O(touched fronts + list length) instead of the quadratic pairwise
 *  rescan: interaction and np-crossing events update the sums through their
 *  touched span, everything else falls back to a full evaluation. Feed every
 *  event in order (run()'s on_event callback); results match functional() up
 *  to rounding. */
class GlimmAccumulator {
 public:
  explicit GlimmAccumulator(const GlimmConstants& constants)
      : c_(constants) {}

  /** \brief Row for the state just after its latest event. */
  GlimmRow row_after(const SimulationState& state, const EventSummary& ev);

 private:
  void rebuild(const SimulationState& state, double x_eval);
  bool update_span(const SimulationState& state, const EventSummary& ev);

  GlimmConstants c_;
  bool valid_ = false;
  GlimmBreakdown b_;     ///< running sums, recomposed per row
  double omega_ra_ = 0;  ///< pending convex turning, enters every weight
};

/** \brief Streams the weak-form residual during a run: fronts and constant
 *  regions are integrated as straight-line segments closed when an event (or
 *  a tie-breaking nudge) touches them, and station profiles are differenced
 *  from the mirrored geometry, so memory stays O(front count). Results match
 *  weak_residual() on a recorded history up to quadrature differences. */
class ResidualAccumulator {
 public:
  /** \brief One test function and its sign choice. */
  struct Test {
    BumpTest psi;
    int eta_sign = 1;
  };

  /** \brief Mirrors the post-initialization state (call before run()). */
  ResidualAccumulator(const SimulationState& state, std::vector<Test> tests);

  /** \brief Consume one processed event (run()'s on_event callback). */
  void on_event(const SimulationState& state);

  /** \brief Closes open segments at x_end and returns one residual magnitude
   *  per test. Call once, after the run; x_end must cover every support. */
  std::vector<double> finish(double x_end);

 private:
  struct FrontSeg {
    std::uint64_t id = 0;
    double x0 = 0, y0 = 0, slope = 0;
    FlowState below, above;
  };
  struct RegionSeg {
    double x0 = 0;
    double ylo0 = 0, slo = 0;  ///< lower edge line at x0 (wall line for r=0)
    double yhi0 = 0, shi = 0;  ///< upper edge line (unused for the top region)
    bool has_hi = false;
    FlowState U;
  };

  void close_front(const FrontSeg& s, double x_end);
  void close_region(const RegionSeg& rs, double x_end);
  void open_region(std::size_t r, double x);
  void close_all(double x_end);
  void reopen_all(const SimulationState& state);
  void apply_nudges(const SimulationState& state);
  void capture_station(double xk);
  void settle_station();
  FlowState profile_state(const std::vector<FrontSeg>& segs,
                          const FlowState& bottom, double xk, double y) const;

  GasModel gas_;
  double h_ = 0;
  std::vector<Test> tests_;
  std::vector<Vec5> totals_;        ///< accumulated weak-form sums per test
  double x_supp_hi_ = 0;            ///< right edge of the union of supports
  std::size_t nudges_seen_ = 0;
  std::size_t events_seen_ = 0;
  bool finished_ = false;

  std::vector<FrontSeg> segs_;      ///< mirrors state.fronts order
  std::vector<RegionSeg> regions_;  ///< regions_[r] sits below segs_[r]
  FlowState bottom_;
  double wall_tan_ = 0;             ///< effective wall line the regions see
  double wall_ref_x_ = 0, wall_ref_y_ = 0;

  bool station_pending_ = false;    ///< pre-profile captured, post outstanding
  double station_x_ = 0;
  std::vector<FrontSeg> pre_segs_;  ///< mirror snapshot at the station
  FlowState pre_bottom_;
};

/** \brief Smooth compactly supported test function: a product bump centered
 *  at (cx, cy) with radii (rx, ry), identically zero outside the open box. */
struct BumpTest {
  double cx = 0, cy = 0, rx = 1, ry = 1;
  double value(double x, double y) const;
  double ddx(double x, double y) const;
  double ddy(double x, double y) const;
};

/** \brief Residual of the integral identity the approximation satisfies in
 *  the limit, for one test function supported strictly above the wall and
 *  strictly right of the inflow line: front-jump terms, station-jump terms
 *  and the volume source term. eta_sign (+1/-1) flips the integrand family;
 *  the magnitude is returned. Requires a run with record_history on. */
double weak_residual(const SimulationState& state, const BumpTest& psi,
                     int eta_sign);

} // namespace sfront

#endif // SFRONT_GLIMM_HPP
