/** \file tracker.cpp
 *  \brief Event-driven front tracking: initialization fans, exact event
 *         scheduling with deterministic tie-breaking perturbations, the
 *         interaction / wall / corner / reaction-line handlers with
 *         generation-order bookkeeping, and slice / history sampling.
 */
#include "sfront/tracker.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#ifdef SFRONT_DEBUG_TIES
#include <cstdio>
#endif
#include <limits>
#include <sstream>

namespace sfront {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double flow_theta(const FlowState& U) { return std::atan2(U.v, U.u); }

WaveDesc desc_of(const WaveFront& f) { return WaveDesc{f.family, f.strength, f.contact}; }

/// |velocity . wall normal| / speed for the effective wall angle.
double tangency_residual(const FlowState& U, double theta_wall) {
  const double nx = std::sin(theta_wall), ny = -std::cos(theta_wall);
  return std::abs(U.u * nx + U.v * ny) / std::hypot(U.u, U.v);
}

/** \brief Generation order of an outgoing front of family `fam_out` from an
 *  interaction of incoming families (fam_lo, order n_lo) and (fam_hi, n_hi):
 *  matched on both sides keeps the smaller order, matched on one side keeps
 *  that side's order, genuinely new families get max + 1 (capped at nu). */
int outgoing_order(int fam_out, int fam_lo, int n_lo, int fam_hi, int n_hi, int nu) {
  const bool match_lo = fam_out == fam_lo;
  const bool match_hi = fam_out == fam_hi;
  if (match_lo && match_hi) return std::min(n_lo, n_hi);
  if (match_lo) return n_lo;
  if (match_hi) return n_hi;
  return std::min(std::max(n_lo, n_hi) + 1, nu);
}

/// Rule-driven per-station turning: consecutive turnings accumulate until the
/// carried angle reaches 1/nu in magnitude, then the whole carry is processed.
std::vector<double> effective_schedule(const std::vector<double>& turns, int nu) {
  std::vector<double> eff(turns.size(), 0.0);
  double carry = 0.0;
  const double threshold = 1.0 / nu;
  for (std::size_t k = 0; k < turns.size(); ++k) {
    carry += turns[k];
    if (std::abs(carry) >= threshold) {
      eff[k] = carry;
      carry = 0.0;
    }
  }
  return eff;
}

void append_record(SimulationState& st, double x, const char* kind,
                   const WaveFront& f, double np_strength) {
  if (f.family == kFamilyContact) {
    for (int c = 0; c < 3; ++c) {
      EventRecord r{x, kind, f.y, 2 + c, f.order, f.contact[c], f.slope, np_strength};
      st.records.push_back(std::move(r));
    }
    return;
  }
  st.records.push_back(EventRecord{x, kind, f.y, f.family, f.order, f.strength,
                                   f.slope, np_strength});
}

void append_empty_record(SimulationState& st, double x, const char* kind, double y) {
  st.records.push_back(EventRecord{x, kind, y, 0, 0, 0.0, 0.0, 0.0});
}

/** \brief Turns a solver fan into tracked fronts at (st.x, y). Physical
 *  fronts weaker than the strength floor are dropped; their jumps accumulate
 *  and leave on the fan's non-physical closure front so the kept fronts still
 *  connect the flank states exactly. (Silently widening a neighbouring region
 *  instead would let the lost strength resurface in later re-solves as
 *  spurious variation growth.) Z stays with the 4-contacts: the closure front
 *  never jumps it, and a dropped sub-floor Z jump is bridged. Returns new
 *  fronts plus the outgoing non-physical strength of the fan.
 *
 *  When `carry` is non-null no closure front is appended; the dropped
 *  (u,v,p,rho) jumps are added to carry instead, letting a reaction line pool
 *  the drops of all its re-solves into a single closure front. */
struct MappedFan {
  std::vector<WaveFront> fronts;
  double np_strength = 0;
};
MappedFan map_fan(SimulationState& st, const FrontFan& fan, double y,
                  const std::vector<int>& orders, const std::vector<bool>& strong,
                  double* carry = nullptr) {
  assert(fan.fronts.size() == orders.size() && fan.fronts.size() == strong.size());
  MappedFan out;
  const double floor = st.params.strength_floor;
  double du = 0, dv = 0, dp = 0, drho = 0;  // accumulated dropped jumps
  auto shifted = [&](FlowState s) {
    s.u -= du;
    s.v -= dv;
    s.p -= dp;
    s.rho -= drho;
    return s;
  };
  bool saw_records = false;
  FlowState chain_top;  // unshifted above-state of the last fan record seen
  for (std::size_t i = 0; i < fan.fronts.size(); ++i) {
    const FrontRec& rec = fan.fronts[i];
    saw_records = true;
    chain_top = rec.above;
    const double thr = rec.family == kFamilyNP ? std::min(floor, 1e-14) : floor;
    // A genuine Z jump may only live on a 4-contact, so a record carrying one
    // is kept regardless of the floor; bridging it would leave the region
    // states inconsistent in Z, which later wave applications at Z ~ 0 would
    // turn into out-of-domain states.
    const bool carries_z = std::abs(rec.above.Z - rec.below.Z) >= 1e-14;
    if (std::abs(rec.strength) < thr && !carries_z) {
      du += rec.above.u - rec.below.u;
      dv += rec.above.v - rec.below.v;
      dp += rec.above.p - rec.below.p;
      drho += rec.above.rho - rec.below.rho;
      continue;
    }
    WaveFront f;
    f.id = st.next_id++;
    f.family = rec.family;
    f.strength = rec.strength;
    f.contact = rec.contact;
    f.order = orders[i];
    f.y = y;
    f.slope = rec.slope;
    f.below = shifted(rec.below);
    f.above = shifted(rec.above);
    f.is_strong = strong[i];
    if (rec.family == kFamilyNP) {
      // The fan's own non-physical front absorbs the accumulated jumps: its
      // top state must stay the true flank state above the fan.
      f.above = rec.above;
      f.strength = detail::state_distance(f.above, f.below);
      out.np_strength = f.strength;
    }
    out.fronts.push_back(std::move(f));
  }
  if (carry != nullptr) {
    carry[0] += du;
    carry[1] += dv;
    carry[2] += dp;
    carry[3] += drho;
    return out;
  }
  const bool have_np = !out.fronts.empty() && out.fronts.back().family == kFamilyNP;
  if (saw_records && !have_np) {
    // Close the chain with a non-physical front carrying the dropped jumps.
    FlowState below = shifted(chain_top);
    below.Z = chain_top.Z;
    const double eps = detail::state_distance(chain_top, below);
    if (eps >= 1e-14) {
      WaveFront f;
      f.id = st.next_id++;
      f.family = kFamilyNP;
      f.strength = eps;
      f.order = st.params.nu + 1;
      f.y = y;
      f.slope = st.lambda_hat;
      f.below = below;
      f.above = chain_top;
      f.is_strong = false;
      out.np_strength = eps;
      out.fronts.push_back(std::move(f));
    }
  }
  return out;
}

std::size_t index_of(const SimulationState& st, std::uint64_t id) {
  for (std::size_t i = 0; i < st.fronts.size(); ++i)
    if (st.fronts[i].id == id) return i;
  throw contract_error("event refers to a front no longer in the state");
}

void open_history_window(SimulationState& st) {
  if (!st.params.record_history) return;
  HistoryWindow w;
  w.x_lo = st.x;
  w.x_hi = kInf;
  w.bottom = st.bottom;
  w.y_at_lo.reserve(st.fronts.size());
  w.slopes.reserve(st.fronts.size());
  w.above.reserve(st.fronts.size());
  for (const auto& f : st.fronts) {
    w.y_at_lo.push_back(f.y);
    w.slopes.push_back(f.slope);
    w.above.push_back(f.above);
  }
  // replace a zero-width window left by an event at the same station
  if (!st.history.empty() && st.history.back().x_lo == st.x &&
      !(st.history.back().x_hi < kInf))
    st.history.pop_back();
  st.history.push_back(std::move(w));
}

void close_history_window(SimulationState& st, double x) {
  if (!st.params.record_history || st.history.empty()) return;
  if (!(st.history.back().x_hi < kInf)) st.history.back().x_hi = x;
}

#ifndef NDEBUG
void check_ordering(const SimulationState& st) {
  for (std::size_t i = 0; i + 1 < st.fronts.size(); ++i) {
    const auto& a = st.fronts[i];
    const auto& b = st.fronts[i + 1];
    assert(a.y <= b.y + 1e-9 * (1.0 + std::abs(b.y)));
  }
}
#endif

/** \brief Emits the wall wave for one processed corner: a nu-split strong fan
 *  for scheduled convex turns, a single weak kink wave otherwise (which also
 *  restores tangency after the reaction step tilted the wall state). */
void emit_corner_wave(SimulationState& st, double x, double omega_bg,
                      EventSummary& sum) {
  const double theta_target = st.theta_effective + omega_bg;
  const double omega_solve = theta_target - flow_theta(st.bottom);
  const FlowState U_prev = st.bottom;
  const double wall_y = st.wall_ref_y;
  std::vector<WaveFront> emitted;
  double np_unused = 0;
  (void)np_unused;
  if (omega_bg < 0.0) {
    // scheduled convex corner: strong expansion fan split into nu fronts
    assert(omega_solve < 0.0);
    BoundarySolution sol;
    try {
      sol = corner_solver(U_prev, omega_solve, CornerMode::strong_expansion, st.gas);
    } catch (const domain_error& e) {
      std::ostringstream os;
      os << "corner at x=" << x << ": " << e.what();
      throw domain_error(os.str());
    }
    sum.epsilon5 = sol.epsilon5;
    const int nu = st.params.nu;
    const double de = sol.epsilon5 / nu;
    FlowState below = sol.U_next;
    for (int k = 1; k <= nu; ++k) {
      const FlowState above =
          (k == nu) ? U_prev : detail::rarefaction_path(5, below, de, st.gas);
      WaveFront f;
      f.id = st.next_id++;
      f.family = 5;
      f.strength = de;
      f.order = 1;
      f.y = wall_y;
      f.slope = eigenvalue(5, above, st.gas);
      f.below = below;
      f.above = above;
      f.is_strong = true;
      emitted.push_back(std::move(f));
      below = above;
    }
    st.bottom = sol.U_next;
  } else if (std::abs(omega_solve) > 1e-15) {
    // concave kink or reaction-drift restoration: one weak order-1 wave
    BoundarySolution sol = corner_solver(U_prev, omega_solve,
                                         CornerMode::small_kink, st.gas);
    sum.epsilon5 = sol.epsilon5;
    st.bottom = sol.U_next;
    if (std::abs(sol.epsilon5) >= st.params.strength_floor) {
      WaveFront f;
      f.id = st.next_id++;
      f.family = 5;
      f.strength = sol.epsilon5;
      f.order = 1;
      f.y = wall_y;
      f.slope = sol.slope;
      f.below = sol.U_next;
      f.above = U_prev;
      f.is_strong = false;
      emitted.push_back(std::move(f));
    }
  }
  st.theta_effective = theta_target;
  for (const auto& f : emitted) append_record(st, x, "corner", f, 0.0);
  if (emitted.empty()) append_empty_record(st, x, "corner", wall_y);
  st.fronts.insert(st.fronts.begin(), emitted.begin(), emitted.end());
  const double resid = tangency_residual(st.bottom, st.theta_effective);
  st.tangent_ok = resid <= 1e-10;
  assert(st.tangent_ok);
}

void process_front_front(SimulationState& st, const Event& ev) {
  const std::size_t idx = index_of(st, ev.participants[0]);
  if (idx + 1 >= st.fronts.size() || st.fronts[idx + 1].id != ev.participants[1])
    throw contract_error("interaction participants are not adjacent");
  const WaveFront lo = st.fronts[idx];
  const WaveFront hi = st.fronts[idx + 1];
  assert(std::abs(lo.y - hi.y) <= 1e-7 * (1.0 + std::abs(lo.y)));
  const double y_meet = 0.5 * (lo.y + hi.y);
  const FlowState& U_b = lo.below;
  const FlowState& U_m = lo.above;
  const FlowState& U_a = hi.above;

  FrontFan fan;
  std::vector<int> orders;
  std::vector<bool> strong;
  const char* kind = "interaction";
  EventSummary sum;
  sum.x = ev.x;

  if (lo.family == kFamilyNP) {
    // non-physical front crosses the physical front above it
    kind = "np-crossing";
    fan = simplified_solver_np_crossing(U_b, U_m, U_a, desc_of(hi),
                                        st.lambda_hat, st.gas);
    for (const auto& rec : fan.fronts) {
      const bool np = rec.family == kFamilyNP;
      orders.push_back(np ? st.params.nu + 1 : hi.order);
      strong.push_back(np ? false : hi.is_strong);
    }
    sum.with_np = true;
    sum.strength_a = std::abs(hi.strength);
    sum.strength_b = lo.strength;
  } else if (hi.family == kFamilyNP) {
    throw contract_error("physical front overtook a non-physical front");
  } else if (std::max(lo.order, hi.order) >= st.params.nu ||
             (st.params.simplified_threshold > 0.0 && !lo.is_strong &&
              !hi.is_strong && hi.family <= lo.family &&
              std::abs(lo.strength) * std::abs(hi.strength) <
                  st.params.simplified_threshold)) {
    // Order budget exhausted, or the product is below the simplified-solver
    // threshold: the incoming strengths pass through unchanged and the
    // second-order residue goes non-physical.  Re-solving such pairs exactly
    // would re-derive strengths from flank states and thereby resurface any
    // jumps previously bridged by the strength floor, breaking the decay
    // accounting between mesh stations for no physical gain.
    fan = simplified_solver_interaction(U_b, U_m, U_a, desc_of(lo), desc_of(hi),
                                        st.lambda_hat, st.gas);
    for (const auto& rec : fan.fronts) {
      if (rec.family == kFamilyNP) {
        orders.push_back(st.params.nu + 1);
        strong.push_back(false);
      } else if (rec.family == lo.family && rec.family == hi.family) {
        orders.push_back(std::min(lo.order, hi.order));
        strong.push_back(lo.is_strong || hi.is_strong);
      } else if (rec.family == lo.family) {
        orders.push_back(lo.order);
        strong.push_back(lo.is_strong);
      } else {
        assert(rec.family == hi.family);
        orders.push_back(hi.order);
        strong.push_back(hi.is_strong);
      }
    }
  } else {
    // both orders below nu: accurate solver (single front per family)
    fan = accurate_solver(U_b, U_a, 1, st.gas);
    for (const auto& rec : fan.fronts) {
      const bool carries_strong =
          rec.family == 5 && ((lo.family == 5 && lo.is_strong) ||
                              (hi.family == 5 && hi.is_strong));
      orders.push_back(carries_strong
                           ? 1
                           : outgoing_order(rec.family, lo.family, lo.order,
                                            hi.family, hi.order, st.params.nu));
      strong.push_back(carries_strong);
    }
  }
  if (lo.family != kFamilyNP) {
    if (lo.is_strong != hi.is_strong) {
      sum.with_strong = true;
      sum.strength_a = std::abs(lo.is_strong ? hi.strength : lo.strength);
      sum.strength_b = std::abs(lo.is_strong ? lo.strength : hi.strength);
    } else {
      sum.weak_weak = true;
      sum.strength_a = std::abs(lo.strength);
      sum.strength_b = std::abs(hi.strength);
    }
  }
  sum.kind = kind;

  MappedFan mapped = map_fan(st, fan, y_meet, orders, strong);
  for (const auto& f : mapped.fronts)
    append_record(st, ev.x, kind, f, mapped.np_strength);
  if (mapped.fronts.empty()) append_empty_record(st, ev.x, kind, y_meet);
  sum.span_tracked = true;
  sum.span_lo = idx;
  sum.span_added = static_cast<std::uint32_t>(mapped.fronts.size());
  sum.span_removed = {lo, hi};
  st.fronts.erase(st.fronts.begin() + idx, st.fronts.begin() + idx + 2);
  st.fronts.insert(st.fronts.begin() + idx, mapped.fronts.begin(),
                   mapped.fronts.end());
  st.summaries.push_back(std::move(sum));
}

void process_front_wall(SimulationState& st, const Event& ev) {
  const std::size_t idx = index_of(st, ev.participants[0]);
  if (idx != 0) throw contract_error("a covered front reported a wall hit");
  const WaveFront f = st.fronts[0];
  if (f.family != 1)
    throw contract_error("only 1-family fronts reach the wall");
  const double wall_y = st.wall_elevation_effective(ev.x);
  assert(std::abs(f.y - wall_y) <= 1e-7 * (1.0 + std::abs(wall_y)));
  const std::array<double, 2> normal{std::sin(st.theta_effective),
                                     -std::cos(st.theta_effective)};
  BoundarySolution sol = reflection_solver(st.bottom, f.strength, normal, st.gas);
  st.bottom = sol.U_next;

  EventSummary sum;
  sum.kind = "wall";
  sum.x = ev.x;
  sum.strength_a = std::abs(f.strength);
  sum.epsilon5 = sol.epsilon5;
  st.summaries.push_back(std::move(sum));

  st.fronts.erase(st.fronts.begin());
  if (std::abs(sol.epsilon5) >= st.params.strength_floor) {
    WaveFront out;
    out.id = st.next_id++;
    out.family = 5;
    out.strength = sol.epsilon5;
    out.order = std::min(f.order + 1, st.params.nu);
    out.y = wall_y;
    out.slope = sol.slope;
    out.below = sol.U_next;
    out.above = f.above;
    out.is_strong = false;
    append_record(st, ev.x, "wall", out, 0.0);
    st.fronts.insert(st.fronts.begin(), std::move(out));
  } else {
    append_empty_record(st, ev.x, "wall", wall_y);
  }
  const double resid = tangency_residual(st.bottom, st.theta_effective);
  st.tangent_ok = resid <= 1e-10;
  assert(st.tangent_ok);
}

void process_reaction_line(SimulationState& st, const Event& ev) {
  EventSummary sum;
  sum.kind = "reaction";
  sum.x = ev.x;
  st.pending_corner = ev.station;

  if (st.norm_Z_bar == 0.0) {
    // nonreacting run: the step is exactly the identity
    append_empty_record(st, ev.x, "reaction", st.wall_ref_y);
    st.summaries.push_back(std::move(sum));
    return;
  }

  // region states bottom to top (last one extends to y = infinity)
  std::vector<FlowState> region;
  region.reserve(st.fronts.size() + 1);
  region.push_back(st.bottom);
  for (const auto& f : st.fronts) region.push_back(f.above);

  ReactionLineRecord line;
  line.x = ev.x;
  line.min_rate_over_u = kInf;
  std::vector<FlowState> stepped(region.size());
  for (std::size_t i = 0; i < region.size(); ++i) {
    const double rate = reaction_rate(temperature(region[i], st.gas), st.gas);
    line.min_rate_over_u = std::min(line.min_rate_over_u, rate / region[i].u);
    ReactionStepResult res;
    try {
      res = reaction_step(region[i], st.params.h, st.gas);
    } catch (const domain_error& e) {
      std::ostringstream os;
      os << "reaction line at x=" << ev.x << ", region " << i << ": " << e.what();
      throw domain_error(os.str());
    }
    stepped[i] = res.U_plus;
    line.sup_Z = std::max(line.sup_Z, res.report.Z_after);
    line.budget_warning = line.budget_warning || res.report.budget_warning;
  }

  std::vector<WaveFront> out;
  out.reserve(st.fronts.size());
  // Running chain state and pooled sub-floor drops: every re-solve targets
  // the true post-reaction state minus the pool, so the kept fronts chain
  // exactly and a single closure front at the top carries the pool out
  // (instead of one bookkeeping front per re-solve, which would flood the
  // run with crossing events).
  FlowState cur = stepped.front();
  double pool[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < st.fronts.size(); ++i) {
    const WaveFront& f = st.fronts[i];
    FlowState target = stepped[i + 1];
    target.u -= pool[0];
    target.v -= pool[1];
    target.p -= pool[2];
    target.rho -= pool[3];
    if (f.family == kFamilyNP) {
      // non-physical fronts cross reaction lines unchanged in strength
      WaveFront keep = f;
      keep.below = cur;
      keep.above = target;
      cur = target;
      out.push_back(std::move(keep));
      append_record(st, ev.x, "reaction", out.back(), f.strength);
      continue;
    }
    FrontFan fan;
    try {
      fan = accurate_solver(cur, target, 1, st.gas);
    } catch (const std::runtime_error& e) {
      std::ostringstream os;
      os << "reaction line at x=" << ev.x << ", front " << f.id
         << " re-solve: " << e.what();
      throw domain_error(os.str());
    }
    std::vector<int> orders;
    std::vector<bool> strong;
    for (const auto& rec : fan.fronts) {
      const bool carries_strong = rec.family == 5 && f.family == 5 && f.is_strong;
      orders.push_back(carries_strong ? 1
                                      : outgoing_order(rec.family, f.family,
                                                       f.order, f.family, f.order,
                                                       st.params.nu));
      strong.push_back(carries_strong);
    }
    MappedFan mapped = map_fan(st, fan, f.y, orders, strong, pool);
    if (!mapped.fronts.empty()) cur = mapped.fronts.back().above;
    // Z travels on kept 4-contacts only; keep the chain from drifting by
    // re-pinning it to the true post-reaction value.
    assert(std::abs(cur.Z - stepped[i + 1].Z) < 1e-12);
    cur.Z = stepped[i + 1].Z;
    for (const auto& g : mapped.fronts)
      append_record(st, ev.x, "reaction", g, 0.0);
    for (auto& g : mapped.fronts) out.push_back(std::move(g));
  }
  if (!st.fronts.empty()) {
    // one closure front carries the pooled drops (and solver round-off)
    FlowState gap_below = cur;
    gap_below.Z = stepped.back().Z;
    const double eps = detail::state_distance(stepped.back(), gap_below);
    if (eps >= 1e-12) {
      WaveFront f;
      f.id = st.next_id++;
      f.family = kFamilyNP;
      f.strength = eps;
      f.order = st.params.nu + 1;
      f.y = out.empty() ? st.fronts.back().y : out.back().y;
      f.slope = st.lambda_hat;
      f.below = gap_below;
      f.above = stepped.back();
      f.is_strong = false;
      append_record(st, ev.x, "reaction", f, eps);
      out.push_back(std::move(f));
    }
  }
  if (out.empty() && st.fronts.empty())
    append_empty_record(st, ev.x, "reaction", st.wall_ref_y);
  st.fronts = std::move(out);
  st.bottom = stepped.front();
  st.reaction_lines.push_back(line);
  st.summaries.push_back(std::move(sum));
}

void process_corner(SimulationState& st, const Event& ev) {
  const long k = ev.station;
  // advance the effective wall anchor to this station with the old angle
  st.wall_ref_y = st.wall_elevation_effective(ev.x);
  st.wall_ref_x = ev.x;
  const double omega_bg =
      (k >= 0 && k < static_cast<long>(st.corner_effective.size()))
          ? st.corner_effective[k]
          : 0.0;
  EventSummary sum;
  sum.kind = "corner";
  sum.x = ev.x;
  sum.omega = omega_bg;
  emit_corner_wave(st, ev.x, omega_bg, sum);
  st.summaries.push_back(std::move(sum));
  st.pending_corner = -1;
  st.next_station = k + 1;
}

} // namespace

SimulationState initialize(const InflowProfile& inflow, const WallMesh& wall,
                           const GasModel& gas, const TrackerParams& params) {
  gas.validate();
  if (params.nu < 1) throw domain_error("nu must be at least 1");
  if (!(params.h > 0)) throw domain_error("h must be positive");
  if (std::abs(wall.h - params.h) > 1e-12 * params.h)
    throw contract_error("wall mesh spacing does not match the run's h");

  SimulationState st;
  st.x = 0;
  st.wall = wall;
  st.gas = gas;
  st.params = params;
  st.rng = SplitMix64(params.seed);
  st.bottom = inflow.bottom;
  st.corner_effective = effective_schedule(wall.turning_angles, params.nu);

  // validate the inflow profile against the far-field admissible region
  const FlowState& far = inflow.far_field();
  const AdmissibleRegion region =
      make_admissible_region(far, params.delta0, params.theta_crit, gas);
  std::vector<std::pair<double, FlowState>> layers = inflow.layers;
  inflow.bottom.validate();
  if (!in_admissible_region(inflow.bottom, region, gas))
    throw domain_error("inflow layer 0 outside the admissible region");
  for (std::size_t j = 0; j < layers.size(); ++j) {
    layers[j].second.validate();
    if (!(layers[j].first > 0))
      throw domain_error("inflow breakpoints must be positive");
    if (j > 0 && !(layers[j].first > layers[j - 1].first))
      throw domain_error("inflow breakpoints must increase");
    if (!in_admissible_region(layers[j].second, region, gas)) {
      std::ostringstream os;
      os << "inflow layer " << (j + 1) << " outside the admissible region";
      throw domain_error(os.str());
    }
  }
  if (tangency_residual(inflow.bottom, 0.0) > 1e-10)
    throw domain_error("bottom inflow state is not wall-tangent at x = 0");
  st.norm_Z_bar = inflow.bottom.Z;
  for (const auto& l : layers) st.norm_Z_bar = std::max(st.norm_Z_bar, l.second.Z);

  // one accurate nu-split fan per inflow jump
  FlowState below_state = inflow.bottom;
  for (std::size_t j = 0; j < layers.size(); ++j) {
    const FlowState& above_state = layers[j].second;
    FrontFan fan;
    try {
      fan = accurate_solver(below_state, above_state, params.nu, gas);
    } catch (const std::runtime_error& e) {
      std::ostringstream os;
      os << "inflow jump " << (j + 1) << ": " << e.what();
      throw domain_error(os.str());
    }
    std::vector<int> orders(fan.fronts.size(), 1);
    std::vector<bool> strong(fan.fronts.size(), false);
    MappedFan mapped = map_fan(st, fan, layers[j].first, orders, strong);
    for (const auto& f : mapped.fronts) append_record(st, 0.0, "init", f, 0.0);
    for (auto& f : mapped.fronts) st.fronts.push_back(std::move(f));
    below_state = above_state;
  }
  EventSummary init_sum;
  init_sum.kind = "init";
  init_sum.x = 0;
  st.summaries.push_back(std::move(init_sum));

  // the corner at x = 0 (station 0) turns the bottom state onto the wall
  if (!st.corner_effective.empty() && st.corner_effective[0] != 0.0) {
    EventSummary sum;
    sum.kind = "corner";
    sum.x = 0;
    sum.omega = st.corner_effective[0];
    emit_corner_wave(st, 0.0, st.corner_effective[0], sum);
    st.summaries.push_back(std::move(sum));
  }

  // common slope of all non-physical fronts, above every physical slope
  double lam_max = eigenvalue(5, st.bottom, gas);
  for (const auto& f : st.fronts) {
    lam_max = std::max(lam_max, eigenvalue(5, f.below, gas));
    lam_max = std::max(lam_max, eigenvalue(5, f.above, gas));
  }
  st.lambda_hat = lam_max + 0.2 * (1.0 + std::abs(lam_max));

  st.next_station = 1;
  open_history_window(st);
#ifndef NDEBUG
  check_ordering(st);
#endif
  return st;
}

Event next_event(SimulationState& state) {
  if (state.pending_corner >= 0) {
    Event ev;
    ev.kind = Event::Kind::corner;
    ev.x = state.pending_corner * state.params.h;
    ev.station = state.pending_corner;
    return ev;
  }
  struct Candidate {
    double x;
    int priority;  // front-front < front-wall < station
    std::uint64_t a, b;
    double y_meet;
    Event ev;
  };
  const double tol = std::ldexp(1.0, -state.params.nu - 4);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<Candidate> cand;
    // next mesh station (reaction line, then the corner)
    {
      Event ev;
      ev.kind = Event::Kind::reaction_line;
      ev.station = state.next_station;
      ev.x = state.next_station * state.params.h;
      cand.push_back(
          Candidate{ev.x, 2, 0, 0, std::numeric_limits<double>::quiet_NaN(), ev});
    }
    // bottom front against the effective wall line
    if (!state.fronts.empty()) {
      const WaveFront& f = state.fronts.front();
      const double tw = std::tan(state.theta_effective);
      if (f.slope < tw - 1e-14) {
        const double x_hit =
            (state.wall_ref_y - tw * state.wall_ref_x - f.y + f.slope * state.x) /
            (f.slope - tw);
        if (x_hit > state.x - 1e-12) {
          Event ev;
          ev.kind = Event::Kind::front_wall;
          ev.x = std::max(x_hit, state.x);
          ev.participants = {f.id, 0};
          const double y_hit = f.y + f.slope * (ev.x - state.x);
          cand.push_back(Candidate{ev.x, 1, f.id, 0, y_hit, ev});
        }
      }
    }
    // adjacent front pairs
    for (std::size_t i = 0; i + 1 < state.fronts.size(); ++i) {
      const WaveFront& lo = state.fronts[i];
      const WaveFront& hi = state.fronts[i + 1];
      if (!(lo.slope > hi.slope)) continue;
      const double dx = (hi.y - lo.y) / (lo.slope - hi.slope);
      const double x_c = state.x + std::max(dx, 0.0);
      Event ev;
      ev.kind = Event::Kind::front_front;
      ev.x = x_c;
      ev.participants = {lo.id, hi.id};
      const double y_c = lo.y + lo.slope * (x_c - state.x);
      cand.push_back(Candidate{x_c, 0, lo.id, hi.id, y_c, ev});
    }
    std::sort(cand.begin(), cand.end(), [](const Candidate& p, const Candidate& q) {
      if (p.x != q.x) return p.x < q.x;
      if (p.priority != q.priority) return p.priority < q.priority;
      if (p.a != q.a) return p.a < q.a;
      return p.b < q.b;
    });
#ifdef SFRONT_DEBUG_TIES
    if (attempt > 0)
      for (std::size_t k = 0; k < cand.size() && k < 3; ++k)
        std::fprintf(stderr,
                     "[tie] attempt=%d cand[%zu] x=%.17g prio=%d a=%llu b=%llu "
                     "y=%.17g\n",
                     attempt, k, cand[k].x, cand[k].priority,
                     (unsigned long long)cand[k].a, (unsigned long long)cand[k].b,
                     cand[k].y_meet);
#endif
    // Strictly increasing x already gives a well-defined processing order,
    // even for shared-participant meetings a whisker apart: the first one is
    // handled and the successor fronts meet the third party downstream.  The
    // order is genuinely ambiguous only when a shared participant meets two
    // partners at numerically the same x, so the slope nudge is reserved for
    // that case (which keeps it within the coincidence window above).
    const double tol_exact = 4096 * std::numeric_limits<double>::epsilon() *
                             std::max(1.0, std::abs(cand.front().x));
    if (cand.size() >= 2 && cand[1].x - cand[0].x < std::min(tol, tol_exact)) {
      std::uint64_t shared = 0;
      for (std::uint64_t u : {cand[0].a, cand[0].b})
        for (std::uint64_t v : {cand[1].a, cand[1].b})
          if (u != 0 && u == v) shared = u;
      if (shared != 0) {
        const double delta = (1.0 + state.rng.next_unit()) *
                             std::ldexp(1.0, -state.params.nu - 2);
        WaveFront& nudged = state.fronts[index_of(state, shared)];
        nudged.slope += delta;
        state.slope_nudges.push_back(SlopeNudge{shared, state.x, nudged.slope});
        ++state.perturbation_count;
        continue;
      }
    }
    return cand.front().ev;
  }
#ifdef SFRONT_DEBUG_TIES
  {
    std::fprintf(stderr, "[tie] state.x=%.17g nfronts=%zu\n", state.x,
                 state.fronts.size());
    for (const auto& f : state.fronts)
      std::fprintf(stderr,
                   "[tie]  front id=%llu fam=%d ord=%d strong=%d y=%.17g "
                   "slope=%.17g strength=%.3e\n",
                   (unsigned long long)f.id, f.family, f.order, (int)f.is_strong,
                   f.y, f.slope, f.strength);
  }
#endif
  throw contract_error("more than two fronts meet within the perturbation tolerance");
}

void handle_event(SimulationState& state, const Event& event) {
  assert(event.x >= state.x - 1e-12);
  close_history_window(state, event.x);
  const double dx = event.x - state.x;
  if (dx > 0) {
    for (auto& f : state.fronts) f.y += f.slope * dx;
    state.x = event.x;
  }
  switch (event.kind) {
    case Event::Kind::front_front: process_front_front(state, event); break;
    case Event::Kind::front_wall: process_front_wall(state, event); break;
    case Event::Kind::reaction_line: process_reaction_line(state, event); break;
    case Event::Kind::corner: process_corner(state, event); break;
  }
#ifndef NDEBUG
  check_ordering(state);
#endif
  open_history_window(state);
}

std::vector<SliceProfile> run(SimulationState& state, double x_max,
                              const std::vector<double>& slice_xs,
                              const std::function<void(const SimulationState&)>&
                                  on_event) {
  for (double xs : slice_xs)
    if (xs > x_max || xs < state.x)
      throw domain_error("slice station outside the run range");
  std::vector<std::pair<double, std::size_t>> pending;
  for (std::size_t i = 0; i < slice_xs.size(); ++i)
    pending.emplace_back(slice_xs[i], i);
  std::sort(pending.begin(), pending.end());
  std::vector<SliceProfile> results(slice_xs.size());

  const double quantum = std::ldexp(1.0, -state.params.nu);
  const double tol = std::ldexp(1.0, -state.params.nu - 4);
  while (true) {
    Event ev = next_event(state);
    while (!pending.empty() && pending.front().first <= ev.x) {
      auto [xs, slot] = pending.front();
      pending.erase(pending.begin());
      if (std::abs(xs - ev.x) < tol || std::abs(xs - state.x) < tol) {
        const double shifted = xs + quantum;
        std::ostringstream os;
        os << "slice at x=" << xs << " coincides with an event; shifted to x="
           << shifted;
        state.notices.push_back(os.str());
        auto it = std::lower_bound(pending.begin(), pending.end(),
                                   std::make_pair(shifted, std::size_t{0}));
        pending.insert(it, {shifted, slot});
        continue;
      }
      results[slot] = sample_slice(state, xs);
    }
    if (ev.x > x_max) break;
    handle_event(state, ev);
    if (on_event) on_event(state);
  }
  for (const auto& [xs, slot] : pending) results[slot] = sample_slice(state, xs);
  close_history_window(state, x_max);
  return results;
}

SliceProfile sample_slice(const SimulationState& state, double x) {
  assert(x >= state.x - 1e-12);
  SliceProfile out;
  out.states.push_back(state.bottom);
  for (const auto& f : state.fronts) {
    const double y = f.y + f.slope * (x - state.x);
    assert(out.breakpoints.empty() || y >= out.breakpoints.back() - 1e-12);
    out.breakpoints.push_back(y);
    out.states.push_back(f.above);
  }
  return out;
}

FlowState sample_history(const SimulationState& state, double x, double y) {
  if (!state.params.record_history)
    throw contract_error("history sampling requires record_history");
  for (const auto& w : state.history) {
    if (!(x >= w.x_lo && x < w.x_hi)) continue;
    FlowState cur = w.bottom;
    for (std::size_t i = 0; i < w.y_at_lo.size(); ++i) {
      const double yf = w.y_at_lo[i] + w.slopes[i] * (x - w.x_lo);
      if (y < yf) return cur;
      cur = w.above[i];
    }
    return cur;
  }
  throw domain_error("history sample outside the recorded range");
}

} // namespace sfront
