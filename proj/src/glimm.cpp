/** \file glimm.cpp
 *  \brief Variation-functional bookkeeping: weighted strength sums, the
 *         corner-modified total variation, per-event interaction measures,
 *         run audits, and the weak-form residual over recorded histories.
 */
#include "sfront/glimm.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#ifdef SFRONT_DEBUG_RESIDUAL
#include <cstdio>
#endif
#include <sstream>

namespace sfront {

namespace {

using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;

double flow_theta(const FlowState& U) { return std::atan2(U.v, U.u); }

int approach_family(const WaveFront& f) {
  return f.family == kFamilyNP ? 6 : f.family;
}

bool is_shock(const WaveFront& f) {
  return genuinely_nonlinear(f.family) && f.strength < 0;
}

/// approaching() on (family, shock) tags alone; tag 6 is non-physical.
bool approach_tags(int fam_lo, bool shock_lo, int fam_hi, bool shock_hi) {
  const int ia = fam_lo == kFamilyNP ? 6 : fam_lo;
  const int ib = fam_hi == kFamilyNP ? 6 : fam_hi;
  if (ia > ib) return true;
  if (ia < ib) return false;
  if (fam_lo == kFamilyContact) return false;  // composites stay parallel
  if (fam_lo == kFamilyNP) return false;       // common slope
  return shock_lo || shock_hi;
}

/// Corner-schedule aggregates at x_eval: pending convex turning (the weight
/// exponent), processed convex turning, and pending concave turning.
struct CornerAggregates {
  double omega_ra = 0, theta_hat = 0, Q_c = 0;
};

CornerAggregates corner_aggregates(const SimulationState& state, double x_eval) {
  CornerAggregates out;
  const double h = state.params.h;
  for (std::size_t k = 0; k < state.corner_effective.size(); ++k) {
    const double w = state.corner_effective[k];
    if (w == 0.0) continue;
    const double xk = static_cast<double>(k) * h;
    if (w < 0.0) {
      if (xk >= x_eval)
        out.omega_ra += -w;
      else
        out.theta_hat += -w;
    } else if (xk >= x_eval) {
      out.Q_c += w;
    }
  }
  return out;
}

/// Recomputes the composed quantities (Q, F1, F0, F, script_F) from the sums.
void compose(GlimmBreakdown& b, const GlimmConstants& c, double x_eval,
             const SimulationState& state);

/// Turning magnitude across a front (strong fronts are weighted by it).
double theta_jump(const WaveFront& f) {
  return std::abs(flow_theta(f.above) - flow_theta(f.below));
}

/// Closed form of the geometric reaction tail sum_{k >= k0} h e^{-L k h}.
double reaction_tail(double x_eval, double h, double L, double amplitude) {
  if (amplitude == 0.0) return 0.0;
  assert(L > 0.0 && h > 0.0);
  const long k0 = static_cast<long>(std::floor(x_eval / h)) + 1;
  const double r = std::exp(-L * h);
  return amplitude * h * std::exp(-L * k0 * h) / (1.0 - r);
}

void compose(GlimmBreakdown& b, const GlimmConstants& c, double x_eval,
             const SimulationState& state) {
  b.Q = c.K0 * b.Q0 +
        c.K1 * (b.Q_B[0] + b.Q_B[1] + b.Q_B[2] + b.Q_B[3]) +
        b.Q_B[4] + b.Q_BNP + c.K_c * b.Q_c;
  b.F1 = std::abs(b.tv_theta - b.theta_hat);
  b.F0 = b.L_w + c.K * b.Q;
  b.F = b.F1 + c.C_star * b.F0;
  b.script_F = b.F + reaction_tail(x_eval, state.params.h, c.L,
                                   c.script_K * state.norm_Z_bar);
}

Vec5 W_flux(const FlowState& U, const GasModel& gas) {
  const double htot = gas.gamma * U.p / ((gas.gamma - 1.0) * U.rho) +
                      0.5 * (U.u * U.u + U.v * U.v);
  return Vec5{U.rho * U.u, U.rho * U.u * U.u + U.p, U.rho * U.u * U.v,
              U.rho * U.u * htot, U.rho * U.u * U.Z};
}

Vec5 H_flux(const FlowState& U, const GasModel& gas) {
  const double htot = gas.gamma * U.p / ((gas.gamma - 1.0) * U.rho) +
                      0.5 * (U.u * U.u + U.v * U.v);
  return Vec5{U.rho * U.v, U.rho * U.u * U.v, U.rho * U.v * U.v + U.p,
              U.rho * U.v * htot, U.rho * U.v * U.Z};
}

Vec5 G_source(const FlowState& U, const GasModel& gas) {
  if (U.Z == 0.0) return Vec5{0, 0, 0, 0, 0};
  const double rate = reaction_rate(temperature(U, gas), gas);
  const double burn = U.rho * rate * U.Z;
  return Vec5{0, 0, 0, gas.q_tilde * burn, -burn};
}

double bump1(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

double bump1_deriv(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  const double om = 1.0 - t * t;
  return bump1(t) * (-2.0 * t / (om * om));
}

} // namespace

bool approaching(const WaveFront& lower, const WaveFront& upper) {
  return approach_tags(lower.family, is_shock(lower), upper.family,
                       is_shock(upper));
}

GlimmBreakdown functional(const SimulationState& state,
                          const GlimmConstants& c, double x_eval) {
  GlimmBreakdown out;

  // corner aggregates from the effective (rule-processed) turning schedule
  const CornerAggregates agg = corner_aggregates(state, x_eval);
  const double omega_ra = agg.omega_ra;
  out.theta_hat = agg.theta_hat;
  out.Q_c = agg.Q_c;

  const std::size_t n = state.fronts.size();
  // prefix/suffix sums of strong turning for the downstream weights
  std::vector<double> strong_below(n, 0.0), strong_above(n, 0.0);
  {
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      strong_below[i] = acc;
      if (state.fronts[i].is_strong) acc += theta_jump(state.fronts[i]);
    }
    acc = 0;
    for (std::size_t i = n; i-- > 0;) {
      strong_above[i] = acc;
      if (state.fronts[i].is_strong) acc += theta_jump(state.fronts[i]);
    }
  }

  double tv = std::abs(flow_theta(state.bottom) - state.theta_effective);
  for (std::size_t i = 0; i < n; ++i) {
    const WaveFront& f = state.fronts[i];
    tv += theta_jump(f);
    if (f.is_strong) continue;  // strong fronts live in the variation term
    if (f.family == kFamilyNP) {
      out.L_w += f.strength;
      out.Q_BNP += std::exp(c.K_np * strong_above[i]) * f.strength;
      continue;
    }
    const double w_minus = std::exp(c.K_b * omega_ra + c.K_w * strong_below[i]);
    if (f.family == kFamilyContact) {
      for (int comp = 0; comp < 3; ++comp) {
        out.L_w += std::abs(f.contact[comp]);
        out.Q_B[1 + comp] += w_minus * std::abs(f.contact[comp]);
      }
    } else if (f.family == 1) {
      out.L_w += std::abs(f.strength);
      out.Q_B[0] += w_minus * std::abs(f.strength);
    } else {
      assert(f.family == 5);
      out.L_w += std::abs(f.strength);
      out.Q_B[4] += std::abs(f.strength);  // unweighted by design
    }
  }

  // pairwise approaching potential over weak fronts
  for (std::size_t i = 0; i < n; ++i) {
    const WaveFront& a = state.fronts[i];
    if (a.is_strong) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      const WaveFront& b = state.fronts[j];
      if (b.is_strong) continue;
      if (approaching(a, b)) out.Q0 += std::abs(a.strength) * std::abs(b.strength);
    }
  }

  out.tv_theta = tv;
  compose(out, c, x_eval, state);
  return out;
}

GlimmRow glimm_row(const SimulationState& state, const GlimmConstants& constants,
                   const EventSummary& summary) {
  const double x_eval =
      evaluation_offset_x(summary.kind, summary.x, state.params.h);
  const GlimmBreakdown b = functional(state, constants, x_eval);
  GlimmRow row;
  row.x = summary.x;
  row.kind = summary.kind;
  row.L_w = b.L_w;
  row.Q = b.Q;
  row.F1 = b.F1;
  row.F0 = b.F0;
  row.F = b.F;
  row.script_F = b.script_F;
  row.E = event_interaction_measure(summary);
  return row;
}

void GlimmAccumulator::rebuild(const SimulationState& state, double x_eval) {
  b_ = functional(state, c_, x_eval);
  omega_ra_ = corner_aggregates(state, x_eval).omega_ra;
  valid_ = true;
}

bool GlimmAccumulator::update_span(const SimulationState& state,
                                   const EventSummary& ev) {
  // strong fronts enter every downstream weight: touching one means a rebuild
  for (const auto& f : ev.span_removed)
    if (f.is_strong) return false;
  const std::size_t lo = ev.span_lo;
  const std::size_t added = ev.span_added;
  assert(lo + added <= state.fronts.size());
  for (std::size_t i = 0; i < added; ++i)
    if (state.fronts[lo + i].is_strong) return false;

  // the weight exponent must not have moved since the last row (it changes
  // only across corner stations, which rebuild anyway)
  const double x_eval = evaluation_offset_x(ev.kind, ev.x, state.params.h);
  const CornerAggregates agg = corner_aggregates(state, x_eval);
  if (agg.omega_ra != omega_ra_) return false;
  b_.theta_hat = agg.theta_hat;
  b_.Q_c = agg.Q_c;

  // one pass over the unchanged fronts: per-tag weak strength sums and the
  // strong turning totals on each side of the span
  double below[7][2] = {{0}}, above[7][2] = {{0}};
  double strong_below = 0, strong_above = 0;
  const std::size_t n = state.fronts.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= lo && i < lo + added) continue;
    const WaveFront& f = state.fronts[i];
    const bool is_below = i < lo;
    if (f.is_strong) {
      (is_below ? strong_below : strong_above) += theta_jump(f);
      continue;
    }
    (is_below ? below : above)[approach_family(f)][is_shock(f) ? 1 : 0] +=
        std::abs(f.strength);
  }

  const double w_minus = std::exp(c_.K_b * omega_ra_ + c_.K_w * strong_below);
  const double w_np = std::exp(c_.K_np * strong_above);
  auto cross_q0 = [&](const WaveFront& f) {
    const int fam = f.family;
    const bool shock = is_shock(f);
    double sum = 0;
    for (int g = 1; g <= 6; ++g)
      for (int sh = 0; sh < 2; ++sh) {
        if (below[g][sh] != 0.0 && approach_tags(g, sh != 0, fam, shock))
          sum += below[g][sh];
        if (above[g][sh] != 0.0 && approach_tags(fam, shock, g, sh != 0))
          sum += above[g][sh];
      }
    return std::abs(f.strength) * sum;
  };
  auto apply = [&](const WaveFront& f, double sgn) {
    b_.tv_theta += sgn * theta_jump(f);
    if (f.family == kFamilyNP) {
      b_.L_w += sgn * f.strength;
      b_.Q_BNP += sgn * w_np * f.strength;
    } else if (f.family == kFamilyContact) {
      for (int comp = 0; comp < 3; ++comp) {
        b_.L_w += sgn * std::abs(f.contact[comp]);
        b_.Q_B[1 + comp] += sgn * w_minus * std::abs(f.contact[comp]);
      }
    } else if (f.family == 1) {
      b_.L_w += sgn * std::abs(f.strength);
      b_.Q_B[0] += sgn * w_minus * std::abs(f.strength);
    } else {
      assert(f.family == 5);
      b_.L_w += sgn * std::abs(f.strength);
      b_.Q_B[4] += sgn * std::abs(f.strength);
    }
    b_.Q0 += sgn * cross_q0(f);
  };
  for (const auto& f : ev.span_removed) apply(f, -1.0);
  for (std::size_t i = 0; i < added; ++i) apply(state.fronts[lo + i], +1.0);

  // pairs internal to each span
  for (std::size_t i = 0; i < ev.span_removed.size(); ++i)
    for (std::size_t j = i + 1; j < ev.span_removed.size(); ++j)
      if (approaching(ev.span_removed[i], ev.span_removed[j]))
        b_.Q0 -= std::abs(ev.span_removed[i].strength) *
                 std::abs(ev.span_removed[j].strength);
  for (std::size_t i = 0; i < added; ++i)
    for (std::size_t j = i + 1; j < added; ++j)
      if (approaching(state.fronts[lo + i], state.fronts[lo + j]))
        b_.Q0 += std::abs(state.fronts[lo + i].strength) *
                 std::abs(state.fronts[lo + j].strength);

  compose(b_, c_, x_eval, state);
  return true;
}

GlimmRow GlimmAccumulator::row_after(const SimulationState& state,
                                     const EventSummary& ev) {
  const bool fast = valid_ && ev.span_tracked &&
                    (ev.kind == "interaction" || ev.kind == "np-crossing") &&
                    update_span(state, ev);
  if (!fast)
    rebuild(state, evaluation_offset_x(ev.kind, ev.x, state.params.h));
  GlimmRow row;
  row.x = ev.x;
  row.kind = ev.kind;
  row.L_w = b_.L_w;
  row.Q = b_.Q;
  row.F1 = b_.F1;
  row.F0 = b_.F0;
  row.F = b_.F;
  row.script_F = b_.script_F;
  row.E = event_interaction_measure(ev);
  return row;
}

double event_interaction_measure(const EventSummary& ev) {
  if (ev.kind == "np-crossing")
    return ev.strength_a * ev.strength_b;
  if (ev.kind == "interaction") {
    if (ev.with_strong || ev.weak_weak) return ev.strength_a * ev.strength_b;
  } else if (ev.kind == "wall") {
    return ev.strength_a;
  } else if (ev.kind == "corner") {
    return ev.omega > 0 ? ev.omega : 0.0;
  } else if (ev.kind == "reaction" || ev.kind == "init") {
    return 0.0;
  }
  std::ostringstream os;
  os << "unclassified event for the interaction measure: kind=" << ev.kind
     << " x=" << ev.x << " weak_weak=" << ev.weak_weak
     << " with_np=" << ev.with_np << " with_strong=" << ev.with_strong
     << " |a|=" << ev.strength_a << " |b|=" << ev.strength_b
     << " omega=" << ev.omega;
  throw contract_error(os.str());
}

AuditReport audit_monotonicity(const std::vector<GlimmRow>& rows, double h) {
  (void)h;
  AuditReport rep;
  if (rows.empty()) return rep;
  rep.initial_script_F = rows.front().script_F;
  rep.max_script_F = rows.front().script_F;
  rep.sum_E = rows.front().E;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const GlimmRow& prev = rows[i - 1];
    const GlimmRow& cur = rows[i];
    rep.sum_E += cur.E;
    rep.max_script_F = std::max(rep.max_script_F, cur.script_F);
    const double slack = 1e-10 + 1e-12 * std::abs(prev.F);
    const bool station = cur.kind == "reaction" || cur.kind == "corner";
    if (!station) {
      const double bound = prev.F - cur.E / 4.0;
      if (cur.F > bound + slack)
        rep.violations.push_back(
            AuditFinding{i, "F failed to drop by E/4 across an interior event",
                         cur.F, bound});
    }
    if (cur.script_F > prev.script_F + slack)
      rep.violations.push_back(AuditFinding{
          i, "script_F increased", cur.script_F, prev.script_F});
  }
  return rep;
}

double BumpTest::value(double x, double y) const {
  return bump1((x - cx) / rx) * bump1((y - cy) / ry);
}

double BumpTest::ddx(double x, double y) const {
  return bump1_deriv((x - cx) / rx) / rx * bump1((y - cy) / ry);
}

double BumpTest::ddy(double x, double y) const {
  return bump1((x - cx) / rx) * bump1_deriv((y - cy) / ry) / ry;
}

double weak_residual(const SimulationState& state, const BumpTest& psi,
                     int eta_sign) {
  if (!state.params.record_history || state.history.empty())
    throw contract_error("weak_residual requires a run with record_history");
  if (!(eta_sign == 1 || eta_sign == -1))
    throw contract_error("eta_sign must be +1 or -1");
  const double x_lo_supp = psi.cx - psi.rx;
  const double x_hi_supp = psi.cx + psi.rx;
  if (!(x_lo_supp > 0))
    throw domain_error("test function must be supported strictly right of the inflow line");
  if (!(x_hi_supp <= state.history.back().x_hi))
    throw domain_error("test function support extends beyond the recorded run");
  // support must sit strictly above the wall
  double wall_max = std::max(state.wall.elevation(x_lo_supp),
                             state.wall.elevation(x_hi_supp));
  for (const auto& corner : state.wall.corners)
    if (corner[0] > x_lo_supp && corner[0] < x_hi_supp)
      wall_max = std::max(wall_max, corner[1]);
  if (!(psi.cy - psi.ry > wall_max))
    throw domain_error("test function must be supported strictly above the wall");

  const GasModel& gas = state.gas;
  Vec5 total{0, 0, 0, 0, 0};
  const double y_lo_supp = psi.cy - psi.ry;
  const double y_hi_supp = psi.cy + psi.ry;

  Vec5 front_total{}, station_total{}, area_total{};

  // front-jump terms: constant jump vector times a line integral of psi
  for (const auto& w : state.history) {
    const double a = std::max(w.x_lo, x_lo_supp);
    const double b = std::min(w.x_hi, x_hi_supp);
    if (!(a < b)) continue;
    for (std::size_t i = 0; i < w.y_at_lo.size(); ++i) {
      const double s = w.slopes[i];
      const double y0 = w.y_at_lo[i] - s * w.x_lo;
      const double ya = y0 + s * a, yb = y0 + s * b;
      if ((ya <= y_lo_supp && yb <= y_lo_supp) ||
          (ya >= y_hi_supp && yb >= y_hi_supp))
        continue;  // segment misses the vertical support
      const FlowState& B = (i == 0) ? w.bottom : w.above[i - 1];
      const FlowState& A = w.above[i];
      const Vec5 jump = s * (W_flux(A, gas) - W_flux(B, gas)) -
                        (H_flux(A, gas) - H_flux(B, gas));
      if (max_abs(jump) == 0.0) continue;
      // Windows are at most one mesh step wide and the integrand is smooth,
      // so a shallow fixed split is already at rounding accuracy; deep
      // adaptive recursion would spin on the bump's flat tails, where the
      // relative-error test cannot be met.
      const double weight = Quad::integrate(
          [&](double x) { return psi.value(x, y0 + s * x); }, a, b, 3, 1e-7);
      front_total = front_total + weight * jump;
    }
  }

  // station-jump terms: profiles just before and just after each x = kh
  const double h = state.params.h;
  const long k_lo = static_cast<long>(std::floor(x_lo_supp / h)) + 1;
  const long k_hi = static_cast<long>(std::floor(x_hi_supp / h));
  for (long k = k_lo; k <= k_hi; ++k) {
    const double xk = k * h;
    // Several events can share the station x (reaction, then the corner),
    // leaving zero-width windows between them; the profiles to difference are
    // the ones of positive width on either side.
    long i_pre = -1, i_post = -1;
    for (std::size_t i = 0; i < state.history.size(); ++i) {
      const HistoryWindow& w = state.history[i];
      if (w.x_hi == xk && w.x_lo < xk) i_pre = static_cast<long>(i);
      if (w.x_lo == xk && w.x_hi > xk) i_post = static_cast<long>(i);
    }
    if (i_pre < 0 || i_post < 0) continue;  // station beyond the run
    const HistoryWindow& pre = state.history[i_pre];
    const HistoryWindow& post = state.history[i_post];
    // merged breakpoints of both profiles at xk
    std::vector<double> cuts{y_lo_supp, y_hi_supp};
    for (std::size_t i = 0; i < pre.y_at_lo.size(); ++i)
      cuts.push_back(pre.y_at_lo[i] + pre.slopes[i] * (xk - pre.x_lo));
    for (double y : post.y_at_lo) cuts.push_back(y);
    std::sort(cuts.begin(), cuts.end());
    auto state_at = [&](const HistoryWindow& win, double x, double y) {
      FlowState cur = win.bottom;
      for (std::size_t i = 0; i < win.y_at_lo.size(); ++i) {
        if (y < win.y_at_lo[i] + win.slopes[i] * (x - win.x_lo)) break;
        cur = win.above[i];
      }
      return cur;
    };
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double ya = std::max(cuts[c], y_lo_supp);
      const double yb = std::min(cuts[c + 1], y_hi_supp);
      if (!(ya < yb)) continue;
      const double ym = 0.5 * (ya + yb);
      const Vec5 jump = W_flux(state_at(pre, xk, ym), gas) -
                        W_flux(state_at(post, xk, ym), gas);
      if (max_abs(jump) == 0.0) continue;
      const double weight = Quad::integrate(
          [&](double y) { return psi.value(xk, y); }, ya, yb, 6, 1e-7);
      station_total = station_total + weight * jump;
    }
  }

  // Cumulative vertical bump profile for the volume term.  The test function
  // is a product of two one-dimensional bumps, so the inner y-integral over a
  // region reduces to a difference of this antiderivative; the table plus
  // cubic Hermite interpolation (the exact derivative is the bump itself) is
  // accurate to rounding and avoids adaptive recursion on the flat tails.
  constexpr int kNY = 2048;
  std::vector<double> by_cum(kNY + 1, 0.0);
  for (int i = 0; i < kNY; ++i) {
    const double t0 = -1.0 + 2.0 * i / kNY;
    const double t1 = -1.0 + 2.0 * (i + 1) / kNY;
    by_cum[i + 1] =
        by_cum[i] + Quad::integrate([](double t) { return bump1(t); }, t0, t1, 0);
  }
  auto by_integral = [&](double t) {
    if (t <= -1.0) return 0.0;
    if (t >= 1.0) return by_cum[kNY];
    const double s = (t + 1.0) * (kNY / 2.0);
    const int i = std::min(static_cast<int>(s), kNY - 1);
    const double u = s - i, dt = 2.0 / kNY;
    const double f0 = by_cum[i], f1 = by_cum[i + 1];
    const double d0 = bump1(-1.0 + dt * i), d1 = bump1(-1.0 + dt * (i + 1));
    const double u2 = u * u, u3 = u2 * u;
    return f0 * (2 * u3 - 3 * u2 + 1) + f1 * (3 * u2 - 2 * u3) +
           dt * (d0 * (u3 - 2 * u2 + u) + d1 * (u3 - u2));
  };

  // volume source term: per window, per reacting region
  for (const auto& w : state.history) {
    const double a = std::max(w.x_lo, x_lo_supp);
    const double b = std::min(w.x_hi, x_hi_supp);
    if (!(a < b)) continue;
    const std::size_t regions = w.y_at_lo.size() + 1;
    for (std::size_t r = 0; r < regions; ++r) {
      const FlowState& U = (r == 0) ? w.bottom : w.above[r - 1];
      if (U.Z == 0.0) continue;  // no source in fully burned gas
      const Vec5 G = G_source(U, gas);
      if (max_abs(G) == 0.0) continue;
      auto edge = [&](std::size_t i, double x) {
        return w.y_at_lo[i] + w.slopes[i] * (x - w.x_lo);
      };
      if (r > 0 && std::max(edge(r - 1, a), edge(r - 1, b)) >= y_hi_supp)
        continue;  // region entirely above the support
      if (r + 1 < regions && std::min(edge(r, a), edge(r, b)) <= y_lo_supp)
        continue;  // region entirely below the support
      const double weight = Quad::integrate(
          [&](double x) {
            const double ylo =
                (r == 0) ? y_lo_supp : std::max(edge(r - 1, x), y_lo_supp);
            const double yhi =
                (r == regions - 1) ? y_hi_supp : std::min(edge(r, x), y_hi_supp);
            if (!(ylo < yhi)) return 0.0;
            const double bx = bump1((x - psi.cx) / psi.rx);
            if (bx == 0.0) return 0.0;
            return bx * psi.ry *
                   (by_integral((yhi - psi.cy) / psi.ry) -
                    by_integral((ylo - psi.cy) / psi.ry));
          },
          a, b, 6, 1e-7);
      area_total = area_total + weight * G;
    }
  }

  total = front_total + station_total + area_total;
#ifdef SFRONT_DEBUG_RESIDUAL
  for (int c = 0; c < 5; ++c)
    std::fprintf(stderr,
                 "[res] c=%d front=%+.6e station=%+.6e area=%+.6e sum=%+.6e\n", c,
                 front_total[c], station_total[c], area_total[c], total[c]);
#endif
  total = static_cast<double>(eta_sign) * total;
  double norm2 = 0;
  for (double t : total) norm2 += t * t;
  return std::sqrt(norm2);
}

} // namespace sfront
