/** \file riemann.cpp
 *  \brief Exact, accurate (nu-front) and simplified Riemann solvers plus the
 *         wall boundary solvers (corner turning and front reflection).
 */
#include "sfront/riemann.hpp"

#include "sfront/numerics.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace sfront {

namespace detail {

double state_distance(const FlowState& A, const FlowState& B) {
  const double du = A.u - B.u;
  const double dv = A.v - B.v;
  const double dp = A.p - B.p;
  const double dr = A.rho - B.rho;
  const double dZ = A.Z - B.Z;
  return std::sqrt(du * du + dv * dv + dp * dp + dr * dr + dZ * dZ);
}

Psi5Result psi5(double alpha, const FlowState& U_above, const GasModel& gas) {
  if (alpha == 0.0) return {U_above, eigenvalue(5, U_above, gas)};
  if (alpha > 0.0) {
    // Rarefaction: the below state sits a parameter -alpha back along the
    // 5-curve; the emitted front (top of the fan) travels at lambda_5 of the
    // above state.
    return {rarefaction_path(5, U_above, -alpha, gas),
            eigenvalue(5, U_above, gas)};
  }
  // Compressive branch: U_above is the upstream side of a 5-shock. Pick the
  // density ratio whose downstream state raises lambda_5 by exactly -alpha,
  // so that the forward map from the below state changes lambda_5 by alpha.
  const double lam_a = eigenvalue(5, U_above, gas);
  if (alpha > -1e-11) {
    // below the ratio-solve resolution: linearized inverse step, Lax slope
    const Vec5 r = eigenvector(5, U_above, gas, true);
    FlowState U = U_above;
    U.u -= alpha * r[0];
    U.v -= alpha * r[1];
    U.p -= alpha * r[2];
    U.rho -= alpha * r[3];
    U.Z -= alpha * r[4];
    return {U, lam_a - 0.5 * alpha};
  }
  auto produced = [&](double ratio) {
    return shock_from_upstream(U_above, ratio, 5, gas);
  };
  auto objective = [&](double ratio) -> double {
    try {
      return eigenvalue(5, produced(ratio).U, gas) - lam_a + alpha;
    } catch (const domain_error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  const double span = max_ratio_from_upstream(U_above, gas) - 1.0;
  const double ratio = solve_growing(objective, 1.0 + 1e-13, 1e-6, span);
  const ShockPoint sp = produced(ratio);
  return {sp.U, sp.s};
}

PhiFront phi_with_slope(int family, double alpha, const FlowState& U0,
                        const GasModel& gas) {
  if (family >= 2 && family <= 4)
    return {contact_curve(family, U0, alpha, gas), U0.v / U0.u};
  assert(family == 1 || family == 5);
  if (alpha == 0.0) return {U0, eigenvalue(family, U0, gas)};
  if (alpha > 0.0) {
    const FlowState out = rarefaction_path(family, U0, alpha, gas);
    return {out, eigenvalue(family, out, gas)};
  }
  const ShockPoint sp = shock_by_increment(family, alpha, U0, gas);
  return {sp.U, sp.s};
}

FlowState apply_wave(const WaveDesc& wave, const FlowState& U,
                     const GasModel& gas) {
  if (wave.family == kFamilyContact) {
    FlowState out = U;
    for (int k = 0; k < 3; ++k)
      if (wave.contact[k] != 0.0)
        out = contact_curve(2 + k, out, wave.contact[k], gas);
    return out;
  }
  assert(wave.family == 1 || wave.family == 5);
  return phi(wave.family, wave.strength, U, gas);
}

} // namespace detail

namespace {

/// True for the three physical front tags the simplified solvers accept.
bool physical_family(int family) {
  return family == 1 || family == kFamilyContact || family == 5;
}

/// Appends the single front produced by `wave` on top of `base` (skipping
/// zero-strength waves) and returns the state above it.
FlowState push_wave(FrontFan& fan, const WaveDesc& wave, const FlowState& base,
                    const GasModel& gas) {
  FrontRec fr;
  fr.family = wave.family;
  fr.below = base;
  if (wave.family == kFamilyContact) {
    fr.contact = wave.contact;
    fr.strength = std::abs(wave.contact[0]) + std::abs(wave.contact[1]) +
                  std::abs(wave.contact[2]);
    if (fr.strength == 0.0) return base;
    fr.above = detail::apply_wave(wave, base, gas);
    fr.slope = base.v / base.u;
  } else {
    if (wave.strength == 0.0) return base;
    const detail::PhiFront pf =
        detail::phi_with_slope(wave.family, wave.strength, base, gas);
    fr.strength = wave.strength;
    fr.above = pf.U;
    fr.slope = pf.slope;
  }
  fan.fronts.push_back(fr);
  return fr.above;
}

/// Appends the non-physical residue front (below = chain end, above = U_a) at
/// slope lambda_hat, first checking lambda_hat dominates the physical slopes.
void push_np(FrontFan& fan, FlowState chain_end, const FlowState& U_a,
             double lambda_hat) {
  for (const FrontRec& fr : fan.fronts)
    if (!(fr.slope < lambda_hat))
      throw contract_error(
          "non-physical slope must exceed every outgoing physical slope");
  // Z is carried by 4-contacts only; a non-physical front may not jump it.
  chain_end.Z = U_a.Z;
  if (!fan.fronts.empty()) fan.fronts.back().above.Z = U_a.Z;
  FrontRec np;
  np.family = kFamilyNP;
  np.strength = detail::state_distance(U_a, chain_end);
  np.slope = lambda_hat;
  np.below = chain_end;
  np.above = U_a;
  fan.fronts.push_back(np);
}

/// Emits the accurate-solver fronts of one genuinely nonlinear family:
/// a single front on the compressive branch, nu equal slices on the
/// rarefaction branch, with the topmost state snapped to `top` exactly.
void append_gnl_fronts(FrontFan& fan, int family, double alpha,
                       const FlowState& bottom, const FlowState& top, int nu,
                       const GasModel& gas) {
  if (alpha == 0.0) return;
  if (alpha < 0.0) {
    FrontRec fr;
    fr.family = family;
    fr.strength = alpha;
    fr.slope = detail::shock_by_increment(family, alpha, bottom, gas).s;
    fr.below = bottom;
    fr.above = top;
    fan.fronts.push_back(fr);
    return;
  }
  FlowState below = bottom;
  for (int k = 1; k <= nu; ++k) {
    const FlowState above =
        (k == nu) ? top : detail::rarefaction_path(family, below, alpha / nu, gas);
    FrontRec fr;
    fr.family = family;
    fr.strength = alpha / nu;
    fr.below = below;
    fr.above = above;
    fr.slope = eigenvalue(family, above, gas);
    fan.fronts.push_back(fr);
    below = above;
  }
}

} // namespace

RiemannSolution solve_riemann(const FlowState& U_b, const FlowState& U_a,
                              const GasModel& gas) {
  const double su = std::abs(U_b.u) + 1.0;
  const Vec5 scale{su, su, U_b.p, U_b.rho, 1.0};

  RiemannSolution sol;
  sol.alphas = {0, 0, 0, 0, 0};
  const double gap = std::max(
      {std::abs(U_a.u - U_b.u) / scale[0], std::abs(U_a.v - U_b.v) / scale[1],
       std::abs(U_a.p - U_b.p) / scale[2],
       std::abs(U_a.rho - U_b.rho) / scale[3], std::abs(U_a.Z - U_b.Z)});
  if (gap <= 1e-15) {
    for (auto& M : sol.middle_states) M = U_b;
    sol.residual = 0.0;
    return sol;
  }

  // Initial guess: attribute the whole flow-angle jump to the 5-wave (the one
  // family that can be large here) by peeling theta with the inverse 5-curve,
  // and the whole Z jump to the 4-contact (exact: no other family moves Z).
  const double theta_b = flow_angles(U_b, gas).theta;
  auto peel = [&](double s) -> double {
    try {
      return flow_angles(detail::psi5(s, U_a, gas).U, gas).theta - theta_b;
    } catch (const domain_error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  double s5 = 0.0;
  const double f0 = flow_angles(U_a, gas).theta - theta_b;
  try {
    if (f0 > 0.0)
      s5 = solve_growing(peel, 0.0, 1e-4, 4.0);
    else if (f0 < 0.0)
      s5 = -solve_growing([&](double t) { return peel(-t); }, 0.0, 1e-4, 4.0);
  } catch (const numerical_error&) {
    s5 = 0.0; // fall back to the damped Newton from an unpeeled start
  }
  sol.alphas = {0.0, 0.0, 0.0, U_a.Z - U_b.Z, s5};

  auto F = [&](const Vec5& a) -> Vec5 {
    try {
      const FlowState out = compose_phi(a, U_b, gas);
      return {(out.u - U_a.u) / scale[0], (out.v - U_a.v) / scale[1],
              (out.p - U_a.p) / scale[2], (out.rho - U_a.rho) / scale[3],
              (out.Z - U_a.Z) / scale[4]};
    } catch (const domain_error&) {
      constexpr double big = 1e30;
      return {big, big, big, big, big};
    }
  };
  sol.residual = newton5(F, sol.alphas, 1e-7, 3e-15, 60, 1e-10);

  FlowState M = U_b;
  for (int fam = 1; fam <= 4; ++fam) {
    try {
      M = phi(fam, sol.alphas[fam - 1], M, gas);
    } catch (const domain_error&) {
      throw domain_error("inadmissible intermediate state");
    }
    if (!(M.p > 0.0) || !(M.rho > 0.0) ||
        !(M.u > sound_speed(M.p, M.rho, gas)))
      throw domain_error("inadmissible intermediate state");
    sol.middle_states[fam - 1] = M;
  }
  return sol;
}

FrontFan accurate_solver(const FlowState& U_b, const FlowState& U_a, int nu,
                         const GasModel& gas) {
  assert(nu >= 1);
  const RiemannSolution sol = solve_riemann(U_b, U_a, gas);

  FrontFan fan;
  append_gnl_fronts(fan, 1, sol.alphas[0], U_b, sol.middle_states[0], nu, gas);
  const double a2 = sol.alphas[1];
  const double a3 = sol.alphas[2];
  const double a4 = sol.alphas[3];
  if (a2 != 0.0 || a3 != 0.0 || a4 != 0.0) {
    FrontRec fr;
    fr.family = kFamilyContact;
    fr.contact = {a2, a3, a4};
    fr.strength = std::abs(a2) + std::abs(a3) + std::abs(a4);
    fr.below = sol.middle_states[0];
    fr.above = sol.middle_states[3];
    fr.slope = fr.below.v / fr.below.u;
    fan.fronts.push_back(fr);
  }
  append_gnl_fronts(fan, 5, sol.alphas[4], sol.middle_states[3], U_a, nu, gas);

  for (std::size_t k = 1; k < fan.fronts.size(); ++k)
    assert(fan.fronts[k].slope > fan.fronts[k - 1].slope);
  return fan;
}

FrontFan simplified_solver_interaction(const FlowState& U_b,
                                       const FlowState& U_m,
                                       const FlowState& U_a,
                                       const WaveDesc& below,
                                       const WaveDesc& above, double lambda_hat,
                                       const GasModel& gas) {
  (void)U_m; // the outgoing fan is rebuilt from U_b; U_m documents the input
  const int i = above.family;
  const int j = below.family;
  if (!physical_family(i) || !physical_family(j))
    throw contract_error(
        "simplified interaction solver handles physical fronts only");
  if (!(i <= j)) throw contract_error("incoming fronts out of interaction order");

  FrontFan fan;
  FlowState cur = U_b;
  if (i == j) {
    // Same family: the two strengths merge into one outgoing front.
    WaveDesc merged = below;
    merged.strength = below.strength + above.strength;
    if (i == kFamilyContact)
      for (int k = 0; k < 3; ++k)
        merged.contact[k] = below.contact[k] + above.contact[k];
    cur = push_wave(fan, merged, cur, gas);
  } else {
    // Distinct families leave in ascending order with their strengths kept.
    cur = push_wave(fan, above, cur, gas);
    cur = push_wave(fan, below, cur, gas);
  }
  push_np(fan, cur, U_a, lambda_hat);
  return fan;
}

FrontFan simplified_solver_np_crossing(const FlowState& U_b,
                                       const FlowState& U_m,
                                       const FlowState& U_a,
                                       const WaveDesc& above, double lambda_hat,
                                       const GasModel& gas) {
  (void)U_m; // strength of the incoming non-physical front is |U_m - U_b|
  if (!physical_family(above.family))
    throw contract_error("np-crossing solver requires a physical incoming front");

  FrontFan fan;
  const FlowState cur = push_wave(fan, above, U_b, gas);
  push_np(fan, cur, U_a, lambda_hat);
  return fan;
}

BoundarySolution corner_solver(const FlowState& U_prev, double omega,
                               CornerMode mode, const GasModel& gas) {
  if (mode == CornerMode::strong_expansion && !(omega < 0.0))
    throw contract_error(
        "strong corner mode requires a convex (negative) turning angle");
  if (omega == 0.0) return {0.0, U_prev, eigenvalue(5, U_prev, gas)};

  const double theta_target = flow_angles(U_prev, gas).theta + omega;
  auto f = [&](double e5) -> double {
    try {
      return flow_angles(detail::psi5(e5, U_prev, gas).U, gas).theta -
             theta_target;
    } catch (const domain_error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  const double first = std::max(1e-6, 0.5 * std::abs(omega));
  double e5 = 0.0;
  if (omega < 0.0) {
    // f(0) = -omega > 0 and f decreases along the rarefaction branch, so the
    // root is the emitted expansion strength; no root means the turn leaves
    // the admissible cone.
    try {
      e5 = solve_growing(f, 0.0, first, 3.0);
    } catch (const numerical_error&) {
      throw domain_error("turning exceeds theta_crit");
    }
  } else {
    e5 = -solve_growing([&](double t) { return f(-t); }, 0.0, first, 3.0);
  }
  const detail::Psi5Result r = detail::psi5(e5, U_prev, gas);
  return {e5, r.U, r.slope};
}

BoundarySolution reflection_solver(const FlowState& U_b, double alpha1,
                                   const std::array<double, 2>& wall_normal,
                                   const GasModel& gas) {
  // Downstream-pointing wall tangent; works for either normal orientation.
  double tx = -wall_normal[1];
  double ty = wall_normal[0];
  if (tx < 0.0) {
    tx = -tx;
    ty = -ty;
  }
  if (!(tx > 0.0))
    throw contract_error("wall normal must define a downstream tangent");
  const double theta_wall = std::atan2(ty, tx);

  if (alpha1 == 0.0) return {0.0, U_b, eigenvalue(5, U_b, gas)};
  const FlowState U_a = phi(1, alpha1, U_b, gas);

  auto f = [&](double e5) -> double {
    try {
      return flow_angles(detail::psi5(e5, U_a, gas).U, gas).theta - theta_wall;
    } catch (const domain_error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  const double f0 = flow_angles(U_a, gas).theta - theta_wall;
  double e5 = 0.0;
  if (f0 != 0.0) {
    const double first = std::max(1e-7, 0.5 * std::abs(f0));
    if (f0 > 0.0)
      e5 = solve_growing(f, 0.0, first, 3.0);
    else
      e5 = -solve_growing([&](double t) { return f(-t); }, 0.0, first, 3.0);
  }
  const detail::Psi5Result r = detail::psi5(e5, U_a, gas);
  return {e5, r.U, r.slope};
}

} // namespace sfront
