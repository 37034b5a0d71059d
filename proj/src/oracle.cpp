/** \file oracle.cpp
 *  \brief Background Prandtl-Meyer solution past a convex wall.
 */
#include "sfront/oracle.hpp"

#include <cassert>
#include <cmath>

namespace sfront {

namespace {

constexpr int kFanTablePoints = 80;

/// Builds one fan record from the flanking states of a corner solve.
FanSolution build_fan(const std::array<double, 2>& corner, const FlowState& U_in,
                      const FlowState& U_out, double epsilon5,
                      const GasModel& gas) {
  FanSolution fan;
  fan.corner = corner;
  fan.U_in = U_in;
  fan.U_out = U_out;
  fan.head_slope = eigenvalue(5, U_in, gas);
  fan.tail_slope = eigenvalue(5, U_out, gas);
  fan.epsilon5 = epsilon5;
  assert(fan.head_slope > fan.tail_slope);

  fan.sigma_table.reserve(kFanTablePoints);
  fan.state_table.reserve(kFanTablePoints);
  fan.lambda_table.reserve(kFanTablePoints);
  const double dsig = epsilon5 / (kFanTablePoints - 1);
  FlowState U = U_in;
  for (int i = 0; i < kFanTablePoints; ++i) {
    if (i > 0)
      U = (i == kFanTablePoints - 1)
              ? U_out
              : detail::rarefaction_path(5, U, -dsig, gas);
    fan.sigma_table.push_back(i * dsig);
    fan.state_table.push_back(U);
    fan.lambda_table.push_back(eigenvalue(5, U, gas));
  }
  return fan;
}

/// Interior fan sample: the state whose lambda_5 equals the ray slope.
FlowState sample_fan(const FanSolution& fan, double ray_slope,
                     const GasModel& gas) {
  // The tabulated lambda_5 decreases from head to tail; find the bracket.
  std::size_t i = 0;
  while (i + 2 < fan.lambda_table.size() && fan.lambda_table[i + 1] > ray_slope)
    ++i;
  double lo = fan.sigma_table[i];
  double hi = fan.sigma_table[i + 1];
  FlowState best = fan.state_table[i];
  double best_err = std::abs(fan.lambda_table[i] - ray_slope);
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    const FlowState U = detail::rarefaction_path(
        5, fan.state_table[i], -(mid - fan.sigma_table[i]), gas);
    const double lam = eigenvalue(5, U, gas);
    const double err = std::abs(lam - ray_slope);
    if (err < best_err) {
      best = U;
      best_err = err;
    }
    if (err <= 1e-12) break;
    if (lam > ray_slope)
      lo = mid;
    else
      hi = mid;
  }
  return best;
}

} // namespace

BackgroundSolution solve_background(const FlowState& U_inf,
                                    const WallMesh& wall, const GasModel& gas) {
  assert(U_inf.v == 0.0);
  assert(U_inf.u > sound_speed(U_inf.p, U_inf.rho, gas));

  BackgroundSolution sol;
  sol.U_inf = U_inf;
  sol.wall = wall;

  FlowState cur = U_inf;
  for (std::size_t k = 0; k < wall.turning_angles.size(); ++k) {
    const double omega = wall.turning_angles[k];
    if (omega == 0.0) continue;
    if (omega > 0.0)
      throw contract_error(
          "background oracle requires a convex wall (all turning angles <= 0)");
    BoundarySolution bs;
    try {
      bs = corner_solver(cur, omega, CornerMode::strong_expansion, gas);
    } catch (const domain_error&) {
      throw domain_error("expansion exceeds admissible cone");
    }
    sol.fans.push_back(
        build_fan(wall.corners[k], cur, bs.U_next, bs.epsilon5, gas));
    cur = bs.U_next;
  }
  return sol;
}

FlowState sample_background(const BackgroundSolution& solution, double x,
                            double y, const GasModel& gas) {
  if (y < solution.wall.elevation(x))
    throw domain_error("sample point below the wall");

  // Walk the fans left to right. Above a fan's head ray the point also lies
  // above every later fan (the rays only flatten downstream), so the current
  // uniform state applies; between the head and tail rays the point is inside
  // the fan; below the tail ray move on with the post-fan state.
  FlowState cur = solution.U_inf;
  for (const FanSolution& fan : solution.fans) {
    const double dx = x - fan.corner[0];
    if (dx <= 0.0) return cur;
    const double ray = (y - fan.corner[1]) / dx;
    if (ray >= fan.head_slope) return cur;
    if (ray > fan.tail_slope) return sample_fan(fan, ray, gas);
    cur = fan.U_out;
  }
  return cur;
}

} // namespace sfront
