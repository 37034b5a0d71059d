/** \file oracle.hpp
 *  \brief Exact non-reacting background solution for supersonic flow past a
 *         convex polygonal wall: one centered expansion fan per convex corner,
 *         uniform states in between. Serves as the validation oracle for the
 *         front tracker.
 */
#ifndef SFRONT_ORACLE_HPP
#define SFRONT_ORACLE_HPP

#include "sfront/riemann.hpp"
#include "sfront/wall.hpp"

#include <vector>

namespace sfront {

/** \brief One centered expansion fan: flanking states, bounding ray slopes and
 *  a tabulated parametrization of the connecting rarefaction curve for
 *  interior sampling. */
struct FanSolution {
  std::array<double, 2> corner{0, 0};  ///< fan center on the wall
  FlowState U_in;                      ///< state above the head ray
  FlowState U_out;                     ///< state below the tail ray
  double head_slope = 0;               ///< lambda_5(U_in), upper boundary ray
  double tail_slope = 0;               ///< lambda_5(U_out), lower boundary ray
  double epsilon5 = 0;                 ///< total curve parameter across the fan
  std::vector<double> sigma_table;     ///< tabulated curve parameters (80)
  std::vector<FlowState> state_table;  ///< states at the tabulated parameters
  std::vector<double> lambda_table;    ///< lambda_5 at the tabulated parameters
};

/** \brief Complete background solution: inflow, wall and the ordered fans. */
struct BackgroundSolution {
  FlowState U_inf;
  WallMesh wall;
  std::vector<FanSolution> fans;  ///< ordered by corner x
};

/** \brief Solves the non-reacting background flow: a strong-mode corner solve
 *  at every convex mesh corner, walking the wall left to right. Requires a
 *  convex wall (all turning angles <= 0) and a supersonic inflow with v = 0.
 *  Throws domain_error "expansion exceeds admissible cone" when the cumulative
 *  turning leaves the admissible region. */
BackgroundSolution solve_background(const FlowState& U_inf,
                                    const WallMesh& wall, const GasModel& gas);

/** \brief Samples the background at (x, y): the uniform state when the point
 *  lies outside every fan, otherwise the state on the fan's rarefaction curve
 *  whose characteristic slope lambda_5 equals the ray slope through the fan
 *  center (monotone bracketing on the tabulated curve, then bisection to
 *  1e-12 in lambda_5). Throws domain_error for points below the wall. */
FlowState sample_background(const BackgroundSolution& solution, double x,
                            double y, const GasModel& gas);

} // namespace sfront

#endif // SFRONT_ORACLE_HPP
