/** \file curves.hpp
 *  \brief Eigenstructure and elementary wave curves of the homogeneous steady
 *         system: eigenvalues, (normalized) eigenvectors, contact/shock/
 *         rarefaction curves, and the unified C^1 parametrization phi.
 *
 *  Families are indexed 1..5: families 1 and 5 are the genuinely nonlinear
 *  acoustic characteristics with slopes tan(theta -+ theta_ma); families
 *  2, 3, 4 are linearly degenerate and share the streamline slope v/u.
 *  For the genuinely nonlinear families the strength parameter alpha is the
 *  eigenvalue increment along the curve: alpha > 0 on the rarefaction branch
 *  (where the normalized eigenvector gives d lambda / d alpha = 1 exactly),
 *  alpha < 0 on the compressive shock branch (where a scalar solve picks the
 *  density ratio reproducing the requested increment).  This makes phi C^1 at
 *  alpha = 0 with d phi/d alpha = r_family(U0).
 */
#ifndef SFRONT_CURVES_HPP
#define SFRONT_CURVES_HPP

#include "sfront/gas.hpp"
#include "sfront/numerics.hpp"

namespace sfront {

/// Largest |flow-turning| any single curve evaluation may produce (radians).
inline constexpr double kCurveMaxTurn = 1.2;

/// True for the genuinely nonlinear families 1 and 5.
inline bool genuinely_nonlinear(int family) { return family == 1 || family == 5; }

/// One point on a wave curve: strength, state, and propagation slope dy/dx.
struct CurvePoint {
  double alpha;  ///< signed strength (eigenvalue increment for families 1, 5)
  FlowState U;   ///< state on the curve
  double lambda; ///< characteristic slope of the family at U
};

/// Downstream-of-curve state plus the discontinuity slope (shock curves).
struct ShockPoint {
  FlowState U; ///< state produced by the jump
  double s;    ///< shock slope dy/dx
};

/** \brief Characteristic slope dy/dx of the given family.
 *  lambda_1,5 = (u v -+ c sqrt(q^2-c^2))/(u^2-c^2) = tan(theta -+ theta_ma);
 *  lambda_2,3,4 = v/u. Throws domain_error("subsonic or sonic state") if u <= c. */
double eigenvalue(int family, const FlowState& U, const GasModel& gas);

/** \brief Right eigenvector in (u, v, p, rho, Z) coordinates.
 *  Raw vectors: r1,5 = (-lambda, 1, rho (lambda u - v), rho (lambda u - v)/c^2, 0),
 *  r2 = (u, v, 0, 0, 0), r3 = (0, 0, 0, 1, 0), r4 = (0, 0, 0, 0, 1).
 *  With normalized = true (families 1 and 5 only) the vector is scaled so the
 *  directional derivative of the eigenvalue along it equals one; requesting
 *  normalization for a degenerate family throws contract_error. */
Vec5 eigenvector(int family, const FlowState& U, const GasModel& gas, bool normalized);

/** \brief Linearly degenerate curves (families 2, 3, 4).
 *  Family 2 rescales the velocity by e^sigma; family 3 shifts rho; family 4
 *  shifts Z. Pressure and the streamline slope v/u are unchanged. Throws
 *  domain_error when the produced state is invalid (or subsonic for family 2). */
FlowState contact_curve(int family, const FlowState& U0, double sigma, const GasModel& gas);

/** \brief Compressive shock curve through upstream state U0, parametrized by the
 *  downstream density rho > rho0.
 *
 *  With r = rho/rho0 and b = (gamma+1)/2 - (gamma-1) r / 2:
 *    ctil^2 = (c0^2 / b) r,
 *    s      = (u0 v0 + sgn_family * ctil sqrt(q0^2 - ctil^2)) / (u0^2 - ctil^2),
 *    p      = p0 + (c0^2 / b)(rho - rho0),
 *    v      = v0 + (p - p0) / (rho0 (s u0 - v0)),  u = u0 - s (v - v0),  Z = Z0,
 *  where sgn_family is -1 for family 1 and +1 for family 5. The output satisfies
 *  the jump relations s [W(U)] = [H(U)] componentwise.
 *  Errors: b <= 0 -> "density ratio beyond limit (gamma+1)/(gamma-1)";
 *          u0^2 <= ctil^2 -> "shock speed undefined". */
ShockPoint shock_curve(int family, const FlowState& U0, double rho, const GasModel& gas);

/** \brief Rarefaction curve: integrates dU/d sigma = r_family(U) (normalized) from
 *  U0 over sigma >= 0, so lambda_family grows by exactly sigma. Fourth-order
 *  Runge-Kutta with the Bernoulli and entropy invariants re-projected each step;
 *  J -+ theta is conserved along families 1/5. Throws domain_error
 *  "rarefaction exits admissible region at sigma=..." if the path leaves
 *  { u > c, q < q_star }. */
FlowState rarefaction_curve(int family, const FlowState& U0, double sigma,
                            const GasModel& gas);

/** \brief Unified wave-curve map Phi_family(alpha, U0).
 *  Genuinely nonlinear families: alpha >= 0 -> rarefaction branch, alpha < 0 ->
 *  compressive shock branch re-parametrized by the eigenvalue increment (C^1 match
 *  at alpha = 0). Degenerate families: contact_curve. Phi(0, U0) = U0. Refuses
 *  |turning| beyond kCurveMaxTurn. */
FlowState phi(int family, double alpha, const FlowState& U0, const GasModel& gas);

/** \brief Composite curve Phi_5(a5, Phi_4(a4, Phi_3(a3, Phi_2(a2, Phi_1(a1, U_b))))).
 *  alphas[k] is the strength of family k+1. */
FlowState compose_phi(const Vec5& alphas, const FlowState& U_b, const GasModel& gas);

namespace detail {

/** \brief Signed-parameter rarefaction integrator (sigma of either sign); the
 *  public rarefaction_curve restricts to sigma >= 0 per the wave-admissibility
 *  convention, while boundary/Riemann solves also walk the curve backwards. */
FlowState rarefaction_path(int family, const FlowState& U0, double sigma,
                           const GasModel& gas);

/** \brief Shock jump with U_up the upstream side, ratio = rho_down/rho_up > 1.
 *  Returns the downstream state. */
ShockPoint shock_from_upstream(const FlowState& U_up, double ratio, int family,
                               const GasModel& gas);

/** \brief Shock jump with U_down the downstream side, ratio = rho_down/rho_up > 1.
 *  Returns the upstream state (inverse Hugoniot). */
ShockPoint shock_from_downstream(const FlowState& U_down, double ratio, int family,
                                 const GasModel& gas);

/// Upper bound (gamma+1) M^2 / ((gamma-1) M^2 + 2) on rho_down/rho_up across
/// a shock with upstream Mach number M.
double max_ratio_from_upstream(const FlowState& U_up, const GasModel& gas);

/** \brief Compressive-branch point of Phi_family reaching eigenvalue increment
 *  alpha < 0: solves for the density ratio and returns the produced state plus
 *  the shock slope. Family 1 walks downstream from U0; family 5 walks upstream
 *  (U0 is the downstream side of the 5-shock). */
ShockPoint shock_by_increment(int family, double alpha, const FlowState& U0,
                              const GasModel& gas);

} // namespace detail

} // namespace sfront

#endif // SFRONT_CURVES_HPP
