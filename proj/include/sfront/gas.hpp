/** \file gas.hpp
 *  \brief Thermodynamic closure for the ideal polytropic reacting gas:
 *         model parameters, flow states, derived quantities, the
 *         Riemann-invariant turning integral, and the Arrhenius rate.
 */
#ifndef SFRONT_GAS_HPP
#define SFRONT_GAS_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace sfront {

/// Contract violations detected from input values (bad states, out-of-range parameters).
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// API misuse that no input data can trigger (e.g. normalizing a degenerate eigenvector).
struct contract_error : std::logic_error {
  explicit contract_error(const std::string& msg) : std::logic_error(msg) {}
};

/// Iteration/quadrature failures to reach requested tolerances.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

/** \brief Ideal polytropic gas with a one-step Arrhenius reaction.
 *
 *  gamma = 1 + R/c_v must hold to 1e-12 relative when all three are supplied;
 *  the reaction rate is phi(T) = T^phi_alpha * exp(-phi_E / (R T)) with the
 *  positive floor L_* = phi(T_floor).
 */
struct GasModel {
  double gamma = 1.4;     ///< ratio of specific heats, > 1
  double R = 1.0;         ///< gas constant, >= 0
  double cv = 2.5;        ///< specific heat at constant volume, >= 0
  double kappa = 1.0;     ///< entropy-pressure constant, >= 0
  double q_tilde = 0.0;   ///< specific binding energy of unburned gas, >= 0
  double phi_alpha = 0.0; ///< Arrhenius exponent
  double phi_E = 0.0;     ///< activation energy, >= 0
  double T_floor = 1e-8;  ///< positive temperature floor

  /// Throws domain_error naming the offending field if any invariant fails.
  void validate() const;
};

/** \brief Primitive flow state U = (u, v, p, rho, Z). */
struct FlowState {
  double u = 0;   ///< x-velocity
  double v = 0;   ///< y-velocity
  double p = 0;   ///< pressure, > 0
  double rho = 0; ///< density, > 0
  double Z = 0;   ///< unburned-gas fraction in [0, 1]

  /// Basic positivity/bounds check; throws domain_error.
  void validate() const;
};

/// (q, theta, theta_ma) bundle returned by flow_angles.
struct FlowAngles {
  double q;        ///< speed sqrt(u^2 + v^2)
  double theta;    ///< flow angle arctan(v/u)
  double theta_ma; ///< Mach angle arcsin(c/q)
};

/** \brief Sonic speed c = sqrt(gamma p / rho). Throws domain_error on non-positive input. */
double sound_speed(double p, double rho, const GasModel& gas);

/** \brief Speed, flow angle and Mach angle of a supersonic state (q > c required). */
FlowAngles flow_angles(const FlowState& U, const GasModel& gas);

/** \brief Bernoulli quantity B = q^2/2 + c^2/(gamma-1). */
double bernoulli(const FlowState& U, const GasModel& gas);

/** \brief Temperature from the ideal-gas law, T = p / (R rho). */
double temperature(const FlowState& U, const GasModel& gas);

/** \brief Arrhenius rate phi(T) = T^alpha exp(-E/(R T)); T must be positive. */
double reaction_rate(double T, const GasModel& gas);

/// Mach number q/c.
double mach_number(const FlowState& U, const GasModel& gas);

/// Entropy-like invariant S = p / rho^gamma.
double entropy_invariant(const FlowState& U, const GasModel& gas);

/// Sonic speed on the Bernoulli level B: c_sonic = sqrt(2 (gamma-1) B / (gamma+1)).
double sonic_speed_of_bernoulli(double B, const GasModel& gas);

/// Maximal speed on the Bernoulli level B: q_max = sqrt(2 B).
double max_speed_of_bernoulli(double B);

/** \brief Turning-angle integral (Riemann invariant) J(q, B).
 *
 *  J(q,B) = int_{c_sonic(B)}^{q} sqrt((gamma+1) mu^2 - 2 (gamma-1) B)
 *                              / (sqrt(gamma-1) mu sqrt(2B - mu^2)) d mu,
 *  evaluated by adaptive Gauss-Kronrod after the substitution mu = sqrt(2B) sin(phi),
 *  which removes the upper-endpoint singularity. With the sonic reference point the
 *  value equals the classical Prandtl-Meyer function of the local Mach number; only
 *  differences at equal B are contractually meaningful. dJ/dq = sqrt(M^2-1)/q.
 *
 *  Pre: c_sonic(B) <= q < sqrt(2B); throws domain_error outside, numerical_error if
 *  the quadrature cannot reach its 1e-10 absolute tolerance.
 */
double riemann_invariant_J(double q, double B, const GasModel& gas);

/** \brief State-membership region around a reference state U_inf.
 *
 *  Membership is the five-inequality test of in_admissible_region; c_star and
 *  q_star satisfy c_star^2 = 2 (gamma-1) B_inf / (gamma+1) and q_star = sqrt(2 B_inf)
 *  when v_inf = 0 (both recomputable from U_inf).
 */
struct AdmissibleRegion {
  FlowState U_inf;
  double delta0 = 0.4;      ///< region radius, > 0
  double theta_crit = -0.9; ///< critical turning angle, < 0
  double c_star = 0;        ///< critical sonic speed
  double q_star = 0;        ///< maximal speed
  double scale_B = 1;       ///< nondimensionalizes the Bernoulli inequality
  double scale_S = 1;       ///< nondimensionalizes the entropy inequality
};

/** \brief Critical turning angle: the infimum of theta along the 5-family
 *  rarefaction curve through U_inf subject to u > c_star and q < q_star
 *  (turning the flow down trades u for turning until the u > c_star margin
 *  is exhausted; if it never is, the q_star vacuum bound limits instead). */
double critical_turning_angle(const FlowState& U_inf, const GasModel& gas);

/** \brief Builds the region from U_inf, filling c_star, q_star and the default scales
 *         (scale_B = B_inf, scale_S = p_inf/rho_inf^gamma). Pass NaN for theta_crit
 *         to compute it via critical_turning_angle. */
AdmissibleRegion make_admissible_region(const FlowState& U_inf, double delta0,
                                        double theta_crit, const GasModel& gas);

/** \brief Five-inequality membership test:
 *  |J(q,B)+theta - J(q_inf,B_inf)| < delta0, |B-B_inf| < delta0*scale_B,
 *  |S-S_inf| < delta0*scale_S, 0 <= Z < delta0, theta_crit+delta0 < theta < delta0. */
bool in_admissible_region(const FlowState& U, const AdmissibleRegion& region,
                          const GasModel& gas);

/** \brief Clamps Z to [0,1] when the violation is round-off (|violation| < 1e-12);
 *         larger violations throw domain_error. */
double clamp_unburned_fraction(double Z);

} // namespace sfront

#endif // SFRONT_GAS_HPP
