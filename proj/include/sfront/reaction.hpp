/** \file reaction.hpp
 *  \brief Fractional reaction step across a mesh station x = kh: closed-form
 *         update of the streamwise balance laws with exothermic heat release,
 *         plus the exponential reactant-decay envelope.
 */
#ifndef SFRONT_REACTION_HPP
#define SFRONT_REACTION_HPP

#include "sfront/gas.hpp"

namespace sfront {

/** \brief Diagnostics of one reaction step. Temperature never decreases and
 *  the reactant fraction never increases across a step. */
struct ReactionStepReport {
  double T_before = 0;       ///< temperature entering the step
  double T_after = 0;        ///< temperature leaving the step (>= T_before)
  double Z_before = 0;       ///< reactant fraction entering
  double Z_after = 0;        ///< reactant fraction leaving (<= Z_before)
  double discriminant = 0;   ///< square-root argument of the density root (>= 0)
  bool budget_warning = false; ///< heat release used over half the step budget
};

/** \brief State and diagnostics produced by reaction_step. */
struct ReactionStepResult {
  FlowState U_plus;
  ReactionStepReport report;
};

/** \brief Applies the reaction source over a streamwise step of length h to a
 *  supersonic state, holding the mass flux rho*u, the x-momentum flux
 *  rho*u^2 + p and the transverse velocity v exactly fixed while the energy
 *  flux gains q_tilde*rho*phi(T)*Z*h and the reactant flux loses
 *  rho*phi(T)*Z*h. The density root takes the "+sqrt(D)" branch, which
 *  reduces to the unreacted state at h = 0.
 *
 *  Throws domain_error "reaction step too large: heat release exceeds step
 *  budget (reduce h)" when the discriminant turns negative, "rate*step
 *  exceeds u (reduce h)" when the reactant update overshoots zero beyond
 *  -1e-12, and "reaction drove state sonic" when the post state loses
 *  supersonicity. */
ReactionStepResult reaction_step(const FlowState& U_minus, double h,
                                 const GasModel& gas);

/** \brief Certified upper envelope Z0 * exp(-L x) for the reactant fraction,
 *  where L is the measured lower bound of phi(T)/u over visited states. */
double decay_envelope(double Z0, double L, double x);

} // namespace sfront

#endif // SFRONT_REACTION_HPP
