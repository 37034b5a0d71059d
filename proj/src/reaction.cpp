/** \file reaction.cpp
 *  \brief Closed-form fractional reaction step and the decay envelope.
 */
#include "sfront/reaction.hpp"

#include <cassert>
#include <cmath>

namespace sfront {

ReactionStepResult reaction_step(const FlowState& U_minus, double h,
                                 const GasModel& gas) {
  assert(h > 0.0);
  const double g = gas.gamma;
  assert(U_minus.u > sound_speed(U_minus.p, U_minus.rho, gas));

  const double T0 = temperature(U_minus, gas);
  const double rate = reaction_rate(T0, gas);

  ReactionStepResult out;
  out.report.T_before = T0;
  out.report.Z_before = U_minus.Z;

  const double m = U_minus.rho * U_minus.u;
  const double P = m * U_minus.u + U_minus.p;
  // rho*u^2 - gamma*p > 0 for supersonic states; its square is the step
  // budget the heat release draws from.
  const double budget = m * U_minus.u - g * U_minus.p;
  const double heat = 2.0 * gas.q_tilde * (g * g - 1.0) * U_minus.rho *
                      U_minus.rho * U_minus.u * U_minus.Z * rate * h;
  const double D = budget * budget - heat;
  out.report.discriminant = D;
  if (D < 0.0)
    throw domain_error(
        "reaction step too large: heat release exceeds step budget (reduce h)");
  out.report.budget_warning = heat > 0.5 * budget * budget;

  const double Z_raw = U_minus.Z * (1.0 - rate * h / U_minus.u);
  if (Z_raw < -1e-12) throw domain_error("rate*step exceeds u (reduce h)");

  FlowState U_plus = U_minus;
  if (heat != 0.0) {
    const double w = (g * P + std::sqrt(D)) / ((g + 1.0) * m * m);
    U_plus.rho = 1.0 / w;
    U_plus.u = m * w;
    U_plus.p = P - m * m * w;
  }
  U_plus.Z = clamp_unburned_fraction(Z_raw);

  if (!(U_plus.p > 0.0) || !(U_plus.rho > 0.0) ||
      !(U_plus.u > sound_speed(U_plus.p, U_plus.rho, gas)))
    throw domain_error("reaction drove state sonic");

  const double T1 = temperature(U_plus, gas);
  assert(T1 >= T0 - 1e-12 * std::max(1.0, T0));
  out.report.T_after = T1;
  out.report.Z_after = U_plus.Z;
  out.U_plus = U_plus;
  return out;
}

double decay_envelope(double Z0, double L, double x) {
  assert(L > 0.0);
  assert(x >= 0.0);
  return Z0 * std::exp(-L * x);
}

} // namespace sfront
