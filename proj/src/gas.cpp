#include "sfront/gas.hpp"
#include "sfront/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cassert>
#include <cmath>
#include <sstream>

namespace sfront {

namespace {
std::string field_msg(const char* field, const char* what) {
  std::ostringstream os;
  os << field << ": " << what;
  return os.str();
}
} // namespace

void GasModel::validate() const {
  if (!(gamma > 1.0)) throw domain_error(field_msg("gas.gamma", "must be > 1"));
  if (!(R >= 0.0)) throw domain_error(field_msg("gas.R", "must be >= 0"));
  if (!(cv >= 0.0)) throw domain_error(field_msg("gas.cv", "must be >= 0"));
  if (!(kappa >= 0.0)) throw domain_error(field_msg("gas.kappa", "must be >= 0"));
  if (!(q_tilde >= 0.0)) throw domain_error(field_msg("gas.q_tilde", "must be >= 0"));
  if (!(T_floor > 0.0)) throw domain_error(field_msg("gas.T_floor", "must be > 0"));
  if (R > 0.0 && cv > 0.0) {
    const double implied = 1.0 + R / cv;
    if (std::abs(implied - gamma) > 1e-12 * std::abs(gamma))
      throw domain_error(field_msg("gas.gamma", "gamma = 1 + R/c_v violated beyond 1e-12"));
  }
}

void FlowState::validate() const {
  if (!(rho > 0.0)) throw domain_error("state.rho: must be > 0");
  if (!(p > 0.0)) throw domain_error("state.p: must be > 0");
  if (!(Z >= 0.0 && Z <= 1.0)) throw domain_error("state.Z: must lie in [0, 1]");
  if (!std::isfinite(u) || !std::isfinite(v))
    throw domain_error("state.velocity: must be finite");
}

double sound_speed(double p, double rho, const GasModel& gas) {
  if (!(p > 0.0) || !(rho > 0.0))
    throw domain_error("sound_speed: p and rho must be positive");
  return std::sqrt(gas.gamma * p / rho);
}

FlowAngles flow_angles(const FlowState& U, const GasModel& gas) {
  const double c = sound_speed(U.p, U.rho, gas);
  const double q = std::hypot(U.u, U.v);
  if (!(q > c)) throw domain_error("subsonic or sonic state");
  FlowAngles a;
  a.q = q;
  a.theta = std::atan2(U.v, U.u);
  a.theta_ma = std::atan2(c, std::sqrt(q * q - c * c));
  return a;
}

double bernoulli(const FlowState& U, const GasModel& gas) {
  U.validate();
  const double c2 = gas.gamma * U.p / U.rho;
  const double q2 = U.u * U.u + U.v * U.v;
  return 0.5 * q2 + c2 / (gas.gamma - 1.0);
}

double temperature(const FlowState& U, const GasModel& gas) {
  U.validate();
  if (!(gas.R > 0.0)) throw domain_error("temperature: gas.R must be positive");
  return U.p / (gas.R * U.rho);
}

double reaction_rate(double T, const GasModel& gas) {
  if (!(T > 0.0)) throw domain_error("reaction_rate: T must be positive");
  const double ER = gas.R > 0.0 ? gas.phi_E / gas.R : 0.0;
  return std::pow(T, gas.phi_alpha) * std::exp(-ER / T);
}

double mach_number(const FlowState& U, const GasModel& gas) {
  return std::hypot(U.u, U.v) / sound_speed(U.p, U.rho, gas);
}

double entropy_invariant(const FlowState& U, const GasModel& gas) {
  U.validate();
  return U.p / std::pow(U.rho, gas.gamma);
}

double sonic_speed_of_bernoulli(double B, const GasModel& gas) {
  return std::sqrt(2.0 * (gas.gamma - 1.0) * B / (gas.gamma + 1.0));
}

double max_speed_of_bernoulli(double B) { return std::sqrt(2.0 * B); }

double riemann_invariant_J(double q, double B, const GasModel& gas) {
  const double g = gas.gamma;
  const double q_ref = sonic_speed_of_bernoulli(B, gas);
  const double q_max = max_speed_of_bernoulli(B);
  if (!(q >= q_ref * (1.0 - 1e-14)) || !(q < q_max))
    throw domain_error("riemann_invariant_J: q outside (c_sonic, sqrt(2B))");
  if (q <= q_ref) return 0.0;

  // Substitution mu = sqrt(2B) sin(phi): the integrand becomes
  //   sqrt((gamma+1) sin^2(phi) - (gamma-1)) / (sqrt(gamma-1) sin(phi)),
  // which vanishes like sqrt(phi - phi_ref) at the sonic end; the further map
  // phi = phi_ref + t^2 makes it analytic so the quadrature converges cleanly.
  const double s_ref = std::sqrt((g - 1.0) / (g + 1.0));
  const double phi_ref = std::asin(s_ref);
  const double phi_q = std::asin(std::min(1.0, q / q_max));
  const double gm1 = std::sqrt(g - 1.0);
  auto integrand = [&](double t) {
    const double phi = phi_ref + t * t;
    const double s = std::sin(phi);
    const double arg = (g + 1.0) * s * s - (g - 1.0);
    return 2.0 * t * std::sqrt(std::max(0.0, arg)) / (gm1 * s);
  };
  double error = 0.0;
  const double J = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, 0.0, std::sqrt(phi_q - phi_ref), 15, 1e-12, &error);
  if (error > 1e-10)
    throw numerical_error("riemann_invariant_J: quadrature failed to reach tolerance");
  return J;
}

double critical_turning_angle(const FlowState& U_inf, const GasModel& gas) {
  const FlowAngles a0 = flow_angles(U_inf, gas);
  const double B0 = bernoulli(U_inf, gas);
  const double J0 = riemann_invariant_J(a0.q, B0, gas);
  const double c_star = sonic_speed_of_bernoulli(B0, gas);
  const double q_star = max_speed_of_bernoulli(B0);

  // Along the 5-family expansion branch B and S are invariant, J + theta is
  // invariant, and q increases; so theta(q) = theta0 + J0 - J(q, B0) and
  // u(q) = q cos(theta(q)).  The infimum of theta is reached when u drops to
  // c_star, or at the q_star vacuum bound if the margin never closes.
  auto theta_of = [&](double q) {
    return a0.theta + J0 - riemann_invariant_J(q, B0, gas);
  };
  auto margin = [&](double q) { return q * std::cos(theta_of(q)) - c_star; };

  const double q_hi = q_star * (1.0 - 1e-12);
  if (margin(q_hi) > 0.0) return theta_of(q_hi);
  return theta_of(solve_bracketed(margin, a0.q, q_hi));
}

AdmissibleRegion make_admissible_region(const FlowState& U_inf, double delta0,
                                        double theta_crit, const GasModel& gas) {
  U_inf.validate();
  if (!(delta0 > 0.0)) throw domain_error("region.delta0: must be > 0");
  if (std::isnan(theta_crit)) theta_crit = critical_turning_angle(U_inf, gas);
  if (!(theta_crit < 0.0)) throw domain_error("region.theta_crit: must be < 0");
  AdmissibleRegion r;
  r.U_inf = U_inf;
  r.delta0 = delta0;
  r.theta_crit = theta_crit;
  const double B = bernoulli(U_inf, gas);
  r.c_star = sonic_speed_of_bernoulli(B, gas);
  r.q_star = max_speed_of_bernoulli(B);
  r.scale_B = B;
  r.scale_S = entropy_invariant(U_inf, gas);
  return r;
}

bool in_admissible_region(const FlowState& U, const AdmissibleRegion& region,
                          const GasModel& gas) {
  const FlowAngles a = flow_angles(U, gas);
  const FlowAngles a0 = flow_angles(region.U_inf, gas);
  const double B = bernoulli(U, gas);
  const double B0 = bernoulli(region.U_inf, gas);
  const double S = entropy_invariant(U, gas);
  const double S0 = entropy_invariant(region.U_inf, gas);
  const double J = riemann_invariant_J(a.q, B, gas);
  const double J0 = riemann_invariant_J(a0.q, B0, gas);
  const double d0 = region.delta0;
  if (!(std::abs(J + a.theta - (J0 + a0.theta)) < d0)) return false;
  if (!(std::abs(B - B0) < d0 * region.scale_B)) return false;
  if (!(std::abs(S - S0) < d0 * region.scale_S)) return false;
  if (!(U.Z >= 0.0 && U.Z < d0)) return false;
  if (!(region.theta_crit + d0 < a.theta && a.theta < d0)) return false;
  return true;
}

double clamp_unburned_fraction(double Z) {
  if (Z < 0.0) {
    if (Z < -1e-12) throw domain_error("state.Z: negative beyond round-off");
    return 0.0;
  }
  if (Z > 1.0) {
    if (Z > 1.0 + 1e-12) throw domain_error("state.Z: above 1 beyond round-off");
    return 1.0;
  }
  return Z;
}

} // namespace sfront
