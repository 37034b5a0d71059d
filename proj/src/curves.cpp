#include "sfront/curves.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

namespace sfront {

namespace {

double family_sign(int family) {
  assert(genuinely_nonlinear(family));
  return family == 1 ? -1.0 : 1.0;
}

[[noreturn]] void throw_rarefaction_exit(double sigma) {
  std::ostringstream os;
  os << "rarefaction exits admissible region at sigma=" << sigma;
  throw domain_error(os.str());
}

/** Shared shock-jump update. U0 is the state on one (known) side, ctil2 the
 *  squared normal flow speed on that side, rho_other the density on the other
 *  side. The slope solves (s u0 - v0)^2 = ctil2 (1 + s^2); velocity and
 *  pressure follow from conservation of the normal mass flux m = rho w. */
ShockPoint jump_from_base(const FlowState& U0, double ctil2, double rho_other,
                          int family) {
  const double q02 = U0.u * U0.u + U0.v * U0.v;
  if (!(U0.u * U0.u > ctil2)) throw domain_error("shock speed undefined");
  const double ctil = std::sqrt(ctil2);
  const double s = (U0.u * U0.v + family_sign(family) * ctil * std::sqrt(q02 - ctil2)) /
                   (U0.u * U0.u - ctil2);
  const double nfac = std::sqrt(1.0 + s * s);
  const double nx = s / nfac;
  const double ny = -1.0 / nfac;
  const double w0 = U0.u * nx + U0.v * ny; // normal speed on the base side
  const double m = U0.rho * w0;            // normal mass flux, conserved
  const double w1 = m / rho_other;
  FlowState out;
  out.p = U0.p + m * (w0 - w1);
  out.rho = rho_other;
  out.u = U0.u + (w1 - w0) * nx;
  out.v = U0.v + (w1 - w0) * ny;
  out.Z = U0.Z;
  out.validate();
  return {out, s};
}

} // namespace

double eigenvalue(int family, const FlowState& U, const GasModel& gas) {
  assert(family >= 1 && family <= 5);
  const double c = sound_speed(U.p, U.rho, gas);
  if (!(U.u > c)) throw domain_error("subsonic or sonic state");
  if (!genuinely_nonlinear(family)) return U.v / U.u;
  const double sgn = family_sign(family);
  const double q2 = U.u * U.u + U.v * U.v;
  const double root = std::sqrt(q2 - c * c);
  // q^2 cos(theta -+ theta_ma) = u sqrt(q^2-c^2) -+ v c must stay positive on
  // the admissible region; the slope loses meaning where it closes.
  assert(U.u * root - sgn * U.v * c > 0.0);
  return (U.u * U.v + sgn * c * root) / (U.u * U.u - c * c);
}

Vec5 eigenvector(int family, const FlowState& U, const GasModel& gas, bool normalized) {
  assert(family >= 1 && family <= 5);
  if (!genuinely_nonlinear(family)) {
    if (normalized)
      throw contract_error("eigenvector: normalization undefined for a linearly degenerate family");
    if (family == 2) return Vec5{U.u, U.v, 0.0, 0.0, 0.0};
    if (family == 3) return Vec5{0.0, 0.0, 0.0, 1.0, 0.0};
    return Vec5{0.0, 0.0, 0.0, 0.0, 1.0};
  }
  const double lam = eigenvalue(family, U, gas);
  const double c = sound_speed(U.p, U.rho, gas);
  const double mom = U.rho * (lam * U.u - U.v);
  Vec5 r{-lam, 1.0, mom, mom / (c * c), 0.0};
  if (!normalized) return r;
  // Scale so the directional derivative of lambda along r equals one:
  // grad lambda . r = (gamma+1) / (2 sqrt(q^2-c^2) cos^3(theta -+ theta_ma)).
  const double sgn = family_sign(family);
  const double q2 = U.u * U.u + U.v * U.v;
  const double root = std::sqrt(q2 - c * c);
  const double cosv = (U.u * root - sgn * U.v * c) / q2;
  assert(cosv > 0.0);
  const double kappa = 2.0 * root * cosv * cosv * cosv / (gas.gamma + 1.0);
  return kappa * r;
}

FlowState contact_curve(int family, const FlowState& U0, double sigma, const GasModel& gas) {
  U0.validate();
  FlowState out = U0;
  switch (family) {
    case 2: {
      const double scale = std::exp(sigma);
      out.u = U0.u * scale;
      out.v = U0.v * scale;
      if (!(out.u > sound_speed(out.p, out.rho, gas)))
        throw domain_error("contact_curve: rescaled state is subsonic or sonic");
      break;
    }
    case 3:
      out.rho = U0.rho + sigma;
      if (!(out.rho > 0.0))
        throw domain_error("contact_curve: density shift makes rho non-positive");
      break;
    case 4:
      out.Z = clamp_unburned_fraction(U0.Z + sigma);
      break;
    default:
      throw contract_error("contact_curve: family must be 2, 3 or 4");
  }
  out.validate();
  return out;
}

ShockPoint shock_curve(int family, const FlowState& U0, double rho, const GasModel& gas) {
  if (!genuinely_nonlinear(family))
    throw contract_error("shock_curve: family must be 1 or 5");
  U0.validate();
  if (!(rho > U0.rho))
    throw domain_error("shock_curve: rho must exceed the base density (compressive branch)");
  return detail::shock_from_upstream(U0, rho / U0.rho, family, gas);
}

FlowState rarefaction_curve(int family, const FlowState& U0, double sigma,
                            const GasModel& gas) {
  if (!genuinely_nonlinear(family))
    throw contract_error("rarefaction_curve: family must be 1 or 5");
  if (!(sigma >= 0.0))
    throw domain_error("rarefaction_curve: sigma must be >= 0");
  return detail::rarefaction_path(family, U0, sigma, gas);
}

FlowState phi(int family, double alpha, const FlowState& U0, const GasModel& gas) {
  assert(family >= 1 && family <= 5);
  FlowState out;
  if (!genuinely_nonlinear(family)) {
    out = contact_curve(family, U0, alpha, gas);
  } else if (alpha == 0.0) {
    return U0;
  } else if (alpha > 0.0) {
    out = detail::rarefaction_path(family, U0, alpha, gas);
  } else {
    out = detail::shock_by_increment(family, alpha, U0, gas).U;
  }
  const double turn = flow_angles(out, gas).theta - flow_angles(U0, gas).theta;
  if (!(std::abs(turn) <= kCurveMaxTurn))
    throw domain_error("phi: turning exceeds configured curve range");
  return out;
}

FlowState compose_phi(const Vec5& alphas, const FlowState& U_b, const GasModel& gas) {
  FlowState U = U_b;
  for (int family = 1; family <= 5; ++family) U = phi(family, alphas[family - 1], U, gas);
  return U;
}

namespace detail {

FlowState rarefaction_path(int family, const FlowState& U0, double sigma,
                           const GasModel& gas) {
  assert(genuinely_nonlinear(family));
  U0.validate();
  if (sigma == 0.0) return U0;
  const double g = gas.gamma;
  const double B0 = bernoulli(U0, gas);
  const double S0 = entropy_invariant(U0, gas);
  const double q_star2 = 2.0 * B0;
  // Step bound 1e-3 * q/c keeps the fourth-order local error far below the
  // invariant-projection tolerance; at least 64 steps resolve short curves.
  const int n = std::max<int>(
      64, static_cast<int>(std::ceil(std::abs(sigma) / (1e-3 * mach_number(U0, gas)))));
  const double h = sigma / n;

  auto shifted = [](const FlowState& U, double dt, const Vec5& k) {
    FlowState W = U;
    W.u += dt * k[0];
    W.v += dt * k[1];
    W.p += dt * k[2];
    W.rho += dt * k[3];
    W.Z += dt * k[4];
    return W;
  };

  FlowState U = U0;
  for (int i = 0; i < n; ++i) {
    try {
      const Vec5 k1 = eigenvector(family, U, gas, true);
      const Vec5 k2 = eigenvector(family, shifted(U, 0.5 * h, k1), gas, true);
      const Vec5 k3 = eigenvector(family, shifted(U, 0.5 * h, k2), gas, true);
      const Vec5 k4 = eigenvector(family, shifted(U, h, k3), gas, true);
      U = shifted(U, h / 6.0, k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } catch (const domain_error&) {
      throw_rarefaction_exit(i * h);
    }
    // Re-project onto the Bernoulli level and the isentrope of U0: recompute
    // (p, rho) from the conserved (B0, S0) at the integrated speed.
    const double q2 = U.u * U.u + U.v * U.v;
    const double c2 = (g - 1.0) * (B0 - 0.5 * q2);
    if (!(q2 < q_star2) || !(c2 > 0.0) || !(U.u * U.u > c2))
      throw_rarefaction_exit((i + 1) * h);
    U.rho = std::pow(c2 / (g * S0), 1.0 / (g - 1.0));
    U.p = S0 * std::pow(U.rho, g);
    U.Z = U0.Z;
  }
  return U;
}

ShockPoint shock_from_upstream(const FlowState& U_up, double ratio, int family,
                               const GasModel& gas) {
  if (!(ratio > 1.0))
    throw domain_error("shock curve: density ratio must exceed 1 on the compressive branch");
  const double g = gas.gamma;
  const double b = 0.5 * (g + 1.0) - 0.5 * (g - 1.0) * ratio;
  if (!(b > 0.0)) throw domain_error("density ratio beyond limit (gamma+1)/(gamma-1)");
  const double c0 = sound_speed(U_up.p, U_up.rho, gas);
  return jump_from_base(U_up, c0 * c0 * ratio / b, U_up.rho * ratio, family);
}

ShockPoint shock_from_downstream(const FlowState& U_down, double ratio, int family,
                                 const GasModel& gas) {
  if (!(ratio > 1.0))
    throw domain_error("shock curve: density ratio must exceed 1 on the compressive branch");
  const double g = gas.gamma;
  if (!(ratio < (g + 1.0) / (g - 1.0)))
    throw domain_error("density ratio beyond limit (gamma+1)/(gamma-1)");
  const double bhat = 0.5 * ((g + 1.0) * ratio - (g - 1.0));
  const double c0 = sound_speed(U_down.p, U_down.rho, gas);
  return jump_from_base(U_down, c0 * c0 / bhat, U_down.rho / ratio, family);
}

double max_ratio_from_upstream(const FlowState& U_up, const GasModel& gas) {
  const double g = gas.gamma;
  const double M2 = mach_number(U_up, gas) * mach_number(U_up, gas);
  return (g + 1.0) * M2 / ((g - 1.0) * M2 + 2.0);
}

ShockPoint shock_by_increment(int family, double alpha, const FlowState& U0,
                              const GasModel& gas) {
  assert(family == 1 || family == 5);
  assert(alpha < 0.0);
  // Pick the density ratio whose jump changes the family eigenvalue by
  // exactly alpha. Family 1 walks downstream from U0; family 5 walks
  // upstream (U0 is the downstream side of a 5-shock).
  const double lam0 = eigenvalue(family, U0, gas);
  if (alpha > -1e-11) {
    // below the resolution of the ratio solve: linearized step along the
    // normalized eigenvector (error O(alpha^2)), slope at the Lax average
    const Vec5 r = eigenvector(family, U0, gas, true);
    FlowState U = U0;
    U.u += alpha * r[0];
    U.v += alpha * r[1];
    U.p += alpha * r[2];
    U.rho += alpha * r[3];
    U.Z += alpha * r[4];
    return ShockPoint{U, lam0 + 0.5 * alpha};
  }
  auto produced = [&](double ratio) {
    return family == 1 ? shock_from_upstream(U0, ratio, 1, gas)
                       : shock_from_downstream(U0, ratio, 5, gas);
  };
  auto objective = [&](double ratio) -> double {
    try {
      return eigenvalue(family, produced(ratio).U, gas) - lam0 - alpha;
    } catch (const domain_error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  const double span = (family == 1 ? max_ratio_from_upstream(U0, gas)
                                   : (gas.gamma + 1.0) / (gas.gamma - 1.0)) -
                      1.0;
  const double ratio = solve_growing(objective, 1.0 + 1e-13, 1e-6, span);
  return produced(ratio);
}

} // namespace detail

} // namespace sfront
