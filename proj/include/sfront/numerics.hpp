/** \file numerics.hpp
 *  \brief Shared numeric utilities: bracketed root solving with geometric bracket
 *         growth (NaN-aware), damped Newton in five strengths, deterministic
 *         splitmix64 stream, and small helpers.
 */
#ifndef SFRONT_NUMERICS_HPP
#define SFRONT_NUMERICS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <string>

namespace sfront {

using Vec5 = std::array<double, 5>;

Vec5 operator+(const Vec5& a, const Vec5& b);
Vec5 operator-(const Vec5& a, const Vec5& b);
Vec5 operator*(double s, const Vec5& a);
double max_abs(const Vec5& a);

/** \brief Root of f on [lo, hi] where f(lo) and f(hi) have opposite signs.
 *  TOMS-748 bracketing iteration to near machine precision; throws
 *  numerical_error if the bracket is invalid. */
double solve_bracketed(const std::function<double(double)>& f, double lo, double hi);

/** \brief Root of f on [lo, lo + growth] found by growing the upper end
 *  geometrically from `first_step` until the sign changes; if f turns NaN
 *  before a sign change (curve leaves its validity range), bisects back to
 *  the last finite point and brackets there. Throws numerical_error when no
 *  sign change exists on the reachable interval. */
double solve_growing(const std::function<double(double)>& f, double lo,
                     double first_step, double max_span);

/** \brief Damped Newton for F(x) = 0, x in R^5, with central-difference Jacobian.
 *  \param F          residual in scaled variables
 *  \param x          initial guess, overwritten with the solution
 *  \param fd_step    per-component finite-difference step
 *  \param tol        max-norm residual target
 *  \param max_iter   iteration cap
 *  \return final residual max-norm
 *  Throws numerical_error if the residual at exit exceeds `fail_tol`. */
double newton5(const std::function<Vec5(const Vec5&)>& F, Vec5& x, double fd_step,
               double tol, int max_iter, double fail_tol);

/** \brief Deterministic 64-bit splitmix stream for the event-ordering perturbations. */
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform double in (0, 1).
  double next_unit();

 private:
  std::uint64_t state_;
};

/// FNV-1a 64-bit hash of a byte string (config fingerprinting).
std::uint64_t fnv1a64(const std::string& bytes);

} // namespace sfront

#endif // SFRONT_NUMERICS_HPP
