/** \file riemann.hpp
 *  \brief Riemann solvers: the exact five-wave solver, the accurate nu-front
 *         solver (rarefactions split into nu pieces), the simplified solvers
 *         that lump interaction residue into non-physical fronts, and the
 *         boundary (corner / reflection) solvers.
 */
#ifndef SFRONT_RIEMANN_HPP
#define SFRONT_RIEMANN_HPP

#include "sfront/curves.hpp"

#include <array>
#include <vector>

namespace sfront {

/// Family tag of non-physical bookkeeping fronts.
inline constexpr int kFamilyNP = 6;

/// Family tag used for the composite contact front (families 2, 3, 4 share the
/// streamline slope and are carried jointly; 3 is the middle index so ordering
/// comparisons against families 1 and 5 behave like any degenerate family).
inline constexpr int kFamilyContact = 3;

/** \brief Exact solution of the Riemann problem between two nearby states. */
struct RiemannSolution {
  Vec5 alphas;                             ///< strengths of families 1..5
  std::array<FlowState, 4> middle_states;  ///< states after families 1..4
  double residual = 0;                     ///< scaled max-norm Newton residual
};

/** \brief Strength bundle of one wave: a genuinely nonlinear strength, a
 *  composite contact triple, or a non-physical magnitude. */
struct WaveDesc {
  int family = 0;                        ///< 1, 5, kFamilyContact or kFamilyNP
  double strength = 0;                   ///< GNL strength / NP magnitude / contact sum
  std::array<double, 3> contact{0, 0, 0}; ///< (alpha2, alpha3, alpha4) for contacts
};

/** \brief One outgoing front of a Riemann fan. */
struct FrontRec {
  int family = 0;                        ///< 1, 5, kFamilyContact or kFamilyNP
  double strength = 0;                   ///< signed strength (NP: magnitude >= 0)
  std::array<double, 3> contact{0, 0, 0}; ///< per-family contact strengths
  double slope = 0;                      ///< propagation slope dy/dx
  FlowState below, above;
};

/** \brief Ordered fan (bottom-to-top, slopes strictly increasing); at most one
 *  non-physical front, always topmost at the super-characteristic slope. */
struct FrontFan {
  std::vector<FrontRec> fronts;
};

/** \brief Exact Riemann solver: finds alphas with
 *  compose_phi(alphas, U_b) = U_a to scaled residual <= 1e-10. A scalar
 *  theta-based solve peels the (possibly large) 5-wave first, then damped
 *  Newton polishes all five strengths. Throws numerical_error
 *  "Riemann solver divergence" or domain_error "inadmissible intermediate state". */
RiemannSolution solve_riemann(const FlowState& U_b, const FlowState& U_a,
                              const GasModel& gas);

/** \brief Accurate nu-front solver: shocks and the composite contact stay single
 *  fronts; each rarefaction of strength alpha splits into nu fronts of strength
 *  alpha/nu, the k-th separating U_{0,k-1} from U_{0,k} at slope
 *  lambda(U_{0,k}). The top state is snapped to U_a exactly. */
FrontFan accurate_solver(const FlowState& U_b, const FlowState& U_a, int nu,
                         const GasModel& gas);

/** \brief Simplified solver for two interacting physical fronts
 *  (`below` of family j under `above` of family i, i <= j required):
 *  the auxiliary state U'_a = Phi_j(beta, Phi_i(alpha, U_b)) (families swapped;
 *  merged to Phi_j(alpha+beta, U_b) when i = j) yields at most two physical
 *  fronts, and the residue becomes a non-physical front of strength |U_a - U'_a|
 *  at slope lambda_hat (which must exceed every physical slope). */
FrontFan simplified_solver_interaction(const FlowState& U_b, const FlowState& U_m,
                                       const FlowState& U_a, const WaveDesc& below,
                                       const WaveDesc& above, double lambda_hat,
                                       const GasModel& gas);

/** \brief Simplified solver for a non-physical front (below, strength
 *  |U_m - U_b|) hitting a physical front of descriptor `above`
 *  (U_a = the wave applied to U_m): the physical front re-emerges from U_b
 *  unchanged in strength, and the non-physical front carries the residual
 *  |U_a - Phi(above, U_b)| onward at lambda_hat. Z never jumps across
 *  non-physical fronts. */
FrontFan simplified_solver_np_crossing(const FlowState& U_b, const FlowState& U_m,
                                       const FlowState& U_a, const WaveDesc& above,
                                       double lambda_hat, const GasModel& gas);

/// Corner solve flavor: `small_kink` for perturbation corners of either sign,
/// `strong_expansion` for the convex background corners (omega < 0).
enum class CornerMode { small_kink, strong_expansion };

/** \brief Emitted-wave strength and the new wall-adjacent state. */
struct BoundarySolution {
  double epsilon5 = 0;  ///< strength of the emitted 5-wave
  FlowState U_next;     ///< state below the wave, tangent to the wall
  double slope = 0;     ///< propagation slope of the emitted front
};

/** \brief Corner solve: given the wall-adjacent state U_prev (tangent to the
 *  previous segment) and the turning angle omega of the corner, finds
 *  (epsilon5, U_next) with Phi_5(epsilon5, U_next) = U_prev and
 *  theta(U_next) = theta(U_prev) + omega. omega < 0 emits a rarefaction
 *  (epsilon5 > 0); strong mode additionally requires omega < 0 and walks the
 *  rarefaction curve, preserving the Bernoulli and entropy invariants.
 *  Throws domain_error "turning exceeds theta_crit" when the expansion leaves
 *  the admissible region. */
BoundarySolution corner_solver(const FlowState& U_prev, double omega,
                               CornerMode mode, const GasModel& gas);

/** \brief Wall reflection: incoming 1-front of strength alpha1 above the
 *  wall-tangent state U_b (U_a = Phi_1(alpha1, U_b)); finds (epsilon5, U_after)
 *  with Phi_5(epsilon5, U_after) = U_a and U_after tangent to the wall normal.
 *  The reflection coefficient epsilon5/alpha1 tends to 1 as alpha1 -> 0. */
BoundarySolution reflection_solver(const FlowState& U_b, double alpha1,
                                   const std::array<double, 2>& wall_normal,
                                   const GasModel& gas);

namespace detail {

/** \brief State below a 5-wave of strength alpha whose above state is U_above
 *  (inverse of Phi_5 in the base state), plus the natural front slope.
 *  alpha >= 0 walks the rarefaction curve backwards; alpha < 0 inverts the
 *  compressive branch (U_above is the upstream side of the 5-shock). */
struct Psi5Result {
  FlowState U;
  double slope;
};
Psi5Result psi5(double alpha, const FlowState& U_above, const GasModel& gas);

/** \brief phi plus the natural propagation slope of the produced single front
 *  (shock slope on the compressive branch, lambda(out) on the rarefaction
 *  branch, streamline slope for contacts). */
struct PhiFront {
  FlowState U;
  double slope;
};
PhiFront phi_with_slope(int family, double alpha, const FlowState& U0,
                        const GasModel& gas);

/// Applies a wave descriptor (GNL strength or composite contact triple) to U.
FlowState apply_wave(const WaveDesc& wave, const FlowState& U, const GasModel& gas);

/// Euclidean distance between states in primitive variables.
double state_distance(const FlowState& A, const FlowState& B);

} // namespace detail

} // namespace sfront

#endif // SFRONT_RIEMANN_HPP
