/** \file wall.hpp
 *  \brief The bending lower wall y = g(x): vertex polyline input, the mesh-h
 *         polygonal approximation with corners A_k = (kh, g(kh)), segment
 *         angles, turning angles, outer normals, and the angle aggregates
 *         consumed by the variation functional.
 */
#ifndef SFRONT_WALL_HPP
#define SFRONT_WALL_HPP

#include "sfront/gas.hpp"

#include <array>
#include <vector>

namespace sfront {

/** \brief Wall description: piecewise-linear graph through `vertices`,
 *  flat (y = 0) for x <= 0, extended with the last segment slope beyond the
 *  last vertex. `reference_slopes` carries the slopes of the unperturbed
 *  convex reference wall (one per segment; empty means reference = wall). */
struct Wall {
  std::vector<std::array<double, 2>> vertices;
  std::vector<double> reference_slopes;

  /// Throws domain_error naming the violated requirement.
  void validate() const;
  /// Piecewise-linear elevation at x (0 for x <= 0, linear extension beyond).
  double elevation(double x) const;
  /// Segment slope g'(x) (0 for x < first vertex, last slope beyond the end).
  double slope(double x) const;
};

/// Total variation of (g' - g_reference') across segments plus the entry jump,
/// i.e. the size of the perturbation superimposed on the convex reference.
double perturbation_total_variation(const Wall& wall);

/** \brief Polygonal approximation of the wall at mesh length h.
 *  corners[k] = (kh, g(kh)); segment_angles[k] = arctan((g_{k+1}-g_k)/h) on
 *  [kh, (k+1)h); turning_angles[k] = theta_k - theta_{k-1} with theta_{-1} = 0
 *  (the wall is flat upstream of x = 0); normals[k] = (sin theta_k, -cos theta_k). */
struct WallMesh {
  double h = 0;
  std::vector<std::array<double, 2>> corners;
  std::vector<double> segment_angles;
  std::vector<double> turning_angles;
  std::vector<std::array<double, 2>> normals;

  /// Index of the segment containing x (clamped at the ends).
  int segment_index(double x) const;
  /// Approximate elevation g_h(x); linear extension beyond the last corner.
  double elevation(double x) const;
  /// Segment angle theta at x (0 upstream of x = 0).
  double angle(double x) const;
  /// Outer normal of the segment containing x.
  std::array<double, 2> normal(double x) const;
};

/** \brief Samples the wall at x = kh and forms angles/turnings/normals.
 *  Corners cover k = 0 .. ceil(x_last/h); every segment angle must lie inside
 *  (theta_lo, theta_hi) or "wall slope outside admissible cone" is thrown. */
WallMesh build_mesh(const Wall& wall, double h, double theta_lo = -0.9,
                    double theta_hi = 0.1);

/** \brief The three corner-angle aggregates used by the variation functional at
 *  station x: the future convex turnings (kh >= x, omega < 0), the sum of past
 *  convex turning magnitudes (kh < x, omega < 0), and the future concave
 *  turnings (kh >= x, omega > 0). */
struct CornerAngleSets {
  std::vector<double> Omega_Ra; ///< future convex corner angles (each < 0)
  double theta_hat = 0;         ///< sum of |omega| over past convex corners
  std::vector<double> Q_c_set;  ///< future concave corner angles (each > 0)
};

CornerAngleSets corner_angle_sets(const WallMesh& mesh, double x);

} // namespace sfront

#endif // SFRONT_WALL_HPP
