#include "sfront/wall.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace sfront {

void Wall::validate() const {
  if (vertices.size() < 2) throw domain_error("wall.vertices: need at least two points");
  if (std::abs(vertices.front()[0]) > 1e-12 || std::abs(vertices.front()[1]) > 1e-12)
    throw domain_error("wall.vertices: first vertex must be (0, 0)");
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (!(vertices[i][0] > vertices[i - 1][0]))
      throw domain_error("wall.vertices: x must be strictly increasing");
  }
  if (!reference_slopes.empty() && reference_slopes.size() != vertices.size() - 1)
    throw domain_error("wall.reference_slopes: need one slope per segment");
}

namespace {

/// Piecewise-linear evaluation helpers shared by Wall and WallMesh.
double polyline_elevation(const std::vector<std::array<double, 2>>& pts, double x) {
  if (x <= pts.front()[0]) return pts.front()[1];
  if (x >= pts.back()[0]) {
    const auto& a = pts[pts.size() - 2];
    const auto& b = pts.back();
    return b[1] + (x - b[0]) * (b[1] - a[1]) / (b[0] - a[0]);
  }
  auto it = std::upper_bound(pts.begin(), pts.end(), x,
                             [](double v, const std::array<double, 2>& p) { return v < p[0]; });
  const auto& b = *it;
  const auto& a = *(it - 1);
  return a[1] + (x - a[0]) * (b[1] - a[1]) / (b[0] - a[0]);
}

double polyline_slope(const std::vector<std::array<double, 2>>& pts, double x) {
  if (x < pts.front()[0]) return 0.0;
  auto it = std::upper_bound(pts.begin(), pts.end(), x,
                             [](double v, const std::array<double, 2>& p) { return v < p[0]; });
  if (it == pts.begin()) ++it;
  if (it == pts.end()) --it;
  const auto& b = *it;
  const auto& a = *(it - 1);
  return (b[1] - a[1]) / (b[0] - a[0]);
}

} // namespace

double Wall::elevation(double x) const {
  if (x <= 0.0) return 0.0;
  return polyline_elevation(vertices, x);
}

double Wall::slope(double x) const {
  if (x < 0.0) return 0.0;
  return polyline_slope(vertices, x);
}

double perturbation_total_variation(const Wall& wall) {
  wall.validate();
  const std::size_t nseg = wall.vertices.size() - 1;
  std::vector<double> diff(nseg, 0.0);
  for (std::size_t k = 0; k < nseg; ++k) {
    const double slope = (wall.vertices[k + 1][1] - wall.vertices[k][1]) /
                         (wall.vertices[k + 1][0] - wall.vertices[k][0]);
    const double ref = wall.reference_slopes.empty() ? slope : wall.reference_slopes[k];
    diff[k] = slope - ref;
  }
  double tv = std::abs(diff[0]); // jump from the flat upstream wall, where g' = g*' = 0
  for (std::size_t k = 1; k < nseg; ++k) tv += std::abs(diff[k] - diff[k - 1]);
  return tv;
}

int WallMesh::segment_index(double x) const {
  const int nseg = static_cast<int>(segment_angles.size());
  const int k = static_cast<int>(std::floor(x / h));
  return std::clamp(k, 0, nseg - 1);
}

double WallMesh::elevation(double x) const {
  if (x <= 0.0) return 0.0;
  const int k = segment_index(x);
  return corners[k][1] + (x - corners[k][0]) * std::tan(segment_angles[k]);
}

double WallMesh::angle(double x) const {
  if (x < 0.0) return 0.0;
  return segment_angles[segment_index(x)];
}

std::array<double, 2> WallMesh::normal(double x) const {
  if (x < 0.0) return {0.0, -1.0};
  return normals[segment_index(x)];
}

WallMesh build_mesh(const Wall& wall, double h, double theta_lo, double theta_hi) {
  wall.validate();
  if (!(h > 0.0)) throw domain_error("mesh.h: must be > 0");
  WallMesh mesh;
  mesh.h = h;
  const double x_last = wall.vertices.back()[0];
  const int K = static_cast<int>(std::ceil(x_last / h - 1e-12));
  assert(K >= 1);
  for (int k = 0; k <= K; ++k)
    mesh.corners.push_back({k * h, wall.elevation(k * h)});
  double prev_theta = 0.0; // flat wall upstream of x = 0
  for (int k = 0; k < K; ++k) {
    // A mesh segment with no wall vertex strictly inside lies on one wall
    // piece; taking that piece's slope directly (not the corner chord) keeps
    // consecutive angles bitwise equal, so straight stretches produce turning
    // angles of exactly zero.
    const double x0 = k * h;
    const double x1 = (k + 1) * h;
    bool interior_vertex = false;
    for (const auto& v : wall.vertices)
      if (v[0] > x0 && v[0] < x1) interior_vertex = true;
    const double slope =
        interior_vertex ? (mesh.corners[k + 1][1] - mesh.corners[k][1]) / h
                        : wall.slope(0.5 * (x0 + x1));
    const double theta = std::atan(slope);
    if (!(theta > theta_lo && theta < theta_hi))
      throw domain_error("wall slope outside admissible cone");
    mesh.segment_angles.push_back(theta);
    mesh.turning_angles.push_back(theta - prev_theta);
    mesh.normals.push_back({std::sin(theta), -std::cos(theta)});
    prev_theta = theta;
  }
  return mesh;
}

CornerAngleSets corner_angle_sets(const WallMesh& mesh, double x) {
  if (!(x >= 0.0)) throw domain_error("corner_angle_sets: x must be >= 0");
  CornerAngleSets sets;
  for (std::size_t k = 0; k < mesh.turning_angles.size(); ++k) {
    const double omega = mesh.turning_angles[k];
    if (omega == 0.0) continue;
    const double xk = mesh.corners[k][0];
    if (omega < 0.0) {
      if (xk >= x)
        sets.Omega_Ra.push_back(omega);
      else
        sets.theta_hat += -omega;
    } else if (xk >= x) {
      sets.Q_c_set.push_back(omega);
    }
  }
  return sets;
}

} // namespace sfront
