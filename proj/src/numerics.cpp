#include "sfront/numerics.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "sfront/gas.hpp"

namespace sfront {

Vec5 operator+(const Vec5& a, const Vec5& b) {
  Vec5 r;
  for (int i = 0; i < 5; ++i) r[i] = a[i] + b[i];
  return r;
}

Vec5 operator-(const Vec5& a, const Vec5& b) {
  Vec5 r;
  for (int i = 0; i < 5; ++i) r[i] = a[i] - b[i];
  return r;
}

Vec5 operator*(double s, const Vec5& a) {
  Vec5 r;
  for (int i = 0; i < 5; ++i) r[i] = s * a[i];
  return r;
}

double max_abs(const Vec5& a) {
  double m = 0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

double solve_bracketed(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if (!(flo * fhi < 0))
    throw numerical_error("solve_bracketed: endpoints do not bracket a root");
  boost::math::tools::eps_tolerance<double> tol(60);
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (r.first + r.second);
}

double solve_growing(const std::function<double(double)>& f, double lo,
                     double first_step, double max_span) {
  const double flo = f(lo);
  if (flo == 0) return lo;
  double step = first_step;
  double last_ok = lo;
  while (step <= max_span * 2.0) {
    const double x = lo + step;
    const double v = f(x);
    if (std::isnan(v)) {
      // The function left its validity range: bisect back toward the last
      // finite point, then try to bracket on [lo, last_ok].
      double bad = x, good = last_ok;
      for (int i = 0; i < 200 && bad - good > 1e-14 * (1.0 + std::abs(good)); ++i) {
        const double mid = 0.5 * (good + bad);
        const double vm = f(mid);
        if (std::isnan(vm))
          bad = mid;
        else
          good = mid;
      }
      const double fg = f(good);
      if (flo * fg <= 0) return solve_bracketed(f, lo, good);
      throw numerical_error("solve_growing: no sign change before validity boundary");
    }
    if (flo * v <= 0) return solve_bracketed(f, lo, x);
    last_ok = x;
    step *= 2.0;
  }
  throw numerical_error("solve_growing: no sign change within allowed span");
}

double newton5(const std::function<Vec5(const Vec5&)>& F, Vec5& x, double fd_step,
               double tol, int max_iter, double fail_tol) {
  double res = max_abs(F(x));
  for (int it = 0; it < max_iter && res > tol; ++it) {
    Eigen::Matrix<double, 5, 5> J;
    for (int k = 0; k < 5; ++k) {
      Vec5 xp = x, xm = x;
      xp[k] += fd_step;
      xm[k] -= fd_step;
      const Vec5 d = F(xp) - F(xm);
      for (int i = 0; i < 5; ++i) J(i, k) = d[i] / (2.0 * fd_step);
    }
    const Vec5 Fx = F(x);
    Eigen::Matrix<double, 5, 1> rhs;
    for (int i = 0; i < 5; ++i) rhs(i) = -Fx[i];
    Eigen::Matrix<double, 5, 1> dx = J.partialPivLu().solve(rhs);
    Vec5 step;
    for (int i = 0; i < 5; ++i) step[i] = dx(i);

    // Backtracking damping: halve until the residual improves.
    double t = 1.0;
    bool improved = false;
    while (t > 1e-4) {
      const double cand = max_abs(F(x + t * step));
      if (cand < res) {
        improved = true;
        break;
      }
      t *= 0.5;
    }
    // No step improves once the numerical floor is reached; stop there
    // rather than dithering around it.
    if (!improved && res <= fail_tol) break;
    x = x + t * step;
    res = max_abs(F(x));
  }
  if (res > fail_tol) throw numerical_error("Riemann solver divergence");
  return res;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
  // 53 significant bits into (0,1).
  return (static_cast<double>(next() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

} // namespace sfront
