#include "voxbridge/smoothing.hpp"

#include <cmath>
#include <stdexcept>

namespace voxbridge {

namespace {

std::vector<Vec3> merge_duplicates(std::span<const Vec3> pts) {
  std::vector<Vec3> out;
  out.reserve(pts.size());
  for (const Vec3& p : pts) {
    if (out.empty() || (p - out.back()).norm() > 0.0) out.push_back(p);
  }
  return out;
}

}  // namespace

SplineCurve SplineCurve::fit(std::span<const Vec3> points) {
  if (points.size() < 2) throw std::invalid_argument("SplineCurve::fit: need at least 2 points");

  SplineCurve c;
  c.knots_.assign(points.begin(), points.end());
  const std::size_t n = c.knots_.size();
  if (n < 4) return c;  // line / quadratic handled in eval

  // Natural cubic spline on uniform knots: tridiagonal system for the
  // second derivatives (Thomas algorithm), per coordinate.
  const std::size_t m = n - 2;
  const double h = 1.0 / static_cast<double>(n - 1);
  std::vector<Vec3> rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    rhs[i] = 6.0 / (h * h) * (c.knots_[i] - 2.0 * c.knots_[i + 1] + c.knots_[i + 2]);
  }
  std::vector<double> diag(m, 4.0);
  for (std::size_t i = 1; i < m; ++i) {
    const double w = 1.0 / diag[i - 1];
    diag[i] -= w;
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<Vec3> moments(m);
  moments[m - 1] = rhs[m - 1] / diag[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) {
    moments[i] = (rhs[i] - moments[i + 1]) / diag[i];
  }

  c.second_derivs_.assign(n, Vec3::Zero());  // natural ends stay zero
  for (std::size_t i = 0; i < m; ++i) c.second_derivs_[i + 1] = moments[i];
  return c;
}

Vec3 SplineCurve::eval(double t) const {
  const std::size_t n = knots_.size();
  t = std::clamp(t, 0.0, 1.0);

  if (n == 2) return (1.0 - t) * knots_[0] + t * knots_[1];
  if (n == 3) {
    // Interpolating quadratic through t = 0, 1/2, 1.
    const Vec3& p0 = knots_[0];
    const Vec3& p1 = knots_[1];
    const Vec3& p2 = knots_[2];
    return p0 * (2.0 * (t - 0.5) * (t - 1.0)) + p1 * (-4.0 * t * (t - 1.0)) +
           p2 * (2.0 * t * (t - 0.5));
  }

  const double h = 1.0 / static_cast<double>(n - 1);
  std::size_t seg = std::min(static_cast<std::size_t>(t / h), n - 2);
  const double t0 = seg * h;
  const double a = (t0 + h - t) / h;
  const double b = (t - t0) / h;
  const Vec3& m0 = second_derivs_[seg];
  const Vec3& m1 = second_derivs_[seg + 1];
  return a * knots_[seg] + b * knots_[seg + 1] +
         ((a * a * a - a) * m0 + (b * b * b - b) * m1) * (h * h) / 6.0;
}

SplineCurve fit_spline(const PathPolyline& polyline) {
  const std::vector<Vec3> pts = merge_duplicates(polyline.points);
  if (pts.size() < 2)
    throw std::invalid_argument("fit_spline: need at least 2 distinct waypoints");
  return SplineCurve::fit(pts);
}

std::vector<Vec3> resample_macro(const SplineCurve& curve, const SmoothingConfig& cfg) {
  if (!(cfg.d_max > 0.0) || cfg.d_max > cfg.s_macro)
    throw std::invalid_argument("resample_macro: need 0 < d_max <= s_macro");

  double length = 0.0;
  Vec3 prev = curve.eval(0.0);
  for (int i = 1; i <= cfg.arc_samples; ++i) {
    const Vec3 p = curve.eval(static_cast<double>(i) / cfg.arc_samples);
    length += (p - prev).norm();
    prev = p;
  }

  // Guard the ceil against floating noise on exactly divisible lengths.
  const double ratio = length / cfg.s_macro;
  const int segments = std::max(1, static_cast<int>(std::ceil(ratio - 1e-9 * std::max(1.0, ratio))));

  std::vector<Vec3> macro;
  macro.reserve(segments + 1);
  for (int i = 0; i <= segments; ++i) {
    macro.push_back(curve.eval(static_cast<double>(i) / segments));
  }
  return macro;
}

std::vector<Vec3> subdivide_micro(std::span<const Vec3> macro, double d_max) {
  if (!(d_max > 0.0)) throw std::invalid_argument("subdivide_micro: d_max must be > 0");
  std::vector<Vec3> micro;
  if (macro.empty()) return micro;
  micro.push_back(macro.front());
  std::vector<Vec3> candidate;
  for (std::size_t i = 1; i < macro.size(); ++i) {
    const Vec3& a = macro[i - 1];
    const Vec3& b = macro[i];
    const double gap = (b - a).norm();
    if (gap <= d_max) {
      micro.push_back(b);
      continue;
    }
    // Rounding in the interpolation can leave a sub-gap a hair over the
    // bound; re-split with one more piece until the bound holds literally.
    int pieces = std::max(2, static_cast<int>(std::ceil(gap / d_max)));
    for (;; ++pieces) {
      candidate.clear();
      Vec3 prev = a;
      bool ok = true;
      for (int k = 1; k <= pieces; ++k) {
        const double s = static_cast<double>(k) / pieces;
        const Vec3 p = (1.0 - s) * a + s * b;
        if ((p - prev).norm() > d_max) {
          ok = false;
          break;
        }
        candidate.push_back(p);
        prev = p;
      }
      if (ok) break;
    }
    micro.insert(micro.end(), candidate.begin(), candidate.end());
  }
  return micro;
}

ReferencePath smooth_path(const PathPolyline& polyline, const SmoothingConfig& cfg) {
  ReferencePath ref;
  const std::vector<Vec3> pts = merge_duplicates(polyline.points);
  if (pts.empty()) return ref;
  if (pts.size() == 1) {
    ref.macro = pts;
    ref.micro = pts;
    return ref;
  }
  const SplineCurve curve = SplineCurve::fit(pts);
  ref.macro = resample_macro(curve, cfg);
  ref.micro = subdivide_micro(ref.macro, cfg.d_max);
  for (std::size_t i = 1; i < ref.macro.size(); ++i) {
    ref.total_length += (ref.macro[i] - ref.macro[i - 1]).norm();
  }
  return ref;
}

}  // namespace voxbridge
