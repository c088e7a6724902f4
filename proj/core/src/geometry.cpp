#include "lindblad/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lindblad {

bool BoundaryCurve::closed(double tol) const {
  return points.size() >= 4 && std::abs(points.front() - points.back()) <= tol;
}

Complex BoundaryCurve::centroid() const {
  if (points.empty()) return {0.0, 0.0};
  // Skip the duplicated closing vertex.
  const size_t count = points.size() - (closed(1e-9) ? 1 : 0);
  Complex sum(0.0, 0.0);
  for (size_t i = 0; i < count; ++i) sum += points[i];
  return sum / static_cast<double>(count);
}

bool point_in_polygon(Complex p, const std::vector<Complex>& poly) {
  bool inside = false;
  const double x = p.real(), y = p.imag();
  for (size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const double xi = poly[i].real(), yi = poly[i].imag();
    const double xj = poly[j].real(), yj = poly[j].imag();
    if ((yi > y) != (yj > y)) {
      const double x_cross = xi + (y - yi) * (xj - xi) / (yj - yi);
      if (x < x_cross) inside = !inside;
    }
  }
  return inside;
}

BoundaryCurve inflate(const BoundaryCurve& curve, double offset) {
  const Complex c = curve.centroid();
  BoundaryCurve out = curve;
  for (auto& p : out.points) {
    const Complex d = p - c;
    const double len = std::abs(d);
    if (len > 0.0) p += offset * d / len;
  }
  return out;
}

std::vector<Complex> convex_hull(std::vector<Complex> points) {
  auto less = [](const Complex& a, const Complex& b) {
    return a.real() < b.real() ||
           (a.real() == b.real() && a.imag() < b.imag());
  };
  auto cross = [](const Complex& o, const Complex& a, const Complex& b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
  };
  std::sort(points.begin(), points.end(), less);
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const size_t n = points.size();
  if (n < 3) throw std::invalid_argument("convex_hull: degenerate input");

  std::vector<Complex> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  for (size_t i = n - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k);  // k >= 4 unless collinear; last point == first point
  if (k < 4) throw std::invalid_argument("convex_hull: collinear input");
  return hull;
}

double circularity(const std::vector<Complex>& closed_polyline) {
  if (closed_polyline.size() < 4)
    throw std::invalid_argument("circularity: not a closed curve");
  Complex c(0.0, 0.0);
  const size_t count = closed_polyline.size() - 1;
  for (size_t i = 0; i < count; ++i) c += closed_polyline[i];
  c /= static_cast<double>(count);
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
  for (size_t i = 0; i < count; ++i) {
    const double r = std::abs(closed_polyline[i] - c);
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  return rmax / rmin;
}

namespace {

double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len_sq = std::norm(ab);
  if (len_sq == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * ab.real() +
              (p.imag() - a.imag()) * ab.imag()) /
             len_sq;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

double directed_hausdorff(const std::vector<Complex>& from,
                          const std::vector<Complex>& to) {
  double worst = 0.0;
  for (const auto& p : from) {
    double best = std::numeric_limits<double>::infinity();
    if (to.size() == 1) best = std::abs(p - to[0]);
    for (size_t i = 0; i + 1 < to.size(); ++i)
      best = std::min(best, point_segment_distance(p, to[i], to[i + 1]));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const std::vector<Complex>& a,
                          const std::vector<Complex>& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("hausdorff_distance: empty input");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace lindblad
