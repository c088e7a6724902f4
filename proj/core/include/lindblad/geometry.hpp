#pragma once

#include <vector>

#include "lindblad/types.hpp"

namespace lindblad {

enum class CurveKind { Lemon, Gaussian, EllipseConvolutionNumeric, Empirical };

/// Closed polyline in the complex plane (points.front() == points.back()).
struct BoundaryCurve {
  CurveKind kind = CurveKind::Empirical;
  double alpha = 0.0;
  std::vector<Complex> points;

  bool closed(double tol = 1e-9) const;
  Complex centroid() const;
};

/// Even-odd ray casting; the polyline must be closed.
bool point_in_polygon(Complex p, const std::vector<Complex>& closed_polyline);

/// Moves every vertex outward by `offset` along the ray from the curve
/// centroid. Matches a true outward dilation for star-shaped curves,
/// which is all we trace.
BoundaryCurve inflate(const BoundaryCurve& curve, double offset);

/// Convex hull (monotone chain), returned as a closed CCW polyline.
/// Throws std::invalid_argument when all points are collinear.
std::vector<Complex> convex_hull(std::vector<Complex> points);

/// Ratio max/min of vertex distances from the centroid.
double circularity(const std::vector<Complex>& closed_polyline);

/// Symmetric Hausdorff distance between two point sets / polylines.
double hausdorff_distance(const std::vector<Complex>& a,
                          const std::vector<Complex>& b);

}  // namespace lindblad
