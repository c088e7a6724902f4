#pragma once

#include <cstdint>

#include "lindblad/geometry.hpp"
#include "lindblad/types.hpp"

namespace lindblad {

/// Stieltjes transform G(z) = int rho(x)/(z - x) dx of the classical
/// convolution of two radius-1 semicircle densities (support [-2, 2]):
///   G(z) = 2z - (2z/3pi)[(4 + z^2) E(4/z^2) + (4 - z^2) K(4/z^2)],
/// with E, K in the parameter convention (validated against direct
/// quadrature of the defining double integral). Throws std::domain_error
/// for z on the support.
Complex stieltjes_two_semicircles(Complex z);

/// Stieltjes transform of the standard Gaussian density,
///   G(z) = sqrt(pi/2) e^{-z^2/2} (erfi(z/sqrt 2) - i sgn(Im z)),
/// requiring Im z != 0.
Complex stieltjes_gaussian(Complex z);

enum class StieltjesKind { TwoSemicircles, Gaussian };

Complex stieltjes(StieltjesKind kind, Complex z);

/// Traces the closed nontrivial solution branch of
///   Im[alpha z + G(z/alpha)] = 0
/// (the real axis solves it trivially and is excluded). This is the
/// asymptotic support boundary of a unit Ginibre matrix additively
/// deformed by alpha times a Hermitian matrix with Stieltjes transform G.
/// For the two-semicircle G at alpha = 1 it is the lemon-shaped contour
/// bounding the rescaled purely dissipative Lindblad bulk.
///
/// The curve is star-shaped about the origin, so each point is found by
/// bisecting the sign change of Im[alpha z + G(z/alpha)] along a ray; the
/// upper half is traced on a uniform angle grid, mirrored to the lower
/// half-plane, and the two real-axis endpoints are linearly extrapolated.
/// Returns a closed polyline with at least `resolution` points. Throws
/// std::runtime_error if a ray fails to bracket a root (window too small).
BoundaryCurve boundary_curve(StieltjesKind kind, double alpha, int resolution);

/// boundary_curve(TwoSemicircles, 1.0, resolution).
BoundaryCurve lemon_curve(int resolution = 512);

/// Numeric support boundary of the surrogate model for alpha > 0 in the
/// general (ellipse) regime, where no analytic curve is available. A
/// point z is outside the support of unit-Ginibre plus deterministic
/// deformation iff mean_w 1/|z - w|^2 < 1; the deformation spectrum
/// w = w1 + conj(w2) is sampled with w1, w2 uniform on the ellipse of
/// surrogate_ellipse_params(alpha). One fixed Monte Carlo cloud is reused
/// for every evaluation, so the traced curve is smooth and deterministic
/// for fixed seed. Diagnostic quality: validated only against sampled
/// spectra. Throws std::runtime_error when the Monte Carlo error at the
/// traced radius is too large for the requested mc_points.
BoundaryCurve ellipse_sum_boundary_numeric(double alpha, int mc_points,
                                           int resolution,
                                           std::uint64_t seed = 0x5eed);

}  // namespace lindblad
