#pragma once

#include "lindblad/types.hpp"

namespace lindblad {

/// Complete elliptic integrals in the parameter convention,
///   K(m) = int_0^{pi/2} dt / sqrt(1 - m sin^2 t),
///   E(m) = int_0^{pi/2} sqrt(1 - m sin^2 t) dt,
/// evaluated by the arithmetic-geometric mean with principal square
/// roots, so complex parameters off the cut [1, inf) are supported.
/// Relative error <= 1e-10 for real m < 1. K throws std::domain_error at
/// the m = 1 pole; E(1) = 1 exactly.
Complex elliptic_K(Complex m);
Complex elliptic_E(Complex m);

double elliptic_K(double m);
double elliptic_E(double m);

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im z >= 0.
/// Maclaurin series in extended precision below |z| = 4, Laplace
/// continued fraction above.
Complex faddeeva_w(Complex z);

/// Imaginary error function, any complex argument.
Complex erfi(Complex z);

}  // namespace lindblad
