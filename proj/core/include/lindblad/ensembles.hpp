#pragma once

#include <vector>

#include "lindblad/rng.hpp"
#include "lindblad/types.hpp"

namespace lindblad {

/// n x n matrix with i.i.d. complex Gaussian entries; real and imaginary
/// parts are independent N(0, 1/(2n)), so E Tr GG^dag = n and the spectrum
/// fills the unit disk as n grows.
Matrix ginibre_complex(int n, RngStream& stream);

/// n x n matrix with i.i.d. real N(0, 1/n) entries. Spectrum is
/// asymptotically uniform on the unit disk with the usual excess of
/// exactly real eigenvalues.
RealMatrix ginibre_real(int n, RngStream& stream);

/// Real symmetric Gaussian matrix whose limiting eigenvalue density is a
/// semicircle of the given radius: off-diagonal variance radius^2/(4n),
/// diagonal variance radius^2/(2n).
RealMatrix goe(int n, double radius, RngStream& stream);

/// Hermitian Gaussian sample rescaled so that Tr H^2 == target_trace_sq
/// exactly (the normalization is a per-sample condition, not an average).
Matrix gue(int n, double target_trace_sq, RngStream& stream);

/// Haar-distributed unitary. QR orthonormalization of a complex Ginibre
/// sample alone is not Haar; each column is corrected by the phase of the
/// corresponding diagonal entry of the triangular factor.
Matrix haar_unitary(int n, RngStream& stream);

/// k non-negative entries summing to 1, flat (Dirichlet(1,..,1)) on the
/// simplex.
std::vector<double> random_prob_vector(int k, RngStream& stream);

}  // namespace lindblad
