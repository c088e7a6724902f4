#pragma once

#include <optional>
#include <string>
#include <utility>

#include "lindblad/kossakowski.hpp"
#include "lindblad/rng.hpp"
#include "lindblad/types.hpp"

namespace lindblad {

/// Dense N^2 x N^2 matrix of a GKSL generator acting on row-major
/// vectorized density matrices. Invariants (up to roundoff): the row
/// vector vec(1)^dag annihilates it from the left, the spectrum is closed
/// under conjugation, and all eigenvalue real parts are <= 0.
struct LindbladSuperop {
  int dim_n = 0;
  double alpha = 0.0;
  Matrix matrix;
  std::string provenance;
};

/// Kraus part Phi_hat = sum_a gamma_a V_a (x) conj(V_a).
Matrix kraus_superop(const JumpSet& jumps, int n);

/// X = sum_a gamma_a V_a^dag V_a - 1. Hermitian; traceless whenever the
/// jumps come from an orthonormal traceless basis with sum(gamma) = N.
Matrix translation_matrix(const JumpSet& jumps, int n);

/// Kronecker assembly
///   L = Phi_hat - 1(x)1 - (X/2 + i a H)(x)1 - 1(x)(conj(X)/2 - i a conj(H)).
/// hamiltonian must be present when alpha > 0, Hermitian, with
/// Tr H^2 = 1/N. Cost O(M N^4) for M = N^2-1 jumps; no per-term N^2 x N^2
/// temporaries.
LindbladSuperop build_superop_kron(const JumpSet& jumps, double alpha,
                                   const Matrix* hamiltonian, int n);

/// Reference assembly straight from the two-index form
///   L = sum_mn K_mn [F_n(x)conj(F_m) - (F_m F_n (x) 1 + 1 (x) (F_m F_n)^T)/2]
///       - i a (H(x)1 - 1(x)conj(H)).
/// O(N^8); intended for cross-validation at N <= 12. Accepts any Hermitian
/// coefficient matrix (including 0) so degenerate cases stay testable.
LindbladSuperop build_superop_direct(const Matrix& kossakowski,
                                     const HermitianBasis& basis, double alpha,
                                     const Matrix* hamiltonian);

/// Non-Hermitian random matrix model matching the rescaled Lindblad bulk.
///
/// General:   G_R - (W (x) 1 + 1 (x) conj(W)) with W = C + i a H',
///            G_R real Ginibre of size N^2 (unit disk), C a GOE sample
///            with semicircle radius 1, H' GUE with Tr H'^2 = N.
/// GoeScaled: G_R + a (C (x) 1 + 1 (x) C); the GOE Kronecker-sum
///            deformation scaled by a, no anti-Hermitian part. The sign
///            of the deformation is immaterial (GOE is symmetric).
///
/// Draw order from the stream: G_R, C, then H' (General only).
enum class SurrogateKind { General, GoeScaled };

struct RmtSurrogate {
  int dim_n = 0;
  double alpha = 0.0;
  SurrogateKind kind = SurrogateKind::General;
  Matrix matrix;
};

RmtSurrogate build_rmt_surrogate(int n, double alpha, RngStream& stream,
                                 SurrogateKind kind = SurrogateKind::General);

/// Semi-axes (re, im) of the ellipse filled by the spectrum of
/// W = C + i a H': (1/sqrt(1+4a^2), 4a^2/sqrt(1+4a^2)).
std::pair<double, double> surrogate_ellipse_params(double alpha);

}  // namespace lindblad
