#pragma once

// Thin wrappers over the LAPACK/BLAS routines the library needs. All
// callers go through here so the BLAS thread count can be pinned to one
// before first use: realizations parallelize at the task level and results
// must not depend on BLAS-internal scheduling.

#include <vector>

#include "lindblad/types.hpp"

namespace lindblad::detail {

/// zgeev, eigenvalues only. Throws EigFailure on non-convergence.
std::vector<Complex> eig_nonsym(const Matrix& a);

/// zheevd. Eigenvalues ascending; vectors optional.
void eig_hermitian(const Matrix& a, RealVector& values, Matrix* vectors);

/// zgesdd, singular values only, descending.
std::vector<double> singular_values(const Matrix& a);

/// zgeqrf + zungqr; returns Q and the diagonal of R.
void qr_unitary(const Matrix& a, Matrix& q, Vector& r_diag);

/// c = a * b via zgemm.
Matrix gemm(const Matrix& a, const Matrix& b);

/// c = op(a) * op(b), ops in {'N','T','C'}.
Matrix gemm(char op_a, const Matrix& a, char op_b, const Matrix& b);

}  // namespace lindblad::detail
