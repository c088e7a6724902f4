#include "linalg.hpp"

#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>

#include <lapacke.h>

#include "lindblad/spectra.hpp"

extern "C" {
void zgemm_(const char* transa, const char* transb, const int* m, const int* n,
            const int* k, const void* alpha, const void* a, const int* lda,
            const void* b, const int* ldb, const void* beta, void* c,
            const int* ldc);
}

namespace lindblad::detail {

namespace {

void pin_blas_threads() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    // Keep each LAPACK call single threaded; parallelism lives at the
    // realization level and outputs must not depend on it.
    setenv("OPENBLAS_NUM_THREADS", "1", 1);
  });
}

lapack_complex_double* lp(Matrix& m) {
  return reinterpret_cast<lapack_complex_double*>(m.data());
}

}  // namespace

std::vector<Complex> eig_nonsym(const Matrix& a) {
  pin_blas_threads();
  if (a.rows() != a.cols()) throw std::invalid_argument("eig: matrix not square");
  const int n = static_cast<int>(a.rows());
  Matrix work = a;
  std::vector<Complex> values(static_cast<size_t>(n));
  int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'N', n, lp(work), n,
      reinterpret_cast<lapack_complex_double*>(values.data()), nullptr, 1,
      nullptr, 1);
  if (info < 0) throw std::invalid_argument("zgeev: bad argument " + std::to_string(-info));
  if (info > 0) throw EigFailure("zgeev failed to converge (info=" + std::to_string(info) + ")");
  return values;
}

void eig_hermitian(const Matrix& a, RealVector& values, Matrix* vectors) {
  pin_blas_threads();
  const int n = static_cast<int>(a.rows());
  Matrix work = a;
  values.resize(n);
  int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'L', n,
                            lp(work), n, values.data());
  if (info != 0) throw std::runtime_error("zheevd failed (info=" + std::to_string(info) + ")");
  if (vectors) *vectors = std::move(work);
}

std::vector<double> singular_values(const Matrix& a) {
  pin_blas_threads();
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  Matrix work = a;
  std::vector<double> s(static_cast<size_t>(std::min(m, n)));
  int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, lp(work), m, s.data(),
                            nullptr, 1, nullptr, 1);
  if (info != 0) throw std::runtime_error("zgesdd failed (info=" + std::to_string(info) + ")");
  return s;
}

void qr_unitary(const Matrix& a, Matrix& q, Vector& r_diag) {
  pin_blas_threads();
  const int n = static_cast<int>(a.rows());
  q = a;
  Vector tau(n);
  int info = LAPACKE_zgeqrf(LAPACK_COL_MAJOR, n, n, lp(q), n,
                            reinterpret_cast<lapack_complex_double*>(tau.data()));
  if (info != 0) throw std::runtime_error("zgeqrf failed");
  r_diag = q.diagonal();
  info = LAPACKE_zungqr(LAPACK_COL_MAJOR, n, n, n, lp(q), n,
                        reinterpret_cast<lapack_complex_double*>(tau.data()));
  if (info != 0) throw std::runtime_error("zungqr failed");
}

Matrix gemm(const Matrix& a, const Matrix& b) { return gemm('N', a, 'N', b); }

Matrix gemm(char op_a, const Matrix& a, char op_b, const Matrix& b) {
  pin_blas_threads();
  const int m = static_cast<int>(op_a == 'N' ? a.rows() : a.cols());
  const int k = static_cast<int>(op_a == 'N' ? a.cols() : a.rows());
  const int kb = static_cast<int>(op_b == 'N' ? b.rows() : b.cols());
  const int n = static_cast<int>(op_b == 'N' ? b.cols() : b.rows());
  if (k != kb) throw std::invalid_argument("gemm: inner dimensions differ");
  Matrix c(m, n);
  const Complex one(1.0, 0.0), zero(0.0, 0.0);
  const int lda = static_cast<int>(a.rows());
  const int ldb = static_cast<int>(b.rows());
  zgemm_(&op_a, &op_b, &m, &n, &k, &one, a.data(), &lda, b.data(), &ldb, &zero,
         c.data(), &m);
  return c;
}

}  // namespace lindblad::detail
