#include "lindblad/generator.hpp"

#include <cmath>
#include <stdexcept>

#include "lindblad/ensembles.hpp"
#include "linalg.hpp"

namespace lindblad {

namespace {

void check_jumps(const JumpSet& jumps, int n) {
  if (jumps.rates.size() != jumps.jumps.size())
    throw std::invalid_argument("jump set: rates/jumps size mismatch");
  for (const auto& v : jumps.jumps)
    if (v.rows() != n || v.cols() != n)
      throw std::invalid_argument("jump set: jump operator dimension mismatch");
}

void check_hamiltonian(double alpha, const Matrix* h, int n) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be non-negative");
  if (alpha == 0.0) return;
  if (!h) throw std::invalid_argument("alpha > 0 requires a Hamiltonian");
  if (h->rows() != n || h->cols() != n)
    throw std::invalid_argument("Hamiltonian dimension mismatch");
  const double trace_sq = h->squaredNorm();
  if (std::abs(trace_sq - 1.0 / n) > 1e-8)
    throw std::invalid_argument("Hamiltonian must satisfy Tr H^2 = 1/N");
}

/// target += c * (a (x) b), no temporaries.
void add_scaled_kron(Matrix& target, Complex c, const Matrix& a,
                     const Matrix& b) {
  const int ar = static_cast<int>(a.rows());
  const int br = static_cast<int>(b.rows());
  for (int i = 0; i < ar; ++i)
    for (int j = 0; j < ar; ++j) {
      const Complex caij = c * a(i, j);
      if (caij == Complex(0.0, 0.0)) continue;
      for (int k = 0; k < br; ++k)
        for (int l = 0; l < br; ++l)
          target(i * br + k, j * br + l) += caij * b(k, l);
    }
}

/// target -= (a (x) 1 + 1 (x) b), Kronecker sums applied in place.
void subtract_kron_sum(Matrix& target, const Matrix& a, const Matrix& b,
                       int n) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex aij = a(i, j);
      if (aij != Complex(0.0, 0.0))
        for (int k = 0; k < n; ++k) target(i * n + k, j * n + k) -= aij;
    }
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      const Complex bkl = b(k, l);
      if (bkl != Complex(0.0, 0.0))
        for (int i = 0; i < n; ++i) target(i * n + k, i * n + l) -= bkl;
    }
}

}  // namespace

Matrix kraus_superop(const JumpSet& jumps, int n) {
  check_jumps(jumps, n);
  const int nn = n * n;
  const int m = static_cast<int>(jumps.rates.size());
  if (m == 0) return Matrix::Zero(nn, nn);

  // Row a of P is the row-major flattening of sqrt(gamma_a) V_a. Then
  // conj(P^dag P)[(i,j),(k,l)] = sum_a gamma_a V_a(i,j) conj(V_a(k,l)),
  // which is the Kronecker sum re-indexed: one gemm instead of M
  // rank-one N^2 x N^2 updates.
  Matrix p(m, nn);
  for (int a = 0; a < m; ++a) {
    const double scale = std::sqrt(std::max(jumps.rates[static_cast<size_t>(a)], 0.0));
    const Matrix& v = jumps.jumps[static_cast<size_t>(a)];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(a, i * n + j) = scale * v(i, j);
  }
  Matrix z = detail::gemm('C', p, 'N', p);

  Matrix phi(nn, nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          phi(i * n + k, j * n + l) = std::conj(z(i * n + j, k * n + l));
  return phi;
}

Matrix translation_matrix(const JumpSet& jumps, int n) {
  check_jumps(jumps, n);
  Matrix x = Matrix::Zero(n, n);
  for (size_t a = 0; a < jumps.rates.size(); ++a)
    x.noalias() += jumps.rates[a] * (jumps.jumps[a].adjoint() * jumps.jumps[a]);
  x -= Matrix::Identity(n, n);
  return 0.5 * (x + x.adjoint()).eval();
}

LindbladSuperop build_superop_kron(const JumpSet& jumps, double alpha,
                                   const Matrix* hamiltonian, int n) {
  check_jumps(jumps, n);
  check_hamiltonian(alpha, hamiltonian, n);

  Matrix l = kraus_superop(jumps, n);
  l -= Matrix::Identity(n * n, n * n);

  const Matrix x = translation_matrix(jumps, n);
  Matrix left = 0.5 * x;
  Matrix right = 0.5 * x.conjugate();
  if (alpha > 0.0) {
    const Complex ia(0.0, alpha);
    left += ia * (*hamiltonian);
    right -= ia * hamiltonian->conjugate();
  }
  subtract_kron_sum(l, left, right, n);

  LindbladSuperop out;
  out.dim_n = n;
  out.alpha = alpha;
  out.matrix = std::move(l);
  return out;
}

LindbladSuperop build_superop_direct(const Matrix& kossakowski,
                                     const HermitianBasis& basis, double alpha,
                                     const Matrix* hamiltonian) {
  const int n = basis.dim_n;
  const int m = basis.size();
  if (kossakowski.rows() != m || kossakowski.cols() != m)
    throw std::invalid_argument("coefficient matrix dimension mismatch");
  check_hamiltonian(alpha, hamiltonian, n);

  const int nn = n * n;
  const Matrix identity = Matrix::Identity(n, n);
  Matrix l = Matrix::Zero(nn, nn);
  for (int row = 0; row < m; ++row)
    for (int col = 0; col < m; ++col) {
      const Complex c = kossakowski(row, col);
      if (c == Complex(0.0, 0.0)) continue;
      const Matrix& f_m = basis.matrices[static_cast<size_t>(row)];
      const Matrix& f_n = basis.matrices[static_cast<size_t>(col)];
      const Matrix a = f_m.adjoint() * f_n;
      add_scaled_kron(l, c, f_n, f_m.conjugate());
      add_scaled_kron(l, -0.5 * c, a, identity);
      add_scaled_kron(l, -0.5 * c, identity, a.transpose());
    }
  if (alpha > 0.0) {
    const Complex ia(0.0, alpha);
    add_scaled_kron(l, -ia, *hamiltonian, identity);
    add_scaled_kron(l, ia, identity, hamiltonian->conjugate());
  }

  LindbladSuperop out;
  out.dim_n = n;
  out.alpha = alpha;
  out.matrix = std::move(l);
  return out;
}

RmtSurrogate build_rmt_surrogate(int n, double alpha, RngStream& stream,
                                 SurrogateKind kind) {
  if (n < 2) throw std::invalid_argument("build_rmt_surrogate: n must be >= 2");
  if (alpha < 0.0) throw std::invalid_argument("alpha must be non-negative");
  const int nn = n * n;

  Matrix l = ginibre_real(nn, stream).cast<Complex>();
  const RealMatrix c = goe(n, 1.0, stream);

  if (kind == SurrogateKind::GoeScaled) {
    // G_R + alpha (C (x) 1 + 1 (x) C); deformation sign is immaterial.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double cij = alpha * c(i, j);
        for (int k = 0; k < n; ++k) l(i * n + k, j * n + k) += cij;
      }
    for (int k = 0; k < n; ++k)
      for (int l_idx = 0; l_idx < n; ++l_idx) {
        const double ckl = alpha * c(k, l_idx);
        for (int i = 0; i < n; ++i) l(i * n + k, i * n + l_idx) += ckl;
      }
  } else {
    const Matrix h = gue(n, static_cast<double>(n), stream);
    const Matrix w = c.cast<Complex>() + Complex(0.0, alpha) * h;
    const Matrix w_conj = w.conjugate();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Complex wij = w(i, j);
        for (int k = 0; k < n; ++k) l(i * n + k, j * n + k) -= wij;
      }
    for (int k = 0; k < n; ++k)
      for (int l_idx = 0; l_idx < n; ++l_idx) {
        const Complex wkl = w_conj(k, l_idx);
        for (int i = 0; i < n; ++i) l(i * n + k, i * n + l_idx) -= wkl;
      }
  }

  RmtSurrogate out;
  out.dim_n = n;
  out.alpha = alpha;
  out.kind = kind;
  out.matrix = std::move(l);
  return out;
}

std::pair<double, double> surrogate_ellipse_params(double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be non-negative");
  const double root = std::sqrt(1.0 + 4.0 * alpha * alpha);
  return {1.0 / root, 4.0 * alpha * alpha / root};
}

}  // namespace lindblad
