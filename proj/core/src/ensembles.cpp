#include "lindblad/ensembles.hpp"

#include <cmath>
#include <stdexcept>

#include "linalg.hpp"

namespace lindblad {

namespace {

void check_dim(int n) {
  if (n < 1) throw std::invalid_argument("ensemble dimension must be >= 1");
}

}  // namespace

Matrix ginibre_complex(int n, RngStream& stream) {
  check_dim(n);
  const double sigma = 1.0 / std::sqrt(2.0 * n);
  Matrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      g(i, j) = Complex(sigma * stream.gaussian(), sigma * stream.gaussian());
  return g;
}

RealMatrix ginibre_real(int n, RngStream& stream) {
  check_dim(n);
  const double sigma = 1.0 / std::sqrt(static_cast<double>(n));
  RealMatrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = sigma * stream.gaussian();
  return g;
}

RealMatrix goe(int n, double radius, RngStream& stream) {
  check_dim(n);
  if (radius <= 0.0) throw std::invalid_argument("goe: radius must be positive");
  // H = beta (A + A^T) with beta^2 = radius^2/(8n) gives the required
  // off-diagonal variance radius^2/(4n) and diagonal radius^2/(2n).
  const double beta = radius / std::sqrt(8.0 * n);
  RealMatrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = stream.gaussian();
  return beta * (a + a.transpose());
}

Matrix gue(int n, double target_trace_sq, RngStream& stream) {
  check_dim(n);
  if (target_trace_sq <= 0.0)
    throw std::invalid_argument("gue: target trace must be positive");
  for (;;) {
    Matrix a(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        a(i, j) = Complex(stream.gaussian(), stream.gaussian());
    Matrix h = 0.5 * (a + a.adjoint());
    const double trace_sq = h.squaredNorm();  // Tr H^2 for Hermitian H
    if (trace_sq <= 0.0) continue;            // probability zero
    h *= std::sqrt(target_trace_sq / trace_sq);
    return h;
  }
}

Matrix haar_unitary(int n, RngStream& stream) {
  check_dim(n);
  for (;;) {
    Matrix g = ginibre_complex(n, stream);
    Matrix q;
    Vector r_diag;
    detail::qr_unitary(g, q, r_diag);
    bool degenerate = false;
    for (int j = 0; j < n; ++j) {
      const double mag = std::abs(r_diag(j));
      if (mag < 1e-300) {
        degenerate = true;  // probability zero
        break;
      }
      // Plain QR is not Haar: fix each column by the phase of the
      // matching diagonal entry of R.
      q.col(j) *= r_diag(j) / mag;
    }
    if (!degenerate) return q;
  }
}

std::vector<double> random_prob_vector(int k, RngStream& stream) {
  if (k < 1) throw std::invalid_argument("random_prob_vector: k must be >= 1");
  std::vector<double> p(static_cast<size_t>(k));
  double sum = 0.0;
  for (auto& x : p) {
    x = -std::log(1.0 - stream.uniform());
    sum += x;
  }
  for (auto& x : p) x /= sum;
  return p;
}

}  // namespace lindblad
