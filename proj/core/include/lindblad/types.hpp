#pragma once

#include <complex>
#include <Eigen/Dense>

namespace lindblad {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Kronecker product a ⊗ b, dense.
Matrix kron(const Matrix& a, const Matrix& b);

/// Row-major flattening: vec(m)[i*cols + j] = m(i, j).
/// With this convention vec(A rho B) = (A ⊗ B^T) vec(rho).
Vector vec_row_major(const Matrix& m);

}  // namespace lindblad
