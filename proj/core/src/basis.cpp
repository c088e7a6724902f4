#include "lindblad/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace lindblad {

HermitianBasis sun_basis(int n) {
  if (n < 2) throw std::invalid_argument("sun_basis: dimension must be >= 2");

  HermitianBasis basis;
  basis.dim_n = n;
  basis.matrices.reserve(static_cast<size_t>(n) * n - 1);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex i_unit(0.0, 1.0);

  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Matrix s = Matrix::Zero(n, n);
      s(j, k) = inv_sqrt2;
      s(k, j) = inv_sqrt2;
      basis.matrices.push_back(std::move(s));
    }

  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Matrix a = Matrix::Zero(n, n);
      a(j, k) = -i_unit * inv_sqrt2;
      a(k, j) = i_unit * inv_sqrt2;
      basis.matrices.push_back(std::move(a));
    }

  for (int l = 1; l <= n - 1; ++l) {
    Matrix d = Matrix::Zero(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int k = 0; k < l; ++k) d(k, k) = norm;
    d(l, l) = -static_cast<double>(l) * norm;
    basis.matrices.push_back(std::move(d));
  }

  return basis;
}

}  // namespace lindblad
