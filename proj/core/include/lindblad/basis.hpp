#pragma once

#include <vector>

#include "lindblad/types.hpp"

namespace lindblad {

/// Orthonormal traceless Hermitian basis {F_a} of su(N), a = 0..N^2-2,
/// normalized so Tr(F_a F_b) = delta_ab.
///
/// Ordering is fixed for reproducibility: first the N(N-1)/2 symmetric
/// elements S_jk = (|j><k| + |k><j|)/sqrt(2) in lexicographic (j,k),
/// then the antisymmetric J_jk = -i(|j><k| - |k><j|)/sqrt(2), then the
/// N-1 diagonal D_l = (sum_{k<=l} |k><k| - l |l+1><l+1|)/sqrt(l(l+1)).
/// For N = 2 these are the Pauli matrices over sqrt(2); for N = 3 the
/// Gell-Mann matrices over sqrt(2).
struct HermitianBasis {
  int dim_n = 0;                 // N
  std::vector<Matrix> matrices;  // N^2 - 1 elements, each N x N

  int size() const { return static_cast<int>(matrices.size()); }
};

/// Throws std::invalid_argument for n < 2.
HermitianBasis sun_basis(int n);

}  // namespace lindblad
