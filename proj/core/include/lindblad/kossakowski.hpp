#pragma once

#include <string>
#include <vector>

#include "lindblad/basis.hpp"
#include "lindblad/rng.hpp"
#include "lindblad/types.hpp"

namespace lindblad {

/// Recipe for sampling a random Kossakowski matrix.
///
/// Composite(k, s) draws S = [p_1 U_1 + ... + p_k U_k] G_1 ... G_s with
/// U_i Haar unitaries, G_j complex Ginibre factors and p a random
/// probability vector, and returns K = N S S^dag / Tr S S^dag.
/// k = s = 1 is the Wishart baseline; k = 1, s > 1 gives the Fuss-Catalan
/// family; k = 2, s = 0 arcsine; k = 2, s = 1 Bures.
///
/// SvdCore returns K = N U D U^dag / Tr D where D carries the singular
/// values of a complex Ginibre sample and U is Haar.
struct SamplerSpec {
  enum class Kind { Composite, SvdCore };

  Kind kind = Kind::Composite;
  int unitary_terms = 1;    // k, >= 1
  int ginibre_factors = 1;  // s, >= 0

  static SamplerSpec composite(int k, int s);
  static SamplerSpec svd_core();
  static SamplerSpec wishart() { return composite(1, 1); }

  /// "composite:1,1", "svd". Round-trips through parse().
  std::string label() const;
  /// Accepts labels plus the aliases "wishart" and "composite:k,s".
  /// Throws std::invalid_argument on anything else.
  static SamplerSpec parse(const std::string& text);

  bool operator==(const SamplerSpec&) const = default;
};

/// Positive semi-definite (N^2-1) x (N^2-1) Hermitian matrix with
/// Tr K = N.
struct KossakowskiMatrix {
  int dim_n = 0;  // N; entries is (N^2-1) x (N^2-1)
  Matrix entries;
  SamplerSpec source;
};

/// Throws std::invalid_argument for n < 2.
KossakowskiMatrix sample_kossakowski(int n, const SamplerSpec& spec,
                                     RngStream& stream);

/// Eigendecomposition of K expressed in operator form: rates are the
/// eigenvalues of K (ascending, tiny negative roundoff clamped to zero)
/// and jumps[a] = sum_n conj(U_na) F_n for the eigenvector columns U.
/// The jumps are traceless and orthonormal, and sum(rates) = Tr K.
struct JumpSet {
  std::vector<double> rates;
  std::vector<Matrix> jumps;  // each N x N
};

/// Throws std::invalid_argument on dimension mismatch, non-Hermitian
/// input, or eigenvalues below -1e-10 (not positive semi-definite).
JumpSet jump_decomposition(const KossakowskiMatrix& k_matrix,
                           const HermitianBasis& basis);

}  // namespace lindblad
