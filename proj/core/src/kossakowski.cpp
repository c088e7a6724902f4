#include "lindblad/kossakowski.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lindblad/ensembles.hpp"
#include "linalg.hpp"

namespace lindblad {

SamplerSpec SamplerSpec::composite(int k, int s) {
  if (k < 1 || s < 0)
    throw std::invalid_argument("composite sampler requires k >= 1, s >= 0");
  SamplerSpec spec;
  spec.kind = Kind::Composite;
  spec.unitary_terms = k;
  spec.ginibre_factors = s;
  return spec;
}

SamplerSpec SamplerSpec::svd_core() {
  SamplerSpec spec;
  spec.kind = Kind::SvdCore;
  spec.unitary_terms = 0;
  spec.ginibre_factors = 0;
  return spec;
}

std::string SamplerSpec::label() const {
  if (kind == Kind::SvdCore) return "svd";
  return "composite:" + std::to_string(unitary_terms) + "," +
         std::to_string(ginibre_factors);
}

SamplerSpec SamplerSpec::parse(const std::string& text) {
  if (text == "wishart") return wishart();
  if (text == "svd" || text == "svd_core") return svd_core();
  const std::string prefix = "composite:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string args = text.substr(prefix.size());
    const auto comma = args.find(',');
    if (comma != std::string::npos) {
      try {
        size_t used_k = 0, used_s = 0;
        const int k = std::stoi(args.substr(0, comma), &used_k);
        const int s = std::stoi(args.substr(comma + 1), &used_s);
        if (used_k == comma && comma + 1 + used_s == args.size())
          return composite(k, s);
      } catch (const std::exception&) {
      }
    }
  }
  throw std::invalid_argument("unknown sampler '" + text +
                              "' (expected wishart, composite:k,s or svd)");
}

KossakowskiMatrix sample_kossakowski(int n, const SamplerSpec& spec,
                                     RngStream& stream) {
  if (n < 2) throw std::invalid_argument("sample_kossakowski: n must be >= 2");
  const int m = n * n - 1;

  Matrix k_matrix;
  for (;;) {
    if (spec.kind == SamplerSpec::Kind::Composite) {
      if (spec.unitary_terms < 1 || spec.ginibre_factors < 0)
        throw std::invalid_argument("invalid composite sampler parameters");
      const auto p = random_prob_vector(spec.unitary_terms, stream);
      Matrix s_mat = Matrix::Zero(m, m);
      for (int i = 0; i < spec.unitary_terms; ++i)
        s_mat += p[static_cast<size_t>(i)] * haar_unitary(m, stream);
      for (int j = 0; j < spec.ginibre_factors; ++j)
        s_mat = detail::gemm(s_mat, ginibre_complex(m, stream));
      Matrix gram = detail::gemm('N', s_mat, 'C', s_mat);
      const double trace = gram.trace().real();
      if (!(trace > 1e-300)) continue;  // probability zero
      k_matrix = (static_cast<double>(n) / trace) * gram;
    } else {
      // K = N U D U^dag / Tr D with D the singular-value core of a
      // complex Ginibre sample and U Haar.
      const Matrix g = ginibre_complex(m, stream);
      const auto d = detail::singular_values(g);
      const double trace = std::accumulate(d.begin(), d.end(), 0.0);
      if (!(trace > 1e-300)) continue;
      const Matrix u = haar_unitary(m, stream);
      Matrix scaled = u;
      for (int j = 0; j < m; ++j)
        scaled.col(j) *= d[static_cast<size_t>(j)] * (n / trace);
      k_matrix = detail::gemm('N', scaled, 'C', u);
    }
    break;
  }

  // Exact Hermitization; the constructions above are Hermitian only up to
  // the roundoff of the matrix products.
  k_matrix = 0.5 * (k_matrix + k_matrix.adjoint()).eval();

  KossakowskiMatrix result;
  result.dim_n = n;
  result.entries = std::move(k_matrix);
  result.source = spec;
  return result;
}

JumpSet jump_decomposition(const KossakowskiMatrix& k_matrix,
                           const HermitianBasis& basis) {
  const int n = basis.dim_n;
  const int m = n * n - 1;
  if (k_matrix.dim_n != n || k_matrix.entries.rows() != m ||
      k_matrix.entries.cols() != m || basis.size() != m)
    throw std::invalid_argument("jump_decomposition: dimension mismatch");
  const double herm_err =
      (k_matrix.entries - k_matrix.entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > 1e-10)
    throw std::invalid_argument("jump_decomposition: input is not Hermitian");

  RealVector rates_raw;
  Matrix vectors;
  detail::eig_hermitian(k_matrix.entries, rates_raw, &vectors);

  // Nonzero patterns of the basis elements; each has O(N) entries, so the
  // jump operators assemble in O(M * N^2) instead of O(M^2 N^2).
  struct Entry {
    int row, col;
    Complex value;
  };
  std::vector<std::vector<Entry>> pattern(static_cast<size_t>(m));
  for (int b = 0; b < m; ++b) {
    const Matrix& f = basis.matrices[static_cast<size_t>(b)];
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r)
        if (f(r, c) != Complex(0.0, 0.0))
          pattern[static_cast<size_t>(b)].push_back({r, c, f(r, c)});
  }

  JumpSet jumps;
  jumps.rates.resize(static_cast<size_t>(m));
  jumps.jumps.resize(static_cast<size_t>(m));
  for (int a = 0; a < m; ++a) {
    double rate = rates_raw(a);
    if (rate < -1e-10)
      throw std::invalid_argument(
          "jump_decomposition: matrix is not positive semi-definite");
    jumps.rates[static_cast<size_t>(a)] = rate < 0.0 ? 0.0 : rate;

    Matrix v = Matrix::Zero(n, n);
    for (int b = 0; b < m; ++b) {
      const Complex coeff = std::conj(vectors(b, a));
      if (coeff == Complex(0.0, 0.0)) continue;
      for (const auto& e : pattern[static_cast<size_t>(b)])
        v(e.row, e.col) += coeff * e.value;
    }
    jumps.jumps[static_cast<size_t>(a)] = std::move(v);
  }
  return jumps;
}

}  // namespace lindblad
