#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lindblad/geometry.hpp"
#include "lindblad/types.hpp"

namespace lindblad {

/// Thrown when the dense nonsymmetric eigensolver fails to converge.
/// Batch drivers record the realization as failed and continue.
struct EigFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// All eigenvalues of a dense complex square matrix, unordered.
std::vector<Complex> eig(const Matrix& matrix);

enum class SpectrumKind { Lindbladian, Surrogate };

/// One realization's spectrum, raw and in rescaled coordinates
/// l' = N (l + 1). Surrogate models already live in rescaled coordinates,
/// so for them rescaled == raw and there is no stationary eigenvalue.
struct SpectrumSample {
  int dim_n = 0;
  SpectrumKind kind = SpectrumKind::Lindbladian;
  int realization_id = 0;
  std::string provenance;
  std::vector<Complex> raw;
  std::vector<Complex> rescaled;
};

SpectrumSample make_lindblad_sample(int n, std::vector<Complex> raw,
                                    int realization_id = 0,
                                    std::string provenance = {});
SpectrumSample make_surrogate_sample(int n, std::vector<Complex> eigenvalues,
                                     int realization_id = 0,
                                     std::string provenance = {});

/// Removes the structural stationary eigenvalue (the raw eigenvalue
/// closest to 0) from a Lindbladian sample; throws std::runtime_error if
/// that eigenvalue exceeds 1e-6 in modulus. No-op for surrogates.
SpectrumSample bulk(const SpectrumSample& sample);

/// Relaxation gap: -max Re over the bulk raw eigenvalues.
double spectral_gap(const SpectrumSample& sample);

struct DensityHistogram {
  std::vector<double> re_edges;  // bins_re + 1, strictly increasing
  std::vector<double> im_edges;
  std::vector<std::vector<long>> counts;  // [re bin][im bin]
  long total = 0;         // all bulk eigenvalues seen, binned or not
  long out_of_range = 0;  // tallied, never silently dropped

  long binned() const { return total - out_of_range; }
};

/// 2-D histogram of rescaled bulk eigenvalues.
DensityHistogram histogram2d(const std::vector<SpectrumSample>& samples,
                             double re_min, double re_max, double im_min,
                             double im_max, int bins_re, int bins_im);

/// L1 distance between histograms normalized to unit mass over the grid.
/// Both histograms must share edges.
double l1_distance(const DensityHistogram& a, const DensityHistogram& b);

enum class Axis { Re, Im };

struct Histogram1D {
  std::vector<double> edges;
  std::vector<long> counts;
  long total = 0;
  long out_of_range = 0;
};

/// Projection of the rescaled bulk onto one axis.
Histogram1D marginal(const std::vector<SpectrumSample>& samples, Axis axis,
                     int bins, double lo, double hi);

/// Im-histogram of the thin strip |Re l'| < delta.
Histogram1D slice(const std::vector<SpectrumSample>& samples, double delta,
                  int bins, double lo, double hi);

double l1_distance(const Histogram1D& a, const Histogram1D& b);

/// Fraction of rescaled bulk eigenvalues with |Im l'| < epsilon.
double real_axis_fraction(const std::vector<SpectrumSample>& samples,
                          double epsilon);

/// Fraction of rescaled bulk eigenvalues strictly inside the curve
/// dilated outward by `inflation`.
double inside_fraction(const std::vector<SpectrumSample>& samples,
                       const BoundaryCurve& curve, double inflation);

/// Rescaled bulk eigenvalues of all samples, realization order.
std::vector<Complex> collect_rescaled_bulk(
    const std::vector<SpectrumSample>& samples);

/// Convex hull of the rescaled bulk as a closed curve. Requires at least
/// 100 points.
BoundaryCurve empirical_boundary(const std::vector<SpectrumSample>& samples);

}  // namespace lindblad
