#include "lindblad/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "linalg.hpp"

namespace lindblad {

std::vector<Complex> eig(const Matrix& matrix) {
  if (!matrix.allFinite()) throw std::invalid_argument("eig: non-finite entries");
  return detail::eig_nonsym(matrix);
}

SpectrumSample make_lindblad_sample(int n, std::vector<Complex> raw,
                                    int realization_id,
                                    std::string provenance) {
  SpectrumSample s;
  s.dim_n = n;
  s.kind = SpectrumKind::Lindbladian;
  s.realization_id = realization_id;
  s.provenance = std::move(provenance);
  s.rescaled.reserve(raw.size());
  for (const auto& v : raw) s.rescaled.push_back(static_cast<double>(n) * (v + 1.0));
  s.raw = std::move(raw);
  return s;
}

SpectrumSample make_surrogate_sample(int n, std::vector<Complex> eigenvalues,
                                     int realization_id,
                                     std::string provenance) {
  SpectrumSample s;
  s.dim_n = n;
  s.kind = SpectrumKind::Surrogate;
  s.realization_id = realization_id;
  s.provenance = std::move(provenance);
  s.rescaled = eigenvalues;  // surrogates live in rescaled coordinates
  s.raw = std::move(eigenvalues);
  return s;
}

SpectrumSample bulk(const SpectrumSample& sample) {
  if (sample.kind == SpectrumKind::Surrogate) return sample;
  if (sample.raw.empty()) throw std::runtime_error("bulk: empty spectrum");
  size_t zero_idx = 0;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < sample.raw.size(); ++i) {
    const double mod = std::abs(sample.raw[i]);
    if (mod < best) {
      best = mod;
      zero_idx = i;
    }
  }
  if (best > 1e-6)
    throw std::runtime_error(
        "bulk: no stationary eigenvalue within 1e-6 of zero");
  SpectrumSample out = sample;
  out.raw.erase(out.raw.begin() + static_cast<std::ptrdiff_t>(zero_idx));
  out.rescaled.erase(out.rescaled.begin() + static_cast<std::ptrdiff_t>(zero_idx));
  return out;
}

double spectral_gap(const SpectrumSample& sample) {
  const SpectrumSample b = bulk(sample);
  double max_re = -std::numeric_limits<double>::infinity();
  for (const auto& v : b.raw) max_re = std::max(max_re, v.real());
  return -max_re;
}

namespace {

std::vector<double> make_edges(double lo, double hi, int bins) {
  std::vector<double> edges(static_cast<size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i)
    edges[static_cast<size_t>(i)] = lo + (hi - lo) * i / bins;
  return edges;
}

// Bin index for x in [lo, hi) on a uniform grid, -1 if out of range.
int bin_index(double x, double lo, double hi, int bins) {
  if (!(x >= lo && x < hi)) return -1;
  int idx = static_cast<int>((x - lo) / (hi - lo) * bins);
  return std::min(idx, bins - 1);
}

void check_ranges(double lo, double hi, int bins) {
  if (bins < 1) throw std::invalid_argument("histogram needs bins >= 1");
  if (!(lo < hi)) throw std::invalid_argument("histogram range must increase");
}

}  // namespace

DensityHistogram histogram2d(const std::vector<SpectrumSample>& samples,
                             double re_min, double re_max, double im_min,
                             double im_max, int bins_re, int bins_im) {
  check_ranges(re_min, re_max, bins_re);
  check_ranges(im_min, im_max, bins_im);
  DensityHistogram h;
  h.re_edges = make_edges(re_min, re_max, bins_re);
  h.im_edges = make_edges(im_min, im_max, bins_im);
  h.counts.assign(static_cast<size_t>(bins_re),
                  std::vector<long>(static_cast<size_t>(bins_im), 0));
  for (const auto& sample : samples) {
    const SpectrumSample b = bulk(sample);
    for (const auto& v : b.rescaled) {
      ++h.total;
      const int ri = bin_index(v.real(), re_min, re_max, bins_re);
      const int ii = bin_index(v.imag(), im_min, im_max, bins_im);
      if (ri < 0 || ii < 0) {
        ++h.out_of_range;
        continue;
      }
      ++h.counts[static_cast<size_t>(ri)][static_cast<size_t>(ii)];
    }
  }
  return h;
}

double l1_distance(const DensityHistogram& a, const DensityHistogram& b) {
  if (a.re_edges != b.re_edges || a.im_edges != b.im_edges)
    throw std::invalid_argument("l1_distance: histogram grids differ");
  if (a.binned() == 0 || b.binned() == 0)
    throw std::invalid_argument("l1_distance: empty histogram");
  const double na = static_cast<double>(a.binned());
  const double nb = static_cast<double>(b.binned());
  double l1 = 0.0;
  for (size_t i = 0; i < a.counts.size(); ++i)
    for (size_t j = 0; j < a.counts[i].size(); ++j)
      l1 += std::abs(a.counts[i][j] / na - b.counts[i][j] / nb);
  return l1;
}

Histogram1D marginal(const std::vector<SpectrumSample>& samples, Axis axis,
                     int bins, double lo, double hi) {
  check_ranges(lo, hi, bins);
  Histogram1D h;
  h.edges = make_edges(lo, hi, bins);
  h.counts.assign(static_cast<size_t>(bins), 0);
  for (const auto& sample : samples) {
    const SpectrumSample b = bulk(sample);
    for (const auto& v : b.rescaled) {
      ++h.total;
      const double x = axis == Axis::Re ? v.real() : v.imag();
      const int i = bin_index(x, lo, hi, bins);
      if (i < 0)
        ++h.out_of_range;
      else
        ++h.counts[static_cast<size_t>(i)];
    }
  }
  return h;
}

Histogram1D slice(const std::vector<SpectrumSample>& samples, double delta,
                  int bins, double lo, double hi) {
  if (!(delta > 0.0)) throw std::invalid_argument("slice: delta must be positive");
  check_ranges(lo, hi, bins);
  Histogram1D h;
  h.edges = make_edges(lo, hi, bins);
  h.counts.assign(static_cast<size_t>(bins), 0);
  for (const auto& sample : samples) {
    const SpectrumSample b = bulk(sample);
    for (const auto& v : b.rescaled) {
      if (std::abs(v.real()) >= delta) continue;
      ++h.total;
      const int i = bin_index(v.imag(), lo, hi, bins);
      if (i < 0)
        ++h.out_of_range;
      else
        ++h.counts[static_cast<size_t>(i)];
    }
  }
  return h;
}

double l1_distance(const Histogram1D& a, const Histogram1D& b) {
  if (a.edges != b.edges)
    throw std::invalid_argument("l1_distance: histogram grids differ");
  const long na_binned = a.total - a.out_of_range;
  const long nb_binned = b.total - b.out_of_range;
  if (na_binned == 0 || nb_binned == 0)
    throw std::invalid_argument("l1_distance: empty histogram");
  double l1 = 0.0;
  for (size_t i = 0; i < a.counts.size(); ++i)
    l1 += std::abs(a.counts[i] / static_cast<double>(na_binned) -
                   b.counts[i] / static_cast<double>(nb_binned));
  return l1;
}

double real_axis_fraction(const std::vector<SpectrumSample>& samples,
                          double epsilon) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("real_axis_fraction: epsilon must be positive");
  long close = 0, total = 0;
  for (const auto& sample : samples) {
    const SpectrumSample b = bulk(sample);
    for (const auto& v : b.rescaled) {
      ++total;
      if (std::abs(v.imag()) < epsilon) ++close;
    }
  }
  if (total == 0) return 0.0;
  return static_cast<double>(close) / static_cast<double>(total);
}

double inside_fraction(const std::vector<SpectrumSample>& samples,
                       const BoundaryCurve& curve, double inflation) {
  if (!curve.closed()) throw std::invalid_argument("inside_fraction: open curve");
  if (inflation < 0.0)
    throw std::invalid_argument("inside_fraction: inflation must be >= 0");
  const BoundaryCurve dilated = inflation > 0.0 ? inflate(curve, inflation) : curve;
  long inside = 0, total = 0;
  for (const auto& sample : samples) {
    const SpectrumSample b = bulk(sample);
    for (const auto& v : b.rescaled) {
      ++total;
      if (point_in_polygon(v, dilated.points)) ++inside;
    }
  }
  if (total == 0) return 0.0;
  return static_cast<double>(inside) / static_cast<double>(total);
}

std::vector<Complex> collect_rescaled_bulk(
    const std::vector<SpectrumSample>& samples) {
  std::vector<Complex> points;
  for (const auto& sample : samples) {
    const SpectrumSample b = bulk(sample);
    points.insert(points.end(), b.rescaled.begin(), b.rescaled.end());
  }
  return points;
}

BoundaryCurve empirical_boundary(const std::vector<SpectrumSample>& samples) {
  std::vector<Complex> points = collect_rescaled_bulk(samples);
  if (points.size() < 100)
    throw std::invalid_argument("empirical_boundary: need at least 100 points");
  BoundaryCurve curve;
  curve.kind = CurveKind::Empirical;
  curve.points = convex_hull(std::move(points));
  return curve;
}

}  // namespace lindblad
