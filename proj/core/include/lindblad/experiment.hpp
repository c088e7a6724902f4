#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lindblad/boundary.hpp"
#include "lindblad/generator.hpp"
#include "lindblad/kossakowski.hpp"
#include "lindblad/spectra.hpp"

namespace lindblad {

struct HistogramSpec {
  double re_min = -2.5;
  double re_max = 2.5;
  double im_min = -2.5;
  double im_max = 2.5;
  int bins = 50;

  bool operator==(const HistogramSpec&) const = default;
};

/// Which analytic curve the run's containment statistic is measured
/// against. Auto picks the lemon for purely dissipative runs (alpha == 0)
/// and the traced two-semicircle boundary for GOE-scaled surrogates, and
/// falls back to none when no analytic curve applies.
enum class BoundaryChoice { Auto, Lemon, Gaussian, EllipseNumeric, None };

enum class RunKind { Sample, Surrogate };

struct ExperimentConfig {
  int n = 30;
  int realizations = 20;
  SamplerSpec sampler = SamplerSpec::wishart();
  double alpha = 0.0;
  std::uint64_t seed = 1;
  int workers = 0;  // 0 = available parallelism
  HistogramSpec hist;
  std::string out_dir;

  RunKind run_kind = RunKind::Sample;
  SurrogateKind surrogate_kind = SurrogateKind::General;

  BoundaryChoice boundary = BoundaryChoice::Auto;
  double inflation = 0.1;
  double real_axis_epsilon = 1e-6;

  bool operator==(const ExperimentConfig&) const = default;
};

/// JSON round trip. Unknown keys are rejected (fail-fast against typos).
std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// FNV-1a hash of the canonical JSON form, hex encoded.
std::string config_hash(const ExperimentConfig& config);

struct RealizationStatus {
  int index = 0;
  bool ok = false;
  double wall_ms = 0.0;
  std::string error;
};

struct ArtifactInfo {
  std::string path;  // relative to the run directory
  long rows = 0;
};

struct RunManifest {
  std::string hash;
  std::vector<RealizationStatus> realizations;
  std::vector<ArtifactInfo> artifacts;
};

struct RunStats {
  std::optional<double> gap_mean;  // absent for surrogate runs
  std::optional<double> gap_std;
  double real_axis_fraction = 0.0;
  std::optional<double> inside_fraction;
  long eigenvalues_total = 0;
  long bulk_total = 0;
  long out_of_range = 0;
  int realizations_ok = 0;
  int realizations_failed = 0;
};

struct RunResult {
  RunManifest manifest;
  RunStats stats;
  std::vector<SpectrumSample> samples;  // successful realizations, in order

  bool too_many_failures() const;  // > 10% of requested realizations
};

/// Runs the batch described by the config and writes
/// eigenvalues.csv, histogram.json, stats.json and manifest.json into
/// config.out_dir (created if needed). Sampling, diagonalization and
/// statistics are deterministic in (config, seed); the data artifacts are
/// byte-identical across reruns and worker counts. Realization r draws
/// from RngStream(seed, r).
RunResult run_batch(const ExperimentConfig& config);

/// The analytic curve implied by the config, if any.
std::optional<BoundaryCurve> resolve_boundary(const ExperimentConfig& config,
                                              int resolution = 512);

void write_boundary_csv(const std::string& path, const BoundaryCurve& curve);
BoundaryCurve read_boundary_csv(const std::string& path);

/// Reloads the spectra a previous run wrote into out_dir.
std::vector<SpectrumSample> read_eigenvalue_csv(const std::string& path,
                                                int n, SpectrumKind kind);

struct LoadedRun {
  ExperimentConfig config;
  std::vector<SpectrumSample> samples;
  DensityHistogram histogram;
};
LoadedRun load_run(const std::string& run_dir);

struct CompareReport {
  double l1_hist2d = 0.0;
  double l1_re_marginal = 0.0;
  double l1_im_marginal = 0.0;
  double threshold = 0.08;
  bool pass = false;
};

/// L1 distances between two runs' normalized histograms (grids must
/// match) and between the marginals obtained by summing them out.
CompareReport compare_runs(const std::string& run_dir_a,
                           const std::string& run_dir_b, double threshold);

std::string compare_report_to_json(const CompareReport& report);

/// Stats recomputed from a run directory, optionally against an explicit
/// boundary curve file.
RunStats recompute_stats(const std::string& run_dir,
                         const std::optional<std::string>& boundary_csv,
                         double inflation, double epsilon);

std::string stats_to_json(const RunStats& stats);

/// Worker-count resolution: LINDBLAD_SPECTRA_WORKERS overrides the
/// requested value; 0 means hardware concurrency.
int resolve_workers(int requested);

}  // namespace lindblad
