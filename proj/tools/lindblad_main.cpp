// Command line front end: batch spectrum sampling, surrogate models,
// analytic boundary curves, run comparison and statistics.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lindblad/experiment.hpp"

namespace {

using lindblad::BoundaryChoice;
using lindblad::ExperimentConfig;
using lindblad::RunKind;
using lindblad::SamplerSpec;
using lindblad::SurrogateKind;

struct BatchCli {
  std::string config_path;
  std::string sampler = "wishart";
  std::string boundary = "auto";
  std::string model = "general";
  ExperimentConfig config;
};

void add_batch_options(CLI::App* cmd, BatchCli& cli, bool surrogate) {
  cmd->add_option("--config", cli.config_path, "JSON config file");
  cmd->add_option("--n", cli.config.n, "Hilbert space dimension N");
  cmd->add_option("--realizations", cli.config.realizations,
                  "number of independent realizations");
  cmd->add_option("--seed", cli.config.seed, "master seed");
  cmd->add_option("--alpha", cli.config.alpha, "unitary component weight");
  if (!surrogate)
    cmd->add_option("--sampler", cli.sampler,
                    "wishart | composite:k,s | svd");
  else
    cmd->add_option("--model", cli.model, "general | goe");
  cmd->add_option("--workers", cli.config.workers,
                  "worker threads (0 = all cores; env "
                  "LINDBLAD_SPECTRA_WORKERS overrides)");
  cmd->add_option("--out", cli.config.out_dir, "output directory");
  cmd->add_option("--boundary", cli.boundary,
                  "containment curve: auto | lemon | gaussian | "
                  "ellipse_numeric | none");
  cmd->add_option("--inflation", cli.config.inflation,
                  "outward dilation for the containment test");
  cmd->add_option("--epsilon", cli.config.real_axis_epsilon,
                  "|Im| threshold for the real-axis fraction");
  cmd->add_option("--bins", cli.config.hist.bins, "histogram bins per axis");
  cmd->add_option("--re-min", cli.config.hist.re_min, "histogram window");
  cmd->add_option("--re-max", cli.config.hist.re_max, "histogram window");
  cmd->add_option("--im-min", cli.config.hist.im_min, "histogram window");
  cmd->add_option("--im-max", cli.config.hist.im_max, "histogram window");
}

BoundaryChoice parse_boundary_flag(const std::string& text) {
  if (text == "auto") return BoundaryChoice::Auto;
  if (text == "lemon") return BoundaryChoice::Lemon;
  if (text == "gaussian") return BoundaryChoice::Gaussian;
  if (text == "ellipse_numeric") return BoundaryChoice::EllipseNumeric;
  if (text == "none") return BoundaryChoice::None;
  throw CLI::ValidationError("--boundary", "unknown boundary '" + text + "'");
}

ExperimentConfig assemble_config(const CLI::App* cmd, const BatchCli& cli,
                                 bool surrogate) {
  ExperimentConfig config;
  if (!cli.config_path.empty()) config = lindblad::load_config(cli.config_path);

  auto given = [cmd](const std::string& name) {
    return cmd->count(name) > 0;
  };
  if (given("--n")) config.n = cli.config.n;
  if (given("--realizations")) config.realizations = cli.config.realizations;
  if (given("--seed")) config.seed = cli.config.seed;
  if (given("--alpha")) config.alpha = cli.config.alpha;
  if (!surrogate && given("--sampler"))
    config.sampler = SamplerSpec::parse(cli.sampler);
  if (surrogate && given("--model"))
    config.surrogate_kind = cli.model == "goe" ? SurrogateKind::GoeScaled
                                               : SurrogateKind::General;
  if (given("--workers")) config.workers = cli.config.workers;
  if (given("--out")) config.out_dir = cli.config.out_dir;
  if (given("--boundary")) config.boundary = parse_boundary_flag(cli.boundary);
  if (given("--inflation")) config.inflation = cli.config.inflation;
  if (given("--epsilon")) config.real_axis_epsilon = cli.config.real_axis_epsilon;
  if (given("--bins")) config.hist.bins = cli.config.hist.bins;
  if (given("--re-min")) config.hist.re_min = cli.config.hist.re_min;
  if (given("--re-max")) config.hist.re_max = cli.config.hist.re_max;
  if (given("--im-min")) config.hist.im_min = cli.config.hist.im_min;
  if (given("--im-max")) config.hist.im_max = cli.config.hist.im_max;
  config.run_kind = surrogate ? RunKind::Surrogate : RunKind::Sample;
  return config;
}

int run_batch_command(const ExperimentConfig& config) {
  if (config.out_dir.empty()) {
    std::fprintf(stderr, "error: --out is required\n");
    return 2;
  }
  const lindblad::RunResult result = lindblad::run_batch(config);
  std::printf("%s", lindblad::stats_to_json(result.stats).c_str());
  for (const auto& r : result.manifest.realizations)
    if (!r.ok)
      std::fprintf(stderr, "realization %d failed: %s\n", r.index,
                   r.error.c_str());
  return result.too_many_failures() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random Lindblad generator spectra toolkit"};
  app.require_subcommand(1);

  BatchCli sample_cli, rmt_cli;
  CLI::App* sample = app.add_subcommand(
      "sample", "sample random Lindblad generators and their spectra");
  add_batch_options(sample, sample_cli, false);
  CLI::App* rmt = app.add_subcommand(
      "rmt", "sample the random matrix surrogate model spectra");
  add_batch_options(rmt, rmt_cli, true);

  std::string boundary_kind = "lemon", boundary_out = "boundary.csv";
  double boundary_alpha = 1.0;
  int boundary_resolution = 512, boundary_mc_points = 100000;
  CLI::App* boundary =
      app.add_subcommand("boundary", "emit an analytic spectral boundary curve");
  boundary->add_option("--kind", boundary_kind,
                       "lemon | gaussian | ellipse_numeric");
  boundary->add_option("--alpha", boundary_alpha, "deformation weight");
  boundary->add_option("--resolution", boundary_resolution, "minimum points");
  boundary->add_option("--mc-points", boundary_mc_points,
                       "Monte Carlo points (ellipse_numeric)");
  boundary->add_option("--out", boundary_out, "output CSV path");

  std::string compare_a, compare_b, compare_out;
  double compare_threshold = 0.08;
  CLI::App* compare =
      app.add_subcommand("compare", "L1 distances between two run histograms");
  compare->add_option("--a", compare_a, "first run directory")->required();
  compare->add_option("--b", compare_b, "second run directory")->required();
  compare->add_option("--threshold", compare_threshold, "pass threshold");
  compare->add_option("--out", compare_out, "report path (default stdout)");

  std::string stats_run, stats_boundary, stats_out;
  double stats_inflation = 0.1, stats_epsilon = 1e-6;
  CLI::App* stats =
      app.add_subcommand("stats", "recompute statistics for a run directory");
  stats->add_option("--run", stats_run, "run directory")->required();
  stats->add_option("--boundary-file", stats_boundary,
                    "boundary CSV for the containment statistic");
  stats->add_option("--inflation", stats_inflation, "containment dilation");
  stats->add_option("--epsilon", stats_epsilon,
                    "|Im| threshold for the real-axis fraction");
  stats->add_option("--out", stats_out, "stats path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sample->parsed())
      return run_batch_command(assemble_config(sample, sample_cli, false));
    if (rmt->parsed())
      return run_batch_command(assemble_config(rmt, rmt_cli, true));
    if (boundary->parsed()) {
      lindblad::BoundaryCurve curve;
      if (boundary_kind == "lemon")
        curve = lindblad::boundary_curve(lindblad::StieltjesKind::TwoSemicircles,
                                         boundary_alpha, boundary_resolution);
      else if (boundary_kind == "gaussian")
        curve = lindblad::boundary_curve(lindblad::StieltjesKind::Gaussian,
                                         boundary_alpha, boundary_resolution);
      else if (boundary_kind == "ellipse_numeric")
        curve = lindblad::ellipse_sum_boundary_numeric(
            boundary_alpha, boundary_mc_points, boundary_resolution);
      else {
        std::fprintf(stderr, "error: unknown boundary kind '%s'\n",
                     boundary_kind.c_str());
        return 2;
      }
      lindblad::write_boundary_csv(boundary_out, curve);
      std::printf("wrote %zu points to %s\n", curve.points.size(),
                  boundary_out.c_str());
      return 0;
    }
    if (compare->parsed()) {
      const lindblad::CompareReport report =
          lindblad::compare_runs(compare_a, compare_b, compare_threshold);
      const std::string text = lindblad::compare_report_to_json(report);
      if (compare_out.empty())
        std::printf("%s", text.c_str());
      else {
        std::FILE* f = std::fopen(compare_out.c_str(), "wb");
        if (!f) throw std::runtime_error("cannot write " + compare_out);
        std::fwrite(text.data(), 1, text.size(), f);
        std::fclose(f);
      }
      return report.pass ? 0 : 1;
    }
    if (stats->parsed()) {
      const auto boundary_file =
          stats_boundary.empty() ? std::nullopt
                                 : std::optional<std::string>(stats_boundary);
      const lindblad::RunStats result = lindblad::recompute_stats(
          stats_run, boundary_file, stats_inflation, stats_epsilon);
      const std::string text = lindblad::stats_to_json(result);
      if (stats_out.empty())
        std::printf("%s", text.c_str());
      else {
        std::FILE* f = std::fopen(stats_out.c_str(), "wb");
        if (!f) throw std::runtime_error("cannot write " + stats_out);
        std::fwrite(text.data(), 1, text.size(), f);
        std::fclose(f);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
