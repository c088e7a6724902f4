#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lindblad/experiment.hpp"

using namespace lindblad;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

long count_data_rows(const fs::path& csv) {
  std::ifstream in(csv);
  REQUIRE(in.good());
  std::string line;
  long rows = -1;  // skip header
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  return rows;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "lindblad_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ExperimentConfig small_config(const fs::path& out) {
  ExperimentConfig config;
  config.n = 6;
  config.realizations = 3;
  config.seed = 99;
  config.workers = 2;
  config.hist.bins = 10;
  config.out_dir = out.string();
  return config;
}

}  // namespace

TEST_CASE("config json round trip") {
  ExperimentConfig config;
  config.n = 12;
  config.realizations = 7;
  config.sampler = SamplerSpec::composite(2, 1);
  config.alpha = 0.5;
  config.seed = 123456789012345ULL;
  config.workers = 3;
  config.hist.bins = 25;
  config.hist.im_max = 3.0;
  config.out_dir = "runs/x";
  config.run_kind = RunKind::Surrogate;
  config.surrogate_kind = SurrogateKind::GoeScaled;
  config.boundary = BoundaryChoice::Lemon;
  config.inflation = 0.15;
  config.real_axis_epsilon = 1e-7;

  const auto round_tripped = config_from_json(config_to_json(config));
  CHECK(round_tripped == config);
  CHECK(config_hash(round_tripped) == config_hash(config));

  ExperimentConfig other = config;
  other.seed += 1;
  CHECK(config_hash(other) != config_hash(config));
}

TEST_CASE("config json rejects unknown keys and bad values") {
  CHECK_THROWS_AS(config_from_json(R"({"n": 4, "realizatons": 2})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(R"({"hist": {"bin": 4}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(R"({"sampler": "foo"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(R"({"boundary": "square"})"),
                  std::invalid_argument);
}

TEST_CASE("worker resolution env override") {
  unsetenv("LINDBLAD_SPECTRA_WORKERS");
  CHECK(resolve_workers(3) == 3);
  CHECK(resolve_workers(0) >= 1);
  setenv("LINDBLAD_SPECTRA_WORKERS", "5", 1);
  CHECK(resolve_workers(3) == 5);
  setenv("LINDBLAD_SPECTRA_WORKERS", "junk", 1);
  CHECK(resolve_workers(3) == 3);
  unsetenv("LINDBLAD_SPECTRA_WORKERS");
}

TEST_CASE("small batch writes a complete, deterministic run") {
  const fs::path dir_a = fresh_dir("run_a");
  const auto config = small_config(dir_a);
  const RunResult result = run_batch(config);

  CHECK(result.stats.realizations_ok == 3);
  CHECK(result.stats.realizations_failed == 0);
  CHECK(result.stats.eigenvalues_total == 3 * 36);
  CHECK(result.stats.bulk_total == 3 * 35);
  CHECK(result.stats.gap_mean.has_value());
  CHECK(result.stats.inside_fraction.has_value());  // alpha = 0: lemon
  CHECK(!result.too_many_failures());

  CHECK(count_data_rows(dir_a / "eigenvalues.csv") == 3 * 36);
  for (const char* artifact :
       {"eigenvalues.csv", "histogram.json", "stats.json", "manifest.json"})
    CHECK(fs::exists(dir_a / artifact));

  // manifest row counts match the files
  for (const auto& artifact : result.manifest.artifacts)
    if (artifact.path == "eigenvalues.csv")
      CHECK(artifact.rows == count_data_rows(dir_a / artifact.path));

  // identical config, fresh directory: byte-identical data artifacts
  const fs::path dir_b = fresh_dir("run_b");
  auto config_b = config;
  config_b.out_dir = dir_b.string();
  run_batch(config_b);
  for (const char* artifact : {"eigenvalues.csv", "histogram.json", "stats.json"})
    CHECK(slurp(dir_a / artifact) == slurp(dir_b / artifact));

  // worker count must not change the bytes
  const fs::path dir_c = fresh_dir("run_c");
  auto config_c = config;
  config_c.out_dir = dir_c.string();
  config_c.workers = 1;
  run_batch(config_c);
  for (const char* artifact : {"eigenvalues.csv", "histogram.json", "stats.json"})
    CHECK(slurp(dir_a / artifact) == slurp(dir_c / artifact));
}

TEST_CASE("runs reload faithfully") {
  const fs::path dir = fresh_dir("run_reload");
  const auto config = small_config(dir);
  const RunResult result = run_batch(config);

  const LoadedRun loaded = load_run(dir.string());
  CHECK(loaded.config == config);
  REQUIRE(loaded.samples.size() == result.samples.size());
  for (size_t s = 0; s < loaded.samples.size(); ++s) {
    REQUIRE(loaded.samples[s].raw.size() == result.samples[s].raw.size());
    for (size_t i = 0; i < loaded.samples[s].raw.size(); ++i) {
      // %.17g round-trips doubles exactly
      CHECK(loaded.samples[s].raw[i] == result.samples[s].raw[i]);
      CHECK(loaded.samples[s].rescaled[i] == result.samples[s].rescaled[i]);
    }
  }

  const RunStats recomputed =
      recompute_stats(dir.string(), std::nullopt, config.inflation,
                      config.real_axis_epsilon);
  CHECK(recomputed.gap_mean == result.stats.gap_mean);
  CHECK(recomputed.real_axis_fraction == result.stats.real_axis_fraction);
  CHECK(recomputed.inside_fraction == result.stats.inside_fraction);
}

TEST_CASE("surrogate batch skips rescaling and gap statistics") {
  const fs::path dir = fresh_dir("run_rmt");
  ExperimentConfig config;
  config.n = 6;
  config.realizations = 2;
  config.seed = 7;
  config.run_kind = RunKind::Surrogate;
  config.surrogate_kind = SurrogateKind::GoeScaled;
  config.alpha = 1.0;
  config.hist.bins = 10;
  config.out_dir = dir.string();

  const RunResult result = run_batch(config);
  CHECK(!result.stats.gap_mean.has_value());
  CHECK(result.stats.inside_fraction.has_value());  // goe + alpha > 0
  for (const auto& s : result.samples)
    for (size_t i = 0; i < s.raw.size(); ++i) CHECK(s.raw[i] == s.rescaled[i]);
}

TEST_CASE("compare: a run against itself is exactly zero") {
  const fs::path dir = fresh_dir("run_cmp");
  run_batch(small_config(dir));
  const CompareReport report =
      compare_runs(dir.string(), dir.string(), 0.08);
  CHECK(report.l1_hist2d == 0.0);
  CHECK(report.l1_re_marginal == 0.0);
  CHECK(report.l1_im_marginal == 0.0);
  CHECK(report.pass);

  // mismatched grids are rejected
  const fs::path dir2 = fresh_dir("run_cmp2");
  auto config2 = small_config(dir2);
  config2.hist.bins = 12;
  run_batch(config2);
  CHECK_THROWS_AS(compare_runs(dir.string(), dir2.string(), 0.08),
                  std::invalid_argument);
}

TEST_CASE("boundary csv round trip") {
  const fs::path dir = fresh_dir("boundary_csv");
  const auto curve = lemon_curve(128);
  const std::string path = (dir / "lemon.csv").string();
  write_boundary_csv(path, curve);

  const auto reloaded = read_boundary_csv(path);
  CHECK(reloaded.kind == CurveKind::Lemon);
  CHECK(reloaded.alpha == curve.alpha);
  REQUIRE(reloaded.points.size() == curve.points.size());
  for (size_t i = 0; i < curve.points.size(); ++i)
    CHECK(reloaded.points[i] == curve.points[i]);

  // and it plugs into the stats recomputation
  const fs::path run_dir = fresh_dir("run_boundary_stats");
  run_batch(small_config(run_dir));
  const RunStats stats =
      recompute_stats(run_dir.string(), path, 0.1, 1e-6);
  CHECK(stats.inside_fraction.has_value());
}
