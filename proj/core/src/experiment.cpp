#include "lindblad/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "lindblad/ensembles.hpp"

namespace lindblad {

namespace {

using nlohmann::json;

std::string run_kind_label(RunKind kind) {
  return kind == RunKind::Sample ? "sample" : "rmt";
}

RunKind parse_run_kind(const std::string& text) {
  if (text == "sample") return RunKind::Sample;
  if (text == "rmt") return RunKind::Surrogate;
  throw std::invalid_argument("unknown run kind '" + text + "'");
}

std::string surrogate_label(SurrogateKind kind) {
  return kind == SurrogateKind::General ? "general" : "goe";
}

SurrogateKind parse_surrogate(const std::string& text) {
  if (text == "general") return SurrogateKind::General;
  if (text == "goe") return SurrogateKind::GoeScaled;
  throw std::invalid_argument("unknown surrogate model '" + text + "'");
}

std::string boundary_label(BoundaryChoice choice) {
  switch (choice) {
    case BoundaryChoice::Auto: return "auto";
    case BoundaryChoice::Lemon: return "lemon";
    case BoundaryChoice::Gaussian: return "gaussian";
    case BoundaryChoice::EllipseNumeric: return "ellipse_numeric";
    case BoundaryChoice::None: return "none";
  }
  return "auto";
}

BoundaryChoice parse_boundary(const std::string& text) {
  if (text == "auto") return BoundaryChoice::Auto;
  if (text == "lemon") return BoundaryChoice::Lemon;
  if (text == "gaussian") return BoundaryChoice::Gaussian;
  if (text == "ellipse_numeric") return BoundaryChoice::EllipseNumeric;
  if (text == "none") return BoundaryChoice::None;
  throw std::invalid_argument("unknown boundary choice '" + text + "'");
}

json config_json(const ExperimentConfig& c) {
  return json{{"n", c.n},
              {"realizations", c.realizations},
              {"sampler", c.sampler.label()},
              {"alpha", c.alpha},
              {"seed", c.seed},
              {"workers", c.workers},
              {"hist",
               {{"re_min", c.hist.re_min},
                {"re_max", c.hist.re_max},
                {"im_min", c.hist.im_min},
                {"im_max", c.hist.im_max},
                {"bins", c.hist.bins}}},
              {"out", c.out_dir},
              {"kind", run_kind_label(c.run_kind)},
              {"surrogate_model", surrogate_label(c.surrogate_kind)},
              {"boundary", boundary_label(c.boundary)},
              {"inflation", c.inflation},
              {"real_axis_epsilon", c.real_axis_epsilon}};
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known)
      if (item.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw std::invalid_argument("unknown config key '" + item.key() + "' in " + where);
  }
}

ExperimentConfig config_from(const json& j) {
  reject_unknown_keys(j,
                      {"n", "realizations", "sampler", "alpha", "seed",
                       "workers", "hist", "out", "kind", "surrogate_model",
                       "boundary", "inflation", "real_axis_epsilon"},
                      "config");
  ExperimentConfig c;
  c.n = j.value("n", c.n);
  c.realizations = j.value("realizations", c.realizations);
  if (j.contains("sampler")) c.sampler = SamplerSpec::parse(j.at("sampler").get<std::string>());
  c.alpha = j.value("alpha", c.alpha);
  c.seed = j.value("seed", c.seed);
  c.workers = j.value("workers", c.workers);
  if (j.contains("hist")) {
    const json& h = j.at("hist");
    reject_unknown_keys(h, {"re_min", "re_max", "im_min", "im_max", "bins"},
                        "config.hist");
    c.hist.re_min = h.value("re_min", c.hist.re_min);
    c.hist.re_max = h.value("re_max", c.hist.re_max);
    c.hist.im_min = h.value("im_min", c.hist.im_min);
    c.hist.im_max = h.value("im_max", c.hist.im_max);
    c.hist.bins = h.value("bins", c.hist.bins);
  }
  c.out_dir = j.value("out", c.out_dir);
  if (j.contains("kind")) c.run_kind = parse_run_kind(j.at("kind").get<std::string>());
  if (j.contains("surrogate_model"))
    c.surrogate_kind = parse_surrogate(j.at("surrogate_model").get<std::string>());
  if (j.contains("boundary")) c.boundary = parse_boundary(j.at("boundary").get<std::string>());
  c.inflation = j.value("inflation", c.inflation);
  c.real_axis_epsilon = j.value("real_axis_epsilon", c.real_axis_epsilon);
  return c;
}

void validate(const ExperimentConfig& c) {
  if (c.n < 2) throw std::invalid_argument("config: n must be >= 2");
  if (c.realizations < 1)
    throw std::invalid_argument("config: realizations must be >= 1");
  if (c.alpha < 0.0) throw std::invalid_argument("config: alpha must be >= 0");
  if (c.hist.bins < 1) throw std::invalid_argument("config: hist.bins must be >= 1");
  if (!(c.hist.re_min < c.hist.re_max) || !(c.hist.im_min < c.hist.im_max))
    throw std::invalid_argument("config: histogram window must increase");
  if (c.inflation < 0.0)
    throw std::invalid_argument("config: inflation must be >= 0");
  if (!(c.real_axis_epsilon > 0.0))
    throw std::invalid_argument("config: real_axis_epsilon must be > 0");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

json histogram_json(const DensityHistogram& h) {
  return json{{"re_edges", h.re_edges},
              {"im_edges", h.im_edges},
              {"counts", h.counts},
              {"total", h.total},
              {"out_of_range", h.out_of_range}};
}

DensityHistogram histogram_from_json(const json& j) {
  DensityHistogram h;
  h.re_edges = j.at("re_edges").get<std::vector<double>>();
  h.im_edges = j.at("im_edges").get<std::vector<double>>();
  h.counts = j.at("counts").get<std::vector<std::vector<long>>>();
  h.total = j.at("total").get<long>();
  h.out_of_range = j.at("out_of_range").get<long>();
  return h;
}

json stats_json(const RunStats& s) {
  json j{{"real_axis_fraction", s.real_axis_fraction},
         {"eigenvalues_total", s.eigenvalues_total},
         {"bulk_total", s.bulk_total},
         {"out_of_range", s.out_of_range},
         {"realizations_ok", s.realizations_ok},
         {"realizations_failed", s.realizations_failed}};
  j["gap_mean"] = s.gap_mean ? json(*s.gap_mean) : json(nullptr);
  j["gap_std"] = s.gap_std ? json(*s.gap_std) : json(nullptr);
  j["inside_fraction"] = s.inside_fraction ? json(*s.inside_fraction) : json(nullptr);
  return j;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& config) {
  return config_json(config).dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
  return config_from(json::parse(text));
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str());
}

std::string config_hash(const ExperimentConfig& config) {
  const std::string text = config_json(config).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int resolve_workers(int requested) {
  if (const char* env = std::getenv("LINDBLAD_SPECTRA_WORKERS")) {
    try {
      const int value = std::stoi(env);
      if (value > 0) return value;
    } catch (const std::exception&) {
    }
  }
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::optional<BoundaryCurve> resolve_boundary(const ExperimentConfig& config,
                                              int resolution) {
  const double alpha = config.alpha;
  switch (config.boundary) {
    case BoundaryChoice::Lemon:
      return lemon_curve(resolution);
    case BoundaryChoice::Gaussian:
      return boundary_curve(StieltjesKind::Gaussian, alpha > 0.0 ? alpha : 1.0,
                            resolution);
    case BoundaryChoice::EllipseNumeric:
      return ellipse_sum_boundary_numeric(alpha, 100000, std::max(resolution / 2, 64));
    case BoundaryChoice::None:
      return std::nullopt;
    case BoundaryChoice::Auto:
      break;
  }
  if (config.run_kind == RunKind::Sample)
    return alpha == 0.0 ? std::optional<BoundaryCurve>(lemon_curve(resolution))
                        : std::nullopt;
  if (config.surrogate_kind == SurrogateKind::GoeScaled)
    return alpha > 0.0
               ? std::optional<BoundaryCurve>(
                     boundary_curve(StieltjesKind::TwoSemicircles, alpha, resolution))
               : std::nullopt;
  return alpha == 0.0 ? std::optional<BoundaryCurve>(lemon_curve(resolution))
                      : std::nullopt;
}

bool RunResult::too_many_failures() const {
  const size_t requested = manifest.realizations.size();
  if (requested == 0) return false;
  size_t failed = 0;
  for (const auto& r : manifest.realizations)
    if (!r.ok) ++failed;
  return failed * 10 > requested;
}

RunResult run_batch(const ExperimentConfig& config) {
  validate(config);
  const int total = config.realizations;
  const int workers = std::min(resolve_workers(config.workers), total);

  struct TaskResult {
    bool ok = false;
    double wall_ms = 0.0;
    std::string error;
    SpectrumSample sample;
  };
  std::vector<TaskResult> results(static_cast<size_t>(total));

  // The basis is immutable and shared; build it once outside the pool.
  HermitianBasis basis;
  if (config.run_kind == RunKind::Sample) basis = sun_basis(config.n);

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= total) return;
      TaskResult& out = results[static_cast<size_t>(r)];
      const auto start = std::chrono::steady_clock::now();
      try {
        RngStream stream(config.seed, static_cast<std::uint64_t>(r));
        if (config.run_kind == RunKind::Sample) {
          const KossakowskiMatrix k =
              sample_kossakowski(config.n, config.sampler, stream);
          const JumpSet jumps = jump_decomposition(k, basis);
          Matrix h;
          const Matrix* h_ptr = nullptr;
          if (config.alpha > 0.0) {
            h = gue(config.n, 1.0 / config.n, stream);
            h_ptr = &h;
          }
          const LindbladSuperop superop =
              build_superop_kron(jumps, config.alpha, h_ptr, config.n);
          out.sample = make_lindblad_sample(config.n, eig(superop.matrix), r,
                                            config.sampler.label());
          bulk(out.sample);  // validates the stationary eigenvalue
        } else {
          const RmtSurrogate surrogate = build_rmt_surrogate(
              config.n, config.alpha, stream, config.surrogate_kind);
          out.sample = make_surrogate_sample(
              config.n, eig(surrogate.matrix), r,
              surrogate_label(config.surrogate_kind));
        }
        out.ok = true;
      } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
      }
      out.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    }
  };
  {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  RunResult run;
  run.manifest.hash = config_hash(config);
  for (int r = 0; r < total; ++r) {
    const TaskResult& t = results[static_cast<size_t>(r)];
    run.manifest.realizations.push_back({r, t.ok, t.wall_ms, t.error});
    if (t.ok) run.samples.push_back(results[static_cast<size_t>(r)].sample);
  }

  RunStats& stats = run.stats;
  stats.realizations_ok = static_cast<int>(run.samples.size());
  stats.realizations_failed = total - stats.realizations_ok;

  const DensityHistogram hist = histogram2d(
      run.samples, config.hist.re_min, config.hist.re_max, config.hist.im_min,
      config.hist.im_max, config.hist.bins, config.hist.bins);
  stats.bulk_total = hist.total;
  stats.out_of_range = hist.out_of_range;
  for (const auto& s : run.samples)
    stats.eigenvalues_total += static_cast<long>(s.raw.size());

  if (!run.samples.empty()) {
    if (config.run_kind == RunKind::Sample) {
      double mean = 0.0;
      for (const auto& s : run.samples) mean += spectral_gap(s);
      mean /= static_cast<double>(run.samples.size());
      double var = 0.0;
      for (const auto& s : run.samples) {
        const double d = spectral_gap(s) - mean;
        var += d * d;
      }
      stats.gap_mean = mean;
      stats.gap_std = run.samples.size() > 1
                          ? std::sqrt(var / (run.samples.size() - 1.0))
                          : 0.0;
    }
    stats.real_axis_fraction =
        real_axis_fraction(run.samples, config.real_axis_epsilon);
    if (const auto curve = resolve_boundary(config))
      stats.inside_fraction =
          inside_fraction(run.samples, *curve, config.inflation);
  }

  if (!config.out_dir.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir(config.out_dir);
    fs::create_directories(dir);

    std::string csv = "realization,re_raw,im_raw,re_rescaled,im_rescaled\n";
    long rows = 0;
    for (const auto& s : run.samples)
      for (size_t i = 0; i < s.raw.size(); ++i) {
        csv += std::to_string(s.realization_id);
        csv += ',';
        csv += format_double(s.raw[i].real());
        csv += ',';
        csv += format_double(s.raw[i].imag());
        csv += ',';
        csv += format_double(s.rescaled[i].real());
        csv += ',';
        csv += format_double(s.rescaled[i].imag());
        csv += '\n';
        ++rows;
      }
    write_file(dir / "eigenvalues.csv", csv);
    write_file(dir / "histogram.json", histogram_json(hist).dump(2) + "\n");
    write_file(dir / "stats.json", stats_json(stats).dump(2) + "\n");

    run.manifest.artifacts.push_back({"eigenvalues.csv", rows});
    run.manifest.artifacts.push_back(
        {"histogram.json",
         static_cast<long>(config.hist.bins) * config.hist.bins});
    run.manifest.artifacts.push_back({"stats.json", 1});

    json manifest{{"config_hash", run.manifest.hash},
                  {"config", config_json(config)},
                  {"realizations", json::array()},
                  {"artifacts", json::array()}};
    for (const auto& r : run.manifest.realizations)
      manifest["realizations"].push_back({{"index", r.index},
                                          {"ok", r.ok},
                                          {"wall_ms", r.wall_ms},
                                          {"error", r.error}});
    for (const auto& a : run.manifest.artifacts)
      manifest["artifacts"].push_back({{"path", a.path}, {"rows", a.rows}});
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  }
  return run;
}

void write_boundary_csv(const std::string& path, const BoundaryCurve& curve) {
  std::string kind;
  switch (curve.kind) {
    case CurveKind::Lemon: kind = "lemon"; break;
    case CurveKind::Gaussian: kind = "gaussian"; break;
    case CurveKind::EllipseConvolutionNumeric: kind = "ellipse_numeric"; break;
    case CurveKind::Empirical: kind = "empirical"; break;
  }
  std::string csv = "# kind=" + kind + " alpha=" + format_double(curve.alpha) +
                    " points=" + std::to_string(curve.points.size()) + "\n";
  csv += "re,im\n";
  for (const auto& p : curve.points)
    csv += format_double(p.real()) + "," + format_double(p.imag()) + "\n";
  write_file(path, csv);
}

BoundaryCurve read_boundary_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open boundary file " + path);
  BoundaryCurve curve;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      if (line.find("kind=gaussian") != std::string::npos)
        curve.kind = CurveKind::Gaussian;
      else if (line.find("kind=ellipse_numeric") != std::string::npos)
        curve.kind = CurveKind::EllipseConvolutionNumeric;
      else if (line.find("kind=lemon") != std::string::npos)
        curve.kind = CurveKind::Lemon;
      const auto pos = line.find("alpha=");
      if (pos != std::string::npos)
        curve.alpha = std::strtod(line.c_str() + pos + 6, nullptr);
      continue;
    }
    if (line.rfind("re,", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    curve.points.emplace_back(std::stod(line.substr(0, comma)),
                              std::stod(line.substr(comma + 1)));
  }
  if (curve.points.size() < 4)
    throw std::runtime_error("boundary file " + path + " has too few points");
  return curve;
}

std::vector<SpectrumSample> read_eigenvalue_csv(const std::string& path, int n,
                                                SpectrumKind kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) ||
      line != "realization,re_raw,im_raw,re_rescaled,im_rescaled")
    throw std::runtime_error("unexpected eigenvalue CSV header in " + path);

  std::vector<SpectrumSample> samples;
  int current = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    int realization = 0;
    double re_raw = 0, im_raw = 0, re_res = 0, im_res = 0;
    if (std::sscanf(line.c_str(), "%d,%lg,%lg,%lg,%lg", &realization, &re_raw,
                    &im_raw, &re_res, &im_res) != 5)
      throw std::runtime_error("malformed eigenvalue CSV row: " + line);
    if (realization != current) {
      SpectrumSample s;
      s.dim_n = n;
      s.kind = kind;
      s.realization_id = realization;
      samples.push_back(std::move(s));
      current = realization;
    }
    samples.back().raw.emplace_back(re_raw, im_raw);
    samples.back().rescaled.emplace_back(re_res, im_res);
  }
  return samples;
}

LoadedRun load_run(const std::string& run_dir) {
  namespace fs = std::filesystem;
  const fs::path dir(run_dir);
  std::ifstream in(dir / "manifest.json");
  if (!in) throw std::runtime_error("cannot open manifest in " + run_dir);
  json manifest = json::parse(in);

  LoadedRun run;
  run.config = config_from(manifest.at("config"));
  run.samples = read_eigenvalue_csv(
      (dir / "eigenvalues.csv").string(), run.config.n,
      run.config.run_kind == RunKind::Sample ? SpectrumKind::Lindbladian
                                             : SpectrumKind::Surrogate);
  std::ifstream hist_in(dir / "histogram.json");
  if (!hist_in) throw std::runtime_error("cannot open histogram in " + run_dir);
  run.histogram = histogram_from_json(json::parse(hist_in));
  return run;
}

CompareReport compare_runs(const std::string& run_dir_a,
                           const std::string& run_dir_b, double threshold) {
  const LoadedRun a = load_run(run_dir_a);
  const LoadedRun b = load_run(run_dir_b);

  CompareReport report;
  report.threshold = threshold;
  report.l1_hist2d = l1_distance(a.histogram, b.histogram);

  auto marginal_l1 = [&](bool re_axis) {
    const size_t bins = re_axis ? a.histogram.counts.size()
                                : a.histogram.counts.front().size();
    std::vector<double> pa(bins, 0.0), pb(bins, 0.0);
    double na = 0.0, nb = 0.0;
    for (size_t i = 0; i < a.histogram.counts.size(); ++i)
      for (size_t j = 0; j < a.histogram.counts[i].size(); ++j) {
        const size_t k = re_axis ? i : j;
        pa[k] += static_cast<double>(a.histogram.counts[i][j]);
        pb[k] += static_cast<double>(b.histogram.counts[i][j]);
        na += static_cast<double>(a.histogram.counts[i][j]);
        nb += static_cast<double>(b.histogram.counts[i][j]);
      }
    double l1 = 0.0;
    for (size_t k = 0; k < bins; ++k) l1 += std::abs(pa[k] / na - pb[k] / nb);
    return l1;
  };
  report.l1_re_marginal = marginal_l1(true);
  report.l1_im_marginal = marginal_l1(false);
  report.pass = report.l1_hist2d <= threshold;
  return report;
}

std::string compare_report_to_json(const CompareReport& report) {
  return json{{"l1_hist2d", report.l1_hist2d},
              {"l1_re_marginal", report.l1_re_marginal},
              {"l1_im_marginal", report.l1_im_marginal},
              {"threshold", report.threshold},
              {"pass", report.pass}}
             .dump(2) +
         "\n";
}

RunStats recompute_stats(const std::string& run_dir,
                         const std::optional<std::string>& boundary_csv,
                         double inflation, double epsilon) {
  const LoadedRun run = load_run(run_dir);
  RunStats stats;
  stats.realizations_ok = static_cast<int>(run.samples.size());
  for (const auto& s : run.samples)
    stats.eigenvalues_total += static_cast<long>(s.raw.size());
  stats.bulk_total = run.histogram.total;
  stats.out_of_range = run.histogram.out_of_range;
  if (run.config.run_kind == RunKind::Sample && !run.samples.empty()) {
    double mean = 0.0;
    for (const auto& s : run.samples) mean += spectral_gap(s);
    mean /= static_cast<double>(run.samples.size());
    double var = 0.0;
    for (const auto& s : run.samples) {
      const double d = spectral_gap(s) - mean;
      var += d * d;
    }
    stats.gap_mean = mean;
    stats.gap_std = run.samples.size() > 1
                        ? std::sqrt(var / (run.samples.size() - 1.0))
                        : 0.0;
  }
  if (!run.samples.empty()) {
    stats.real_axis_fraction = real_axis_fraction(run.samples, epsilon);
    std::optional<BoundaryCurve> curve;
    if (boundary_csv)
      curve = read_boundary_csv(*boundary_csv);
    else
      curve = resolve_boundary(run.config);
    if (curve)
      stats.inside_fraction = inside_fraction(run.samples, *curve, inflation);
  }
  return stats;
}

std::string stats_to_json(const RunStats& stats) {
  return stats_json(stats).dump(2) + "\n";
}

}  // namespace lindblad
