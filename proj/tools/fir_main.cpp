#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>

#include "bench.hpp"
#include "fir/csv.hpp"
#include "fir/fir_estimator.hpp"
#include "fir/numerics.hpp"
#include "fir/robust_pca.hpp"
#include "fir/simdata.hpp"
#include "fir/svg.hpp"
#include "fir/types.hpp"

namespace {

using fir::Index;
using fir::Matrix;
using fir::Vector;
using nlohmann::json;

json to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

json to_json(const std::vector<Index>& v) {
  json out = json::array();
  for (Index i : v) out.push_back(i);
  return out;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw fir::CsvError(path + ": cannot open file for writing", 0, 0);
  out << j.dump(2) << '\n';
  if (!out) throw fir::CsvError(path + ": write failed", 0, 0);
}

fir::OutlierKind parse_kind(const std::string& name) {
  if (name == "clean") return fir::OutlierKind::clean;
  if (name == "cluster") return fir::OutlierKind::cluster;
  if (name == "radial") return fir::OutlierKind::radial;
  if (name == "point") return fir::OutlierKind::point;
  if (name == "lowrank") return fir::OutlierKind::lowrank;
  throw CLI::ValidationError("--kind", "unknown kind '" + name + "'");
}

fir::EstimateMethod parse_method(const std::string& name) {
  if (name == "classical" || name == "cpca") return fir::EstimateMethod::classical;
  if (name == "fdb") return fir::EstimateMethod::fdb;
  if (name == "fir") return fir::EstimateMethod::fir;
  throw CLI::ValidationError("--method", "unknown method '" + name + "'");
}

std::vector<std::string> feature_header(Index p) {
  std::vector<std::string> header;
  header.reserve(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) header.push_back("x" + std::to_string(j + 1));
  return header;
}

// Shared estimator/PCA knobs; batch 0 resolves to about n/10.
struct MethodFlags {
  std::string method;
  double alpha = 0.75;
  Index batch = 0;
  Index directions = 500;
  std::uint64_t seed = 0;
};

void add_method_flags(CLI::App* cmd, MethodFlags& flags, bool method_required = true) {
  auto* opt = cmd->add_option("--method", flags.method,
                              "estimator: classical (alias cpca), fdb, or fir");
  if (method_required) opt->required();
  cmd->add_option("--alpha", flags.alpha, "inlier fraction in (0,1)");
  cmd->add_option("--batch", flags.batch, "FIR batch size (0 = about n/10)");
  cmd->add_option("--directions", flags.directions, "depth directions tau");
  cmd->add_option("--seed", flags.seed, "random stream seed");
}

Index resolve_batch(Index n, Index p, double alpha, Index requested) {
  const double limit = alpha * static_cast<double>(n);
  Index max_m = static_cast<Index>(std::ceil(limit)) - 1;
  if (static_cast<double>(max_m) >= limit) --max_m;
  Index m = requested > 0 ? requested : std::min(std::max(p + 1, n / 10), max_m);
  if (m <= p || m > max_m) {
    throw std::invalid_argument("no feasible batch size: need p < batch < alpha*n (p=" +
                                std::to_string(p) + ", n=" + std::to_string(n) + ")");
  }
  const Index h = static_cast<Index>(std::floor(limit));
  if (h % m != 0) {
    std::cerr << "warning: batch " << m << " does not divide h = " << h
              << "; |H| = " << m * (h / m) << " points will be selected\n";
  }
  return m;
}

int cmd_simulate(const std::string& out, Index n, Index p, double eps,
                 const std::string& kind_name, double r, Index rank, double scale,
                 std::uint64_t seed) {
  fir::SimSpec spec;
  spec.n = n;
  spec.p = p;
  spec.eps = eps;
  spec.kind = parse_kind(kind_name);
  spec.r = r;
  spec.rank = rank;
  spec.lowrank_scale = scale;
  spec.seed = fir::RngStream{seed, 0};
  const fir::LabeledData data = fir::generate(spec);

  fir::write_matrix_csv(out + ".csv", data.x, feature_header(p));
  fir::write_labels_csv(out + ".labels.csv", data.labels);

  json truth;
  truth["n"] = n;
  truth["p"] = p;
  truth["kind"] = kind_name;
  truth["eps"] = eps;
  truth["n_outliers"] =
      std::count(data.labels.begin(), data.labels.end(), true);
  truth["seed"] = seed;
  truth["true_mu"] = to_json(data.true_mu);
  truth["true_sigma"] = to_json(data.true_sigma);
  write_json_file(out + ".truth.json", truth);
  return 0;
}

json config_echo(const MethodFlags& flags, Index batch) {
  json j;
  j["alpha"] = flags.alpha;
  j["batch"] = batch;
  j["directions"] = flags.directions;
  j["seed"] = flags.seed;
  return j;
}

int cmd_estimate(const std::string& input, const MethodFlags& flags,
                 const std::string& out) {
  const fir::CsvTable table = fir::read_numeric_csv(input);
  const Matrix& x = table.data;
  const Index n = x.rows();
  const Index p = x.cols();
  if (p >= n) throw std::invalid_argument("p exceeds n unsupported");

  const fir::EstimateMethod method = parse_method(flags.method);
  fir::FirResult est;
  Index batch = 0;
  const auto t0 = std::chrono::steady_clock::now();
  switch (method) {
    case fir::EstimateMethod::classical: {
      est.h_indices.resize(static_cast<std::size_t>(n));
      std::iota(est.h_indices.begin(), est.h_indices.end(), Index{0});
      est.n_selected = n;
      auto [mu, sigma] = fir::subset_mean_cov(x, est.h_indices);
      est.mu = std::move(mu);
      est.sigma = std::move(sigma);
      break;
    }
    case fir::EstimateMethod::fdb: {
      const Matrix dirs =
          fir::sample_unit_directions(p, flags.directions, fir::RngStream{flags.seed, 0});
      est = fir::fdb_estimate(x, flags.alpha, dirs);
      break;
    }
    case fir::EstimateMethod::fir: {
      batch = resolve_batch(n, p, flags.alpha, flags.batch);
      fir::FirConfig config;
      config.alpha = flags.alpha;
      config.batch_m = batch;
      config.n_directions = flags.directions;
      config.seed = fir::RngStream{flags.seed, 0};
      est = fir::fir_estimate(x, config);
      break;
    }
  }
  const auto t1 = std::chrono::steady_clock::now();

  json result;
  result["method"] = flags.method == "cpca" ? "classical" : flags.method;
  result["n"] = n;
  result["p"] = p;
  result["mu"] = to_json(est.mu);
  result["sigma"] = to_json(est.sigma);
  result["h_indices"] = to_json(est.h_indices);
  result["n_selected"] = est.n_selected;
  result["runtime_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
  result["config"] = config_echo(flags, batch);
  if (out.empty()) {
    std::cout << result.dump(2) << '\n';
  } else {
    write_json_file(out, result);
  }
  return 0;
}

int cmd_pca(const std::string& input, const MethodFlags& flags, const std::string& out,
            const std::string& svg, bool allow_wide, bool raw_od, bool squared_variances,
            Index components) {
  const fir::CsvTable table = fir::read_numeric_csv(input);
  const Matrix& x = table.data;
  const Index n = x.rows();
  const Index p = x.cols();
  if (p >= n && !allow_wide) {
    throw std::invalid_argument(
        "p exceeds n unsupported (pass --allow-wide to project to rank r0 first)");
  }

  const fir::EstimateMethod method = parse_method(flags.method);
  fir::FirConfig config;
  config.alpha = flags.alpha;
  config.n_directions = flags.directions;
  config.seed = fir::RngStream{flags.seed, 0};
  if (method == fir::EstimateMethod::fir) {
    // batch feasibility is judged in the projected dimension r0
    const Index r0 = fir::preprocess_project(x).r0;
    config.batch_m = resolve_batch(n, r0, flags.alpha, flags.batch);
  }
  fir::PcaOptions opts;
  opts.allow_wide = allow_wide;
  opts.raw_od_cutoff = raw_od;
  opts.max_components = components;

  const auto t0 = std::chrono::steady_clock::now();
  const fir::RobustPcaModel model = fir::fit(x, method, config, opts);
  const auto t1 = std::chrono::steady_clock::now();

  const std::string prefix = out.empty() ? "" : out + ".";
  json mj;
  mj["method"] = flags.method == "cpca" ? "classical" : flags.method;
  mj["n"] = n;
  mj["p"] = p;
  mj["r0"] = model.r0;
  mj["r1"] = model.r1;
  mj["center"] = to_json(model.center);
  mj["loadings"] = to_json(model.loadings);
  mj["variances"] =
      squared_variances ? to_json(model.variances.cwiseProduct(model.variances).eval())
                        : to_json(model.variances);
  mj["variances_squared"] = squared_variances;
  mj["cutoff_sd"] = model.cutoff_sd;
  mj["cutoff_od"] = model.cutoff_od;
  mj["h_indices"] = to_json(model.h_indices);
  mj["runtime_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
  mj["config"] = config_echo(flags, config.batch_m);
  write_json_file(prefix + "model.json", mj);

  std::vector<std::string> score_header;
  for (Index j = 0; j < model.r1; ++j) score_header.push_back("t" + std::to_string(j + 1));
  fir::write_matrix_csv(prefix + "scores.csv", model.scores, score_header);

  Matrix outlier_map(n, 4);
  for (Index i = 0; i < n; ++i) {
    outlier_map(i, 0) = static_cast<double>(i);
    outlier_map(i, 1) = model.sd(i);
    outlier_map(i, 2) = model.od(i);
    outlier_map(i, 3) = model.outlier_flags[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
  }
  fir::write_matrix_csv(prefix + "outliermap.csv", outlier_map,
                        {"index", "sd", "od", "flag"});

  if (!svg.empty()) {
    fir::write_outlier_map_svg(svg, model.sd, model.od, model.cutoff_sd, model.cutoff_od,
                               model.outlier_flags);
  }
  return 0;
}

int cmd_bench(const std::string& config_path, const std::string& out) {
  const fir::bench::BenchConfig config = fir::bench::load_config(config_path);
  int threads = 0;
  if (const char* env = std::getenv("FIR_THREADS")) {
    threads = std::atoi(env);
    if (threads < 0) threads = 0;
  }
  const int ok_cells = fir::bench::run_bench(config, out, threads);
  if (ok_cells == 0) {
    std::cerr << "bench: no cell produced a result\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FIR: fast iterative robust location/covariance and robust PCA"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "generate a labeled dataset as CSV");
  std::string sim_kind = "clean", sim_out;
  Index sim_n = 0, sim_p = 0, sim_rank = 2;
  double sim_eps = 0.0, sim_r = 2.0, sim_scale = 20.0;
  std::uint64_t sim_seed = 0;
  sim->add_option("--kind", sim_kind, "clean, cluster, radial, point, or lowrank");
  sim->add_option("--n", sim_n, "number of rows")->required();
  sim->add_option("--p", sim_p, "number of columns")->required();
  sim->add_option("--eps", sim_eps, "outlier fraction in [0,1)");
  sim->add_option("--r", sim_r, "outlier distance parameter (point, cluster)");
  sim->add_option("--rank", sim_rank, "factor count (lowrank)");
  sim->add_option("--scale", sim_scale, "offset scale (lowrank)");
  sim->add_option("--seed", sim_seed, "random stream seed");
  sim->add_option("--out", sim_out, "output path prefix")->required();

  // estimate
  auto* est = app.add_subcommand("estimate", "robust location/covariance of a CSV");
  std::string est_input, est_out;
  MethodFlags est_flags;
  est->add_option("input", est_input, "input CSV")->required();
  add_method_flags(est, est_flags);
  est->add_option("--out", est_out, "result JSON path (default: stdout)");

  // pca
  auto* pca = app.add_subcommand("pca", "robust PCA with outlier diagnostics");
  std::string pca_input, pca_out, pca_svg;
  MethodFlags pca_flags;
  bool allow_wide = false, raw_od = false, squared_variances = false;
  pca->add_option("input", pca_input, "input CSV")->required();
  add_method_flags(pca, pca_flags);
  pca->add_option("--out", pca_out, "output prefix for model.json/scores.csv/outliermap.csv");
  pca->add_option("--svg", pca_svg, "also write an (sd, od) scatter SVG");
  pca->add_flag("--allow-wide", allow_wide, "accept p >= n by projecting to rank r0 first");
  pca->add_flag("--raw-od-cutoff", raw_od, "cutoff on raw od instead of od^(2/3)");
  pca->add_flag("--squared-variances", squared_variances,
                "report squared eigenvalues as the variances");

  // bench
  auto* bench = app.add_subcommand("bench", "Monte Carlo benchmark grid");
  std::string bench_config, bench_out = "bench";
  bench->add_option("--config", bench_config, "bench config JSON")->required();
  bench->add_option("--out", bench_out, "output prefix");

  try {
    app.parse(argc, argv);
    if (sim->parsed()) {
      return cmd_simulate(sim_out, sim_n, sim_p, sim_eps, sim_kind, sim_r, sim_rank,
                          sim_scale, sim_seed);
    }
    if (est->parsed()) return cmd_estimate(est_input, est_flags, est_out);
    if (pca->parsed()) {
      return cmd_pca(pca_input, pca_flags, pca_out, pca_svg, allow_wide, raw_od,
                     squared_variances);
    }
    if (bench->parsed()) return cmd_bench(bench_config, bench_out);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const fir::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const fir::CsvError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
