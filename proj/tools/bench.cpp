#include "bench.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>
#include <thread>

#include "fir/fir_estimator.hpp"
#include "fir/metrics.hpp"
#include "fir/numerics.hpp"

namespace fir::bench {

namespace {

using nlohmann::json;

std::string kind_name(OutlierKind kind) {
  switch (kind) {
    case OutlierKind::clean: return "clean";
    case OutlierKind::cluster: return "cluster";
    case OutlierKind::radial: return "radial";
    case OutlierKind::point: return "point";
    case OutlierKind::lowrank: return "lowrank";
  }
  return "?";
}

std::string method_name(EstimateMethod method) {
  switch (method) {
    case EstimateMethod::classical: return "classical";
    case EstimateMethod::fdb: return "fdb";
    case EstimateMethod::fir: return "fir";
  }
  return "?";
}

OutlierKind parse_kind(const std::string& name) {
  if (name == "clean") return OutlierKind::clean;
  if (name == "cluster") return OutlierKind::cluster;
  if (name == "radial") return OutlierKind::radial;
  if (name == "point") return OutlierKind::point;
  throw std::invalid_argument("bench: unknown contamination kind '" + name + "'");
}

EstimateMethod parse_method(const std::string& name) {
  if (name == "classical") return EstimateMethod::classical;
  if (name == "fdb") return EstimateMethod::fdb;
  if (name == "fir") return EstimateMethod::fir;
  throw std::invalid_argument("bench: unknown method '" + name + "'");
}

struct Cell {
  Dataset dataset;
  OutlierKind kind;
  double eps;
  EstimateMethod method;
  double alpha;
  Index batch_m;
  std::string skip_reason;  // non-empty: preconditions unsatisfiable
};

struct RunRecord {
  bool ok = false;
  std::string error;
  ErrorReport report;
  Index outlier_overlap = 0;
};

struct CellStats {
  double mean = 0.0;
  double stddev = 0.0;
};

CellStats stats_of(const std::vector<double>& xs) {
  CellStats s;
  if (xs.empty()) return s;
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double acc = 0.0;
    for (double x : xs) acc += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  }
  return s;
}

std::string formatted(const CellStats& s) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f (%.2f)", s.mean, s.stddev);
  return buf;
}

// Default batch rule: about a tenth of the data, at least p + 1, and
// strictly below alpha * n. Empty optional when no feasible batch exists.
std::optional<Index> auto_batch(Index n, Index p, double alpha, Index requested) {
  const double limit = alpha * static_cast<double>(n);
  Index max_m = static_cast<Index>(std::ceil(limit)) - 1;
  if (static_cast<double>(max_m) >= limit) --max_m;
  if (requested > 0) {
    if (requested <= p || requested > max_m) return std::nullopt;
    return requested;
  }
  const Index m = std::min(std::max(p + 1, n / 10), max_m);
  if (m <= p) return std::nullopt;
  return m;
}

RunRecord run_one(const Cell& cell, int rep, std::uint64_t base_seed, Index tau, double r,
                  std::uint64_t cell_id) {
  RunRecord rec;
  const RngStream stream =
      RngStream{base_seed, 0}.substream(cell_id).substream(static_cast<std::uint64_t>(rep));
  SimSpec spec;
  spec.n = cell.dataset.n;
  spec.p = cell.dataset.p;
  spec.eps = cell.eps;
  spec.kind = cell.kind;
  spec.r = r;
  spec.seed = stream.substream(0);
  const LabeledData data = generate(spec);
  const RngStream method_seed = stream.substream(1);

  FirResult est;
  const auto t0 = std::chrono::steady_clock::now();
  switch (cell.method) {
    case EstimateMethod::classical: {
      est.h_indices.resize(static_cast<std::size_t>(spec.n));
      std::iota(est.h_indices.begin(), est.h_indices.end(), Index{0});
      est.n_selected = spec.n;
      auto [mu, sigma] = subset_mean_cov(data.x, est.h_indices);
      est.mu = std::move(mu);
      est.sigma = std::move(sigma);
      break;
    }
    case EstimateMethod::fdb: {
      const Matrix dirs = sample_unit_directions(spec.p, tau, method_seed);
      est = fdb_estimate(data.x, cell.alpha, dirs);
      break;
    }
    case EstimateMethod::fir: {
      FirConfig config;
      config.alpha = cell.alpha;
      config.batch_m = cell.batch_m;
      config.n_directions = tau;
      config.seed = method_seed;
      est = fir_estimate(data.x, config);
      break;
    }
  }
  const auto t1 = std::chrono::steady_clock::now();

  rec.report.runtime_seconds = std::chrono::duration<double>(t1 - t0).count();
  rec.report.e_mu = location_error(est.mu, data.true_mu);
  rec.report.e_sigma = cov_error(est.sigma, data.true_sigma, spec.p);
  rec.report.e_kl = kl_divergence(est.sigma, data.true_sigma, spec.p);
  for (Index i : est.h_indices) {
    if (data.labels[static_cast<std::size_t>(i)]) ++rec.outlier_overlap;
  }
  rec.ok = true;
  return rec;
}

}  // namespace

BenchConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("bench: cannot open config '" + path + "'");
  json j;
  in >> j;

  BenchConfig config;
  for (const auto& d : j.at("datasets")) {
    config.datasets.push_back(Dataset{d.at("name").get<std::string>(),
                                      d.at("n").get<Index>(), d.at("p").get<Index>()});
  }
  for (const auto& k : j.at("kinds")) config.kinds.push_back(parse_kind(k));
  for (const auto& e : j.at("eps_list")) config.eps_list.push_back(e.get<double>());
  for (const auto& m : j.at("methods")) config.methods.push_back(parse_method(m));
  config.replications = j.value("replications", 100);
  config.alpha = j.value("alpha", -1.0);
  config.batch_m = j.value("batch_m", Index{0});
  config.tau = j.value("tau", Index{500});
  config.r = j.value("r", 2.0);
  config.base_seed = j.value("base_seed", std::uint64_t{0});

  if (config.replications < 1) throw std::invalid_argument("bench: replications must be >= 1");
  if (config.datasets.empty() || config.kinds.empty() || config.methods.empty()) {
    throw std::invalid_argument("bench: datasets, kinds, and methods must be non-empty");
  }
  if (config.eps_list.empty()) config.eps_list.push_back(0.0);
  for (double eps : config.eps_list) {
    if (!(eps >= 0.0 && eps < 1.0)) {
      throw std::invalid_argument("bench: eps values must lie in [0, 1)");
    }
  }
  return config;
}

int run_bench(const BenchConfig& config, const std::string& out_prefix, int threads) {
  // Sorted cell grid; clean runs once per dataset/method with eps 0.
  std::vector<Cell> cells;
  std::vector<Dataset> datasets = config.datasets;
  std::sort(datasets.begin(), datasets.end(),
            [](const Dataset& a, const Dataset& b) { return a.name < b.name; });
  for (const Dataset& dataset : datasets) {
    for (OutlierKind kind : {OutlierKind::clean, OutlierKind::cluster, OutlierKind::radial,
                             OutlierKind::point}) {
      if (std::find(config.kinds.begin(), config.kinds.end(), kind) == config.kinds.end()) {
        continue;
      }
      std::vector<double> eps_values =
          kind == OutlierKind::clean ? std::vector<double>{0.0} : config.eps_list;
      std::sort(eps_values.begin(), eps_values.end());
      for (double eps : eps_values) {
        for (EstimateMethod method : {EstimateMethod::classical, EstimateMethod::fdb,
                                      EstimateMethod::fir}) {
          if (std::find(config.methods.begin(), config.methods.end(), method) ==
              config.methods.end()) {
            continue;
          }
          Cell cell{dataset, kind, eps, method, config.alpha, 0, ""};
          if (cell.alpha < 0.0) cell.alpha = eps >= 0.25 ? 0.5 : 0.75;
          if (method == EstimateMethod::fir) {
            const auto m = auto_batch(dataset.n, dataset.p, cell.alpha, config.batch_m);
            if (!m) {
              cell.skip_reason = "no feasible batch size with p < m < alpha*n";
            } else {
              cell.batch_m = *m;
            }
          }
          if (dataset.p >= dataset.n) cell.skip_reason = "p exceeds n";
          if (kind == OutlierKind::point && dataset.p < 2) {
            cell.skip_reason = "point outliers need p >= 2";
          }
          cells.push_back(std::move(cell));
        }
      }
    }
  }

  const int reps = config.replications;
  const std::size_t total = cells.size() * static_cast<std::size_t>(reps);
  std::vector<RunRecord> records(total);

  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t t = cursor.fetch_add(1);
      if (t >= total) return;
      const std::size_t c = t / static_cast<std::size_t>(reps);
      const int rep = static_cast<int>(t % static_cast<std::size_t>(reps));
      const Cell& cell = cells[c];
      if (!cell.skip_reason.empty()) continue;
      try {
        records[t] = run_one(cell, rep, config.base_seed, config.tau, config.r,
                             static_cast<std::uint64_t>(c));
      } catch (const std::exception& e) {
        records[t].ok = false;
        records[t].error = e.what();
      }
    }
  };

  int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  n_threads = std::min<int>(n_threads, static_cast<int>(std::max<std::size_t>(total, 1)));
  std::vector<std::thread> pool;
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // Per-replication CSV. Runtime stays out of this file so reruns with
  // the same base_seed are byte-identical; timing lives in the summary.
  std::ofstream csv(out_prefix + ".results.csv");
  if (!csv) throw std::runtime_error(out_prefix + ".results.csv: cannot open for writing");
  csv << "dataset,kind,eps,method,replication,status,e_mu,e_sigma,e_kl,outlier_overlap\n";
  char num[96];
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    for (int rep = 0; rep < reps; ++rep) {
      const RunRecord& rec = records[c * static_cast<std::size_t>(reps) +
                                     static_cast<std::size_t>(rep)];
      csv << cell.dataset.name << ',' << kind_name(cell.kind) << ',' << cell.eps << ','
          << method_name(cell.method) << ',' << rep << ',';
      if (!cell.skip_reason.empty()) {
        csv << "skipped,,,,\n";
      } else if (!rec.ok) {
        csv << "failed,,,,\n";
      } else {
        std::snprintf(num, sizeof(num), "%.17g,%.17g,%.17g", rec.report.e_mu,
                      rec.report.e_sigma, rec.report.e_kl);
        csv << "ok," << num << ',' << rec.outlier_overlap << '\n';
      }
    }
  }
  csv.close();

  json summary;
  summary["replications"] = reps;
  summary["tau"] = config.tau;
  summary["r"] = config.r;
  summary["base_seed"] = config.base_seed;
  summary["cells"] = json::array();
  int ok_cells = 0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    json jc;
    jc["dataset"] = cell.dataset.name;
    jc["n"] = cell.dataset.n;
    jc["p"] = cell.dataset.p;
    jc["kind"] = kind_name(cell.kind);
    jc["eps"] = cell.eps;
    jc["method"] = method_name(cell.method);
    jc["alpha"] = cell.alpha;
    if (cell.method == EstimateMethod::fir) jc["batch_m"] = cell.batch_m;
    if (!cell.skip_reason.empty()) {
      jc["status"] = "skipped";
      jc["reason"] = cell.skip_reason;
      summary["cells"].push_back(jc);
      continue;
    }
    std::vector<double> e_mu, e_sigma, e_kl, runtime, overlap;
    int failures = 0;
    std::string first_error;
    for (int rep = 0; rep < reps; ++rep) {
      const RunRecord& rec = records[c * static_cast<std::size_t>(reps) +
                                     static_cast<std::size_t>(rep)];
      if (!rec.ok) {
        ++failures;
        if (first_error.empty()) first_error = rec.error;
        continue;
      }
      e_mu.push_back(rec.report.e_mu);
      e_sigma.push_back(rec.report.e_sigma);
      e_kl.push_back(rec.report.e_kl);
      runtime.push_back(rec.report.runtime_seconds);
      overlap.push_back(static_cast<double>(rec.outlier_overlap));
    }
    jc["status"] = e_mu.empty() ? "failed" : "ok";
    jc["failures"] = failures;
    if (!first_error.empty()) jc["first_error"] = first_error;
    if (!e_mu.empty()) {
      ++ok_cells;
      auto put = [&jc](const char* key, const std::vector<double>& xs) {
        const CellStats s = stats_of(xs);
        jc[key] = {{"mean", s.mean}, {"std", s.stddev}, {"formatted", formatted(s)}};
      };
      put("e_mu", e_mu);
      put("e_sigma", e_sigma);
      put("e_kl", e_kl);
      put("runtime_seconds", runtime);
      put("outlier_overlap", overlap);
    }
    summary["cells"].push_back(jc);
  }

  std::ofstream js(out_prefix + ".summary.json");
  if (!js) throw std::runtime_error(out_prefix + ".summary.json: cannot open for writing");
  js << summary.dump(2) << '\n';
  return ok_cells;
}

}  // namespace fir::bench
