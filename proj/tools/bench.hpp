#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fir/robust_pca.hpp"
#include "fir/simdata.hpp"
#include "fir/types.hpp"

namespace fir::bench {

struct Dataset {
  std::string name;
  Index n = 0;
  Index p = 0;
};

struct BenchConfig {
  std::vector<Dataset> datasets;
  std::vector<OutlierKind> kinds;          // clean/cluster/radial/point
  std::vector<double> eps_list;
  std::vector<EstimateMethod> methods;
  int replications = 100;
  double alpha = -1.0;   // < 0: per-cell default, 0.5 when eps >= 0.25 else 0.75
  Index batch_m = 0;     // 0: max(p + 1, n / 10), clamped below alpha * n
  Index tau = 500;
  double r = 2.0;
  std::uint64_t base_seed = 0;
};

BenchConfig load_config(const std::string& path);

/// Runs the full grid and writes <out>.results.csv and <out>.summary.json.
/// Replications run on up to `threads` workers (0 = hardware default);
/// results are identical regardless of worker count. Returns the number
/// of successful cells.
int run_bench(const BenchConfig& config, const std::string& out_prefix, int threads);

}  // namespace fir::bench
