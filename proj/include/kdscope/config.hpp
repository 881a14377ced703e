#pragma once

#include <cstdint>

namespace kdscope {

/// Numerical thresholds shared by the analysis modules.
struct Tolerances {
  double eta = 1e-9;        // amplitude modulus below which a coordinate counts as zero
  double tau = 1e-9;        // classicality test on individual KD entries of exact states
  double tau_class = 1e-6;  // classicality threshold on N_NC - 1 for search results
  double minor_tol = 1e-10; // |minor| at or below this counts as vanishing
  double null_tol = 1e-10;  // relative singular value cutoff for null spaces
};

/// Budget and seed of the classicality search run on each diagram cell.
struct SearchConfig {
  std::uint64_t seed = 0;
  int restarts = 50;
  int max_iter = 2000;
  double conv_tol = 1e-10;
  // Minimum modulus, on the cell's support, that a search result must keep.
  // Below it the minimizer is sliding onto a state of smaller support.
  double support_margin = 1e-2;
};

/// How the enumeration kernels run: the serial reference or the OpenMP variant.
struct Exec {
  bool parallel = false;
  int threads = 0;  // 0 lets OpenMP decide

  static Exec serial() { return {}; }
  static Exec omp(int threads = 0) { return {true, threads}; }
};

}  // namespace kdscope
