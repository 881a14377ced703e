#include <omp.h>

#include <optional>

#include "cell_support.hpp"
#include "kdscope/kernels.hpp"

namespace kdscope::kernels {

std::vector<CellSupport> scan_supports_omp(const TransitionMatrix& u, std::span<const CellKey> keys,
                                           const Tolerances& tol, int threads) {
  const int nt = threads > 0 ? threads : omp_get_max_threads();
  const long n = static_cast<long>(keys.size());
  std::vector<CellSupport> out(keys.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(nt)
  for (long i = 0; i < n; ++i) out[i] = detail::cell_support(u, keys[i], tol);
  return out;
}

std::vector<CellOutcome> classify_cells_omp(const TransitionMatrix& u, std::span<const CellKey> keys,
                                            const SearchConfig& cfg, const Tolerances& tol, int threads) {
  const int nt = threads > 0 ? threads : omp_get_max_threads();
  const long n = static_cast<long>(keys.size());
  std::vector<std::optional<CellOutcome>> slots(keys.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (long i = 0; i < n; ++i) slots[i] = classify_cell(u, keys[i].s, keys[i].t, cfg, tol);
  std::vector<CellOutcome> out;
  out.reserve(keys.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace kdscope::kernels
