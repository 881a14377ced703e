#include "kdscope/kernels.hpp"

#include "cell_support.hpp"

namespace kdscope::kernels {

std::vector<CellSupport> scan_supports_serial(const TransitionMatrix& u, std::span<const CellKey> keys,
                                              const Tolerances& tol) {
  std::vector<CellSupport> out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) out[i] = detail::cell_support(u, keys[i], tol);
  return out;
}

std::vector<CellOutcome> classify_cells_serial(const TransitionMatrix& u, std::span<const CellKey> keys,
                                               const SearchConfig& cfg, const Tolerances& tol) {
  std::vector<CellOutcome> out;
  out.reserve(keys.size());
  for (const auto& key : keys) out.push_back(classify_cell(u, key.s, key.t, cfg, tol));
  return out;
}

std::vector<CellSupport> scan_supports(const TransitionMatrix& u, std::span<const CellKey> keys,
                                       const Tolerances& tol, Exec exec) {
  return exec.parallel ? scan_supports_omp(u, keys, tol, exec.threads) : scan_supports_serial(u, keys, tol);
}

std::vector<CellOutcome> classify_cells(const TransitionMatrix& u, std::span<const CellKey> keys,
                                        const SearchConfig& cfg, const Tolerances& tol, Exec exec) {
  return exec.parallel ? classify_cells_omp(u, keys, cfg, tol, exec.threads)
                       : classify_cells_serial(u, keys, cfg, tol);
}

}  // namespace kdscope::kernels
