#include <omp.h>

#include <limits>

#include "kdscope/kernels.hpp"
#include "small_det.hpp"

namespace kdscope::kernels {

std::optional<MinorHit> first_vanishing_minor_omp(const ComplexMatrix& u, double tol, int threads) {
  const int d = static_cast<int>(u.rows());
  const int nt = threads > 0 ? threads : omp_get_max_threads();
  for (int k = 1; k < d; ++k) {
    const auto subsets = lexicographic_subsets(d, k);
    const long n = static_cast<long>(subsets.size());
    // Smallest linear index (row * n + col) of a vanishing minor seen so far.
    // Every index below the final value is examined, so the result matches
    // the serial scan.
    long best = std::numeric_limits<long>::max();
    Complex best_value = 0.0;
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
    for (long ri = 0; ri < n; ++ri) {
      long cur;
#pragma omp atomic read
      cur = best;
      if (ri * n >= cur) continue;
      int rows[detail::kMaxK], cols[detail::kMaxK];
      detail::fill_indices(subsets[ri], rows);
      for (long ci = 0; ci < n; ++ci) {
        const long idx = ri * n + ci;
        if (idx >= cur) break;
        detail::fill_indices(subsets[ci], cols);
        const Complex v = detail::subdet(u, rows, cols, k);
        if (std::abs(v) <= tol) {
#pragma omp critical(kdscope_minor_hit)
          {
            if (idx < best) {
              best = idx;
              best_value = v;
            }
          }
          break;
        }
      }
    }
    if (best != std::numeric_limits<long>::max())
      return MinorHit{k, subsets[best / n], subsets[best % n], best_value};
  }
  return std::nullopt;
}

}  // namespace kdscope::kernels
