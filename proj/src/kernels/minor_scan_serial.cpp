#include "kdscope/kernels.hpp"

#include "small_det.hpp"

namespace kdscope::kernels {

std::optional<MinorHit> first_vanishing_minor_serial(const ComplexMatrix& u, double tol) {
  const int d = static_cast<int>(u.rows());
  int rows[detail::kMaxK], cols[detail::kMaxK];
  for (int k = 1; k < d; ++k) {
    const auto subsets = lexicographic_subsets(d, k);
    for (Mask r : subsets) {
      detail::fill_indices(r, rows);
      for (Mask c : subsets) {
        detail::fill_indices(c, cols);
        const Complex v = detail::subdet(u, rows, cols, k);
        if (std::abs(v) <= tol) return MinorHit{k, r, c, v};
      }
    }
  }
  return std::nullopt;
}

std::optional<MinorHit> first_vanishing_minor(const ComplexMatrix& u, double tol, Exec exec) {
  return exec.parallel ? first_vanishing_minor_omp(u, tol, exec.threads) : first_vanishing_minor_serial(u, tol);
}

}  // namespace kdscope::kernels
