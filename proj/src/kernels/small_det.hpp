#pragma once

#include <array>
#include <cmath>

#include "kdscope/index_set.hpp"
#include "kdscope/linalg.hpp"

namespace kdscope::kernels::detail {

inline constexpr int kMaxK = 16;

// Determinant of the submatrix of u on the given (sorted) rows and columns,
// LU with partial pivoting on a stack buffer.
inline Complex subdet(const ComplexMatrix& u, const int* rows, const int* cols, int k) {
  std::array<Complex, 16 * 16> a;
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) a[r * k + c] = u(rows[r], cols[c]);
  Complex det = 1.0;
  for (int p = 0; p < k; ++p) {
    int piv = p;
    double best = std::abs(a[p * k + p]);
    for (int r = p + 1; r < k; ++r)
      if (const double v = std::abs(a[r * k + p]); v > best) {
        best = v;
        piv = r;
      }
    if (best == 0.0) return 0.0;
    if (piv != p) {
      for (int c = 0; c < k; ++c) std::swap(a[p * k + c], a[piv * k + c]);
      det = -det;
    }
    const Complex d = a[p * k + p];
    det *= d;
    for (int r = p + 1; r < k; ++r) {
      const Complex f = a[r * k + p] / d;
      if (f == 0.0) continue;
      for (int c = p + 1; c < k; ++c) a[r * k + c] -= f * a[p * k + c];
    }
  }
  return det;
}

inline int fill_indices(Mask m, int* out) {
  int n = 0;
  for (int i = 0; m != 0; ++i, m >>= 1)
    if (m & 1u) out[n++] = i;
  return n;
}

}  // namespace kdscope::kernels::detail
