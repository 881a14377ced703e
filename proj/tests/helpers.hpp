#pragma once

#include <random>

#include "kdscope/bases.hpp"
#include "kdscope/error.hpp"
#include "kdscope/kd.hpp"

namespace testing {

using kdscope::Complex;
using kdscope::ComplexMatrix;

inline const Complex I{0.0, 1.0};

inline ComplexMatrix random_hermitian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix h(d, d);
  for (int i = 0; i < d; ++i) {
    h(i, i) = g(rng);
    for (int j = i + 1; j < d; ++j) {
      const double re = g(rng);
      h(i, j) = Complex(re, g(rng));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

inline ComplexMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = g(rng);
      m(i, j) = Complex(re, g(rng));
    }
  return m;
}

template <class F>
kdscope::ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const kdscope::Error& e) {
    return e.code();
  }
  FAIL("expected kdscope::Error");
  return kdscope::ErrorCode::InternalInconsistency;
}

}  // namespace testing
