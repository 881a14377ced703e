#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "kdscope/linalg.hpp"
#include "oracles.hpp"

using namespace kdscope;
using testing::I;

TEST_SUITE("linalg") {
  TEST_CASE("hermitian_eig small cases") {
    auto id = hermitian_eig(ComplexMatrix::identity(3));
    for (double v : id.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

    auto two = hermitian_eig(ComplexMatrix{{0.0, I}, {-I, 0.0}});
    CHECK(two.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(two.values[1] == doctest::Approx(1.0).epsilon(1e-14));

    auto diag = hermitian_eig(ComplexMatrix{{3.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 2.0}});
    CHECK(diag.values == std::vector<double>{1.0, 2.0, 3.0});
  }

  TEST_CASE("hermitian_eig reconstructs random Hermitian matrices") {
    std::mt19937_64 rng(11);
    for (int d = 1; d <= 10; ++d) {
      const auto h = testing::random_hermitian(d, rng);
      const auto e = hermitian_eig(h);
      ComplexMatrix lam(d, d);
      for (int k = 0; k < d; ++k) lam(k, k) = e.values[k];
      CHECK(max_abs_diff(h, e.vectors * lam * e.vectors.adjoint()) <= 1e-10 * (1 + h.max_abs()));
      CHECK(unitarity_residual(e.vectors) <= 1e-10);
      CHECK(std::is_sorted(e.values.begin(), e.values.end()));
    }
  }

  TEST_CASE("hermitian_eig rejects bad input") {
    CHECK(testing::error_code_of([] { hermitian_eig(ComplexMatrix{{0.0, 1.0}, {2.0, 0.0}}); }) ==
          ErrorCode::NotHermitian);
    CHECK(testing::error_code_of([] { hermitian_eig(ComplexMatrix(2, 3)); }) == ErrorCode::NotSquare);
  }

  TEST_CASE("unitary_from_generator") {
    std::mt19937_64 rng(5);
    const auto l = testing::random_hermitian(4, rng);
    CHECK(max_abs_diff(unitary_from_generator(l, 0.0), ComplexMatrix::identity(4)) <= 1e-14);

    const double eps = 0.37;
    const auto r = unitary_from_generator(ComplexMatrix{{0.0, I}, {-I, 0.0}}, eps);
    const ComplexMatrix expected{{std::cos(eps), std::sin(eps)}, {-std::sin(eps), std::cos(eps)}};
    CHECK(max_abs_diff(r, expected) <= 1e-14);

    const auto u = unitary_from_generator(l, 0.3);
    CHECK(unitarity_residual(u) <= 1e-10);
    CHECK(max_abs_diff(u, oracle::expm(Complex(0.0, -0.3) * l)) <= 1e-12);
  }

  TEST_CASE("unitary_from_generator is a one-parameter group") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 5; ++trial) {
      const auto l = testing::random_hermitian(5, rng);
      const auto lhs = unitary_from_generator(l, 0.4) * unitary_from_generator(l, -1.1);
      CHECK(max_abs_diff(lhs, unitary_from_generator(l, -0.7)) <= 1e-9);
    }
  }

  TEST_CASE("minor examples") {
    const ComplexMatrix m{{1.0, 2.0}, {3.0, Complex(4.0, 1.0)}};
    const std::vector<int> r1{1}, c1{0};
    CHECK(minor(m, r1, c1) == Complex(3.0));

    const double h = 1.0 / std::numbers::sqrt2;
    const ComplexMatrix dft2{{h, h}, {h, -h}};
    const std::vector<int> both{0, 1};
    CHECK(std::abs(minor(dft2, both, both) - Complex(-1.0)) <= 1e-15);

    const ComplexMatrix mub{{1.0, 1.0, 1.0, 1.0}, {1.0, 1.0, -1.0, -1.0}, {1.0, -1.0, I, -I}, {1.0, -1.0, -I, I}};
    CHECK(std::abs(minor(Complex(0.5) * mub, both, both)) <= 1e-15);

    const std::vector<int> three{0, 1, 2};
    CHECK(testing::error_code_of([&] { minor(mub, three, both); }) == ErrorCode::SizeMismatch);
    const std::vector<int> bad{0, 7};
    CHECK(testing::error_code_of([&] { minor(mub, bad, both); }) == ErrorCode::IndexOutOfRange);
  }

  TEST_CASE("minor agrees with the Leibniz expansion and flips sign under row swaps") {
    std::mt19937_64 rng(3);
    const auto a = testing::random_matrix(6, 6, rng);
    const std::vector<int> rows{0, 2, 3, 5}, cols{1, 2, 4, 5};
    const Complex m = minor(a, rows, cols);
    CHECK(std::abs(m - oracle::leibniz_det(a.submatrix(rows, cols))) <= 1e-12 * (1 + std::abs(m)));
    const std::vector<int> swapped{2, 0, 3, 5};
    CHECK(std::abs(minor(a, swapped, cols) + m) <= 1e-12 * (1 + std::abs(m)));
    const std::vector<int> cols_perm{4, 1, 5, 2};
    CHECK(std::abs(std::abs(minor(a, rows, cols_perm)) - std::abs(m)) <= 1e-12 * (1 + std::abs(m)));
  }

  TEST_CASE("null space examples") {
    const auto one = orthonormal_null_space(ComplexMatrix{{1.0, 1.0}});
    REQUIRE(one.dim() == 1);
    const auto v = one.column(0);
    CHECK(std::abs(v[0] + v[1]) <= 1e-14);
    CHECK(std::abs(std::abs(v[0]) - 1.0 / std::numbers::sqrt2) <= 1e-14);

    CHECK(orthonormal_null_space(ComplexMatrix(2, 3)).dim() == 3);

    // Rows e_i^dagger (i = 1, 3, 5) and the conjugated DFT(6) columns 1, 2, 4, 5.
    ComplexMatrix c(7, 6);
    int r = 0;
    for (int i : {1, 3, 5}) c(r++, i) = 1.0;
    for (int j : {1, 2, 4, 5}) {
      for (int i = 0; i < 6; ++i) c(r, i) = std::polar(1.0 / std::sqrt(6.0), -2.0 * std::numbers::pi * i * j / 6.0);
      ++r;
    }
    const auto basis = orthonormal_null_space(c);
    REQUIRE(basis.dim() == 1);
    const auto w = basis.column(0);
    const Complex phase = w[0] / std::abs(w[0]);
    for (int i = 0; i < 6; ++i) {
      const double expected = i % 2 == 0 ? 1.0 / std::sqrt(3.0) : 0.0;
      CHECK(std::abs(w[i] / phase - expected) <= 1e-12);
    }
  }

  TEST_CASE("null space properties on random rank-deficient matrices") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
      const int cols = 2 + trial % 7;
      const int rank = trial % cols;
      const int rows = 1 + (trial * 7) % 9;
      const auto c = testing::random_matrix(rows, rank, rng) * testing::random_matrix(rank, cols, rng);
      const auto basis = orthonormal_null_space(c);
      const auto sv = singular_values(c);
      const double smax = sv.empty() ? 0.0 : sv.front();
      const int expected_rank = rank == 0 ? 0 : oracle::rank(c, 1e-8 * (1 + smax));
      CHECK(static_cast<int>(basis.dim()) + expected_rank == cols);
      const auto& b = basis.columns();
      CHECK(max_abs_diff(b.adjoint() * b, ComplexMatrix::identity(basis.dim())) <= 1e-10);
      if (basis.dim() > 0 && rank > 0) CHECK((c * b).max_abs() <= 10 * 1e-10 * smax);
    }
  }

  TEST_CASE("singular values of a diagonal matrix") {
    const auto sv = singular_values(ComplexMatrix{{3.0, 0.0}, {0.0, -5.0}, {0.0, 0.0}});
    REQUIRE(sv.size() == 2);
    CHECK(sv[0] == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(sv[1] == doctest::Approx(3.0).epsilon(1e-14));
  }
}
