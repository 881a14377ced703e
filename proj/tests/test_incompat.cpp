#include <doctest.h>

#include <algorithm>
#include <tuple>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "kdscope/diagram.hpp"
#include "kdscope/incompat.hpp"
#include "oracles.hpp"

using namespace kdscope;
using testing::I;

namespace {

std::vector<TransitionMatrix> constructors_up_to_6() {
  return {dft(2), dft(3), dft(4), dft(5), dft(6), mub4(I), mub4(std::polar(1.0, 1.0)), perturbed(mub4(I), 0.1),
          spin_transition(0.5), spin_transition(1.0), spin_transition(1.5), spin_transition(2.0), spin_transition(2.5)};
}

ComplexMatrix permute_and_phase(const ComplexMatrix& u, std::mt19937_64& rng) {
  const int d = static_cast<int>(u.rows());
  std::vector<int> rows(d), cols(d);
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  std::shuffle(rows.begin(), rows.end(), rng);
  std::shuffle(cols.begin(), cols.end(), rng);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Complex> d1(d), d2(d);
  for (auto& z : d1) z = std::polar(1.0, angle(rng));
  for (auto& z : d2) z = std::polar(1.0, angle(rng));
  ComplexMatrix out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = d1[i] * u(rows[i], cols[j]) * d2[j];
  return out;
}

}  // namespace

TEST_SUITE("incompat") {
  TEST_CASE("overlap extrema") {
    for (int d = 2; d <= 9; ++d) {
      const auto e = overlap_extrema(dft(d));
      CHECK(e.m_ab == doctest::Approx(1.0 / std::sqrt(d)).epsilon(1e-14));
      CHECK(e.M_ab == doctest::Approx(1.0 / std::sqrt(d)).epsilon(1e-14));
    }
    const auto spin = overlap_extrema(spin_transition(2.0));
    CHECK(spin.m_ab <= 1e-15);
    CHECK(spin.M_ab * spin.M_ab == doctest::Approx(3.0 / 8.0).epsilon(1e-14));
    const auto mub = overlap_extrema(mub4(I));
    CHECK(mub.m_ab == 0.5);
    CHECK(mub.M_ab == 0.5);
    for (const auto& u : constructors_up_to_6()) {
      const auto e = overlap_extrema(u);
      const double mid = 1.0 / std::sqrt(u.dim());
      CHECK(e.m_ab <= mid + 1e-12);
      CHECK(mid <= e.M_ab + 1e-12);
      CHECK(e.M_ab <= 1.0 + 1e-12);
    }
  }

  TEST_CASE("is_stroinc") {
    CHECK(is_stroinc(dft(5)));
    CHECK_FALSE(is_stroinc(spin_transition(2.0)));
    CHECK_FALSE(is_stroinc(TransitionMatrix::from_matrix(ComplexMatrix::identity(3))));
  }

  TEST_CASE("DFT is COINC exactly in prime dimension") {
    for (int d : {2, 3, 5, 7, 11}) CHECK(is_coinc(dft(d)));
    for (int d : {4, 6, 8, 9}) CHECK_FALSE(is_coinc(dft(d)));
    for (double theta : {0.0, 0.5, 1.5707963267948966, 2.5, 3.14159})
      CHECK_FALSE(is_coinc(mub4(std::polar(1.0, theta))));
    CHECK(testing::error_code_of([] { is_coinc(dft(13)); }) == ErrorCode::DimensionTooLarge);
  }

  TEST_CASE("coinc_witness") {
    const auto w = coinc_witness(mub4(I));
    REQUIRE(w);
    CHECK(w->s == IndexSet{2, 3});
    CHECK(w->t == IndexSet{0, 1});
    CHECK(support_subspace(mub4(I), w->s, w->t).dim() >= 1);

    CHECK_FALSE(coinc_witness(dft(5)));

    const auto w6 = coinc_witness(dft(6));
    REQUIRE(w6);
    CHECK(w6->s.size() + w6->t.size() <= 6);
    CHECK(support_subspace(dft(6), w6->s, w6->t).dim() >= 1);

    // Spin matrices have zero entries, so a 1-minor vanishes first.
    const auto ws = coinc_witness(spin_transition(1.0));
    REQUIRE(ws);
    CHECK(ws->s.size() == 2);
    CHECK(ws->t.size() == 1);
  }

  TEST_CASE("min_support_uncertainty") {
    CHECK(min_support_uncertainty(mub4(I)) == 4);
    CHECK(min_support_uncertainty(dft(5)) == 6);
    CHECK(min_support_uncertainty(dft(6)) == 5);
    CHECK(min_support_uncertainty(spin_transition(2.0)) == 4);
    CHECK(testing::error_code_of([] { min_support_uncertainty(dft(9)); }) == ErrorCode::DimensionTooLarge);
  }

  TEST_CASE("report invariants over the constructors") {
    for (const auto& u : constructors_up_to_6()) {
      const auto r = incompat_report(u);
      REQUIRE(r.n_min);
      CHECK(*r.n_min >= static_cast<int>(std::ceil(r.n_min_lower_bound - 1e-9)));
      CHECK(r.coinc == (*r.n_min == u.dim() + 1));
      if (r.coinc) CHECK(r.stroinc);
      CHECK(r.edge == u.dim() + 1);
      CHECK(r.legacy_bound == (3 * u.dim()) / 2);
      CHECK(r.coinc == !r.coinc_witness.has_value());
    }
    CHECK_FALSE(incompat_report(dft(11)).n_min);
  }

  TEST_CASE("COINC is invariant under relabeling and phases") {
    std::mt19937_64 rng(17);
    for (const auto& u : constructors_up_to_6()) {
      const bool base = is_coinc(u);
      for (int k = 0; k < 3; ++k)
        CHECK(is_coinc(TransitionMatrix::from_matrix(permute_and_phase(u.matrix(), rng))) == base);
    }
  }

  TEST_CASE("STROINC and COINC coincide in dimensions 2 and 3") {
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 200; ++k) {
      const int d = 2 + k % 2;
      const auto u = TransitionMatrix::from_matrix(oracle::random_unitary(d, rng));
      CHECK(is_stroinc(u) == is_coinc(u));
      CHECK(is_coinc(u) == (min_support_uncertainty(u) == d + 1));
    }
    const double h = 1.0 / std::numbers::sqrt2;
    const auto block = TransitionMatrix::from_matrix(ComplexMatrix{{1.0, 0.0, 0.0}, {0.0, h, h}, {0.0, h, -h}});
    CHECK_FALSE(is_stroinc(block));
    CHECK_FALSE(is_coinc(block));
  }

  TEST_CASE("legacy bound") {
    CHECK(legacy_bound(4) == 6);
    CHECK(legacy_bound(5) == 7);
    CHECK(legacy_bound(6) == 9);
  }
}
