#include <doctest.h>

#include <algorithm>
#include <tuple>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "kdscope/diagram.hpp"
#include "kdscope/incompat.hpp"
#include "kdscope/kd.hpp"
#include "oracles.hpp"

using namespace kdscope;
using testing::I;

namespace {

std::vector<TransitionMatrix> sample_bases() {
  return {dft(2), dft(3), dft(5), dft(6), mub4(I), mub4(std::polar(1.0, 0.4)), perturbed(mub4(I), 0.1),
          spin_transition(1.0), spin_transition(2.0), spin_transition(1.5)};
}

}  // namespace

TEST_SUITE("kd") {
  TEST_CASE("state construction") {
    CHECK(testing::error_code_of([] { StateVector({1.0, 1.0}); }) == ErrorCode::NotNormalized);
    CHECK(testing::error_code_of([] { StateVector::normalized({0.0, 0.0}); }) == ErrorCode::NotNormalized);
    const StateVector psi({1.0, 0.0, 0.0});
    CHECK(testing::error_code_of([&] { kd_distribution(dft(2), psi); }) == ErrorCode::DimensionMismatch);
  }

  TEST_CASE("dft(2) distributions") {
    const auto u = dft(2);
    const auto q0 = kd_distribution(u, StateVector({1.0, 0.0}));
    CHECK(max_abs_diff(q0.q, ComplexMatrix{{0.5, 0.5}, {0.0, 0.0}}) <= 1e-15);

    const auto q1 = kd_distribution(u, StateVector::normalized({1.0, I}));
    const ComplexMatrix expected{{1.0 - I, 1.0 + I}, {1.0 + I, 1.0 - I}};
    CHECK(max_abs_diff(q1.q, Complex(0.25) * expected) <= 1e-15);
  }

  TEST_CASE("psi_+ for mub4(i)") {
    const auto u = mub4(I);
    const auto [plus, minus] = mub4_edge_states(I);
    const auto q = kd_distribution(u, plus);
    const Complex s = I;
    const ComplexMatrix q_plus{{1.0, 0.0, 1.0, 0.0},
                               {0.0, 0.0, 0.0, 0.0},
                               {0.5 * (1.0 + std::conj(s)), 0.0, 0.5 * (1.0 + s), 0.0},
                               {0.5 * (1.0 - std::conj(s)), 0.0, 0.5 * (1.0 - s), 0.0}};
    // The printed table is the complex conjugate of <a_i|psi><psi|b_j><b_j|a_i>.
    CHECK(max_abs_diff(q.q, Complex(0.25) * q_plus) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(max_abs_diff(q.q, Complex(0.25) * q_plus.adjoint().transpose()) <= 1e-12);
    CHECK(nonclassicality(q) == doctest::Approx((1.0 + std::numbers::sqrt2) / 2.0).epsilon(1e-12));
    CHECK(nonclassicality(u, plus) == doctest::Approx((1.0 + std::numbers::sqrt2) / 2.0).epsilon(1e-12));

    const auto check = is_kd_classical(q, 1e-9);
    CHECK_FALSE(check.classical);
    REQUIRE(check.worst);
    CHECK(std::abs(check.worst->value.imag()) == doctest::Approx(0.125).epsilon(1e-12));

    const auto sup = support(u, plus);
    CHECK(sup.s == IndexSet{0, 2, 3});
    CHECK(sup.t == IndexSet{0, 2});
    CHECK_FALSE(is_kd_classical(kd_distribution(u, minus)).classical);
  }

  TEST_CASE("basis states are classical") {
    for (const auto& u : sample_bases()) {
      for (int i = 0; i < u.dim(); ++i) {
        std::vector<Complex> e(u.dim());
        e[i] = 1.0;
        const auto q = kd_distribution(u, StateVector(e));
        CHECK(nonclassicality(q) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(is_kd_classical(q).classical);
      }
    }
  }

  TEST_CASE("|m,s> states of dft(6)") {
    const auto u = dft(6);
    for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 2}})
      for (int m = 0; m < p; ++m)
        for (int s = 0; s < q; ++s) {
          const auto psi = dft_min_state(6, p, q, m, s);
          const auto dist = kd_distribution(u, psi);
          CHECK(std::abs(nonclassicality(dist) - 1.0) <= 1e-10);
          CHECK(is_kd_classical(dist).classical);
        }
    const auto sup = support(u, dft_min_state(6, 2, 3, 0, 0));
    CHECK(sup.s == IndexSet{0, 2, 4});
    CHECK(sup.t == IndexSet{0, 3});
  }

  TEST_CASE("support of a basis vector") {
    const auto sup = support(dft(5), StateVector({1.0, 0.0, 0.0, 0.0, 0.0}));
    CHECK(sup.n_a() == 1);
    CHECK(sup.n_b() == 5);
    CHECK(sup.total() == 6);
  }

  TEST_CASE("bound_report") {
    const auto r = bound_report(dft(4), dft_min_state(4, 2, 2, 1, 1));
    CHECK(r.n_a * r.n_b == 4);
    CHECK(r.product_lower_bound == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(r.ncc == doctest::Approx(1.0).epsilon(1e-12));

    const auto plus = mub4_edge_states(I).first;
    const auto b = bound_report(mub4(I), plus);
    CHECK(b.ncc == doctest::Approx(1.2071067811865475).epsilon(1e-12));
    CHECK(b.ncc_upper_bound == doctest::Approx(0.5 * std::sqrt(6.0)).epsilon(1e-12));
    CHECK(b.edge_value == 5);

    const auto u = dft(5);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto rr = bound_report(u, random_state(5, seed));
      CHECK(rr.ncc >= 1.0 - 1e-9);
      CHECK(rr.ncc <= std::sqrt(rr.n_a * rr.n_b / 5.0) + 1e-9);
    }
  }

  TEST_CASE("random_state") {
    CHECK(std::ranges::equal(random_state(6, 9).amps(), random_state(6, 9).amps()));
    CHECK_FALSE(std::ranges::equal(random_state(6, 9).amps(), random_state(6, 10).amps()));
    const auto psi = random_state(7, 3);
    double n = 0.0;
    for (auto z : psi.amps()) n += std::norm(z);
    CHECK(std::abs(n - 1.0) <= 1e-12);
    const auto u = dft(5);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto sup = support(u, random_state(5, seed));
      CHECK(sup.n_a() == 5);
      CHECK(sup.n_b() == 5);
    }
  }

  TEST_CASE("kd_distribution matches the bra-ket oracle") {
    std::uint64_t seed = 1;
    for (const auto& u : sample_bases()) {
      const auto psi = random_state(u.dim(), seed++);
      const std::vector<Complex> amps(psi.amps().begin(), psi.amps().end());
      CHECK(max_abs_diff(kd_distribution(u, psi).q, oracle::kd_matrix(u.matrix(), amps)) <= 1e-14);
    }
  }

  TEST_CASE("global phase invariance") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (const auto& u : sample_bases()) {
      const auto psi = random_state(u.dim(), rng());
      std::vector<Complex> rotated(psi.amps().begin(), psi.amps().end());
      const Complex phase = std::polar(1.0, angle(rng));
      for (auto& z : rotated) z *= phase;
      CHECK(max_abs_diff(kd_distribution(u, psi).q, kd_distribution(u, StateVector(rotated)).q) <= 1e-12);
    }
  }

  TEST_CASE("marginal and total-sum identities") {
    const auto bases = sample_bases();
    for (int k = 0; k < 1000; ++k) {
      const auto& u = bases[k % bases.size()];
      const auto psi = random_state(u.dim(), 1000 + k);
      const auto q = kd_distribution(u, psi);
      const auto beta = psi.b_coordinates(u);
      CHECK(std::abs(q.total() - 1.0) <= 1e-10);
      for (int i = 0; i < u.dim(); ++i) {
        CHECK(std::abs(q.row_sum(i) - std::norm(psi[i])) <= 1e-10);
        CHECK(std::abs(q.col_sum(i) - std::norm(beta[i])) <= 1e-10);
      }
    }
  }

  TEST_CASE("N_NC = 1 exactly when the distribution is classical") {
    std::vector<std::pair<TransitionMatrix, StateVector>> cases;
    for (const auto& u : sample_bases())
      for (std::uint64_t seed = 0; seed < 20; ++seed) cases.emplace_back(u, random_state(u.dim(), seed));
    cases.emplace_back(dft(6), dft_min_state(6, 3, 2, 2, 1));
    cases.emplace_back(dft(4), dft_min_state(4, 2, 2, 0, 1));
    cases.emplace_back(mub4(I), mub4_edge_states(I).second);
    cases.emplace_back(dft(6), dft6_two_support(0, 3, 0));
    for (const auto& [u, psi] : cases) {
      const auto q = kd_distribution(u, psi);
      CHECK(is_kd_classical(q, 1e-9).classical == (std::abs(nonclassicality(q) - 1.0) <= 1e-8));
      CHECK(nonclassicality(q) >= 1.0 - 1e-10);
    }
  }

  TEST_CASE("swapping the bases transposes the distribution up to conjugation") {
    const auto u = perturbed(mub4(I), 0.1);
    const auto psi = random_state(4, 77);
    const auto beta = psi.b_coordinates(u);
    const auto q = kd_distribution(u, psi);
    const auto qs = kd_distribution(u.swapped(), StateVector(beta));
    CHECK(max_abs_diff(qs.q, q.q.adjoint()) <= 1e-14);
  }
}
