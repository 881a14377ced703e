#include "kdscope/verify.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "kdscope/diagram.hpp"
#include "kdscope/incompat.hpp"

namespace kdscope {

StateVector sample_structured_state(const TransitionMatrix& u, std::uint64_t seed, double null_tol) {
  const int d = u.dim();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Mask> pick(1, full_mask(d));
  const Mask s = pick(rng), t = pick(rng);
  const auto basis = support_subspace(u, s, t, null_tol);
  if (basis.empty()) return random_state(d, rng());
  std::normal_distribution<double> gauss;
  std::vector<Complex> c(basis.dim());
  for (auto& z : c) {
    const double re = gauss(rng);
    z = Complex(re, gauss(rng));
  }
  return StateVector::normalized(basis.columns().apply(c));
}

PropertySuiteReport run_property_suite(const TransitionMatrix& u, int samples, std::uint64_t seed,
                                       const Tolerances& tol) {
  const int d = u.dim();
  const auto ext = overlap_extrema(u);
  const double product_bound = 1.0 / (ext.M_ab * ext.M_ab);
  constexpr double slack = 1e-9;

  PropertySuiteReport r;
  r.samples = samples;
  r.stroinc = is_stroinc(u, tol.eta);
  r.min_product_slack = std::numeric_limits<double>::infinity();
  r.min_ncc_slack = std::numeric_limits<double>::infinity();

  std::mt19937_64 seeds(seed);
  for (int k = 0; k < samples; ++k) {
    const auto psi = sample_structured_state(u, seeds(), tol.null_tol);
    const auto q = kd_distribution(u, psi);
    const auto beta = psi.b_coordinates(u);

    bool marginals_ok = std::abs(q.total() - 1.0) <= 1e-10;
    for (int i = 0; i < d; ++i) {
      marginals_ok = marginals_ok && std::abs(q.row_sum(i) - std::norm(psi[i])) <= 1e-10;
      marginals_ok = marginals_ok && std::abs(q.col_sum(i) - std::norm(beta[i])) <= 1e-10;
    }
    if (!marginals_ok) ++r.marginal_violations;

    const auto sup = support(u, psi, tol.eta);
    const double product_slack = sup.n_a() * sup.n_b() - product_bound;
    r.min_product_slack = std::min(r.min_product_slack, product_slack);
    if (product_slack < -slack) ++r.product_violations;

    const double ncc = nonclassicality(q);
    const double upper = ext.M_ab * std::sqrt(static_cast<double>(sup.n_a()) * sup.n_b());
    const double ncc_slack = std::min(ncc - 1.0, upper - ncc);
    r.min_ncc_slack = std::min(r.min_ncc_slack, ncc_slack);
    if (ncc_slack < -slack) ++r.ncc_violations;

    if (sup.total() > d + 1) {
      ++r.above_edge;
      if (r.stroinc && is_kd_classical(q, tol.tau).classical) ++r.theorem_violations;
    }
  }
  return r;
}

}  // namespace kdscope
