#include "kdscope/kd.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "kdscope/error.hpp"
#include "kdscope/incompat.hpp"

namespace kdscope {

namespace {

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amps) : amps_(std::move(amps)) {
  if (amps_.empty()) throw Error(ErrorCode::DimensionTooSmall, "empty state");
  const double n = std::sqrt(norm2(amps_));
  if (!(std::abs(n - 1.0) <= 1e-10)) {
    std::ostringstream msg;
    msg << "state norm " << n << " differs from 1";
    throw Error(ErrorCode::NotNormalized, msg.str());
  }
}

StateVector StateVector::normalized(std::vector<Complex> amps) {
  const double n = std::sqrt(norm2(amps));
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::NotNormalized, "cannot normalize the zero vector");
  for (auto& z : amps) z /= n;
  return StateVector(std::move(amps));
}

StateVector StateVector::from_b_coordinates(const TransitionMatrix& u, std::span<const Complex> b_amps) {
  return normalized(u.matrix().apply(b_amps));
}

std::vector<Complex> StateVector::b_coordinates(const TransitionMatrix& u) const {
  if (u.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "state and transition matrix dimensions differ");
  return u.matrix().apply_adjoint(amps_);
}

Complex KDDistribution::total() const {
  Complex s = 0.0;
  for (const auto& z : q.data()) s += z;
  return s;
}

Complex KDDistribution::row_sum(int i) const {
  Complex s = 0.0;
  for (const auto& z : q.row(i)) s += z;
  return s;
}

Complex KDDistribution::col_sum(int j) const {
  Complex s = 0.0;
  for (std::size_t i = 0; i < q.rows(); ++i) s += q(i, j);
  return s;
}

KDDistribution kd_distribution(const TransitionMatrix& u, const StateVector& psi) {
  const int d = u.dim();
  const auto beta = psi.b_coordinates(u);
  KDDistribution out{ComplexMatrix(d, d)};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.q(i, j) = psi[i] * std::conj(beta[j]) * std::conj(u(i, j));
  return out;
}

double nonclassicality(const KDDistribution& q) {
  double s = 0.0;
  for (const auto& z : q.q.data()) s += std::abs(z);
  return s;
}

double nonclassicality(const TransitionMatrix& u, const StateVector& psi) {
  const int d = u.dim();
  const auto beta = psi.b_coordinates(u);
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    const double ai = std::abs(psi[i]);
    if (ai == 0.0) continue;
    double row = 0.0;
    for (int j = 0; j < d; ++j) row += std::abs(u(i, j)) * std::abs(beta[j]);
    s += ai * row;
  }
  return s;
}

ClassicalityCheck is_kd_classical(const KDDistribution& q, double tau) {
  ClassicalityCheck out;
  double worst = 0.0;
  for (std::size_t i = 0; i < q.q.rows(); ++i)
    for (std::size_t j = 0; j < q.q.cols(); ++j) {
      const Complex z = q.q(i, j);
      const double violation = std::max(std::abs(z.imag()), -z.real());
      if (violation > tau && violation > worst) {
        worst = violation;
        out.classical = false;
        out.worst = ClassicalityWitness{static_cast<int>(i), static_cast<int>(j), z};
      }
    }
  return out;
}

SupportProfile support(const TransitionMatrix& u, const StateVector& psi, double eta) {
  const auto beta = psi.b_coordinates(u);
  SupportProfile p;
  p.eta = eta;
  for (int i = 0; i < psi.dim(); ++i)
    if (std::abs(psi[i]) > eta) p.s.push_back(i);
  for (int j = 0; j < u.dim(); ++j)
    if (std::abs(beta[j]) > eta) p.t.push_back(j);
  return p;
}

BoundReport bound_report(const TransitionMatrix& u, const StateVector& psi, double eta) {
  const auto sup = support(u, psi, eta);
  const auto ext = overlap_extrema(u);
  BoundReport r;
  r.n_a = sup.n_a();
  r.n_b = sup.n_b();
  r.product_lower_bound = 1.0 / (ext.M_ab * ext.M_ab);
  r.ncc = nonclassicality(kd_distribution(u, psi));
  r.ncc_upper_bound = ext.M_ab * std::sqrt(static_cast<double>(r.n_a) * r.n_b);
  r.edge_value = u.dim() + 1;

  constexpr double slack = 1e-9;
  if (r.n_a * r.n_b < r.product_lower_bound - slack || r.ncc < 1.0 - slack || r.ncc > r.ncc_upper_bound + slack) {
    std::ostringstream msg;
    msg << "bound chain violated: n_a=" << r.n_a << " n_b=" << r.n_b << " 1/M^2=" << r.product_lower_bound
        << " N_NC=" << r.ncc << " M sqrt(n_a n_b)=" << r.ncc_upper_bound;
    throw Error(ErrorCode::InternalInconsistency, msg.str());
  }
  return r;
}

StateVector random_state(int d, std::uint64_t seed) {
  if (d < 1) throw Error(ErrorCode::DimensionTooSmall, "random_state needs d >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Complex> amps(d);
  for (auto& z : amps) {
    const double re = gauss(rng);
    z = Complex(re, gauss(rng));
  }
  return StateVector::normalized(std::move(amps));
}

}  // namespace kdscope
