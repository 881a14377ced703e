#include "kdscope/incompat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kdscope/diagram.hpp"
#include "kdscope/error.hpp"
#include "kdscope/kernels.hpp"

namespace kdscope {

OverlapExtrema overlap_extrema(const TransitionMatrix& u) {
  OverlapExtrema e{std::abs(u(0, 0)), std::abs(u(0, 0))};
  for (int i = 0; i < u.dim(); ++i)
    for (int j = 0; j < u.dim(); ++j) {
      const double a = std::abs(u(i, j));
      e.m_ab = std::min(e.m_ab, a);
      e.M_ab = std::max(e.M_ab, a);
    }
  return e;
}

bool is_stroinc(const TransitionMatrix& u, double eta) {
  const auto e = overlap_extrema(u);
  return e.m_ab > eta && e.M_ab < 1.0 - eta;
}

namespace {

void require_minor_dim(const TransitionMatrix& u) {
  if (u.dim() > kMaxMinorDim) throw Error(ErrorCode::DimensionTooLarge, "minor enumeration is capped at d <= 12");
}

}  // namespace

bool is_coinc(const TransitionMatrix& u, double tol, Exec exec) {
  require_minor_dim(u);
  return !kernels::first_vanishing_minor(u.matrix(), tol, exec).has_value();
}

std::optional<CoincWitness> coinc_witness(const TransitionMatrix& u, double tol, Exec exec) {
  require_minor_dim(u);
  const auto hit = kernels::first_vanishing_minor(u.matrix(), tol, exec);
  if (!hit) return std::nullopt;
  const Mask s = full_mask(u.dim()) & ~hit->rows;
  const Mask t = hit->cols;
  if (support_subspace(u, s, t).empty()) {
    std::ostringstream msg;
    msg << "vanishing " << hit->k << "x" << hit->k << " minor (|det| = " << std::abs(hit->value)
        << ") but the support subspace is trivial";
    throw Error(ErrorCode::InternalInconsistency, msg.str());
  }
  return CoincWitness{to_index_set(s), to_index_set(t)};
}

int min_support_uncertainty(const TransitionMatrix& u, const Tolerances& tol, Exec exec) {
  const int d = u.dim();
  if (d > kMaxDiagramDim) throw Error(ErrorCode::DimensionTooLarge, "subset enumeration is capped at d <= 8");
  for (int n = 2; n <= 2 * d; ++n) {
    std::vector<kernels::CellKey> keys;
    for (int a = std::max(1, n - d); a <= std::min(d, n - 1); ++a)
      for (Mask s : lexicographic_subsets(d, a))
        for (Mask t : lexicographic_subsets(d, n - a)) keys.push_back({s, t});
    const auto sup = kernels::scan_supports(u, keys, tol, exec);
    if (std::any_of(sup.begin(), sup.end(), [](const auto& c) { return c.dim > 0; })) return n;
  }
  throw Error(ErrorCode::InternalInconsistency, "no support pair admits a nonzero state");
}

IncompatReport incompat_report(const TransitionMatrix& u, const Tolerances& tol, Exec exec) {
  const int d = u.dim();
  IncompatReport r;
  r.d = d;
  r.extrema = overlap_extrema(u);
  r.stroinc = is_stroinc(u, tol.eta);
  r.coinc_witness = coinc_witness(u, tol.minor_tol, exec);
  r.coinc = !r.coinc_witness.has_value();
  if (d <= kMaxDiagramDim) r.n_min = min_support_uncertainty(u, tol, exec);
  r.n_min_lower_bound = 2.0 / r.extrema.M_ab;
  r.edge = d + 1;
  r.legacy_bound = legacy_bound(d);
  if (r.n_min && r.coinc != (*r.n_min == d + 1)) {
    std::ostringstream msg;
    msg << "minor test says " << (r.coinc ? "COINC" : "not COINC") << " but n_min = " << *r.n_min;
    throw Error(ErrorCode::InternalInconsistency, msg.str());
  }
  return r;
}

}  // namespace kdscope
