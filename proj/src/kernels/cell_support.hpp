#pragma once

#include "kdscope/diagram.hpp"
#include "kdscope/kernels.hpp"

namespace kdscope::kernels::detail {

inline CellSupport cell_support(const TransitionMatrix& u, const CellKey& key, const Tolerances& tol) {
  CellSupport out;
  const auto basis = support_subspace(u, key.s, key.t, tol.null_tol);
  out.dim = static_cast<int>(basis.dim());
  if (out.dim > 0) {
    const auto sup = generic_support(basis, u, tol.eta);
    out.generic_s = to_mask(sup.s);
    out.generic_t = to_mask(sup.t);
  }
  return out;
}

}  // namespace kdscope::kernels::detail
