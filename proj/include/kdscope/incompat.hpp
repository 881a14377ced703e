#pragma once

#include <optional>

#include "kdscope/bases.hpp"
#include "kdscope/config.hpp"
#include "kdscope/index_set.hpp"

namespace kdscope {

/// m = min_ij |U_ij|, M = max_ij |U_ij|.
struct OverlapExtrema {
  double m_ab = 0.0;
  double M_ab = 0.0;
};

/// Index sets (S, T) with |S| + |T| <= d whose subspaces intersect nontrivially.
struct CoincWitness {
  IndexSet s;
  IndexSet t;
};

struct IncompatReport {
  int d = 0;
  OverlapExtrema extrema;
  bool stroinc = false;
  bool coinc = false;
  std::optional<CoincWitness> coinc_witness;
  std::optional<int> n_min;  // only computed for d <= kMaxDiagramDim
  double n_min_lower_bound = 0.0;  // 2 / M
  int edge = 0;                    // d + 1
  int legacy_bound = 0;            // floor(3d/2)
};

inline constexpr int kMaxMinorDim = 12;
inline constexpr int kMaxDiagramDim = 8;

OverlapExtrema overlap_extrema(const TransitionMatrix& u);

/// m > eta and M < 1 - eta.
bool is_stroinc(const TransitionMatrix& u, double eta = 1e-9);

/// True iff no k x k minor (1 <= k < d) has modulus <= tol. d <= 12.
bool is_coinc(const TransitionMatrix& u, double tol = 1e-10, Exec exec = {});

/// Built from the first vanishing minor in (k, rows, cols) lexicographic
/// order: S = complement of its rows, T = its columns. The pair is checked
/// against the null-space computation before it is returned.
std::optional<CoincWitness> coinc_witness(const TransitionMatrix& u, double tol = 1e-10,
                                          Exec exec = {});

/// min over nonzero psi of n_A + n_B, by enumerating subset pairs. d <= 8.
int min_support_uncertainty(const TransitionMatrix& u, const Tolerances& tol = {}, Exec exec = {});

/// Full report. Throws InternalInconsistency when the minor test and the
/// subspace enumeration disagree about complete incompatibility.
IncompatReport incompat_report(const TransitionMatrix& u, const Tolerances& tol = {},
                               Exec exec = {});

constexpr int legacy_bound(int d) { return (3 * d) / 2; }

}  // namespace kdscope
