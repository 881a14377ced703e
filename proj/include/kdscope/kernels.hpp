#pragma once

// Enumeration kernels. Each has a plain serial reference and an OpenMP
// variant; both return identical results for identical inputs.

#include <optional>
#include <span>
#include <vector>

#include "kdscope/bases.hpp"
#include "kdscope/config.hpp"
#include "kdscope/diagram.hpp"
#include "kdscope/index_set.hpp"

namespace kdscope::kernels {

struct MinorHit {
  int k = 0;
  Mask rows = 0;
  Mask cols = 0;
  Complex value;
};

/// First k x k minor (1 <= k < d) with |det| <= tol, ordered by k, then the
/// row subset, then the column subset (lexicographic).
std::optional<MinorHit> first_vanishing_minor_serial(const ComplexMatrix& u, double tol);
std::optional<MinorHit> first_vanishing_minor_omp(const ComplexMatrix& u, double tol, int threads);
std::optional<MinorHit> first_vanishing_minor(const ComplexMatrix& u, double tol, Exec exec);

struct CellKey {
  Mask s = 0;
  Mask t = 0;
};

struct CellSupport {
  int dim = 0;
  Mask generic_s = 0;  // valid when dim >= 1
  Mask generic_t = 0;

  bool exact(const CellKey& key) const { return dim > 0 && generic_s == key.s && generic_t == key.t; }
};

std::vector<CellSupport> scan_supports_serial(const TransitionMatrix& u, std::span<const CellKey> keys,
                                              const Tolerances& tol);
std::vector<CellSupport> scan_supports_omp(const TransitionMatrix& u, std::span<const CellKey> keys,
                                           const Tolerances& tol, int threads);
std::vector<CellSupport> scan_supports(const TransitionMatrix& u, std::span<const CellKey> keys,
                                       const Tolerances& tol, Exec exec);

std::vector<CellOutcome> classify_cells_serial(const TransitionMatrix& u, std::span<const CellKey> keys,
                                               const SearchConfig& cfg, const Tolerances& tol);
std::vector<CellOutcome> classify_cells_omp(const TransitionMatrix& u, std::span<const CellKey> keys,
                                            const SearchConfig& cfg, const Tolerances& tol, int threads);
std::vector<CellOutcome> classify_cells(const TransitionMatrix& u, std::span<const CellKey> keys,
                                        const SearchConfig& cfg, const Tolerances& tol, Exec exec);

}  // namespace kdscope::kernels
