#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "kdscope/bases.hpp"
#include "kdscope/config.hpp"
#include "kdscope/index_set.hpp"
#include "kdscope/kd.hpp"
#include "kdscope/linalg.hpp"

namespace kdscope {

enum class PointClass { Empty, Classical, Nonclassical, Mixed };

std::string_view to_string(PointClass c);

/// One (n_A, n_B) cell of an uncertainty diagram. Nonclassical means the
/// configured search found no classical state there, not a proof of absence.
struct DiagramPoint {
  int n_a = 0;
  int n_b = 0;
  PointClass classification = PointClass::Empty;
  double min_ncc_found = 0.0;
  int cells = 0;  // subset pairs (S, T) realizing the point
  std::optional<StateVector> classical_witness;
  std::optional<StateVector> nonclassical_witness;
};

struct Diagram {
  int d = 0;
  std::vector<DiagramPoint> points;  // realized points, sorted by (n_a, n_b)
  double hyperbola_constant = 0.0;   // 1 / M^2
  int edge = 0;                      // d + 1
  int n_min = 0;
  bool stroinc = false;

  const DiagramPoint* find(int n_a, int n_b) const;
  PointClass classification_at(int n_a, int n_b) const;

  /// Every lattice point 1..d x 1..d, EMPTY where nothing is realized.
  std::vector<DiagramPoint> grid() const;
};

/// Classification outcome of a single subset pair.
struct CellOutcome {
  Mask s = 0;
  Mask t = 0;
  int dim = 0;
  double min_ncc = 0.0;
  std::optional<StateVector> classical;
  std::optional<StateVector> nonclassical;
};

/// Pi_A(S)H intersected with Pi_B(T)H, as an orthonormal basis in A-coordinates.
SubspaceBasis support_subspace(const TransitionMatrix& u, const IndexSet& s, const IndexSet& t,
                               double null_tol = 1e-10);
SubspaceBasis support_subspace(const TransitionMatrix& u, Mask s, Mask t, double null_tol = 1e-10);

/// Support pattern of a generic vector of the subspace: coordinate i is in
/// the support iff row i of the basis matrix has norm > eta (likewise for the
/// B-coordinates U^dagger basis). Throws EmptySubspace for dim 0.
SupportProfile generic_support(const SubspaceBasis& basis, const TransitionMatrix& u,
                               double eta = 1e-9);

struct SubspaceMinimum {
  double value = 0.0;
  StateVector argmin;
  bool full_support = true;  // argmin keeps the subspace's generic support
};

/// Multistart Nelder-Mead minimization of N_NC over unit vectors of the
/// subspace, on 2 * dim real coefficients. Starts are drawn from cfg.seed.
/// Coordinates on the generic support are kept above cfg.support_margin by an
/// exact penalty, so the search cannot report a state of smaller support.
SubspaceMinimum minimize_ncc_over_subspace(const TransitionMatrix& u, const SubspaceBasis& basis,
                                           const SearchConfig& cfg, double eta = 1e-9);

/// Seed of the search on cell (S, T), derived only from (seed, S, T).
std::uint64_t cell_seed(std::uint64_t seed, Mask s, Mask t);

/// Classifies the states of exact support (S, T). The caller guarantees the
/// cell's generic support is (S, T).
CellOutcome classify_cell(const TransitionMatrix& u, Mask s, Mask t, const SearchConfig& cfg,
                          const Tolerances& tol);

/// Aggregates cell outcomes (in the given order) into a point.
DiagramPoint aggregate_point(int n_a, int n_b, std::span<const CellOutcome> cells,
                             const Tolerances& tol);

DiagramPoint classify_point(const TransitionMatrix& u, int n_a, int n_b, const SearchConfig& cfg,
                            const Tolerances& tol = {}, Exec exec = {});

/// Enumerates every subset pair (pruned by n_a n_b >= 1/M^2) and classifies
/// every realized point. d <= 8.
Diagram uncertainty_diagram(const TransitionMatrix& u, const SearchConfig& cfg,
                            const Tolerances& tol = {}, Exec exec = {});

/// |m, s> = q^{-1/2} sum_k exp(2 pi i s k / q) |a_{kp+m}> for d = p q.
StateVector dft_min_state(int d, int p, int q, int m, int s);

/// psi_+/- = (|b_0> +/- |b_2>)/sqrt 2 for mub4(s), in A-coordinates.
std::pair<StateVector, StateVector> mub4_edge_states(Complex s);

/// (omega^{i1 k2} |b_k1> - omega^{i1 k1} |b_k2>)/sqrt 2 for dft(6), omega = exp(2 pi i/6).
StateVector dft6_two_support(int k1, int k2, int i1);

}  // namespace kdscope
