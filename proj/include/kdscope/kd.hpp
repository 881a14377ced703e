#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kdscope/bases.hpp"
#include "kdscope/index_set.hpp"
#include "kdscope/linalg.hpp"

namespace kdscope {

/// Pure state in A-coordinates: amps[i] = <a_i|psi>.
class StateVector {
 public:
  /// Requires unit norm to 1e-10; throws NotNormalized otherwise.
  explicit StateVector(std::vector<Complex> amps);

  /// Rescales to unit norm. Throws NotNormalized for the zero vector.
  static StateVector normalized(std::vector<Complex> amps);

  /// Builds the state from B-coordinates c_j = <b_j|psi>, i.e. psi = U c.
  static StateVector from_b_coordinates(const TransitionMatrix& u, std::span<const Complex> b_amps);

  int dim() const noexcept { return static_cast<int>(amps_.size()); }
  std::span<const Complex> amps() const noexcept { return amps_; }
  Complex operator[](int i) const { return amps_[i]; }

  /// <b_j|psi> = (U^dagger psi)_j.
  std::vector<Complex> b_coordinates(const TransitionMatrix& u) const;

 private:
  std::vector<Complex> amps_;
};

/// Q_ij = <a_i|psi><psi|b_j><b_j|a_i>.
struct KDDistribution {
  ComplexMatrix q;

  int dim() const noexcept { return static_cast<int>(q.rows()); }
  Complex total() const;
  Complex row_sum(int i) const;
  Complex col_sum(int j) const;
};

struct ClassicalityWitness {
  int i = 0;
  int j = 0;
  Complex value;
};

struct ClassicalityCheck {
  bool classical = true;
  std::optional<ClassicalityWitness> worst;  // set when not classical
};

struct SupportProfile {
  IndexSet s;  // A-support
  IndexSet t;  // B-support
  double eta = 0.0;

  int n_a() const noexcept { return static_cast<int>(s.size()); }
  int n_b() const noexcept { return static_cast<int>(t.size()); }
  int total() const noexcept { return n_a() + n_b(); }
};

struct BoundReport {
  int n_a = 0;
  int n_b = 0;
  double product_lower_bound = 0.0;  // 1 / M^2
  double ncc = 0.0;                  // N_NC
  double ncc_upper_bound = 0.0;      // M sqrt(n_a n_b)
  int edge_value = 0;                // d + 1
};

KDDistribution kd_distribution(const TransitionMatrix& u, const StateVector& psi);

/// N_NC = sum_ij |Q_ij|; 1 exactly for KD-classical states.
double nonclassicality(const KDDistribution& q);

/// N_NC straight from amplitudes: |Q_ij| = |alpha_i| |U_ij| |beta_j|.
double nonclassicality(const TransitionMatrix& u, const StateVector& psi);

/// Classical iff every entry has |Im| <= tau and Re >= -tau. The witness is the
/// entry with the largest violation max(|Im|, -Re).
ClassicalityCheck is_kd_classical(const KDDistribution& q, double tau = 1e-9);

SupportProfile support(const TransitionMatrix& u, const StateVector& psi, double eta = 1e-9);

/// Throws InternalInconsistency if n_a n_b >= 1/M^2 or 1 <= N_NC <= M sqrt(n_a n_b)
/// fails by more than 1e-9.
BoundReport bound_report(const TransitionMatrix& u, const StateVector& psi, double eta = 1e-9);

/// Standard complex Gaussian amplitudes, normalized. Deterministic in seed.
StateVector random_state(int d, std::uint64_t seed);

}  // namespace kdscope
