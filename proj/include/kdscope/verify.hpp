#pragma once

#include <cstdint>

#include "kdscope/bases.hpp"
#include "kdscope/config.hpp"
#include "kdscope/kd.hpp"

namespace kdscope {

/// Counts from checking sampled states against the KD bounds.
struct PropertySuiteReport {
  int samples = 0;
  bool stroinc = false;
  int above_edge = 0;            // samples with n_A + n_B > d + 1
  int theorem_violations = 0;    // KD-classical samples above the edge (STROINC only)
  int product_violations = 0;    // n_A n_B < 1/M^2
  int ncc_violations = 0;        // N_NC outside [1, M sqrt(n_A n_B)]
  int marginal_violations = 0;   // sum/marginal identities off by > 1e-10
  double min_product_slack = 0.0;
  double min_ncc_slack = 0.0;

  int violations() const {
    return theorem_violations + product_violations + ncc_violations + marginal_violations;
  }
};

/// A random state from a random support subspace Pi_A(S)H ^ Pi_B(T)H when
/// that intersection is nontrivial, else a generic random state. Yields a mix
/// of reduced and full supports.
StateVector sample_structured_state(const TransitionMatrix& u, std::uint64_t seed,
                                    double null_tol = 1e-10);

PropertySuiteReport run_property_suite(const TransitionMatrix& u, int samples, std::uint64_t seed,
                                       const Tolerances& tol = {});

}  // namespace kdscope
