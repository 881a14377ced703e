#pragma once

#include <optional>
#include <string>

#include "kdscope/linalg.hpp"

namespace kdscope {

/// Unitary U with U_ij = <a_i|b_j>, 0-based. Row i is the A-basis vector a_i,
/// column j the B-basis vector b_j expressed in A-coordinates.
class TransitionMatrix {
 public:
  /// Validates squareness and unitarity (max |U U^dagger - I| <= tol).
  static TransitionMatrix from_matrix(ComplexMatrix u, double tol = 1e-10);

  int dim() const noexcept { return static_cast<int>(u_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return u_; }
  Complex operator()(int i, int j) const { return u_(i, j); }

  /// Transition matrix with the roles of A and B exchanged (U^dagger).
  TransitionMatrix swapped() const;

 private:
  explicit TransitionMatrix(ComplexMatrix u) : u_(std::move(u)) {}
  ComplexMatrix u_;
};

enum class BasisFamily { Dft, Mub4, Perturbed, Spin, File };

/// Parameters naming one of the supported basis-pair families.
struct BasisSpec {
  BasisFamily family = BasisFamily::Dft;
  int d = 2;
  Complex s{0.0, 1.0};                     // mub4, and the perturbed base
  double eps = 0.1;                        // perturbed
  std::optional<ComplexMatrix> generator;  // perturbed; nullopt = default generator
  double spin = 1.0;                       // spin
  double beta = 1.5707963267948966;        // spin
  std::string path;                        // file
};

TransitionMatrix build_basis(const BasisSpec& spec);
std::string describe(const BasisSpec& spec);

/// U_ij = exp(+2 pi i ij/d) / sqrt(d).
TransitionMatrix dft(int d);

/// The d = 4 MUB family
///   U(s) = 1/2 [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, s, -s], [1, -1, -s, s]],  |s| = 1.
TransitionMatrix mub4(Complex s);

/// L_jk = i for j < k, -i for j > k, 0 on the diagonal.
ComplexMatrix default_generator(int d);

/// exp(-i eps L) * base. nullopt selects default_generator.
TransitionMatrix perturbed(const TransitionMatrix& base, double eps,
                           const std::optional<ComplexMatrix>& generator = std::nullopt);

/// Wigner little-d matrix d^{(s)}_{m',m}(beta), rows m' and columns m both
/// ordered m = -s, ..., +s (index k <-> m = k - s). At beta = pi/2 this is the
/// transition matrix between the J_z and J_x eigenbases of a spin s.
TransitionMatrix spin_transition(double spin, double beta = 1.5707963267948966);

/// Reads the matrix JSON schema {"d": N, "rows": [[[re, im], ...], ...]}.
/// Unitarity is checked to 1e-8.
TransitionMatrix load_matrix(const std::string& path);

}  // namespace kdscope
