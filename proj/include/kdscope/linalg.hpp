#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace kdscope {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Sized for desk-scale work (d <= 12).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<const Complex> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<Complex> column(std::size_t j) const;

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix submatrix(std::span<const int> row_idx, std::span<const int> col_idx) const;

  /// M v and M^dagger v.
  std::vector<Complex> apply(std::span<const Complex> v) const;
  std::vector<Complex> apply_adjoint(std::span<const Complex> v) const;

  double max_abs() const;
  bool all_finite() const;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_ij |(M M^dagger - I)_ij|
double unitarity_residual(const ComplexMatrix& m);

/// max_ij |M_ij - conj(M_ji)|
double hermiticity_residual(const ComplexMatrix& m);

/// Orthonormal basis of a subspace of C^ambient_dim, stored as the columns of
/// an ambient_dim x dim matrix.
class SubspaceBasis {
 public:
  SubspaceBasis(std::size_t ambient_dim, ComplexMatrix columns);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t dim() const noexcept { return columns_.cols(); }
  bool empty() const noexcept { return dim() == 0; }
  const ComplexMatrix& columns() const noexcept { return columns_; }
  std::vector<Complex> column(std::size_t k) const { return columns_.column(k); }

 private:
  std::size_t ambient_dim_;
  ComplexMatrix columns_;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
/// Throws NotSquare or NotHermitian (checked to 1e-10 * (1 + max|H_ij|)).
EigenDecomposition hermitian_eig(const ComplexMatrix& h);

/// exp(-i eps L) for Hermitian L.
ComplexMatrix unitary_from_generator(const ComplexMatrix& generator, double eps);

/// Determinant of the submatrix U[rows, cols], by LU with partial pivoting.
/// Index order matters for the sign only.
Complex minor(const ComplexMatrix& u, std::span<const int> row_set, std::span<const int> col_set);

/// Determinant of a square matrix (LU with partial pivoting).
Complex determinant(ComplexMatrix a);

/// Orthonormal basis of ker C. A singular value sigma counts as zero iff
/// sigma <= tol * sigma_max; an all-zero (or row-less) C yields the full space.
/// Singular values come from one-sided (Hestenes) Jacobi on the columns of C.
SubspaceBasis orthonormal_null_space(const ComplexMatrix& c, double tol = 1e-10);

/// Singular values of C in descending order (same Jacobi kernel as above).
std::vector<double> singular_values(const ComplexMatrix& c);

}  // namespace kdscope
