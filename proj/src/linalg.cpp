#include "kdscope/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kdscope/error.hpp"

namespace kdscope {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_)
    throw Error(ErrorCode::SizeMismatch, "matrix data does not match its shape");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::SizeMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<Complex> ComplexMatrix::column(std::size_t j) const {
  std::vector<Complex> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix a(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) a(j, i) = std::conj((*this)(i, j));
  return a;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix a(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) a(j, i) = (*this)(i, j);
  return a;
}

ComplexMatrix ComplexMatrix::submatrix(std::span<const int> row_idx, std::span<const int> col_idx) const {
  ComplexMatrix s(row_idx.size(), col_idx.size());
  for (std::size_t a = 0; a < row_idx.size(); ++a)
    for (std::size_t b = 0; b < col_idx.size(); ++b) s(a, b) = (*this)(row_idx[a], col_idx[b]);
  return s;
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
  std::vector<Complex> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

std::vector<Complex> ComplexMatrix::apply_adjoint(std::span<const Complex> v) const {
  if (v.size() != rows_) throw Error(ErrorCode::DimensionMismatch, "adjoint matrix-vector product");
  std::vector<Complex> out(cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[j] += std::conj((*this)(i, j)) * v[i];
  return out;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "matrix difference");
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

double unitarity_residual(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, "unitarity check");
  return max_abs_diff(m * m.adjoint(), ComplexMatrix::identity(m.rows()));
}

double hermiticity_residual(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, "hermiticity check");
  return max_abs_diff(m, m.adjoint());
}

SubspaceBasis::SubspaceBasis(std::size_t ambient_dim, ComplexMatrix columns)
    : ambient_dim_(ambient_dim), columns_(std::move(columns)) {
  if (columns_.rows() != ambient_dim_ || columns_.cols() > ambient_dim_)
    throw Error(ErrorCode::DimensionMismatch, "subspace basis shape");
}

namespace {

// Unitary 2x2 rotation J acting on columns (p, q) that diagonalizes the
// Hermitian block [[app, apq], [conj(apq), aqq]] via J^dagger A J:
//   J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]],  phi = arg(apq).
struct Rotation {
  double c = 1.0;
  double s = 0.0;
  Complex phase{1.0, 0.0};  // e^{-i phi}
};

Rotation jacobi_rotation(double app, double aqq, Complex apq) {
  const double mag = std::abs(apq);
  Rotation r;
  if (mag == 0.0) return r;
  r.phase = std::polar(1.0, -std::arg(apq));
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  r.c = 1.0 / std::sqrt(1.0 + t * t);
  r.s = t * r.c;
  return r;
}

// M <- M J on columns p, q.
void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const Complex mp = m(k, p), mq = m(k, q);
    m(k, p) = r.c * mp - r.s * r.phase * mq;
    m(k, q) = r.s * mp + r.c * r.phase * mq;
  }
}

// M <- J^dagger M on rows p, q.
void rotate_rows(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  const Complex ph = std::conj(r.phase);
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const Complex mp = m(p, k), mq = m(q, k);
    m(p, k) = r.c * mp - r.s * ph * mq;
    m(q, k) = r.s * mp + r.c * ph * mq;
  }
}

double off_diagonal_norm2(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return s;
}

constexpr int kMaxSweeps = 100;

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& h) {
  if (!h.is_square()) throw Error(ErrorCode::NotSquare, "hermitian_eig needs a square matrix");
  if (!h.all_finite()) throw Error(ErrorCode::NotHermitian, "matrix has non-finite entries");
  const double scale = h.max_abs();
  if (hermiticity_residual(h) > 1e-10 * (1.0 + scale))
    throw Error(ErrorCode::NotHermitian, "matrix differs from its conjugate transpose");

  const std::size_t n = h.rows();
  ComplexMatrix a = h;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);

  double total = 0.0;
  for (const auto& z : a.data()) total += std::norm(z);
  const double threshold = 1e-30 * std::max(total, 1e-300);

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm2(a) > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) == 0.0) continue;
        const Rotation r = jacobi_rotation(a(p, p).real(), a(q, q).real(), a(p, q));
        rotate_columns(a, p, q, r);
        rotate_rows(a, p, q, r);
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, r);
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

ComplexMatrix unitary_from_generator(const ComplexMatrix& generator, double eps) {
  const auto eig = hermitian_eig(generator);
  const std::size_t n = generator.rows();
  ComplexMatrix scaled = eig.vectors;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex f = std::exp(Complex(0.0, -eps * eig.values[k]));
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= f;
  }
  return scaled * eig.vectors.adjoint();
}

Complex determinant(ComplexMatrix a) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "determinant");
  const std::size_t n = a.rows();
  Complex det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r)
      if (const double m = std::abs(a(r, col)); m > best) {
        best = m;
        piv = r;
      }
    if (best == 0.0) return 0.0;
    if (piv != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(col, k), a(piv, k));
      det = -det;
    }
    const Complex d = a(col, col);
    det *= d;
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = a(r, col) / d;
      if (f == 0.0) continue;
      for (std::size_t k = col + 1; k < n; ++k) a(r, k) -= f * a(col, k);
    }
  }
  return det;
}

Complex minor(const ComplexMatrix& u, std::span<const int> row_set, std::span<const int> col_set) {
  if (row_set.size() != col_set.size())
    throw Error(ErrorCode::SizeMismatch, "minor needs as many rows as columns");
  if (row_set.empty()) throw Error(ErrorCode::SizeMismatch, "minor of order 0");
  for (int r : row_set)
    if (r < 0 || static_cast<std::size_t>(r) >= u.rows()) throw Error(ErrorCode::IndexOutOfRange, "minor row");
  for (int c : col_set)
    if (c < 0 || static_cast<std::size_t>(c) >= u.cols()) throw Error(ErrorCode::IndexOutOfRange, "minor column");
  return determinant(u.submatrix(row_set, col_set));
}

namespace {

// One-sided Jacobi: W = C V with mutually orthogonal columns, V unitary.
struct OneSidedJacobi {
  ComplexMatrix w;
  ComplexMatrix v;
};

OneSidedJacobi hestenes(const ComplexMatrix& c) {
  const std::size_t n = c.cols();
  OneSidedJacobi out{c, ComplexMatrix::identity(n)};
  auto& w = out.w;
  double frob2 = 0.0;
  for (std::size_t k = 0; k < w.rows(); ++k)
    for (std::size_t j = 0; j < n; ++j) frob2 += std::norm(w(k, j));
  const double negligible = 1e-32 * frob2;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t k = 0; k < w.rows(); ++k) {
          alpha += std::norm(w(k, p));
          beta += std::norm(w(k, q));
          gamma += std::conj(w(k, p)) * w(k, q);
        }
        if (alpha <= negligible || beta <= negligible) continue;
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;
        const Rotation r = jacobi_rotation(alpha, beta, gamma);
        rotate_columns(w, p, q, r);
        rotate_columns(out.v, p, q, r);
      }
    if (!rotated) break;
  }
  return out;
}

std::vector<double> column_norms(const ComplexMatrix& w) {
  std::vector<double> s(w.cols(), 0.0);
  for (std::size_t j = 0; j < w.cols(); ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < w.rows(); ++k) acc += std::norm(w(k, j));
    s[j] = std::sqrt(acc);
  }
  return s;
}

}  // namespace

std::vector<double> singular_values(const ComplexMatrix& c) {
  auto s = column_norms(hestenes(c).w);
  std::sort(s.begin(), s.end(), std::greater<>());
  if (s.size() > c.rows()) s.resize(c.rows());
  return s;
}

SubspaceBasis orthonormal_null_space(const ComplexMatrix& c, double tol) {
  const std::size_t n = c.cols();
  if (c.rows() == 0 || c.max_abs() == 0.0) return SubspaceBasis(n, ComplexMatrix::identity(n));
  const auto jac = hestenes(c);
  const auto sigma = column_norms(jac.w);
  const double sigma_max = *std::max_element(sigma.begin(), sigma.end());

  std::vector<std::size_t> null_cols;
  for (std::size_t j = 0; j < n; ++j)
    if (sigma[j] <= tol * sigma_max) null_cols.push_back(j);

  ComplexMatrix basis(n, null_cols.size());
  for (std::size_t k = 0; k < null_cols.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) basis(i, k) = jac.v(i, null_cols[k]);
  return SubspaceBasis(n, std::move(basis));
}

}  // namespace kdscope
