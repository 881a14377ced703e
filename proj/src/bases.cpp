#include "kdscope/bases.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kdscope/error.hpp"
#include "kdscope/io.hpp"

namespace kdscope {

TransitionMatrix TransitionMatrix::from_matrix(ComplexMatrix u, double tol) {
  if (!u.is_square()) throw Error(ErrorCode::NotSquare, "transition matrix must be square");
  if (u.rows() < 1) throw Error(ErrorCode::DimensionTooSmall, "empty transition matrix");
  if (!u.all_finite()) throw Error(ErrorCode::NotUnitary, "transition matrix has non-finite entries");
  const double res = unitarity_residual(u);
  if (!(res <= tol)) {
    std::ostringstream msg;
    msg << "max |U U^dagger - I| = " << res << " exceeds " << tol;
    throw Error(ErrorCode::NotUnitary, msg.str());
  }
  return TransitionMatrix(std::move(u));
}

TransitionMatrix TransitionMatrix::swapped() const { return TransitionMatrix(u_.adjoint()); }

TransitionMatrix dft(int d) {
  if (d < 2) throw Error(ErrorCode::DimensionTooSmall, "dft needs d >= 2");
  ComplexMatrix u(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      // Reduce ij mod d first so large products keep full phase accuracy.
      const int r = (i * j) % d;
      const double angle = 2.0 * std::numbers::pi * r / d;
      u(i, j) = norm * Complex(std::cos(angle), std::sin(angle));
    }
  return TransitionMatrix::from_matrix(std::move(u));
}

TransitionMatrix mub4(Complex s) {
  if (std::abs(std::abs(s) - 1.0) > 1e-12) throw Error(ErrorCode::NotUnitModulus, "mub4 needs |s| = 1");
  ComplexMatrix u{{1.0, 1.0, 1.0, 1.0}, {1.0, 1.0, -1.0, -1.0}, {1.0, -1.0, s, -s}, {1.0, -1.0, -s, s}};
  return TransitionMatrix::from_matrix(Complex(0.5) * u);
}

ComplexMatrix default_generator(int d) {
  ComplexMatrix l(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      if (j < k) l(j, k) = Complex(0.0, 1.0);
      if (j > k) l(j, k) = Complex(0.0, -1.0);
    }
  return l;
}

TransitionMatrix perturbed(const TransitionMatrix& base, double eps, const std::optional<ComplexMatrix>& generator) {
  const int d = base.dim();
  const ComplexMatrix l = generator ? *generator : default_generator(d);
  if (l.rows() != static_cast<std::size_t>(d) || l.cols() != static_cast<std::size_t>(d))
    throw Error(ErrorCode::DimensionMismatch, "generator must be d x d");
  return TransitionMatrix::from_matrix(unitary_from_generator(l, eps) * base.matrix());
}

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

TransitionMatrix spin_transition(double spin, double beta) {
  const double twice = 2.0 * spin;
  if (!(spin >= 0.5) || std::abs(twice - std::round(twice)) > 1e-12)
    throw Error(ErrorCode::InvalidSpin, "spin must be a positive half-integer");
  if (spin > 10.0) throw Error(ErrorCode::SpinTooLarge, "spin above 10 is not supported");

  // Row a <-> m' = a - s, column b <-> m = b - s; every factorial argument is
  // then an integer combination of a, b, 2s and the summation index k.
  const int j2 = static_cast<int>(std::lround(twice));
  const int n = j2 + 1;
  const double c = std::cos(beta / 2.0), s = std::sin(beta / 2.0);
  ComplexMatrix u(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double pref = std::sqrt(factorial(a) * factorial(j2 - a) * factorial(b) * factorial(j2 - b));
      double sum = 0.0;
      for (int k = 0; k <= j2; ++k) {
        const int f1 = b - k, f2 = j2 - a - k, f3 = k + a - b;
        if (f1 < 0 || f2 < 0 || f3 < 0) continue;
        const double sign = (f3 % 2 == 0) ? 1.0 : -1.0;
        sum += sign / (factorial(f1) * factorial(k) * factorial(f2) * factorial(f3)) *
               std::pow(c, j2 + b - a - 2 * k) * std::pow(s, 2 * k + a - b);
      }
      u(a, b) = pref * sum;
    }
  return TransitionMatrix::from_matrix(std::move(u), 1e-10);
}

TransitionMatrix load_matrix(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  return TransitionMatrix::from_matrix(matrix_from_json(j), 1e-8);
}

TransitionMatrix build_basis(const BasisSpec& spec) {
  switch (spec.family) {
    case BasisFamily::Dft: return dft(spec.d);
    case BasisFamily::Mub4: return mub4(spec.s);
    case BasisFamily::Perturbed: return perturbed(mub4(spec.s), spec.eps, spec.generator);
    case BasisFamily::Spin: return spin_transition(spec.spin, spec.beta);
    case BasisFamily::File: return load_matrix(spec.path);
  }
  throw Error(ErrorCode::ParseError, "unknown basis family");
}

std::string describe(const BasisSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  switch (spec.family) {
    case BasisFamily::Dft: os << "dft d=" << spec.d; break;
    case BasisFamily::Mub4: os << "mub4 s=" << spec.s.real() << (spec.s.imag() < 0 ? "" : "+") << spec.s.imag() << "i"; break;
    case BasisFamily::Perturbed:
      os << "perturbed base=mub4 s=" << spec.s.real() << (spec.s.imag() < 0 ? "" : "+") << spec.s.imag()
         << "i eps=" << spec.eps << (spec.generator ? " generator=custom" : " generator=default");
      break;
    case BasisFamily::Spin: os << "spin s=" << spec.spin << " beta=" << spec.beta; break;
    case BasisFamily::File: os << "file path=" << spec.path; break;
  }
  return os.str();
}

}  // namespace kdscope
