#include "kdscope/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "kdscope/error.hpp"
#include "kdscope/incompat.hpp"
#include "kdscope/kernels.hpp"
#include "kdscope/optimize.hpp"

namespace kdscope {

std::string_view to_string(PointClass c) {
  switch (c) {
    case PointClass::Empty: return "EMPTY";
    case PointClass::Classical: return "CLASSICAL";
    case PointClass::Nonclassical: return "NONCLASSICAL";
    case PointClass::Mixed: return "MIXED";
  }
  return "EMPTY";
}

const DiagramPoint* Diagram::find(int n_a, int n_b) const {
  for (const auto& p : points)
    if (p.n_a == n_a && p.n_b == n_b) return &p;
  return nullptr;
}

PointClass Diagram::classification_at(int n_a, int n_b) const {
  const auto* p = find(n_a, n_b);
  return p ? p->classification : PointClass::Empty;
}

std::vector<DiagramPoint> Diagram::grid() const {
  std::vector<DiagramPoint> out;
  for (int a = 1; a <= d; ++a)
    for (int b = 1; b <= d; ++b) {
      if (const auto* p = find(a, b)) {
        out.push_back(*p);
      } else {
        DiagramPoint e;
        e.n_a = a;
        e.n_b = b;
        out.push_back(std::move(e));
      }
    }
  return out;
}

SubspaceBasis support_subspace(const TransitionMatrix& u, Mask s, Mask t, double null_tol) {
  const int d = u.dim();
  const Mask full = full_mask(d);
  if ((s & full) == 0 || (t & full) == 0 || (s & ~full) != 0 || (t & ~full) != 0)
    throw Error(ErrorCode::IndexOutOfRange, "support sets must be nonempty subsets of {0..d-1}");
  // Rows: e_i^dagger for i outside S, then (U e_j)^dagger for j outside T.
  const int rows = (d - set_size(s)) + (d - set_size(t));
  ComplexMatrix c(rows, d);
  int r = 0;
  for (int i = 0; i < d; ++i)
    if (!(s >> i & 1u)) c(r++, i) = 1.0;
  for (int j = 0; j < d; ++j)
    if (!(t >> j & 1u)) {
      for (int i = 0; i < d; ++i) c(r, i) = std::conj(u(i, j));
      ++r;
    }
  return orthonormal_null_space(c, null_tol);
}

SubspaceBasis support_subspace(const TransitionMatrix& u, const IndexSet& s, const IndexSet& t, double null_tol) {
  for (int i : s)
    if (i < 0 || i >= u.dim()) throw Error(ErrorCode::IndexOutOfRange, "index outside {0..d-1}");
  for (int j : t)
    if (j < 0 || j >= u.dim()) throw Error(ErrorCode::IndexOutOfRange, "index outside {0..d-1}");
  return support_subspace(u, to_mask(s), to_mask(t), null_tol);
}

SupportProfile generic_support(const SubspaceBasis& basis, const TransitionMatrix& u, double eta) {
  if (basis.empty()) throw Error(ErrorCode::EmptySubspace, "generic support of the zero subspace");
  if (basis.ambient_dim() != static_cast<std::size_t>(u.dim()))
    throw Error(ErrorCode::DimensionMismatch, "subspace and transition matrix dimensions differ");
  const auto& b = basis.columns();
  const ComplexMatrix w = u.matrix().adjoint() * b;
  auto row_norm = [](const ComplexMatrix& m, std::size_t i) {
    double s = 0.0;
    for (const auto& z : m.row(i)) s += std::norm(z);
    return std::sqrt(s);
  };
  SupportProfile p;
  p.eta = eta;
  for (int i = 0; i < u.dim(); ++i) {
    if (row_norm(b, i) > eta) p.s.push_back(i);
    if (row_norm(w, i) > eta) p.t.push_back(i);
  }
  return p;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// N_NC and the support margin of the state B c, evaluated without building a
// StateVector. Used inside the minimizer's objective.
class SubspaceObjective {
 public:
  SubspaceObjective(const TransitionMatrix& u, const SubspaceBasis& basis, double eta)
      : d_(u.dim()), k_(static_cast<int>(basis.dim())), b_(basis.columns()),
        w_(u.matrix().adjoint() * basis.columns()), abs_u_(d_ * d_), abs_a_(d_), abs_b_(d_) {
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) abs_u_[i * d_ + j] = std::abs(u(i, j));
    const auto sup = generic_support(basis, u, eta);
    support_a_ = sup.s;
    support_b_ = sup.t;
  }

  int params() const { return 2 * k_; }

  std::vector<Complex> coefficients(std::span<const double> x) const {
    std::vector<Complex> c(k_);
    for (int l = 0; l < k_; ++l) c[l] = Complex(x[l], x[k_ + l]);
    return c;
  }

  // Returns {ncc, margin} for the normalized state; margin is the smallest
  // modulus over the generic support in either basis.
  std::pair<double, double> evaluate(std::span<const double> x) {
    double n2 = 0.0;
    for (double v : x) n2 += v * v;
    if (!(n2 > 1e-300)) return {std::numeric_limits<double>::infinity(), 0.0};
    for (int i = 0; i < d_; ++i) {
      Complex a = 0.0, b = 0.0;
      for (int l = 0; l < k_; ++l) {
        const Complex c(x[l], x[k_ + l]);
        a += b_(i, l) * c;
        b += w_(i, l) * c;
      }
      abs_a_[i] = std::abs(a);
      abs_b_[i] = std::abs(b);
    }
    double ncc = 0.0;
    for (int i = 0; i < d_; ++i) {
      if (abs_a_[i] == 0.0) continue;
      double row = 0.0;
      for (int j = 0; j < d_; ++j) row += abs_u_[i * d_ + j] * abs_b_[j];
      ncc += abs_a_[i] * row;
    }
    double margin = std::numeric_limits<double>::infinity();
    for (int i : support_a_) margin = std::min(margin, abs_a_[i]);
    for (int j : support_b_) margin = std::min(margin, abs_b_[j]);
    const double norm = std::sqrt(n2);
    return {ncc / n2, margin / norm};
  }

  StateVector state(std::span<const double> x) const {
    return StateVector::normalized(b_.apply(coefficients(x)));
  }

  const IndexSet& support_a() const { return support_a_; }
  const IndexSet& support_b() const { return support_b_; }

 private:
  int d_;
  int k_;
  ComplexMatrix b_;
  ComplexMatrix w_;
  std::vector<double> abs_u_;
  std::vector<double> abs_a_;
  std::vector<double> abs_b_;
  IndexSet support_a_;
  IndexSet support_b_;
};

bool keeps_support(const TransitionMatrix& u, const StateVector& psi, const SubspaceObjective& obj, double eta) {
  const auto sup = support(u, psi, eta);
  return sup.s == obj.support_a() && sup.t == obj.support_b();
}

SubspaceMinimum minimize_impl(const TransitionMatrix& u, const SubspaceBasis& basis, const SearchConfig& cfg,
                              double eta, double stop_below) {
  if (basis.empty()) throw Error(ErrorCode::EmptySubspace, "cannot search the zero subspace");
  if (basis.dim() == 1) {
    auto psi = StateVector::normalized(basis.column(0));
    const double v = nonclassicality(u, psi);
    return {v, std::move(psi), true};
  }

  SubspaceObjective obj(u, basis, eta);
  const double mu = cfg.support_margin;
  auto f = [&](std::span<const double> x) {
    const auto [ncc, margin] = obj.evaluate(x);
    // Exact penalty with slope 1/mu once the state leaves the margin.
    return margin < mu ? ncc + (mu - margin) / mu : ncc;
  };

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss;
  std::optional<SubspaceMinimum> best_full, best_any;
  const int n = obj.params();
  for (int r = 0; r < std::max(cfg.restarts, 1); ++r) {
    std::vector<double> x0(n);
    double len = 0.0;
    for (auto& v : x0) {
      v = gauss(rng);
      len += v * v;
    }
    len = std::sqrt(len);
    for (auto& v : x0) v /= len;

    const auto res = nelder_mead(f, std::move(x0), 0.25, cfg.max_iter, cfg.conv_tol);
    auto psi = obj.state(res.x);
    const double value = nonclassicality(u, psi);
    const bool full = keeps_support(u, psi, obj, eta);
    if (full && (!best_full || value < best_full->value)) best_full = SubspaceMinimum{value, psi, true};
    if (!best_any || value < best_any->value) best_any = SubspaceMinimum{value, std::move(psi), false};
    if (best_full && best_full->value <= stop_below) break;
  }
  if (best_full) return *best_full;
  return *best_any;
}

}  // namespace

SubspaceMinimum minimize_ncc_over_subspace(const TransitionMatrix& u, const SubspaceBasis& basis,
                                           const SearchConfig& cfg, double eta) {
  return minimize_impl(u, basis, cfg, eta, -std::numeric_limits<double>::infinity());
}

std::uint64_t cell_seed(std::uint64_t seed, Mask s, Mask t) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (static_cast<std::uint64_t>(s) << 32 | t));
  return h;
}

CellOutcome classify_cell(const TransitionMatrix& u, Mask s, Mask t, const SearchConfig& cfg, const Tolerances& tol) {
  CellOutcome out;
  out.s = s;
  out.t = t;
  out.min_ncc = std::numeric_limits<double>::infinity();
  const auto basis = support_subspace(u, s, t, tol.null_tol);
  out.dim = static_cast<int>(basis.dim());
  if (out.dim == 0) return out;

  const double classical_cut = 1.0 + tol.tau_class;
  if (out.dim == 1) {
    auto psi = StateVector::normalized(basis.column(0));
    const auto q = kd_distribution(u, psi);
    out.min_ncc = nonclassicality(q);
    if (is_kd_classical(q, tol.tau).classical)
      out.classical = std::move(psi);
    else
      out.nonclassical = std::move(psi);
    return out;
  }

  SearchConfig local = cfg;
  local.seed = cell_seed(cfg.seed, s, t);
  auto res = minimize_impl(u, basis, local, tol.eta, classical_cut);
  if (res.full_support) {
    out.min_ncc = res.value;
    if (res.value <= classical_cut)
      out.classical = std::move(res.argmin);
    else
      out.nonclassical = std::move(res.argmin);
  }
  if (out.nonclassical) return out;

  // The minimum is classical (or lost its support): look for a generic state
  // of the cell that is not.
  std::mt19937_64 rng(splitmix64(local.seed ^ 0x6e6f6e636c617373ULL));
  std::normal_distribution<double> gauss;
  const auto& b = basis.columns();
  for (int attempt = 0; attempt < std::max(cfg.restarts, 1); ++attempt) {
    std::vector<Complex> c(out.dim);
    for (auto& z : c) {
      const double re = gauss(rng);
      z = Complex(re, gauss(rng));
    }
    auto psi = StateVector::normalized(b.apply(c));
    const auto sup = support(u, psi, tol.eta);
    if (to_mask(sup.s) != s || to_mask(sup.t) != t) continue;
    const double v = nonclassicality(u, psi);
    if (v > classical_cut) {
      out.min_ncc = std::min(out.min_ncc, v);
      out.nonclassical = std::move(psi);
      break;
    }
  }
  return out;
}

DiagramPoint aggregate_point(int n_a, int n_b, std::span<const CellOutcome> cells, const Tolerances& tol) {
  (void)tol;
  DiagramPoint p;
  p.n_a = n_a;
  p.n_b = n_b;
  p.cells = static_cast<int>(cells.size());
  p.min_ncc_found = std::numeric_limits<double>::infinity();
  if (cells.empty()) return p;
  for (const auto& c : cells) {
    p.min_ncc_found = std::min(p.min_ncc_found, c.min_ncc);
    if (c.classical && !p.classical_witness) p.classical_witness = c.classical;
    if (c.nonclassical && !p.nonclassical_witness) p.nonclassical_witness = c.nonclassical;
  }
  if (p.classical_witness)
    p.classification = p.nonclassical_witness ? PointClass::Mixed : PointClass::Classical;
  else
    p.classification = PointClass::Nonclassical;
  return p;
}

namespace {

// Nonempty subsets of {0..d-1} ordered lexicographically by index list.
std::vector<Mask> lex_ordered_subsets(int d) {
  std::vector<Mask> all;
  for (Mask m = 1; m <= full_mask(d); ++m) all.push_back(m);
  std::sort(all.begin(), all.end(), lex_less);
  return all;
}

void require_diagram_dim(const TransitionMatrix& u) {
  if (u.dim() > kMaxDiagramDim) throw Error(ErrorCode::DimensionTooLarge, "diagram enumeration is capped at d <= 8");
}

double hyperbola_constant(const TransitionMatrix& u) {
  const double big_m = overlap_extrema(u).M_ab;
  return 1.0 / (big_m * big_m);
}

std::vector<kernels::CellKey> exact_cells(const TransitionMatrix& u, const std::vector<kernels::CellKey>& keys,
                                          const Tolerances& tol, Exec exec) {
  const auto supports = kernels::scan_supports(u, keys, tol, exec);
  std::vector<kernels::CellKey> exact;
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (supports[i].exact(keys[i])) exact.push_back(keys[i]);
  return exact;
}

}  // namespace

DiagramPoint classify_point(const TransitionMatrix& u, int n_a, int n_b, const SearchConfig& cfg,
                            const Tolerances& tol, Exec exec) {
  require_diagram_dim(u);
  const int d = u.dim();
  if (n_a < 1 || n_b < 1 || n_a > d || n_b > d) throw Error(ErrorCode::IndexOutOfRange, "point outside 1..d");
  if (n_a * n_b < hyperbola_constant(u) - 1e-9) return aggregate_point(n_a, n_b, {}, tol);

  std::vector<kernels::CellKey> keys;
  for (Mask s : lexicographic_subsets(d, n_a))
    for (Mask t : lexicographic_subsets(d, n_b)) keys.push_back({s, t});
  const auto exact = exact_cells(u, keys, tol, exec);
  const auto outcomes = kernels::classify_cells(u, exact, cfg, tol, exec);
  return aggregate_point(n_a, n_b, outcomes, tol);
}

Diagram uncertainty_diagram(const TransitionMatrix& u, const SearchConfig& cfg, const Tolerances& tol, Exec exec) {
  require_diagram_dim(u);
  const int d = u.dim();
  Diagram out;
  out.d = d;
  out.hyperbola_constant = hyperbola_constant(u);
  out.edge = d + 1;
  out.stroinc = is_stroinc(u, tol.eta);

  const auto subsets = lex_ordered_subsets(d);
  std::vector<kernels::CellKey> keys;
  for (Mask s : subsets)
    for (Mask t : subsets)
      if (set_size(s) * set_size(t) >= out.hyperbola_constant - 1e-9) keys.push_back({s, t});

  const auto exact = exact_cells(u, keys, tol, exec);
  const auto outcomes = kernels::classify_cells(u, exact, cfg, tol, exec);

  std::map<std::pair<int, int>, std::vector<CellOutcome>> by_point;
  for (const auto& c : outcomes) by_point[{set_size(c.s), set_size(c.t)}].push_back(c);
  out.n_min = 2 * d;
  for (const auto& [key, cells] : by_point) {
    out.points.push_back(aggregate_point(key.first, key.second, cells, tol));
    out.n_min = std::min(out.n_min, key.first + key.second);
  }
  return out;
}

StateVector dft_min_state(int d, int p, int q, int m, int s) {
  if (p * q != d || p <= 1 || q <= 1 || p >= d || q >= d || m < 0 || m >= p || s < 0 || s >= q)
    throw Error(ErrorCode::InvalidFactorization, "need d = p q with 1 < p, q < d, 0 <= m < p, 0 <= s < q");
  std::vector<Complex> amps(d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(q));
  for (int k = 0; k < q; ++k) {
    const double angle = 2.0 * std::numbers::pi * ((s * k) % q) / q;
    amps[k * p + m] = norm * Complex(std::cos(angle), std::sin(angle));
  }
  return StateVector::normalized(std::move(amps));
}

std::pair<StateVector, StateVector> mub4_edge_states(Complex s) {
  if (std::abs(std::abs(s) - 1.0) > 1e-12) throw Error(ErrorCode::NotUnitModulus, "mub4 needs |s| = 1");
  if (std::abs(s - 1.0) < 1e-12 || std::abs(s + 1.0) < 1e-12)
    throw Error(ErrorCode::DegenerateParameter, "s = +-1 changes the supports of psi_+-");
  const double norm = 1.0 / (2.0 * std::numbers::sqrt2);
  std::vector<Complex> plus{2.0, 0.0, 1.0 + s, 1.0 - s};
  std::vector<Complex> minus{0.0, 2.0, 1.0 - s, 1.0 + s};
  for (auto& z : plus) z *= norm;
  for (auto& z : minus) z *= norm;
  return {StateVector::normalized(std::move(plus)), StateVector::normalized(std::move(minus))};
}

StateVector dft6_two_support(int k1, int k2, int i1) {
  if (!(0 <= k1 && k1 < k2 && k2 <= 5) || i1 < 0 || i1 > 5)
    throw Error(ErrorCode::IndexOutOfRange, "need 0 <= k1 < k2 <= 5 and 0 <= i1 <= 5");
  auto omega_pow = [](int e) {
    const double angle = 2.0 * std::numbers::pi * (e % 6) / 6.0;
    return Complex(std::cos(angle), std::sin(angle));
  };
  std::vector<Complex> b(6);
  b[k1] = omega_pow(i1 * k2) / std::numbers::sqrt2;
  b[k2] = -omega_pow(i1 * k1) / std::numbers::sqrt2;
  return StateVector::from_b_coordinates(dft(6), b);
}

}  // namespace kdscope
