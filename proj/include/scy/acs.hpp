#pragma once

#include <map>
#include <utility>
#include <vector>

#include "coframe.hpp"
#include "error.hpp"
#include "form.hpp"
#include "linalg.hpp"

namespace scy {

// Almost complex structure on the invariant frame: J(xi_j) = sum_k J_{kj} xi_k
// with exact rational entries and J^2 = -I.
struct Acs {
  MatQ J;
  int dim() const { return J.rows; }
};

inline Acs make_acs(MatQ J) {
  require(J.rows == J.cols, "not-almost-complex", "J must be square");
  require(J.rows % 2 == 0, "not-almost-complex", "J needs even dimension");
  for (const auto& e : J.a)
    require(e.is_real(), "not-almost-complex", "J must have real entries");
  MatQ sq = J * J;
  require(sq == GaussRat(-1) * MatQ::identity(J.rows), "not-almost-complex", "J^2 != -I");
  return Acs{std::move(J)};
}

// ---- omega / metric ----------------------------------------------------------

inline MatQ omega_matrix(const Form<GaussRat>& omega, int dim) {
  MatQ W(dim, dim);
  for (const auto& [mask, c] : omega.terms) {
    require(std::popcount(mask) == 2, "degenerate-symplectic", "omega must be a 2-form");
    int i = std::countr_zero(mask);
    int j = std::countr_zero(mask & (mask - 1));
    W.at(i, j) = c;
    W.at(j, i) = -c;
  }
  return W;
}

inline bool omega_nondegenerate(const Form<GaussRat>& omega, int dim) {
  Form<GaussRat> top = omega;
  for (int k = 1; k < dim / 2; ++k) top = wedge(top, omega);
  return !top.is_zero();
}

struct CalibrationReport {
  bool tamed = false;
  bool invariant = false; // omega(J., J.) = omega(., .)
  bool calibrated = false;
  MatQ metric; // g_J = omega(., J.), meaningful when calibrated
};

// Positive definiteness is decided by exact leading principal minors of the
// symmetrized pairing.
inline bool check_tamed(const Form<GaussRat>& omega, const Acs& acs, int dim) {
  require(omega_nondegenerate(omega, dim), "degenerate-symplectic", "omega^n = 0");
  MatQ B = omega_matrix(omega, dim) * acs.J;
  MatQ sym(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      sym.at(i, j) = (B.at(i, j) + B.at(j, i)) * GaussRat(Rational(1, 2));
  return positive_definite(sym);
}

inline CalibrationReport check_calibrated(const Form<GaussRat>& omega, const Acs& acs, int dim) {
  CalibrationReport rep;
  MatQ W = omega_matrix(omega, dim);
  rep.tamed = check_tamed(omega, acs, dim);
  rep.invariant = (acs.J.transpose() * W * acs.J == W);
  rep.metric = W * acs.J;
  rep.calibrated = rep.tamed && rep.invariant;
  return rep;
}

// ---- complexified coframe -----------------------------------------------------

// Basis of (1,0)- and (0,1)-forms derived from the eigen-projectors of J:
// candidates alpha_k - i (J* alpha_k) are row reduced, keeping the first n
// independent rows.  For the catalog structures this reproduces the usual
// zeta_j = alpha_j + i J alpha_j convention.
struct ComplexFrame {
  int n = 0;         // complex dimension
  MatQ M;            // rows: zeta_1..zeta_n, conj(zeta_1)..conj(zeta_n) in the alpha basis
  MatQ Minv;         // alpha basis in the zeta basis
  MatQ Z;            // columns: frame vectors Z_1..Z_n, conj Z_1..conj Z_n over xi
  std::vector<std::string> names;

  uint32_t holo_mask() const { return (1u << n) - 1; }
};

inline ComplexFrame build_complex_frame(const Acs& acs, const Coframe& cf) {
  int dim = acs.dim();
  require(dim == cf.dim, "dimension-error", "J does not match the coframe dimension");
  int n = dim / 2;
  std::vector<VecQ> rows;
  for (int k = 0; k < dim && static_cast<int>(rows.size()) < n; ++k) {
    VecQ v(dim);
    for (int j = 0; j < dim; ++j) v[j] = (j == k ? GaussRat(1) : GaussRat(0)) - GaussRat::i() * acs.J.at(k, j);
    // keep if independent of current rows
    MatQ probe(static_cast<int>(rows.size()) + 1, dim);
    for (size_t r = 0; r < rows.size(); ++r)
      for (int j = 0; j < dim; ++j) probe.at(static_cast<int>(r), j) = rows[r][j];
    for (int j = 0; j < dim; ++j) probe.at(static_cast<int>(rows.size()), j) = v[j];
    if (rank(probe) == static_cast<int>(rows.size()) + 1) rows.push_back(std::move(v));
  }
  require(static_cast<int>(rows.size()) == n, "not-almost-complex",
          "projector did not yield an n-dimensional (1,0) space");
  ComplexFrame out;
  out.n = n;
  out.M = MatQ(dim, dim);
  for (int r = 0; r < n; ++r)
    for (int j = 0; j < dim; ++j) {
      out.M.at(r, j) = rows[r][j];
      out.M.at(n + r, j) = rows[r][j].conj();
    }
  out.Minv = inverse(out.M);
  out.Z = out.Minv; // columns of M^-1 are dual to the rows of M
  for (int j = 1; j <= n; ++j) out.names.push_back("z" + std::to_string(j));
  for (int j = 1; j <= n; ++j) out.names.push_back("~z" + std::to_string(j));
  return out;
}

// substitution alpha_k -> sum_j (M^-1)_{kj} zeta_j
template <class R>
Form<R> to_complex_basis(const Form<R>& x, const ComplexFrame& fr) {
  return substitute(x, fr.Minv);
}
template <class R>
Form<R> to_real_basis(const Form<R>& x, const ComplexFrame& fr) {
  return substitute(x, fr.M);
}

inline std::pair<int, int> bidegree_of_mask(uint32_t mask, int n) {
  int p = std::popcount(mask & ((1u << n) - 1));
  int q = std::popcount(mask >> n);
  return {p, q};
}

// Components of a complex form by bidegree; stored in the zeta basis.
template <class R>
using Bigraded = std::map<std::pair<int, int>, Form<R>>;

template <class R>
Bigraded<R> bigrade(const Form<R>& x, const ComplexFrame& fr) {
  Form<R> z = to_complex_basis(x, fr);
  Bigraded<R> out;
  for (const auto& [mask, c] : z.terms) {
    auto pq = bidegree_of_mask(mask, fr.n);
    auto it = out.find(pq);
    if (it == out.end()) {
      Form<R> f(x.dim);
      f.terms[mask] = c;
      out[pq] = std::move(f);
    } else {
      it->second.add_term(mask, c);
    }
  }
  return out;
}

// (p,q)-component, returned in the real coframe basis.
template <class R>
Form<R> component(const Form<R>& x, const ComplexFrame& fr, int p, int q) {
  auto parts = bigrade(x, fr);
  auto it = parts.find({p, q});
  if (it == parts.end()) return Form<R>(x.dim);
  return to_real_basis(it->second, fr);
}

template <class R>
bool is_pure_bidegree(const Form<R>& x, const ComplexFrame& fr, int p, int q) {
  auto parts = bigrade(x, fr);
  if (parts.empty()) return true;
  return parts.size() == 1 && parts.begin()->first == std::make_pair(p, q);
}

template <class R>
std::pair<int, int> bidegree(const Form<R>& x, const ComplexFrame& fr) {
  auto parts = bigrade(x, fr);
  require(parts.size() == 1, "not-pure-bidegree", "form is not of pure bidegree");
  return parts.begin()->first;
}

// The four pieces of d on a pure (p,q)-form:
//   d = A_J + del_J + delbar_J + Abar_J
// of bidegrees (p+2,q-1), (p+1,q), (p,q+1), (p-1,q+2).
template <class R>
struct DComponents {
  Form<R> A, del, delbar, Abar;
};

template <class R>
DComponents<R> d_components(const Form<R>& x, const ComplexFrame& fr, const Coframe& cf) {
  if (x.is_zero())
    return DComponents<R>{Form<R>(cf.dim), Form<R>(cf.dim), Form<R>(cf.dim), Form<R>(cf.dim)};
  auto pq = bidegree(x, fr);
  Form<R> dx = exterior_derivative(x, cf);
  DComponents<R> out{Form<R>(cf.dim), Form<R>(cf.dim), Form<R>(cf.dim), Form<R>(cf.dim)};
  auto parts = bigrade(dx, fr);
  for (auto& [deg, f] : parts) {
    Form<R> real = to_real_basis(f, fr);
    if (deg == std::make_pair(pq.first + 2, pq.second - 1))
      out.A = real;
    else if (deg == std::make_pair(pq.first + 1, pq.second))
      out.del = real;
    else if (deg == std::make_pair(pq.first, pq.second + 1))
      out.delbar = real;
    else if (deg == std::make_pair(pq.first - 1, pq.second + 2))
      out.Abar = real;
    else
      fail("not-pure-bidegree", "d of a pure form left the four admissible bidegrees");
  }
  return out;
}

template <class R>
Form<R> delbar(const Form<R>& x, const ComplexFrame& fr, const Coframe& cf) {
  if (x.is_zero()) return Form<R>(cf.dim);
  auto pq = bidegree(x, fr);
  Form<R> dx = exterior_derivative(x, cf);
  return component(dx, fr, pq.first, pq.second + 1);
}

template <class R>
Form<R> del(const Form<R>& x, const ComplexFrame& fr, const Coframe& cf) {
  if (x.is_zero()) return Form<R>(cf.dim);
  auto pq = bidegree(x, fr);
  Form<R> dx = exterior_derivative(x, cf);
  return component(dx, fr, pq.first + 1, pq.second);
}

// ---- Nijenhuis tensor ---------------------------------------------------------

// N_J(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y] on constant frame fields.
inline std::map<std::pair<int, int>, VecQ> nijenhuis(const Acs& acs, const Coframe& cf) {
  int dim = cf.dim;
  std::map<std::pair<int, int>, VecQ> table;
  auto col = [&](int j) {
    VecQ v(dim);
    for (int k = 0; k < dim; ++k) v[k] = acs.J.at(k, j);
    return v;
  };
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      FrameVec<GaussRat> X = basis_vector(dim, i), Y = basis_vector(dim, j);
      FrameVec<GaussRat> JX = col(i), JY = col(j);
      VecQ term = bracket(JX, JY, cf);
      VecQ t2 = mat_apply(acs.J, bracket(JX, Y, cf));
      VecQ t3 = mat_apply(acs.J, bracket(X, JY, cf));
      VecQ t4 = bracket(X, Y, cf);
      VecQ out(dim);
      for (int k = 0; k < dim; ++k) out[k] = term[k] - t2[k] - t3[k] - t4[k];
      table[{i, j}] = std::move(out);
    }
  return table;
}

inline bool integrable(const Acs& acs, const Coframe& cf) {
  for (const auto& [ij, v] : nijenhuis(acs, cf))
    for (const auto& c : v)
      if (!c.is_zero()) return false;
  return true;
}

} // namespace scy
