#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acs.hpp"
#include "coframe.hpp"
#include "error.hpp"
#include "form.hpp"
#include "linalg.hpp"
#include "rng.hpp"
#include "scy_checks.hpp"

namespace scy {

template <class R>
Mat<R> mat_promote(const MatQ& A, const R& one) {
  Mat<R> out(A.rows, A.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      if (!A.at(i, j).is_zero()) out.at(i, j) = ring_scale(one, A.at(i, j));
  return out;
}

// mixed products with a constant matrix, no ring unit needed
template <class R>
Mat<R> mat_mul_const_right(const Mat<R>& A, const MatQ& B) {
  require(A.cols == B.rows, "incompatible-ring", "matrix shape mismatch");
  Mat<R> out(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      if (A.at(i, k).is_zero()) continue;
      for (int j = 0; j < B.cols; ++j)
        if (!B.at(k, j).is_zero()) out.at(i, j) += ring_scale(A.at(i, k), B.at(k, j));
    }
  return out;
}
template <class R>
Mat<R> mat_mul_const_left(const MatQ& A, const Mat<R>& B) {
  require(A.cols == B.rows, "incompatible-ring", "matrix shape mismatch");
  Mat<R> out(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      if (A.at(i, k).is_zero()) continue;
      for (int j = 0; j < B.cols; ++j)
        if (!B.at(k, j).is_zero()) out.at(i, j) += ring_scale(B.at(k, j), A.at(i, k));
    }
  return out;
}

// ---- the close-structure parametrization ----------------------------------------

// L symmetric w.r.t. g_J, anticommuting with J, ||L|| < 1, R = I + L
// invertible; then Jtilde = R J R^-1 is the nearby calibrated structure.
struct DeformationEndo {
  MatQ L, R, Rinv, Jtilde;
  std::string norm_certificate; // how ||L|| < 1 was certified
};

namespace detail {
inline Rational abs_rational(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// row-sum norm of a real matrix
inline Rational row_sum_norm(const MatQ& A) {
  Rational best(0);
  for (int i = 0; i < A.rows; ++i) {
    Rational s(0);
    for (int j = 0; j < A.cols; ++j) {
      require(A.at(i, j).is_real(), "validation-error", "deformation endomorphism must be real");
      s += abs_rational(A.at(i, j).re);
    }
    if (s > best) best = s;
  }
  return best;
}
} // namespace detail

// Certifies ||L||_g < 1 for a g-symmetric L: the spectral radius is bounded by
// the row-sum norm of any power, rho(L) <= ||L^m||^(1/m).  Certified failure:
// some basis vector with g(Lv,Lv) >= g(v,v).
enum class NormCheck { certified_pass, certified_fail, unknown };

inline NormCheck certify_norm_below_one(const MatQ& L, const MatQ& g, std::string* note) {
  MatQ P = L;
  Rational one(1);
  for (int m : {1, 2, 4, 8}) {
    // advance P to L^m lazily
    static_cast<void>(m);
    Rational bound = detail::row_sum_norm(P);
    if (bound < 1) {
      if (note) *note = "row-sum bound on L^" + std::to_string(m) + " = " + bound.str();
      return NormCheck::certified_pass;
    }
    P = P * P;
  }
  // try to certify failure on basis vectors
  MatQ Q = L.transpose() * g * L - g; // g(Lv,Lv) - g(v,v)
  for (int i = 0; i < L.rows; ++i)
    if (Q.at(i, i).is_real() && Q.at(i, i).re >= 0) {
      if (note) *note = "g(L e_" + std::to_string(i + 1) + ") >= g(e_" + std::to_string(i + 1) + ")";
      return NormCheck::certified_fail;
    }
  if (note) *note = "norm bound not certified";
  return NormCheck::unknown;
}

inline DeformationEndo make_deformation(const MatQ& L, const Acs& acs, const MatQ& g) {
  int dim = acs.dim();
  require(L.rows == dim && L.cols == dim, "validation-error", "L dimension mismatch");
  require(L.transpose() * g == g * L, "validation-error", "L is not symmetric w.r.t. g_J");
  require(L * acs.J == GaussRat(-1) * (acs.J * L), "validation-error",
          "L does not anticommute with J");
  DeformationEndo out;
  out.L = L;
  out.R = MatQ::identity(dim) + L;
  require(!det(out.R).is_zero(), "validation-error", "I + L is singular");
  out.Rinv = inverse(out.R);
  out.Jtilde = out.R * acs.J * out.Rinv;
  std::string note;
  NormCheck nc = certify_norm_below_one(L, g, &note);
  out.norm_certificate = note;
  require(nc != NormCheck::certified_fail, "validation-error", "||L|| >= 1 certified: " + note);
  require(nc == NormCheck::certified_pass, "validation-error", "||L|| < 1 not certified: " + note);
  return out;
}

// ---- tau, N_L, sigma -------------------------------------------------------------

// tau_L: zero-order derivation, gamma(L., .., .) summed over slots; on the
// coframe alpha_k -> sum_j L_{kj} alpha_j (slot action of L).
template <class R>
Form<R> tau(const Form<R>& x, const MatQ& L) {
  std::vector<Form<GaussRat>> images;
  for (int k = 0; k < L.rows; ++k) {
    Form<GaussRat> img(L.rows);
    for (int j = 0; j < L.cols; ++j) img.add_term(1u << j, L.at(k, j));
    images.push_back(std::move(img));
  }
  return derivation_extend(x, images, /*odd=*/false);
}

template <class R>
Form<R> tau_ring(const Form<R>& x, const Mat<R>& L) {
  std::vector<Form<R>> images;
  for (int k = 0; k < L.rows; ++k) {
    Form<R> img(L.rows);
    for (int j = 0; j < L.cols; ++j) img.add_term(1u << j, L.at(k, j));
    images.push_back(std::move(img));
  }
  return derivation_extend(x, images, /*odd=*/false);
}

// N_L(X,Y) = [LX,LY] - L[LX,Y] - L[X,LY] + L^2 [X,Y] on the frame.
inline std::map<std::pair<int, int>, VecQ> n_l_table(const MatQ& L, const Coframe& cf) {
  int dim = cf.dim;
  std::map<std::pair<int, int>, VecQ> out;
  auto col = [&](int j) {
    VecQ v(dim);
    for (int k = 0; k < dim; ++k) v[k] = L.at(k, j);
    return v;
  };
  MatQ L2 = L * L;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      VecQ t1 = bracket(col(i), col(j), cf);
      VecQ t2 = mat_apply(L, bracket(col(i), basis_vector(dim, j), cf));
      VecQ t3 = mat_apply(L, bracket(basis_vector(dim, i), col(j), cf));
      VecQ t4 = mat_apply(L2, cf.bracket_basis(i, j));
      VecQ v(dim);
      for (int k = 0; k < dim; ++k) v[k] = t1[k] - t2[k] - t3[k] + t4[k];
      out[{i, j}] = std::move(v);
    }
  return out;
}

// sigma_L: with the bracket convention d alpha(X,Y) = X a(Y) - Y a(X) - a([X,Y])
// the Prop.-4.1 decomposition forces sigma_L alpha (X,Y) = -alpha(R^-1 N_L(X,Y))
// on 1-forms, extended as an odd anti-derivation.
template <class R>
Form<R> sigma(const Form<R>& x, const DeformationEndo& def, const Coframe& cf) {
  auto table = n_l_table(def.L, cf);
  int dim = cf.dim;
  std::vector<Form<GaussRat>> images;
  for (int k = 0; k < dim; ++k) {
    Form<GaussRat> img(dim);
    for (const auto& [ij, v] : table) {
      VecQ w = mat_apply(def.Rinv, v);
      img.add_term((1u << ij.first) | (1u << ij.second), -w[k]);
    }
    images.push_back(std::move(img));
  }
  return derivation_extend(x, images, /*odd=*/true);
}

// ---- the conjugated-derivative identities ----------------------------------------

// R d R^-1 x - d x - [tau_L, d] x - sigma_L x; identically zero.
template <class R>
Form<R> prop41_residual(const Form<R>& x, const DeformationEndo& def, const Coframe& cf) {
  Form<R> lhs = substitute(exterior_derivative(substitute(x, def.Rinv), cf), def.R);
  Form<R> dx = exterior_derivative(x, cf);
  Form<R> comm = tau(dx, def.L) - exterior_derivative(tau(x, def.L), cf);
  return lhs - dx - comm - sigma(x, def, cf);
}

// part 1: R delbar_{Jt} f = delbar_J f + L del_J f for functions f.
template <class R>
Form<R> prop42_residual_function(const R& f, const DeformationEndo& def, const Acs& acs,
                                 const Coframe& cf) {
  Acs Jt = make_acs(def.Jtilde);
  ComplexFrame fr = build_complex_frame(acs, cf);
  ComplexFrame frt = build_complex_frame(Jt, cf);
  Form<R> f0 = Form<R>::monomial(cf.dim, 0, f);
  Form<R> df = exterior_derivative(f0, cf);
  Form<R> lhs = substitute(component(df, frt, 0, 1), def.R);
  Form<R> rhs = component(df, fr, 0, 1) + tau(component(df, fr, 1, 0), def.L);
  return lhs - rhs;
}

// part 2: R delbar_{Jt} R^-1 x = delbar_J x + [tau_L,d]^{p,q+1} x + sigma^{p,q+1} x
// for x of pure J-bidegree (p,q).
template <class R>
Form<R> prop42_residual_form(const Form<R>& x, const DeformationEndo& def, const Acs& acs,
                             const Coframe& cf) {
  Acs Jt = make_acs(def.Jtilde);
  ComplexFrame fr = build_complex_frame(acs, cf);
  ComplexFrame frt = build_complex_frame(Jt, cf);
  auto pq = bidegree(x, fr);
  Form<R> transported = substitute(x, def.Rinv); // pure (p,q) w.r.t. Jtilde
  Form<R> dbar_t = component(exterior_derivative(transported, cf), frt, pq.first, pq.second + 1);
  Form<R> lhs = substitute(dbar_t, def.R);
  Form<R> comm = tau(exterior_derivative(x, cf), def.L) -
                 exterior_derivative(tau(x, def.L), cf);
  Form<R> rhs = component(exterior_derivative(x, cf), fr, pq.first, pq.second + 1) +
                component(comm, fr, pq.first, pq.second + 1) +
                component(sigma(x, def, cf), fr, pq.first, pq.second + 1);
  return lhs - rhs;
}

// ---- the deformation form ---------------------------------------------------------

// mu_L, gamma_L, theta_L = mu_L - gamma_L for a delbar-closed volume candidate:
//   (tau_L Abar_J psi)^{n,1} = mu_L(psi) ^ psi,
//   del_J tau_L psi        = gamma_L(psi) ^ psi.
// Defined for any L anticommuting with J (function entries allowed); the norm
// and symmetry gates of the close-structure parametrization are not needed
// here.
template <class R>
struct DeformationForm {
  Form<R> mu, gamma, theta; // (0,1)-forms in the real coframe basis
};

template <class R>
DeformationForm<R> deformation_form_unchecked(const Form<R>& psi, const Mat<R>& L,
                                              const ComplexFrame& fr, const Coframe& cf) {
  validate_volume_candidate(psi, fr);
  int n = fr.n;
  Form<R> dpsi = exterior_derivative(psi, cf);
  Form<R> abar = component(dpsi, fr, n - 1, 2);
  Form<R> tau_abar = tau_ring(abar, L);
  DeformationForm<R> out;
  out.mu = divide_by_psi(component(tau_abar, fr, n, 1), psi, fr);
  Form<R> tau_psi = tau_ring(psi, L);
  Form<R> d_tau_psi = exterior_derivative(tau_psi, cf);
  out.gamma = divide_by_psi(component(d_tau_psi, fr, n, 1), psi, fr);
  out.theta = out.mu - out.gamma;
  return out;
}

template <class R>
DeformationForm<R> deformation_form(const Form<R>& psi, const Mat<R>& L, const Acs& acs,
                                    const Coframe& cf) {
  ComplexFrame fr = build_complex_frame(acs, cf);
  require(delbar(psi, fr, cf).is_zero(), "precondition-error",
          "deformation form needs a delbar-closed volume candidate");
  require((mat_mul_const_right(L, acs.J) + mat_mul_const_left(acs.J, L)).is_zero(),
          "validation-error", "L does not anticommute with J");
  return deformation_form_unchecked(psi, L, fr, cf);
}

// ---- Lemma 4.4: behavior under psi -> f psi ---------------------------------------

// eta(f) = -(1/f) sum_{k,r} Z_k(f) L_{k rbar} zbar_r, where L_{k rbar} is the
// zbar_r coefficient of the slot action of L on zeta_k and Z_k is the frame
// dual to zeta_k.
template <class R>
Form<R> eta_of(const R& f, const MatQ& L, const ComplexFrame& fr, const Coframe& cf) {
  int n = fr.n;
  R minus_finv = -ring_invert_unit(f);
  Form<R> out_z(cf.dim); // assembled in the zeta basis
  for (int k = 0; k < n; ++k) {
    // Z_k(f) = sum_j (M^-1)_{jk} xi_j(f)
    R zkf{};
    for (int j = 0; j < cf.dim; ++j) {
      if (fr.Z.at(j, k).is_zero()) continue;
      zkf += ring_scale(frame_derive(f, j, cf), fr.Z.at(j, k));
    }
    if (zkf.is_zero()) continue;
    // slot action of L on zeta_k, read off in the zeta basis
    Form<GaussRat> zeta_k(cf.dim);
    for (int j = 0; j < cf.dim; ++j) zeta_k.add_term(1u << j, fr.M.at(k, j));
    Form<GaussRat> lz = to_complex_basis(substitute(zeta_k, L), fr);
    for (int r = 0; r < n; ++r) {
      GaussRat lkr = lz.coeff(1u << (n + r));
      if (lkr.is_zero()) continue;
      out_z.add_term(1u << (n + r), ring_scale(minus_finv * zkf, lkr));
    }
  }
  return to_real_basis(out_z, fr);
}

// Residual pair of Lemma 4.4 for psi' = f psi:
//   mu_L(psi') - mu_L(psi)  and  gamma_L(psi') - gamma_L(psi) - eta(f).
// The identities are formal and need no closedness of f psi, so the shifted
// side is computed without the delbar gate.
template <class R>
std::pair<Form<R>, Form<R>> lemma44_residuals(const Form<R>& psi, const R& f, const MatQ& L,
                                              const Acs& acs, const Coframe& cf) {
  ComplexFrame fr = build_complex_frame(acs, cf);
  require(delbar(psi, fr, cf).is_zero(), "precondition-error",
          "lemma requires a delbar-closed base volume form");
  R one = f * ring_invert_unit(f);
  Mat<R> Lr = mat_promote(L, one);
  auto base = deformation_form_unchecked(psi, Lr, fr, cf);
  Form<R> fpsi = f * psi;
  auto moved = deformation_form_unchecked(fpsi, Lr, fr, cf);
  Form<R> r_mu = moved.mu - base.mu;
  Form<R> r_gamma = moved.gamma - base.gamma - eta_of(f, L, fr, cf);
  return {r_mu, r_gamma};
}

// ---- the tangency condition of the deformation theorem ----------------------------

// theta_L(psi) is delbar-exact with the supplied primitive g:
//   delbar_J g + theta_L(psi) = 0, exactly.
template <class R>
bool tangency_condition(const Form<R>& psi, const Mat<R>& L, const Acs& acs, const Coframe& cf,
                        const R& g) {
  ComplexFrame fr = build_complex_frame(acs, cf);
  auto df = deformation_form(psi, L, acs, cf);
  Form<R> g0 = Form<R>::monomial(cf.dim, 0, g);
  Form<R> dbar_g = component(exterior_derivative(g0, cf), fr, 0, 1);
  return (dbar_g + df.theta).is_zero();
}

// ---- randomized valid L -----------------------------------------------------------

// Rejection sampling: project a random matrix onto the g-symmetric,
// J-anticommuting endomorphisms and scale into the certified-norm region.
inline MatQ random_valid_L(Rng& rng, const Acs& acs, const MatQ& g, int max_num = 2,
                           int max_den = 3) {
  int dim = acs.dim();
  MatQ ginv = inverse(g);
  GaussRat half(Rational(1, 2));
  for (int attempt = 0; attempt < 256; ++attempt) {
    MatQ S(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) S.at(i, j) = rng.gauss_real(max_num, max_den);
    MatQ sym = half * (S + ginv * S.transpose() * g);
    MatQ L = half * (sym + acs.J * sym * acs.J);
    if (L.is_zero()) continue;
    Rational bound = detail::row_sum_norm(L);
    GaussRat scale(Rational(1) / (bound + 1));
    L = scale * L;
    make_deformation(L, acs, g); // validates; throws on a bad draw
    return L;
  }
  fail("validation-error", "could not sample a valid deformation endomorphism");
}

} // namespace scy
