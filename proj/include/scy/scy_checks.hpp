#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acs.hpp"
#include "catalog.hpp"
#include "coframe.hpp"
#include "connection.hpp"
#include "error.hpp"
#include "form.hpp"

namespace scy {

// ---- volume-form candidates ---------------------------------------------------

// Nowhere vanishing is certified algebraically: the single (n,0) coefficient
// in the zeta basis must be a declared unit of its ring.
template <class R>
struct VolumeCandidate {
  Form<R> psi; // real coframe basis
  R top;       // unit coefficient of zeta_1 ^ ... ^ zeta_n
};

inline bool ring_is_unit(const GaussRat& x) { return !x.is_zero(); }
inline bool ring_is_unit(const Jet& x) { return x.is_unit(); }
inline bool ring_is_unit(const Fourier& x) { return x.is_unit(); }
inline GaussRat ring_invert_unit(const GaussRat& x) { return x.inverse(); }
inline Jet ring_invert_unit(const Jet& x) { return x.invert_unit(); }
inline Fourier ring_invert_unit(const Fourier& x) { return x.invert_unit(); }

template <class R>
VolumeCandidate<R> validate_volume_candidate(const Form<R>& psi, const ComplexFrame& fr) {
  Form<R> z = to_complex_basis(psi, fr);
  require(z.terms.size() == 1, "bidegree-error",
          "volume candidate must be a single (n,0) monomial");
  const auto& [mask, c] = *z.terms.begin();
  require(mask == fr.holo_mask(), "bidegree-error", "volume candidate is not of bidegree (n,0)");
  require(ring_is_unit(c), "not-invertible",
          "volume candidate coefficient is not a declared unit");
  return VolumeCandidate<R>{psi, c};
}

// ---- divide by psi --------------------------------------------------------------

// Unique eta of bidegree (0,1) with eta ^ psi = beta, for beta of bidegree
// (n,1).  Exact: in the zeta basis beta = sum_r b_r zeta_{1..n} ^ zbar_r and
// eta_r = (-1)^n b_r / top(psi).
template <class R>
Form<R> divide_by_psi(const Form<R>& beta, const Form<R>& psi, const ComplexFrame& fr) {
  auto cand = validate_volume_candidate(psi, fr);
  int n = fr.n;
  Form<R> bz = to_complex_basis(beta, fr);
  Form<R> eta(psi.dim);
  R inv = ring_invert_unit(cand.top);
  for (const auto& [mask, c] : bz.terms) {
    require((mask & fr.holo_mask()) == fr.holo_mask() && std::popcount(mask >> n) == 1,
            "bidegree-error", "divide_by_psi needs a form of bidegree (n,1)");
    uint32_t bar = mask & ~fr.holo_mask();
    R val = c * inv;
    if (n & 1) val = -val;
    eta.add_term(bar, val);
  }
  return to_real_basis(eta, fr);
}

// ---- symplectic Calabi-Yau / half-flat reports ---------------------------------

struct ScyReport {
  bool calibrated = false;
  bool dbar_closed = false;
  bool nabla_parallel = false;
  Form<GaussRat> dbar_witness; // delbar psi when it does not vanish
  bool ok() const { return calibrated && dbar_closed && nabla_parallel; }
};

inline ScyReport check_scy(const ManifoldBundle& b) {
  Acs J = make_acs(b.J);
  ComplexFrame fr = build_complex_frame(J, b.cf);
  validate_volume_candidate(b.psi, fr);
  ScyReport rep;
  auto cal = check_calibrated(b.omega, J, b.dim());
  rep.calibrated = cal.calibrated;
  rep.dbar_witness = delbar(b.psi, fr, b.cf);
  rep.dbar_closed = rep.dbar_witness.is_zero();
  if (rep.calibrated) {
    Connection ch = chern_connection(cal.metric, J, b.cf);
    rep.nabla_parallel = true;
    for (int i = 0; i < b.dim(); ++i)
      if (!covariant_derivative_form(ch, b.psi, i).is_zero()) rep.nabla_parallel = false;
  }
  return rep;
}

struct HalfFlatReport {
  bool normalization_ok = false; // psi ^ conj psi = -(4/3) i omega^3
  bool real_part_closed = false; // d Re psi = 0
  std::optional<GaussRat> lambda; // psi ^ conj psi = i lambda omega^3
  bool ok() const { return normalization_ok && real_part_closed; }
};

inline HalfFlatReport check_half_flat(const ManifoldBundle& b) {
  require(b.dim() == 6, "dimension-error", "half-flat structures live in dimension 6");
  HalfFlatReport rep;
  Form<GaussRat> pairing = wedge(b.psi, b.psi.conj());
  Form<GaussRat> om3 = wedge(wedge(b.omega, b.omega), b.omega);
  auto ratio = top_proportionality(pairing, om3, 6);
  if (ratio) {
    // ratio = i * lambda
    rep.lambda = *ratio * GaussRat::i().inverse();
    rep.normalization_ok = (*ratio == GaussRat(Rational(0), Rational(-4, 3)));
  }
  Form<GaussRat> re_psi = (b.psi + b.psi.conj()).scaled(GaussRat(Rational(1, 2)));
  rep.real_part_closed = exterior_derivative(re_psi, b.cf).is_zero();
  return rep;
}

// ---- the d Re(f psi) obstruction ------------------------------------------------

// Expansion of d Re(f psi) for a formal f = u + iv over a 6-dimensional
// bundle; coefficients are first-order jet polynomials.
inline Form<Jet> half_flat_obstruction(const ManifoldBundle& b, const Jet& f) {
  require(b.dim() == 6, "dimension-error", "obstruction expansion lives in dimension 6");
  Form<Jet> psi_j(6);
  for (const auto& [mask, c] : b.psi.terms) psi_j.add_term(mask, Jet::constant(c));
  Form<Jet> fpsi = f * psi_j;
  Form<Jet> re = (fpsi + fpsi.conj()).scaled(GaussRat(Rational(1, 2)));
  return exterior_derivative(re, b.cf);
}

// Does coefficient-vanishing of the expansion force u = v = 0?  Each 4-form
// coefficient is linear in the jet generators; we ask whether u and v lie in
// the row span of the coefficient functionals.
inline bool obstruction_forces_uv_zero(const Form<Jet>& expansion, int dim) {
  std::vector<int> gens; // generator ids appearing anywhere
  auto gen_index = [&](int g) {
    for (size_t k = 0; k < gens.size(); ++k)
      if (gens[k] == g) return static_cast<int>(k);
    gens.push_back(g);
    return static_cast<int>(gens.size()) - 1;
  };
  gen_index(Jet::GEN_U);
  gen_index(Jet::GEN_V);
  for (int k = 0; k < dim; ++k) {
    gen_index(Jet::gen_du(k));
    gen_index(Jet::gen_dv(k));
  }
  std::vector<VecQ> rows;
  for (const auto& [mask, c] : expansion.terms) {
    VecQ row(gens.size(), GaussRat(0));
    for (const auto& [mono, coeff] : c.terms()) {
      require(mono.size() == 1 && mono[0].second == 1, "validation-error",
              "obstruction coefficients must be linear in the jet generators");
      row[gen_index(mono[0].first)] = coeff;
    }
    rows.push_back(std::move(row));
  }
  MatQ M(static_cast<int>(rows.size()), static_cast<int>(gens.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < gens.size(); ++j) M.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  VecQ eu(gens.size(), GaussRat(0)), ev(gens.size(), GaussRat(0));
  eu[0] = GaussRat(1);
  ev[1] = GaussRat(1);
  return in_row_span(M, eu) && in_row_span(M, ev);
}

// ---- the admissibility systems on Kodaira-Thurston x T^2 -----------------------

// The three complex relations R_j with delbar(f psi) = (sum_j R_j zbar_j) ^ psi.
struct KtSystems {
  std::vector<Jet> complex_relations;           // R_1, R_2, R_3
  std::vector<std::pair<Jet, Jet>> real_systems; // (Re, Im) pairs, scaled by 2
};

inline KtSystems admissibility_systems(const ManifoldBundle& b, const Jet& f) {
  Acs J = make_acs(b.J);
  ComplexFrame fr = build_complex_frame(J, b.cf);
  Form<Jet> psi_j(b.dim());
  for (const auto& [mask, c] : b.psi.terms) psi_j.add_term(mask, Jet::constant(c));
  Form<Jet> fpsi = f * psi_j;
  Form<Jet> db = delbar(fpsi, fr, b.cf);
  Form<Jet> eta = divide_by_psi(db, psi_j, fr);
  Form<Jet> etaz = to_complex_basis(eta, fr);
  KtSystems out;
  for (int r = 0; r < fr.n; ++r) {
    Jet R_r = etaz.coeff(1u << (fr.n + r));
    out.complex_relations.push_back(R_r);
    Jet two_re = R_r + R_r.conj();
    Jet two_im = GaussRat::i().inverse() * (R_r - R_r.conj());
    out.real_systems.push_back({two_re, two_im});
  }
  return out;
}

// ---- bounded-frequency admissibility oracle -------------------------------------

// Scans every character f = e(N) with |N|_inf <= degree for a solution of
// delbar(f psi) = 0.  Frequencies never mix: every operator involved (frame
// derivations, multiplication by the x4 entry of the frame table, wedge with
// constant forms) preserves the character, so single characters are exhaustive
// for trig-polynomial solutions.
struct AdmissibilityScan {
  bool only_zero = true;
  std::optional<std::vector<int>> witness;
  long candidates = 0;
};

inline AdmissibilityScan bounded_admissibility_scan(const ManifoldBundle& b, int degree) {
  Acs J = make_acs(b.J);
  ComplexFrame fr = build_complex_frame(J, b.cf);
  int m = b.dim();
  Form<Fourier> psi_f(m);
  for (const auto& [mask, c] : b.psi.terms) psi_f.add_term(mask, Fourier::constant(m, c));
  Form<Fourier> dbar_psi = delbar(psi_f, fr, b.cf);

  AdmissibilityScan out;
  std::vector<int> N(m, -degree);
  for (;;) {
    ++out.candidates;
    Fourier f = Fourier::character(m, N);
    // delbar(f psi) = delbar(f) ^ psi + f delbar(psi); for a 0-form delbar f
    // is the (0,1) part of df.
    Form<Fourier> f0 = Form<Fourier>::monomial(m, 0, f);
    Form<Fourier> df = exterior_derivative(f0, b.cf);
    Form<Fourier> dbar_f = component(df, fr, 0, 1);
    Form<Fourier> total = wedge(dbar_f, psi_f) + f * dbar_psi;
    if (total.is_zero()) {
      out.only_zero = false;
      out.witness = N;
      return out;
    }
    int k = 0;
    while (k < m && N[k] == degree) N[k++] = -degree;
    if (k == m) break;
    ++N[k];
  }
  return out;
}

} // namespace scy
