#pragma once

#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "form.hpp"
#include "linalg.hpp"

namespace scy {

// Structure constants: d(alpha_k) = sum c * alpha_i ^ alpha_j with i < j.
struct StructTerm {
  GaussRat c;
  int i = 0, j = 0;
};

// Invariant coframe alpha_1..alpha_2n on a Lie-group quotient.  The d table
// holds the structure constants; an optional coordinate realization
// xi_i = sum_j F(i,j) d/dx_j lets quasi-Fourier coefficients be differentiated
// along frame directions.
struct Coframe {
  int dim = 0;
  std::vector<std::string> names;
  std::vector<std::vector<StructTerm>> d_table;
  std::optional<Mat<Fourier>> frame_fields;

  Form<GaussRat> d_generator(int k) const {
    Form<GaussRat> out(dim);
    for (const auto& t : d_table[k]) out.add_term((1u << t.i) | (1u << t.j), t.c);
    return out;
  }

  std::vector<Form<GaussRat>> d_generator_images() const {
    std::vector<Form<GaussRat>> out;
    out.reserve(dim);
    for (int k = 0; k < dim; ++k) out.push_back(d_generator(k));
    return out;
  }

  // [xi_i, xi_j] = -sum_k c^k_{ij} xi_k, the convention fixed by
  // d alpha(X, Y) = X alpha(Y) - Y alpha(X) - alpha([X, Y]).
  VecQ bracket_basis(int i, int j) const {
    VecQ out(dim, GaussRat(0));
    for (int k = 0; k < dim; ++k)
      for (const auto& t : d_table[k]) {
        if (t.i == i && t.j == j) out[k] -= t.c;
        if (t.i == j && t.j == i) out[k] += t.c;
      }
    return out;
  }

  bool has_coordinates() const { return frame_fields.has_value(); }
};

// ---- frame derivation of scalars -------------------------------------------

inline GaussRat frame_derive(const GaussRat&, int, const Coframe&) { return GaussRat(0); }

inline Jet frame_derive(const Jet& s, int i, const Coframe& cf) {
  require(i >= 0 && i < cf.dim, "unsupported-direction", "frame index out of range");
  return s.frame_derive(i);
}

inline Fourier frame_derive(const Fourier& s, int i, const Coframe& cf) {
  require(i >= 0 && i < cf.dim, "unsupported-direction", "frame index out of range");
  if (s.is_constant()) return Fourier{};
  require(cf.has_coordinates(), "unsupported-direction",
          "coframe has no coordinate realization for quasi-Fourier derivation");
  Fourier out;
  const auto& F = *cf.frame_fields;
  for (int j = 0; j < cf.dim; ++j) {
    const Fourier& fij = F.at(i, j);
    if (fij.is_zero()) continue;
    out += fij * s.coordinate_derive(j);
  }
  return out;
}

// ---- exterior derivative ----------------------------------------------------

// d(s alpha_I) = (sum_i xi_i(s) alpha_i) ^ alpha_I + s * d(alpha_I), the
// Chevalley-Eilenberg differential on invariant data.
template <class R>
Form<R> exterior_derivative(const Form<R>& x, const Coframe& cf) {
  Form<R> out(cf.dim);
  auto images = cf.d_generator_images();
  for (const auto& [mask, c] : x.terms) {
    for (int i = 0; i < cf.dim; ++i) {
      R dc = frame_derive(c, i, cf);
      if (dc.is_zero()) continue;
      uint32_t bit = 1u << i;
      if (mask & bit) continue; // alpha_i ^ alpha_I = 0
      if (merge_sign(bit, mask) < 0) dc = -dc;
      out.add_term(bit | mask, dc);
    }
    out += derivation_extend(Form<R>::monomial(cf.dim, mask, c), images, /*odd=*/true);
  }
  return out;
}

// ---- frame vectors and brackets ----------------------------------------------

template <class R>
using FrameVec = std::vector<R>; // components over the dual frame xi_1..xi_2n

template <class R>
R frame_derive_along(const FrameVec<R>& X, const R& s, const Coframe& cf) {
  R out{};
  for (int i = 0; i < cf.dim; ++i) {
    if (X[i].is_zero()) continue;
    out += X[i] * frame_derive(s, i, cf);
  }
  return out;
}

// [X, Y] including derivative terms of non-constant coefficients.
template <class R>
FrameVec<R> bracket(const FrameVec<R>& X, const FrameVec<R>& Y, const Coframe& cf) {
  require(static_cast<int>(X.size()) == cf.dim && static_cast<int>(Y.size()) == cf.dim,
          "degree-mismatch", "frame vector arity");
  FrameVec<R> out(cf.dim);
  for (int i = 0; i < cf.dim; ++i)
    for (int j = 0; j < cf.dim; ++j) {
      if (X[i].is_zero() || Y[j].is_zero()) continue;
      VecQ sb = cf.bracket_basis(i, j);
      R xy = X[i] * Y[j];
      for (int k = 0; k < cf.dim; ++k)
        if (!sb[k].is_zero()) out[k] += ring_scale(xy, sb[k]);
    }
  for (int k = 0; k < cf.dim; ++k) {
    out[k] += frame_derive_along(X, Y[k], cf);
    out[k] -= frame_derive_along(Y, X[k], cf);
  }
  return out;
}

inline FrameVec<GaussRat> basis_vector(int dim, int i) {
  FrameVec<GaussRat> v(dim, GaussRat(0));
  v[i] = GaussRat(1);
  return v;
}

// ---- coframe construction ----------------------------------------------------

inline Coframe make_coframe(int dim, std::vector<std::vector<StructTerm>> d_table,
                            std::vector<std::string> names = {},
                            std::optional<Mat<Fourier>> frame_fields = std::nullopt) {
  require(dim > 0 && dim % 2 == 0, "dimension-error", "coframe dimension must be even");
  require(dim <= 30, "dimension-error", "coframe dimension too large for mask basis");
  require(static_cast<int>(d_table.size()) == dim, "jacobi-violation",
          "d table must cover every generator");
  Coframe cf;
  cf.dim = dim;
  cf.d_table = std::move(d_table);
  if (names.empty())
    for (int k = 0; k < dim; ++k) names.push_back("a" + std::to_string(k + 1));
  require(static_cast<int>(names.size()) == dim, "dimension-error", "coframe name arity");
  cf.names = std::move(names);
  for (int k = 0; k < dim; ++k)
    for (const auto& t : cf.d_table[k])
      require(t.i >= 0 && t.i < t.j && t.j < dim, "jacobi-violation",
              "structure term indices must be strictly increasing and in range");

  // d^2 = 0 on every generator, which is the Jacobi identity.
  for (int k = 0; k < dim; ++k) {
    Form<GaussRat> dd = exterior_derivative(cf.d_generator(k), cf);
    require(dd.is_zero(), "jacobi-violation",
            "d^2 " + cf.names[k] + " = " + form_to_string(dd, cf.names) + " != 0");
  }

  if (frame_fields) {
    require(frame_fields->rows == dim && frame_fields->cols == dim, "dimension-error",
            "frame field table must be dim x dim");
    cf.frame_fields = std::move(frame_fields);
    // declared coordinate fields must reproduce the structure constants:
    // [xi_i, xi_j] computed from coordinates == bracket from the d table
    const auto& F = *cf.frame_fields;
    int m = dim;
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) {
        std::vector<Fourier> coord(m);
        for (int k = 0; k < m; ++k) {
          Fourier acc;
          for (int l = 0; l < m; ++l) {
            if (!F.at(i, l).is_zero()) acc += F.at(i, l) * F.at(j, k).coordinate_derive(l);
            if (!F.at(j, l).is_zero()) acc -= F.at(j, l) * F.at(i, k).coordinate_derive(l);
          }
          coord[k] = acc;
        }
        VecQ sb = cf.bracket_basis(i, j);
        std::vector<Fourier> expect(m);
        for (int k = 0; k < m; ++k) {
          Fourier acc;
          for (int l = 0; l < m; ++l)
            if (!sb[l].is_zero()) acc += GaussRat(sb[l]) * F.at(l, k);
          expect[k] = acc;
        }
        for (int k = 0; k < m; ++k)
          require(coord[k] == expect[k], "jacobi-violation",
                  "frame fields do not realize the structure constants at [xi_" +
                      std::to_string(i + 1) + ", xi_" + std::to_string(j + 1) + "]");
      }
  }
  return cf;
}

// Abelian coframe dx_1..dx_2n with the identity coordinate realization.
inline Coframe abelian_coframe(int dim, const std::string& prefix = "a") {
  std::vector<std::vector<StructTerm>> table(dim);
  std::vector<std::string> names;
  for (int k = 0; k < dim; ++k) names.push_back(prefix + std::to_string(k + 1));
  Mat<Fourier> F(dim, dim);
  for (int i = 0; i < dim; ++i) F.at(i, i) = Fourier::constant(dim, GaussRat(1));
  return make_coframe(dim, std::move(table), std::move(names), std::move(F));
}

} // namespace scy
