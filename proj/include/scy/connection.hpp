#pragma once

#include <map>
#include <utility>
#include <vector>

#include "acs.hpp"
#include "coframe.hpp"
#include "error.hpp"
#include "form.hpp"
#include "linalg.hpp"

namespace scy {

// Invariant connection: gamma[i](k,j) = Gamma^k_{ij}, i.e. the xi_k-component
// of nabla_{xi_i} xi_j.  Constant coefficients only.
struct Connection {
  int dim = 0;
  std::vector<MatQ> gamma;

  VecQ nabla(int i, int j) const {
    VecQ out(dim);
    for (int k = 0; k < dim; ++k) out[k] = gamma[i].at(k, j);
    return out;
  }
};

// Koszul formula specialized to constant invariant data:
//   2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
inline Connection levi_civita(const MatQ& g, const Coframe& cf) {
  int dim = cf.dim;
  require(g.rows == dim && g.cols == dim, "singular-metric", "metric dimension mismatch");
  require(g == g.transpose(), "singular-metric", "metric must be symmetric");
  MatQ ginv = inverse(g); // throws "singular-matrix" on degenerate input
  auto pair_g = [&](const VecQ& x, const VecQ& y) {
    GaussRat out(0);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) out += x[a] * g.at(a, b) * y[b];
    return out;
  };
  Connection conn;
  conn.dim = dim;
  conn.gamma.assign(dim, MatQ(dim, dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      VecQ rhs(dim);
      VecQ ei = basis_vector(dim, i), ej = basis_vector(dim, j);
      for (int k = 0; k < dim; ++k) {
        VecQ ek = basis_vector(dim, k);
        GaussRat val = pair_g(cf.bracket_basis(i, j), ek) - pair_g(cf.bracket_basis(j, k), ei) +
                       pair_g(cf.bracket_basis(k, i), ej);
        rhs[k] = val * GaussRat(Rational(1, 2));
      }
      // nabla_i xi_j = g^{-1} rhs   (rhs_k = g(nabla_i xi_j, xi_k))
      VecQ sol = mat_apply(ginv, rhs);
      for (int k = 0; k < dim; ++k) conn.gamma[i].at(k, j) = sol[k];
    }
  return conn;
}

inline std::map<std::pair<int, int>, VecQ> torsion(const Connection& conn, const Coframe& cf) {
  std::map<std::pair<int, int>, VecQ> out;
  for (int i = 0; i < conn.dim; ++i)
    for (int j = i + 1; j < conn.dim; ++j) {
      VecQ t = conn.nabla(i, j);
      VecQ s = conn.nabla(j, i);
      VecQ b = cf.bracket_basis(i, j);
      VecQ v(conn.dim);
      for (int k = 0; k < conn.dim; ++k) v[k] = t[k] - s[k] - b[k];
      out[{i, j}] = std::move(v);
    }
  return out;
}

// (nabla_i g)(xi_j, xi_k) = -(Gamma_i^T g + g Gamma_i); zero iff compatible.
inline MatQ covariant_derivative_metric(const Connection& conn, const MatQ& g, int i) {
  return GaussRat(-1) * (conn.gamma[i].transpose() * g + g * conn.gamma[i]);
}

// (nabla_i A) = Gamma_i A - A Gamma_i for an endomorphism with constant entries.
inline MatQ covariant_derivative_endo(const Connection& conn, const MatQ& A, int i) {
  return conn.gamma[i] * A - A * conn.gamma[i];
}

// Induced connection on forms: nabla_i alpha_k = -sum_j Gamma^k_{ij} alpha_j.
// Constant coefficients are enforced by the GaussRat instantiation.
inline Form<GaussRat> covariant_derivative_form(const Connection& conn,
                                                const Form<GaussRat>& x, int i) {
  std::vector<Form<GaussRat>> images;
  for (int k = 0; k < conn.dim; ++k) {
    Form<GaussRat> img(conn.dim);
    for (int j = 0; j < conn.dim; ++j) img.add_term(1u << j, -conn.gamma[i].at(k, j));
    images.push_back(std::move(img));
  }
  return derivation_extend(x, images, /*odd=*/false);
}

inline bool metric_compatible(const Connection& conn, const MatQ& g) {
  for (int i = 0; i < conn.dim; ++i)
    if (!covariant_derivative_metric(conn, g, i).is_zero()) return false;
  return true;
}

inline bool torsion_free(const Connection& conn, const Coframe& cf) {
  for (const auto& [ij, v] : torsion(conn, cf))
    for (const auto& c : v)
      if (!c.is_zero()) return false;
  return true;
}

// Chern connection nabla = nabla^LC - (1/2) J (nabla^LC J); it preserves g and
// J and has torsion N_J / 2, all verified exactly by the caller-facing checks.
inline Connection chern_connection(const MatQ& g, const Acs& acs, const Coframe& cf) {
  require(acs.J.transpose() * g * acs.J == g, "incompatible-pair", "g is not J-invariant");
  Connection lc = levi_civita(g, cf);
  Connection out;
  out.dim = lc.dim;
  out.gamma.reserve(lc.dim);
  GaussRat half(Rational(1, 2));
  for (int i = 0; i < lc.dim; ++i) {
    MatQ dJ = covariant_derivative_endo(lc, acs.J, i);
    out.gamma.push_back(lc.gamma[i] - half * (acs.J * dJ));
  }
  return out;
}

// Scaled Nijenhuis table.  The torsion of the Chern connection comes out as
// N_J/4 in this engine's normalization of N (no 1/4 inside N itself).
inline std::map<std::pair<int, int>, VecQ> scaled_nijenhuis(const Acs& acs, const Coframe& cf,
                                                            const GaussRat& factor) {
  auto table = nijenhuis(acs, cf);
  for (auto& [ij, v] : table)
    for (auto& c : v) c *= factor;
  return table;
}

// lambda in psi ^ conj(psi) = i lambda omega^n, extracted by exact division of
// top-degree coefficients; nullopt when the forms are not proportional.
inline std::optional<GaussRat> top_proportionality(const Form<GaussRat>& lhs,
                                                   const Form<GaussRat>& rhs, int dim) {
  uint32_t top = (1u << dim) - 1;
  GaussRat a = lhs.coeff(top), b = rhs.coeff(top);
  if (b.is_zero()) return std::nullopt;
  GaussRat ratio = a * b.inverse();
  if (lhs == rhs.scaled(ratio)) return ratio;
  return std::nullopt;
}

} // namespace scy
