#pragma once

#include <string>
#include <utility>
#include <vector>

#include "acs.hpp"
#include "coframe.hpp"
#include "error.hpp"
#include "form.hpp"

namespace scy {

// A manifold presented by invariant data: coframe with structure constants,
// symplectic form, almost complex structure and (n,0) volume candidate.
struct ManifoldBundle {
  std::string name;
  Coframe cf;
  Form<GaussRat> omega;
  MatQ J;
  Form<GaussRat> psi;

  int dim() const { return cf.dim; }
};

namespace detail {
inline Form<GaussRat> wedge3(const Form<GaussRat>& a, const Form<GaussRat>& b,
                             const Form<GaussRat>& c) {
  return wedge(wedge(a, b), c);
}

inline Form<GaussRat> one_form(int dim, int k) {
  return Form<GaussRat>::monomial(dim, 1u << (k - 1), GaussRat(1));
}

// alpha_i + i alpha_j
inline Form<GaussRat> cx_pair(int dim, int i, int j) {
  Form<GaussRat> f = one_form(dim, i);
  f.add_term(1u << (j - 1), GaussRat::i());
  return f;
}

inline MatQ block_j(int dim, const std::vector<std::pair<int, int>>& pairs) {
  MatQ J(dim, dim);
  for (auto [a, b] : pairs) {
    J.at(b - 1, a - 1) = GaussRat(1);  // J xi_a = xi_b
    J.at(a - 1, b - 1) = GaussRat(-1); // J xi_b = -xi_a
  }
  return J;
}
} // namespace detail

// Iwasawa manifold: complex Heisenberg group over its integer lattice.
//   d a2 = -a1^a5 - a3^a4,  d a6 = -a4^a5 - a1^a3,
//   J xi_r = xi_{r+3},  omega = a1^a4 + a2^a5 + a3^a6,
//   psi = (a1 + i a4)^(a2 + i a5)^(a3 + i a6).
inline ManifoldBundle iwasawa() {
  using namespace detail;
  int dim = 6;
  std::vector<std::vector<StructTerm>> table(dim);
  table[1] = {{GaussRat(-1), 0, 4}, {GaussRat(-1), 2, 3}};
  table[5] = {{GaussRat(-1), 3, 4}, {GaussRat(-1), 0, 2}};
  ManifoldBundle b;
  b.name = "iwasawa";
  b.cf = make_coframe(dim, std::move(table));
  b.J = detail::block_j(dim, {{1, 4}, {2, 5}, {3, 6}});
  b.omega = wedge(one_form(dim, 1), one_form(dim, 4)) + wedge(one_form(dim, 2), one_form(dim, 5)) +
            wedge(one_form(dim, 3), one_form(dim, 6));
  b.psi = wedge3(cx_pair(dim, 1, 4), cx_pair(dim, 2, 5), cx_pair(dim, 3, 6));
  return b;
}

// Kodaira-Thurston x T^2: d a6 = -a4^a5, J in consecutive pairs,
// omega = a1^a2 + a3^a4 + a5^a6, psi = (a1+i a2)^(a3+i a4)^(a5+i a6).
// Coordinates x1..x6 with xi_5 = d/dx5 + x4 d/dx6.
inline ManifoldBundle kodaira_thurston_t2() {
  using namespace detail;
  int dim = 6;
  std::vector<std::vector<StructTerm>> table(dim);
  table[5] = {{GaussRat(-1), 3, 4}};
  Mat<Fourier> F(dim, dim);
  for (int i = 0; i < dim; ++i) F.at(i, i) = Fourier::constant(dim, GaussRat(1));
  F.at(4, 5) = Fourier::coordinate(dim, 3); // xi_5 = d/dx5 + x4 d/dx6
  ManifoldBundle b;
  b.name = "kt3";
  b.cf = make_coframe(dim, std::move(table), {}, std::move(F));
  b.J = detail::block_j(dim, {{1, 2}, {3, 4}, {5, 6}});
  b.omega = wedge(one_form(dim, 1), one_form(dim, 2)) + wedge(one_form(dim, 3), one_form(dim, 4)) +
            wedge(one_form(dim, 5), one_form(dim, 6));
  b.psi = wedge3(cx_pair(dim, 1, 2), cx_pair(dim, 3, 4), cx_pair(dim, 5, 6));
  return b;
}

// Standard torus T^2n with z_a = x_a + i x_{a+n}:
//   omega_n = (i/2) sum dz_a ^ conj(dz_a) = sum dx_a ^ dx_{a+n},
//   psi_n = dz_1 ^ ... ^ dz_n.
inline ManifoldBundle standard_torus_bundle(int n) {
  using namespace detail;
  require(n >= 1, "dimension-error", "torus needs n >= 1");
  int dim = 2 * n;
  ManifoldBundle b;
  b.name = "torus:" + std::to_string(n);
  b.cf = abelian_coframe(dim);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 1; a <= n; ++a) pairs.push_back({a, a + n});
  b.J = detail::block_j(dim, pairs);
  b.omega = Form<GaussRat>(dim);
  for (int a = 1; a <= n; ++a) b.omega += wedge(one_form(dim, a), one_form(dim, a + n));
  b.psi = cx_pair(dim, 1, 1 + n);
  for (int a = 2; a <= n; ++a) b.psi = wedge(b.psi, cx_pair(dim, a, a + n));
  return b;
}

} // namespace scy
