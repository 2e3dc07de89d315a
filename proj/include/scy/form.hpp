#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "fourier.hpp"
#include "jet.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace scy {

inline GaussRat ring_scale(const GaussRat& x, const GaussRat& c) { return x * c; }
inline Jet ring_scale(const Jet& x, const GaussRat& c) { return c * x; }
inline Fourier ring_scale(const Fourier& x, const GaussRat& c) { return c * x; }

inline GaussRat ring_conj(const GaussRat& x) { return x.conj(); }
inline Jet ring_conj(const Jet& x) { return x.conj(); }
inline Fourier ring_conj(const Fourier& x) { return x.conj(); }

// Sign of merging two disjoint strictly increasing index sets: each element of
// b has to pass the elements of a above it.
inline int merge_sign(uint32_t a, uint32_t b) {
  int swaps = 0;
  for (uint32_t rest = b; rest;) {
    int bit = std::countr_zero(rest);
    rest &= rest - 1;
    swaps += std::popcount(a >> (bit + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

// Exterior form over an invariant coframe: a finite sum of (coefficient,
// strictly increasing multi-index) terms, the multi-index stored as a bitmask
// over the 2n coframe generators.  Mixed degrees are allowed.
template <class R>
struct Form {
  int dim = 0;
  std::map<uint32_t, R> terms;

  Form() = default;
  explicit Form(int d) : dim(d) {}

  static Form monomial(int d, uint32_t mask, R c) {
    Form f(d);
    if (!c.is_zero()) f.terms[mask] = std::move(c);
    return f;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(uint32_t mask, const R& c) {
    if (c.is_zero()) return;
    auto it = terms.find(mask);
    if (it == terms.end()) {
      terms[mask] = c;
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }

  R coeff(uint32_t mask) const {
    auto it = terms.find(mask);
    return it == terms.end() ? R{} : it->second;
  }

  bool is_homogeneous() const {
    int d = -1;
    for (const auto& [m, c] : terms) {
      int k = std::popcount(m);
      if (d < 0) d = k;
      if (k != d) return false;
    }
    return true;
  }

  // Degree of a homogeneous form; 0 for the zero form.
  int degree() const {
    require(is_homogeneous(), "degree-mismatch", "form has mixed degree");
    return terms.empty() ? 0 : std::popcount(terms.begin()->first);
  }

  Form component_of_degree(int k) const {
    Form out(dim);
    for (const auto& [m, c] : terms)
      if (std::popcount(m) == k) out.terms[m] = c;
    return out;
  }

  friend Form operator+(const Form& x, const Form& y) {
    require(x.dim == y.dim || x.is_zero() || y.is_zero(), "incompatible-ring",
            "form dimension mismatch");
    Form out = x.is_zero() ? Form(y.dim) : Form(x.dim);
    out.terms = x.terms;
    for (const auto& [m, c] : y.terms) out.add_term(m, c);
    return out;
  }
  friend Form operator-(const Form& x, const Form& y) { return x + (-y); }
  friend Form operator-(const Form& x) {
    Form out(x.dim);
    for (const auto& [m, c] : x.terms) out.terms[m] = -c;
    return out;
  }
  Form& operator+=(const Form& y) { return *this = *this + y; }
  Form& operator-=(const Form& y) { return *this = *this - y; }

  friend bool operator==(const Form& x, const Form& y) { return x.terms == y.terms; }
  friend bool operator!=(const Form& x, const Form& y) { return !(x == y); }

  friend Form operator*(const R& c, const Form& x) {
    Form out(x.dim);
    for (const auto& [m, xc] : x.terms) out.add_term(m, c * xc);
    return out;
  }

  Form scaled(const GaussRat& c) const {
    Form out(dim);
    if (c.is_zero()) return out;
    for (const auto& [m, xc] : terms) out.add_term(m, ring_scale(xc, c));
    return out;
  }

  Form conj() const {
    Form out(dim);
    for (const auto& [m, c] : terms) out.terms[m] = ring_conj(c);
    return out;
  }
};

template <class R>
Form<R> wedge(const Form<R>& x, const Form<R>& y) {
  require(x.dim == y.dim || x.is_zero() || y.is_zero(), "incompatible-ring",
          "form dimension mismatch");
  Form<R> out(x.is_zero() ? y.dim : x.dim);
  for (const auto& [mx, cx] : x.terms)
    for (const auto& [my, cy] : y.terms) {
      if (mx & my) continue;
      R c = cx * cy;
      if (merge_sign(mx, my) < 0) c = -c;
      out.add_term(mx | my, c);
    }
  return out;
}

// Extends a slot operation alpha_k -> image(k) as a derivation over wedge
// monomials: sum over slots of (factors before) ^ image ^ (factors after).
// `odd` supplies the Koszul sign (-1)^(slots skipped) of an anti-derivation
// (the structure part of d, sigma_L); even derivations (tau_L, covariant
// derivatives) take none.  Mask merging contributes only the reordering signs.
template <class R, class ImageCoeff>
Form<R> derivation_extend(const Form<R>& x, const std::vector<Form<ImageCoeff>>& images,
                          bool odd) {
  Form<R> out(x.dim);
  for (const auto& [mask, c] : x.terms) {
    for (uint32_t rest = mask; rest;) {
      int k = std::countr_zero(rest);
      rest &= rest - 1;
      uint32_t pre = mask & ((1u << k) - 1);
      uint32_t post = mask & ~((1u << k) - 1) & ~(1u << k);
      const Form<ImageCoeff>& g = images[k];
      for (const auto& [gm, gc] : g.terms) {
        if (gm & (pre | post)) continue;
        int sign = merge_sign(pre, gm) * merge_sign(pre | gm, post);
        if (odd && (std::popcount(pre) & 1)) sign = -sign;
        R coeff;
        if constexpr (std::is_same_v<ImageCoeff, GaussRat> && !std::is_same_v<R, GaussRat>)
          coeff = ring_scale(c, gc);
        else
          coeff = c * gc;
        if (sign < 0) coeff = -coeff;
        out.add_term(pre | gm | post, coeff);
      }
    }
  }
  return out;
}

// Algebra morphism alpha_k -> sum_j S(k,j) alpha_j; used for transporting
// forms by an endomorphism (slot-wise action) and for basis changes.
template <class R>
Form<R> substitute(const Form<R>& x, const MatQ& S) {
  Form<R> out(x.dim);
  for (const auto& [mask, c] : x.terms) {
    // expand the product of images factor by factor
    std::map<uint32_t, GaussRat> acc;
    acc[0] = GaussRat(1);
    for (uint32_t rest = mask; rest;) {
      int k = std::countr_zero(rest);
      rest &= rest - 1;
      std::map<uint32_t, GaussRat> next;
      for (const auto& [am, ac] : acc)
        for (int j = 0; j < S.cols; ++j) {
          const GaussRat& s = S.at(k, j);
          if (s.is_zero() || (am & (1u << j))) continue;
          GaussRat c2 = ac * s;
          if (merge_sign(am, 1u << j) < 0) c2 = -c2;
          auto it = next.find(am | (1u << j));
          if (it == next.end())
            next[am | (1u << j)] = c2;
          else
            it->second += c2;
        }
      acc = std::move(next);
    }
    for (const auto& [am, ac] : acc)
      if (!ac.is_zero()) out.add_term(am, ring_scale(c, ac));
  }
  return out;
}

// General ring-coefficient substitution (endomorphisms with function entries).
template <class R>
Form<R> substitute_ring(const Form<R>& x, const Mat<R>& S) {
  Form<R> out(x.dim);
  for (const auto& [mask, c] : x.terms) {
    std::map<uint32_t, R> acc;
    acc[0] = c;
    for (uint32_t rest = mask; rest;) {
      int k = std::countr_zero(rest);
      rest &= rest - 1;
      std::map<uint32_t, R> next;
      for (const auto& [am, ac] : acc)
        for (int j = 0; j < S.cols; ++j) {
          const R& s = S.at(k, j);
          if (s.is_zero() || (am & (1u << j))) continue;
          R c2 = ac * s;
          if (merge_sign(am, 1u << j) < 0) c2 = -c2;
          auto it = next.find(am | (1u << j));
          if (it == next.end())
            next[am | (1u << j)] = c2;
          else
            it->second += c2;
        }
      acc = std::move(next);
    }
    for (const auto& [am, ac] : acc)
      if (!ac.is_zero()) out.add_term(am, ac);
  }
  return out;
}

// Laplace expansion accumulator; `acc` already carries the term coefficient so
// no ring unit is ever needed.
template <class R>
void det_accumulate(const std::vector<std::vector<R>>& m, std::vector<bool>& used, int row,
                    const R& acc, int sign, R& out) {
  int r = static_cast<int>(m.size());
  if (row == r) {
    out += (sign < 0) ? -acc : acc;
    return;
  }
  int pos = 0;
  for (int t = 0; t < r; ++t) {
    if (used[t]) continue;
    const R& entry = m[row][t];
    if (!entry.is_zero()) {
      used[t] = true;
      det_accumulate(m, used, row + 1, acc * entry, (pos & 1) ? -sign : sign, out);
      used[t] = false;
    }
    ++pos;
  }
}

// Multilinear alternating evaluation on frame vectors: the determinant of the
// pairing matrix, term by term.
template <class R>
R evaluate(const Form<R>& x, const std::vector<std::vector<R>>& vectors) {
  int r = static_cast<int>(vectors.size());
  R out{};
  for (const auto& [mask, c] : x.terms) {
    require(std::popcount(mask) == r, "degree-mismatch",
            "evaluation arity does not match form degree");
    std::vector<int> idx;
    for (uint32_t rest = mask; rest;) {
      idx.push_back(std::countr_zero(rest));
      rest &= rest - 1;
    }
    // pairing matrix: rows = coframe factors, columns = vectors
    std::vector<std::vector<R>> pm(r, std::vector<R>(r));
    for (int s = 0; s < r; ++s)
      for (int t = 0; t < r; ++t) pm[s][t] = vectors[t][idx[s]];
    std::vector<bool> used(r, false);
    det_accumulate(pm, used, 0, c, 1, out);
  }
  return out;
}

template <class R>
std::string form_to_string(const Form<R>& x, const std::vector<std::string>& names) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mask, c] : x.terms) {
    std::string basis;
    for (uint32_t rest = mask; rest;) {
      int k = std::countr_zero(rest);
      rest &= rest - 1;
      if (!basis.empty()) basis += "^";
      basis += names[k];
    }
    std::string cs = to_string(c);
    std::string term;
    if (basis.empty())
      term = cs;
    else if (cs == "1")
      term = basis;
    else if (cs == "-1")
      term = "-" + basis;
    else {
      bool composite = cs.find('+') != std::string::npos || cs.find('-', 1) != std::string::npos ||
                       cs.find('*') != std::string::npos;
      term = (composite ? "(" + cs + ")" : cs) + " " + basis;
    }
    if (!first) {
      out += (term[0] == '-') ? " - " : " + ";
      if (term[0] == '-') term = term.substr(1);
    }
    out += term;
    first = false;
  }
  return out;
}

} // namespace scy
