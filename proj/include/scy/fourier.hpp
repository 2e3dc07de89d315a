#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace scy {

// Quasi-Fourier ring on m torus coordinates: finite sums of
//   c * x^a * p^k * e(N),  e(N) = exp(i p <N, x>),
// with c in Q(i), integer frequency tuple N, and p a formal generator
// standing for 2*pi.  Keeping p formal keeps every identity exact; all the
// computations we run are polynomial in p.
class Fourier {
public:
  struct Key {
    std::vector<int> mono; // monomial exponents, size m
    int p_exp = 0;
    std::vector<int> freq; // character frequencies, size m
    auto operator<=>(const Key&) const = default;
  };

  Fourier() = default;
  explicit Fourier(int m) : m_(m) {}

  static Fourier constant(int m, const GaussRat& c) {
    Fourier s(m);
    if (!c.is_zero()) s.terms_[Key{std::vector<int>(m, 0), 0, std::vector<int>(m, 0)}] = c;
    return s;
  }
  static Fourier coordinate(int m, int j) {
    Fourier s(m);
    Key k{std::vector<int>(m, 0), 0, std::vector<int>(m, 0)};
    k.mono[j] = 1;
    s.terms_[k] = GaussRat(1);
    return s;
  }
  static Fourier two_pi(int m) {
    Fourier s(m);
    s.terms_[Key{std::vector<int>(m, 0), 1, std::vector<int>(m, 0)}] = GaussRat(1);
    return s;
  }
  static Fourier character(int m, const std::vector<int>& freq) {
    require(static_cast<int>(freq.size()) == m, "incompatible-ring", "frequency arity");
    Fourier s(m);
    s.terms_[Key{std::vector<int>(m, 0), 0, freq}] = GaussRat(1);
    return s;
  }

  int vars() const { return m_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Key& k = terms_.begin()->first;
    if (k.p_exp != 0) return false;
    for (int e : k.mono)
      if (e) return false;
    for (int n : k.freq)
      if (n) return false;
    return true;
  }
  GaussRat constant_part() const { return is_constant() && !is_zero() ? terms_.begin()->second : GaussRat(0); }

  friend Fourier operator+(const Fourier& a, const Fourier& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    require(a.m_ == b.m_, "incompatible-ring", "quasi-Fourier coordinate arity mismatch");
    Fourier out = a;
    for (const auto& [k, c] : b.terms_) out.add_term(k, c);
    return out;
  }
  friend Fourier operator-(const Fourier& a, const Fourier& b) { return a + (-b); }
  friend Fourier operator-(const Fourier& a) {
    Fourier out(a.m_);
    for (const auto& [k, c] : a.terms_) out.terms_[k] = -c;
    return out;
  }
  friend Fourier operator*(const Fourier& a, const Fourier& b) {
    if (a.is_zero()) return a;
    if (b.is_zero()) return b;
    require(a.m_ == b.m_, "incompatible-ring", "quasi-Fourier coordinate arity mismatch");
    Fourier out(a.m_);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        Key k = ka;
        for (int j = 0; j < out.m_; ++j) {
          k.mono[j] += kb.mono[j];
          k.freq[j] += kb.freq[j];
        }
        k.p_exp += kb.p_exp;
        out.add_term(k, ca * cb);
      }
    return out;
  }
  friend Fourier operator*(const GaussRat& c, const Fourier& a) {
    Fourier out(a.m_);
    if (c.is_zero()) return out;
    for (const auto& [k, cc] : a.terms_) out.terms_[k] = c * cc;
    return out;
  }
  Fourier& operator+=(const Fourier& b) { return *this = *this + b; }
  Fourier& operator-=(const Fourier& b) { return *this = *this - b; }
  Fourier& operator*=(const Fourier& b) { return *this = *this * b; }

  friend bool operator==(const Fourier& a, const Fourier& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.m_ == b.m_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Fourier& a, const Fourier& b) { return !(a == b); }

  // d/dx_j: the monomial part by the product rule, the character part by
  // e(N) -> i * p * N_j * e(N).
  Fourier coordinate_derive(int j) const {
    if (is_zero()) return *this;
    require(j >= 0 && j < m_, "unsupported-direction",
            "coordinate index out of range for this ring");
    Fourier out(m_);
    for (const auto& [k, c] : terms_) {
      if (k.mono[j] > 0) {
        Key kk = k;
        kk.mono[j] -= 1;
        out.add_term(kk, c * GaussRat(Rational(k.mono[j])));
      }
      if (k.freq[j] != 0) {
        Key kk = k;
        kk.p_exp += 1;
        out.add_term(kk, c * GaussRat::i() * GaussRat(Rational(k.freq[j])));
      }
    }
    return out;
  }

  Fourier conj() const {
    Fourier out(m_);
    for (const auto& [k, c] : terms_) {
      Key kk = k;
      for (int& n : kk.freq) n = -n;
      out.add_term(kk, c.conj());
    }
    return out;
  }

  // Units: c * e(N) with c != 0 (no monomial or p factors).
  bool is_unit() const {
    if (terms_.size() != 1) return false;
    const Key& k = terms_.begin()->first;
    if (k.p_exp != 0) return false;
    for (int e : k.mono)
      if (e) return false;
    return true;
  }
  Fourier invert_unit() const {
    require(is_unit(), "not-invertible", "quasi-Fourier element is not a unit");
    const auto& [k, c] = *terms_.begin();
    Fourier out(m_);
    Key kk = k;
    for (int& n : kk.freq) n = -n;
    out.terms_[kk] = c.inverse();
    return out;
  }

  const std::map<Key, GaussRat>& terms() const { return terms_; }

private:
  int m_ = 0;
  std::map<Key, GaussRat> terms_;

  void add_term(const Key& k, const GaussRat& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_[k] = c;
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
};

inline std::string to_string(const Fourier& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : s.terms()) {
    std::string mono;
    for (size_t j = 0; j < k.mono.size(); ++j)
      if (k.mono[j]) {
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(j + 1);
        if (k.mono[j] > 1) mono += "^" + std::to_string(k.mono[j]);
      }
    if (k.p_exp) {
      if (!mono.empty()) mono += "*";
      mono += "p";
      if (k.p_exp > 1) mono += "^" + std::to_string(k.p_exp);
    }
    bool has_freq = false;
    std::string ch = "e(";
    for (size_t j = 0; j < k.freq.size(); ++j) {
      if (j) ch += ",";
      ch += std::to_string(k.freq[j]);
      if (k.freq[j]) has_freq = true;
    }
    ch += ")";
    if (has_freq) {
      if (!mono.empty()) mono += "*";
      mono += ch;
    }
    std::string cs = to_string(c);
    std::string term;
    if (mono.empty())
      term = cs;
    else if (cs == "1")
      term = mono;
    else if (cs == "-1")
      term = "-" + mono;
    else if (cs.find('+') != std::string::npos || cs.find('-', 1) != std::string::npos)
      term = "(" + cs + ")*" + mono;
    else
      term = cs + "*" + mono;
    if (!first && term[0] != '-') out += "+";
    out += term;
    first = false;
  }
  return out;
}

} // namespace scy
