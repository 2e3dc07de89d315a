#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace scy {

// First-order jet ring for a formal function f = u + iv on an invariant
// coframe: commuting generators u, v, the frame derivatives u_k, v_k, and a
// marker w = f^-1 subject to (u+iv)w = 1.  Frame derivation sends u -> u_k,
// v -> v_k and annihilates u_k, v_k, so second derivatives vanish by
// construction.  Elements are normalized modulo the unit relation by the
// rewrite u*w -> 1 - i*v*w (u-degree strictly drops, so it terminates; a
// single relation is its own Groebner basis, so normal forms are canonical).
class Jet {
public:
  // generator ids: 0 = u, 1 = v, 2 = w = f^-1, 3 + 2k = u_{k+1}, 4 + 2k = v_{k+1}
  enum : int { GEN_U = 0, GEN_V = 1, GEN_W = 2 };
  static int gen_du(int k) { return 3 + 2 * k; } // frame index k, 0-based
  static int gen_dv(int k) { return 4 + 2 * k; }

  using Monomial = std::vector<std::pair<int, int>>; // sorted (gen, exp), exp > 0

  Jet() = default;
  Jet(int v) { *this = constant(GaussRat(v)); }
  Jet(const GaussRat& c) { *this = constant(c); }

  static Jet constant(const GaussRat& c) {
    Jet s;
    if (!c.is_zero()) s.terms_[{}] = c;
    return s;
  }
  static Jet generator(int g) {
    Jet s;
    s.terms_[{{g, 1}}] = GaussRat(1);
    return s;
  }
  static Jet u() { return generator(GEN_U); }
  static Jet v() { return generator(GEN_V); }
  static Jet f() { return u() + GaussRat::i() * v(); }
  static Jet f_inv() { return generator(GEN_W); }
  static Jet du(int k) { return generator(gen_du(k)); }
  static Jet dv(int k) { return generator(gen_dv(k)); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  GaussRat constant_part() const {
    auto it = terms_.find({});
    return it == terms_.end() ? GaussRat(0) : it->second;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
  }
  friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }
  friend Jet operator-(const Jet& a) {
    Jet out;
    for (const auto& [m, c] : a.terms_) out.terms_[m] = -c;
    return out;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(mul_mono(ma, mb), ca * cb);
    out.reduce();
    return out;
  }
  friend Jet operator*(const GaussRat& c, const Jet& a) { return Jet::constant(c) * a; }
  Jet& operator+=(const Jet& b) { return *this = *this + b; }
  Jet& operator-=(const Jet& b) { return *this = *this - b; }
  Jet& operator*=(const Jet& b) { return *this = *this * b; }

  friend bool operator==(const Jet& a, const Jet& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

  // Derivation along frame direction k (0-based): u -> u_k, v -> v_k,
  // u_j, v_j -> 0, w -> -(u_k + i v_k) w^2, constants -> 0.
  Jet frame_derive(int k) const {
    Jet out;
    for (const auto& [m, c] : terms_) {
      for (size_t t = 0; t < m.size(); ++t) {
        auto [g, e] = m[t];
        Jet dg;
        if (g == GEN_U)
          dg = du(k);
        else if (g == GEN_V)
          dg = dv(k);
        else if (g == GEN_W)
          dg = -(du(k) + GaussRat::i() * dv(k)) * f_inv() * f_inv();
        else
          continue;
        Monomial rest;
        for (size_t s = 0; s < m.size(); ++s) {
          int ee = m[s].second - (s == t ? 1 : 0);
          if (ee > 0) rest.push_back({m[s].first, ee});
        }
        Jet part;
        part.terms_[rest] = c * GaussRat(Rational(e));
        out += part * dg;
      }
    }
    out.reduce();
    return out;
  }

  Jet conj() const {
    Jet out;
    for (const auto& [m, c] : terms_) {
      for (const auto& [g, e] : m)
        require(g != GEN_W, "not-invertible", "conjugate of f^-1 is not representable");
      out.terms_[m] = c.conj();
    }
    return out;
  }

  // Units: nonzero constants, c*f and c*f^-1 for constant c != 0.
  bool is_unit() const {
    if (is_constant()) return !is_zero();
    if (terms_.size() == 1) {
      const auto& m = terms_.begin()->first;
      return m.size() == 1 && m[0] == std::pair<int, int>{GEN_W, 1};
    }
    return scalar_multiple_of_f().has_value();
  }

  Jet invert_unit() const {
    if (is_constant()) {
      require(!is_zero(), "not-invertible", "zero is not a unit");
      return constant(constant_part().inverse());
    }
    if (auto c = scalar_multiple_of_f()) return c->inverse() * f_inv();
    if (terms_.size() == 1) {
      const auto& [m, c] = *terms_.begin();
      if (m.size() == 1 && m[0] == std::pair<int, int>{GEN_W, 1}) return c.inverse() * f();
    }
    fail("not-invertible", "jet element is not a declared unit");
  }

  const std::map<Monomial, GaussRat>& terms() const { return terms_; }

  static std::string gen_name(int g) {
    if (g == GEN_U) return "u";
    if (g == GEN_V) return "v";
    if (g == GEN_W) return "f^-1";
    int k = (g - 3) / 2 + 1;
    return ((g - 3) % 2 == 0 ? "u" : "v") + std::to_string(k);
  }

private:
  std::map<Monomial, GaussRat> terms_;

  void add_term(const Monomial& m, const GaussRat& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_[m] = c;
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  static Monomial mul_mono(const Monomial& a, const Monomial& b) {
    Monomial out;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
        out.push_back(a[i++]);
      else if (i == a.size() || b[j].first < a[i].first)
        out.push_back(b[j++]);
      else {
        out.push_back({a[i].first, a[i].second + b[j].second});
        ++i, ++j;
      }
    }
    return out;
  }

  static int exp_of(const Monomial& m, int g) {
    for (const auto& [gg, e] : m)
      if (gg == g) return e;
    return 0;
  }

  static Monomial with_exp(Monomial m, int g, int delta) {
    for (auto it = m.begin(); it != m.end(); ++it) {
      if (it->first == g) {
        it->second += delta;
        if (it->second == 0) m.erase(it);
        return m;
      }
      if (it->first > g) {
        require(delta > 0, "not-invertible", "internal monomial bookkeeping");
        m.insert(it, {g, delta});
        return m;
      }
    }
    if (delta > 0) m.push_back({g, delta});
    return m;
  }

  // u*w -> 1 - i*v*w until no monomial carries both u and w.
  void reduce() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        const Monomial& m = it->first;
        if (exp_of(m, GEN_U) > 0 && exp_of(m, GEN_W) > 0) {
          GaussRat c = it->second;
          Monomial base = with_exp(with_exp(m, GEN_U, -1), GEN_W, -1);
          terms_.erase(it);
          add_term(base, c);
          add_term(mul_mono(base, {{GEN_V, 1}, {GEN_W, 1}}), -GaussRat::i() * c);
          changed = true;
          break;
        }
      }
    }
  }

  // Detects c*(u + i v); the pieces that make f a unit.
  std::optional<GaussRat> scalar_multiple_of_f() const {
    if (terms_.size() != 2) return std::nullopt;
    Monomial mu{{GEN_U, 1}}, mv{{GEN_V, 1}};
    auto iu = terms_.find(mu);
    auto iv = terms_.find(mv);
    if (iu == terms_.end() || iv == terms_.end()) return std::nullopt;
    if (iv->second == GaussRat::i() * iu->second) return iu->second;
    return std::nullopt;
  }
};

inline std::string to_string(const Jet& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : s.terms()) {
    std::string mono;
    for (const auto& [g, e] : m) {
      if (!mono.empty()) mono += "*";
      mono += Jet::gen_name(g);
      if (e > 1) mono += "^" + std::to_string(e);
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
