#include <catch2/catch_amalgamated.hpp>

#include "scy/coframe.hpp"
#include "scy/fourier.hpp"
#include "scy/jet.hpp"
#include "scy/rational.hpp"
#include "scy/rng.hpp"

using namespace scy;

namespace {

Jet random_jet(Rng& rng, int dirs = 4, int max_deg = 2) {
  Jet out;
  int nterms = rng.uniform(1, 3);
  for (int t = 0; t < nterms; ++t) {
    Jet mono = Jet::constant(rng.gauss());
    int deg = rng.uniform(0, max_deg);
    for (int d = 0; d < deg; ++d) {
      switch (rng.uniform(0, 3)) {
        case 0: mono *= Jet::u(); break;
        case 1: mono *= Jet::v(); break;
        case 2: mono *= Jet::du(rng.uniform(0, dirs - 1)); break;
        default: mono *= Jet::dv(rng.uniform(0, dirs - 1)); break;
      }
    }
    out += mono;
  }
  return out;
}

Fourier random_fourier(Rng& rng, int m) {
  Fourier out = Fourier::constant(m, rng.gauss());
  int nterms = rng.uniform(0, 2);
  for (int t = 0; t < nterms; ++t) {
    std::vector<int> freq(m, 0);
    for (int j = 0; j < m; ++j) freq[j] = rng.uniform(-2, 2);
    Fourier term = rng.gauss() * Fourier::character(m, freq);
    if (rng.uniform(0, 2) == 0) term *= Fourier::coordinate(m, rng.uniform(0, m - 1));
    out += term;
  }
  return out;
}

} // namespace

TEST_CASE("Gaussian rational arithmetic is exact") {
  GaussRat a(Rational(1, 2), Rational(1));
  GaussRat b(Rational(1, 2), Rational(-1));
  REQUIRE(a * b == GaussRat(Rational(5, 4)));

  REQUIRE(GaussRat(Rational(2), Rational(2)).inverse() ==
          GaussRat(Rational(2, 8), Rational(-2, 8)));
  REQUIRE_THROWS_AS(GaussRat().inverse(), error);

  SECTION("field axioms on random elements") {
    Rng rng(7);
    for (int t = 0; t < 100; ++t) {
      GaussRat x = rng.gauss(), y = rng.gauss(), z = rng.gauss();
      REQUIRE((x * y) * z == x * (y * z));
      REQUIRE(x * (y + z) == x * y + x * z);
      REQUIRE(x + y == y + x);
      if (!x.is_zero()) REQUIRE(x * x.inverse() == GaussRat(1));
    }
  }
}

TEST_CASE("jet ring") {
  SECTION("commutativity and merging") {
    Jet uv = Jet::u() * Jet::v() + Jet::v() * Jet::u();
    REQUIRE(uv == GaussRat(2) * (Jet::u() * Jet::v()));
  }

  SECTION("formal inverse of f") {
    Jet prod = Jet::f() * Jet::f_inv();
    REQUIRE(prod == Jet(1));
    REQUIRE(Jet::f().invert_unit() == Jet::f_inv());
    REQUIRE(Jet::f_inv().invert_unit() == Jet::f());
    REQUIRE((GaussRat(2) * Jet::f()).invert_unit() * (GaussRat(2) * Jet::f()) == Jet(1));
    REQUIRE_THROWS_AS(Jet::u().invert_unit(), error);
    REQUIRE(Jet::constant(GaussRat(Rational(2), Rational(2))).invert_unit() ==
            Jet::constant(GaussRat(Rational(2, 8), Rational(-2, 8))));
  }

}

TEST_CASE("jet derivation") {
  REQUIRE(Jet::u().frame_derive(2) == Jet::du(2));
  REQUIRE(Jet::v().frame_derive(0) == Jet::dv(0));
  REQUIRE(Jet::constant(GaussRat(Rational(5, 3))).frame_derive(1).is_zero());

  SECTION("second derivatives vanish") {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        REQUIRE(Jet::u().frame_derive(i).frame_derive(j).is_zero());
        REQUIRE(Jet::v().frame_derive(i).frame_derive(j).is_zero());
      }
  }

  SECTION("Leibniz rule on random elements") {
    Rng rng(11);
    for (int t = 0; t < 60; ++t) {
      Jet a = random_jet(rng), b = random_jet(rng);
      int i = rng.uniform(0, 3);
      REQUIRE((a * b).frame_derive(i) ==
              a.frame_derive(i) * b + a * b.frame_derive(i));
    }
  }

  SECTION("derivative of the formal inverse") {
    // d(f^-1) = -f^-2 df, checked through the unit relation
    Jet w = Jet::f_inv();
    Jet lhs = (Jet::f() * w).frame_derive(1); // derivative of 1
    REQUIRE(lhs.is_zero());
  }

  SECTION("ring axioms") {
    Rng rng(13);
    for (int t = 0; t < 40; ++t) {
      Jet a = random_jet(rng), b = random_jet(rng), c = random_jet(rng);
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * (b + c) == a * b + a * c);
    }
  }
}

TEST_CASE("quasi-Fourier ring") {
  const int m = 2;

  SECTION("characters multiply by adding frequencies") {
    Fourier eN = Fourier::character(m, {1, 0});
    Fourier eM = Fourier::character(m, {0, 1});
    REQUIRE(eN * eM == Fourier::character(m, {1, 1}));
  }

  SECTION("coordinate derivative of a character") {
    // d/dx2 e(0,1) = i p e(0,1), p standing for 2 pi
    Fourier e01 = Fourier::character(m, {0, 1});
    REQUIRE(e01.coordinate_derive(1) == GaussRat::i() * (Fourier::two_pi(m) * e01));
    REQUIRE(e01.coordinate_derive(0).is_zero());
  }

  SECTION("monomial derivative") {
    Fourier x1 = Fourier::coordinate(m, 0);
    REQUIRE((x1 * x1).coordinate_derive(0) == GaussRat(2) * x1);
  }

  SECTION("units") {
    Fourier u = GaussRat(Rational(3), Rational(1)) * Fourier::character(m, {2, -1});
    REQUIRE(u.is_unit());
    REQUIRE(u * u.invert_unit() == Fourier::constant(m, GaussRat(1)));
    REQUIRE_FALSE(Fourier::coordinate(m, 0).is_unit());
    REQUIRE_THROWS_AS((Fourier::constant(m, GaussRat(1)) + Fourier::character(m, {1, 0}))
                          .invert_unit(),
                      error);
  }

  SECTION("frame derivation through a coframe, Leibniz") {
    Coframe cf = abelian_coframe(m);
    Rng rng(17);
    for (int t = 0; t < 60; ++t) {
      Fourier a = random_fourier(rng, m), b = random_fourier(rng, m);
      int i = rng.uniform(0, m - 1);
      REQUIRE(frame_derive(a * b, i, cf) ==
              frame_derive(a, i, cf) * b + a * frame_derive(b, i, cf));
    }
  }

  SECTION("derivation along an undeclared direction fails") {
    std::vector<std::vector<StructTerm>> table(2);
    Coframe cf = make_coframe(2, table); // no coordinate realization
    Fourier x = Fourier::coordinate(2, 0);
    REQUIRE_THROWS_AS(frame_derive(x, 0, cf), error);
    REQUIRE(frame_derive(Fourier::constant(2, GaussRat(4)), 0, cf).is_zero());
  }

  SECTION("ring axioms") {
    Rng rng(19);
    for (int t = 0; t < 40; ++t) {
      Fourier a = random_fourier(rng, m), b = random_fourier(rng, m), c = random_fourier(rng, m);
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * (b + c) == a * b + a * c);
    }
  }

  SECTION("conjugation flips frequencies") {
    Fourier e10 = Fourier::character(m, {1, 0});
    REQUIRE(e10.conj() == Fourier::character(m, {-1, 0}));
  }
}
