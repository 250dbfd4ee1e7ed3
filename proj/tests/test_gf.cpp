#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "sympcount/gf.hpp"

using namespace sympcount::gf;

TEST_CASE("prime field arithmetic") {
  Field F3(3);
  CHECK(F3.q() == 3);
  CHECK(F3.add(2, 2) == 1);
  CHECK(F3.mul(2, 2) == 1);
  CHECK(F3.neg(1) == 2);
  CHECK(F3.sub(0, 2) == 1);
  CHECK(F3.from_int(-1) == 2);
  CHECK(F3.from_int(7) == 1);

  Field F5(5);
  CHECK(F5.inv(2) == 3);
  CHECK(F5.pow(2, 4) == 1);
  CHECK(F5.pow(2, -1) == 3);
  CHECK(F5.pow(0, 0) == 1);
  CHECK_THROWS_AS(F5.inv(0), std::invalid_argument);
  CHECK_THROWS_AS((void)F5.pow(0, -1), std::invalid_argument);
}

TEST_CASE("field construction guards") {
  CHECK_THROWS_AS(Field(2), std::invalid_argument);   // even characteristic
  CHECK_THROWS_AS(Field(9), std::invalid_argument);   // not prime
  CHECK_THROWS_AS(Field(3, 0u), std::invalid_argument);
  // a reducible modulus is rejected
  CHECK_THROWS_AS(Field(3, std::vector<std::uint32_t>{2, 0, 1}),
                  std::invalid_argument);  // x^2+2 = (x+1)(x+2)
}

TEST_CASE("extension field F_9") {
  Field F9(3, 2);
  CHECK(F9.p() == 3);
  CHECK(F9.m() == 2);
  CHECK(F9.q() == 9);
  // canonical modulus is x^2 + 1, the first monic irreducible over F_3
  CHECK(F9.modulus() == std::vector<std::uint32_t>{1, 0, 1});

  // digitwise sums: (x+1) + (x+2) = 2x
  CHECK(F9.add(4, 5) == 6);
  // x * x = -1 = 2 under the canonical modulus
  CHECK(F9.mul(3, 3) == 2);

  // the multiplicative group is cyclic of order 8
  std::uint32_t g = F9.generator();
  std::set<std::uint32_t> powers;
  std::uint32_t acc = 1;
  for (int i = 0; i < 8; ++i) {
    powers.insert(acc);
    acc = F9.mul(acc, g);
  }
  CHECK(acc == 1);
  CHECK(powers.size() == 8);

  // every nonzero element satisfies a^8 = 1 and a * inv(a) = 1
  for (std::uint32_t a = 1; a < 9; ++a) {
    CHECK(F9.pow(a, 8) == 1);
    CHECK(F9.mul(a, F9.inv(a)) == 1);
  }
}

TEST_CASE("squares and nonsquares") {
  Field F3(3);
  CHECK(F3.is_square(1));
  CHECK_FALSE(F3.is_square(2));  // -1 is not a square mod 3
  CHECK(F3.smallest_nonsquare() == 2);
  CHECK_THROWS_AS(F3.is_square(0), std::invalid_argument);

  Field F5(5);
  CHECK(F5.is_square(4));
  CHECK_FALSE(F5.is_square(2));
  CHECK(F5.smallest_nonsquare() == 2);

  Field F9(3, 2);
  // q = 9 = 1 mod 4, so -1 is a square here
  CHECK(F9.is_square(2));
  CHECK(F9.is_square(3));  // x = sqrt(-1)^... lands in the even-log half
  CHECK(F9.smallest_nonsquare() == 4);  // x + 1
  // exactly half the nonzero elements are squares, closed under products
  int sq = 0;
  for (std::uint32_t a = 1; a < 9; ++a) sq += F9.is_square(a) ? 1 : 0;
  CHECK(sq == 4);
  for (std::uint32_t a = 1; a < 9; ++a)
    for (std::uint32_t b = 1; b < 9; ++b)
      CHECK(F9.is_square(F9.mul(a, b)) == (F9.is_square(a) == F9.is_square(b)));
}

TEST_CASE("subfield orders") {
  Field F9(3, 2);
  CHECK(F9.admits_subfield_order(3));
  CHECK(F9.admits_subfield_order(9));
  CHECK_FALSE(F9.admits_subfield_order(27));
  CHECK_FALSE(F9.admits_subfield_order(5));
  Field F27(3, 3);
  CHECK(F27.admits_subfield_order(3));
  CHECK_FALSE(F27.admits_subfield_order(9));  // 2 does not divide 3
  CHECK(F27.admits_subfield_order(27));
}

TEST_CASE("polynomial arithmetic") {
  Field F5(5);
  FqPoly a(F5, {1, 2, 3});       // 3x^2 + 2x + 1
  FqPoly b(F5, {4, 1});          // x + 4
  CHECK(a.degree() == 2);
  CHECK((a + b).coeff(0) == 0);
  CHECK((a - a).is_zero());
  CHECK((a * b).degree() == 3);

  auto [q, r] = a.divmod(b);
  CHECK(q * b + r == a);
  CHECK(r.degree() < b.degree());

  CHECK(a.eval(0) == 1);
  CHECK(a.eval(1) == F5.from_int(6));
  CHECK(b.eval(1) == 0);

  FqPoly d = a.derivative();  // 6x + 2 = x + 2
  CHECK(d == FqPoly(F5, {2, 1}));

  CHECK(FqPoly(F5, {0, 0, 2}).make_monic() == FqPoly(F5, {0, 0, 1}));
  CHECK(FqPoly::x_minus(F5, 3) == FqPoly(F5, {2, 1}));
  CHECK(FqPoly::x(F5).to_string() == "x");
  CHECK(FqPoly(F5, {1, 2, 1}).to_string() == "x^2 + 2*x + 1");
  CHECK(FqPoly::zero(F5).to_string() == "0");
}

TEST_CASE("gcd and modular powers") {
  Field F3(3);
  FqPoly f(F3, {2, 0, 1});  // x^2 + 2 = (x+1)(x+2)
  FqPoly g(F3, {1, 1});     // x + 1
  CHECK(gcd(f, g) == g);
  CHECK(gcd(g, f) == g);
  CHECK(gcd(FqPoly::zero(F3), g) == g);

  // x^q = x mod any product of linear factors
  CHECK(pow_mod(FqPoly::x(F3), sympcount::BigInt(3), f) == FqPoly::x(F3) % f);
  // Fermat in the quadratic extension: x^(q^2) = x mod an irreducible quadratic
  FqPoly h(F3, {1, 0, 1});
  CHECK(pow_mod(FqPoly::x(F3), sympcount::BigInt(9), h) == FqPoly::x(F3));
  CHECK(pow_mod(g, sympcount::BigInt(0), h).is_one());
}

TEST_CASE("irreducibility") {
  Field F3(3);
  CHECK(is_irreducible(FqPoly(F3, {1, 0, 1})));        // x^2 + 1
  CHECK_FALSE(is_irreducible(FqPoly(F3, {2, 0, 1})));  // x^2 + 2
  CHECK(is_irreducible(FqPoly(F3, {1, 2})));           // linear
  CHECK_FALSE(is_irreducible(FqPoly::constant(F3, 2)));

  Field F5(5);
  CHECK_FALSE(is_irreducible(FqPoly(F5, {1, 0, 1})));  // x^2+1 = (x+2)(x+3)
  CHECK(is_irreducible(FqPoly(F5, {2, 0, 1})));        // x^2+2
}

TEST_CASE("irreducible enumeration") {
  Field F3(3);
  auto lin = monic_irreducibles(F3, 1);
  REQUIRE(lin.size() == 3);
  CHECK(lin[0] == FqPoly::x(F3));
  CHECK(lin[1] == FqPoly(F3, {1, 1}));
  CHECK(lin[2] == FqPoly(F3, {2, 1}));

  auto quad = monic_irreducibles(F3, 2);
  REQUIRE(quad.size() == 3);  // (9 - 3) / 2
  CHECK(quad[0] == FqPoly(F3, {1, 0, 1}));
  for (auto& f : quad) CHECK(is_irreducible(f));
  CHECK(std::is_sorted(quad.begin(), quad.end()));

  // necklace counts: (q^d - sum over proper subfield contributions) / d
  CHECK(monic_irreducibles(F3, 3).size() == 8);    // (27 - 3) / 3
  CHECK(monic_irreducibles(F3, 4).size() == 18);   // (81 - 9) / 4
  Field F5(5);
  CHECK(monic_irreducibles(F5, 2).size() == 10);   // (25 - 5) / 2
}

TEST_CASE("factorization: pinned examples") {
  Field F3(3);
  auto f1 = factor_poly(FqPoly(F3, {1, 0, 1}));  // irreducible quadratic
  REQUIRE(f1.size() == 1);
  CHECK(f1[0].factor == FqPoly(F3, {1, 0, 1}));
  CHECK(f1[0].multiplicity == 1);

  auto f2 = factor_poly(FqPoly(F3, {2, 0, 1}));  // x^2 - 1 = (x+1)(x+2)
  REQUIRE(f2.size() == 2);
  CHECK(f2[0].factor == FqPoly(F3, {1, 1}));
  CHECK(f2[1].factor == FqPoly(F3, {2, 1}));
  CHECK(f2[0].multiplicity == 1);
  CHECK(f2[1].multiplicity == 1);

  Field F5(5);
  FqPoly xm1 = FqPoly::x_minus(F5, 1);
  auto f3 = factor_poly(xm1 * xm1 * xm1 * xm1);
  REQUIRE(f3.size() == 1);
  CHECK(f3[0].factor == xm1);
  CHECK(f3[0].multiplicity == 4);

  // multiplicity divisible by the characteristic (zero-derivative path)
  FqPoly q3(F3, {1, 0, 1});
  auto f4 = factor_poly(q3 * q3 * q3);
  REQUIRE(f4.size() == 1);
  CHECK(f4[0].factor == q3);
  CHECK(f4[0].multiplicity == 3);

  // mixed multiplicities across the characteristic boundary
  FqPoly lin(F3, {1, 1});
  auto f5 = factor_poly(lin * lin * lin * q3);
  REQUIRE(f5.size() == 2);
  CHECK(f5[0].factor == lin);
  CHECK(f5[0].multiplicity == 3);
  CHECK(f5[1].factor == q3);
  CHECK(f5[1].multiplicity == 1);

  CHECK_THROWS_AS(factor_poly(FqPoly::constant(F3, 1)), std::invalid_argument);
}

TEST_CASE("factorization: randomized remultiply") {
  for (std::uint32_t pm : {3u, 5u, 9u}) {
    Field F = pm == 9 ? Field(3, 2) : Field(pm);
    std::mt19937_64 rng(0xfac70 + pm);
    for (int trial = 0; trial < 1000; ++trial) {
      int deg = 1 + static_cast<int>(rng() % 8);
      std::vector<std::uint32_t> c(deg + 1);
      for (auto& v : c) v = static_cast<std::uint32_t>(rng() % F.q());
      FqPoly f(F, c);
      if (f.degree() < 1) continue;
      auto factors = factor_poly(f);
      FqPoly prod = FqPoly::constant(F, 1);
      for (auto& [fac, mult] : factors) {
        CHECK(is_irreducible(fac));
        CHECK(fac.is_monic());
        for (std::uint32_t i = 0; i < mult; ++i) prod = prod * fac;
      }
      CHECK(prod == f.make_monic());
      CHECK(std::is_sorted(factors.begin(), factors.end(),
                           [](const PolyFactor& a, const PolyFactor& b) {
                             return a.factor < b.factor;
                           }));
    }
  }
}

TEST_CASE("unit orbits") {
  Field F3(3);
  FrobOrbit plus = FrobOrbit::of_unit(F3, 1);
  FrobOrbit minus = FrobOrbit::of_unit(F3, -1);
  CHECK(plus.poly() == FqPoly(F3, {2, 1}));   // x - 1
  CHECK(minus.poly() == FqPoly(F3, {1, 1}));  // x + 1
  CHECK(plus.size() == 1);
  CHECK(plus.is_unit_orbit(1));
  CHECK_FALSE(plus.is_unit_orbit(-1));
  CHECK(minus.is_unit_orbit(-1));
  CHECK(plus != minus);
  CHECK(orbit_inverse(plus) == plus);
  CHECK(orbit_inverse(minus) == minus);
  CHECK(orbit_frobenius_power(plus, 3) == plus);
}

TEST_CASE("orbit constructor guards") {
  Field F3(3);
  CHECK_THROWS_AS(FrobOrbit(FqPoly::x(F3)), std::invalid_argument);  // root 0
  CHECK_THROWS_AS(FrobOrbit(FqPoly(F3, {2, 0, 1})), std::invalid_argument);  // reducible
  CHECK_THROWS_AS(FrobOrbit(FqPoly(F3, {2, 0, 2})), std::invalid_argument);  // not monic
}

TEST_CASE("orbit inverse is an involution and a bijection") {
  for (std::uint32_t pm : {3u, 5u, 9u}) {
    Field F = pm == 9 ? Field(3, 2) : Field(pm);
    for (std::uint32_t d = 1; d <= 4; ++d) {
      std::set<FrobOrbit> all, images;
      for (auto& f : monic_irreducibles(F, d)) {
        if (f.coeff(0) == 0) continue;  // excludes only x itself
        FrobOrbit o{f};
        FrobOrbit oi = orbit_inverse(o);
        CHECK(oi.size() == o.size());
        CHECK(orbit_inverse(oi) == o);
        all.insert(o);
        images.insert(oi);
      }
      CHECK(all == images);
    }
  }
}

TEST_CASE("frobenius power permutes orbits of each degree") {
  Field F9(3, 2);
  for (std::uint32_t d = 1; d <= 3; ++d) {
    std::set<FrobOrbit> all, images;
    for (auto& f : monic_irreducibles(F9, d)) {
      if (f.coeff(0) == 0) continue;
      FrobOrbit o{f};
      CHECK(orbit_frobenius_power(o, 9) == o);  // q1 = q is the identity
      FrobOrbit o3 = orbit_frobenius_power(o, 3);
      CHECK(o3.size() == o.size());
      // applying the subfield power twice gives x -> x^9, which fixes orbits
      CHECK(orbit_frobenius_power(o3, 3) == o);
      // roots are relabeled inside the closure, so inversion commutes with it
      CHECK(orbit_inverse(o3) == orbit_frobenius_power(orbit_inverse(o), 3));
      all.insert(o);
      images.insert(o3);
    }
    CHECK(all == images);
  }
  Field F3(3);
  FrobOrbit o{FqPoly(F3, {1, 0, 1})};
  CHECK_THROWS_AS(orbit_frobenius_power(o, 9), std::invalid_argument);
}

TEST_CASE("frobenius power on a degree-3 orbit over F_27 into F_3") {
  Field F27(3, 3);
  // pick the first irreducible cubic with nonzero constant term
  auto cubics = monic_irreducibles(F27, 2);
  int checked = 0;
  for (auto& f : cubics) {
    if (f.coeff(0) == 0) continue;
    FrobOrbit o{f};
    FrobOrbit t = orbit_frobenius_power(o, 3);
    CHECK(t.size() == o.size());
    // x -> x^3 applied three times is x -> x^27, trivial on orbits
    CHECK(orbit_frobenius_power(orbit_frobenius_power(t, 3), 3) == o);
    if (++checked == 40) break;
  }
  CHECK(checked == 40);
}
