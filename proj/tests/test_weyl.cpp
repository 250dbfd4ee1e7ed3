#include "sympcount/weyl.hpp"

#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"

using namespace sympcount;
using weyl::MonomialMat;
using weyl::Root;
using weyl::SignedPerm;
using weyl::TwistSpec;

TEST_CASE("signed permutations compose and invert") {
  SignedPerm s({2, -1});
  CHECK(s.image(1) == 2);
  CHECK(s.image(2) == -1);
  CHECK(s.image(-1) == -2);
  CHECK(s.order() == 4);
  CHECK(s.compose(s.inverse()) == SignedPerm::identity(2));
  CHECK(s.inverse().compose(s) == SignedPerm::identity(2));
  SignedPerm t({1, -2});
  CHECK(t.order() == 2);
  CHECK(s.compose(t) == SignedPerm({2, 1}));  // s(t(x))
  CHECK(t.compose(s) == SignedPerm({-2, -1}));
  CHECK(SignedPerm({-1, 2, 3}).to_string() == "[-1 2 3]");

  CHECK_THROWS_AS(SignedPerm({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SignedPerm({0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(SignedPerm({3, 2}), std::invalid_argument);
  CHECK_THROWS_AS(s.image(0), std::invalid_argument);
  CHECK_THROWS_AS(s.image(3), std::invalid_argument);
  CHECK_THROWS_AS(s.compose(SignedPerm({1})), std::invalid_argument);
}

TEST_CASE("monomial matrices preserve the form and project onto W") {
  // the rank-1 rotation [[0,-1],[1,0]] is allowed, the reflection [[0,1],[1,0]] is not
  MonomialMat r(1, {0, -1, 1, 0});
  CHECK_THROWS_AS(MonomialMat(1, {0, 1, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(MonomialMat(1, {1, 1, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(MonomialMat(1, {2, 0, 0, 1}), std::invalid_argument);
  CHECK(r.at(0, 1) == -1);
  CHECK(r.at(1, 0) == 1);
  CHECK(r.at(0, 0) == 0);
  CHECK(r * r.inverse() == MonomialMat::identity(1));
  CHECK(r.pow(4) == MonomialMat::identity(1));
  CHECK(r.order() == 4);
  CHECK(!r.is_diagonal());
  CHECK(MonomialMat(1, {-1, 0, 0, -1}).is_diagonal());
  CHECK(r.to_string() == "[0 -1; 1 0]");

  // projection forgets the torus part: both rank-1 diagonals map to the identity
  CHECK(weyl::perm_image(MonomialMat(1, {-1, 0, 0, -1})) == SignedPerm::identity(1));
  CHECK(weyl::perm_image(r) == SignedPerm({-1}));

  // the projection is a homomorphism on the full closure for small rank
  for (unsigned l : {1u, 2u}) {
    auto V = weyl::enumerate_extended_weyl(l);
    for (const MonomialMat& x : V)
      for (const MonomialMat& y : V)
        CHECK(weyl::perm_image(x * y) == weyl::perm_image(x).compose(weyl::perm_image(y)));
  }
}

TEST_CASE("chevalley generators") {
  // rank 1: the long-root torus element is -I and the Steinberg square relation holds
  MonomialMat h1 = weyl::chevalley_h(1, Root(1, 1), -1);
  CHECK(h1 == MonomialMat(1, {-1, 0, 0, -1}));
  MonomialMat n1 = weyl::chevalley_n(1, Root(1, 1), -1);
  CHECK(n1 * n1 == h1);

  // rank 2: the short-root torus element factors through the long ones
  CHECK(weyl::chevalley_h(2, Root(1, -2), -1) ==
        weyl::chevalley_h(2, Root(1, 1), -1) * weyl::chevalley_h(2, Root(2, 2), -1));

  // n_alpha(-1)^2 = h_alpha(-1) for every root up to rank 3
  for (unsigned l : {1u, 2u, 3u})
    for (const Root& a : weyl::all_roots(l)) {
      MonomialMat n = weyl::chevalley_n(l, a, -1);
      CHECK(n * n == weyl::chevalley_h(l, a, -1));
      CHECK(weyl::chevalley_n(l, a, 1) * n == MonomialMat::identity(l));
    }

  // conjugation permutes root generators up to the structure-constant sign
  for (unsigned l : {2u, 3u})
    for (const Root& a : weyl::all_roots(l))
      for (const Root& b : weyl::all_roots(l)) {
        MonomialMat nb = weyl::chevalley_n(l, b, 1);
        MonomialMat conj = nb.inverse() * weyl::chevalley_n(l, a, 1) * nb;
        Root ra = weyl::reflect_root(b, a);
        bool hits = conj == weyl::chevalley_n(l, ra, 1) || conj == weyl::chevalley_n(l, ra, -1);
        CHECK(hits);
      }

  CHECK_THROWS_AS(Root(1, -1), std::invalid_argument);
  CHECK_THROWS_AS(Root(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(weyl::chevalley_n(1, Root(1, -2), 1), std::invalid_argument);
  CHECK_THROWS_AS(weyl::chevalley_n(2, Root(1, -2), 2), std::invalid_argument);
  CHECK(weyl::all_roots(3).size() == 18);
}

TEST_CASE("coxeter element and twists") {
  CHECK(weyl::perm_image(weyl::coxeter_v0(1)) == SignedPerm({-1}));
  CHECK(weyl::perm_image(weyl::coxeter_v0(2)) == SignedPerm({2, -1}));
  CHECK(weyl::perm_image(weyl::coxeter_v0(4)).order() == 8);

  CHECK(weyl::perm_image(weyl::sylow_twist(TwistSpec(2, 2, true))) == SignedPerm({-1, -2}));
  CHECK(weyl::perm_image(weyl::sylow_twist(TwistSpec(2, 4, true))) == SignedPerm({2, -1}));
  CHECK(weyl::perm_image(weyl::sylow_twist(TwistSpec(3, 4, false))) == SignedPerm({2, -1, 3}));

  TwistSpec quartic(6, 4, true);
  CHECK(quartic.d0 == 2);
  CHECK(quartic.a == 3);
  CHECK(quartic.eps == -1);
  TwistSpec split(2, 1, true);
  CHECK(split.d0 == 1);
  CHECK(split.eps == 1);
  CHECK(split.a == 2);
  TwistSpec partial(5, 4, false);
  CHECK(partial.lprime == 4);
  CHECK(partial.a == 2);

  // a regular twist moves {1..l} in orbits of one common length d0
  for (unsigned l = 1; l <= 5; ++l)
    for (unsigned d = 1; d <= 2 * l; ++d) {
      if ((2 * l) % d != 0) continue;
      TwistSpec spec(l, d, true);
      SignedPerm w = weyl::perm_image(weyl::sylow_twist(spec));
      std::vector<bool> seen(l, false);
      for (unsigned s = 1; s <= l; ++s) {
        if (seen[s - 1]) continue;
        unsigned len = 0, cur = s;
        do {
          seen[cur - 1] = true;
          int im = w.image(static_cast<int>(cur));
          cur = static_cast<unsigned>(im < 0 ? -im : im);
          ++len;
        } while (cur != s);
        CHECK(len == spec.d0);
      }
    }

  CHECK_THROWS_AS(TwistSpec(2, 3, true), std::invalid_argument);   // 3 does not divide 4
  CHECK_THROWS_AS(TwistSpec(2, 8, false), std::invalid_argument);  // d0 = 4 > l
  CHECK_THROWS_AS(TwistSpec(2, 0, true), std::invalid_argument);
}

TEST_CASE("centralizers in the signed permutation group") {
  struct Pin {
    unsigned l, d;
    std::uint64_t order;
  };
  for (Pin pin : {Pin{2, 2, 8}, Pin{2, 4, 4}, Pin{4, 4, 32}}) {
    TwistSpec spec(pin.l, pin.d, true);
    auto rep = weyl::centralizer_in_W(weyl::perm_image(weyl::sylow_twist(spec)));
    CAPTURE(pin.l);
    CAPTURE(pin.d);
    CHECK(rep.order == pin.order);
    CHECK(rep.wreath_shape);
    CHECK(rep.d0 == spec.d0);
    CHECK(rep.a == spec.a);
    CHECK(rep.base_generators.size() == spec.a);
    CHECK(rep.swap_generators.size() == spec.a - 1);
    CHECK(rep.generators_generate);
  }

  // the shape (2 d0)^a a! holds for every regular twist up to rank 5
  for (unsigned l = 1; l <= 5; ++l)
    for (unsigned d = 1; d <= 2 * l; ++d) {
      if ((2 * l) % d != 0) continue;
      TwistSpec spec(l, d, true);
      auto rep = weyl::centralizer_in_W(weyl::perm_image(weyl::sylow_twist(spec)));
      std::uint64_t expect = 1;
      for (unsigned i = 0; i < spec.a; ++i) expect *= 2 * spec.d0;
      for (unsigned i = 2; i <= spec.a; ++i) expect *= i;
      CHECK(rep.order == expect);
      CHECK(rep.wreath_shape);
      CHECK(rep.generators_generate);
      for (const SignedPerm& g : rep.base_generators) CHECK(g.order() == 2 * spec.d0);
    }

  // identity: centralizer is the whole group, which is itself a wreath product
  auto full = weyl::centralizer_in_W(SignedPerm::identity(3));
  CHECK(full.order == 48);
  CHECK(full.wreath_shape);
  CHECK(full.generators_generate);

  // homogeneous orbit lengths but mixed cycle types: no wreath structure
  auto mixed = weyl::centralizer_in_W(SignedPerm({-1, 2}));
  CHECK(mixed.order == 4);
  CHECK(!mixed.wreath_shape);

  CHECK_THROWS_AS(weyl::centralizer_in_W(SignedPerm::identity(8)), BudgetExceeded);
}

TEST_CASE("extended weyl group enumeration") {
  CHECK(weyl::enumerate_extended_weyl(1).size() == 4);
  CHECK(weyl::enumerate_extended_weyl(2).size() == 32);
  CHECK(weyl::enumerate_extended_weyl(3).size() == 384);

  // kernel of the projection = diagonal subgroup of order 2^l
  for (unsigned l : {1u, 2u, 3u}) {
    auto V = weyl::enumerate_extended_weyl(l);
    std::uint64_t kernel = 0, diag = 0;
    for (const MonomialMat& x : V) {
      if (weyl::perm_image(x) == SignedPerm::identity(l)) {
        ++kernel;
        CHECK(x.is_diagonal());
      }
      if (x.is_diagonal()) ++diag;
    }
    CHECK(kernel == (1ull << l));
    CHECK(diag == kernel);
    // image = all of W
    std::set<SignedPerm> image;
    for (const MonomialMat& x : V) image.insert(weyl::perm_image(x));
    CHECK(image.size() == weyl::enumerate_signed_perms(l).size());
  }

  CHECK_THROWS_AS(weyl::enumerate_extended_weyl(6), BudgetExceeded);
  CHECK_THROWS_AS(weyl::enumerate_extended_weyl(3, 100), BudgetExceeded);
}

TEST_CASE("extended weyl structure checks") {
  for (unsigned l = 1; l <= 5; ++l)
    for (unsigned d = 1; d <= 2 * l; ++d) {
      if ((2 * l) % d != 0) continue;
      TwistSpec spec(l, d, true);
      auto rep = weyl::extended_weyl_checks(spec);
      CAPTURE(l);
      CAPTURE(d);
      CHECK(rep.all_ok());
      CHECK(rep.failures.empty());
      CHECK(rep.v_order == weyl::enumerate_extended_weyl(l).size());
      CHECK(rep.h_order == (1ull << l));
      CHECK(rep.hd_order == (1ull << spec.a));
      std::uint64_t cw = 1;
      for (unsigned i = 0; i < spec.a; ++i) cw *= 2 * spec.d0;
      for (unsigned i = 2; i <= spec.a; ++i) cw *= i;
      CHECK(rep.vd_order == rep.hd_order * cw);
      CHECK(rep.cbar1.order() == 2 * spec.d0);
      CHECK(weyl::perm_image(rep.c1) == rep.cbar1);
    }

  CHECK_THROWS_AS(weyl::extended_weyl_checks(TwistSpec(3, 4, false)), std::invalid_argument);
  CHECK_THROWS_AS(weyl::extended_weyl_checks(TwistSpec(6, 2, true)), BudgetExceeded);
}

TEST_CASE("fixed-point orders of twisted tori") {
  CHECK(weyl::torus_fixed_order(weyl::perm_image(weyl::sylow_twist(TwistSpec(2, 2, true))), 3) ==
        16);
  CHECK(weyl::torus_fixed_order(weyl::perm_image(weyl::sylow_twist(TwistSpec(1, 1, true))), 5) ==
        4);
  CHECK(weyl::torus_fixed_order(weyl::perm_image(weyl::sylow_twist(TwistSpec(2, 4, true))), 3) ==
        10);

  for (std::uint64_t q : {3ull, 5ull, 9ull})
    for (unsigned l = 1; l <= 6; ++l)
      for (unsigned d = 1; d <= 2 * l; ++d) {
        if ((2 * l) % d != 0) continue;
        TwistSpec spec(l, d, true);
        BigInt per = big_pow(BigInt(static_cast<std::int64_t>(q)), spec.d0) - spec.eps;
        BigInt expect = big_pow(per, spec.a);
        CHECK(weyl::torus_fixed_order(weyl::perm_image(weyl::sylow_twist(spec)), q) == expect);
      }

  CHECK_THROWS_AS(weyl::torus_fixed_order(SignedPerm::identity(2), 4), std::invalid_argument);
  CHECK_THROWS_AS(weyl::torus_fixed_order(SignedPerm::identity(2), 1), std::invalid_argument);
}

TEST_CASE("character stabilizers in the twisted torus normalizer") {
  // trivial tuple: everything stabilizes
  auto all0 = weyl::stabilizer_shape(TwistSpec(4, 2, true), 3, {0, 0, 0, 0});
  CHECK(all0.modulus == 4);
  CHECK(all0.galois_order == 2);
  CHECK(all0.blocks == std::vector<std::pair<std::uint64_t, unsigned>>{{2, 4}});
  CHECK(all0.predicted_order == 384);  // 2^4 * 4!
  CHECK(all0.match);

  // residues in distinct free orbits: trivial stabilizer
  auto free2 = weyl::stabilizer_shape(TwistSpec(2, 2, true), 5, {1, 2});
  CHECK(free2.modulus == 6);
  CHECK(free2.predicted_order == 1);
  CHECK(free2.match);

  // one shared orbit with trivial point stabilizer: only the swap survives
  auto pair1 = weyl::stabilizer_shape(TwistSpec(2, 2, true), 3, {1, 1});
  CHECK(pair1.modulus == 4);
  CHECK(pair1.blocks == std::vector<std::pair<std::uint64_t, unsigned>>{{1, 2}});
  CHECK(pair1.predicted_order == 2);
  CHECK(pair1.match);

  // exhaustive tuples for small moduli, plus seeded samples for larger grids
  for (unsigned l : {2u, 3u}) {
    TwistSpec spec(l, 2, true);
    std::uint64_t Q = 4;  // q = 3, d even
    std::vector<std::uint64_t> xi(spec.a, 0);
    for (std::uint64_t code = 0; code < big_pow(BigInt(4), spec.a); ++code) {
      std::uint64_t c = code;
      for (unsigned i = 0; i < spec.a; ++i) {
        xi[i] = c % Q;
        c /= Q;
      }
      CHECK(weyl::stabilizer_shape(spec, 3, xi).match);
    }
  }
  std::mt19937_64 rng(0x5eed5);
  struct Grid {
    unsigned l, d;
    std::uint64_t q;
  };
  for (Grid g : {Grid{2, 4, 3}, Grid{3, 2, 5}, Grid{4, 2, 3}, Grid{2, 1, 5}, Grid{3, 3, 3},
                 Grid{4, 4, 5}, Grid{3, 6, 3}, Grid{3, 1, 9}}) {
    TwistSpec spec(g.l, g.d, true);
    BigInt qb = big_pow(BigInt(static_cast<std::int64_t>(g.q)), spec.d0) - spec.eps;
    std::uint64_t Q = qb.convert_to<std::uint64_t>();
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<std::uint64_t> xi(spec.a);
      for (auto& r : xi) r = rng() % Q;
      auto shape = weyl::stabilizer_shape(spec, g.q, xi);
      CAPTURE(g.l);
      CAPTURE(g.d);
      CAPTURE(g.q);
      CHECK(shape.match);
      CHECK(shape.galois_order == 2 * spec.d0);
    }
  }

  CHECK_THROWS_AS(weyl::stabilizer_shape(TwistSpec(2, 2, true), 3, {0}), std::invalid_argument);
  CHECK_THROWS_AS(weyl::stabilizer_shape(TwistSpec(2, 2, true), 3, {4, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(weyl::stabilizer_shape(TwistSpec(2, 2, true), 4, {0, 0}),
                  std::invalid_argument);
}

TEST_CASE("wreath product sign character") {
  using weyl::WreathElem;
  CHECK(weyl::wreath_mu(4, WreathElem{{0, 0}, {0, 1}}) == 1);
  CHECK(weyl::wreath_mu(4, WreathElem{{1, 0}, {1, 0}}) == -1);
  CHECK(weyl::wreath_mu(6, WreathElem{{5, 1}, {0, 1}}) == 1);

  // multiplicativity over the whole group for small parameters
  for (std::uint64_t f : {2ull, 4ull, 6ull})
    for (unsigned n : {1u, 2u}) {
      std::vector<WreathElem> all;
      std::vector<unsigned> perm(n);
      for (unsigned i = 0; i < n; ++i) perm[i] = i;
      do {
        std::uint64_t total = 1;
        for (unsigned i = 0; i < n; ++i) total *= f;
        for (std::uint64_t code = 0; code < total; ++code) {
          std::uint64_t c = code;
          WreathElem e{std::vector<std::uint64_t>(n), perm};
          for (unsigned i = 0; i < n; ++i) {
            e.base[i] = c % f;
            c /= f;
          }
          all.push_back(std::move(e));
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      for (const WreathElem& x : all)
        for (const WreathElem& y : all)
          CHECK(weyl::wreath_mu(f, weyl::wreath_compose(f, x, y)) ==
                weyl::wreath_mu(f, x) * weyl::wreath_mu(f, y));
    }

  // on base 2-torsion the character vanishes exactly when f/2 is even,
  // while the full base always carries a sign for any even f
  for (std::uint64_t f : {2ull, 4ull, 6ull, 8ull}) {
    bool trivial_on_torsion = true;
    for (unsigned n : {1u, 2u, 3u}) {
      std::vector<unsigned> id(n);
      for (unsigned i = 0; i < n; ++i) id[i] = i;
      for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        WreathElem e{std::vector<std::uint64_t>(n, 0), id};
        for (unsigned i = 0; i < n; ++i)
          if ((mask >> i) & 1) e.base[i] = f / 2;
        if (weyl::wreath_mu(f, e) == -1) trivial_on_torsion = false;
      }
      WreathElem single{std::vector<std::uint64_t>(n, 0), id};
      single.base[0] = 1;
      CHECK(weyl::wreath_mu(f, single) == -1);
    }
    CHECK(trivial_on_torsion == ((f / 2) % 2 == 0));
  }

  CHECK_THROWS_AS(weyl::wreath_mu(3, weyl::WreathElem{{0}, {0}}), std::invalid_argument);
  CHECK_THROWS_AS(weyl::wreath_mu(4, weyl::WreathElem{{0, 0}, {0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(weyl::wreath_mu(4, weyl::WreathElem{{4}, {0}}), std::invalid_argument);
}
