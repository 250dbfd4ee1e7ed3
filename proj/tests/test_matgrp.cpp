#include "sympcount/matgrp.hpp"

#include <random>
#include <stdexcept>

#include "doctest.h"

using namespace sympcount;
using matgrp::Mat;

namespace {

const std::vector<Mat>& sp4_over_f3() {
  static const std::vector<Mat> g =
      matgrp::enumerate_group(matgrp::sp_generators(2, gf::Field(3)));
  return g;
}

const std::vector<Mat>& sl2_over_f9() {
  static const std::vector<Mat> g =
      matgrp::enumerate_group(matgrp::sp_generators(1, gf::Field(3, 2)));
  return g;
}

}  // namespace

TEST_CASE("matrix arithmetic over small fields") {
  gf::Field f5(5);
  Mat a(f5, 2, {1, 2, 3, 4});
  Mat b(f5, 2, {0, 1, 1, 0});
  CHECK((a * b) == Mat(f5, 2, {2, 1, 4, 3}));
  CHECK((a + b) == Mat(f5, 2, {1, 3, 4, 4}));
  CHECK((a - b) == Mat(f5, 2, {1, 1, 2, 4}));
  CHECK(a.scaled(2) == Mat(f5, 2, {2, 4, 1, 3}));
  CHECK(a.transpose() == Mat(f5, 2, {1, 3, 2, 4}));
  CHECK(a.pow(0) == Mat::identity(f5, 2));
  CHECK(a.pow(2) == a * a);
  CHECK(a * a.inverse() == Mat::identity(f5, 2));
  CHECK(a.inverse() * a == Mat::identity(f5, 2));
  CHECK(a.to_string() == "[1 2; 3 4]");

  CHECK_THROWS_AS(Mat(f5, 2, {1, 2, 3}), std::invalid_argument);      // wrong count
  CHECK_THROWS_AS(Mat(f5, 2, {1, 2, 3, 5}), std::invalid_argument);   // out of range
  CHECK_THROWS_AS(Mat(f5, 2, {1, 2, 2, 4}).inverse(), std::invalid_argument);  // singular
  CHECK_THROWS_AS(a * Mat(f5, 3), std::invalid_argument);
}

TEST_CASE("characteristic polynomial") {
  gf::Field f3(3);
  // companion matrix of x^2 + 1
  Mat c(f3, 2, {0, 2, 1, 0});
  CHECK(matgrp::charpoly(c) == gf::FqPoly(f3, {1, 0, 1}));
  gf::FqPoly xm1 = gf::FqPoly::x_minus(f3, 1);
  CHECK(matgrp::charpoly(Mat::identity(f3, 4)) == xm1 * xm1 * xm1 * xm1);
  // a matrix with distinct eigenvalues 1, 2 over F_5
  gf::Field f5(5);
  Mat d(f5, 2, {1, 3, 0, 2});
  CHECK(matgrp::charpoly(d) == gf::FqPoly::x_minus(f5, 1) * gf::FqPoly::x_minus(f5, 2));

  // conjugation invariance and the self-reciprocal shape on symplectic matrices
  std::mt19937_64 rng(0xc4a9f001);
  const auto& group = sp4_over_f3();
  for (int trial = 0; trial < 50; ++trial) {
    const Mat& m = group[rng() % group.size()];
    const Mat& g = group[rng() % group.size()];
    gf::FqPoly cp = matgrp::charpoly(m);
    CHECK(cp.degree() == 4);
    CHECK(cp.is_monic());
    CHECK(matgrp::charpoly(g * m * g.inverse()) == cp);
    CHECK(cp.coeff(0) == 1);  // det of a symplectic matrix
    for (int i = 0; i <= 4; ++i)
      CHECK(cp.coeff(static_cast<std::size_t>(i)) ==
            cp.coeff(static_cast<std::size_t>(4 - i)));
  }
}

TEST_CASE("alternating form, symplectic and conformal tests") {
  gf::Field f3(3);
  Mat g2 = matgrp::gram_form(f3, 1);
  CHECK(g2 == Mat(f3, 2, {0, 2, 1, 0}));
  Mat g4 = matgrp::gram_form(f3, 2);
  CHECK(g4.transpose() == g4.scaled(f3.neg(1)));
  CHECK(matgrp::is_symplectic(Mat::identity(f3, 4)));
  for (const Mat& gen : matgrp::sp_generators(2, f3)) CHECK(matgrp::is_symplectic(gen));
  for (const Mat& gen : matgrp::sp_generators(1, gf::Field(3, 2)))
    CHECK(matgrp::is_symplectic(gen));
  for (const Mat& gen : matgrp::sp_generators(3, gf::Field(5)))
    CHECK(matgrp::is_symplectic(gen));

  Mat tw = matgrp::diagonal_twist_element(2, f3);
  CHECK(matgrp::is_conformal(tw));
  CHECK(!matgrp::is_symplectic(tw));
  CHECK(matgrp::conformal_multiplier(tw) == f3.smallest_nonsquare());
  // scales the two hyperbolic planes differently: not conformal
  Mat bad = Mat::identity(f3, 4);
  bad.set(0, 0, 2);
  CHECK(!matgrp::is_conformal(bad));
  CHECK(matgrp::conformal_multiplier(Mat(f3, 4)) == 0);

  // entrywise field power fixes the form and respects products
  gf::Field f9(3, 2);
  const auto& sl29 = sl2_over_f9();
  std::mt19937_64 rng(0xf0a0);
  for (int trial = 0; trial < 40; ++trial) {
    const Mat& a = sl29[rng() % sl29.size()];
    const Mat& b = sl29[rng() % sl29.size()];
    Mat fa = matgrp::entrywise_power(a, 3);
    CHECK(matgrp::is_symplectic(fa));
    CHECK(matgrp::entrywise_power(fa, 3) == a);
    CHECK(matgrp::entrywise_power(a * b, 3) == fa * matgrp::entrywise_power(b, 3));
  }
  CHECK_THROWS_AS(matgrp::entrywise_power(Mat::identity(f9, 2), 4), std::invalid_argument);
}

TEST_CASE("group closure matches the classical orders") {
  CHECK(matgrp::sp_group_order(1, BigInt(3)) == 24);
  CHECK(matgrp::sp_group_order(1, BigInt(9)) == 720);
  CHECK(matgrp::sp_group_order(2, BigInt(3)) == 51840);

  gf::Field f3(3), f5(5);
  auto sl23 = matgrp::enumerate_group(matgrp::sp_generators(1, f3));
  CHECK(BigInt(sl23.size()) == matgrp::sp_group_order(1, BigInt(3)));
  for (const Mat& m : sl23) CHECK(matgrp::is_symplectic(m));

  auto sl25 = matgrp::enumerate_group(matgrp::sp_generators(1, f5));
  CHECK(BigInt(sl25.size()) == matgrp::sp_group_order(1, BigInt(5)));

  CHECK(BigInt(sl2_over_f9().size()) == matgrp::sp_group_order(1, BigInt(9)));
  CHECK(BigInt(sp4_over_f3().size()) == matgrp::sp_group_order(2, BigInt(3)));

  // deterministic discovery order
  auto again = matgrp::enumerate_group(matgrp::sp_generators(1, f3));
  REQUIRE(again.size() == sl23.size());
  for (std::size_t i = 0; i < again.size(); ++i) CHECK(again[i] == sl23[i]);

  CHECK_THROWS_AS(matgrp::enumerate_group(matgrp::sp_generators(2, f3), 1000), BudgetExceeded);
  CHECK_THROWS_AS(matgrp::enumerate_group({}), std::invalid_argument);
}

TEST_CASE("class parameters of distinguished elements") {
  gf::Field f3(3);
  // identity and its negative: one Jordan size, full multiplicity
  auto pid = matgrp::wall_params_of(Mat::identity(f3, 4));
  CHECK(pid.mult_unit(1, 1) == 4);
  CHECK(pid.mult_entries().size() == 1);
  CHECK(classparams::validate(pid).ok);
  auto pneg = matgrp::wall_params_of(Mat::scalar(f3, 4, f3.neg(1)));
  CHECK(pneg.mult_unit(-1, 1) == 4);

  // the two transvection classes differ exactly in the square class
  Mat t1(f3, 2, {1, 1, 0, 1});
  auto p1 = matgrp::wall_params_of(t1);
  CHECK(p1.mult_unit(1, 2) == 1);
  CHECK(p1.psi(1, 1) == classparams::WittClass::Square);  // 1x1 form value -2c = 1
  Mat t2(f3, 2, {1, 2, 0, 1});
  auto p2 = matgrp::wall_params_of(t2);
  CHECK(p2.psi(1, 1) == classparams::WittClass::NonSquare);
  CHECK(p1 != p2);
  CHECK(classparams::validate(p1).ok);
  CHECK(classparams::validate(p2).ok);

  // irreducible characteristic polynomial: a single orbit entry, no Witt data
  Mat c(f3, 2, {0, 2, 1, 0});
  auto pc = matgrp::wall_params_of(c);
  CHECK(pc.mult(gf::FrobOrbit(gf::FqPoly(f3, {1, 0, 1})), 1) == 1);
  CHECK(pc.psi_entries(1).empty());
  CHECK(pc.psi_entries(-1).empty());

  // a long-root element of Sp_4: one size-2 block and two fixed lines at +1
  Mat r = Mat::identity(f3, 4);
  r.set(1, 2, 1);
  auto pr = matgrp::wall_params_of(r);
  CHECK(pr.mult_unit(1, 1) == 2);
  CHECK(pr.mult_unit(1, 2) == 1);
  CHECK(pr.psi(1, 1) != classparams::WittClass::Neutral);
  CHECK(classparams::validate(pr).ok);

  CHECK_THROWS_AS(matgrp::wall_params_of(Mat(f3, 4, std::vector<std::uint32_t>(16, 1))),
                  std::invalid_argument);  // not symplectic
}

TEST_CASE("extraction is constant on conjugacy classes") {
  std::mt19937_64 rng(0x77a11);
  const auto& sl29 = sl2_over_f9();
  for (int trial = 0; trial < 60; ++trial) {
    const Mat& m = sl29[rng() % sl29.size()];
    const Mat& g = sl29[rng() % sl29.size()];
    CHECK(matgrp::wall_params_of(g * m * g.inverse()) == matgrp::wall_params_of(m));
  }
  const auto& sp43 = sp4_over_f3();
  for (int trial = 0; trial < 60; ++trial) {
    const Mat& m = sp43[rng() % sp43.size()];
    const Mat& g = sp43[rng() % sp43.size()];
    CHECK(matgrp::wall_params_of(g * m * g.inverse()) == matgrp::wall_params_of(m));
  }
}

TEST_CASE("census keys are exactly the enumerated parameters") {
  struct Row {
    unsigned n;
    gf::Field f;
  };
  for (Row row : {Row{1, gf::Field(3)}, Row{1, gf::Field(5)}, Row{1, gf::Field(3, 2)},
                  Row{2, gf::Field(3)}}) {
    CAPTURE(row.f.q());
    CAPTURE(row.n);
    auto group = (row.n == 2)   ? sp4_over_f3()
                 : (row.f.q() == 9) ? sl2_over_f9()
                                    : matgrp::enumerate_group(matgrp::sp_generators(row.n, row.f));
    auto census = matgrp::oracle_class_census(group);
    auto params = classparams::enumerate_params(row.n, row.f);
    REQUIRE(census.size() == params.size());
    std::size_t idx = 0;
    std::uint64_t total = 0;
    for (const auto& [param, count] : census) {
      CHECK(param == params[idx]);  // both sides ascend in canonical order
      CHECK(count > 0);
      CHECK(group.size() % count == 0);  // class sizes divide the group order
      total += count;
      ++idx;
    }
    CHECK(total == group.size());
  }
}

TEST_CASE("elementwise automorphism action matches the parameter action") {
  gf::Field f9(3, 2);
  const auto& sl29 = sl2_over_f9();
  const Mat tw9 = matgrp::diagonal_twist_element(1, f9);
  const Mat tw9i = tw9.inverse();
  for (const Mat& m : sl29) {
    auto p = matgrp::wall_params_of(m);
    CHECK(matgrp::wall_params_of(matgrp::entrywise_power(m, 3)) ==
          classparams::apply_field_aut(p, 3));
    CHECK(matgrp::wall_params_of(tw9 * m * tw9i) == classparams::apply_diagonal(p));
  }

  gf::Field f3(3);
  const auto& sp43 = sp4_over_f3();
  const Mat tw3 = matgrp::diagonal_twist_element(2, f3);
  const Mat tw3i = tw3.inverse();
  std::mt19937_64 rng(0xd1a60);
  for (int trial = 0; trial < 1500; ++trial) {
    const Mat& m = sp43[rng() % sp43.size()];
    auto p = matgrp::wall_params_of(m);
    CHECK(matgrp::wall_params_of(tw3 * m * tw3i) == classparams::apply_diagonal(p));
  }
}

TEST_CASE("matrix-side invariant counts agree with the combinatorial counts") {
  gf::Field f3(3), f5(5), f9(3, 2);
  auto sl23 = matgrp::enumerate_group(matgrp::sp_generators(1, f3));
  auto sl25 = matgrp::enumerate_group(matgrp::sp_generators(1, f5));

  // pinned: five classes of SL_2(5) survive the diagonal twist
  CHECK(matgrp::oracle_invariant_count(sl25, {5, true}) == 5);

  struct Case {
    const std::vector<Mat>* group;
    unsigned n;
    gf::Field f;
    classparams::AutSpec aut;
  };
  for (Case c : {Case{&sl23, 1, f3, {3, true}}, Case{&sl23, 1, f3, {3, false}},
                 Case{&sl25, 1, f5, {5, true}}, Case{&sl25, 1, f5, {5, false}},
                 Case{&sl2_over_f9(), 1, f9, {3, true}}, Case{&sl2_over_f9(), 1, f9, {3, false}},
                 Case{&sl2_over_f9(), 1, f9, {9, true}}, Case{&sl2_over_f9(), 1, f9, {9, false}},
                 Case{&sp4_over_f3(), 2, f3, {3, true}}, Case{&sp4_over_f3(), 2, f3, {3, false}}}) {
    CAPTURE(c.f.q());
    CAPTURE(c.aut.q1);
    CAPTURE(c.aut.diagonal);
    CHECK(matgrp::oracle_invariant_count(*c.group, c.aut) ==
          classparams::count_invariant(c.n, c.f, c.aut));
  }
  CHECK_THROWS_AS(matgrp::oracle_invariant_count(sl23, {9, true}), std::invalid_argument);
  CHECK_THROWS_AS(matgrp::oracle_invariant_count({}, {3, true}), std::invalid_argument);
}
