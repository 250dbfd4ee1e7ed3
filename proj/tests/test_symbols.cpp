#include "doctest.h"

#include <random>

#include "sympcount/symbols.hpp"

using namespace sympcount::symbols;
using sympcount::BigInt;
using sympcount::BudgetExceeded;

namespace {

// random strictly increasing row: length <= 5, entries <= 12
Row random_row(std::mt19937_64& rng) {
  bool used[13] = {};
  unsigned len = static_cast<unsigned>(rng() % 6);
  for (unsigned i = 0; i < len; ++i) used[rng() % 13] = true;
  Row r;
  for (unsigned e = 0; e <= 12; ++e)
    if (used[e]) r.push_back(e);
  return r;
}

}  // namespace

TEST_CASE("rank and defect") {
  CHECK(rank_of({}, {1}) == 1);
  CHECK(defect_of({}, {1}) == 1);
  CHECK(rank_of({}, {}) == 0);
  CHECK(rank_of({1}, {1}) == 2);  // degenerate, rank 2
  CHECK(defect_of({0, 1}, {}) == 2);
}

TEST_CASE("normalization") {
  LSymbol a({0}, {1});
  LSymbol b({0, 1}, {0, 2});  // one shift step above a
  CHECK(a == b);
  CHECK(a.rank() == 1);
  CHECK(a.defect() == 0);
  CHECK(LSymbol({}, {1}).defect() == 1);  // distinct class, same rank

  CHECK(LSymbol({1}, {}) == LSymbol({}, {1}));  // row swap
  CHECK(LSymbol({0}, {0}) == LSymbol({}, {}));  // fully removable prefix

  CHECK_THROWS_AS(LSymbol({1, 1}, {}), std::invalid_argument);
  CHECK_THROWS_AS(LSymbol({2, 1}, {}), std::invalid_argument);
}

TEST_CASE("normalization is idempotent; rank/defect are class invariants") {
  std::mt19937_64 rng(0x517b01);
  for (int trial = 0; trial < 10000; ++trial) {
    Row s = random_row(rng), t = random_row(rng);
    unsigned r0 = rank_of(s, t), d0 = defect_of(s, t);
    auto [s1, t1] = shift(s, t);
    CHECK(rank_of(s1, t1) == r0);
    CHECK(defect_of(s1, t1) == d0);
    CHECK(d0 % 2 == defect_of(s1, t1) % 2);

    LSymbol sym(s, t);
    CHECK(sym.rank() == r0);
    CHECK(sym.defect() == d0);
    LSymbol again(sym.top(), sym.bottom());
    CHECK(again == sym);
    CHECK(LSymbol(s1, t1) == sym);
    CHECK(sym.top() <= sym.bottom());
    if (!(sym.top().empty() || sym.bottom().empty()))
      CHECK((sym.top()[0] != 0 || sym.bottom()[0] != 0));
  }
}

TEST_CASE("phi spot values") {
  CHECK(phi(0) == 1);
  CHECK(phi(1) == 2);
  CHECK(phi(2) == 6);
  auto all = phi_all(6);
  CHECK(all[0] == 1);
  CHECK(all[1] == 2);
  CHECK(all[2] == 6);
}

TEST_CASE("phi by brute-force symbol set, tiny ranks") {
  // independent route: normalize every raw pair with entries <= 8, rows <= 4,
  // and count distinct classes of each rank with odd defect
  std::vector<Row> rows;
  for (unsigned mask = 0; mask < 512; ++mask) {
    Row r;
    for (unsigned e = 0; e < 9; ++e)
      if (mask & (1u << e)) r.push_back(e);
    if (r.size() <= 4) rows.push_back(r);
  }
  std::set<LSymbol> classes;
  for (auto& s : rows)
    for (auto& t : rows) {
      LSymbol sym(s, t);
      if (sym.defect() % 2 == 1 && sym.rank() <= 3) classes.insert(sym);
    }
  std::vector<std::uint64_t> counts(4, 0);
  for (auto& sym : classes) ++counts[sym.rank()];
  auto all = phi_all(3);
  for (unsigned n = 0; n <= 3; ++n) CHECK(counts[n] == all[n]);
}

TEST_CASE("degenerate counts are partition numbers") {
  CHECK(count_degenerate(0) == 1);
  CHECK(count_degenerate(4) == 2);
  CHECK(count_degenerate(8) == 5);
  for (unsigned m = 0; m <= 10; ++m) {
    // p(m) via the series builder as reference
    auto part = sympcount::series::build_partition(10);
    CHECK(BigInt(count_degenerate(2 * m)) == part.coeff(m).eval(0));
  }
  CHECK_THROWS_AS(count_degenerate(3), std::invalid_argument);
}

TEST_CASE("phi series identity") {
  CHECK(verify_phi_series(10).ok);
  auto rep = verify_phi_series(40);
  CHECK(rep.ok);
  CHECK(rep.mismatches.empty());

  // the series side alone, spot values
  auto part = sympcount::series::build_partition(2);
  auto prod = part * part * sympcount::series::build_theta(2);
  CHECK(prod.coeff(1) == sympcount::series::UPoly(2));
  CHECK(prod.coeff(2) == sympcount::series::UPoly(6));
}

TEST_CASE("budget refusal") {
  CHECK_THROWS_AS(phi_all(40, 100), BudgetExceeded);
  CHECK_THROWS_AS(phi_all(1000), BudgetExceeded);
  try {
    phi_all(40, 100);
  } catch (const BudgetExceeded& e) {
    CHECK(e.budget() == 100);
    CHECK(e.needed() > 100);
  }
}

TEST_CASE("dprime convolution matches the closed form") {
  using sympcount::series::UPoly;
  CHECK(dprime_convolution(0) == UPoly(1));
  CHECK(dprime_convolution(1) == UPoly::u());
  auto gend = sympcount::series::build_gend(12);
  for (unsigned n = 0; n <= 12; ++n) CHECK(dprime_convolution(n) == gend.coeff(n));
}
