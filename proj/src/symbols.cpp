#include "sympcount/symbols.hpp"

#include <algorithm>
#include <stdexcept>

namespace sympcount::symbols {

namespace {

void check_row(const Row& r) {
  for (std::size_t i = 0; i + 1 < r.size(); ++i)
    if (r[i] >= r[i + 1]) throw std::invalid_argument("row must be strictly increasing");
}

unsigned row_sum(const Row& r) {
  unsigned s = 0;
  for (auto e : r) s += e;
  return s;
}

std::vector<std::uint64_t> partition_numbers(unsigned max) {
  std::vector<std::uint64_t> p(max + 1, 0);
  p[0] = 1;
  for (unsigned part = 1; part <= max; ++part)
    for (unsigned s = part; s <= max; ++s) p[s] += p[s - part];
  return p;
}

}  // namespace

unsigned rank_of(const Row& s, const Row& t) {
  unsigned k = static_cast<unsigned>(s.size() + t.size());
  unsigned off = k == 0 ? 0 : (k - 1) * (k - 1) / 4;
  return row_sum(s) + row_sum(t) - off;
}

unsigned defect_of(const Row& s, const Row& t) {
  auto a = s.size(), b = t.size();
  return static_cast<unsigned>(a > b ? a - b : b - a);
}

std::pair<Row, Row> shift(const Row& s, const Row& t) {
  auto lift = [](const Row& r) {
    Row out{0};
    for (auto e : r) out.push_back(e + 1);
    return out;
  };
  return {lift(s), lift(t)};
}

LSymbol::LSymbol(Row s, Row t) : top_(std::move(s)), bottom_(std::move(t)) {
  check_row(top_);
  check_row(bottom_);
  while (!top_.empty() && !bottom_.empty() && top_[0] == 0 && bottom_[0] == 0) {
    auto drop = [](Row& r) {
      r.erase(r.begin());
      for (auto& e : r) --e;
    };
    drop(top_);
    drop(bottom_);
  }
  if (bottom_ < top_) std::swap(top_, bottom_);
}

unsigned LSymbol::rank() const { return rank_of(top_, bottom_); }
unsigned LSymbol::defect() const { return defect_of(top_, bottom_); }

bool LSymbol::operator<(const LSymbol& o) const {
  if (top_ != o.top_) return top_ < o.top_;
  return bottom_ < o.bottom_;
}

// ---------------------------------------------------------------------------
// Exhaustive row sweep.
//
// A strictly increasing row (e_1 < ... < e_k) corresponds to the nondecreasing
// excess sequence lambda_i = e_i - (i-1) >= 0; the row sum splits as the
// staircase k(k-1)/2 plus the excess sum.  Rank bookkeeping reduces to excess
// sums: for row sizes (a, b), rank = floor(((a-b)^2 - 1)/4) + excess_S +
// excess_T, and the pair is reduced unless both rows start with 0, i.e.
// unless both excess sequences start with 0.

namespace {

struct RowTally {
  // counts[k][e] = rows of size k and excess sum e; starts0 likewise but only
  // rows whose first entry is 0
  std::vector<std::vector<std::uint64_t>> counts, starts0;
};

// Generates every nondecreasing excess sequence of each length <= max_len
// with sum <= max_excess, one row object at a time.
RowTally sweep_rows(unsigned max_len, unsigned max_excess) {
  RowTally t;
  t.counts.assign(max_len + 1, std::vector<std::uint64_t>(max_excess + 1, 0));
  t.starts0 = t.counts;
  t.counts[0][0] = 1;  // the empty row; it does not start with 0
  for (unsigned k = 1; k <= max_len; ++k) {
    auto rec = [&](auto&& self, unsigned pos, unsigned prev, unsigned sum, bool z) -> void {
      if (pos == k) {
        ++t.counts[k][sum];
        if (z) ++t.starts0[k][sum];
        return;
      }
      for (unsigned v = prev; sum + v * (k - pos) <= max_excess; ++v)
        self(self, pos + 1, v, sum + v, pos == 0 ? v == 0 : z);
      // entries below prev would break monotonicity; larger ones bust the sum
    };
    rec(rec, 0, 0, 0, false);
  }
  return t;
}

std::uint64_t sweep_cost_estimate(unsigned max_len, unsigned max_excess) {
  auto p = partition_numbers(max_excess);
  std::uint64_t per_len = 0;
  for (auto v : p) per_len += v;  // rows of one length <= sum of p(e)
  return per_len * (max_len + 1);
}

}  // namespace

std::vector<std::uint64_t> phi_all(unsigned max_rank, std::uint64_t budget) {
  // partition numbers overflow 64 bits near 400; anything this size is far
  // beyond any sane budget, so refuse before estimating
  if (max_rank > 300)
    throw BudgetExceeded("symbol row sweep", UINT64_MAX, budget);
  unsigned max_len = max_rank + 1;
  std::uint64_t est = sweep_cost_estimate(max_len, max_rank);
  if (est > budget) throw BudgetExceeded("symbol row sweep", est, budget);
  RowTally tally = sweep_rows(max_len, max_rank);

  std::vector<std::uint64_t> phi(max_rank + 1, 0);
  for (unsigned d = 1;; d += 2) {
    unsigned base = (d * d - 1) / 4;
    if (base > max_rank) break;
    for (unsigned b = 0; base + b <= max_rank; ++b) {
      unsigned a = b + d;
      if (a > max_len) break;
      for (unsigned es = 0; base + es <= max_rank; ++es) {
        for (unsigned et = 0; base + es + et <= max_rank; ++et) {
          std::uint64_t pairs = tally.counts[a][es] * tally.counts[b][et] -
                                tally.starts0[a][es] * tally.starts0[b][et];
          phi[base + es + et] += pairs;
        }
      }
    }
  }
  return phi;
}

std::uint64_t phi(unsigned rank, std::uint64_t budget) { return phi_all(rank, budget)[rank]; }

std::uint64_t count_degenerate(unsigned rank, std::uint64_t budget) {
  if (rank % 2 != 0) throw std::invalid_argument("degenerate symbols have even rank");
  unsigned m = rank / 2;
  if (m > 300) throw BudgetExceeded("degenerate symbol generation", UINT64_MAX, budget);
  auto p = partition_numbers(m);
  if (p[m] > budget) throw BudgetExceeded("degenerate symbol generation", p[m], budget);

  // reduced degenerate symbols (S,S) of rank 2m: strictly increasing rows
  // with first entry >= 1 and excess sum m, any length
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, unsigned pos, unsigned len, unsigned prev, unsigned sum) -> void {
    if (pos == len) {
      if (sum == m) ++count;
      return;
    }
    for (unsigned v = std::max(prev, 1u); sum + v * (len - pos) <= m; ++v)
      self(self, pos + 1, len, v, sum + v);
  };
  if (m == 0) {
    count = 1;  // the empty symbol
  } else {
    for (unsigned len = 1; len * 1 <= m; ++len) rec(rec, 0, len, 1, 0);
  }
  if (count != p[m]) throw std::logic_error("degenerate count disagrees with partition number");
  return count;
}

series::SeriesReport verify_phi_series(unsigned max_rank, std::uint64_t budget) {
  auto counts = phi_all(max_rank, budget);
  std::vector<series::UPoly> exhaustive(max_rank + 1);
  for (unsigned n = 0; n <= max_rank; ++n)
    exhaustive[n] = series::UPoly(BigInt(counts[n]));
  series::TSeries lhs(max_rank, std::move(exhaustive));
  series::TSeries part = series::build_partition(max_rank);
  return series::compare(lhs, part * part * series::build_theta(max_rank));
}

series::UPoly dprime_convolution(unsigned n, std::uint64_t budget) {
  unsigned ord = 2 * n + 1;
  auto phis = phi_all(n, budget);

  // f0(t^2, u): the f0 coefficients spread onto even exponents
  series::TSeries f0 = series::build_f0(n);
  std::vector<series::UPoly> spread(ord + 1);
  for (unsigned i = 0; i <= n; ++i) spread[2 * i] = f0.coeff(i);
  series::TSeries f0sq(ord, std::move(spread));

  std::vector<series::UPoly> phi_odd(ord + 1);
  for (unsigned m = 0; 2 * m + 1 <= ord; ++m)
    phi_odd[2 * m + 1] = series::UPoly(BigInt(phis[m]));
  series::TSeries Phi(ord, std::move(phi_odd));

  series::TSeries part = series::build_partition(n);
  std::vector<series::UPoly> twop(ord + 1);
  for (unsigned m = 1; 4 * m <= ord; ++m)
    twop[4 * m] = part.coeff(m) + part.coeff(m);
  series::TSeries D(ord, std::move(twop));

  series::TSeries A = f0sq * Phi;
  series::TSeries B = A * D;
  return A.coeff(ord) + B.coeff(ord).halved();
}

}  // namespace sympcount::symbols
