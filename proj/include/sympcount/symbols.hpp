// Two-row symbols up to shift and row-swap equivalence: rank/defect
// statistics, exhaustive class counts (odd defect, degenerate), and the
// convolution route to the d' coefficients.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sympcount/budget.hpp"
#include "sympcount/series.hpp"

namespace sympcount::symbols {

using Row = std::vector<unsigned>;  // strictly increasing, entries >= 0

// rank = sum of all entries - floor((|S|+|T|-1)^2 / 4); defect = ||S|-|T||.
// Both are invariant under the shift (S,T) -> ({0} u S+1, {0} u T+1) and
// under swapping the rows.
unsigned rank_of(const Row& s, const Row& t);
unsigned defect_of(const Row& s, const Row& t);
std::pair<Row, Row> shift(const Row& s, const Row& t);

// A symbol class, stored reduced (no leading 0 in both rows) with the
// lexicographically smaller row on top.
class LSymbol {
 public:
  LSymbol(Row s, Row t);  // validates and normalizes; throws on malformed rows

  const Row& top() const { return top_; }
  const Row& bottom() const { return bottom_; }
  unsigned rank() const;
  unsigned defect() const;
  bool degenerate() const { return top_ == bottom_; }

  bool operator==(const LSymbol& o) const { return top_ == o.top_ && bottom_ == o.bottom_; }
  bool operator!=(const LSymbol& o) const { return !(*this == o); }
  bool operator<(const LSymbol& o) const;

 private:
  Row top_, bottom_;
};

// Number of symbol classes of the given rank with odd defect, by exhaustive
// generation of reduced rows.  phi_all returns all values 0..max_rank from a
// single row sweep; phi is the single-value front end.
std::vector<std::uint64_t> phi_all(unsigned max_rank, std::uint64_t budget = default_budget());
std::uint64_t phi(unsigned rank, std::uint64_t budget = default_budget());

// Number of degenerate classes (equal rows) of the given even rank, by
// exhaustive generation; the result is checked against the partition count
// p(rank/2) before returning.  Odd rank throws.
std::uint64_t count_degenerate(unsigned rank, std::uint64_t budget = default_budget());

// Compares exhaustive phi(n) for n <= max_rank with the t^n coefficients of
// partition(t)^2 * theta(t).
series::SeriesReport verify_phi_series(unsigned max_rank,
                                       std::uint64_t budget = default_budget());

// The convolution route to d'_n:
//   sum_n a_n t^{2n+1} = f0(t^2,u) * Phi(t)
//   sum_n b_n t^{2n+1} = f0(t^2,u) * Phi(t) * sum_{m>0} 2 p(m) t^{4m}
// with Phi(t) = sum_m phi_m t^{2m+1}; returns a_n + b_n/2 (halving must be
// exact, else std::logic_error).
series::UPoly dprime_convolution(unsigned n, std::uint64_t budget = default_budget());

}  // namespace sympcount::symbols
