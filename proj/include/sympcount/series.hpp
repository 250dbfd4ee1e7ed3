// Truncated formal power series in t whose coefficients are exact integer
// polynomials in a second indeterminate u, plus the named generating-function
// builders and identity checks used by the class-counting machinery.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sympcount/bigint.hpp"

namespace sympcount::series {

// Polynomial in u over arbitrary-precision integers, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;                       // zero
  UPoly(long long c);                      // constant (implicit for literals)
  explicit UPoly(BigInt c);                // constant
  explicit UPoly(std::vector<BigInt> coeffs);
  static UPoly u();                        // the indeterminate

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const BigInt& coeff(std::size_t i) const;
  const std::vector<BigInt>& coeffs() const { return c_; }

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly& operator+=(const UPoly& o);
  bool operator==(const UPoly& o) const { return c_ == o.c_; }
  bool operator!=(const UPoly& o) const { return !(*this == o); }

  UPoly halved() const;  // exact division by 2; throws std::logic_error if odd
  BigInt eval(const BigInt& u_value) const;
  std::string to_string() const;  // "u^2 + u + 2", "-u + 3", "0"

 private:
  std::vector<BigInt> c_;
  void normalize();
};

// Series sum_{k=0}^{N} c_k t^k; every operation truncates at the common order.
class TSeries {
 public:
  explicit TSeries(unsigned order);  // zero series
  TSeries(unsigned order, std::vector<UPoly> coeffs);  // padded / truncated

  static TSeries one(unsigned order);
  static TSeries monomial(unsigned order, unsigned k, UPoly c);

  unsigned order() const { return order_; }
  const UPoly& coeff(unsigned k) const;

  TSeries operator+(const TSeries& o) const;
  TSeries operator-(const TSeries& o) const;
  TSeries operator*(const TSeries& o) const;  // Cauchy product through N
  TSeries inverse_unit() const;               // needs constant coefficient 1
  bool operator==(const TSeries& o) const { return order_ == o.order_ && c_ == o.c_; }
  bool operator!=(const TSeries& o) const { return !(*this == o); }

 private:
  unsigned order_;
  std::vector<UPoly> c_;  // size order_+1
  void check_order(const TSeries& o) const;
};

// Named builders.  Throughout, u stands for the subfield size parameter.
//
//   genfun_c = prod_{i>=1} (1+t^{2i})^2 / (1-u t^i)
//   f0       = prod_{i>=1} (1-t^i)^2   / (1-u t^i)
//   fplus    = prod_{i>=1} (1+t^{2i})  / (1-t^i)
//   theta    = sum_{j>=0} t^{j^2+j}
//   partition: sum_m p(m) t^m = prod_{m>0} (1-t^m)^{-1}
//   gend     = theta * prod_{i>=1} 1/((1-u t^i)(1-t^{2i}))
TSeries build_genfun_c(unsigned order);
TSeries build_f0(unsigned order);
TSeries build_fplus(unsigned order);
TSeries build_theta(unsigned order);
TSeries build_partition(unsigned order);
TSeries build_gend(unsigned order);

// fplus again, but summed from its definition: the t^n coefficient is
// sum over partitions of n of 2^{#(distinct even parts)}, by explicit
// enumeration of all partitions.  Oracle for build_fplus.
TSeries build_fplus_by_partitions(unsigned order);

struct SeriesMismatch {
  unsigned index;
  UPoly lhs, rhs;
};
struct SeriesReport {
  bool ok = true;
  std::vector<SeriesMismatch> mismatches;
};

SeriesReport compare(const TSeries& a, const TSeries& b);

// theta = prod (1-t^{2i}) * prod (1+t^{2i})^2, the triple-product special case.
SeriesReport verify_jacobi(unsigned order);
// genfun_c = gend coefficient-by-coefficient as polynomials in u.
SeriesReport verify_main_identity(unsigned order);

}  // namespace sympcount::series
