// Finite fields of odd characteristic, dense univariate polynomials over them,
// and Frobenius orbits (monic irreducibles standing for the orbit of their
// roots under x -> x^q).  Elements are encoded as integers in [0, q): the
// base-p digits of the code are the coefficients of the residue polynomial,
// so code order coincides with the canonical element order.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sympcount/bigint.hpp"

namespace sympcount::gf {

class Field {
 public:
  // Canonical field F_{p^m}: the modulus is the first monic irreducible of
  // degree m over F_p in degree-then-lex order.
  Field(std::uint32_t p, std::uint32_t m = 1, bool allow_large = false);
  // Same field with a caller-supplied monic irreducible modulus over F_p
  // (coefficients 0..p-1, constant term first, length m+1, leading 1).
  Field(std::uint32_t p, const std::vector<std::uint32_t>& modulus, bool allow_large = false);

  std::uint32_t p() const;
  std::uint32_t m() const;
  std::uint32_t q() const;
  const std::vector<std::uint32_t>& modulus() const;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;                  // throws on 0
  std::uint32_t pow(std::uint32_t a, std::int64_t e) const;  // 0^neg throws
  std::uint32_t from_int(std::int64_t v) const;              // image of v in the prime field
  std::uint32_t one() const { return 1; }

  // Nonzero squares are exactly the elements of even discrete log.
  bool is_square(std::uint32_t a) const;  // throws on 0
  std::uint32_t generator() const;        // a fixed multiplicative generator
  std::uint32_t smallest_nonsquare() const;

  bool operator==(const Field& o) const;
  bool operator!=(const Field& o) const { return !(*this == o); }

  // q1 ranges over the orders of subfields: p^k for k | m.
  bool admits_subfield_order(std::uint32_t q1) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

class FqPoly {
 public:
  explicit FqPoly(Field f);  // zero polynomial
  FqPoly(Field f, std::vector<std::uint32_t> coeffs);  // constant term first

  static FqPoly zero(const Field& f) { return FqPoly(f); }
  static FqPoly constant(const Field& f, std::uint32_t c);
  static FqPoly x(const Field& f);
  static FqPoly x_minus(const Field& f, std::uint32_t c);

  const Field& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  bool is_monic() const;
  std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }
  std::uint32_t leading() const;

  FqPoly operator+(const FqPoly& o) const;
  FqPoly operator-(const FqPoly& o) const;
  FqPoly operator*(const FqPoly& o) const;
  FqPoly scaled(std::uint32_t c) const;
  bool operator==(const FqPoly& o) const;
  bool operator!=(const FqPoly& o) const { return !(*this == o); }

  std::pair<FqPoly, FqPoly> divmod(const FqPoly& d) const;
  FqPoly operator/(const FqPoly& d) const { return divmod(d).first; }
  FqPoly operator%(const FqPoly& d) const { return divmod(d).second; }
  FqPoly make_monic() const;
  FqPoly derivative() const;
  std::uint32_t eval(std::uint32_t x) const;

  // Degree-then-coefficient order (higher-degree coefficients compared first).
  static int cmp(const FqPoly& a, const FqPoly& b);
  bool operator<(const FqPoly& o) const { return cmp(*this, o) < 0; }

  std::string to_string() const;  // "x^2 + 2*x + 1"

 private:
  Field field_;
  std::vector<std::uint32_t> c_;
  void normalize();
};

FqPoly gcd(FqPoly a, FqPoly b);  // monic gcd
FqPoly pow_mod(const FqPoly& base, const BigInt& e, const FqPoly& mod);

struct PolyFactor {
  FqPoly factor;  // monic irreducible
  std::uint32_t multiplicity;
};

// Complete factorization into monic irreducibles, canonically ordered.
// Distinct-degree splitting is deterministic; equal-degree splitting uses a
// fixed-seed generator, so results are reproducible run to run.
std::vector<PolyFactor> factor_poly(const FqPoly& f);
bool is_irreducible(const FqPoly& f);

// All monic irreducibles of the given degree, ascending canonical order.
// Cost is ~q^degree scans; callers enforce budgets.
std::vector<FqPoly> monic_irreducibles(const Field& f, std::uint32_t degree);

// A Frobenius orbit on nonzero field elements of the algebraic closure,
// encoded by the minimal polynomial of any of its points.
class FrobOrbit {
 public:
  explicit FrobOrbit(FqPoly p);  // monic irreducible, != x
  static FrobOrbit of_unit(const Field& f, int unit);  // +1 -> x-1, -1 -> x+1

  const FqPoly& poly() const { return poly_; }
  const Field& field() const { return poly_.field(); }
  std::uint32_t size() const { return static_cast<std::uint32_t>(poly_.degree()); }

  bool is_unit_orbit(int unit) const;  // orbit of +1 / -1
  bool operator==(const FrobOrbit& o) const { return poly_ == o.poly_; }
  bool operator!=(const FrobOrbit& o) const { return !(*this == o); }
  bool operator<(const FrobOrbit& o) const { return poly_ < o.poly_; }

 private:
  FrobOrbit(FqPoly p, bool trusted);
  FqPoly poly_;
  friend FrobOrbit orbit_inverse(const FrobOrbit&);
  friend FrobOrbit orbit_frobenius_power(const FrobOrbit&, std::uint32_t);
};

// Orbit of the inverses: the normalized reciprocal polynomial.
FrobOrbit orbit_inverse(const FrobOrbit& o);

// Orbit of the q1-th powers of the roots, q1 a subfield order of q.  Same
// degree as the input; the identity map when q1 = q.
FrobOrbit orbit_frobenius_power(const FrobOrbit& o, std::uint32_t q1);

}  // namespace sympcount::gf
