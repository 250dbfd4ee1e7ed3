// Dense matrices over small finite fields, generators and closure for the
// finite symplectic groups in their natural representation, and the
// brute-force extraction of class parameters from explicit matrices.  This is
// the independent oracle the combinatorial side is checked against.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sympcount/bigint.hpp"
#include "sympcount/budget.hpp"
#include "sympcount/classparams.hpp"
#include "sympcount/gf.hpp"

namespace sympcount::matgrp {

class Mat {
 public:
  Mat(gf::Field f, unsigned dim);  // zero matrix
  Mat(gf::Field f, unsigned dim, std::vector<std::uint32_t> entries);  // row-major
  static Mat identity(const gf::Field& f, unsigned dim);
  static Mat scalar(const gf::Field& f, unsigned dim, std::uint32_t c);

  const gf::Field& field() const { return field_; }
  unsigned dim() const { return dim_; }
  std::uint32_t at(unsigned r, unsigned c) const { return e_[r * dim_ + c]; }
  void set(unsigned r, unsigned c, std::uint32_t v) { e_[r * dim_ + c] = v; }
  const std::vector<std::uint32_t>& entries() const { return e_; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(std::uint32_t c) const;
  Mat transpose() const;
  Mat inverse() const;  // throws std::invalid_argument if singular
  Mat pow(unsigned e) const;

  bool operator==(const Mat& o) const { return e_ == o.e_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool operator<(const Mat& o) const { return e_ < o.e_; }  // entry order, fixed dim

  std::string to_string() const;  // "[1 0; 2 1]"

 private:
  gf::Field field_;
  unsigned dim_;
  std::vector<std::uint32_t> e_;
};

// The alternating Gram matrix used throughout: in n x n blocks
// [[0, -J], [J, 0]] with J the antidiagonal identity, so basis vector i pairs
// with basis vector dim-1-i.
Mat gram_form(const gf::Field& f, unsigned n);

// u^T * (Gram form) * v
std::uint32_t form_product(const gf::Field& f, const std::vector<std::uint32_t>& u,
                           const std::vector<std::uint32_t>& v);

bool is_symplectic(const Mat& m);
// multiplier of a matrix scaling the form by a constant; 0 if it is not
std::uint32_t conformal_multiplier(const Mat& m);
bool is_conformal(const Mat& m);

// root-subgroup elements x_alpha(c) for the simple roots, +-, with c running
// over a basis of the field over its prime field; these generate Sp_{2n}(q)
std::vector<Mat> sp_generators(unsigned n, const gf::Field& f);

// diag(u I_n, I_n) with u the smallest nonsquare: conformal with multiplier u
Mat diagonal_twist_element(unsigned n, const gf::Field& f);

// entrywise a -> a^q1; an automorphism of the matrix group when q1 is a
// subfield order
Mat entrywise_power(const Mat& m, std::uint32_t q1);

// q^{n^2} * prod_{i=1..n} (q^{2i} - 1)
BigInt sp_group_order(unsigned n, const BigInt& q);

// closure of the generators in deterministic discovery order, starting from
// the identity; refuses to grow past cap
std::vector<Mat> enumerate_group(const std::vector<Mat>& gens, std::uint64_t cap = 100000);

gf::FqPoly charpoly(const Mat& m);

// class parameters of a symplectic matrix: Jordan block multiplicities per
// irreducible factor of the characteristic polynomial, and the square class
// of the induced symmetric form at each even block size of eigenvalues +-1.
// Internal consistency (well-definedness of the square classes, block counts)
// is asserted via std::logic_error.
classparams::SpClassParam wall_params_of(const Mat& m);

// parameter -> number of group elements carrying it, over an explicit group
std::map<classparams::SpClassParam, std::uint64_t> oracle_class_census(
    const std::vector<Mat>& group);

// number of distinct parameters fixed by the automorphism, decided entirely
// on the matrix side: a representative is mapped through the entrywise power
// and (optionally) conjugation by the diagonal twist element, and its
// extracted parameters are compared
BigInt oracle_invariant_count(const std::vector<Mat>& group, const classparams::AutSpec& aut);

}  // namespace sympcount::matgrp
