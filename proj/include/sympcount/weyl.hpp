#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sympcount/bigint.hpp"
#include "sympcount/budget.hpp"

namespace sympcount::weyl {

// Signed permutation of {±1,..,±l} with s(-i) = -s(i), stored as the images of 1..l.
class SignedPerm {
 public:
  explicit SignedPerm(std::vector<int> images);
  static SignedPerm identity(unsigned l);

  unsigned rank() const { return static_cast<unsigned>(img_.size()); }
  int image(int i) const;  // i in ±1..±l
  const std::vector<int>& images() const { return img_; }

  SignedPerm compose(const SignedPerm& o) const;  // (*this)(o(x))
  SignedPerm inverse() const;
  unsigned order() const;

  bool operator==(const SignedPerm& o) const { return img_ == o.img_; }
  bool operator!=(const SignedPerm& o) const { return img_ != o.img_; }
  bool operator<(const SignedPerm& o) const { return img_ < o.img_; }

  std::string to_string() const;  // e.g. "[2 -1]"

 private:
  std::vector<int> img_;
};

// 2l x 2l integer matrix with one entry +-1 per row and column, preserving the
// standard alternating form (the same Gram convention as the finite-field side:
// <e_i, e_{2l-1-i}> = -1 for i < l). Exact integer arithmetic throughout.
class MonomialMat {
 public:
  MonomialMat(unsigned l, const std::vector<int>& entries);  // dense row-major, 2l x 2l
  static MonomialMat identity(unsigned l);

  unsigned rank() const { return static_cast<unsigned>(code_.size() / 2); }
  unsigned dim() const { return static_cast<unsigned>(code_.size()); }
  int at(unsigned r, unsigned c) const;

  MonomialMat operator*(const MonomialMat& o) const;
  MonomialMat inverse() const;
  MonomialMat pow(unsigned k) const;
  bool is_diagonal() const;
  unsigned order() const;

  bool operator==(const MonomialMat& o) const { return code_ == o.code_; }
  bool operator!=(const MonomialMat& o) const { return code_ != o.code_; }
  bool operator<(const MonomialMat& o) const { return code_ < o.code_; }

  std::string to_string() const;

 private:
  struct FromCode {};
  MonomialMat(FromCode, std::vector<int> code);
  void check_form() const;

  // code_[c] = s*(r+1) when column c has entry s at row r
  std::vector<int> code_;

  friend SignedPerm perm_image(const MonomialMat&);
};

// The projection that forgets entry signs and keeps the action on the 2l weight lines.
SignedPerm perm_image(const MonomialMat& m);

// Root of type C_l: sgn(c1)*e_{|c1|} + sgn(c2)*e_{|c2|}; c1 == c2 encodes +-2e_i.
struct Root {
  int c1, c2;
  Root(int a, int b);  // normalizes, rejects non-roots
  bool is_long() const { return c1 == c2; }
  bool operator==(const Root& o) const { return c1 == o.c1 && c2 == o.c2; }
};

std::vector<Root> all_roots(unsigned l);
Root reflect_root(const Root& beta, const Root& alpha);  // s_beta(alpha)

// Chevalley generators in the natural representation; t must be +1 or -1.
MonomialMat chevalley_n(unsigned l, const Root& r, int t);
MonomialMat chevalley_h(unsigned l, const Root& r, int t);  // torus element, diagonal

// Twisting data: d0 = d for odd d and d/2 for even d; eps = +1 for odd d, -1 for
// even d (the sign that makes |T^{vF}| = (q^{d0} - eps)^a come out right); in the
// regular case l' = l and a = l/d0, otherwise l' is the largest multiple of d0
// that is <= l and a = l'/d0.
struct TwistSpec {
  unsigned l, d;
  bool regular;
  unsigned d0, a, lprime;
  int eps;
  TwistSpec(unsigned l, unsigned d, bool regular);
};

// Product of the simple-root n's; checked to represent the (2l)-cycle
// 1 -> 2 -> .. -> l -> -1 -> -2 -> .. on the weight lines.
MonomialMat coxeter_v0(unsigned l);

// Regular case: v0^{2l/d}. Non-regular: (v_1 .. v_{l'-1} n_{2e_{l'}}(-1))^a.
MonomialMat sylow_twist(const TwistSpec& spec);

std::vector<SignedPerm> enumerate_signed_perms(unsigned l,
                                               std::uint64_t budget = default_budget());

// Closure of the n_alpha(-1); |result| = 4^l l!.
std::vector<MonomialMat> enumerate_extended_weyl(unsigned l,
                                                 std::uint64_t budget = default_budget());

struct CentralizerReport {
  std::uint64_t order = 0;
  std::vector<SignedPerm> elements;  // sorted
  // Filled when every orbit of w on {1..l} has one common length d0 (then a = l/d0):
  bool wreath_shape = false;       // order == (2 d0)^a * a!
  unsigned d0 = 0, a = 0;
  std::vector<SignedPerm> base_generators;  // a cycles of order 2 d0
  std::vector<SignedPerm> swap_generators;  // a-1 block swaps
  bool generators_generate = false;         // closure of the above == elements
};

CentralizerReport centralizer_in_W(const SignedPerm& w,
                                   std::uint64_t budget = default_budget());

struct ExtendedWeylReport {
  unsigned l = 0, d = 0, d0 = 0, a = 0;
  std::uint64_t v_order = 0, h_order = 0, vd_order = 0, hd_order = 0;
  bool image_matches_centralizer = false;  // rho(V_d) == C_W(rho(v)) as sets
  bool hd_elementary_abelian = false;      // |H_d| = 2^a with the h_k as a basis
  bool pk_squares_match = false;           // p_k^2 == h_k h_{k+1}
  bool braid_relations_hold = false;       // braid + distance-2 commutation for the p_k
  bool c1_found = false;                   // some c1 in V_d projects onto cbar1
  SignedPerm cbar1 = SignedPerm::identity(1);   // target signed permutation
  MonomialMat c1 = MonomialMat::identity(1);    // witness (identity when not found)
  std::vector<std::string> failures;       // human-readable description of any failed check
  bool all_ok() const {
    return image_matches_centralizer && hd_elementary_abelian && pk_squares_match &&
           braid_relations_hold && c1_found;
  }
};

// Runs the structural checks on V = <n_alpha(-1)> for a regular twist; check
// failures are reported, only budget overruns and invalid specs throw.
ExtendedWeylReport extended_weyl_checks(const TwistSpec& spec,
                                        std::uint64_t budget = default_budget());

// |det(q M_w - I)| on the rank-l lattice where w acts by signed permutation.
BigInt torus_fixed_order(const SignedPerm& w, std::uint64_t q);

struct StabilizerShape {
  std::uint64_t modulus = 0;      // q^{d0} - eps
  std::uint64_t galois_order = 0; // 2 d0
  // one entry per orbit that meets xi: (point stabilizer order in the Galois group,
  // number of xi-coordinates in the orbit); sorted
  std::vector<std::pair<std::uint64_t, unsigned>> blocks;
  BigInt predicted_order;    // prod |G_z|^{|I_z|} |I_z|!
  BigInt brute_force_order;  // stabilizer size inside C_{2d0} wr S_a
  bool match = false;
};

StabilizerShape stabilizer_shape(const TwistSpec& spec, std::uint64_t q,
                                 const std::vector<std::uint64_t>& xi,
                                 std::uint64_t budget = default_budget());

// Element (h_1..h_n)s of C_f wr S_n; perm stores images 0-indexed.
struct WreathElem {
  std::vector<std::uint64_t> base;
  std::vector<unsigned> perm;
};

WreathElem wreath_compose(std::uint64_t f, const WreathElem& x, const WreathElem& y);

// The order-2 linear character (h_1..h_n)s -> (prod h_i)^{f/2} of C_f wr S_n,
// reported as +1 or -1; requires 2 | f.
int wreath_mu(std::uint64_t f, const WreathElem& e);

}  // namespace sympcount::weyl
