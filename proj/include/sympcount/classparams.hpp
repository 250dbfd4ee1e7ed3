// Conjugacy-class parameters for finite symplectic groups: Jordan
// multiplicities per eigenvalue orbit plus Witt square classes at even Jordan
// parts of the eigenvalues +-1, with validation, automorphism actions, exact
// enumeration and invariant-class counting.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sympcount/bigint.hpp"
#include "sympcount/budget.hpp"
#include "sympcount/gf.hpp"

namespace sympcount::classparams {

enum class WittClass { Neutral, Square, NonSquare };

// The automorphism pair: entrywise q1-power map, optionally composed with the
// order-2 diagonal automorphism (conjugation by a conformal element with
// nonsquare multiplier).
struct AutSpec {
  std::uint32_t q1;
  bool diagonal;
};

// One class parameter for Sp_{2n}(q):
//   mult: (orbit P != x-1, x+1, or the orbits x-1/x+1 themselves; part j >= 1)
//         -> multiplicity of the size-j Jordan block family;
//   psi_plus / psi_minus: part j -> Witt class of the induced symmetric form
//         at the even part 2j of eigenvalue +1 / -1.
// The container is a plain value: validity is checked by validate(), so
// deliberately broken parameters can be built for negative tests.  Zero
// multiplicities and Neutral Witt entries are dropped on construction, which
// makes equality of the stored maps the class equality.
class SpClassParam {
 public:
  using MultMap = std::map<std::pair<gf::FrobOrbit, unsigned>, unsigned>;
  using PsiMap = std::map<unsigned, WittClass>;

  SpClassParam(unsigned n, gf::Field field, MultMap mult, PsiMap psi_plus, PsiMap psi_minus);

  unsigned n() const { return n_; }
  const gf::Field& field() const { return field_; }
  unsigned mult(const gf::FrobOrbit& p, unsigned j) const;  // 0 if absent
  unsigned mult_unit(int eps, unsigned j) const;            // eps = +1 / -1
  const MultMap& mult_entries() const { return mult_; }
  WittClass psi(int eps, unsigned j) const;                 // Neutral if absent
  const PsiMap& psi_entries(int eps) const;

  bool operator==(const SpClassParam& o) const;
  bool operator!=(const SpClassParam& o) const { return !(*this == o); }
  bool operator<(const SpClassParam& o) const;

  // Canonical compact JSON text: orbits as coefficient arrays, maps as sorted
  // pair lists.  Equal parameters give byte-equal strings.
  std::string to_canonical_string() const;

 private:
  unsigned n_;
  gf::Field field_;
  MultMap mult_;
  PsiMap psi_plus_, psi_minus_;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// The defining constraints: inverse symmetry m(P^{-1},j) = m(P,j); even
// multiplicity at odd parts of eigenvalues +-1; total 2n; Witt entries
// present exactly at the even parts of +-1 with positive multiplicity.
ValidationReport validate(const SpClassParam& p);

// Every valid parameter for Sp_{2n}(q), in canonical ascending order.
std::vector<SpClassParam> enumerate_params(unsigned n, const gf::Field& field,
                                           std::uint64_t budget = default_budget());

// m relabeled along the q1-power map on orbits; Witt data unchanged.
SpClassParam apply_field_aut(const SpClassParam& p, std::uint32_t q1);

// Witt entry at part j of eigenvalue eps flipped exactly when m(eps,2j) is
// odd; everything else unchanged.
SpClassParam apply_diagonal(const SpClassParam& p);

bool is_invariant(const SpClassParam& p, const AutSpec& aut);

// Number of valid parameters at (n, q) fixed by the automorphism, computed by
// orbit counting: Frobenius-orbit classes are grouped by the subgroup of
// <q1-power map, inversion> stabilizing them (via fixed-point counts and
// lattice Moebius inversion), and the +-1 eigenvalue data is summed over
// explicitly enumerated multiplicity patterns.  No class list is built, so
// this scales past enumerate_params.
BigInt count_invariant(unsigned n, const gf::Field& field, const AutSpec& aut,
                       std::uint64_t budget = default_budget());

}  // namespace sympcount::classparams
