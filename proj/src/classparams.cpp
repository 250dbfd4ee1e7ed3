#include "sympcount/classparams.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace sympcount::classparams {

namespace {

std::uint64_t saturate64(const BigInt& v) {
  static const BigInt kMax = BigInt(~0ULL);
  return v > kMax ? ~0ULL : static_cast<std::uint64_t>(v);
}

std::vector<unsigned> divisors_of(unsigned d) {
  std::vector<unsigned> out;
  for (unsigned e = 1; e <= d; ++e)
    if (d % e == 0) out.push_back(e);
  return out;
}

int moebius(unsigned m) {
  int r = 1;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return 0;
    r = -r;
  }
  if (m > 1) r = -r;
  return r;
}

std::vector<BigInt> partition_numbers(unsigned n) {
  std::vector<BigInt> p(n + 1);
  p[0] = 1;
  for (unsigned part = 1; part <= n; ++part)
    for (unsigned w = part; w <= n; ++w) p[w] += p[w - part];
  return p;
}

}  // namespace

SpClassParam::SpClassParam(unsigned n, gf::Field field, MultMap mult, PsiMap psi_plus,
                           PsiMap psi_minus)
    : n_(n),
      field_(std::move(field)),
      mult_(std::move(mult)),
      psi_plus_(std::move(psi_plus)),
      psi_minus_(std::move(psi_minus)) {
  // zero multiplicity and Neutral both mean "absent"; normalize so that map
  // equality is parameter equality
  for (auto it = mult_.begin(); it != mult_.end();)
    it = (it->second == 0) ? mult_.erase(it) : std::next(it);
  for (PsiMap* psi : {&psi_plus_, &psi_minus_})
    for (auto it = psi->begin(); it != psi->end();)
      it = (it->second == WittClass::Neutral) ? psi->erase(it) : std::next(it);
}

unsigned SpClassParam::mult(const gf::FrobOrbit& p, unsigned j) const {
  auto it = mult_.find({p, j});
  return it == mult_.end() ? 0 : it->second;
}

unsigned SpClassParam::mult_unit(int eps, unsigned j) const {
  return mult(gf::FrobOrbit::of_unit(field_, eps), j);
}

WittClass SpClassParam::psi(int eps, unsigned j) const {
  const PsiMap& m = psi_entries(eps);
  auto it = m.find(j);
  return it == m.end() ? WittClass::Neutral : it->second;
}

const SpClassParam::PsiMap& SpClassParam::psi_entries(int eps) const {
  if (eps == 1) return psi_plus_;
  if (eps == -1) return psi_minus_;
  throw std::invalid_argument("psi_entries: eigenvalue sign must be +1 or -1");
}

bool SpClassParam::operator==(const SpClassParam& o) const {
  return n_ == o.n_ && field_ == o.field_ && mult_ == o.mult_ && psi_plus_ == o.psi_plus_ &&
         psi_minus_ == o.psi_minus_;
}

bool SpClassParam::operator<(const SpClassParam& o) const {
  return to_canonical_string() < o.to_canonical_string();
}

std::string SpClassParam::to_canonical_string() const {
  std::ostringstream os;
  os << "{\"m\":[";
  bool first = true;
  for (const auto& [key, v] : mult_) {
    if (!first) os << ',';
    first = false;
    os << "[[";
    const auto& c = key.first.poly().coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << "]," << key.second << ',' << v << ']';
  }
  os << "],\"n\":" << n_;
  for (int eps : {1, -1}) {
    os << (eps == 1 ? ",\"psi+\":[" : ",\"psi-\":[");
    first = true;
    for (const auto& [j, w] : psi_entries(eps)) {
      if (!first) os << ',';
      first = false;
      os << '[' << j << ',' << (w == WittClass::Square ? "\"square\"" : "\"nonsquare\"") << ']';
    }
    os << ']';
  }
  os << ",\"q\":" << field_.q() << '}';
  return os.str();
}

ValidationReport validate(const SpClassParam& p) {
  ValidationReport r;
  auto fail = [&](std::string s) {
    r.ok = false;
    r.violations.push_back(std::move(s));
  };

  for (const auto& [key, v] : p.mult_entries()) {
    (void)v;
    if (key.first.field() != p.field()) {
      fail("orbit over a different field: " + key.first.poly().to_string());
      return r;  // cross-field lookups below would be meaningless
    }
  }

  BigInt total = 0;
  for (const auto& [key, v] : p.mult_entries()) {
    const auto& [orbit, j] = key;
    if (j == 0) fail("block size 0 at orbit " + orbit.poly().to_string());
    total += BigInt(j) * v * orbit.size();
    unsigned mirror = p.mult(gf::orbit_inverse(orbit), j);
    if (mirror != v)
      fail("multiplicity at " + orbit.poly().to_string() + ", size " + std::to_string(j) +
           " differs from its inverse orbit (" + std::to_string(v) + " vs " +
           std::to_string(mirror) + ")");
  }
  if (total != BigInt(2) * p.n())
    fail("total dimension " + total.str() + " != " + std::to_string(2 * p.n()));

  for (int eps : {1, -1}) {
    const char* name = (eps == 1) ? "+1" : "-1";
    for (const auto& [key, v] : p.mult_entries()) {
      if (!key.first.is_unit_orbit(eps)) continue;
      unsigned j = key.second;
      if (j % 2 == 1 && v % 2 == 1)
        fail(std::string("odd multiplicity ") + std::to_string(v) + " at odd block size " +
             std::to_string(j) + " of eigenvalue " + name);
      if (j >= 2 && j % 2 == 0 && p.psi(eps, j / 2) == WittClass::Neutral)
        fail(std::string("missing Witt class at even block size ") + std::to_string(j) +
             " of eigenvalue " + name);
    }
    for (const auto& [j, w] : p.psi_entries(eps)) {
      (void)w;
      if (j == 0) {
        fail(std::string("Witt entry at block size 0 of eigenvalue ") + name);
        continue;
      }
      if (p.mult_unit(eps, 2 * j) == 0)
        fail(std::string("Witt class without blocks at even block size ") +
             std::to_string(2 * j) + " of eigenvalue " + name);
    }
  }
  return r;
}

std::vector<SpClassParam> enumerate_params(unsigned n, const gf::Field& field,
                                           std::uint64_t budget) {
  const unsigned two_n = 2 * n;
  const BigInt q = field.q();

  BigInt scan = 0;
  for (unsigned d = 1; d <= two_n; ++d) scan += big_pow(q, d) * d * d;
  if (scan > budget)
    throw BudgetExceeded("enumerate_params: irreducible scan over F_" +
                             std::to_string(field.q()),
                         saturate64(scan), budget);

  // Non-unit eigenvalue orbits, grouped so the inverse symmetry is built in:
  // a self-inverse orbit is one slot of weight d, an inverse pair is one slot
  // of weight 2d carrying equal multiplicities on both members.
  struct Slot {
    gf::FrobOrbit orbit;
    gf::FrobOrbit partner;
    bool paired;
    unsigned weight;
  };
  std::vector<Slot> slots;
  for (unsigned d = 1; d <= two_n; ++d)
    for (const auto& poly : gf::monic_irreducibles(field, d)) {
      if (poly.coeff(0) == 0) continue;  // x: no invertible element has it
      gf::FrobOrbit orb(poly);
      if (orb.is_unit_orbit(1) || orb.is_unit_orbit(-1)) continue;
      gf::FrobOrbit inv = gf::orbit_inverse(orb);
      if (inv == orb)
        slots.push_back({orb, orb, false, d});
      else if (orb < inv && 2 * d <= two_n)
        slots.push_back({orb, inv, true, 2 * d});
    }

  std::vector<SpClassParam> out;
  SpClassParam::MultMap acc;
  std::uint64_t ops = 0;
  auto charge = [&](std::uint64_t c) {
    ops += c;
    if (ops > budget) throw BudgetExceeded("enumerate_params: class walk", ops, budget);
  };

  const gf::FrobOrbit unit_plus = gf::FrobOrbit::of_unit(field, 1);
  const gf::FrobOrbit unit_minus = gf::FrobOrbit::of_unit(field, -1);

  auto emit = [&](const std::map<unsigned, unsigned>& mp, const std::map<unsigned, unsigned>& mm) {
    SpClassParam::MultMap full = acc;
    for (const auto& [j, m] : mp) full[{unit_plus, j}] = m;
    for (const auto& [j, m] : mm) full[{unit_minus, j}] = m;
    std::vector<unsigned> evp, evm;  // Witt slots, keyed by half the block size
    for (const auto& [j, m] : mp) {
      (void)m;
      if (j % 2 == 0) evp.push_back(j / 2);
    }
    for (const auto& [j, m] : mm) {
      (void)m;
      if (j % 2 == 0) evm.push_back(j / 2);
    }
    const unsigned bits = static_cast<unsigned>(evp.size() + evm.size());
    for (std::uint64_t mask = 0; mask < (1ULL << bits); ++mask) {
      SpClassParam::PsiMap pp, pm;
      unsigned b = 0;
      for (unsigned j : evp)
        pp[j] = (mask >> b++ & 1) ? WittClass::NonSquare : WittClass::Square;
      for (unsigned j : evm)
        pm[j] = (mask >> b++ & 1) ? WittClass::NonSquare : WittClass::Square;
      out.emplace_back(n, field, full, std::move(pp), std::move(pm));
      charge(1);
    }
  };

  // multiplicity patterns at one unit eigenvalue: odd block sizes need even
  // multiplicity, which also forces every pattern weight to be even
  std::map<unsigned, unsigned> munit_p, munit_m;
  auto unit_rec = [&](auto&& self, std::map<unsigned, unsigned>& m, unsigned j, unsigned used,
                      unsigned cap, const std::function<void(unsigned)>& done) -> void {
    charge(1);
    if (j == 0) {
      done(used);
      return;
    }
    const unsigned step = (j % 2 == 1) ? 2 : 1;
    for (unsigned mult = 0; used + j * mult <= cap; mult += step) {
      if (mult > 0) m[j] = mult;
      self(self, m, j - 1, used + j * mult, cap, done);
    }
    m.erase(j);
  };

  std::function<void(std::size_t, unsigned)> slot_rec;
  auto slot_part_rec = [&](auto&& self, std::size_t i, unsigned j, unsigned rem) -> void {
    charge(1);
    if (j == 0) {
      slot_rec(i + 1, rem);
      return;
    }
    const Slot& s = slots[i];
    for (unsigned m = 0; s.weight * j * m <= rem; ++m) {
      if (m > 0) {
        acc[{s.orbit, j}] = m;
        if (s.paired) acc[{s.partner, j}] = m;
      }
      self(self, i, j - 1, rem - s.weight * j * m);
    }
    acc.erase({s.orbit, j});
    if (s.paired) acc.erase({s.partner, j});
  };
  slot_rec = [&](std::size_t i, unsigned rem) {
    charge(1);
    if (i == slots.size()) {
      // both unit eigenvalues, filling the weight budget exactly
      unit_rec(unit_rec, munit_p, rem, 0, rem, [&](unsigned wp) {
        unit_rec(unit_rec, munit_m, rem - wp, 0, rem - wp, [&](unsigned wm) {
          if (wm == rem - wp) emit(munit_p, munit_m);
        });
      });
      return;
    }
    slot_part_rec(slot_part_rec, i, rem / slots[i].weight, rem);
  };
  slot_rec(0, two_n);

  std::vector<std::pair<std::string, std::size_t>> keys(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) keys[i] = {out[i].to_canonical_string(), i};
  std::sort(keys.begin(), keys.end());
  std::vector<SpClassParam> sorted;
  sorted.reserve(out.size());
  for (const auto& [k, i] : keys) {
    (void)k;
    sorted.push_back(std::move(out[i]));
  }
  return sorted;
}

SpClassParam apply_field_aut(const SpClassParam& p, std::uint32_t q1) {
  if (q1 < 3 || !p.field().admits_subfield_order(q1))
    throw std::invalid_argument("apply_field_aut: " + std::to_string(q1) +
                                " is not a subfield order of F_" + std::to_string(p.field().q()));
  SpClassParam::MultMap mult;
  for (const auto& [key, v] : p.mult_entries())
    mult[{gf::orbit_frobenius_power(key.first, q1), key.second}] = v;
  return SpClassParam(p.n(), p.field(), std::move(mult), p.psi_entries(1), p.psi_entries(-1));
}

SpClassParam apply_diagonal(const SpClassParam& p) {
  SpClassParam::PsiMap pp = p.psi_entries(1), pm = p.psi_entries(-1);
  for (std::pair<int, SpClassParam::PsiMap*> e : {std::pair{1, &pp}, std::pair{-1, &pm}})
    for (auto& [j, w] : *e.second)
      if (p.mult_unit(e.first, 2 * j) % 2 == 1)
        w = (w == WittClass::Square) ? WittClass::NonSquare : WittClass::Square;
  return SpClassParam(p.n(), p.field(), p.mult_entries(), std::move(pp), std::move(pm));
}

bool is_invariant(const SpClassParam& p, const AutSpec& aut) {
  SpClassParam img = apply_field_aut(p, aut.q1);
  if (aut.diagonal) img = apply_diagonal(img);
  return img == p;
}

namespace {

// --- invariant counting ---------------------------------------------------
//
// A parameter is fixed by the automorphism iff its multiplicity function is
// constant on the orbit classes of the group generated by the q1-power map
// and orbit inversion, and (when the diagonal twist is present) every even
// block size at +-1 has even multiplicity.  So the count factors: one
// generating series per unit eigenvalue, and one partition series per orbit
// class, whose step is half the total degree of the class.  Orbit classes are
// never listed; only their number per (degree, class size) is needed, and
// that follows from fixed-point counts via Moebius inversion on the subgroup
// lattice of the acting group Z_k x Z_2.

using Elem = std::pair<unsigned, unsigned>;  // (power-map exponent mod k, inversion bit)

struct Subgroup {
  std::vector<Elem> elems;  // sorted
  std::vector<Elem> gens;   // at most 2
  unsigned index;           // [Z_k x Z_2 : this]
};

std::vector<Subgroup> subgroup_lattice(unsigned k) {
  std::vector<Elem> all;
  for (unsigned i = 0; i < k; ++i)
    for (unsigned e = 0; e < 2; ++e) all.push_back({i, e});
  auto closure = [&](std::vector<Elem> gens) {
    std::set<Elem> s{{0, 0}};
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Elem> cur(s.begin(), s.end());
      for (const Elem& a : cur)
        for (const Elem& g : gens) {
          Elem x{(a.first + g.first) % k, (a.second + g.second) % 2};
          if (s.insert(x).second) grew = true;
        }
    }
    return std::vector<Elem>(s.begin(), s.end());
  };

  std::set<std::vector<Elem>> seen;
  for (const Elem& a : all) seen.insert(closure({a}));
  for (const Elem& a : all)
    for (const Elem& b : all) seen.insert(closure({a, b}));

  std::vector<Subgroup> subs;
  for (const auto& elems : seen) {
    Subgroup s;
    s.elems = elems;
    s.index = 2 * k / static_cast<unsigned>(elems.size());
    for (const Elem& a : elems)
      if (closure({a}) == elems) {
        s.gens = {a};
        break;
      }
    if (s.gens.empty())
      for (const Elem& a : elems) {
        for (const Elem& b : elems)
          if (closure({a, b}) == elems) {
            s.gens = {a, b};
            break;
          }
        if (!s.gens.empty()) break;
      }
    if (s.gens.empty()) throw std::logic_error("subgroup without 2 generators in Z_k x Z_2");
    subs.push_back(std::move(s));
  }
  std::sort(subs.begin(), subs.end(),
            [](const Subgroup& a, const Subgroup& b) { return a.elems.size() < b.elems.size(); });
  return subs;
}

bool contains(const Subgroup& big, const Subgroup& small) {
  return std::includes(big.elems.begin(), big.elems.end(), small.elems.begin(),
                       small.elems.end());
}

// number of elements of the closure with x^g = 1 (every element when g = 0)
// whose degree over F_q is exactly d
BigInt exact_degree_count(unsigned d, const BigInt& g, const BigInt& q) {
  BigInt total = 0;
  for (unsigned e : divisors_of(d)) {
    int mu = moebius(d / e);
    if (mu == 0) continue;
    BigInt sub = big_pow(q, e) - 1;  // order of F_{q^e}^*, never divisible by char
    BigInt cnt = (g == 0) ? sub : big_gcd(g, sub);
    total += mu * cnt;
  }
  return total;
}

// number of non-unit degree-d eigenvalue orbits fixed by every element of the
// subgroup; an element (i, e) sends the orbit of x to the orbit of x^t with
// t = (-1)^e * q1^i
BigInt fixed_orbit_count(unsigned d, const Subgroup& sub, const BigInt& q, const BigInt& q1) {
  std::vector<BigInt> tpow(sub.gens.size());
  for (std::size_t r = 0; r < sub.gens.size(); ++r) {
    tpow[r] = big_pow(q1, sub.gens[r].first);
    if (sub.gens[r].second == 1) tpow[r] = -tpow[r];
  }
  // a degree-d element x satisfies x^t in {x^{q^j}} for exactly one j per
  // generator, so the tuples below split the fixed set disjointly
  BigInt total = 0;
  std::vector<unsigned> js(sub.gens.size(), 0);
  while (true) {
    BigInt g = 0;
    for (std::size_t r = 0; r < js.size(); ++r)
      g = big_gcd(g, abs(tpow[r] - big_pow(q, js[r])));
    total += exact_degree_count(d, g, q);
    std::size_t r = 0;
    while (r < js.size() && ++js[r] == d) js[r++] = 0;
    if (r == js.size()) break;
  }
  if (total % d != 0) throw std::logic_error("orbit fixed-point count not divisible by degree");
  total /= d;
  if (d == 1) total -= 2;  // the orbits of +1 and -1 are fixed by everything
  return total;
}

using Ser = std::vector<BigInt>;  // truncated power series, coefficients 0..n

Ser ser_mul(const Ser& a, const Ser& b) {
  Ser out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Ser ser_pow(Ser base, BigInt e, std::size_t len) {
  Ser r(len);
  r[0] = 1;
  while (e > 0) {
    if ((e & 1) != 0) r = ser_mul(r, base);
    e >>= 1;
    if (e > 0) base = ser_mul(base, base);
  }
  return r;
}

// series over one unit eigenvalue: multiplicity patterns graded by half their
// weight, each weighted 2^{number of distinct even block sizes present}
Ser unit_factor(unsigned n, bool diagonal) {
  Ser acc(n + 1);
  const unsigned two_n = 2 * n;
  std::function<void(unsigned, unsigned, unsigned)> rec = [&](unsigned j, unsigned used,
                                                              unsigned evens) {
    if (j == 0) {
      if (used % 2 != 0) throw std::logic_error("odd unit pattern weight");
      acc[used / 2] += BigInt(1) << evens;
      return;
    }
    const unsigned step = (diagonal || j % 2 == 1) ? 2 : 1;
    for (unsigned m = 0; used + j * m <= two_n; m += step)
      rec(j - 1, used + j * m, evens + (m > 0 && j % 2 == 0 ? 1 : 0));
  };
  rec(two_n, 0, 0);
  return acc;
}

}  // namespace

BigInt count_invariant(unsigned n, const gf::Field& field, const AutSpec& aut,
                       std::uint64_t budget) {
  if (aut.q1 < 3 || !field.admits_subfield_order(aut.q1))
    throw std::invalid_argument("count_invariant: " + std::to_string(aut.q1) +
                                " is not a subfield order of F_" + std::to_string(field.q()));
  unsigned k = 0;
  {
    BigInt t = 1, q = field.q();
    while (t != q) {
      t *= aut.q1;
      ++k;
    }
  }
  const unsigned two_n = 2 * n;
  const std::vector<BigInt> pnum = partition_numbers(two_n);

  // cost proxy: unit pattern walks + lattice fixed-point work + series ops
  {
    BigInt est = pnum[aut.diagonal ? n : two_n] * (two_n + 1);
    est += BigInt(8 * k) * two_n * two_n * two_n;
    est += BigInt(n + 1) * (n + 1) * two_n * 64;
    if (est > budget)
      throw BudgetExceeded("count_invariant", saturate64(est), budget);
  }

  Ser units = unit_factor(n, aut.diagonal);
  Ser total = ser_mul(units, units);

  const std::vector<Subgroup> subs = subgroup_lattice(k);
  const BigInt q = field.q(), q1 = aut.q1;
  for (unsigned d = 1; d <= two_n; ++d) {
    std::vector<BigInt> fix(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) fix[i] = fixed_orbit_count(d, subs[i], q, q1);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      // Moebius inversion upward from subs[i]: fix[j] sums the exact-
      // stabilizer counts over all subgroups containing subs[j], so the
      // count of orbit classes stabilized by exactly subs[i] is
      // sum_j mu(subs[i], subs[j]) * fix[j].  subs is sorted by order, so a
      // single upward pass computes mu on the interval.
      std::vector<BigInt> mu(subs.size());
      BigInt classes = 0;
      for (std::size_t j = 0; j < subs.size(); ++j) {
        if (!contains(subs[j], subs[i])) continue;
        if (j == i) {
          mu[j] = 1;
        } else {
          BigInt m = 0;
          for (std::size_t l = 0; l < j; ++l)
            if (contains(subs[j], subs[l]) && contains(subs[l], subs[i])) m -= mu[l];
          mu[j] = m;
        }
        classes += mu[j] * fix[j];
      }
      // each class stabilized by exactly subs[i] consists of index-many orbits
      const unsigned s = subs[i].index;
      if (classes < 0 || classes % s != 0)
        throw std::logic_error("inconsistent orbit class count");
      BigInt cnt = classes / s;
      if (cnt == 0) continue;
      if ((BigInt(d) * s) % 2 != 0) throw std::logic_error("odd total class degree");
      const unsigned step = d * s / 2;
      if (step > n) continue;
      Ser part(n + 1);
      for (unsigned w = 0; w * step <= n; ++w) part[w * step] = pnum[w];
      total = ser_mul(total, ser_pow(std::move(part), cnt, n + 1));
    }
  }
  return total[n];
}

}  // namespace sympcount::classparams
