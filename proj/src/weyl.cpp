#include "sympcount/weyl.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sympcount::weyl {

namespace {

int sgn(int v) { return v < 0 ? -1 : 1; }

std::uint64_t factorial_u64(unsigned n) {
  std::uint64_t r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

// saturating 2^l * l! and 4^l * l!
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t group_w_order(unsigned l) {
  std::uint64_t r = factorial_u64(l);
  for (unsigned i = 0; i < l; ++i) r = sat_mul(r, 2);
  return r;
}

std::uint64_t group_v_order(unsigned l) {
  std::uint64_t r = factorial_u64(l);
  for (unsigned i = 0; i < l; ++i) r = sat_mul(r, 4);
  return r;
}

}  // namespace

SignedPerm::SignedPerm(std::vector<int> images) : img_(std::move(images)) {
  const unsigned l = static_cast<unsigned>(img_.size());
  if (l == 0) throw std::invalid_argument("SignedPerm: empty image list");
  std::vector<bool> seen(l, false);
  for (int v : img_) {
    int av = v < 0 ? -v : v;
    if (v == 0 || av > static_cast<int>(l))
      throw std::invalid_argument("SignedPerm: image out of range");
    if (seen[static_cast<unsigned>(av - 1)])
      throw std::invalid_argument("SignedPerm: repeated image");
    seen[static_cast<unsigned>(av - 1)] = true;
  }
}

SignedPerm SignedPerm::identity(unsigned l) {
  std::vector<int> img(l);
  std::iota(img.begin(), img.end(), 1);
  return SignedPerm(std::move(img));
}

int SignedPerm::image(int i) const {
  int ai = i < 0 ? -i : i;
  if (i == 0 || ai > static_cast<int>(img_.size()))
    throw std::invalid_argument("SignedPerm::image: point out of range");
  int v = img_[static_cast<unsigned>(ai - 1)];
  return i < 0 ? -v : v;
}

SignedPerm SignedPerm::compose(const SignedPerm& o) const {
  if (rank() != o.rank()) throw std::invalid_argument("SignedPerm::compose: rank mismatch");
  std::vector<int> img(rank());
  for (unsigned i = 0; i < rank(); ++i) img[i] = image(o.img_[i]);
  return SignedPerm(std::move(img));
}

SignedPerm SignedPerm::inverse() const {
  std::vector<int> img(rank());
  for (unsigned i = 0; i < rank(); ++i) {
    int v = img_[i];
    img[static_cast<unsigned>((v < 0 ? -v : v) - 1)] = sgn(v) * static_cast<int>(i + 1);
  }
  return SignedPerm(std::move(img));
}

unsigned SignedPerm::order() const {
  // lcm over signed cycles: an unsigned cycle of length k contributes k when the
  // sign product around it is +1 and 2k otherwise
  std::uint64_t ord = 1;
  std::vector<bool> done(rank(), false);
  for (unsigned s = 0; s < rank(); ++s) {
    if (done[s]) continue;
    unsigned len = 0;
    int cur = static_cast<int>(s + 1), sign = 1;
    do {
      done[static_cast<unsigned>(cur - 1)] = true;
      int v = img_[static_cast<unsigned>(cur - 1)];
      sign *= sgn(v);
      cur = v < 0 ? -v : v;
      ++len;
    } while (cur != static_cast<int>(s + 1));
    std::uint64_t piece = sign == 1 ? len : 2ull * len;
    ord = std::lcm(ord, piece);
  }
  return static_cast<unsigned>(ord);
}

std::string SignedPerm::to_string() const {
  std::string out = "[";
  for (unsigned i = 0; i < rank(); ++i) {
    if (i) out += ' ';
    out += std::to_string(img_[i]);
  }
  return out + "]";
}

MonomialMat::MonomialMat(FromCode, std::vector<int> code) : code_(std::move(code)) {
  check_form();
}

MonomialMat::MonomialMat(unsigned l, const std::vector<int>& entries) {
  const unsigned dim = 2 * l;
  if (l == 0) throw std::invalid_argument("MonomialMat: rank 0");
  if (entries.size() != static_cast<std::size_t>(dim) * dim)
    throw std::invalid_argument("MonomialMat: entry count does not match dimension");
  code_.assign(dim, 0);
  std::vector<bool> row_used(dim, false);
  for (unsigned c = 0; c < dim; ++c) {
    for (unsigned r = 0; r < dim; ++r) {
      int v = entries[static_cast<std::size_t>(r) * dim + c];
      if (v == 0) continue;
      if (v != 1 && v != -1)
        throw std::invalid_argument("MonomialMat: entries must be 0 or +-1");
      if (code_[c] != 0) throw std::invalid_argument("MonomialMat: column with two entries");
      if (row_used[r]) throw std::invalid_argument("MonomialMat: row with two entries");
      row_used[r] = true;
      code_[c] = v * static_cast<int>(r + 1);
    }
    if (code_[c] == 0) throw std::invalid_argument("MonomialMat: zero column");
  }
  check_form();
}

void MonomialMat::check_form() const {
  // columns c and 2l-1-c span a hyperbolic pair; their images must pair up with
  // the matching sign so that <Me_c, Me_{c'}> = <e_c, e_{c'}>
  const unsigned dim = static_cast<unsigned>(code_.size());
  const unsigned l = dim / 2;
  for (unsigned c = 0; c < l; ++c) {
    unsigned pc = dim - 1 - c;
    int vc = code_[c], vp = code_[pc];
    unsigned r = static_cast<unsigned>((vc < 0 ? -vc : vc) - 1);
    unsigned rp = static_cast<unsigned>((vp < 0 ? -vp : vp) - 1);
    if (rp != dim - 1 - r)
      throw std::invalid_argument("MonomialMat: does not preserve the alternating form");
    int lhs = sgn(vc) * sgn(vp) * (r < l ? -1 : 1);
    if (lhs != -1)
      throw std::invalid_argument("MonomialMat: does not preserve the alternating form");
  }
}

MonomialMat MonomialMat::identity(unsigned l) {
  if (l == 0) throw std::invalid_argument("MonomialMat: rank 0");
  std::vector<int> code(2 * l);
  std::iota(code.begin(), code.end(), 1);
  return MonomialMat(FromCode{}, std::move(code));
}

int MonomialMat::at(unsigned r, unsigned c) const {
  if (r >= dim() || c >= dim()) throw std::invalid_argument("MonomialMat::at: out of range");
  int v = code_[c];
  return static_cast<unsigned>((v < 0 ? -v : v) - 1) == r ? sgn(v) : 0;
}

MonomialMat MonomialMat::operator*(const MonomialMat& o) const {
  if (dim() != o.dim()) throw std::invalid_argument("MonomialMat: dimension mismatch");
  std::vector<int> code(dim());
  for (unsigned c = 0; c < dim(); ++c) {
    int b = o.code_[c];
    int a = code_[static_cast<unsigned>((b < 0 ? -b : b) - 1)];
    code[c] = sgn(b) * a;
  }
  return MonomialMat(FromCode{}, std::move(code));
}

MonomialMat MonomialMat::inverse() const {
  std::vector<int> code(dim());
  for (unsigned c = 0; c < dim(); ++c) {
    int v = code_[c];
    code[static_cast<unsigned>((v < 0 ? -v : v) - 1)] = sgn(v) * static_cast<int>(c + 1);
  }
  return MonomialMat(FromCode{}, std::move(code));
}

MonomialMat MonomialMat::pow(unsigned k) const {
  MonomialMat r = identity(rank());
  for (unsigned i = 0; i < k; ++i) r = r * (*this);
  return r;
}

bool MonomialMat::is_diagonal() const {
  for (unsigned c = 0; c < dim(); ++c) {
    int v = code_[c];
    if (static_cast<unsigned>((v < 0 ? -v : v) - 1) != c) return false;
  }
  return true;
}

unsigned MonomialMat::order() const {
  MonomialMat m = *this;
  unsigned n = 1;
  while (!(m == identity(rank()))) {
    m = m * (*this);
    if (++n > 1000000) throw std::logic_error("MonomialMat::order: runaway");
  }
  return n;
}

std::string MonomialMat::to_string() const {
  std::string out = "[";
  for (unsigned r = 0; r < dim(); ++r) {
    if (r) out += "; ";
    for (unsigned c = 0; c < dim(); ++c) {
      if (c) out += ' ';
      out += std::to_string(at(r, c));
    }
  }
  return out + "]";
}

SignedPerm perm_image(const MonomialMat& m) {
  const unsigned l = m.rank();
  std::vector<int> img(l);
  for (unsigned c = 0; c < l; ++c) {
    int v = m.code_[c];
    unsigned r = static_cast<unsigned>((v < 0 ? -v : v) - 1);
    img[c] = r < l ? static_cast<int>(r + 1) : -static_cast<int>(2 * l - r);
  }
  return SignedPerm(std::move(img));
}

Root::Root(int a, int b) : c1(a), c2(b) {
  if (a == 0 || b == 0) throw std::invalid_argument("Root: zero coordinate");
  int aa = a < 0 ? -a : a, ab = b < 0 ? -b : b;
  if (aa == ab && a != b) throw std::invalid_argument("Root: e_i - e_i is not a root");
  if (aa > ab) std::swap(c1, c2);
}

std::vector<Root> all_roots(unsigned l) {
  std::vector<Root> out;
  for (int i = 1; i <= static_cast<int>(l); ++i) {
    out.emplace_back(i, i);
    out.emplace_back(-i, -i);
    for (int j = i + 1; j <= static_cast<int>(l); ++j) {
      out.emplace_back(i, -j);
      out.emplace_back(-i, j);
      out.emplace_back(i, j);
      out.emplace_back(-i, -j);
    }
  }
  return out;
}

namespace {

std::vector<int> root_vec(const Root& r, unsigned l) {
  std::vector<int> v(l, 0);
  v[static_cast<unsigned>((r.c1 < 0 ? -r.c1 : r.c1) - 1)] += sgn(r.c1);
  v[static_cast<unsigned>((r.c2 < 0 ? -r.c2 : r.c2) - 1)] += sgn(r.c2);
  return v;
}

Root vec_root(const std::vector<int>& v) {
  std::vector<int> comps;
  for (unsigned i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (v[i] == 2 || v[i] == -2) {
      comps.push_back(sgn(v[i]) * static_cast<int>(i + 1));
      comps.push_back(sgn(v[i]) * static_cast<int>(i + 1));
    } else if (v[i] == 1 || v[i] == -1) {
      comps.push_back(v[i] * static_cast<int>(i + 1));
    } else {
      throw std::logic_error("vec_root: not a root vector");
    }
  }
  if (comps.size() != 2) throw std::logic_error("vec_root: not a root vector");
  return Root(comps[0], comps[1]);
}

unsigned max_index(const Root& r) {
  int a = r.c1 < 0 ? -r.c1 : r.c1;
  int b = r.c2 < 0 ? -r.c2 : r.c2;
  return static_cast<unsigned>(a > b ? a : b);
}

}  // namespace

Root reflect_root(const Root& beta, const Root& alpha) {
  unsigned l = std::max(max_index(beta), max_index(alpha));
  std::vector<int> va = root_vec(alpha, l), vb = root_vec(beta, l);
  int num = 0, den = 0;
  for (unsigned i = 0; i < l; ++i) {
    num += va[i] * vb[i];
    den += vb[i] * vb[i];
  }
  if ((2 * num) % den != 0) throw std::logic_error("reflect_root: non-integral Cartan pairing");
  int c = 2 * num / den;
  for (unsigned i = 0; i < l; ++i) va[i] -= c * vb[i];
  return vec_root(va);
}

namespace {

// dense integer matrices, only used to assemble the Chevalley generators
using IntMat = std::vector<int>;

IntMat int_identity(unsigned dim) {
  IntMat m(static_cast<std::size_t>(dim) * dim, 0);
  for (unsigned i = 0; i < dim; ++i) m[static_cast<std::size_t>(i) * dim + i] = 1;
  return m;
}

IntMat int_mul(const IntMat& a, const IntMat& b, unsigned dim) {
  IntMat out(static_cast<std::size_t>(dim) * dim, 0);
  for (unsigned r = 0; r < dim; ++r)
    for (unsigned k = 0; k < dim; ++k) {
      int v = a[static_cast<std::size_t>(r) * dim + k];
      if (v == 0) continue;
      for (unsigned c = 0; c < dim; ++c)
        out[static_cast<std::size_t>(r) * dim + c] += v * b[static_cast<std::size_t>(k) * dim + c];
    }
  return out;
}

// unipotent root element in the natural representation
IntMat x_root(unsigned l, const Root& r, int c) {
  const unsigned dim = 2 * l;
  auto p = [dim](unsigned i) { return dim - 1 - i; };
  IntMat m = int_identity(dim);
  auto add = [&](unsigned row, unsigned col, int v) {
    m[static_cast<std::size_t>(row) * dim + col] += v;
  };
  if (r.is_long()) {
    unsigned i = static_cast<unsigned>((r.c1 < 0 ? -r.c1 : r.c1) - 1);
    if (r.c1 > 0)
      add(i, p(i), c);  // 2e_i
    else
      add(p(i), i, c);  // -2e_i
    return m;
  }
  unsigned i = static_cast<unsigned>((r.c1 < 0 ? -r.c1 : r.c1) - 1);
  unsigned j = static_cast<unsigned>((r.c2 < 0 ? -r.c2 : r.c2) - 1);
  bool s1 = r.c1 > 0, s2 = r.c2 > 0;
  if (s1 && !s2) {  // e_i - e_j
    add(i, j, c);
    add(p(j), p(i), -c);
  } else if (!s1 && s2) {  // e_j - e_i
    add(j, i, c);
    add(p(i), p(j), -c);
  } else if (s1 && s2) {  // e_i + e_j
    add(i, p(j), c);
    add(j, p(i), c);
  } else {  // -e_i - e_j
    add(p(j), i, c);
    add(p(i), j, c);
  }
  return m;
}

void check_t(int t) {
  if (t != 1 && t != -1) throw std::invalid_argument("chevalley generator: t must be +-1");
}

void check_root_rank(unsigned l, const Root& r) {
  if (l == 0) throw std::invalid_argument("chevalley generator: rank 0");
  if (max_index(r) > l) throw std::invalid_argument("chevalley generator: root outside C_l");
}

}  // namespace

MonomialMat chevalley_n(unsigned l, const Root& r, int t) {
  check_root_rank(l, r);
  check_t(t);
  const unsigned dim = 2 * l;
  Root nr(-r.c1, -r.c2);
  IntMat m = int_mul(int_mul(x_root(l, r, t), x_root(l, nr, -t), dim), x_root(l, r, t), dim);
  return MonomialMat(l, m);
}

MonomialMat chevalley_h(unsigned l, const Root& r, int t) {
  check_root_rank(l, r);
  check_t(t);
  if (t == 1) return MonomialMat::identity(l);
  // diagonal entry at a weight line is (-1)^<weight, coroot>; the coroot of a
  // long root +-2e_i is +-e_i, short coroots equal the root itself
  std::vector<int> coroot = root_vec(r, l);
  if (r.is_long()) coroot[max_index(r) - 1] /= 2;
  const unsigned dim = 2 * l;
  IntMat m(static_cast<std::size_t>(dim) * dim, 0);
  for (unsigned k = 0; k < dim; ++k) {
    unsigned i = k < l ? k : dim - 1 - k;  // weight is +-e_{i+1}
    int pair = (k < l ? 1 : -1) * coroot[i];
    m[static_cast<std::size_t>(k) * dim + k] = (pair % 2 == 0) ? 1 : -1;
  }
  return MonomialMat(l, m);
}

TwistSpec::TwistSpec(unsigned l_, unsigned d_, bool regular_) : l(l_), d(d_), regular(regular_) {
  if (l == 0) throw std::invalid_argument("TwistSpec: rank 0");
  if (d == 0) throw std::invalid_argument("TwistSpec: d = 0");
  d0 = (d % 2 == 1) ? d : d / 2;
  eps = (d % 2 == 1) ? 1 : -1;
  if (regular) {
    if ((2 * l) % d != 0) throw std::invalid_argument("TwistSpec: regular case needs d | 2l");
    lprime = l;
  } else {
    if (d0 > l) throw std::invalid_argument("TwistSpec: d0 exceeds the rank");
    lprime = (l / d0) * d0;
  }
  a = lprime / d0;
}

MonomialMat coxeter_v0(unsigned l) {
  if (l == 0) throw std::invalid_argument("coxeter_v0: rank 0");
  MonomialMat v = MonomialMat::identity(l);
  for (unsigned k = 1; k < l; ++k)
    v = v * chevalley_n(l, Root(static_cast<int>(k), -static_cast<int>(k + 1)), 1);
  v = v * chevalley_n(l, Root(static_cast<int>(l), static_cast<int>(l)), 1);
  std::vector<int> expected(l);
  for (unsigned i = 0; i + 1 < l; ++i) expected[i] = static_cast<int>(i + 2);
  expected[l - 1] = -1;
  if (perm_image(v) != SignedPerm(std::move(expected)))
    throw std::logic_error("coxeter_v0: image is not the expected 2l-cycle");
  return v;
}

MonomialMat sylow_twist(const TwistSpec& spec) {
  if (spec.regular) return coxeter_v0(spec.l).pow(2 * spec.l / spec.d);
  MonomialMat w = MonomialMat::identity(spec.l);
  for (unsigned k = 1; k < spec.lprime; ++k)
    w = w * chevalley_n(spec.l, Root(static_cast<int>(k), -static_cast<int>(k + 1)), 1);
  w = w * chevalley_n(spec.l, Root(static_cast<int>(spec.lprime), static_cast<int>(spec.lprime)), -1);
  return w.pow(spec.a);
}

std::vector<SignedPerm> enumerate_signed_perms(unsigned l, std::uint64_t budget) {
  if (l == 0) throw std::invalid_argument("enumerate_signed_perms: rank 0");
  std::uint64_t total = group_w_order(l);
  std::uint64_t cost = sat_mul(total, l);
  if (cost > budget) throw BudgetExceeded("enumerate_signed_perms", cost, budget);
  std::vector<int> perm(l);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<SignedPerm> out;
  out.reserve(total);
  do {
    for (std::uint64_t mask = 0; mask < (1ull << l); ++mask) {
      std::vector<int> img(l);
      for (unsigned i = 0; i < l; ++i) img[i] = (mask >> i) & 1 ? -perm[i] : perm[i];
      out.emplace_back(std::move(img));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

// V is reused by several checks; enumeration is deterministic, so sharing is safe
const std::vector<MonomialMat>& cached_extended_weyl(unsigned l, std::uint64_t budget) {
  std::uint64_t cost = sat_mul(group_v_order(l), 8 * l);
  if (cost > budget) throw BudgetExceeded("enumerate_extended_weyl", cost, budget);
  static std::mutex mu;
  static std::map<unsigned, std::vector<MonomialMat>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(l);
  if (it != cache.end()) return it->second;

  std::vector<MonomialMat> gens;
  for (unsigned k = 1; k < l; ++k)
    gens.push_back(chevalley_n(l, Root(static_cast<int>(k), -static_cast<int>(k + 1)), -1));
  gens.push_back(chevalley_n(l, Root(static_cast<int>(l), static_cast<int>(l)), -1));

  std::set<MonomialMat> seen;
  std::vector<MonomialMat> frontier{MonomialMat::identity(l)};
  seen.insert(frontier[0]);
  const std::uint64_t expect = group_v_order(l);
  while (!frontier.empty()) {
    std::vector<MonomialMat> next;
    for (const MonomialMat& m : frontier)
      for (const MonomialMat& g : gens) {
        MonomialMat prod = m * g;
        if (seen.insert(prod).second) {
          if (seen.size() > expect)
            throw std::logic_error("extended Weyl closure exceeded the expected order");
          next.push_back(std::move(prod));
        }
      }
    frontier = std::move(next);
  }
  // the simple-root generators already produce every n_alpha(-1)
  for (const Root& r : all_roots(l))
    if (!seen.count(chevalley_n(l, r, -1)))
      throw std::logic_error("extended Weyl closure misses a root generator");
  std::vector<MonomialMat> out(seen.begin(), seen.end());
  return cache.emplace(l, std::move(out)).first->second;
}

// orbit of s under the unsigned action of w, listed in visit order
std::vector<unsigned> unsigned_orbit(const SignedPerm& w, unsigned s) {
  std::vector<unsigned> orbit;
  unsigned cur = s;
  do {
    orbit.push_back(cur);
    int v = w.image(static_cast<int>(cur));
    cur = static_cast<unsigned>(v < 0 ? -v : v);
  } while (cur != s);
  return orbit;
}

// true when the signed orbit of s is a single cycle through both +-s
bool signed_orbit_joined(const SignedPerm& w, unsigned s) {
  int cur = static_cast<int>(s);
  do {
    cur = w.image(cur);
    if (cur == -static_cast<int>(s)) return true;
  } while (cur != static_cast<int>(s));
  return false;
}

// the restriction of w (joined signed orbit) or -w (split orbit) to +-orbit,
// extended by the identity: a centralizing element of order 2 * |orbit|
SignedPerm restricted_cycle_gen(const SignedPerm& w, const std::vector<unsigned>& orbit) {
  int flip = signed_orbit_joined(w, orbit[0]) ? 1 : -1;
  std::vector<int> img(w.rank());
  std::iota(img.begin(), img.end(), 1);
  for (unsigned i : orbit) img[i - 1] = flip * w.image(static_cast<int>(i));
  return SignedPerm(std::move(img));
}

// w-equivariant swap of two orbits; empty optional-style: returns identity and
// sets ok = false when the cycle structures cannot be matched
SignedPerm equivariant_swap(const SignedPerm& w, const std::vector<unsigned>& oa,
                            const std::vector<unsigned>& ob, bool& ok) {
  ok = true;
  std::vector<int> img(w.rank(), 0);
  auto assign = [&](int from, int to) {
    unsigned slot = static_cast<unsigned>((from < 0 ? -from : from) - 1);
    int val = from < 0 ? -to : to;
    if (img[slot] == 0)
      img[slot] = val;
    else if (img[slot] != val)
      ok = false;
  };
  int x = static_cast<int>(oa[0]), y = static_cast<int>(ob[0]);
  for (unsigned j = 0; j < 2 * oa.size(); ++j) {
    assign(x, y);
    assign(y, x);
    x = w.image(x);
    y = w.image(y);
  }
  for (unsigned i = 0; i < w.rank(); ++i)
    if (img[i] == 0) img[i] = static_cast<int>(i + 1);
  std::vector<bool> hit(w.rank(), false);
  for (int v : img) {
    unsigned av = static_cast<unsigned>(v < 0 ? -v : v);
    if (av == 0 || av > w.rank() || hit[av - 1]) ok = false;
    if (ok) hit[av - 1] = true;
  }
  if (!ok) return SignedPerm::identity(w.rank());
  SignedPerm s{std::move(img)};
  if (!(s.compose(w) == w.compose(s))) ok = false;
  return ok ? s : SignedPerm::identity(w.rank());
}

std::vector<SignedPerm> perm_closure(const std::vector<SignedPerm>& gens, std::size_t cap) {
  std::set<SignedPerm> seen;
  std::vector<SignedPerm> frontier;
  if (gens.empty()) return {};
  seen.insert(SignedPerm::identity(gens[0].rank()));
  frontier.push_back(SignedPerm::identity(gens[0].rank()));
  while (!frontier.empty()) {
    std::vector<SignedPerm> next;
    for (const SignedPerm& p : frontier)
      for (const SignedPerm& g : gens) {
        SignedPerm prod = p.compose(g);
        if (seen.insert(prod).second) {
          if (seen.size() > cap) throw std::logic_error("perm_closure: cap exceeded");
          next.push_back(std::move(prod));
        }
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

std::vector<MonomialMat> enumerate_extended_weyl(unsigned l, std::uint64_t budget) {
  if (l == 0) throw std::invalid_argument("enumerate_extended_weyl: rank 0");
  return cached_extended_weyl(l, budget);
}

CentralizerReport centralizer_in_W(const SignedPerm& w, std::uint64_t budget) {
  const unsigned l = w.rank();
  CentralizerReport rep;
  for (const SignedPerm& x : enumerate_signed_perms(l, budget))
    if (x.compose(w) == w.compose(x)) rep.elements.push_back(x);
  std::sort(rep.elements.begin(), rep.elements.end());
  rep.order = rep.elements.size();

  // wreath shape applies when all unsigned orbits share one length
  std::vector<std::vector<unsigned>> orbits;
  std::vector<bool> done(l, false);
  for (unsigned s = 1; s <= l; ++s) {
    if (done[s - 1]) continue;
    auto orb = unsigned_orbit(w, s);
    for (unsigned i : orb) done[i - 1] = true;
    orbits.push_back(std::move(orb));
  }
  std::size_t d0 = orbits[0].size();
  for (const auto& o : orbits)
    if (o.size() != d0) return rep;
  rep.d0 = static_cast<unsigned>(d0);
  rep.a = static_cast<unsigned>(orbits.size());
  std::uint64_t expected = factorial_u64(rep.a);
  for (unsigned i = 0; i < rep.a; ++i) expected = sat_mul(expected, 2 * rep.d0);
  rep.wreath_shape = rep.order == expected;
  if (!rep.wreath_shape) return rep;

  std::vector<SignedPerm> gens;
  for (const auto& orb : orbits) {
    SignedPerm g = restricted_cycle_gen(w, orb);
    if (!(g.compose(w) == w.compose(g)) || g.order() != 2 * rep.d0) return rep;
    rep.base_generators.push_back(g);
    gens.push_back(g);
  }
  for (unsigned k = 0; k + 1 < orbits.size(); ++k) {
    bool ok = false;
    SignedPerm s = equivariant_swap(w, orbits[k], orbits[k + 1], ok);
    if (!ok) {
      rep.base_generators.clear();
      rep.swap_generators.clear();
      return rep;
    }
    rep.swap_generators.push_back(s);
    gens.push_back(s);
  }
  std::vector<SignedPerm> span = perm_closure(gens, rep.elements.size() + 1);
  rep.generators_generate = span == rep.elements;
  return rep;
}

ExtendedWeylReport extended_weyl_checks(const TwistSpec& spec, std::uint64_t budget) {
  if (!spec.regular)
    throw std::invalid_argument("extended_weyl_checks: regular twist required");
  ExtendedWeylReport rep;
  rep.l = spec.l;
  rep.d = spec.d;
  rep.d0 = spec.d0;
  rep.a = spec.a;
  const unsigned l = spec.l;
  auto fail = [&rep](std::string msg) { rep.failures.push_back(std::move(msg)); };

  const std::vector<MonomialMat>& V = cached_extended_weyl(l, budget);
  const MonomialMat v = sylow_twist(spec);
  const SignedPerm w = perm_image(v);

  std::vector<MonomialMat> Vd, Hd;
  std::set<MonomialMat> Hset;
  for (const MonomialMat& x : V) {
    bool central = (x * v) == (v * x);
    if (central) Vd.push_back(x);
    if (x.is_diagonal()) {
      Hset.insert(x);
      if (central) Hd.push_back(x);
    }
  }
  rep.v_order = V.size();
  rep.h_order = Hset.size();
  rep.vd_order = Vd.size();
  rep.hd_order = Hd.size();

  // (i) the weight-line image of the twist centralizer is the full centralizer in W
  CentralizerReport cw = centralizer_in_W(w, budget);
  std::set<SignedPerm> image;
  for (const MonomialMat& x : Vd) image.insert(perm_image(x));
  std::set<SignedPerm> cwset(cw.elements.begin(), cw.elements.end());
  rep.image_matches_centralizer = image == cwset;
  if (!rep.image_matches_centralizer)
    fail("image of the twist centralizer differs from the reflection-group centralizer");
  if (rep.vd_order != rep.hd_order * image.size()) {
    rep.image_matches_centralizer = false;
    fail("centralizer order does not factor through its diagonal kernel");
  }

  // (ii) H_d is elementary abelian of rank a with the orbit products as a basis
  std::vector<std::vector<unsigned>> orbits;
  for (unsigned k = 1; k <= spec.a; ++k) orbits.push_back(unsigned_orbit(w, k));
  std::vector<bool> covered(l, false);
  bool partition = true;
  for (const auto& orb : orbits)
    for (unsigned i : orb) {
      if (covered[i - 1]) partition = false;
      covered[i - 1] = true;
    }
  for (unsigned i = 0; i < l; ++i)
    if (!covered[i]) partition = false;
  std::vector<MonomialMat> hk;
  for (const auto& orb : orbits) {
    MonomialMat h = MonomialMat::identity(l);
    for (unsigned i : orb)
      h = h * chevalley_h(l, Root(static_cast<int>(i), static_cast<int>(i)), -1);
    hk.push_back(h);
  }
  std::set<MonomialMat> hd_set(Hd.begin(), Hd.end());
  bool basis_ok = partition && rep.hd_order == (1ull << spec.a);
  for (const MonomialMat& x : Hd)
    if (!((x * x) == MonomialMat::identity(l))) basis_ok = false;
  std::set<MonomialMat> span;
  for (std::uint64_t mask = 0; mask < (1ull << spec.a); ++mask) {
    MonomialMat prod = MonomialMat::identity(l);
    for (unsigned k = 0; k < spec.a; ++k)
      if ((mask >> k) & 1) prod = prod * hk[k];
    span.insert(prod);
  }
  basis_ok = basis_ok && span == hd_set;
  rep.hd_elementary_abelian = basis_ok;
  if (!basis_ok) fail("diagonal twist centralizer is not spanned by the orbit involutions");

  // (iii) block swaps assembled from twisted conjugates square to h_k h_{k+1}
  std::vector<MonomialMat> pk;
  bool squares_ok = true;
  for (unsigned k = 1; k < spec.a; ++k) {
    MonomialMat vk = chevalley_n(l, Root(static_cast<int>(k), -static_cast<int>(k + 1)), 1);
    MonomialMat p = MonomialMat::identity(l);
    MonomialMat vi = MonomialMat::identity(l);  // v^i
    for (unsigned i = 0; i < spec.d0; ++i) {
      p = p * (vi.inverse() * vk * vi);
      vi = vi * v;
    }
    if (!((p * v) == (v * p))) squares_ok = false;
    SignedPerm pw = perm_image(p);
    for (unsigned i : orbits[k - 1]) {
      int im = pw.image(static_cast<int>(i));
      unsigned target = static_cast<unsigned>(im < 0 ? -im : im);
      if (std::find(orbits[k].begin(), orbits[k].end(), target) == orbits[k].end())
        squares_ok = false;
    }
    if (!((p * p) == (hk[k - 1] * hk[k]))) squares_ok = false;
    pk.push_back(p);
  }
  rep.pk_squares_match = squares_ok;
  if (!squares_ok) fail("block-swap squares do not match the orbit involutions");

  // (iv) braid and distant commutation among the block swaps
  bool braid_ok = true;
  for (unsigned k = 0; k + 1 < pk.size(); ++k)
    if (!((pk[k] * pk[k + 1] * pk[k]) == (pk[k + 1] * pk[k] * pk[k + 1]))) braid_ok = false;
  for (unsigned j = 0; j < pk.size(); ++j)
    for (unsigned k = j + 2; k < pk.size(); ++k)
      if (!((pk[j] * pk[k]) == (pk[k] * pk[j]))) braid_ok = false;
  rep.braid_relations_hold = braid_ok;
  if (!braid_ok) fail("block swaps violate the braid or commutation relations");

  // (v) a base-cycle generator lifts into the twist centralizer
  rep.cbar1 = restricted_cycle_gen(w, orbits[0]);
  if (!cwset.count(rep.cbar1)) fail("target base cycle is not in the reflection centralizer");
  rep.c1 = MonomialMat::identity(l);
  for (const MonomialMat& x : Vd)
    if (perm_image(x) == rep.cbar1) {
      rep.c1 = x;
      rep.c1_found = true;
      break;
    }
  if (!rep.c1_found) fail("no lift of the base cycle found in the twist centralizer");
  return rep;
}

BigInt torus_fixed_order(const SignedPerm& w, std::uint64_t q) {
  if (q < 3 || q % 2 == 0)
    throw std::invalid_argument("torus_fixed_order: q must be an odd prime power");
  const unsigned l = w.rank();
  // A = q M_w - I, exact determinant by fraction-free elimination
  std::vector<std::vector<BigInt>> A(l, std::vector<BigInt>(l, BigInt(0)));
  for (unsigned i = 0; i < l; ++i) {
    int v = w.image(static_cast<int>(i + 1));
    unsigned r = static_cast<unsigned>((v < 0 ? -v : v) - 1);
    A[r][i] += BigInt(static_cast<std::int64_t>(q)) * (v < 0 ? -1 : 1);
    A[i][i] -= 1;
  }
  int sign = 1;
  BigInt prev(1);
  for (unsigned k = 0; k < l; ++k) {
    unsigned piv = k;
    while (piv < l && A[piv][k] == 0) ++piv;
    if (piv == l) return BigInt(0);
    if (piv != k) {
      std::swap(A[piv], A[k]);
      sign = -sign;
    }
    for (unsigned i = k + 1; i < l; ++i)
      for (unsigned j = k + 1; j < l; ++j)
        A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
    prev = A[k][k];
  }
  BigInt det = A[l - 1][l - 1] * sign;
  return det < 0 ? -det : det;
}

StabilizerShape stabilizer_shape(const TwistSpec& spec, std::uint64_t q,
                                 const std::vector<std::uint64_t>& xi, std::uint64_t budget) {
  if (q < 3 || q % 2 == 0)
    throw std::invalid_argument("stabilizer_shape: q must be an odd prime power");
  BigInt qpow = big_pow(BigInt(static_cast<std::int64_t>(q)), spec.d0);
  BigInt qb = qpow - spec.eps;
  if (qb > BigInt(std::int64_t(1) << 40))
    throw BudgetExceeded("stabilizer_shape: modulus", UINT64_MAX, budget);
  std::uint64_t Q = qb.convert_to<std::uint64_t>();
  if (xi.size() != spec.a)
    throw std::invalid_argument("stabilizer_shape: xi must have one residue per block");
  for (std::uint64_t r : xi)
    if (r >= Q) throw std::invalid_argument("stabilizer_shape: residue out of range");

  StabilizerShape out;
  out.modulus = Q;
  out.galois_order = 2ull * spec.d0;
  // generator: multiplication by q, composed with inversion when d is odd
  auto gen = [&](std::uint64_t k) {
    std::uint64_t qk = static_cast<std::uint64_t>((static_cast<__uint128_t>(q) * k) % Q);
    return spec.d % 2 == 1 ? (Q - qk) % Q : qk;
  };
  // the involution of the Galois group must act as inversion: both maps are
  // multiplications, so comparing the multipliers proves equality as maps
  std::uint64_t lam = 1 % Q;
  for (unsigned i = 0; i < spec.d0; ++i) lam = gen(lam);
  if (lam != (Q - 1) % Q)
    throw std::logic_error("stabilizer_shape: Galois involution is not inversion");

  // per-coordinate orbits and stabilizer orders under the cyclic action
  std::vector<std::uint64_t> stab(spec.a), okey(spec.a);
  for (unsigned i = 0; i < spec.a; ++i) {
    std::uint64_t val = xi[i], mn = xi[i], period = 0;
    for (std::uint64_t c = 1; c <= out.galois_order; ++c) {
      val = gen(val);
      mn = std::min(mn, val);
      if (val == xi[i] && period == 0) period = c;
    }
    if (period == 0 || out.galois_order % period != 0)
      throw std::logic_error("stabilizer_shape: orbit walk did not close");
    stab[i] = out.galois_order / period;
    okey[i] = mn;
  }
  std::map<std::uint64_t, std::pair<std::uint64_t, unsigned>> blocks;
  for (unsigned i = 0; i < spec.a; ++i) {
    auto [it, fresh] = blocks.emplace(okey[i], std::make_pair(stab[i], 0u));
    if (!fresh && it->second.first != stab[i])
      throw std::logic_error("stabilizer_shape: unequal stabilizers along one orbit");
    ++it->second.second;
  }
  for (const auto& [key, blk] : blocks) {
    (void)key;
    out.blocks.emplace_back(blk.first, blk.second);
  }
  std::sort(out.blocks.begin(), out.blocks.end());
  out.predicted_order = BigInt(1);
  for (const auto& blk : out.blocks) {
    for (unsigned i = 0; i < blk.second; ++i)
      out.predicted_order *= BigInt(static_cast<std::int64_t>(blk.first));
    for (unsigned i = 2; i <= blk.second; ++i) out.predicted_order *= i;
  }

  // independent count over the full wreath group: for each permutation the base
  // coordinates are independent, so multiply per-slot fixer counts
  std::uint64_t wreath_cost = factorial_u64(spec.a);
  for (unsigned i = 0; i < spec.a; ++i) wreath_cost = sat_mul(wreath_cost, out.galois_order);
  if (wreath_cost > budget) throw BudgetExceeded("stabilizer_shape", wreath_cost, budget);
  std::vector<std::vector<std::uint64_t>> table(spec.a);
  for (unsigned j = 0; j < spec.a; ++j) {
    table[j].resize(out.galois_order);
    std::uint64_t val = xi[j];
    for (std::uint64_t c = 0; c < out.galois_order; ++c) {
      table[j][c] = val;  // g^c applied to xi_j
      val = gen(val);
    }
  }
  std::vector<unsigned> sigma(spec.a);
  std::iota(sigma.begin(), sigma.end(), 0);
  BigInt count(0);
  do {
    BigInt term(1);
    for (unsigned i = 0; i < spec.a && term != 0; ++i) {
      // sigma maps slot sigma[j] <- j; slot i receives from j with sigma[j] == i
      unsigned j = static_cast<unsigned>(
          std::find(sigma.begin(), sigma.end(), i) - sigma.begin());
      std::uint64_t fixers = 0;
      for (std::uint64_t c = 0; c < out.galois_order; ++c)
        if (table[j][c] == xi[i]) ++fixers;
      term *= BigInt(static_cast<std::int64_t>(fixers));
    }
    count += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  out.brute_force_order = count;
  out.match = out.predicted_order == out.brute_force_order;
  return out;
}

WreathElem wreath_compose(std::uint64_t f, const WreathElem& x, const WreathElem& y) {
  if (f == 0) throw std::invalid_argument("wreath_compose: trivial cyclic part");
  const std::size_t n = x.base.size();
  if (y.base.size() != n || x.perm.size() != n || y.perm.size() != n)
    throw std::invalid_argument("wreath_compose: size mismatch");
  std::vector<unsigned> xinv(n);
  for (unsigned i = 0; i < n; ++i) {
    if (x.perm[i] >= n) throw std::invalid_argument("wreath_compose: bad permutation");
    xinv[x.perm[i]] = i;
  }
  WreathElem out;
  out.base.resize(n);
  out.perm.resize(n);
  for (unsigned i = 0; i < n; ++i) {
    if (y.perm[i] >= n) throw std::invalid_argument("wreath_compose: bad permutation");
    if (x.base[i] >= f || y.base[i] >= f)
      throw std::invalid_argument("wreath_compose: base entry out of range");
    out.perm[i] = x.perm[y.perm[i]];
    out.base[i] = (x.base[i] + y.base[xinv[i]]) % f;
  }
  return out;
}

int wreath_mu(std::uint64_t f, const WreathElem& e) {
  if (f == 0 || f % 2 != 0) throw std::invalid_argument("wreath_mu: f must be even");
  const std::size_t n = e.base.size();
  if (e.perm.size() != n) throw std::invalid_argument("wreath_mu: size mismatch");
  std::vector<bool> seen(n, false);
  std::uint64_t sum = 0;
  for (unsigned i = 0; i < n; ++i) {
    if (e.perm[i] >= n || seen[e.perm[i]]) throw std::invalid_argument("wreath_mu: bad permutation");
    seen[e.perm[i]] = true;
    if (e.base[i] >= f) throw std::invalid_argument("wreath_mu: base entry out of range");
    sum = (sum + e.base[i]) % f;
  }
  std::uint64_t val = (sum % f) * (f / 2) % f;
  if (val == 0) return 1;
  if (val == f / 2) return -1;
  throw std::logic_error("wreath_mu: value escaped the order-2 subgroup");
}

}  // namespace sympcount::weyl
