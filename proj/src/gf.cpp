#include "sympcount/gf.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace sympcount::gf {

namespace {

constexpr std::uint32_t kMaxQ = 1u << 20;

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint32_t> prime_divisors_u64(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<std::uint32_t>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
  return out;
}

// Plain F_p[x] arithmetic on digit vectors, used to bootstrap the extension
// field before multiplication tables exist.
using PVec = std::vector<std::uint32_t>;

void pnormalize(PVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PVec pmulmod(const PVec& a, const PVec& b, const PVec& mod, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PVec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>(
          (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  // reduce by the monic modulus
  std::size_t md = mod.size() - 1;
  for (std::size_t i = r.size(); i-- > md;) {
    std::uint32_t c = r[i];
    if (c == 0) continue;
    r[i] = 0;
    for (std::size_t j = 0; j < md; ++j) {
      std::uint64_t sub = static_cast<std::uint64_t>(c) * mod[j] % p;
      r[i - md + j] = static_cast<std::uint32_t>((r[i - md + j] + p - sub) % p);
    }
  }
  r.resize(md);
  pnormalize(r);
  return r;
}

bool pf_is_irreducible(std::uint32_t p, const PVec& f);  // forward

}  // namespace

struct Field::Impl {
  std::uint32_t p = 0, m = 0, q = 0;
  std::vector<std::uint32_t> modulus;  // length m+1, monic
  std::vector<std::uint32_t> exp_;     // size q-1, exp_[i] = g^i
  std::vector<std::uint32_t> log_;     // size q, log_[0] unused
  std::uint32_t gen = 0;

  std::uint32_t encode(const PVec& digits) const {
    std::uint32_t v = 0;
    for (std::size_t i = digits.size(); i-- > 0;) v = v * p + digits[i];
    return v;
  }
  PVec decode(std::uint32_t v) const {
    PVec d(m, 0);
    for (std::uint32_t i = 0; i < m; ++i) {
      d[i] = v % p;
      v /= p;
    }
    return d;
  }
  std::uint32_t raw_mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (m == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
    PVec r = pmulmod(decode(a), decode(b), modulus, p);
    r.resize(m, 0);
    return encode(r);
  }
  std::uint32_t raw_pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = raw_mul(r, a);
      a = raw_mul(a, a);
      e >>= 1;
    }
    return r;
  }

  void build(std::uint32_t p_, std::uint32_t m_, std::vector<std::uint32_t> mod,
             bool allow_large) {
    p = p_;
    m = m_;
    if (p < 3 || !is_prime_u32(p) || p % 2 == 0)
      throw std::invalid_argument("field characteristic must be an odd prime");
    if (m < 1) throw std::invalid_argument("field degree must be positive");
    std::uint64_t qq = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      qq *= p;
      if (qq > kMaxQ && !allow_large)
        throw std::invalid_argument("field order exceeds the default 2^20 bound");
      if (qq > (1ull << 30)) throw std::invalid_argument("field order too large");
    }
    q = static_cast<std::uint32_t>(qq);
    if (mod.empty()) {
      // first monic irreducible of degree m over F_p, degree-then-lex order
      if (m == 1) {
        modulus = {0, 1};  // x, unused
      } else {
        std::uint64_t total = 1;
        for (std::uint32_t i = 0; i < m; ++i) total *= p;
        for (std::uint64_t v = 0; v < total; ++v) {
          PVec f(m + 1, 0);
          std::uint64_t t = v;
          for (std::uint32_t i = 0; i < m; ++i) {
            f[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
          }
          f[m] = 1;
          if (pf_is_irreducible(p, f)) {
            modulus = f;
            break;
          }
        }
        if (modulus.empty()) throw std::logic_error("no irreducible modulus found");
      }
    } else {
      if (mod.size() != m + 1 || mod.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree m");
      for (auto c : mod)
        if (c >= p) throw std::invalid_argument("modulus coefficients must lie in F_p");
      if (m > 1 && !pf_is_irreducible(p, mod))
        throw std::invalid_argument("modulus is reducible");
      modulus = std::move(mod);
    }
    // multiplicative tables via a generator
    auto primes = prime_divisors_u64(q - 1);
    for (std::uint32_t c = 2; c < q; ++c) {
      bool ok = true;
      for (auto r : primes)
        if (raw_pow(c, (q - 1) / r) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        gen = c;
        break;
      }
    }
    if (gen == 0) throw std::logic_error("no multiplicative generator found");
    exp_.resize(q - 1);
    log_.assign(q, 0);
    std::uint32_t acc = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
      exp_[i] = acc;
      log_[acc] = i;
      acc = raw_mul(acc, gen);
    }
    if (acc != 1) throw std::logic_error("generator order mismatch");
  }
};

Field::Field(std::uint32_t p, std::uint32_t m, bool allow_large) {
  auto impl = std::make_shared<Impl>();
  impl->build(p, m, {}, allow_large);
  impl_ = std::move(impl);
}

Field::Field(std::uint32_t p, const std::vector<std::uint32_t>& modulus, bool allow_large) {
  auto impl = std::make_shared<Impl>();
  if (modulus.size() < 2) throw std::invalid_argument("modulus must have positive degree");
  impl->build(p, static_cast<std::uint32_t>(modulus.size() - 1), modulus, allow_large);
  impl_ = std::move(impl);
}

std::uint32_t Field::p() const { return impl_->p; }
std::uint32_t Field::m() const { return impl_->m; }
std::uint32_t Field::q() const { return impl_->q; }
const std::vector<std::uint32_t>& Field::modulus() const { return impl_->modulus; }

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
  const auto& I = *impl_;
  if (I.m == 1) return (a + b) % I.p;
  std::uint32_t r = 0, mult = 1;
  for (std::uint32_t i = 0; i < I.m; ++i) {
    r += ((a % I.p) + (b % I.p)) % I.p * mult;
    a /= I.p;
    b /= I.p;
    mult *= I.p;
  }
  return r;
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t Field::neg(std::uint32_t a) const {
  const auto& I = *impl_;
  if (I.m == 1) return a == 0 ? 0 : I.p - a;
  std::uint32_t r = 0, mult = 1;
  for (std::uint32_t i = 0; i < I.m; ++i) {
    std::uint32_t d = a % I.p;
    r += (d == 0 ? 0 : I.p - d) * mult;
    a /= I.p;
    mult *= I.p;
  }
  return r;
}

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
  const auto& I = *impl_;
  if (a == 0 || b == 0) return 0;
  std::uint64_t s = static_cast<std::uint64_t>(I.log_[a]) + I.log_[b];
  return I.exp_[s % (I.q - 1)];
}

std::uint32_t Field::inv(std::uint32_t a) const {
  const auto& I = *impl_;
  if (a == 0) throw std::invalid_argument("inverse of zero");
  return I.exp_[(I.q - 1 - I.log_[a]) % (I.q - 1)];
}

std::uint32_t Field::pow(std::uint32_t a, std::int64_t e) const {
  const auto& I = *impl_;
  if (a == 0) {
    if (e < 0) throw std::invalid_argument("negative power of zero");
    return e == 0 ? 1 : 0;
  }
  std::int64_t ord = I.q - 1;
  std::int64_t k = (static_cast<std::int64_t>(I.log_[a]) * (e % ord)) % ord;
  if (k < 0) k += ord;
  return I.exp_[k];
}

std::uint32_t Field::from_int(std::int64_t v) const {
  std::int64_t r = v % impl_->p;
  if (r < 0) r += impl_->p;
  return static_cast<std::uint32_t>(r);
}

bool Field::is_square(std::uint32_t a) const {
  if (a == 0) throw std::invalid_argument("square class of zero is undefined");
  return impl_->log_[a] % 2 == 0;
}

std::uint32_t Field::generator() const { return impl_->gen; }

std::uint32_t Field::smallest_nonsquare() const {
  for (std::uint32_t c = 1; c < impl_->q; ++c)
    if (!is_square(c)) return c;
  throw std::logic_error("no nonsquare found");
}

bool Field::operator==(const Field& o) const {
  if (impl_ == o.impl_) return true;
  return impl_->p == o.impl_->p && impl_->m == o.impl_->m && impl_->modulus == o.impl_->modulus;
}

bool Field::admits_subfield_order(std::uint32_t q1) const {
  if (q1 < 3) return false;
  std::uint64_t v = q1;
  std::uint32_t k = 0;
  while (v % impl_->p == 0) {
    v /= impl_->p;
    ++k;
  }
  return v == 1 && k >= 1 && impl_->m % k == 0;
}

// ---------------------------------------------------------------------------
// FqPoly

FqPoly::FqPoly(Field f) : field_(std::move(f)) {}

FqPoly::FqPoly(Field f, std::vector<std::uint32_t> coeffs)
    : field_(std::move(f)), c_(std::move(coeffs)) {
  for (auto c : c_)
    if (c >= field_.q()) throw std::invalid_argument("coefficient out of range");
  normalize();
}

void FqPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FqPoly FqPoly::constant(const Field& f, std::uint32_t c) { return FqPoly(f, {c}); }
FqPoly FqPoly::x(const Field& f) { return FqPoly(f, {0, 1}); }
FqPoly FqPoly::x_minus(const Field& f, std::uint32_t c) { return FqPoly(f, {f.neg(c), 1}); }

bool FqPoly::is_one() const { return c_.size() == 1 && c_[0] == 1; }
bool FqPoly::is_monic() const { return !c_.empty() && c_.back() == 1; }

std::uint32_t FqPoly::leading() const {
  if (c_.empty()) throw std::invalid_argument("leading coefficient of zero");
  return c_.back();
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
  FqPoly r(field_);
  r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.c_.size(); ++i)
    r.c_[i] = field_.add(coeff(i), o.coeff(i));
  r.normalize();
  return r;
}

FqPoly FqPoly::operator-(const FqPoly& o) const {
  FqPoly r(field_);
  r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.c_.size(); ++i)
    r.c_[i] = field_.sub(coeff(i), o.coeff(i));
  r.normalize();
  return r;
}

FqPoly FqPoly::operator*(const FqPoly& o) const {
  if (is_zero() || o.is_zero()) return FqPoly(field_);
  FqPoly r(field_);
  r.c_.assign(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      r.c_[i + j] = field_.add(r.c_[i + j], field_.mul(c_[i], o.c_[j]));
  }
  r.normalize();
  return r;
}

FqPoly FqPoly::scaled(std::uint32_t c) const {
  FqPoly r(field_);
  if (c == 0) return r;
  r.c_ = c_;
  for (auto& v : r.c_) v = field_.mul(v, c);
  return r;
}

bool FqPoly::operator==(const FqPoly& o) const { return c_ == o.c_ && field_ == o.field_; }

std::pair<FqPoly, FqPoly> FqPoly::divmod(const FqPoly& d) const {
  if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
  FqPoly q(field_), r(field_);
  const int dd = d.degree();
  if (degree() < dd) return {q, *this};
  std::vector<std::uint32_t> rem = c_;
  std::uint32_t lead_inv = field_.inv(d.leading());
  q.c_.assign(degree() - dd + 1, 0);
  for (int i = degree(); i >= dd; --i) {
    std::uint32_t c = field_.mul(rem[i], lead_inv);
    if (c == 0) continue;
    q.c_[i - dd] = c;
    for (int j = 0; j <= dd; ++j)
      rem[i - dd + j] = field_.sub(rem[i - dd + j], field_.mul(c, d.c_[j]));
  }
  q.normalize();
  r.c_ = std::move(rem);
  r.normalize();
  return {q, r};
}

FqPoly FqPoly::make_monic() const {
  if (is_zero()) throw std::invalid_argument("cannot normalize the zero polynomial");
  return scaled(field_.inv(leading()));
}

FqPoly FqPoly::derivative() const {
  FqPoly r(field_);
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    r.c_[i - 1] = field_.mul(c_[i], field_.from_int(static_cast<std::int64_t>(i)));
  r.normalize();
  return r;
}

std::uint32_t FqPoly::eval(std::uint32_t x) const {
  std::uint32_t r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = field_.add(field_.mul(r, x), c_[i]);
  return r;
}

int FqPoly::cmp(const FqPoly& a, const FqPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (int i = a.degree(); i >= 0; --i)
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i) ? -1 : 1;
  return 0;
}

std::string FqPoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    std::uint32_t c = coeff(i);
    if (c == 0) continue;
    if (!s.empty()) s += " + ";
    if (i == 0 || c != 1) s += std::to_string(c);
    if (i > 0) {
      if (c != 1) s += "*";
      s += "x";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

FqPoly gcd(FqPoly a, FqPoly b) {
  while (!b.is_zero()) {
    FqPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.make_monic();
}

FqPoly pow_mod(const FqPoly& base, const BigInt& e, const FqPoly& mod) {
  if (e < 0) throw std::invalid_argument("negative polynomial exponent");
  FqPoly r = FqPoly::constant(base.field(), 1) % mod;
  FqPoly b = base % mod;
  if (e == 0) return r;
  auto bits = boost::multiprecision::msb(e);
  for (std::size_t i = 0; i <= bits; ++i) {
    if (boost::multiprecision::bit_test(e, i)) r = (r * b) % mod;
    if (i < bits) b = (b * b) % mod;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Factorization

namespace {

bool pf_is_irreducible(std::uint32_t p, const PVec& f) {
  // Direct test over F_p on digit vectors (degree >= 1, monic).
  std::size_t d = f.size() - 1;
  if (d == 1) return true;
  // x^(p^d) == x mod f, and gcd(x^(p^(d/r)) - x, f) == 1 for prime r | d
  auto frob = [&](const PVec& a) {  // a^p mod f
    PVec r = {1};
    PVec b = a;
    std::uint32_t e = p;
    while (e) {
      if (e & 1) r = pmulmod(r, b, f, p);
      b = pmulmod(b, b, f, p);
      e >>= 1;
    }
    return r;
  };
  auto pgcd = [&](PVec a, PVec b) {
    auto pmod = [&](PVec num, const PVec& den) {
      PVec d2 = den;
      {  // make den monic (Fermat inverse of leading coefficient)
        std::uint32_t acc = 1, bse = d2.back(), e = p - 2;
        while (e) {
          if (e & 1) acc = static_cast<std::uint32_t>(static_cast<std::uint64_t>(acc) * bse % p);
          bse = static_cast<std::uint32_t>(static_cast<std::uint64_t>(bse) * bse % p);
          e >>= 1;
        }
        for (auto& c : d2) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * acc % p);
      }
      pnormalize(num);
      while (num.size() >= d2.size()) {
        std::uint32_t c = num.back();
        std::size_t off = num.size() - d2.size();
        for (std::size_t j = 0; j < d2.size(); ++j) {
          std::uint64_t sub = static_cast<std::uint64_t>(c) * d2[j] % p;
          num[off + j] = static_cast<std::uint32_t>((num[off + j] + p - sub) % p);
        }
        pnormalize(num);
      }
      return num;
    };
    while (!b.empty()) {
      PVec r = pmod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  };

  // h_k = x^(p^k) mod f, via repeated Frobenius
  PVec xp = {0, 1};
  std::vector<PVec> frob_powers(d + 1);
  frob_powers[0] = xp;
  for (std::size_t k = 1; k <= d; ++k) frob_powers[k] = frob(frob_powers[k - 1]);
  // x^(p^d) == x?
  if (frob_powers[d] != xp) return false;
  for (auto r : prime_divisors_u64(d)) {
    PVec diff = frob_powers[d / r];
    // diff -= x
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    pnormalize(diff);
    PVec g = pgcd(f, diff);
    if (!(g.size() == 1)) return false;  // nontrivial common factor
  }
  return true;
}

// squarefree decomposition in characteristic p (handles f = g(x^p))
void squarefree_decomp(const FqPoly& f, std::uint32_t outer,
                       std::vector<std::pair<FqPoly, std::uint32_t>>& out) {
  const Field& F = f.field();
  FqPoly fp = f.derivative();
  if (fp.is_zero()) {
    // f = g(x^p); p-th roots of coefficients give g
    std::uint32_t p = F.p();
    std::vector<std::uint32_t> g((f.degree() / p) + 1, 0);
    for (int i = 0; i <= f.degree(); ++i) {
      if (f.coeff(i) == 0) continue;
      if (i % p != 0) throw std::logic_error("derivative zero but not a p-th power");
      g[i / p] = F.pow(f.coeff(i), F.q() / p);  // p-th root
    }
    squarefree_decomp(FqPoly(F, g), outer * p, out);
    return;
  }
  FqPoly c = gcd(f, fp);
  FqPoly w = f / c;
  std::uint32_t i = 1;
  while (w.degree() > 0) {
    FqPoly y = gcd(w, c);
    FqPoly fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.make_monic(), i * outer);
    w = y;
    c = c / y;
    ++i;
  }
  // here every factor of c has multiplicity divisible by p, so c' = 0 and the
  // p-th-root branch above picks up the correct multiplicity scaling
  if (c.degree() > 0) squarefree_decomp(c, outer, out);
}

// equal-degree splitting of a squarefree product of degree-d irreducibles
void edf(const FqPoly& f, std::uint32_t d, std::mt19937_64& rng, std::vector<FqPoly>& out) {
  if (static_cast<std::uint32_t>(f.degree()) == d) {
    out.push_back(f.make_monic());
    return;
  }
  const Field& F = f.field();
  BigInt e = (big_pow(BigInt(F.q()), d) - 1) / 2;
  for (;;) {
    std::vector<std::uint32_t> rc(f.degree(), 0);
    for (auto& c : rc) c = static_cast<std::uint32_t>(rng() % F.q());
    FqPoly r(F, rc);
    if (r.degree() < 1) continue;
    FqPoly s = pow_mod(r, e, f);
    FqPoly g = gcd(s - FqPoly::constant(F, 1), f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      edf(g, d, rng, out);
      edf(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<PolyFactor> factor_poly(const FqPoly& f) {
  if (f.degree() < 1) throw std::invalid_argument("factor_poly needs positive degree");
  const Field& F = f.field();
  std::vector<std::pair<FqPoly, std::uint32_t>> sqf;
  squarefree_decomp(f.make_monic(), 1, sqf);

  std::mt19937_64 rng(0x53504c4954u);  // fixed seed: reproducible splits
  std::vector<PolyFactor> out;
  for (auto& [part, mult] : sqf) {
    // distinct-degree splitting
    FqPoly rem = part;
    FqPoly h = FqPoly::x(F) % rem;
    std::uint32_t d = 0;
    while (rem.degree() > 0) {
      ++d;
      if (2 * d > static_cast<std::uint32_t>(rem.degree())) {
        out.push_back({rem.make_monic(), mult});
        break;
      }
      h = pow_mod(h, BigInt(F.q()), rem);
      FqPoly g = gcd(h - FqPoly::x(F), rem);
      if (g.degree() > 0) {
        std::vector<FqPoly> split;
        edf(g, d, rng, split);
        for (auto& irr : split) out.push_back({irr, mult});
        rem = rem / g;
        h = h % rem;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
    return FqPoly::cmp(a.factor, b.factor) < 0;
  });
  // merge equal factors from different squarefree layers (cannot happen, but
  // keep the output canonical regardless)
  std::vector<PolyFactor> merged;
  for (auto& pf : out) {
    if (!merged.empty() && merged.back().factor == pf.factor)
      merged.back().multiplicity += pf.multiplicity;
    else
      merged.push_back(pf);
  }
  return merged;
}

bool is_irreducible(const FqPoly& f) {
  if (f.degree() < 1) return false;
  const Field& F = f.field();
  std::uint32_t d = static_cast<std::uint32_t>(f.degree());
  if (d == 1) return true;
  FqPoly fm = f.make_monic();
  std::vector<FqPoly> frob(d + 1, FqPoly(F));
  frob[0] = FqPoly::x(F) % fm;
  for (std::uint32_t k = 1; k <= d; ++k)
    frob[k] = pow_mod(frob[k - 1], BigInt(F.q()), fm);
  if (frob[d] != FqPoly::x(F) % fm) return false;
  for (auto r : prime_divisors_u64(d)) {
    FqPoly g = gcd(frob[d / r] - FqPoly::x(F), fm);
    if (g.degree() != 0) return false;
  }
  return true;
}

std::vector<FqPoly> monic_irreducibles(const Field& f, std::uint32_t degree) {
  if (degree < 1) throw std::invalid_argument("degree must be positive");
  std::vector<FqPoly> out;
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < degree; ++i) total *= f.q();
  for (std::uint64_t v = 0; v < total; ++v) {
    std::vector<std::uint32_t> c(degree + 1, 0);
    std::uint64_t t = v;
    for (std::uint32_t i = 0; i < degree; ++i) {
      c[i] = static_cast<std::uint32_t>(t % f.q());
      t /= f.q();
    }
    c[degree] = 1;
    FqPoly cand(f, c);
    if (is_irreducible(cand)) out.push_back(cand);
  }
  return out;
}

// ---------------------------------------------------------------------------
// FrobOrbit

FrobOrbit::FrobOrbit(FqPoly p) : poly_(std::move(p)) {
  if (!poly_.is_monic()) throw std::invalid_argument("orbit polynomial must be monic");
  if (poly_.coeff(0) == 0) throw std::invalid_argument("orbit polynomial must not vanish at 0");
  if (!is_irreducible(poly_)) throw std::invalid_argument("orbit polynomial must be irreducible");
}

FrobOrbit::FrobOrbit(FqPoly p, bool) : poly_(std::move(p)) {}

FrobOrbit FrobOrbit::of_unit(const Field& f, int unit) {
  if (unit != 1 && unit != -1) throw std::invalid_argument("unit must be +-1");
  return FrobOrbit(FqPoly::x_minus(f, f.from_int(unit)), true);
}

bool FrobOrbit::is_unit_orbit(int unit) const {
  const Field& F = field();
  return size() == 1 && poly_.coeff(0) == F.neg(F.from_int(unit));
}

FrobOrbit orbit_inverse(const FrobOrbit& o) {
  const FqPoly& f = o.poly();
  const Field& F = f.field();
  std::vector<std::uint32_t> rev(f.coeffs().rbegin(), f.coeffs().rend());
  FqPoly r(F, rev);
  return FrobOrbit(r.make_monic(), true);
}

FrobOrbit orbit_frobenius_power(const FrobOrbit& o, std::uint32_t q1) {
  const FqPoly& P = o.poly();
  const Field& F = P.field();
  if (!F.admits_subfield_order(q1))
    throw std::invalid_argument("q1 is not a subfield order of q");
  if (q1 == F.q()) return o;
  std::uint32_t d = o.size();
  // minimal polynomial over F_q of A = x^q1 in F_q[x]/(P), found as the first
  // linear dependence among the powers of A; it has degree d because the
  // q1-power map is injective on orbits and preserves their size.
  FqPoly A = pow_mod(FqPoly::x(F), BigInt(q1), P);
  // rows: power index -> coefficient vector of A^i, with elimination tracking
  std::vector<std::vector<std::uint32_t>> rows;     // reduced rows
  std::vector<std::vector<std::uint32_t>> combos;   // row = sum combo[j] * A^j
  std::vector<int> pivot_of_row;
  FqPoly acc = FqPoly::constant(F, 1) % P;
  for (std::uint32_t i = 0; i <= d; ++i) {
    std::vector<std::uint32_t> v(d, 0);
    for (std::uint32_t j = 0; j < d; ++j) v[j] = acc.coeff(j);
    std::vector<std::uint32_t> combo(d + 1, 0);
    combo[i] = 1;
    // reduce against existing rows
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::uint32_t c = v[pivot_of_row[r]];
      if (c == 0) continue;
      for (std::uint32_t j = 0; j < d; ++j)
        v[j] = F.sub(v[j], F.mul(c, rows[r][j]));
      for (std::uint32_t j = 0; j <= d; ++j)
        combo[j] = F.sub(combo[j], F.mul(c, combos[r][j]));
    }
    int piv = -1;
    for (std::uint32_t j = 0; j < d; ++j)
      if (v[j] != 0) {
        piv = static_cast<int>(j);
        break;
      }
    if (piv < 0) {
      if (i != d) throw std::logic_error("frobenius-power orbit degree dropped");
      // combo gives the minimal polynomial coefficients (monic after scaling)
      FqPoly minpoly(F, combo);
      return FrobOrbit(minpoly.make_monic(), true);
    }
    std::uint32_t ci = F.inv(v[piv]);
    for (auto& x : v) x = F.mul(x, ci);
    for (auto& x : combo) x = F.mul(x, ci);
    rows.push_back(std::move(v));
    combos.push_back(std::move(combo));
    pivot_of_row.push_back(piv);
    acc = (acc * A) % P;
  }
  throw std::logic_error("minimal polynomial not found");
}

}  // namespace sympcount::gf
