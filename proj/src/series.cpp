#include "sympcount/series.hpp"

#include <stdexcept>

namespace sympcount::series {

namespace {
const BigInt kZero = 0;
}

UPoly::UPoly(long long c) {
  if (c != 0) c_.push_back(BigInt(c));
}

UPoly::UPoly(BigInt c) {
  if (c != 0) c_.push_back(std::move(c));
}

UPoly::UPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { normalize(); }

UPoly UPoly::u() { return UPoly(std::vector<BigInt>{0, 1}); }

void UPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const BigInt& UPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : kZero; }

UPoly UPoly::operator+(const UPoly& o) const {
  UPoly r = *this;
  r += o;
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

UPoly UPoly::operator-(const UPoly& o) const {
  UPoly r = *this;
  if (o.c_.size() > r.c_.size()) r.c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] -= o.c_[i];
  r.normalize();
  return r;
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<BigInt> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UPoly(std::move(r));
}

UPoly UPoly::halved() const {
  std::vector<BigInt> r = c_;
  for (auto& v : r) {
    if (v % 2 != 0) throw std::logic_error("inexact halving of " + to_string());
    v /= 2;
  }
  return UPoly(std::move(r));
}

BigInt UPoly::eval(const BigInt& u_value) const {
  BigInt r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * u_value + c_[i];
  return r;
}

std::string UPoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = c_[i];
    if (c == 0) continue;
    BigInt a = c < 0 ? BigInt(-c) : c;
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    if (i == 0 || a != 1) s += a.str();
    if (i > 0) {
      if (a != 1) s += "*";
      s += "u";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

TSeries::TSeries(unsigned order) : order_(order), c_(order + 1) {}

TSeries::TSeries(unsigned order, std::vector<UPoly> coeffs) : order_(order), c_(std::move(coeffs)) {
  c_.resize(order + 1);
}

TSeries TSeries::one(unsigned order) { return monomial(order, 0, UPoly(1)); }

TSeries TSeries::monomial(unsigned order, unsigned k, UPoly c) {
  TSeries s(order);
  if (k <= order) s.c_[k] = std::move(c);
  return s;
}

const UPoly& TSeries::coeff(unsigned k) const {
  if (k > order_) throw std::invalid_argument("coefficient index beyond truncation order");
  return c_[k];
}

void TSeries::check_order(const TSeries& o) const {
  if (order_ != o.order_) throw std::invalid_argument("truncation orders differ");
}

TSeries TSeries::operator+(const TSeries& o) const {
  check_order(o);
  TSeries r(order_);
  for (unsigned k = 0; k <= order_; ++k) r.c_[k] = c_[k] + o.c_[k];
  return r;
}

TSeries TSeries::operator-(const TSeries& o) const {
  check_order(o);
  TSeries r(order_);
  for (unsigned k = 0; k <= order_; ++k) r.c_[k] = c_[k] - o.c_[k];
  return r;
}

TSeries TSeries::operator*(const TSeries& o) const {
  check_order(o);
  TSeries r(order_);
  for (unsigned i = 0; i <= order_; ++i) {
    if (c_[i].is_zero()) continue;
    for (unsigned j = 0; i + j <= order_; ++j) {
      if (o.c_[j].is_zero()) continue;
      r.c_[i + j] += c_[i] * o.c_[j];
    }
  }
  return r;
}

TSeries TSeries::inverse_unit() const {
  if (c_[0] != UPoly(1))
    throw std::invalid_argument("series inverse needs constant coefficient 1");
  TSeries r(order_);
  r.c_[0] = UPoly(1);
  for (unsigned k = 1; k <= order_; ++k) {
    UPoly acc;
    for (unsigned j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
    r.c_[k] = UPoly(0) - acc;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Builders.  Factors whose lowest nonconstant term exceeds the order are
// skipped, so every build is a finite product.

namespace {

// 1 / (1 - c t^step), i.e. sum_k c^k t^{k step}
TSeries geometric(unsigned order, unsigned step, const UPoly& c) {
  TSeries s(order);
  std::vector<UPoly> v(order + 1);
  UPoly acc(1);
  for (unsigned k = 0; k * step <= order; ++k) {
    v[k * step] = acc;
    if ((k + 1) * step <= order) acc = acc * c;
  }
  return TSeries(order, std::move(v));
}

// 1 + e t^step
TSeries binomial(unsigned order, unsigned step, long long e) {
  return TSeries::one(order) + TSeries::monomial(order, step, UPoly(e));
}

}  // namespace

TSeries build_genfun_c(unsigned order) {
  TSeries s = TSeries::one(order);
  for (unsigned i = 1; i <= order; ++i) {
    if (2 * i <= order) {
      TSeries f = binomial(order, 2 * i, 1);
      s = s * f * f;
    }
    s = s * geometric(order, i, UPoly::u());
  }
  return s;
}

TSeries build_f0(unsigned order) {
  TSeries s = TSeries::one(order);
  for (unsigned i = 1; i <= order; ++i) {
    TSeries f = binomial(order, i, -1);
    s = s * f * f * geometric(order, i, UPoly::u());
  }
  return s;
}

TSeries build_fplus(unsigned order) {
  TSeries s = TSeries::one(order);
  for (unsigned i = 1; i <= order; ++i) {
    if (2 * i <= order) s = s * binomial(order, 2 * i, 1);
    s = s * geometric(order, i, UPoly(1));
  }
  return s;
}

TSeries build_theta(unsigned order) {
  std::vector<UPoly> v(order + 1);
  for (unsigned j = 0; j * j + j <= order; ++j) v[j * j + j] = UPoly(1);
  return TSeries(order, std::move(v));
}

TSeries build_partition(unsigned order) {
  TSeries s = TSeries::one(order);
  for (unsigned m = 1; m <= order; ++m) s = s * geometric(order, m, UPoly(1));
  return s;
}

TSeries build_gend(unsigned order) {
  TSeries s = build_theta(order);
  for (unsigned i = 1; i <= order; ++i) {
    s = s * geometric(order, i, UPoly::u());
    if (2 * i <= order) s = s * geometric(order, 2 * i, UPoly(1));
  }
  return s;
}

TSeries build_fplus_by_partitions(unsigned order) {
  std::vector<BigInt> totals(order + 1);
  // walk all partitions with parts descending; track distinct even parts seen
  std::vector<unsigned> parts;
  auto rec = [&](auto&& self, unsigned remaining, unsigned max_part, unsigned even_kinds) -> void {
    if (remaining == 0) {
      unsigned n = 0;
      for (auto p : parts) n += p;
      totals[n] += big_pow(BigInt(2), even_kinds);
      return;
    }
    for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
      bool new_even = p % 2 == 0 && (parts.empty() || parts.back() != p);
      parts.push_back(p);
      self(self, remaining - p, p, even_kinds + (new_even ? 1 : 0));
      parts.pop_back();
    }
  };
  for (unsigned n = 0; n <= order; ++n) rec(rec, n, n == 0 ? 1 : n, 0);
  std::vector<UPoly> v(order + 1);
  for (unsigned n = 0; n <= order; ++n) v[n] = UPoly(totals[n]);
  return TSeries(order, std::move(v));
}

// ---------------------------------------------------------------------------

SeriesReport compare(const TSeries& a, const TSeries& b) {
  if (a.order() != b.order()) throw std::invalid_argument("truncation orders differ");
  SeriesReport rep;
  for (unsigned k = 0; k <= a.order(); ++k) {
    if (a.coeff(k) != b.coeff(k)) {
      rep.ok = false;
      rep.mismatches.push_back({k, a.coeff(k), b.coeff(k)});
    }
  }
  return rep;
}

SeriesReport verify_jacobi(unsigned order) {
  TSeries rhs = TSeries::one(order);
  for (unsigned i = 1; 2 * i <= order; ++i) {
    TSeries plus = binomial(order, 2 * i, 1);
    rhs = rhs * binomial(order, 2 * i, -1) * plus * plus;
  }
  return compare(build_theta(order), rhs);
}

SeriesReport verify_main_identity(unsigned order) {
  return compare(build_genfun_c(order), build_gend(order));
}

}  // namespace sympcount::series
