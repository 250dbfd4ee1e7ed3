#include "sympcount/matgrp.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace sympcount::matgrp {

namespace {

using Vec = std::vector<std::uint32_t>;

Vec apply(const Mat& m, const Vec& v) {
  const gf::Field& f = m.field();
  Vec out(m.dim(), 0);
  for (unsigned r = 0; r < m.dim(); ++r) {
    std::uint32_t acc = 0;
    for (unsigned c = 0; c < m.dim(); ++c) acc = f.add(acc, f.mul(m.at(r, c), v[c]));
    out[r] = acc;
  }
  return out;
}

// reduced row echelon span with exact membership tests
struct RowSpace {
  const gf::Field* f;
  unsigned dim;
  std::vector<Vec> rows;             // pivot entry 1, zero at all other pivots
  std::vector<unsigned> pivots;      // ascending

  RowSpace(const gf::Field& field, unsigned d) : f(&field), dim(d) {}

  Vec reduce(Vec v) const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::uint32_t c = v[pivots[i]];
      if (c == 0) continue;
      for (unsigned j = 0; j < dim; ++j) v[j] = f->sub(v[j], f->mul(c, rows[i][j]));
    }
    return v;
  }

  // true if v was outside the span (and is now included)
  bool insert(const Vec& v) {
    Vec r = reduce(v);
    unsigned p = dim;
    for (unsigned j = 0; j < dim; ++j)
      if (r[j] != 0) {
        p = j;
        break;
      }
    if (p == dim) return false;
    std::uint32_t inv = f->inv(r[p]);
    for (unsigned j = 0; j < dim; ++j) r[j] = f->mul(r[j], inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::uint32_t c = rows[i][p];
      if (c == 0) continue;
      for (unsigned j = 0; j < dim; ++j) rows[i][j] = f->sub(rows[i][j], f->mul(c, r[j]));
    }
    std::size_t at = 0;
    while (at < pivots.size() && pivots[at] < p) ++at;
    rows.insert(rows.begin() + at, std::move(r));
    pivots.insert(pivots.begin() + at, p);
    return true;
  }

  std::size_t rank() const { return rows.size(); }
};

unsigned rank_of(const Mat& m) {
  RowSpace rs(m.field(), m.dim());
  for (unsigned r = 0; r < m.dim(); ++r) {
    Vec row(m.dim());
    for (unsigned c = 0; c < m.dim(); ++c) row[c] = m.at(r, c);
    rs.insert(row);
  }
  return static_cast<unsigned>(rs.rank());
}

// basis of { v : m v = 0 }
std::vector<Vec> kernel_basis(const Mat& m) {
  const gf::Field& f = m.field();
  const unsigned d = m.dim();
  std::vector<Vec> rows(d, Vec(d));
  for (unsigned r = 0; r < d; ++r)
    for (unsigned c = 0; c < d; ++c) rows[r][c] = m.at(r, c);

  std::vector<int> pivot_row_of_col(d, -1);
  unsigned rank = 0;
  for (unsigned c = 0; c < d && rank < d; ++c) {
    unsigned sel = rank;
    while (sel < d && rows[sel][c] == 0) ++sel;
    if (sel == d) continue;
    std::swap(rows[rank], rows[sel]);
    std::uint32_t inv = f.inv(rows[rank][c]);
    for (unsigned j = 0; j < d; ++j) rows[rank][j] = f.mul(rows[rank][j], inv);
    for (unsigned r = 0; r < d; ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      std::uint32_t s = rows[r][c];
      for (unsigned j = 0; j < d; ++j) rows[r][j] = f.sub(rows[r][j], f.mul(s, rows[rank][j]));
    }
    pivot_row_of_col[c] = static_cast<int>(rank);
    ++rank;
  }

  std::vector<Vec> basis;
  for (unsigned c = 0; c < d; ++c) {
    if (pivot_row_of_col[c] >= 0) continue;
    Vec v(d, 0);
    v[c] = 1;
    for (unsigned pc = 0; pc < d; ++pc)
      if (pivot_row_of_col[pc] >= 0) v[pc] = f.neg(rows[pivot_row_of_col[pc]][c]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::uint32_t det_of(std::vector<Vec> rows, const gf::Field& f) {
  const unsigned d = static_cast<unsigned>(rows.size());
  std::uint32_t det = 1;
  for (unsigned c = 0; c < d; ++c) {
    unsigned sel = c;
    while (sel < d && rows[sel][c] == 0) ++sel;
    if (sel == d) return 0;
    if (sel != c) {
      std::swap(rows[sel], rows[c]);
      det = f.neg(det);
    }
    det = f.mul(det, rows[c][c]);
    std::uint32_t inv = f.inv(rows[c][c]);
    for (unsigned r = c + 1; r < d; ++r) {
      if (rows[r][c] == 0) continue;
      std::uint32_t s = f.mul(rows[r][c], inv);
      for (unsigned j = c; j < d; ++j) rows[r][j] = f.sub(rows[r][j], f.mul(s, rows[c][j]));
    }
  }
  return det;
}

Mat eval_at(const gf::FqPoly& p, const Mat& m) {
  const gf::Field& f = m.field();
  Mat r(f, m.dim());
  for (int i = p.degree(); i >= 0; --i)
    r = r * m + Mat::scalar(f, m.dim(), p.coeff(static_cast<std::size_t>(i)));
  return r;
}

}  // namespace

Mat::Mat(gf::Field f, unsigned dim) : field_(std::move(f)), dim_(dim), e_(dim * dim, 0) {
  if (dim == 0) throw std::invalid_argument("Mat: dimension 0");
}

Mat::Mat(gf::Field f, unsigned dim, std::vector<std::uint32_t> entries)
    : field_(std::move(f)), dim_(dim), e_(std::move(entries)) {
  if (dim == 0) throw std::invalid_argument("Mat: dimension 0");
  if (e_.size() != static_cast<std::size_t>(dim) * dim)
    throw std::invalid_argument("Mat: entry count does not match dimension");
  for (std::uint32_t v : e_)
    if (v >= field_.q()) throw std::invalid_argument("Mat: entry out of field range");
}

Mat Mat::identity(const gf::Field& f, unsigned dim) { return scalar(f, dim, 1); }

Mat Mat::scalar(const gf::Field& f, unsigned dim, std::uint32_t c) {
  Mat m(f, dim);
  for (unsigned i = 0; i < dim; ++i) m.set(i, i, c);
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (dim_ != o.dim_ || field_ != o.field_) throw std::invalid_argument("Mat*: shape mismatch");
  Mat r(field_, dim_);
  for (unsigned i = 0; i < dim_; ++i)
    for (unsigned k = 0; k < dim_; ++k) {
      std::uint32_t a = at(i, k);
      if (a == 0) continue;
      for (unsigned j = 0; j < dim_; ++j)
        r.e_[i * dim_ + j] = field_.add(r.e_[i * dim_ + j], field_.mul(a, o.at(k, j)));
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  if (dim_ != o.dim_ || field_ != o.field_) throw std::invalid_argument("Mat+: shape mismatch");
  Mat r(field_, dim_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.add(e_[i], o.e_[i]);
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (dim_ != o.dim_ || field_ != o.field_) throw std::invalid_argument("Mat-: shape mismatch");
  Mat r(field_, dim_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.sub(e_[i], o.e_[i]);
  return r;
}

Mat Mat::scaled(std::uint32_t c) const {
  Mat r(field_, dim_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.mul(e_[i], c);
  return r;
}

Mat Mat::transpose() const {
  Mat r(field_, dim_);
  for (unsigned i = 0; i < dim_; ++i)
    for (unsigned j = 0; j < dim_; ++j) r.set(j, i, at(i, j));
  return r;
}

Mat Mat::inverse() const {
  Mat left(*this);
  Mat right = identity(field_, dim_);
  for (unsigned c = 0; c < dim_; ++c) {
    unsigned sel = c;
    while (sel < dim_ && left.at(sel, c) == 0) ++sel;
    if (sel == dim_) throw std::invalid_argument("Mat::inverse: singular matrix");
    for (unsigned j = 0; j < dim_; ++j) {
      std::swap(left.e_[sel * dim_ + j], left.e_[c * dim_ + j]);
      std::swap(right.e_[sel * dim_ + j], right.e_[c * dim_ + j]);
    }
    std::uint32_t inv = field_.inv(left.at(c, c));
    for (unsigned j = 0; j < dim_; ++j) {
      left.e_[c * dim_ + j] = field_.mul(left.e_[c * dim_ + j], inv);
      right.e_[c * dim_ + j] = field_.mul(right.e_[c * dim_ + j], inv);
    }
    for (unsigned r = 0; r < dim_; ++r) {
      if (r == c || left.at(r, c) == 0) continue;
      std::uint32_t s = left.at(r, c);
      for (unsigned j = 0; j < dim_; ++j) {
        left.e_[r * dim_ + j] = field_.sub(left.e_[r * dim_ + j], field_.mul(s, left.at(c, j)));
        right.e_[r * dim_ + j] =
            field_.sub(right.e_[r * dim_ + j], field_.mul(s, right.at(c, j)));
      }
    }
  }
  return right;
}

Mat Mat::pow(unsigned e) const {
  Mat r = identity(field_, dim_);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << '[';
  for (unsigned i = 0; i < dim_; ++i) {
    if (i) os << "; ";
    for (unsigned j = 0; j < dim_; ++j) {
      if (j) os << ' ';
      os << at(i, j);
    }
  }
  os << ']';
  return os.str();
}

Mat gram_form(const gf::Field& f, unsigned n) {
  Mat g(f, 2 * n);
  for (unsigned i = 0; i < n; ++i) {
    g.set(i, 2 * n - 1 - i, f.neg(1));
    g.set(2 * n - 1 - i, i, 1);
  }
  return g;
}

std::uint32_t form_product(const gf::Field& f, const Vec& u, const Vec& v) {
  if (u.size() != v.size() || u.size() % 2 != 0)
    throw std::invalid_argument("form_product: bad vector sizes");
  const unsigned d = static_cast<unsigned>(u.size()), n = d / 2;
  std::uint32_t acc = 0;
  for (unsigned i = 0; i < d; ++i) {
    std::uint32_t t = f.mul(u[i], v[d - 1 - i]);
    acc = (i < n) ? f.sub(acc, t) : f.add(acc, t);
  }
  return acc;
}

bool is_symplectic(const Mat& m) { return conformal_multiplier(m) == 1; }

std::uint32_t conformal_multiplier(const Mat& m) {
  if (m.dim() % 2 != 0) return 0;
  Mat g = gram_form(m.field(), m.dim() / 2);
  Mat t = m.transpose() * g * m;
  // the form scales by t[0][d-1] / g[0][d-1]; verify globally
  std::uint32_t base = g.at(0, m.dim() - 1);
  std::uint32_t lam = m.field().mul(t.at(0, m.dim() - 1), m.field().inv(base));
  if (lam == 0) return 0;
  return t == g.scaled(lam) ? lam : 0;
}

bool is_conformal(const Mat& m) { return conformal_multiplier(m) != 0; }

std::vector<Mat> sp_generators(unsigned n, const gf::Field& f) {
  if (n == 0) throw std::invalid_argument("sp_generators: rank 0");
  const unsigned d = 2 * n;
  // c runs over a basis of the field over its prime field, so the root
  // subgroups are generated additively
  std::vector<std::uint32_t> cs{1};
  std::uint32_t acc = 1;
  for (unsigned e = 1; e < f.m(); ++e) {
    acc = f.mul(acc, f.generator());
    cs.push_back(acc);
  }
  std::vector<Mat> out;
  for (unsigned t = 0; t + 1 < n; ++t)
    for (std::uint32_t c : cs) {
      Mat up = Mat::identity(f, d);  // basis map e_{t+1} -> e_t direction
      up.set(t, t + 1, c);
      up.set(d - 2 - t, d - 1 - t, f.neg(c));
      out.push_back(up);
      Mat down = Mat::identity(f, d);
      down.set(t + 1, t, c);
      down.set(d - 1 - t, d - 2 - t, f.neg(c));
      out.push_back(down);
    }
  for (std::uint32_t c : cs) {
    Mat up = Mat::identity(f, d);
    up.set(n - 1, n, c);
    out.push_back(up);
    Mat down = Mat::identity(f, d);
    down.set(n, n - 1, c);
    out.push_back(down);
  }
  return out;
}

Mat diagonal_twist_element(unsigned n, const gf::Field& f) {
  Mat m = Mat::identity(f, 2 * n);
  std::uint32_t u = f.smallest_nonsquare();
  for (unsigned i = 0; i < n; ++i) m.set(i, i, u);
  return m;
}

Mat entrywise_power(const Mat& m, std::uint32_t q1) {
  if (q1 < 3 || !m.field().admits_subfield_order(q1))
    throw std::invalid_argument("entrywise_power: not a subfield order");
  Mat r(m.field(), m.dim());
  for (unsigned i = 0; i < m.dim(); ++i)
    for (unsigned j = 0; j < m.dim(); ++j)
      if (m.at(i, j) != 0) r.set(i, j, m.field().pow(m.at(i, j), q1));
  return r;
}

BigInt sp_group_order(unsigned n, const BigInt& q) {
  BigInt order = big_pow(q, n * n);
  for (unsigned i = 1; i <= n; ++i) order *= big_pow(q, 2 * i) - 1;
  return order;
}

std::vector<Mat> enumerate_group(const std::vector<Mat>& gens, std::uint64_t cap) {
  if (gens.empty()) throw std::invalid_argument("enumerate_group: no generators");
  const gf::Field& f = gens[0].field();
  const unsigned d = gens[0].dim();
  for (const Mat& g : gens)
    if (g.field() != f || g.dim() != d)
      throw std::invalid_argument("enumerate_group: mixed generator shapes");

  std::vector<Mat> out;
  std::set<std::vector<std::uint32_t>> seen;
  out.push_back(Mat::identity(f, d));
  seen.insert(out[0].entries());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const Mat& g : gens) {
      Mat p = out[i] * g;
      if (!seen.insert(p.entries()).second) continue;
      if (out.size() + 1 > cap)
        throw BudgetExceeded("enumerate_group: closure exceeds cap", out.size() + 1, cap);
      out.push_back(std::move(p));
    }
  return out;
}

gf::FqPoly charpoly(const Mat& m) {
  const gf::Field& f = m.field();
  const unsigned d = m.dim();
  if (d > 12) throw std::invalid_argument("charpoly: dimension too large");
  // det(xI - M), expanding row by row; dp is indexed by the used column set
  std::vector<gf::FqPoly> dp(std::size_t{1} << d, gf::FqPoly::zero(f));
  dp[0] = gf::FqPoly::constant(f, 1);
  for (std::uint32_t mask = 0; mask + 1 < (1u << d); ++mask) {
    if (dp[mask].is_zero()) continue;
    const unsigned r = static_cast<unsigned>(__builtin_popcount(mask));
    unsigned below = 0;  // used columns left of c: inversions added = r - below
    for (unsigned c = 0; c < d; ++c) {
      if (mask & (1u << c)) {
        ++below;
        continue;
      }
      gf::FqPoly entry = (r == c) ? gf::FqPoly::x_minus(f, m.at(r, c))
                                  : gf::FqPoly::constant(f, f.neg(m.at(r, c)));
      gf::FqPoly term = dp[mask] * entry;
      if ((r - below) % 2 == 1) term = term.scaled(f.neg(1));
      dp[mask | (1u << c)] = dp[mask | (1u << c)] + term;
    }
  }
  return dp[(std::size_t{1} << d) - 1];
}

namespace {

// square class of the symmetric form <(M - M^{-1})^{size-1} u, v> on a
// complement of ker(N^{size-1}) + N ker(N^{size+1}) inside ker(N^size),
// N = M - eps; checked for well-definedness along the way
classparams::WittClass witt_class_at(const Mat& m, const Mat& minv, int eps, unsigned size,
                                     unsigned expected_count) {
  const gf::Field& f = m.field();
  const unsigned d = m.dim();
  const Mat n = m - Mat::scalar(f, d, f.from_int(eps));
  const Mat aodd = (m - minv).pow(size - 1);

  RowSpace span(f, d);
  std::vector<Vec> s_basis;
  for (const Vec& v : kernel_basis(n.pow(size - 1)))
    if (span.insert(v)) s_basis.push_back(v);
  for (const Vec& v : kernel_basis(n.pow(size + 1))) {
    Vec w = apply(n, v);
    if (span.insert(w)) s_basis.push_back(w);
  }

  const std::vector<Vec> mid = kernel_basis(n.pow(size));
  auto complement = [&](bool reversed) {
    RowSpace cur = span;
    std::vector<Vec> w;
    for (std::size_t i = 0; i < mid.size(); ++i) {
      const Vec& v = mid[reversed ? mid.size() - 1 - i : i];
      if (cur.insert(v)) w.push_back(v);
    }
    return w;
  };
  auto square_class = [&](const std::vector<Vec>& w) {
    std::vector<Vec> gram(w.size(), Vec(w.size()));
    for (std::size_t a = 0; a < w.size(); ++a) {
      Vec aw = apply(aodd, w[a]);
      for (std::size_t b = 0; b < w.size(); ++b) gram[a][b] = form_product(f, aw, w[b]);
    }
    std::uint32_t det = det_of(std::move(gram), f);
    if (det == 0)
      throw std::logic_error("witt_class_at: degenerate form on the complement");
    return f.is_square(det) ? classparams::WittClass::Square : classparams::WittClass::NonSquare;
  };

  const std::vector<Vec> w1 = complement(false), w2 = complement(true);
  if (w1.size() != expected_count || w2.size() != expected_count)
    throw std::logic_error("witt_class_at: complement dimension != block count");
  // the form must vanish between the subspace and any complement
  for (const Vec& s : s_basis) {
    Vec as = apply(aodd, s);
    for (const Vec& w : w1)
      if (form_product(f, as, w) != 0)
        throw std::logic_error("witt_class_at: form does not vanish on the base subspace");
  }
  classparams::WittClass c1 = square_class(w1), c2 = square_class(w2);
  if (c1 != c2) throw std::logic_error("witt_class_at: square class depends on the complement");
  return c1;
}

}  // namespace

classparams::SpClassParam wall_params_of(const Mat& m) {
  const gf::Field& f = m.field();
  const unsigned d = m.dim();
  if (d % 2 != 0 || !is_symplectic(m))
    throw std::invalid_argument("wall_params_of: matrix does not preserve the form");
  const Mat minv = m.inverse();

  classparams::SpClassParam::MultMap mult;
  classparams::SpClassParam::PsiMap psi_plus, psi_minus;
  for (const auto& [poly, poly_mult] : gf::factor_poly(charpoly(m))) {
    (void)poly_mult;
    const unsigned deg = static_cast<unsigned>(poly.degree());
    gf::FrobOrbit orbit(poly);
    // r[j] = dim ker P(M)^j grows strictly until it stalls
    const Mat pm = eval_at(poly, m);
    std::vector<unsigned> r{0};
    Mat pw = Mat::identity(f, d);
    do {
      pw = pw * pm;
      r.push_back(d - rank_of(pw));
    } while (r[r.size() - 1] != r[r.size() - 2]);
    r.push_back(r.back());

    int eps = orbit.is_unit_orbit(1) ? 1 : (orbit.is_unit_orbit(-1) ? -1 : 0);
    for (unsigned j = 1; j + 1 < r.size(); ++j) {
      unsigned blocks = 2 * r[j] - r[j - 1] - r[j + 1];
      if (blocks == 0) continue;
      if (blocks % deg != 0)
        throw std::logic_error("wall_params_of: block count not divisible by the degree");
      blocks /= deg;
      mult[{orbit, j}] = blocks;
      if (eps != 0 && j % 2 == 0) {
        classparams::WittClass wc = witt_class_at(m, minv, eps, j, blocks);
        (eps == 1 ? psi_plus : psi_minus)[j / 2] = wc;
      }
    }
  }
  return classparams::SpClassParam(d / 2, f, std::move(mult), std::move(psi_plus),
                                   std::move(psi_minus));
}

std::map<classparams::SpClassParam, std::uint64_t> oracle_class_census(
    const std::vector<Mat>& group) {
  std::map<classparams::SpClassParam, std::uint64_t> out;
  for (const Mat& m : group) ++out[wall_params_of(m)];
  return out;
}

BigInt oracle_invariant_count(const std::vector<Mat>& group, const classparams::AutSpec& aut) {
  if (group.empty()) throw std::invalid_argument("oracle_invariant_count: empty group");
  const gf::Field& f = group[0].field();
  if (aut.q1 < 3 || !f.admits_subfield_order(aut.q1))
    throw std::invalid_argument("oracle_invariant_count: bad subfield order");
  std::map<classparams::SpClassParam, Mat> reps;
  for (const Mat& m : group) reps.emplace(wall_params_of(m), m);

  const Mat twist = diagonal_twist_element(group[0].dim() / 2, f);
  const Mat twist_inv = twist.inverse();
  BigInt count = 0;
  for (const auto& [param, rep] : reps) {
    Mat img = entrywise_power(rep, aut.q1);
    if (aut.diagonal) img = twist * img * twist_inv;
    if (wall_params_of(img) == param) ++count;
  }
  return count;
}

}  // namespace sympcount::matgrp
