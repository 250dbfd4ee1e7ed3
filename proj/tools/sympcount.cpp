// Command-line front end over the exact counting toolkit: class-parameter
// counts with matrix-oracle diffs, generating-function identities, symbol
// tabulations, and the twisted Weyl-group structure checks.  Reports are
// byte-identical across runs with the same configuration; timings go to
// stderr only.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sympcount/bigint.hpp"
#include "sympcount/budget.hpp"
#include "sympcount/classparams.hpp"
#include "sympcount/gf.hpp"
#include "sympcount/matgrp.hpp"
#include "sympcount/series.hpp"
#include "sympcount/symbols.hpp"
#include "sympcount/weyl.hpp"

using json = nlohmann::ordered_json;
using namespace sympcount;

namespace {

struct CheckRow {
  std::string name;
  std::string status;  // pass | fail | skipped-budget
  json detail;         // info (pass), witness (fail), reason (skipped-budget)
  std::uint64_t ms = 0;
};

CheckRow pass_row(std::string name, json info = nullptr) {
  return {std::move(name), "pass", std::move(info), 0};
}
// a failure always carries a witness
CheckRow fail_row(std::string name, json witness) {
  if (witness.is_null()) witness = json{{"note", "no further data"}};
  return {std::move(name), "fail", std::move(witness), 0};
}
CheckRow budget_row(std::string name, const std::string& reason) {
  return {std::move(name), "skipped-budget", json{{"reason", reason}}, 0};
}

struct Table {
  std::string name;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string command;
  json params;
  std::vector<CheckRow> checks;
  json values;  // json payload; tables carry the tsv payload
  std::vector<Table> tables;

  int exit_code() const {
    bool fail = false, skipped = false;
    for (const CheckRow& c : checks) {
      if (c.status == "fail") fail = true;
      if (c.status == "skipped-budget") skipped = true;
    }
    return fail ? 1 : (skipped ? 2 : 0);
  }
};

struct Output {
  std::string format = "json";
  std::string out_path;
  bool timings = false;
};

void render(const Report& r, const Output& o) {
  std::string text;
  if (o.format == "json") {
    json j;
    j["schema"] = "sympcount-report/1";
    j["command"] = r.command;
    j["params"] = r.params;
    if (!r.values.is_null()) j["values"] = r.values;
    json checks = json::array();
    for (const CheckRow& c : r.checks) {
      json row;
      row["name"] = c.name;
      row["status"] = c.status;
      if (!c.detail.is_null()) {
        if (c.status == "pass")
          row["info"] = c.detail;
        else if (c.status == "fail")
          row["witness"] = c.detail;
        else
          row["reason"] = c.detail;
      }
      checks.push_back(std::move(row));
    }
    j["checks"] = std::move(checks);
    text = j.dump(2);
    text += '\n';
  } else {
    std::ostringstream os;
    for (const CheckRow& c : r.checks) os << "check\t" << c.name << '\t' << c.status << '\n';
    for (const Table& t : r.tables)
      for (const auto& row : t.rows) {
        os << t.name;
        for (const std::string& cell : row) os << '\t' << cell;
        os << '\n';
      }
    text = os.str();
  }
  if (o.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + o.out_path);
    f << text;
  }
  if (o.timings)
    for (const CheckRow& c : r.checks)
      if (c.ms > 0) std::cerr << "timing\t" << c.name << '\t' << c.ms << "ms\n";
}

std::uint32_t ipow_u32(std::uint32_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= b;
  return static_cast<std::uint32_t>(r);
}

gf::Field field_for(std::uint32_t q) {
  if (q < 3 || q % 2 == 0) throw std::invalid_argument("q must be an odd prime power >= 3");
  std::uint32_t p = 0;
  for (std::uint32_t c = 3; c * c <= q; c += 2)
    if (q % c == 0) {
      p = c;
      break;
    }
  if (p == 0) p = q;  // prime
  std::uint32_t m = 0;
  std::uint64_t t = 1;
  while (t < q) {
    t *= p;
    ++m;
  }
  if (t != q) throw std::invalid_argument("q must be a prime power");
  return gf::Field(p, m);
}

std::vector<std::uint32_t> subfield_orders(const gf::Field& f) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t k = 1; k <= f.m(); ++k)
    if (f.m() % k == 0) out.push_back(ipow_u32(f.p(), k));
  return out;
}

json upoly_json(const series::UPoly& p) {
  json a = json::array();
  if (p.is_zero()) {
    a.push_back("0");
    return a;
  }
  for (const BigInt& c : p.coeffs()) a.push_back(c.str());
  return a;
}

std::string upoly_csv(const series::UPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (i) s += ',';
    s += p.coeffs()[i].str();
  }
  return s;
}

std::uint64_t big_to_u64_sat(const BigInt& v) {
  if (v > BigInt(~0ULL)) return ~0ULL;
  return v.convert_to<std::uint64_t>();
}

// ---------------------------------------------------------------- classes

struct GroupData {
  std::vector<matgrp::Mat> elements;
  std::map<classparams::SpClassParam, std::uint64_t> census;
};

GroupData build_group(unsigned n, const gf::Field& field, std::uint64_t cap) {
  BigInt expect = matgrp::sp_group_order(n, BigInt(static_cast<long long>(field.q())));
  if (expect > BigInt(cap))
    throw BudgetExceeded("matrix group closure", big_to_u64_sat(expect), cap);
  GroupData g;
  g.elements = matgrp::enumerate_group(matgrp::sp_generators(n, field), cap);
  g.census = matgrp::oracle_class_census(g.elements);
  return g;
}

// Walks the sorted enumerated list against the sorted census keys.
CheckRow census_diff_row(const std::string& name,
                         const std::vector<classparams::SpClassParam>& list,
                         const GroupData& g) {
  json missing = json::array(), extra = json::array();
  auto it = g.census.begin();
  std::size_t i = 0;
  while (i < list.size() || it != g.census.end()) {
    if (it == g.census.end() || (i < list.size() && list[i] < it->first)) {
      missing.push_back(list[i].to_canonical_string());
      ++i;
    } else if (i == list.size() || it->first < list[i]) {
      extra.push_back(it->first.to_canonical_string());
      ++it;
    } else {
      ++i;
      ++it;
    }
  }
  std::uint64_t total = 0;
  for (const auto& kv : g.census) total += kv.second;
  bool sizes_ok = total == g.elements.size();
  if (missing.empty() && extra.empty() && sizes_ok)
    return pass_row(name, json{{"classes", g.census.size()},
                               {"group_order", g.elements.size()}});
  return fail_row(name, json{{"missing_in_census", missing},
                             {"not_enumerated", extra},
                             {"class_sizes_sum_to_group_order", sizes_ok}});
}

Report run_classes_count(unsigned n, std::uint32_t q, bool oracle, std::uint64_t cap,
                         std::uint64_t budget) {
  Report r;
  r.command = "classes count";
  r.params = json{{"n", n}, {"q", q}, {"oracle", oracle}, {"cap", cap}, {"budget", budget}};
  gf::Field field = field_for(q);
  auto list = classparams::enumerate_params(n, field, budget);
  r.values["count"] = list.size();
  r.tables.push_back({"count", {{std::to_string(list.size())}}});
  r.checks.push_back(pass_row("enumerate-parameters", json{{"count", list.size()}}));
  if (oracle) {
    try {
      GroupData g = build_group(n, field, cap);
      r.values["oracle_count"] = g.census.size();
      json census = json::array();
      Table tab{"census", {}};
      for (const auto& kv : g.census) {
        census.push_back(json{{"key", kv.first.to_canonical_string()}, {"size", kv.second}});
        tab.rows.push_back({kv.first.to_canonical_string(), std::to_string(kv.second)});
      }
      r.values["census"] = std::move(census);
      r.tables.push_back(std::move(tab));
      r.checks.push_back(census_diff_row("oracle-census-agrees", list, g));
    } catch (const BudgetExceeded& e) {
      r.checks.push_back(budget_row("oracle-census-agrees", e.what()));
    }
  }
  return r;
}

Report run_classes_invariant(unsigned n, std::uint32_t q, std::uint32_t q1, bool diagonal,
                             bool oracle, std::uint64_t cap, std::uint64_t budget) {
  Report r;
  r.command = "classes invariant";
  r.params = json{{"n", n},       {"q", q},     {"q1", q1},       {"diagonal", diagonal},
                  {"oracle", oracle}, {"cap", cap}, {"budget", budget}};
  gf::Field field = field_for(q);
  if (!field.admits_subfield_order(q1))
    throw std::invalid_argument("q1 must be a subfield order of q");
  classparams::AutSpec aut{q1, diagonal};
  BigInt count = classparams::count_invariant(n, field, aut, budget);
  r.values["invariant_count"] = count.str();
  r.tables.push_back({"invariant", {{count.str()}}});
  r.checks.push_back(pass_row("count-invariant", json{{"value", count.str()}}));
  if (oracle) {
    try {
      GroupData g = build_group(n, field, cap);
      BigInt got = matgrp::oracle_invariant_count(g.elements, aut);
      r.values["oracle_invariant_count"] = got.str();
      r.tables.push_back({"oracle", {{got.str()}}});
      if (got == count)
        r.checks.push_back(pass_row("oracle-invariant-agrees", json{{"value", got.str()}}));
      else
        r.checks.push_back(fail_row("oracle-invariant-agrees",
                                    json{{"combinatorial", count.str()}, {"oracle", got.str()}}));
    } catch (const BudgetExceeded& e) {
      r.checks.push_back(budget_row("oracle-invariant-agrees", e.what()));
    }
  }
  return r;
}

Report run_classes_list(unsigned n, std::uint32_t q, std::uint64_t budget) {
  Report r;
  r.command = "classes list";
  r.params = json{{"n", n}, {"q", q}, {"budget", budget}};
  gf::Field field = field_for(q);
  auto list = classparams::enumerate_params(n, field, budget);
  json keys = json::array();
  Table tab{"class", {}};
  for (const auto& p : list) {
    keys.push_back(p.to_canonical_string());
    tab.rows.push_back({p.to_canonical_string()});
  }
  r.values["count"] = list.size();
  r.values["classes"] = std::move(keys);
  r.tables.push_back(std::move(tab));
  r.checks.push_back(pass_row("enumerate-parameters", json{{"count", list.size()}}));
  return r;
}

// ---------------------------------------------------------------- series

CheckRow series_report_row(std::string name, const series::SeriesReport& rep) {
  if (rep.ok) return pass_row(std::move(name));
  json w = json::array();
  for (const auto& m : rep.mismatches)
    w.push_back(json{{"index", m.index}, {"lhs", m.lhs.to_string()}, {"rhs", m.rhs.to_string()}});
  return fail_row(std::move(name), json{{"mismatches", w}});
}

Report run_series(const std::string& kind, unsigned order) {
  Report r;
  r.command = "series " + kind;
  r.params = json{{"order", order}};
  if (kind == "genfun" || kind == "gend") {
    series::TSeries s = kind == "genfun" ? series::build_genfun_c(order)
                                         : series::build_gend(order);
    json coeffs = json::array(), pretty = json::array();
    Table tab{"coeff", {}};
    for (unsigned k = 0; k <= order; ++k) {
      coeffs.push_back(upoly_json(s.coeff(k)));
      pretty.push_back(s.coeff(k).to_string());
      tab.rows.push_back({std::to_string(k), upoly_csv(s.coeff(k))});
    }
    r.values["coefficients"] = std::move(coeffs);
    r.values["pretty"] = std::move(pretty);
    r.tables.push_back(std::move(tab));
    r.checks.push_back(pass_row("emit-coefficients", json{{"terms", order + 1}}));
  } else if (kind == "jacobi") {
    r.checks.push_back(series_report_row("triple-product-identity", series::verify_jacobi(order)));
  } else {  // main-identity
    r.checks.push_back(
        series_report_row("genfun-equals-gend", series::verify_main_identity(order)));
  }
  return r;
}

// ---------------------------------------------------------------- symbols

Report run_symbols_phi(unsigned n, std::uint64_t budget) {
  Report r;
  r.command = "symbols phi";
  r.params = json{{"n", n}, {"budget", budget}};
  auto tab = symbols::phi_all(n, budget);
  r.values["n"] = n;
  r.values["phi_n"] = tab[n];
  json table = json::array();
  Table t{"phi", {}};
  for (unsigned k = 0; k <= n; ++k) {
    table.push_back(json::array({k, tab[k]}));
    t.rows.push_back({std::to_string(k), std::to_string(tab[k])});
  }
  r.values["table"] = std::move(table);
  r.tables.push_back(std::move(t));
  r.checks.push_back(pass_row("tabulate-odd-defect-counts", json{{"max_rank", n}}));
  return r;
}

Report run_symbols_degenerate(unsigned m, std::uint64_t budget) {
  Report r;
  r.command = "symbols degenerate";
  r.params = json{{"m", m}, {"budget", budget}};
  series::TSeries part = series::build_partition(m);
  json table = json::array(), bad = json::array();
  Table t{"degenerate", {}};
  for (unsigned k = 0; k <= m; ++k) {
    std::uint64_t cnt = symbols::count_degenerate(2 * k, budget);
    BigInt pk = part.coeff(k).eval(BigInt(0));
    table.push_back(json::array({k, cnt}));
    t.rows.push_back({std::to_string(k), std::to_string(cnt)});
    if (BigInt(cnt) != pk)
      bad.push_back(json{{"m", k}, {"count", cnt}, {"partitions", pk.str()}});
  }
  r.values["table"] = std::move(table);
  r.tables.push_back(std::move(t));
  if (bad.empty())
    r.checks.push_back(pass_row("degenerate-equals-partitions", json{{"max_m", m}}));
  else
    r.checks.push_back(fail_row("degenerate-equals-partitions", json{{"mismatches", bad}}));
  return r;
}

Report run_symbols_phi_series(unsigned n, std::uint64_t budget) {
  Report r;
  r.command = "symbols phi-series";
  r.params = json{{"n", n}, {"budget", budget}};
  r.checks.push_back(
      series_report_row("odd-defect-equals-series", symbols::verify_phi_series(n, budget)));
  return r;
}

Report run_symbols_dprime(unsigned n, std::uint64_t budget) {
  Report r;
  r.command = "symbols dprime";
  r.params = json{{"n", n}, {"budget", budget}};
  series::TSeries gend = series::build_gend(n);
  json bad = json::array();
  Table t{"dprime", {}};
  for (unsigned k = 0; k <= n; ++k) {
    series::UPoly conv = symbols::dprime_convolution(k, budget);
    t.rows.push_back({std::to_string(k), upoly_csv(conv)});
    if (conv != gend.coeff(k))
      bad.push_back(json{{"index", k},
                         {"convolution", conv.to_string()},
                         {"closed_form", gend.coeff(k).to_string()}});
  }
  r.tables.push_back(std::move(t));
  if (bad.empty())
    r.checks.push_back(pass_row("convolution-equals-closed-form", json{{"max_n", n}}));
  else
    r.checks.push_back(fail_row("convolution-equals-closed-form", json{{"mismatches", bad}}));
  return r;
}

// ---------------------------------------------------------------- weyl

CheckRow bool_row(const std::string& name, bool ok, const json& witness) {
  return ok ? pass_row(name) : fail_row(name, witness);
}

// All elements of the cyclic-by-symmetric wreath product with cyclic part f
// and n slots, by decoding mixed-radix codes under each permutation.
std::vector<weyl::WreathElem> all_wreath_elems(std::uint64_t f, unsigned n) {
  std::vector<weyl::WreathElem> out;
  std::vector<unsigned> perm(n);
  for (unsigned i = 0; i < n; ++i) perm[i] = i;
  std::uint64_t total = 1;
  for (unsigned i = 0; i < n; ++i) total *= f;
  do {
    for (std::uint64_t code = 0; code < total; ++code) {
      weyl::WreathElem e{std::vector<std::uint64_t>(n), perm};
      std::uint64_t c = code;
      for (unsigned i = 0; i < n; ++i) {
        e.base[i] = c % f;
        c /= f;
      }
      out.push_back(std::move(e));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

CheckRow mu_homomorphism_row(const std::string& name, std::uint64_t f, unsigned max_n) {
  for (unsigned n = 1; n <= max_n; ++n) {
    auto elems = all_wreath_elems(f, n);
    for (const auto& x : elems)
      for (const auto& y : elems) {
        int lhs = weyl::wreath_mu(f, weyl::wreath_compose(f, x, y));
        int rhs = weyl::wreath_mu(f, x) * weyl::wreath_mu(f, y);
        if (lhs != rhs)
          return fail_row(name, json{{"n", n},
                                     {"x_base", x.base},
                                     {"y_base", y.base},
                                     {"product_value", lhs},
                                     {"value_product", rhs}});
      }
  }
  return pass_row(name, json{{"f", f}, {"max_n", max_n}});
}

CheckRow torus_order_row(const std::string& name, const weyl::TwistSpec& spec,
                         std::uint64_t q) {
  BigInt got = weyl::torus_fixed_order(weyl::perm_image(weyl::sylow_twist(spec)), q);
  BigInt per = big_pow(BigInt(static_cast<long long>(q)), spec.d0) - spec.eps;
  BigInt expect = big_pow(per, spec.a);
  if (got == expect) return pass_row(name, json{{"order", got.str()}});
  return fail_row(name, json{{"determinant_route", got.str()}, {"product_route", expect.str()}});
}

CheckRow stabilizer_grid_row(const std::string& name, unsigned l, unsigned d, std::uint64_t q,
                             std::uint64_t budget) {
  weyl::TwistSpec spec(l, d, true);
  BigInt qb = big_pow(BigInt(static_cast<long long>(q)), spec.d0) - spec.eps;
  std::uint64_t Q = big_to_u64_sat(qb);
  BigInt tuples = big_pow(qb, spec.a);
  std::vector<std::vector<std::uint64_t>> xis;
  if (tuples <= BigInt(2048)) {
    std::uint64_t total = tuples.convert_to<std::uint64_t>();
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<std::uint64_t> xi(spec.a);
      std::uint64_t c = code;
      for (unsigned i = 0; i < spec.a; ++i) {
        xi[i] = c % Q;
        c /= Q;
      }
      xis.push_back(std::move(xi));
    }
  } else {
    std::mt19937_64 rng(0x5eed0ULL + l * 1000003ULL + d * 10007ULL + q);
    for (int s = 0; s < 64; ++s) {
      std::vector<std::uint64_t> xi(spec.a);
      for (auto& v : xi) v = rng() % Q;
      xis.push_back(std::move(xi));
    }
  }
  for (const auto& xi : xis) {
    auto shape = weyl::stabilizer_shape(spec, q, xi, budget);
    if (!shape.match)
      return fail_row(name, json{{"xi", xi},
                                 {"formula", shape.predicted_order.str()},
                                 {"brute_force", shape.brute_force_order.str()}});
  }
  return pass_row(name, json{{"tuples", xis.size()},
                             {"exhaustive", tuples <= BigInt(2048)}});
}

Report run_weyl_check(unsigned l, unsigned d, std::vector<std::uint64_t> qs,
                      std::uint64_t budget) {
  Report r;
  r.command = "weyl check";
  if (qs.empty()) qs = {3, 5, 9};
  for (std::uint64_t q : qs)
    if (q < 3 || q % 2 == 0) throw std::invalid_argument("q must be odd and >= 3");
  r.params = json{{"l", l}, {"d", d}, {"q", qs}, {"budget", budget}};
  weyl::TwistSpec spec(l, d, true);
  r.values["d0"] = spec.d0;
  r.values["a"] = spec.a;
  r.values["eps"] = spec.eps;
  Table vt{"value", {}};
  vt.rows.push_back({"d0", std::to_string(spec.d0)});
  vt.rows.push_back({"a", std::to_string(spec.a)});
  vt.rows.push_back({"eps", std::to_string(spec.eps)});
  try {
    auto rep = weyl::extended_weyl_checks(spec, budget);
    json w = json{{"failures", rep.failures}};
    r.checks.push_back(bool_row("image-matches-centralizer", rep.image_matches_centralizer, w));
    r.checks.push_back(bool_row("kernel-basis", rep.hd_elementary_abelian, w));
    r.checks.push_back(bool_row("pk-squares", rep.pk_squares_match, w));
    r.checks.push_back(bool_row("braid-relations", rep.braid_relations_hold, w));
    r.checks.push_back(bool_row("c1-witness", rep.c1_found, w));
    r.values["v_order"] = rep.v_order;
    r.values["kernel_order"] = rep.h_order;
    r.values["vd_order"] = rep.vd_order;
    r.values["hd_order"] = rep.hd_order;
    r.values["cbar1"] = rep.cbar1.to_string();
    vt.rows.push_back({"v_order", std::to_string(rep.v_order)});
    vt.rows.push_back({"vd_order", std::to_string(rep.vd_order)});
    vt.rows.push_back({"hd_order", std::to_string(rep.hd_order)});
    vt.rows.push_back({"cbar1", rep.cbar1.to_string()});
  } catch (const BudgetExceeded& e) {
    r.checks.push_back(budget_row("extended-structure", e.what()));
  }
  for (std::uint64_t q : qs) {
    r.checks.push_back(torus_order_row("torus-order-q" + std::to_string(q), spec, q));
    BigInt qb = big_pow(BigInt(static_cast<long long>(q)), spec.d0) - spec.eps;
    std::string sname = "stabilizer-shapes-q" + std::to_string(q);
    try {
      std::vector<std::uint64_t> zero(spec.a, 0), one(spec.a, 1);
      auto s0 = weyl::stabilizer_shape(spec, q, zero, budget);
      auto s1 = weyl::stabilizer_shape(spec, q, one, budget);
      if (s0.match && s1.match)
        r.checks.push_back(pass_row(sname, json{{"zero_order", s0.predicted_order.str()},
                                                {"ones_order", s1.predicted_order.str()}}));
      else
        r.checks.push_back(fail_row(
            sname, json{{"zero", json{{"formula", s0.predicted_order.str()},
                                      {"brute_force", s0.brute_force_order.str()}}},
                        {"ones", json{{"formula", s1.predicted_order.str()},
                                      {"brute_force", s1.brute_force_order.str()}}}}));
    } catch (const BudgetExceeded& e) {
      r.checks.push_back(budget_row(sname, e.what()));
    }
  }
  std::uint64_t f = 2 * spec.d0;
  unsigned mun = spec.a < 3 ? spec.a : 3;
  if (f <= 6)
    r.checks.push_back(
        mu_homomorphism_row("wreath-sign-homomorphism", f, mun == 0 ? 1 : mun));
  r.tables.push_back(std::move(vt));
  return r;
}

// ---------------------------------------------------------------- suite

CheckRow classes_oracle_task(const std::string& name, unsigned n, std::uint32_t q,
                             std::uint64_t cap, std::uint64_t budget) {
  gf::Field field = field_for(q);
  auto list = classparams::enumerate_params(n, field, budget);
  GroupData g = build_group(n, field, cap);
  CheckRow census = census_diff_row(name, list, g);
  if (census.status != "pass") return census;
  json bad = json::array();
  unsigned cases = 0;
  for (std::uint32_t q1 : subfield_orders(field))
    for (bool diag : {false, true}) {
      classparams::AutSpec aut{q1, diag};
      BigInt lhs = classparams::count_invariant(n, field, aut, budget);
      BigInt rhs = matgrp::oracle_invariant_count(g.elements, aut);
      ++cases;
      if (lhs != rhs)
        bad.push_back(json{{"q1", q1},
                           {"diagonal", diag},
                           {"combinatorial", lhs.str()},
                           {"oracle", rhs.str()}});
    }
  if (!bad.empty()) return fail_row(name, json{{"invariant_mismatches", bad}});
  return pass_row(name, json{{"classes", g.census.size()}, {"aut_cases", cases}});
}

// The series identity concerns the composite automorphism: diagonal twist on
// top of the entrywise power map.
CheckRow invariant_genfun_task(const std::string& name, unsigned n, std::uint32_t q,
                               std::uint64_t budget) {
  gf::Field field = field_for(q);
  series::UPoly cn = series::build_genfun_c(n).coeff(n);
  json bad = json::array();
  unsigned cases = 0;
  for (std::uint32_t q1 : subfield_orders(field)) {
    BigInt lhs = classparams::count_invariant(n, field, {q1, true}, budget);
    BigInt rhs = cn.eval(BigInt(q1));
    ++cases;
    if (lhs != rhs)
      bad.push_back(json{{"q1", q1}, {"count", lhs.str()}, {"series_value", rhs.str()}});
  }
  if (!bad.empty()) return fail_row(name, json{{"mismatches", bad}});
  return pass_row(name, json{{"cases", cases}});
}

CheckRow weyl_structure_task(const std::string& name, unsigned l, unsigned d,
                             std::uint64_t budget) {
  weyl::TwistSpec spec(l, d, true);
  auto rep = weyl::extended_weyl_checks(spec, budget);
  if (!rep.all_ok()) return fail_row(name, json{{"failures", rep.failures}});
  for (std::uint64_t q : {3ull, 5ull, 9ull}) {
    CheckRow t = torus_order_row(name, spec, q);
    if (t.status != "pass") return t;
  }
  return pass_row(name, json{{"vd_order", rep.vd_order}, {"cbar1", rep.cbar1.to_string()}});
}

Report run_suite(unsigned jobs, std::uint64_t cap, std::uint64_t budget, bool timings) {
  Report r;
  r.command = "suite";
  r.params = json{{"jobs", jobs}, {"cap", cap}, {"budget", budget}};
  std::vector<std::pair<std::string, std::function<CheckRow(const std::string&)>>> tasks;
  auto add = [&tasks](std::string name, std::function<CheckRow(const std::string&)> fn) {
    tasks.emplace_back(std::move(name), std::move(fn));
  };

  struct NQ {
    unsigned n;
    std::uint32_t q;
  };
  for (NQ g : {NQ{1, 3}, NQ{1, 5}, NQ{1, 9}, NQ{2, 3}})
    add("classes-oracle-n" + std::to_string(g.n) + "-q" + std::to_string(g.q),
        [g, cap, budget](const std::string& nm) {
          return classes_oracle_task(nm, g.n, g.q, cap, budget);
        });
  for (unsigned n = 1; n <= 4; ++n)
    for (std::uint32_t q : {3u, 5u, 9u, 27u})
      add("classes-invariant-genfun-n" + std::to_string(n) + "-q" + std::to_string(q),
          [n, q, budget](const std::string& nm) {
            return invariant_genfun_task(nm, n, q, budget);
          });

  add("series-fplus-partition-oracle", [](const std::string& nm) {
    return series_report_row(
        nm, series::compare(series::build_fplus(20), series::build_fplus_by_partitions(20)));
  });
  add("series-jacobi", [](const std::string& nm) {
    return series_report_row(nm, series::verify_jacobi(60));
  });
  add("series-main-identity", [](const std::string& nm) {
    return series_report_row(nm, series::verify_main_identity(30));
  });

  add("symbols-phi-series", [budget](const std::string& nm) {
    return series_report_row(nm, symbols::verify_phi_series(40, budget));
  });
  add("symbols-degenerate", [budget](const std::string& nm) {
    series::TSeries part = series::build_partition(10);
    json bad = json::array();
    for (unsigned k = 0; k <= 10; ++k) {
      std::uint64_t cnt = symbols::count_degenerate(2 * k, budget);
      if (BigInt(cnt) != part.coeff(k).eval(BigInt(0)))
        bad.push_back(json{{"m", k}, {"count", cnt}});
    }
    if (!bad.empty()) return fail_row(nm, json{{"mismatches", bad}});
    return pass_row(nm, json{{"max_m", 10}});
  });
  add("symbols-dprime", [budget](const std::string& nm) {
    series::TSeries gend = series::build_gend(12);
    json bad = json::array();
    for (unsigned k = 0; k <= 12; ++k) {
      series::UPoly conv = symbols::dprime_convolution(k, budget);
      if (conv != gend.coeff(k))
        bad.push_back(json{{"index", k},
                           {"convolution", conv.to_string()},
                           {"closed_form", gend.coeff(k).to_string()}});
    }
    if (!bad.empty()) return fail_row(nm, json{{"mismatches", bad}});
    return pass_row(nm, json{{"max_n", 12}});
  });

  for (unsigned l = 1; l <= 5; ++l)
    for (unsigned d = 1; d <= 2 * l; ++d) {
      if ((2 * l) % d != 0) continue;
      add("weyl-structure-l" + std::to_string(l) + "-d" + std::to_string(d),
          [l, d, budget](const std::string& nm) {
            return weyl_structure_task(nm, l, d, budget);
          });
    }

  struct LDQ {
    unsigned l, d;
    std::uint64_t q;
  };
  for (LDQ g : {LDQ{2, 2, 3}, LDQ{2, 4, 3}, LDQ{3, 2, 3}, LDQ{3, 6, 3}, LDQ{4, 4, 3},
                LDQ{2, 2, 5}, LDQ{3, 3, 5}, LDQ{4, 2, 3}})
    add("weyl-stabilizer-l" + std::to_string(g.l) + "-d" + std::to_string(g.d) + "-q" +
            std::to_string(g.q),
        [g, budget](const std::string& nm) {
          return stabilizer_grid_row(nm, g.l, g.d, g.q, budget);
        });

  for (std::uint64_t f : {2ull, 4ull, 6ull})
    add("weyl-mu-f" + std::to_string(f),
        [f](const std::string& nm) { return mu_homomorphism_row(nm, f, 3); });

  std::vector<CheckRow> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      auto t0 = std::chrono::steady_clock::now();
      CheckRow row;
      try {
        row = tasks[i].second(tasks[i].first);
      } catch (const BudgetExceeded& e) {
        row = budget_row(tasks[i].first, e.what());
      } catch (const std::exception& e) {
        row = fail_row(tasks[i].first, json{{"exception", e.what()}});
      }
      row.ms = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                              std::chrono::steady_clock::now() - t0)
                                              .count());
      if (!timings) row.ms = 0;
      results[i] = std::move(row);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  r.checks = std::move(results);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification toolkit for symplectic class counting"};
  app.require_subcommand(1);
  app.fallthrough();

  Output out;
  std::uint64_t budget = default_budget();
  std::uint64_t cap = 200000;
  app.add_option("--format", out.format, "report format")
      ->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("--out", out.out_path, "write the report to a file instead of stdout");
  app.add_flag("--timings", out.timings, "print wall-clock timings to stderr");
  app.add_option("--budget", budget, "enumeration work budget")->check(CLI::PositiveNumber);
  app.add_option("--cap", cap, "matrix group size cap for oracle runs")
      ->check(CLI::PositiveNumber);

  unsigned n = 1, m = 10, order = 30, l = 2, d = 2, jobs = 1;
  std::uint32_t q = 3, q1 = 3;
  bool diagonal = false, oracle = false;
  std::vector<std::uint64_t> qs;

  std::optional<Report> report;

  auto* classes = app.add_subcommand("classes", "class parameter counts and lists");
  classes->require_subcommand(1);
  classes->fallthrough();
  auto* ccount = classes->add_subcommand("count", "number of classes, optionally vs the oracle");
  ccount->fallthrough();
  ccount->add_option("--n", n, "half rank")->required()->check(CLI::PositiveNumber);
  ccount->add_option("--q", q, "field size")->required();
  ccount->add_flag("--oracle", oracle, "also build the matrix group and diff the census");
  ccount->callback([&] { report = run_classes_count(n, q, oracle, cap, budget); });
  auto* cinv = classes->add_subcommand("invariant", "classes fixed by an automorphism");
  cinv->fallthrough();
  cinv->add_option("--n", n, "half rank")->required()->check(CLI::PositiveNumber);
  cinv->add_option("--q", q, "field size")->required();
  cinv->add_option("--q1", q1, "subfield size of the entrywise power map")->required();
  cinv->add_flag("--diagonal", diagonal, "compose with the diagonal automorphism");
  cinv->add_flag("--oracle", oracle, "also decide invariance on the matrix side");
  cinv->callback(
      [&] { report = run_classes_invariant(n, q, q1, diagonal, oracle, cap, budget); });
  auto* clist = classes->add_subcommand("list", "canonical keys of all classes");
  clist->fallthrough();
  clist->add_option("--n", n, "half rank")->required()->check(CLI::PositiveNumber);
  clist->add_option("--q", q, "field size")->required();
  clist->callback([&] { report = run_classes_list(n, q, budget); });

  auto* ser = app.add_subcommand("series", "generating functions and identities");
  ser->require_subcommand(1);
  ser->fallthrough();
  for (const char* kind : {"genfun", "gend", "jacobi", "main-identity"}) {
    auto* sub = ser->add_subcommand(kind, "");
    sub->fallthrough();
    sub->add_option("--order", order, "truncation order");
    sub->callback([&, kind] { report = run_series(kind, order); });
  }

  auto* sym = app.add_subcommand("symbols", "symbol statistics");
  sym->require_subcommand(1);
  sym->fallthrough();
  auto* sphi = sym->add_subcommand("phi", "odd-defect class counts by rank");
  sphi->fallthrough();
  sphi->add_option("--n", n, "maximum rank")->required();
  sphi->callback([&] { report = run_symbols_phi(n, budget); });
  auto* sdeg = sym->add_subcommand("degenerate", "degenerate class counts vs partitions");
  sdeg->fallthrough();
  sdeg->add_option("--m", m, "maximum half rank");
  sdeg->callback([&] { report = run_symbols_degenerate(m, budget); });
  auto* sps = sym->add_subcommand("phi-series", "odd-defect counts vs the series route");
  sps->fallthrough();
  sps->add_option("--n", n, "maximum rank")->required();
  sps->callback([&] { report = run_symbols_phi_series(n, budget); });
  auto* sdp = sym->add_subcommand("dprime", "convolution route vs closed form");
  sdp->fallthrough();
  sdp->add_option("--n", n, "maximum index")->required();
  sdp->callback([&] { report = run_symbols_dprime(n, budget); });

  auto* wey = app.add_subcommand("weyl", "twisted Weyl-group structure");
  wey->require_subcommand(1);
  wey->fallthrough();
  auto* wcheck = wey->add_subcommand("check", "structural assertions for one twist");
  wcheck->fallthrough();
  wcheck->add_option("--l", l, "rank")->required()->check(CLI::PositiveNumber);
  wcheck->add_option("--d", d, "twist order, must divide 2l")->required();
  wcheck->add_option("--q", qs, "field sizes for torus and stabilizer checks");
  wcheck->callback([&] { report = run_weyl_check(l, d, qs, budget); });

  auto* suite = app.add_subcommand("suite", "the full verification battery");
  suite->fallthrough();
  suite->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 64u));
  suite->callback([&] { report = run_suite(jobs, cap, budget, out.timings); });

  auto t0 = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget refused: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  if (!report) return 3;

  try {
    render(*report, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  if (out.timings) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cerr << "timing\ttotal\t" << ms << "ms\n";
  }
  return report->exit_code();
}
