#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "prolate/bounds.hpp"
#include "prolate/corpus.hpp"
#include "prolate/pswf_core.hpp"
#include "prolate/spectral.hpp"
#include "prolate/wkb.hpp"

using namespace prolate;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

// Rows of numbers or strings; every command funnels its output through here so
// CSV and JSON stay in sync.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10e", v.get<double>());
  return buf;
}

void emit(const Table& t, const std::string& format, const std::string& out) {
  std::ostringstream os;
  if (format == "json") {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["table"] = t.name;
    doc["columns"] = t.columns;
    doc["rows"] = t.rows;
    os << doc.dump(2) << "\n";
  } else {
    os << "# prolate " << t.name << " schema_version=" << kSchemaVersion << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell(r[i]);
      os << "\n";
    }
  }
  if (out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << os.str();
  }
}

// Loads from PROLATE_CACHE_DIR when present, otherwise builds (and stores).
PswfBasis get_basis(double c, int n_max) {
  const char* dir = std::getenv("PROLATE_CACHE_DIR");
  if (!dir || !*dir) return build_basis(c, n_max);
  char name[128];
  std::snprintf(name, sizeof name, "basis_c%.17g_n%d.json", c, n_max);
  const auto path = std::filesystem::path(dir) / name;
  if (std::filesystem::exists(path)) return load_basis(path.string());
  auto b = build_basis(c, n_max);
  std::filesystem::create_directories(dir);
  save_basis(b, path.string());
  return b;
}

struct Common {
  double c = NAN;
  int N = -1;
  double s = NAN;
  std::uint64_t seed = 7;
  int grid = 101;
  std::string format = "csv";
  std::string out;
};

double or_default(double v, double d) { return std::isnan(v) ? d : v; }

Table reproduce_example1(const Common& o) {
  const double c = or_default(o.c, 50.0);
  const int N = o.N < 0 ? 50 : o.N;
  const double lam = c;
  const auto b = get_basis(c, N + 90);
  auto tail = [&](int from) {
    double t = 0.0;
    for (int n = from; n <= b.n_max; ++n) {
      const double p = eval_psi(b, n, lam / c);
      t += std::exp(2 * b.log_abs_mu[n]) * p * p;
    }
    return std::sqrt(t);
  };
  Table t{"example1", {"quantity", "lambda", "c", "N", "value"}, {}};
  t.rows.push_back({"legendre_error", lam, c, N, legendre_truncation_error(lam, N)});
  t.rows.push_back({"legendre_error_unweighted", lam, c, N, legendre_truncation_error(lam, N, false)});
  t.rows.push_back({"pswf_error_tail_n_gt_N", lam, c, N, tail(N + 1)});
  t.rows.push_back({"pswf_error_tail_n_ge_N_minus_1", lam, c, N, tail(std::max(N - 1, 0))});
  return t;
}

Table reproduce_table1(const Common& o) {
  const double c = or_default(o.c, 100.0);
  const double ss[6] = {0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  const auto b = get_basis(c, 120);
  Table t{"table1", {"n", "s", "E_n"}, {}};
  std::vector<std::vector<double>> e(9, std::vector<double>(6));
  for (int j = 0; j < 6; ++j) {
    if (!std::isnan(o.s) && o.s != ss[j]) continue;
    const auto w = weierstrass(ss[j], false);
    const auto a = coeffs_auto(w, b, 101);
    for (int i = 0; i < 9; ++i) {
      const int n = 20 + 10 * i;
      // Partial sum over indices 0..n.
      e[i][j] = grid_error(w.sampler, [&](double x) { return truncated_sum(a, b, n + 1, x); });
    }
  }
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (!std::isnan(o.s) && o.s != ss[j]) continue;
      t.rows.push_back({20 + 10 * i, ss[j], e[i][j]});
    }
  }
  return t;
}

Table reproduce_example3(const Common& o) {
  const double c = or_default(o.c, 100.0);
  const double s = or_default(o.s, 1.4);
  const int N_max = o.N < 0 ? 120 : o.N;
  const int n_max = std::max(N_max, static_cast<int>(1.4 * c)) + 20;
  const auto f = weierstrass(s, true);
  const auto b = get_basis(c, n_max);
  const auto sup = psi_sup_norms(b);
  const auto a = coeffs_auto(f, b, N_max);
  // The quoted tail norm is the H^1 one; the H^s tail diverges for this f.
  const double tail = sobolev_tail_norm(f.fourier, 1.0, c);
  Table t{"example3", {"N", "actual_E_N", "tail_bound", "lambda_N"}, {}};
  for (int N = 1; N <= N_max; ++N) {
    const double e = grid_error(f.sampler, [&](double x) { return truncated_sum(a, b, N, x); });
    t.rows.push_back({N, e, bound_theorem5(c, N, 1.0, f.norm_l2, tail, b, sup), b.lambda[N]});
  }
  return t;
}

Table reproduce_example4(const Common& o) {
  const double c = or_default(o.c, 100.0);
  const double s = or_default(o.s, 1.0);
  const int N = o.N < 0 ? 80 : o.N;
  const auto f = brownian(s, o.seed);
  const auto b = get_basis(c, std::max(N, 1));
  const auto a = coeffs_auto(f, b, N);
  Table t{"example4", {"x", "B_s", "S_N_B_s"}, {}};
  const int m = std::max(o.grid, 2);
  for (int k = 0; k < m; ++k) {
    const double x = -1.0 + 2.0 * k / (m - 1);
    t.rows.push_back({x, f.sampler(x).real(), truncated_sum(a, b, N, x).real()});
  }
  return t;
}

struct CheckResult {
  Table table;
  int hard_failures = 0;
  int diagnostics = 0;
};

CheckResult check_invariants(const std::vector<double>& cs, int n_max) {
  CheckResult r{{"check_invariants", {"c", "n_max", "hard_violations", "mu_phase_deviation", "trace_error"}, {}}};
  for (double c : cs) {
    PswfBasis b;
    std::vector<std::string> bad;
    try {
      b = get_basis(c, n_max);
      bad = basis_invariant_violations(b);
    } catch (const std::exception& e) {
      bad.push_back(e.what());
    }
    for (const auto& m : bad) std::cerr << "invariant: " << m << "\n";
    r.hard_failures += static_cast<int>(bad.size());
    double phase = 0.0, trace = 0.0;
    if (b.has_mu()) {
      phase = mu_phase_deviation(b);
      if (phase > 1e-6) ++r.diagnostics;
      for (double l : b.lambda) trace += l;
      trace = std::abs(trace - 2 * c / std::numbers::pi);
    }
    r.table.rows.push_back({c, n_max, static_cast<long long>(bad.size()), phase, trace});
  }
  return r;
}

CheckResult check_bounds(const std::vector<double>& cs, int n_max) {
  CheckResult r{{"check_bounds",
                 {"c", "chi_bracket_violations", "beta_bound_violations", "weighted_sup_violations",
                  "envelope_violations", "decay_slope"},
                 {}}};
  for (double c : cs) {
    const auto b = get_basis(c, n_max);
    long long chi_bad = 0, beta_bad = 0, sup_bad = 0, env_bad = 0;
    for (int n = 0; n <= n_max; ++n) {
      const double lo = n * (n + 1.0);
      if (b.chi[n] < lo || b.chi[n] > lo + c * c) ++chi_bad;
      if (!b.has_mu()) continue;
      for (int k = 0; k <= b.K; ++k) {
        const double a = std::abs(b.beta[n][k]);
        if (a > 0 && std::log(a) > beta_coefficient_bound(n, k, b).log_new_bound) ++beta_bad;
      }
    }
    std::vector<double> sup(n_max + 1, 0.0);
    for (int i = 0; i < 400; ++i) {
      const double x = -1.0 + 2.0 * i / 399.0;
      const double w = std::pow(std::max(0.0, 1 - x * x), 0.25);
      const auto v = eval_inside_all(b, x);
      for (int n = 0; n <= n_max; ++n) sup[n] = std::max(sup[n], w * std::abs(v[n]));
    }
    for (int n = 0; n <= n_max; ++n) {
      if (sup[n] > std::pow(2 * b.chi[n], 0.25)) ++sup_bad;
    }
    double slope = NAN;
    if (b.has_mu()) {
      const int onset = decay_onset(c);
      for (int n = std::max(onset + 2, 1); n <= n_max; ++n) {
        if (b.log_lambda(n) > log_lambda_envelope_remark(n, c)) ++env_bad;
      }
      if (onset + 5 < n_max) slope = log_lambda_slope(b, onset + 5);
    }
    r.hard_failures += static_cast<int>(chi_bad + beta_bad + sup_bad);
    r.diagnostics += static_cast<int>(env_bad);
    r.table.rows.push_back({c, chi_bad, beta_bad, sup_bad, env_bad, std::isnan(slope) ? json("nan") : json(slope)});
  }
  return r;
}

CheckResult check_wkb(double q) {
  CheckResult r{{"check_wkb", {"n", "q", "c", "chi_n", "residual", "residual_times_sqrt_chi"}, {}}};
  for (int n : {10, 20, 40, 80}) {
    const double c = bandwidth_for_q(n, q);
    const auto b = get_basis(c, n);
    const double res = wkb_residual(b, n, 400);
    r.table.rows.push_back({n, q, c, b.chi[n], res, res * std::sqrt(b.chi[n])});
  }
  return r;
}

std::vector<double> parse_c_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(std::stod(part));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prolate spheroidal wave function toolkit"};
  app.require_subcommand(1);
  Common o;

  auto* basis_cmd = app.add_subcommand("basis", "Build a PSWF basis, print chi_n and lambda_n, optionally cache it");
  double b_c = 0.0;
  int b_n = 10;
  std::string b_out, b_format = "csv";
  basis_cmd->add_option("--c", b_c, "bandwidth c >= 0")->required();
  basis_cmd->add_option("--n-max", b_n, "highest index kept")->required()->check(CLI::NonNegativeNumber);
  basis_cmd->add_option("--out", b_out, "write the basis cache (JSON) here");
  basis_cmd->add_option("--format", b_format, "summary format")->check(CLI::IsMember({"csv", "json"}));

  auto* rep = app.add_subcommand("reproduce",
                                 "Emit data for an example.\n"
                                 "  example1: quantity,lambda,c,N,value (Legendre and PSWF truncation errors)\n"
                                 "  table1:   n,s,E_n (101-point grid error, c = 100, partial sum over 0..n)\n"
                                 "  example3: N,actual_E_N,tail_bound,lambda_N (periodic Weierstrass)\n"
                                 "  example4: x,B_s,S_N_B_s (Brownian series, N = 80, c = 100)");
  std::string which;
  rep->add_option("example", which, "example1|table1|example3|example4")
      ->required()
      ->check(CLI::IsMember({"example1", "table1", "example3", "example4"}));
  rep->add_option("--c", o.c, "bandwidth");
  rep->add_option("--N", o.N, "truncation order (example1/4) or largest N (example3)");
  rep->add_option("--s", o.s, "Sobolev/regularity exponent; table1 restricts to that column");
  rep->add_option("--seed", o.seed, "Brownian seed (example4)");
  rep->add_option("--grid", o.grid, "sample points on [-1, 1] (example4)")->check(CLI::PositiveNumber);
  rep->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  rep->add_option("--out", o.out, "output file (default stdout)");

  auto* chk = app.add_subcommand("check", "Run invariant suites; exit 1 on a hard failure");
  std::string suite, c_list = "1,10,50,100";
  int chk_n = 120;
  bool strict = false;
  double chk_q = 0.5;
  chk->add_option("--suite", suite, "invariants|bounds|wkb")
      ->required()
      ->check(CLI::IsMember({"invariants", "bounds", "wkb"}));
  chk->add_option("--c", c_list, "comma-separated bandwidths");
  chk->add_option("--n-max", chk_n, "highest index checked")->check(CLI::NonNegativeNumber);
  chk->add_option("--q", chk_q, "WKB regime parameter for --suite wkb")->check(CLI::Range(0.01, 0.95));
  chk->add_flag("--strict", strict, "treat diagnostics (eigenvalue envelope, mu phase) as failures");
  chk->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  chk->add_option("--out", o.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*basis_cmd) {
      const auto b = build_basis(b_c, b_n);
      if (!b_out.empty()) save_basis(b, b_out);
      Table t{"basis", {"n", "chi", "lambda", "log_lambda"}, {}};
      for (int n = 0; n <= b.n_max; ++n) {
        if (b.has_mu()) {
          t.rows.push_back({n, b.chi[n], b.lambda[n], b.log_lambda(n)});
        } else {
          t.rows.push_back({n, b.chi[n], "nan", "nan"});
        }
      }
      emit(t, b_format, "");
      return 0;
    }
    if (*rep) {
      Table t;
      if (which == "example1") t = reproduce_example1(o);
      if (which == "table1") t = reproduce_table1(o);
      if (which == "example3") t = reproduce_example3(o);
      if (which == "example4") t = reproduce_example4(o);
      emit(t, o.format, o.out);
      return 0;
    }
    if (*chk) {
      std::vector<double> cs;
      try {
        cs = parse_c_list(c_list);
      } catch (const std::exception&) {
        std::cerr << "bad --c list: " << c_list << "\n";
        return 2;
      }
      CheckResult r;
      if (suite == "invariants") r = check_invariants(cs, chk_n);
      if (suite == "bounds") r = check_bounds(cs, chk_n);
      if (suite == "wkb") r = check_wkb(chk_q);
      emit(r.table, o.format, o.out);
      std::cerr << suite << ": " << r.hard_failures << " hard failure(s), " << r.diagnostics << " diagnostic(s)"
                << (strict ? " [strict]" : "") << "\n";
      return (r.hard_failures > 0 || (strict && r.diagnostics > 0)) ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
