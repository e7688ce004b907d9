// Command-line front end: compute polynomials, run verification suites,
// print evaluation/norm tables.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "km/koornwinder.hpp"
#include "km/serialize.hpp"
#include "km/verify.hpp"

namespace {

using km::Params;
using km::Partition;

struct ParamFlags {
  int n = 1;
  double alpha = 1.0, beta = 1.0;
  double g = 0.0, g0 = 0.0, g1 = 0.0, g2 = 0.0, g3 = 0.0;
  std::string config;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
  cmd->add_option("--n", f.n, "number of variables");
  cmd->add_option("--alpha", f.alpha, "scale factor alpha (> 0)");
  cmd->add_option("--beta", f.beta, "scale factor beta (> 0)");
  cmd->add_option("--g", f.g, "pair coupling");
  cmd->add_option("--g0", f.g0, "coupling g0");
  cmd->add_option("--g1", f.g1, "coupling g1");
  cmd->add_option("--g2", f.g2, "coupling g2");
  cmd->add_option("--g3", f.g3, "coupling g3");
  cmd->add_option("--config", f.config, "key=value file (n, alpha, beta, g, g0..g3); flags win");
}

// plain key=value lines; '#' starts a comment
std::map<std::string, double> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw km::InvalidParameterError("cannot open config file " + path);
  std::map<std::string, double> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = std::stod(val);
  }
  return kv;
}

Params resolve_params(const CLI::App* cmd, const ParamFlags& f) {
  ParamFlags r = f;
  if (!f.config.empty()) {
    const auto kv = read_config(f.config);
    auto use = [&](const char* flag, const char* key, auto& slot) {
      if (cmd->count(flag) == 0 && kv.count(key)) slot = kv.at(key);
    };
    double n_val = r.n;
    use("--n", "n", n_val);
    r.n = static_cast<int>(n_val);
    use("--alpha", "alpha", r.alpha);
    use("--beta", "beta", r.beta);
    use("--g", "g", r.g);
    use("--g0", "g0", r.g0);
    use("--g1", "g1", r.g1);
    use("--g2", "g2", r.g2);
    use("--g3", "g3", r.g3);
  }
  return km::make_params(r.n, r.alpha, r.beta, r.g, r.g0, r.g1, r.g2, r.g3);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw km::InvalidParameterError("cannot open output file " + out_path);
    out << text << "\n";
  }
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* env = std::getenv("KM_SEED")) return std::strtoull(env, nullptr, 10);
  return fallback;
}

int run_compute(const CLI::App* cmd, const ParamFlags& pf, const std::string& lambda_str,
                const std::string& method, int grid_points, bool check_phi43,
                const std::string& out_path) {
  const Params p = resolve_params(cmd, pf);
  const Partition lam = Partition::parse(lambda_str, p.n);
  km::json out;
  out["params"] = km::to_json(p);
  out["lambda"] = lam.to_string();

  km::KMPolynomial op_poly, gs_poly;
  const bool want_op = method == "op" || method == "both";
  const bool want_gs = method == "gs" || method == "both";
  if (want_op) {
    op_poly = km::build_operator(lam, p);
    out["operator"] = km::to_json(op_poly);
  }
  if (want_gs) {
    const int M = grid_points > 0 ? grid_points : km::default_grid_points(lam.size() ? lam[0] : 0);
    gs_poly = km::build_gram_schmidt(lam, p, km::QuadGrid{p.n, M});
    out["gram_schmidt"] = km::to_json(gs_poly);
  }
  if (want_op && want_gs) {
    double dev = 0.0;
    for (const Partition& mu : km::down_set(lam)) {
      const km::cplx a = op_poly.coeffs.coeff(mu), b = gs_poly.coeffs.coeff(mu);
      dev = std::max(dev, std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}));
    }
    out["method_max_deviation"] = dev;
  }
  out["evaluation_constant"] = km::evaluation_constant(lam, p);
  out["norm_closed_form"] = km::norm_closed_form(lam, p);
  if (check_phi43) {
    if (p.n != 1) throw km::InvalidParameterError("--check-phi43 needs n = 1");
    km::PolynomialTable table(p);
    std::mt19937_64 rng(seed_from_env(1618033));
    double worst = 0.0;
    for (int t = 0; t < 8; ++t) {
      const double x = km::draw_generic_points(1, 1, rng)[0][0].real();
      const double a = table.normalized_poly(lam).eval(km::RealVec{x});
      const double b = km::phi43(lam[0], x, p);
      worst = std::max(worst, std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}));
    }
    out["phi43_max_rel_deviation"] = worst;
  }
  emit(out.dump(2), out_path);
  return 0;
}

int run_verify(const std::string& check, const km::CheckConfig& cfg,
               const std::string& report_dir) {
  std::vector<km::Report> reports;
  if (check.empty()) {
    reports = km::run_all(cfg);
  } else {
    reports.push_back(km::run_check(check, cfg));
  }

  std::cout << std::left << std::setw(24) << "check" << std::setw(8) << "cases" << std::setw(14)
            << "max_rel" << std::setw(11) << "tolerance" << std::setw(9) << "time_ms"
            << "status\n";
  bool all_passed = true;
  for (const km::Report& rep : reports) {
    std::ostringstream mr;
    mr << std::scientific << std::setprecision(2) << rep.max_relative_residual;
    std::ostringstream tl;
    tl << std::scientific << std::setprecision(0) << rep.tolerance;
    std::cout << std::left << std::setw(24) << rep.check_id << std::setw(8) << rep.cases.size()
              << std::setw(14) << mr.str() << std::setw(11) << tl.str() << std::setw(9)
              << rep.runtime_ms
              << (rep.passed ? "PASS" : "FAIL") << (rep.experimental ? " (experimental)" : "")
              << "\n";
    if (!rep.experimental && !rep.passed) all_passed = false;
    if (!report_dir.empty()) {
      const std::string path = report_dir + "/" + rep.check_id + ".json";
      std::ofstream out(path);
      if (!out) throw km::InvalidParameterError("cannot write report " + path);
      out << km::to_json(rep).dump(2) << "\n";
    }
  }
  return all_passed ? 0 : 1;
}

int run_table(const CLI::App* cmd, const ParamFlags& pf, int max_weight, int grid_points,
              const std::string& format, const std::string& out_path) {
  const Params p = resolve_params(cmd, pf);
  if (p.n > 3)
    throw km::InvalidParameterError("table: quadrature columns need n <= 3");
  const int M = grid_points > 0 ? grid_points : std::max(48, km::default_grid_points(max_weight));
  const km::QuadGrid grid{p.n, M};
  const auto weights = km::weight_on_grid(p, grid);
  km::PolynomialTable table(p);

  struct Row {
    std::string lam;
    double eval_direct, eval_closed, eval_dev;
    double norm_quad, norm_closed, norm_dev;
  };
  std::vector<Row> rows;
  for (const Partition& lam : km::partitions_up_to_weight(p.n, max_weight)) {
    Row r;
    r.lam = lam.to_string();
    r.eval_direct = table.normalized_poly(lam).denominator;
    r.eval_closed = km::evaluation_constant(lam, p);
    r.eval_dev = std::abs(r.eval_direct - r.eval_closed) / std::abs(r.eval_closed);
    const km::SymPoly& poly = table.operator_poly(lam).coeffs;
    r.norm_quad = km::inner_product_with_weights(poly, poly, p, grid, weights).real();
    r.norm_closed = km::norm_closed_form(lam, p);
    r.norm_dev = std::abs(r.norm_quad - r.norm_closed) / std::abs(r.norm_closed);
    rows.push_back(std::move(r));
  }

  std::ostringstream os;
  if (format == "json") {
    km::json arr = km::json::array();
    for (const Row& r : rows)
      arr.push_back({{"lambda", r.lam},
                     {"eval_direct", r.eval_direct},
                     {"eval_closed", r.eval_closed},
                     {"eval_rel_dev", r.eval_dev},
                     {"norm_quadrature", r.norm_quad},
                     {"norm_closed", r.norm_closed},
                     {"norm_rel_dev", r.norm_dev}});
    os << km::json({{"params", km::to_json(p)}, {"grid_points", M}, {"rows", arr}}).dump(2);
  } else {
    os << "lambda,eval_direct,eval_closed,eval_rel_dev,norm_quadrature,norm_closed,norm_rel_dev";
    os << std::setprecision(16);
    for (const Row& r : rows) {
      os << "\n\"" << r.lam << "\"," << r.eval_direct << "," << r.eval_closed << ","
         << r.eval_dev << "," << r.norm_quad << "," << r.norm_closed << "," << r.norm_dev;
    }
  }
  emit(os.str(), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Koornwinder-Macdonald multivariable Askey-Wilson polynomials: "
               "construction and identity verification"};
  app.require_subcommand(1);

  // compute
  auto* compute = app.add_subcommand("compute", "build one polynomial and its constants");
  ParamFlags cpf;
  add_param_flags(compute, cpf);
  std::string lambda_str;
  std::string method = "op";
  int cgrid = 0;
  bool check_phi43 = false;
  std::string cout_path;
  compute->add_option("--lambda", lambda_str, "partition, e.g. 2,1,0")->required();
  compute->add_option("--method", method, "op | gs | both")
      ->check(CLI::IsMember({"op", "gs", "both"}));
  compute->add_option("--grid", cgrid, "quadrature points per dimension (gs route)");
  compute->add_flag("--check-phi43", check_phi43, "compare against the 4phi3 series (n = 1)");
  compute->add_option("--out", cout_path, "write JSON here instead of stdout");

  // verify
  auto* verify = app.add_subcommand("verify", "run identity checks and report residuals");
  std::string check_id;
  km::CheckConfig vcfg;
  vcfg.seed = seed_from_env(vcfg.seed);
  std::string ns_str = "1,2,3";
  std::string report_dir;
  int single_n = 0;
  verify->add_option("--check", check_id, "single check id (default: all)");
  verify->add_option("--seed", vcfg.seed, "rng seed (KM_SEED env var also honored)");
  verify->add_option("--max-weight", vcfg.max_weight, "partition weight cap override");
  verify->add_option("--grid", vcfg.grid_points, "quadrature points per dimension override");
  verify->add_option("--ns", ns_str, "comma-separated dimensions, default 1,2,3");
  verify->add_option("--n", single_n, "restrict the sweep to one dimension");
  verify->add_flag("--offhyperplane", vcfg.offhyperplane,
                   "sweep the non-self-dual set; reports become experimental");
  verify->add_option("--report-dir", report_dir, "write one JSON report per check");

  // table
  auto* tab = app.add_subcommand("table", "evaluation/norm table for all small partitions");
  ParamFlags tpf;
  add_param_flags(tab, tpf);
  int tweight = 3, tgrid = 0;
  std::string tformat = "csv", tout_path;
  tab->add_option("--max-weight", tweight, "partition weight cap (default 3)");
  tab->add_option("--grid", tgrid, "quadrature points per dimension");
  tab->add_option("--format", tformat, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  tab->add_option("--out", tout_path, "write output here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (compute->parsed())
      return run_compute(compute, cpf, lambda_str, method, cgrid, check_phi43, cout_path);
    if (verify->parsed()) {
      if (!check_id.empty()) {
        const auto& ids = km::check_ids();
        if (std::find(ids.begin(), ids.end(), check_id) == ids.end()) {
          std::cerr << "unknown check '" << check_id << "'\n";
          return 2;
        }
      }
      vcfg.ns.clear();
      if (single_n > 0) {
        vcfg.ns.push_back(single_n);
      } else {
        std::stringstream ss(ns_str);
        std::string tok;
        while (std::getline(ss, tok, ',')) vcfg.ns.push_back(std::stoi(tok));
      }
      return run_verify(check_id, vcfg, report_dir);
    }
    if (tab->parsed()) return run_table(tab, tpf, tweight, tgrid, tformat, tout_path);
  } catch (const km::InvalidParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
