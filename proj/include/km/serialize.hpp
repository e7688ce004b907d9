#pragma once

#include <json.hpp>

#include "km/koornwinder.hpp"
#include "km/operators.hpp"
#include "km/symcore.hpp"
#include "km/verify.hpp"

namespace km {

using json = nlohmann::ordered_json;

inline json to_json(const SymPoly& f) {
  json arr = json::array();
  for (const auto& [lam, c] : f.coeffs)
    arr.push_back({{"partition", lam.to_string()}, {"re", c.real()}, {"im", c.imag()}});
  return arr;
}

inline SymPoly sympoly_from_json(const json& arr) {
  SymPoly f;
  for (const auto& e : arr)
    f.coeffs[Partition::parse(e.at("partition").get<std::string>())] =
        cplx(e.at("re").get<double>(), e.at("im").get<double>());
  return f;
}

inline json to_json(const Params& p) {
  return {{"n", p.n}, {"alpha", p.alpha}, {"beta", p.beta}, {"g", p.g},
          {"g0", p.g0}, {"g1", p.g1},     {"g2", p.g2},     {"g3", p.g3}};
}

inline json to_json(const KMPolynomial& poly) {
  return {{"lambda", poly.lam.to_string()},
          {"params", to_json(poly.params)},
          {"method", poly.method == BuildMethod::operator_route ? "operator" : "gram_schmidt"},
          {"coefficients", to_json(poly.coeffs)},
          {"diagnostics",
           {{"max_expand_residual", poly.diagnostics.max_expand_residual},
            {"gram_condition", poly.diagnostics.gram_condition},
            {"min_eigen_gap", poly.diagnostics.min_eigen_gap}}}};
}

inline json to_json(const OperatorMatrix& m) {
  json basis = json::array();
  for (const Partition& lam : m.basis) basis.push_back(lam.to_string());
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.entries.cols(); ++j)
      row.push_back({m.entries(i, j).real(), m.entries(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"r", m.r},
          {"basis", basis},
          {"entries", rows},
          {"max_expand_residual", m.max_expand_residual}};
}

/// Report serialization.  runtime_ms is volatile and therefore excluded by
/// default so that report files are byte-identical across runs.
inline json to_json(const Report& rep, bool include_runtime = false) {
  json cases = json::array();
  for (const CheckCase& c : rep.cases) {
    json jc = {{"case", c.descriptor},
               {"residual", c.residual},
               {"scale", c.scale},
               {"tolerance", c.tolerance},
               {"passed", c.passed}};
    if (c.errored) jc["error"] = c.error;
    cases.push_back(std::move(jc));
  }
  json out = {{"check_id", rep.check_id},
              {"params_digest", rep.params_digest},
              {"tolerance", rep.tolerance},
              {"max_relative_residual", rep.max_relative_residual},
              {"passed", rep.passed},
              {"experimental", rep.experimental},
              {"cases", std::move(cases)}};
  if (include_runtime) out["runtime_ms"] = rep.runtime_ms;
  return out;
}

}  // namespace km
