#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "km/common.hpp"
#include "km/params.hpp"

namespace km {

struct CheckCase {
  std::string descriptor;
  double residual = 0.0;
  double scale = 1.0;
  double tolerance = 0.0;
  bool passed = false;
  bool errored = false;
  std::string error;
  double relative() const { return residual / (scale > 0.0 ? scale : 1e-300); }
};

/// Outcome of one named identity check over its sweep.
struct Report {
  std::string check_id;
  std::string params_digest;
  std::vector<CheckCase> cases;
  double max_relative_residual = 0.0;
  double tolerance = 0.0;  // loosest case tolerance in the sweep
  bool passed = false;
  bool experimental = false;  // excluded from aggregate exit status
  long long runtime_ms = 0;
};

struct CheckConfig {
  std::uint64_t seed = 1618033;
  std::vector<int> ns = {1, 2, 3};  // dimensions for the polynomial sweeps
  int max_weight = 0;               // 0: per-check default
  int grid_points = 0;              // 0: per-check default
  bool offhyperplane = false;       // sweep the non-self-dual set, flag experimental
};

const std::vector<std::string>& check_ids();
Report run_check(const std::string& check_id, const CheckConfig& cfg = {});
std::vector<Report> run_all(const CheckConfig& cfg = {});

/// Three seeded self-dual coupling sets (g0 constructed as g1+g2+g3),
/// alpha = beta = 1, spanning strong to weak coupling.
std::vector<Params> default_parameter_sets(int n);

/// A five-parameter set off the self-dual hyperplane.
Params offhyperplane_parameter_set(int n);

}  // namespace km
