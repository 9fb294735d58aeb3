#pragma once

// Named verification suites. Each suite runs the module's invariants at its
// spec tolerances and reports one entry per check; the CLI and the Python
// bindings are thin shells around run_suite.

#include <optional>

#include "gklandau/fock.hpp"
#include "gklandau/report.hpp"

namespace gkl {

struct RunConfig {
  ModelParams params{1.0, 1.0, 0.5, 1.0, 1.0};
  double J = 1.5;
  double gamma = 0.7;
  double Jp = 1.0;
  double gammap = 0.4;
  int l = 1;
  double K1 = 0.8;
  double theta1 = 0.3;

  int dim_single = 40;
  int dim_two = 24;
  int n_max = 40;
  int l_max = 60;

  int wigner_points = 121;
  double wigner_range = 8.0;
  int wigner_max_index = 2;

  // Replaces every check tolerance when set.
  std::optional<double> tol_override;

  double tol(double spec_default) const {
    return tol_override.value_or(spec_default);
  }
  void validate() const;
};

std::vector<ReportEntry> algebra_suite(const RunConfig& cfg);
std::vector<ReportEntry> hamiltonians_suite(const RunConfig& cfg);
std::vector<ReportEntry> wigner_suite(const RunConfig& cfg);
std::vector<ReportEntry> gkcs_suite(const RunConfig& cfg);
std::vector<ReportEntry> displacement_suite(const RunConfig& cfg);

// name in {algebra, hamiltonians, wigner, gkcs, displacement, all}; entries
// come back sorted by check_id.
std::vector<ReportEntry> run_suite(const std::string& name,
                                   const RunConfig& cfg);

bool all_passed(const std::vector<ReportEntry>& entries);
bool any_errored(const std::vector<ReportEntry>& entries);

}  // namespace gkl
