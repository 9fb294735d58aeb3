#pragma once

// Verification report entries and their JSON-lines / CSV serialisation.
// Output is deterministic: entries are sorted by check_id and runtime_ms is
// the only field allowed to vary between identical runs.

#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace gkl {

struct ReportEntry {
  std::string check_id;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::complex<double> computed{0.0, 0.0};
  std::optional<std::complex<double>> expected;
  bool expected_is_oracle = false;
  double tol = 0.0;
  bool pass = false;
  bool errored = false;
  std::string error;
  long runtime_ms = 0;

  void add_input(const std::string& key, double value);
  void add_input(const std::string& key, const std::string& value);
  // pass iff |computed - expected| <= tol.
  void finish(std::complex<double> computed_value, std::complex<double>
              expected_value, double tolerance);
  // For checks whose reference is the quadrature oracle embedded in the
  // computation; pass is supplied directly.
  void finish_flag(std::complex<double> computed_value, bool ok,
                   double tolerance);
};

enum class ReportFormat { json, csv };

std::string to_json_line(const ReportEntry& entry);
std::string csv_header();
std::string to_csv_line(const ReportEntry& entry);

void write_report(const std::vector<ReportEntry>& entries, std::ostream& os,
                  ReportFormat format);

// Deterministic shortest-ish decimal formatting used everywhere a double is
// printed into a report.
std::string format_double(double v);

}  // namespace gkl
