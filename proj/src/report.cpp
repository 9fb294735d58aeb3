#include "gklandau/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace gkl {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void ReportEntry::add_input(const std::string& key, double value) {
  inputs.emplace_back(key, format_double(value));
}

void ReportEntry::add_input(const std::string& key, const std::string& value) {
  inputs.emplace_back(key, value);
}

void ReportEntry::finish(std::complex<double> computed_value,
                         std::complex<double> expected_value,
                         double tolerance) {
  computed = computed_value;
  expected = expected_value;
  tol = tolerance;
  pass = std::abs(computed_value - expected_value) <= tolerance;
}

void ReportEntry::finish_flag(std::complex<double> computed_value, bool ok,
                              double tolerance) {
  computed = computed_value;
  expected_is_oracle = true;
  tol = tolerance;
  pass = ok;
}

namespace {

nlohmann::json complex_to_json(std::complex<double> v) {
  if (v.imag() == 0.0) return v.real();
  return nlohmann::json{{"im", v.imag()}, {"re", v.real()}};
}

}  // namespace

std::string to_json_line(const ReportEntry& entry) {
  nlohmann::json j;
  j["check_id"] = entry.check_id;
  nlohmann::json in = nlohmann::json::object();
  for (const auto& [k, v] : entry.inputs) in[k] = v;
  j["inputs"] = in;
  j["computed"] = complex_to_json(entry.computed);
  if (entry.expected_is_oracle)
    j["expected"] = "oracle";
  else if (entry.expected)
    j["expected"] = complex_to_json(*entry.expected);
  j["tol"] = entry.tol;
  j["pass"] = entry.pass;
  if (entry.errored) {
    j["errored"] = true;
    j["error"] = entry.error;
  }
  j["runtime_ms"] = entry.runtime_ms;
  return j.dump();
}

std::string csv_header() {
  return "check_id,inputs,computed_re,computed_im,expected,tol,pass,errored,"
         "runtime_ms";
}

std::string to_csv_line(const ReportEntry& entry) {
  std::string inputs;
  for (const auto& [k, v] : entry.inputs) {
    if (!inputs.empty()) inputs += ';';
    inputs += k + "=" + v;
  }
  std::string expected;
  if (entry.expected_is_oracle)
    expected = "oracle";
  else if (entry.expected)
    expected = entry.expected->imag() == 0.0
                   ? format_double(entry.expected->real())
                   : "(" + format_double(entry.expected->real()) + " " +
                         format_double(entry.expected->imag()) + ")";
  std::string line = entry.check_id;
  line += ',' + inputs;
  line += ',' + format_double(entry.computed.real());
  line += ',' + format_double(entry.computed.imag());
  line += ',' + expected;
  line += ',' + format_double(entry.tol);
  line += entry.pass ? ",true" : ",false";
  line += entry.errored ? ",true" : ",false";
  line += ',' + std::to_string(entry.runtime_ms);
  return line;
}

void write_report(const std::vector<ReportEntry>& entries, std::ostream& os,
                  ReportFormat format) {
  if (format == ReportFormat::csv) os << csv_header() << '\n';
  for (const auto& e : entries)
    os << (format == ReportFormat::json ? to_json_line(e) : to_csv_line(e))
       << '\n';
}

}  // namespace gkl
