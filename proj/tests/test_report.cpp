#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "gklandau/report.hpp"
#include "gklandau/suites.hpp"

TEST_CASE("report entry serialisation") {
  gkl::ReportEntry e;
  e.check_id = "sample_check";
  e.add_input("dim", 40.0);
  e.add_input("mode", "q1p1");
  e.finish(1.25, 1.25, 1e-9);
  e.runtime_ms = 3;

  const std::string json = gkl::to_json_line(e);
  CHECK(json ==
        R"({"check_id":"sample_check","computed":1.25,"expected":1.25,)"
        R"("inputs":{"dim":"40","mode":"q1p1"},"pass":true,"runtime_ms":3,)"
        R"("tol":1e-09})");

  const std::string csv = gkl::to_csv_line(e);
  CHECK(csv == "sample_check,dim=40;mode=q1p1,1.25,0,1.25," +
                   gkl::format_double(1e-9) + ",true,false,3");

  gkl::ReportEntry oracle;
  oracle.check_id = "oracle_check";
  oracle.finish_flag(gkl::cplx{0.5, -0.5}, true, 1e-8);
  const std::string j2 = gkl::to_json_line(oracle);
  CHECK(j2.find("\"expected\":\"oracle\"") != std::string::npos);
  CHECK(j2.find("\"im\":-0.5") != std::string::npos);
}

TEST_CASE("pass logic") {
  gkl::ReportEntry e;
  e.finish(1.0, 1.0 + 5e-10, 1e-9);
  CHECK(e.pass);
  e.finish(1.0, 1.0 + 5e-9, 1e-9);
  CHECK_FALSE(e.pass);
}

TEST_CASE("write_report emits one line per entry") {
  gkl::ReportEntry a;
  a.check_id = "a";
  a.finish(0.0, 0.0, 1.0);
  gkl::ReportEntry b;
  b.check_id = "b";
  b.finish(0.0, 0.0, 1.0);
  std::ostringstream os;
  gkl::write_report({a, b}, os, gkl::ReportFormat::csv);
  std::istringstream in(os.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 3);  // header + 2 rows
}

TEST_CASE("suites are sorted, unique and green by default") {
  gkl::RunConfig cfg;
  cfg.dim_single = 24;
  cfg.dim_two = 12;
  cfg.wigner_points = 81;
  cfg.wigner_max_index = 1;
  cfg.n_max = 40;
  cfg.l_max = 40;

  const std::vector<gkl::ReportEntry> entries = gkl::run_suite("all", cfg);
  CHECK(entries.size() >= 50);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    ids.insert(entries[i].check_id);
    if (i > 0) CHECK(entries[i - 1].check_id <= entries[i].check_id);
  }
  CHECK(ids.size() == entries.size());
  for (const auto& e : entries) {
    INFO(e.check_id, " error=", e.error);
    CHECK(e.pass);
  }
  CHECK(gkl::all_passed(entries));
  CHECK_FALSE(gkl::any_errored(entries));

  CHECK_THROWS_AS(gkl::run_suite("nonsense", cfg), gkl::ParameterError);
}

TEST_CASE("algebra suite alone has at least ten entries") {
  gkl::RunConfig cfg;
  cfg.dim_single = 16;
  cfg.dim_two = 8;
  CHECK(gkl::run_suite("algebra", cfg).size() >= 10);
}
