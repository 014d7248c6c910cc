#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "heraldsim/export.hpp"

using namespace heraldsim;

namespace {

ResultTable sample_table() {
  ResultTable t;
  t.name = "sweep";
  t.metadata = {{"seed", "1"}, {"shots", "1000"}};
  t.columns = {"x", "p_l", "code"};
  t.rows = {{"0.001", "0.0125", "rotated:3"},
            {"0.01", "0.21", "rotated:3"}};
  return t;
}

}  // namespace

TEST_CASE("csv round-trips metadata, header, and rows") {
  const ResultTable t = sample_table();
  const std::string csv = to_csv(t);
  const ResultTable back = parse_csv(csv);
  CHECK(back.metadata == t.metadata);
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
  // Single-point tables still carry a header.
  ResultTable tiny = t;
  tiny.rows.resize(1);
  const ResultTable tiny_back = parse_csv(to_csv(tiny));
  CHECK(tiny_back.columns == t.columns);
  CHECK(tiny_back.rows.size() == 1);
}

TEST_CASE("json text carries the schema version") {
  const std::string json = to_json_text(sample_table());
  CHECK(json.find("\"schema_version\": 1") != std::string::npos);
  CHECK(json.find("\"rotated:3\"") != std::string::npos);
  CHECK(json.find("\"columns\"") != std::string::npos);
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.017) == "0.017");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1 + 0.2) != "0.3");  // preserves the exact value
  for (double v : {3.14159, 1e-12, 123456.789, 5.28}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("svg plot renders series, axes, and error bars") {
  SvgSeries s;
  s.label = "rotated:3";
  s.x = {1e-4, 1e-3, 1e-2};
  s.y = {1e-4, 1e-3, 1e-1};
  s.y_low = {5e-5, 8e-4, 9e-2};
  s.y_high = {2e-4, 1.3e-3, 1.2e-1};
  const std::string svg =
      to_svg_loglog("logical error", "p_err", "p_L", {s});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("rotated:3") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("1e-4") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK_THROWS(to_svg_loglog("t", "x", "y", {SvgSeries{}}));
}

TEST_CASE("write_file reports the failing path") {
  CHECK_THROWS_WITH_AS(write_file("/nonexistent-dir/x.csv", "data"),
                       doctest::Contains("/nonexistent-dir/x.csv"),
                       std::runtime_error);
  const std::string path = "export_test_tmp.csv";
  write_file(path, "a,b\n1,2\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "a,b");
  in.close();
  std::remove(path.c_str());
}
