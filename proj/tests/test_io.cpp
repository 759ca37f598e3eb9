#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "cknn/error.hpp"
#include "cknn/io.hpp"

using namespace cknn;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const char* name) {
  const auto dir = fs::temp_directory_path() / "cknn_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& p, const char* text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("point CSV round trip is exact") {
  std::mt19937_64 eng(3);
  std::normal_distribution<double> g(0.0, 1e3);
  std::vector<double> xs(60);
  for (auto& x : xs) x = g(eng);
  xs[5] = 1e-300;
  xs[6] = -0.0;
  const PointCloud c(xs, 3);
  const auto p = scratch("round.csv");
  write_points_csv(p.string(), c);
  const auto back = read_points_csv(p.string());
  REQUIRE(back.size() == 20);
  REQUIRE(back.dim() == 3);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(back.data()[i] == xs[i]);
}

TEST_CASE("malformed point CSV") {
  const auto p = scratch("bad.csv");
  write_text(p, "1,2\n3\n");
  CHECK_THROWS_AS(read_points_csv(p.string()), InvalidInput);
  write_text(p, "1,abc\n");
  CHECK_THROWS_AS(read_points_csv(p.string()), InvalidInput);
  write_text(p, "1,nan\n");
  CHECK_THROWS_AS(read_points_csv(p.string()), InvalidInput);
  write_text(p, "");
  CHECK_THROWS_AS(read_points_csv(p.string()), InvalidInput);
  CHECK_THROWS_AS(read_points_csv((fs::temp_directory_path() / "no_such_dir" / "x.csv").string()), IoError);
}

TEST_CASE("blank lines are skipped") {
  const auto p = scratch("blank.csv");
  write_text(p, "1,2\n\n3,4\n");
  const auto c = read_points_csv(p.string());
  CHECK(c.size() == 2);
  CHECK(c.point(1)[1] == 4.0);
}

TEST_CASE("format_double") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  const double v = 0.1 + 0.2;
  CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("values and labels round trip") {
  const auto p = scratch("values.csv");
  const std::vector<double> v{1.5, -2.25, 1e-17, 3.0};
  write_values_csv(p.string(), v);
  CHECK(read_values_csv(p.string()) == v);
  const auto q = scratch("labels.csv");
  const std::vector<int> l{0, 2, 1, 1, 0};
  write_labels_csv(q.string(), l);
  CHECK(read_labels_csv(q.string()) == l);
  write_text(q, "1\n2.5\n");
  CHECK_THROWS_AS(read_labels_csv(q.string()), InvalidInput);
}
