#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <vector>

#include "logwalk/errors.hpp"
#include "logwalk/io.hpp"

using namespace logwalk;
namespace fs = std::filesystem;

TEST_SUITE("io") {
  TEST_CASE("vector parsing") {
    const auto v = parse_vector("# rhs\n0.5\n\n-0.25\n  1e-3  \n");
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 0.5);
    CHECK(v[1] == -0.25);
    CHECK(v[2] == 1e-3);
    CHECK(parse_vector("").empty());
    CHECK_THROWS_AS(parse_vector("0.5\nabc\n"), ParseError);
    CHECK_THROWS_AS(parse_vector("0.5 0.25\n"), ParseError);
    CHECK_THROWS_AS(parse_vector("nan\n"), ParseError);
  }

  TEST_CASE("formatting round-trips") {
    const std::vector<double> values{1.0 / 3.0, -2.5e-17, 0.0, 123456789.123456789, -std::numeric_limits<double>::max()};
    const auto text = format_vector(values);
    CHECK(parse_vector(text) == values);
    CHECK(format_double(0.5) == "0.5");
  }

  TEST_CASE("atomic write replaces the file") {
    const fs::path dir = fs::temp_directory_path() / "logwalk_io_test";
    fs::create_directories(dir);
    const fs::path file = dir / "x.txt";
    write_file_atomic(file, "first\n");
    write_file_atomic(file, "second\n");
    CHECK(read_text_file(file) == "second\n");
    CHECK_FALSE(fs::exists(file.string() + ".tmp"));
    CHECK_THROWS_AS(write_file_atomic(dir / "missing" / "x.txt", "y"), ParseError);
    CHECK_THROWS_AS(read_text_file(dir / "absent.txt"), ParseError);
    fs::remove_all(dir);
  }

  TEST_CASE("graph files") {
    const fs::path file = fs::temp_directory_path() / "logwalk_io_graph.txt";
    write_file_atomic(file, "3 2\n0 1 1\n1 2 2.5\n");
    const auto g = load_graph_file(file);
    CHECK(g.size() == 3);
    CHECK(g.degree(1) == 3.5);
    fs::remove(file);
  }
}
