#include <doctest.h>

#include <cstdio>
#include <stdexcept>
#include <string>

#include "wchaos/chaos.hpp"
#include "wchaos/grid.hpp"
#include "wchaos/io.hpp"
#include "wchaos/rng.hpp"
#include "wchaos/spectra.hpp"

namespace {

using namespace wchaos;

const GridSpec g11{1.0, 1};
const GridSpec g22{2.0, 2};

double distance(const ChaosElement& Y, const ChaosElement& Z) {
  double worst = 0.0;
  const ChaosElement diff = Y - Z;
  for (const auto& [n, f] : diff.degrees) worst = std::max(worst, max_abs(f));
  return worst;
}

bool throws_with_prefix(const std::string& text, const char* prefix) {
  try {
    parse_chaos_json(text);
  } catch (const std::runtime_error& e) {
    return std::string(e.what()).rfind(prefix, 0) == 0;
  }
  return false;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("doubles render at full precision") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-0.25) == "-0.25");
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("canonical emission") {
  CHECK(emit_chaos_json(chaos_from_tensor(basis_vector(g11, 0))) ==
        "{\"grid\":{\"horizon\":1,\"cells\":1},\"degrees\":{\"1\":[[1,0]]}}\n");
  CHECK(emit_chaos_json(chaos_zero(g22)) ==
        "{\"grid\":{\"horizon\":2,\"cells\":2},\"degrees\":{}}\n");
  CHECK(emit_chaos_json(chaos_scalar(g22, Complex(0.5, -1.0))) ==
        "{\"grid\":{\"horizon\":2,\"cells\":2},\"degrees\":{\"0\":[0.5,-1]}}\n");
}

TEST_CASE("parsing the documented examples") {
  const ChaosElement I1 =
      parse_chaos_json("{\"grid\":{\"horizon\":1,\"cells\":1},\"degrees\":{\"1\":[[1,0]]}}");
  CHECK(distance(I1, chaos_from_tensor(basis_vector(g11, 0))) == 0.0);

  const ChaosElement zero =
      parse_chaos_json("{\"grid\":{\"horizon\":1,\"cells\":1},\"degrees\":{}}");
  CHECK(is_zero(zero));

  // All-zero degree blocks are dropped on re-emission (canonical form).
  const ChaosElement pruned = parse_chaos_json(
      "{\"grid\":{\"horizon\":2,\"cells\":2},"
      "\"degrees\":{\"0\":[2,0],\"1\":[[0,0],[0,0]]}}");
  CHECK(emit_chaos_json(pruned) ==
        "{\"grid\":{\"horizon\":2,\"cells\":2},\"degrees\":{\"0\":[2,0]}}\n");
}

TEST_CASE("parse and schema errors carry their prefixes") {
  CHECK(throws_with_prefix("not json", "parse error:"));
  CHECK(throws_with_prefix("[1,2,3]", "schema error:"));
  CHECK(throws_with_prefix("{\"grid\":{\"horizon\":1,\"cells\":1}}", "schema error:"));
  // Axis-length mismatch: degree 2 block shaped 2 x 3 on cells = 2.
  CHECK(throws_with_prefix(
      "{\"grid\":{\"horizon\":1,\"cells\":2},\"degrees\":{\"2\":"
      "[[[1,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]]]}}",
      "schema error:"));
  // Depth mismatch: degree 1 must nest once.
  CHECK(throws_with_prefix(
      "{\"grid\":{\"horizon\":1,\"cells\":1},\"degrees\":{\"1\":[1,0]}}",
      "schema error:"));
  // Non-canonical and out-of-range degree keys.
  CHECK(throws_with_prefix(
      "{\"grid\":{\"horizon\":1,\"cells\":1},\"degrees\":{\"01\":[1,0]}}",
      "schema error:"));
  CHECK(throws_with_prefix(
      "{\"grid\":{\"horizon\":1,\"cells\":1},\"degrees\":{\"-1\":[1,0]}}",
      "schema error:"));
  CHECK(throws_with_prefix(
      "{\"grid\":{\"horizon\":1,\"cells\":1},\"degrees\":{\"17\":[1,0]}}",
      "schema error:"));
  // Invalid grids.
  CHECK(throws_with_prefix(
      "{\"grid\":{\"horizon\":0,\"cells\":1},\"degrees\":{}}", "schema error:"));
  CHECK(throws_with_prefix(
      "{\"grid\":{\"horizon\":1,\"cells\":0},\"degrees\":{}}", "schema error:"));
}

TEST_CASE("byte round trip on a random element") {
  SplitMix64 rng(2024);
  const ChaosElement Y = random_element(rng, g22, 3, true);
  const std::string text = emit_chaos_json(Y);
  const ChaosElement Z = parse_chaos_json(text);
  CHECK(distance(Y, Z) == 0.0);
  CHECK(emit_chaos_json(Z) == text);
}

TEST_CASE("reduction step documents") {
  const std::string text =
      "{\"steps\":[{\"p\":{\"grid\":{\"horizon\":1,\"cells\":1},"
      "\"degrees\":{\"0\":[1,0]}},\"h\":[[1,0]]},"
      "{\"p\":{\"grid\":{\"horizon\":1,\"cells\":1},"
      "\"degrees\":{\"0\":[2,0]}},\"h\":[[0,1]]}]}";
  const std::vector<ReductionStep> steps = parse_reduction_steps(text, g11);
  REQUIRE(steps.size() == 2);
  CHECK(trace(steps[0].p) == Complex(1.0, 0.0));
  CHECK(trace(steps[1].p) == Complex(2.0, 0.0));
  CHECK(steps[0].h.c[0] == Complex(1.0, 0.0));
  CHECK(steps[1].h.c[0] == Complex(0.0, 1.0));

  // Steps must live on the caller's grid, and h must list one pair per cell.
  CHECK_THROWS_AS(parse_reduction_steps(text, g22), std::runtime_error);
  CHECK_THROWS_AS(
      parse_reduction_steps("{\"steps\":[{\"p\":{\"grid\":{\"horizon\":1,"
                            "\"cells\":1},\"degrees\":{}},\"h\":[[1,0],[0,0]]}]}",
                            g11),
      std::runtime_error);
}

TEST_CASE("CSV emitters") {
  CHECK(emit_moments_csv({Complex(1.0, 0.0), Complex(0.0, 1.0)}) ==
        "k,real,imag\n0,1,0\n1,0,1\n");

  SpectralMeasure two;
  two.points = {{-1.0, 0.5}, {1.0, 0.5}};
  CHECK(emit_points_csv(two) == "eigenvalue,weight\n-1,0.5\n1,0.5\n");

  SpectralMeasure atom;
  atom.points = {{0.5, 1.0}};
  CHECK(emit_spectrum_csv(atom, 4) ==
        "bin_left,bin_right,weight\n0,0.25,0\n0.25,0.5,0\n0.5,0.75,1\n0.75,1,0\n");
  CHECK_THROWS_AS(emit_spectrum_csv(atom, 0), std::invalid_argument);
}

TEST_CASE("text file round trip") {
  const std::string path = "io_test_tmp.txt";
  write_text_file(path, "line\n");
  CHECK(read_text_file(path) == "line\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file("definitely_missing_file.txt"), std::runtime_error);
}

TEST_CASE("verify report shape is stable") {
  CheckParams params;
  params.grid = g22;
  params.degree = 2;
  params.seed = 9;
  params.trials = 3;
  const std::vector<CheckResult> results = {
      {"demo.alpha", true, 0.0, 1e-12},
      {"demo.beta", false, 2.0, 1e-12},
  };
  const std::string expected =
      "{\n"
      "  \"grid\": {\"horizon\": 2, \"cells\": 2},\n"
      "  \"degree\": 2,\n"
      "  \"seed\": 9,\n"
      "  \"trials\": 3,\n"
      "  \"all_pass\": false,\n"
      "  \"checks\": [\n"
      "    {\"name\": \"demo.alpha\", \"status\": \"pass\", \"residual\": 0, "
      "\"tolerance\": 9.9999999999999998e-13},\n"
      "    {\"name\": \"demo.beta\", \"status\": \"fail\", \"residual\": 2, "
      "\"tolerance\": 9.9999999999999998e-13}\n"
      "  ]\n"
      "}\n";
  CHECK(emit_verify_json(params, results) == expected);
}

}  // TEST_SUITE("io")
