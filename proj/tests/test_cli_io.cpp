#include <doctest.h>

#include <cmath>

#include "sh3/invariant_forms.hpp"
#include "sh3/json_io.hpp"

using namespace sh3;

TEST_SUITE_BEGIN("cli_io");

TEST_CASE("pair documents round trip") {
  std::string text = R"({"L": 2,
    "g_minus": [[0, 0, 1.5, 0.0], [1, -1, 0.25, -0.5]],
    "g_plus":  [[2, 2, -0.75, 0.125]]})";
  BoundaryDensityPair pair = parse_pair_json(text);
  CHECK(pair.g_minus.coeff(0, 0) == Complex(1.5, 0.0));
  CHECK(pair.g_minus.coeff(1, -1) == Complex(0.25, -0.5));
  CHECK(pair.g_plus.coeff(2, 2) == Complex(-0.75, 0.125));
  CHECK(!pair.is_real());
  CHECK(pair.degree_cap() == 2);

  BoundaryDensityPair back = parse_pair_json(pair_to_json(pair));
  for (int l = 0; l <= 2; ++l)
    for (int m = -l; m <= l; ++m) {
      CHECK(back.g_minus.coeff(l, m) == pair.g_minus.coeff(l, m));
      CHECK(back.g_plus.coeff(l, m) == pair.g_plus.coeff(l, m));
    }
}

TEST_CASE("pair documents reject bad rows") {
  CHECK_THROWS(parse_pair_json(R"({"g_minus": []})"));                           // missing L
  CHECK_THROWS(parse_pair_json(R"({"L": 1, "g_minus": [[5, 0, 1, 0]]})"));       // l > L
  CHECK_THROWS(parse_pair_json(R"({"L": 1, "g_minus": [[1, 2, 1, 0]]})"));       // |m| > l
  CHECK_THROWS(parse_pair_json(R"({"L": 1, "g_minus": [[1, 0, 1]]})"));          // short row
  CHECK_THROWS(parse_pair_json("{"));                                            // malformed
}

TEST_CASE("geodesic records parse and validate") {
  std::string text = R"([{"T": 2.0, "P": [
    [0.13533528323661270, 0, 0, 0],
    [0, 7.3890560989306495, 0, 0],
    [0, 0, 0.36787944117144233, 0],
    [0, 0, 0, 2.7182818284590451]]}])";
  auto recs = parse_records_json(text);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].T == doctest::Approx(2.0));
  // det 1, hyperbolic spectrum
  CHECK(recs[0].P.determinant() == doctest::Approx(1.0).epsilon(1e-12));

  // eigenvalue on the unit circle is rejected
  std::string unit = R"([{"T": 1.0, "P": [
    [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}])";
  CHECK_THROWS(parse_records_json(unit));
  CHECK_THROWS(parse_records_json(R"([{"T": 1.0, "P": [[1, 0], [0, 1]]}])"));
}

TEST_CASE("identity residual report serialization") {
  IdentitySuiteReport rep = identity_suite_serial(UnitTangent(), 4, 77);
  std::string text = identity_report_to_json(rep);
  CHECK(text.find("\"identity_id\"") != std::string::npos);
  CHECK(text.find("\"trials\"") != std::string::npos);
  CHECK(text.find("\"max_residual\"") != std::string::npos);
  CHECK(text.find("\"seed\": 77") != std::string::npos);
  CHECK(text.find("cross_product_contraction") != std::string::npos);
}

TEST_CASE("shipped sample documents parse") {
  BoundaryDensityPair ones = load_pair_json(std::string(SH3_SOURCE_DIR) + "/data/pair_constant.json");
  CHECK(ones.g_minus.coeff(0, 0).real() == doctest::Approx(std::sqrt(4.0 * M_PI)).epsilon(1e-12));
  BoundaryDensityPair band = load_pair_json(std::string(SH3_SOURCE_DIR) + "/data/pair_band8.json");
  CHECK(band.degree_cap() == 8);
  auto recs = load_records_json(std::string(SH3_SOURCE_DIR) + "/data/records_demo.json");
  CHECK(recs.size() == 5);
}

TEST_SUITE_END();
