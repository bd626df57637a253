#include "cmr/constr.hpp"
#include "cmr/json_io.hpp"
#include "cmr/random.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cmr;

TEST_CASE("float round trip is lossless") {
  Sampler s(61);
  CMatrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = Complex(s.uniform(-1, 1), s.uniform(-1e-300, 1e300));
  const auto text = matrix_to_json(m, 2);
  const auto back = matrix_from_json(text);
  CHECK_FALSE(back.exact);
  CHECK(back.n == 2);
  CHECK(back.c == m);
}

TEST_CASE("exact round trip and schema") {
  const auto r = build_b_cg_plus<GaussRational>(3);
  const auto text = matrix_to_json(r, 3);
  const auto j = nlohmann::json::parse(text);
  CHECK(j["mode"] == "exact");
  CHECK(j["rows"] == 9);
  CHECK(j["cols"] == 9);
  CHECK(j["entries"].size() == 81);
  CHECK(j["entries"][0][0].is_string());
  const auto back = matrix_from_json(text);
  CHECK(back.exact);
  CHECK(back.q == r);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(matrix_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(matrix_from_json(R"({"n":1,"rows":1,"cols":1,"mode":"c64","entries":[]})"), std::invalid_argument);
  CHECK_THROWS_AS(matrix_from_json(R"({"n":1,"rows":1,"cols":1,"mode":"f32","entries":[[0,0]]})"), std::invalid_argument);
  CHECK_THROWS_AS(matrix_from_json(R"({"n":1,"rows":1,"cols":1,"mode":"exact","entries":[["1/0","0"]]})"), std::invalid_argument);
  CHECK_THROWS_AS(matrix_from_json(R"({"n":1,"rows":1,"cols":1,"mode":"c64","entries":[[1]]})"), std::invalid_argument);
}
