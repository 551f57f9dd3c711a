#include "helpers.hpp"

#include "cartan/contraction.hpp"
#include "cartan/errors.hpp"
#include "cartan/formulas.hpp"
#include "cartan/intlinalg.hpp"
#include "cartan/io.hpp"

#include <doctest.h>

#include <regex>

using namespace cartan;
using namespace testing_helpers;
using cartan::io::Json;

namespace {

std::size_t count_matches(const std::string& text, const std::regex& re) {
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re),
                                                std::sregex_iterator()));
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("fiber JSON round trip") {
  for (std::int64_t p : {7, 13, 29}) {
    for (const CurveFamily& fam : {ns(), nsp(), s(), sp(), CurveFamily::fine(CartanType::Split, 2)}) {
      const SpecialFiber f = build_fiber(fam, p);
      const Json j = io::fiber_to_json(f);
      CHECK(io::fiber_from_json(j) == f);
      CHECK(io::fiber_from_json(Json::parse(io::dump(j))) == f);
    }
  }
}

TEST_CASE("contracted fibers keep their crossing points through JSON") {
  const SpecialFiber f = contract_to_minimal_ncd(build_fiber(s(), 29)).final_fiber;
  REQUIRE_FALSE(f.has_default_points());
  const Json j = io::fiber_to_json(f);
  CHECK(j.contains("crossings"));
  const SpecialFiber back = io::fiber_from_json(j);
  CHECK(back == f);
  CHECK(is_ncd(back));
}

TEST_CASE("fiber JSON layout") {
  const Json j = io::fiber_to_json(build_fiber(sp(), 7));
  CHECK(j["family"] == "SPlusCoarse");
  CHECK(j["prime"] == 7);
  const Json& first = j["components"][0];
  CHECK(first["label"] == "A");
  CHECK(first["kind"] == "IgusaVertical");
  CHECK(first["smooth_rational"] == "SmoothRational");
  for (const Json& e : j["pairing"]) CHECK(e[0].get<int>() < e[1].get<int>());
  const std::string text = io::dump(j);
  CHECK(text.find("\"components\"") < text.find("\"family\""));
  CHECK(text == io::dump(io::fiber_to_json(build_fiber(sp(), 7))));
}

TEST_CASE("a plain pairing fiber is accepted and completed") {
  const Json j = Json::parse(R"({
    "family": "NsCoarse", "prime": 7,
    "components": [
      {"id": 0, "label": "X", "multiplicity": 1, "kind": "Other", "smooth_rational": "SmoothRational"},
      {"id": 1, "label": "Y", "multiplicity": "1", "kind": "Other", "smooth_rational": "SmoothRational"}],
    "pairing": [[1, 0, 1]]})");
  const SpecialFiber f = io::fiber_from_json(j);
  CHECK(f.intersection(ComponentId{0}, ComponentId{1}) == 1);
  CHECK(f.self_intersection(ComponentId{0}) == -1);
}

TEST_CASE("malformed fiber JSON") {
  CHECK_THROWS_AS(io::fiber_from_json(Json::parse("{}")), FormatError);
  CHECK_THROWS_AS(io::fiber_from_json(Json::parse(R"({"family": "Nope", "prime": 7, "components": [], "pairing": []})")),
                  FormatError);
  const Json asym = Json::parse(R"({
    "family": "SCoarse", "prime": 7,
    "components": [
      {"id": 0, "label": "X", "multiplicity": 1, "kind": "Other", "smooth_rational": "SmoothRational"},
      {"id": 1, "label": "Y", "multiplicity": 1, "kind": "Other", "smooth_rational": "SmoothRational"}],
    "pairing": [[0, 1, 1], [1, 0, 2]]})");
  CHECK_THROWS_AS(io::fiber_from_json(asym), FormatError);
}

TEST_CASE("matrix JSON") {
  const IntMatrix m{{2, -1}, {0, 3}};
  const Json j = io::matrix_to_json(m);
  CHECK(j["entries"][0][1] == "-1");
  CHECK(io::matrix_from_json(j) == m);
  CHECK(io::matrix_from_json(Json::parse(R"({"rows": 2, "cols": 2, "entries": [[2, -1], [0, 3]]})")) == m);
  CHECK(io::matrix_from_json(Json::parse(
            R"({"rows": 1, "cols": 1, "entries": [["123456789012345678901234567890"]]})"))(0, 0) ==
        parse_integer("123456789012345678901234567890"));
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"rows": 2, "cols": 2, "entries": [[1, 2]]})")), FormatError);
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"rows": 1, "cols": 1, "entries": [["1x"]]})")), FormatError);
}

TEST_CASE("group, SNF and report JSON") {
  const Json g = io::group_to_json(component_group(build_fiber(ns(), 17)));
  CHECK(g["invariant_factors"] == Json::array({"3", "72"}));
  CHECK(g["free_rank"] == 0);
  CHECK(g["notation"] == "Z/3 x Z/72");

  const Json snf = io::smith_to_json(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}));
  CHECK(snf["diagonal"] == Json::array({"1", "6"}));
  CHECK(snf["rank"] == 2);
  CHECK(snf.contains("left"));

  const Json r = io::report_to_json(verify(s(), 13));
  CHECK(r["passed"] == true);
  CHECK(r["checks"][0]["check"] == "build");
  for (const Json& c : r["checks"]) {
    CHECK(c.contains("computed"));
    CHECK(c.contains("expected"));
    CHECK(c.contains("pass"));
  }
}

TEST_CASE("trace JSON lists every step") {
  const auto t = contract_to_minimal(build_fiber(ns(), 17));
  const Json j = io::trace_to_json(t);
  CHECK(j["target"] == "minimal");
  CHECK(j["contracted"] == Json::array({"D_1", "A", "B", "D_0"}));
  CHECK(j["steps"].size() == 4);
  CHECK(j["steps"][0].contains("updated_pairs"));
  CHECK(io::fiber_from_json(j["final"]) == t.final_fiber);
}

TEST_CASE("DOT export") {
  const std::string dot = io::fiber_to_dot(build_fiber(ns(), 29));
  CHECK(count_matches(dot, std::regex(R"re(\[label="[^"]+ \(\d+\)"\])re")) == 11);
  CHECK(dot.find("label=\"A (28)\"") != std::string::npos);
  CHECK(count_matches(dot, std::regex(" -- ")) == build_fiber(ns(), 29).pairing().size());

  const std::string seq = io::trace_to_dot(contract_to_minimal(build_fiber(ns(), 17)));
  CHECK(count_matches(seq, std::regex("graph step_")) == 5);
}

}
