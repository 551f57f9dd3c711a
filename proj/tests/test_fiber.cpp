#include "helpers.hpp"

#include "cartan/contraction.hpp"
#include "cartan/errors.hpp"

#include <doctest.h>

#include <algorithm>

using namespace cartan;
using namespace testing_helpers;

TEST_SUITE("fiber") {

TEST_CASE("built NsCoarse p=29 validates cleanly") {
  const SpecialFiber f = build_fiber(ns(), 29);
  const ValidationReport r = validate_fiber(f);
  CHECK(r.ok());
  CHECK(r.issues.empty());
}

TEST_CASE("dangling pairing id is a violation") {
  std::vector<Component> cs = {{ComponentId{0}, "A", 1, ComponentKind::Other, Smoothness::SmoothRational}};
  Pairing pairing;
  pairing[IdPair::of(ComponentId{0}, ComponentId{5})] = 1;
  const SpecialFiber f(s(), 7, cs, pairing);
  const ValidationReport r = validate_fiber(f);
  CHECK_FALSE(r.ok());
  CHECK(r.has("dangling-id"));
}

TEST_CASE("duplicate labels and bad multiplicities are violations") {
  std::vector<Component> cs = {{ComponentId{0}, "A", 1, ComponentKind::Other, Smoothness::SmoothRational},
                               {ComponentId{1}, "A", 0, ComponentKind::Other, Smoothness::SmoothRational}};
  const SpecialFiber f(s(), 7, cs, {});
  const ValidationReport r = validate_fiber(f);
  CHECK(r.has("duplicate-label"));
  CHECK(r.has("non-positive-multiplicity"));
}

TEST_CASE("single component: trivial dual graph note, self-intersection 0") {
  const SpecialFiber f = make_fiber({{"C", 1}}, {});
  const ValidationReport r = validate_fiber(f);
  CHECK(r.ok());
  CHECK(r.has("trivial-dual-graph"));
  CHECK(self(f, "C") == 0);
  CHECK(dual_graph_connected(f));
  CHECK(is_ncd(f));
}

TEST_CASE("two components with no pairing are disconnected") {
  const SpecialFiber f = make_fiber({{"X", 1}, {"Y", 1}}, {});
  CHECK_FALSE(dual_graph_connected(f));
  CHECK(validate_fiber(f).has("disconnected-dual-graph"));
}

TEST_CASE("self-intersections of NsCoarse p=29") {
  const SpecialFiber f = build_fiber(ns(), 29);
  CHECK(self(f, "A") == -3);
  CHECK(self(f, "B") == -2);
  CHECK(self(f, "D_0") == -3);
  for (const char* d : {"D_1", "D_2"}) CHECK(self(f, d) == -1);
  for (const char* t : {"E_1", "F_1", "E_2", "F_2"}) CHECK(self(f, t) == -30);
}

TEST_CASE("self-intersections of SCoarse p=17") {
  const SpecialFiber f = build_fiber(s(), 17);
  CHECK(self(f, "D_1") == -1);
  CHECK(self(f, "B") == -2);
  CHECK(self(f, "D_0") == -3);
  CHECK(self(f, "A") == -2);
}

TEST_CASE("derive_self_intersections rejects an inconsistent fiber") {
  // B has multiplicity 2 and meets A (mult 1) once: 2 does not divide 1.
  std::vector<Component> cs = {{ComponentId{0}, "A", 1, ComponentKind::Other, Smoothness::SmoothRational},
                               {ComponentId{1}, "B", 2, ComponentKind::Other, Smoothness::SmoothRational}};
  Pairing pairing;
  pairing[IdPair::of(ComponentId{0}, ComponentId{1})] = 1;
  const SpecialFiber raw = SpecialFiber(s(), 7, cs, pairing);
  CHECK_THROWS_AS(derive_self_intersections(raw), DivisibilityError);
}

TEST_CASE("derive_self_intersections is idempotent") {
  const SpecialFiber f = build_fiber(nsp(), 41);
  CHECK(derive_self_intersections(f) == f);
  CHECK(derive_self_intersections(derive_self_intersections(f)) == f);
}

TEST_CASE("two-component chain matrix") {
  const SpecialFiber f = make_fiber({{"X", 1}, {"Y", 1}}, {{0, 1, 1}});
  const IntersectionMatrix m = intersection_matrix(f);
  CHECK(m.entries == IntMatrix{{-1, 1}, {1, -1}});
}

TEST_CASE("intersection matrices satisfy the structural invariants") {
  for (std::int64_t p : {5, 7, 11, 13, 17, 29, 31, 37, 43}) {
    for (const CurveFamily& fam : {ns(), nsp(), s(), sp()}) {
      CAPTURE(fam.name());
      CAPTURE(p);
      const SpecialFiber f = build_fiber(fam, p);
      const IntersectionMatrix m = intersection_matrix(f);
      const auto mult = multiplicity_vector(f);
      REQUIRE(m.entries.is_symmetric());
      for (std::size_t i = 0; i < m.order(); ++i) {
        Integer row = 0;
        for (std::size_t j = 0; j < m.order(); ++j) {
          row += m.entries(i, j) * mult[j];
          if (i != j) CHECK(m.entries(i, j) >= 0);
        }
        CHECK(m.entries(i, i) < 0);
        CHECK(row == 0);
      }
      // rank n-1: the determinant vanishes but some principal minor does not.
      CHECK(determinant(m.entries) == 0);
      CHECK(determinant(m.entries.without(0, 0)) != 0);
    }
  }
}

TEST_CASE("crossing local rings record the multiplicities") {
  const SpecialFiber f = build_fiber(ns(), 29);
  const auto rings = crossing_local_rings(f);
  bool found = false;
  for (const auto& r : rings) {
    CHECK(r.exponent_a == f.at(r.component_a).multiplicity);
    CHECK(r.exponent_b == f.at(r.component_b).multiplicity);
    CHECK(f.intersection(r.component_a, r.component_b) > 0);
    const auto a = f.at(r.component_a).label, b = f.at(r.component_b).label;
    if ((a == "A" && b == "D_1") || (a == "D_1" && b == "A")) {
      found = true;
      CHECK(r.count == 1);
      const Integer ea = a == "A" ? r.exponent_a : r.exponent_b;
      const Integer ed = a == "A" ? r.exponent_b : r.exponent_a;
      CHECK(ea == 28);
      CHECK(ed == 30);
    }
  }
  CHECK(found);
  CHECK(rings.size() == f.pairing().size());
}

TEST_CASE("NsPlusCoarse p=29 crossing D_1 / E_1 has exponents (30, 15)") {
  const SpecialFiber f = build_fiber(nsp(), 29);
  const auto rings = crossing_local_rings(f);
  const ComponentId d = id_of(f, "D_1"), e = id_of(f, "E_1");
  const auto it = std::find_if(rings.begin(), rings.end(), [&](const CrossingDescriptor& r) {
    return IdPair::of(r.component_a, r.component_b) == IdPair::of(d, e);
  });
  REQUIRE(it != rings.end());
  CHECK(it->count == 1);
  CHECK((it->component_a == d ? it->exponent_a : it->exponent_b) == 30);
  CHECK((it->component_a == e ? it->exponent_a : it->exponent_b) == 15);
}

TEST_CASE("zero intersections never appear") {
  const SpecialFiber f = make_fiber({{"X", 1}, {"Y", 1}, {"Z", 1}}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 0}});
  CHECK(f.pairing().size() == 2);
  CHECK(crossing_local_rings(f).size() == 2);
}

TEST_CASE("every built coarse fiber is connected with a multiplicity-1 component") {
  for (std::int64_t p = 5; p < 200; ++p) {
    if (!is_prime(p)) continue;
    for (const CurveFamily& fam : {ns(), nsp(), s(), sp()}) {
      const SpecialFiber f = build_fiber(fam, p);
      CHECK(dual_graph_connected(f));
      CHECK(satisfies_zero_fiber_rule(f));
      CHECK(std::any_of(f.components().begin(), f.components().end(),
                        [](const Component& c) { return c.multiplicity == 1; }));
    }
  }
}

}
