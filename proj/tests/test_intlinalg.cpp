#include "helpers.hpp"
#include "oracles.hpp"

#include "cartan/contraction.hpp"
#include "cartan/errors.hpp"
#include "cartan/intlinalg.hpp"

#include <doctest.h>

using namespace cartan;
using namespace testing_helpers;

namespace {

AbelianGroup group(std::vector<long long> orders, std::size_t free_rank = 0) {
  return AbelianGroup::from_cyclic_orders(std::vector<Integer>(orders.begin(), orders.end()), free_rank);
}

IntMatrix printed_split_17() {
  return IntMatrix{{-23, 1, 1, 0, 1}, {1, -23, 1, 0, 1}, {1, 1, -1, 1, 1}, {0, 0, 1, -2, 0}, {1, 1, 1, 0, -3}};
}

}  // namespace

TEST_SUITE("intlinalg") {

TEST_CASE("smith normal form of small matrices") {
  const auto d = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  CHECK(d.diagonal == IntMatrix{{1, 0}, {0, 6}});
  CHECK(d.rank() == 2);
  const auto z = smith_normal_form(IntMatrix{{0, 0}, {0, 0}});
  CHECK(z.diagonal == IntMatrix{{0, 0}, {0, 0}});
  CHECK(z.rank() == 0);
  CHECK(smith_normal_form(IntMatrix{{4, 6, 8}}).divisors() == std::vector<Integer>{2});
}

TEST_CASE("transforms are optional") {
  const auto d = smith_normal_form(IntMatrix{{2, 4}, {6, 8}}, {.compute_transforms = false});
  CHECK_FALSE(d.left.has_value());
  CHECK_FALSE(d.right.has_value());
  CHECK(d.divisors() == std::vector<Integer>{2, 4});
}

TEST_CASE("printed p=17 split matrix") {
  const auto d = smith_normal_form(printed_split_17());
  CHECK(d.divisors() == std::vector<Integer>{1, 1, 1, 12, 0});
  CHECK(d.rank() == 4);
  const AbelianGroup g = cokernel_torsion(printed_split_17());
  CHECK(g.invariant_factors() == std::vector<Integer>{12});
  CHECK(g.free_rank() == 1);
}

TEST_CASE("cokernel torsion") {
  const AbelianGroup a = cokernel_torsion(IntMatrix{{1, 0}, {0, 6}});
  CHECK(a.invariant_factors() == std::vector<Integer>{6});
  CHECK(a.free_rank() == 0);
  const AbelianGroup z = cokernel_torsion(IntMatrix(3, 3));
  CHECK(z.invariant_factors().empty());
  CHECK(z.free_rank() == 3);
}

TEST_CASE("entries beyond 64 bits") {
  const Integer big = Integer(1) << 100;
  IntMatrix m(2, 2);
  m(0, 0) = big * 6;
  m(0, 1) = big * 4;
  m(1, 0) = big * 4;
  m(1, 1) = big * 10;
  const auto d = smith_normal_form(m);
  CHECK(d.divisors() == std::vector<Integer>{big * 2, big * 22});
  CHECK(*d.left * m * *d.right == d.diagonal);
}

TEST_CASE("random matrices agree with determinantal divisors, both pivot strategies") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const oracle::Grid g = oracle::random_grid(rng, 6, 12);
    std::vector<std::vector<Integer>> rows;
    for (const auto& r : g) rows.emplace_back(r.begin(), r.end());
    const IntMatrix m = IntMatrix::from_rows(rows);
    const auto want = oracle::smith_diagonal(g);
    const auto a = smith_normal_form(m, {.pivot = PivotStrategy::SmallestAbsolute});
    const auto b = smith_normal_form(m, {.pivot = PivotStrategy::FirstNonzero});
    CHECK(a.diagonal == b.diagonal);
    CHECK(a.divisors() == std::vector<Integer>(want.begin(), want.end()));
    CHECK(abs(determinant(*a.left)) == 1);
    CHECK(abs(determinant(*b.right)) == 1);
    CHECK(*b.left * m * *b.right == b.diagonal);
  }
}

TEST_CASE("abelian group normal form") {
  CHECK(group({4, 6}).invariant_factors() == std::vector<Integer>{2, 12});
  CHECK(group({2, 3}).invariant_factors() == std::vector<Integer>{6});
  CHECK(group({1, 1}).is_trivial());
  CHECK(group({0, 5}).free_rank() == 1);
  CHECK(group({12, 2}) == group({4, 6}));
  CHECK(group({3, 72}).torsion_order() == 216);
  CHECK(group({3, 72}).to_string() == "Z/3 x Z/72");
  CHECK(group({}).to_string() == "trivial");
  CHECK(group({12}, 1).to_string() == "Z/12 x Z");
  CHECK(group({}, 2).to_string() == "Z x Z");
}

TEST_CASE("component groups of built fibers") {
  CHECK(component_group(build_fiber(ns(), 17)) == group({3, 72}));
  CHECK(component_group(build_fiber(ns(), 11)) == group({24}));
  CHECK(component_group(build_fiber(sp(), 101)).is_trivial());
  CHECK(component_group(build_fiber(s(), 29)) == group({35}));
  CHECK(component_group(build_fiber(nsp(), 29)) == group({4, 28}));
  CHECK(component_group(build_fiber(ns(), 29)) == group({5, 120, 840}));
  CHECK(component_group(build_fiber(ns(), 41)) == group({7, 168, 1680, 1680}));
}

TEST_CASE("minimal model gives the same group as the regular model") {
  for (const CurveFamily& fam : {ns(), nsp(), s(), sp()}) {
    const SpecialFiber f = build_fiber(fam, 37);
    CHECK(component_group(contract_to_minimal(f).final_fiber) == component_group(f));
    CHECK(component_group(contract_to_minimal_ncd(f).final_fiber) == component_group(f));
  }
}

TEST_CASE("minor determinant order") {
  const SpecialFiber s7 = build_fiber(s(), 7);
  CHECK(minor_determinant_order(s7, id_of(s7, "E")) == 2);
  const SpecialFiber chain = make_fiber({{"X", 1}, {"Y", 1}}, {{0, 1, 1}});
  CHECK(minor_determinant_order(chain, ComponentId{0}) == 1);
  const SpecialFiber ns13 = build_fiber(ns(), 13);
  CHECK(minor_determinant_order(ns13, id_of(ns13, "E_1")) == 7);
  CHECK_THROWS_AS(minor_determinant_order(ns13, id_of(ns13, "A")), BadBase);
}

TEST_CASE("component group preconditions") {
  CHECK_THROWS_AS(component_group(make_fiber({{"X", 1}, {"Y", 1}}, {})), NotConnected);
  CHECK_THROWS_AS(component_group(make_fiber({{"X", 2}, {"Y", 2}}, {{0, 1, 1}})), NonUnimodularMultiplicities);
  CHECK(component_group(make_fiber({{"C", 1}}, {})).is_trivial());
}

}
