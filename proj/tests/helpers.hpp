#pragma once

#include "cartan/builders.hpp"
#include "cartan/fiber.hpp"

#include <string>
#include <utility>
#include <vector>

namespace testing_helpers {

using namespace cartan;

inline CurveFamily ns() { return CurveFamily::coarse(CartanType::NonSplit); }
inline CurveFamily nsp() { return CurveFamily::coarse(CartanType::NonSplitPlus); }
inline CurveFamily s() { return CurveFamily::coarse(CartanType::Split); }
inline CurveFamily sp() { return CurveFamily::coarse(CartanType::SplitPlus); }

inline ComponentId id_of(const SpecialFiber& f, const std::string& label) { return f.at_label(label).id; }

inline Integer meet(const SpecialFiber& f, const std::string& a, const std::string& b) {
  return f.intersection(id_of(f, a), id_of(f, b));
}

inline Integer self(const SpecialFiber& f, const std::string& label) {
  return f.self_intersection(id_of(f, label));
}

// Hand-made fiber: components (label, multiplicity) get ids 0, 1, ...; edges
// are (i, j, n) on those ids. Self-intersections are derived.
inline SpecialFiber make_fiber(const std::vector<std::pair<std::string, long long>>& comps,
                               const std::vector<std::tuple<unsigned, unsigned, long long>>& edges) {
  std::vector<Component> cs;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    cs.push_back({ComponentId{static_cast<std::uint32_t>(i)}, comps[i].first, Integer(comps[i].second),
                  ComponentKind::Other, Smoothness::SmoothRational});
  }
  Pairing pairing;
  for (const auto& [a, b, n] : edges) pairing[IdPair::of(ComponentId{a}, ComponentId{b})] = n;
  return derive_self_intersections(SpecialFiber(CurveFamily::coarse(CartanType::Split), 7, cs, pairing));
}

inline std::vector<std::string> labels(const SpecialFiber& f) {
  std::vector<std::string> out;
  for (const auto& c : f.components()) out.push_back(c.label);
  return out;
}

}  // namespace testing_helpers
