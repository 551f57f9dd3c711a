#include "cartan/contraction.hpp"

#include "cartan/errors.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace cartan {

std::string_view to_string(ContractionTarget target) {
  return target == ContractionTarget::Minimal ? "minimal" : "ncd";
}

std::vector<std::string> ContractionTrace::contracted_labels() const {
  std::vector<std::string> labels;
  for (const auto& step : steps) labels.push_back(step.contracted_label);
  return labels;
}

namespace {

bool is_exceptional(const SpecialFiber& fiber, const Component& c) {
  return c.smoothness == Smoothness::SmoothRational && fiber.self_intersections() &&
         fiber.self_intersection(c.id) == -1;
}

// Neighbours of `id` with their intersection numbers against it.
std::vector<std::pair<ComponentId, Integer>> weighted_neighbours(const SpecialFiber& fiber,
                                                                 ComponentId id) {
  std::vector<std::pair<ComponentId, Integer>> out;
  for (ComponentId n : fiber.neighbours(id)) out.emplace_back(n, fiber.intersection(id, n));
  return out;
}

// Local intersection multiplicities, per pair of neighbours, at the single
// point that all crossings on `id` collapse to.
std::map<IdPair, Integer> merged_point_local(
    const SpecialFiber& fiber, ComponentId id,
    const std::vector<std::pair<ComponentId, Integer>>& neighbours) {
  std::map<IdPair, Integer> local;
  for (const auto& point : fiber.points()) {
    if (!std::binary_search(point.through.begin(), point.through.end(), id)) continue;
    for (const auto& [pair, n] : point.local)
      if (!pair.contains(id)) local[pair] += n;
  }
  for (std::size_t i = 0; i < neighbours.size(); ++i)
    for (std::size_t j = i + 1; j < neighbours.size(); ++j)
      local[IdPair::of(neighbours[i].first, neighbours[j].first)] +=
          neighbours[i].second * neighbours[j].second;
  return local;
}

void require_contractible(const SpecialFiber& fiber, ComponentId id) {
  const Component* c = fiber.find(id);
  if (c == nullptr) throw NotContractible("no component with id " + std::to_string(id.value));
  if (!fiber.self_intersections()) {
    throw NotContractible("self-intersections are not filled");
  }
  if (!is_exceptional(fiber, *c)) {
    throw NotContractible("'" + c->label + "' is not a smooth rational (-1)-curve");
  }
}

}  // namespace

std::vector<ComponentId> exceptional_candidates(const SpecialFiber& fiber) {
  std::vector<ComponentId> out;
  if (!fiber.self_intersections()) return out;
  for (const auto& c : fiber.components())
    if (is_exceptional(fiber, c)) out.push_back(c.id);
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<SpecialFiber, ContractionStep> contract_component(const SpecialFiber& fiber,
                                                            ComponentId id) {
  require_contractible(fiber, id);
  const auto neighbours = weighted_neighbours(fiber, id);
  auto weight_of = [&](ComponentId c) -> Integer {
    for (const auto& [n, w] : neighbours)
      if (n == c) return w;
    return 0;
  };

  ContractionStep step;
  step.contracted_id = id;
  step.contracted_label = fiber.at(id).label;
  step.pre_self_intersection = fiber.self_intersection(id);

  std::vector<Component> survivors;
  for (const auto& c : fiber.components()) {
    if (c.id == id) continue;
    Component updated = c;
    if (c.smoothness == Smoothness::SmoothRational && weight_of(c.id) >= 2) {
      updated.smoothness = Smoothness::SingularRational;
      step.smoothness_changes.push_back({c.id, c.smoothness, updated.smoothness});
    }
    survivors.push_back(std::move(updated));
  }

  Pairing pairing;
  for (const auto& [pair, n] : fiber.pairing())
    if (!pair.contains(id)) pairing[pair] = n;
  for (std::size_t i = 0; i < neighbours.size(); ++i) {
    for (std::size_t j = i + 1; j < neighbours.size(); ++j) {
      const IdPair pair = IdPair::of(neighbours[i].first, neighbours[j].first);
      const Integer before = fiber.intersection(pair.first, pair.second);
      const Integer after = before + neighbours[i].second * neighbours[j].second;
      pairing[pair] = after;
      step.updated_pairs.push_back({pair.first, pair.second, before, after});
    }
  }
  std::sort(step.updated_pairs.begin(), step.updated_pairs.end(),
            [](const PairUpdate& x, const PairUpdate& y) {
              return std::tie(x.a, x.b) < std::tie(y.a, y.b);
            });

  std::map<ComponentId, Integer> selfs;
  for (const auto& c : survivors) {
    const Integer before = fiber.self_intersection(c.id);
    const Integer w = weight_of(c.id);
    selfs[c.id] = before + w * w;
    if (w != 0) step.updated_selfs.push_back({c.id, before, selfs[c.id]});
  }

  std::vector<CrossingPoint> points;
  for (const auto& point : fiber.points())
    if (!std::binary_search(point.through.begin(), point.through.end(), id)) points.push_back(point);
  if (neighbours.size() >= 2) {
    CrossingPoint merged;
    for (const auto& [n, w] : neighbours) merged.through.push_back(n);
    merged.local = merged_point_local(fiber, id, neighbours);
    points.push_back(std::move(merged));
  }

  SpecialFiber result =
      SpecialFiber(fiber.family(), fiber.prime(), std::move(survivors), std::move(pairing),
                   std::move(points))
          .with_self_intersections(std::move(selfs));
  if (!satisfies_zero_fiber_rule(result)) {
    throw InvariantViolation("zero-fiber rule broken after contracting '" + step.contracted_label + "'");
  }
  return {std::move(result), std::move(step)};
}

bool is_ncd(const SpecialFiber& fiber) {
  for (const auto& c : fiber.components())
    if (c.smoothness == Smoothness::SingularRational) return false;
  for (const auto& point : fiber.points())
    for (const auto& [pair, n] : point.local)
      if (n > 1) return false;
  return true;
}

bool contraction_preserves_ncd(const SpecialFiber& fiber, ComponentId id) {
  const Component* c = fiber.find(id);
  if (c == nullptr || !is_exceptional(fiber, *c)) return false;
  const auto neighbours = weighted_neighbours(fiber, id);
  for (const auto& [n, w] : neighbours)
    if (w >= 2) return false;  // the image of n would be singular
  for (const auto& [pair, n] : merged_point_local(fiber, id, neighbours))
    if (n > 1) return false;
  return true;
}

namespace {

template <typename Pick>
ContractionTrace drive(const SpecialFiber& input, ContractionTarget target, Pick pick) {
  SpecialFiber current = input.self_intersections() ? input : derive_self_intersections(input);
  ContractionTrace trace{target, current, {}, current};
  while (true) {
    const std::optional<ComponentId> next = pick(current);
    if (!next) break;
    auto [contracted, step] = contract_component(current, *next);
    current = std::move(contracted);
    trace.steps.push_back(std::move(step));
  }
  trace.final_fiber = std::move(current);
  return trace;
}

}  // namespace

ContractionTrace contract_to_minimal(const SpecialFiber& fiber) {
  return drive(fiber, ContractionTarget::Minimal,
               [](const SpecialFiber& f) -> std::optional<ComponentId> {
                 const auto candidates = exceptional_candidates(f);
                 if (candidates.empty()) return std::nullopt;
                 return candidates.front();
               });
}

ContractionTrace contract_to_minimal_ncd(const SpecialFiber& fiber) {
  if (!is_ncd(fiber)) throw InvalidParameter("input fiber does not have normal crossings");
  return drive(fiber, ContractionTarget::MinimalNcd,
               [](const SpecialFiber& f) -> std::optional<ComponentId> {
                 for (ComponentId id : exceptional_candidates(f))
                   if (contraction_preserves_ncd(f, id)) return id;
                 return std::nullopt;
               });
}

SpecialFiber replay(const ContractionTrace& trace) {
  SpecialFiber current = trace.initial;
  for (const auto& recorded : trace.steps) {
    auto [next, step] = contract_component(current, recorded.contracted_id);
    if (!(step == recorded)) {
      throw InvariantViolation("replayed step for '" + recorded.contracted_label +
                               "' differs from the recorded one");
    }
    current = std::move(next);
  }
  if (!(current == trace.final_fiber)) {
    throw InvariantViolation("replay does not reproduce the final fiber");
  }
  return current;
}

}  // namespace cartan
