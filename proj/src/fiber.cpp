#include "cartan/fiber.hpp"

#include "cartan/errors.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>
#include <utility>

namespace cartan {

namespace {

constexpr std::pair<ComponentKind, std::string_view> kKindNames[] = {
    {ComponentKind::IgusaVertical, "IgusaVertical"},
    {ComponentKind::Drinfeld, "Drinfeld"},
    {ComponentKind::ExceptionalTail, "ExceptionalTail"},
    {ComponentKind::External, "External"},
    {ComponentKind::Other, "Other"},
};

constexpr std::pair<Smoothness, std::string_view> kSmoothnessNames[] = {
    {Smoothness::SmoothRational, "SmoothRational"},
    {Smoothness::SingularRational, "SingularRational"},
    {Smoothness::UnknownGenus, "UnknownGenus"},
};

}  // namespace

std::string_view to_string(ComponentKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "Other";
}

std::string_view to_string(Smoothness smoothness) {
  for (const auto& [s, name] : kSmoothnessNames)
    if (s == smoothness) return name;
  return "UnknownGenus";
}

std::optional<ComponentKind> parse_component_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames)
    if (name == text) return k;
  return std::nullopt;
}

std::optional<Smoothness> parse_smoothness(std::string_view text) {
  for (const auto& [s, name] : kSmoothnessNames)
    if (name == text) return s;
  return std::nullopt;
}

std::vector<CrossingPoint> default_points(const Pairing& pairing) {
  std::vector<CrossingPoint> points;
  for (const auto& [pair, n] : pairing) {
    for (Integer i = 0; i < n; ++i) {
      points.push_back(CrossingPoint{{pair.first, pair.second}, {{pair, Integer(1)}}});
    }
  }
  return points;
}

SpecialFiber::SpecialFiber(CurveFamily family, std::int64_t prime,
                           std::vector<Component> components, Pairing pairing,
                           std::vector<CrossingPoint> points)
    : family_(std::move(family)),
      prime_(prime),
      components_(std::move(components)),
      pairing_(std::move(pairing)),
      points_(std::move(points)) {
  std::erase_if(pairing_, [](const auto& entry) { return entry.second == 0; });
  if (points_.empty()) points_ = default_points(pairing_);
  std::sort(points_.begin(), points_.end(), [](const CrossingPoint& a, const CrossingPoint& b) {
    return std::tie(a.through, a.local) < std::tie(b.through, b.local);
  });
}

const Component* SpecialFiber::find(ComponentId id) const {
  for (const auto& c : components_)
    if (c.id == id) return &c;
  return nullptr;
}

const Component* SpecialFiber::find_label(std::string_view label) const {
  for (const auto& c : components_)
    if (c.label == label) return &c;
  return nullptr;
}

const Component& SpecialFiber::at(ComponentId id) const {
  if (const Component* c = find(id)) return *c;
  throw std::out_of_range("no component with id " + std::to_string(id.value));
}

const Component& SpecialFiber::at_label(std::string_view label) const {
  if (const Component* c = find_label(label)) return *c;
  throw std::out_of_range("no component labelled " + std::string(label));
}

Integer SpecialFiber::intersection(ComponentId a, ComponentId b) const {
  if (a == b) return self_intersection(a);
  auto it = pairing_.find(IdPair::of(a, b));
  return it == pairing_.end() ? Integer(0) : it->second;
}

Integer SpecialFiber::self_intersection(ComponentId id) const {
  if (!self_intersections_) throw std::logic_error("self-intersections are not filled");
  return self_intersections_->at(id);
}

std::vector<ComponentId> SpecialFiber::neighbours(ComponentId id) const {
  std::vector<ComponentId> out;
  for (const auto& [pair, n] : pairing_)
    if (pair.contains(id) && n > 0) out.push_back(pair.other(id));
  std::sort(out.begin(), out.end());
  return out;
}

bool SpecialFiber::has_default_points() const {
  SpecialFiber plain(family_, prime_, {}, pairing_);
  return plain.points_ == points_;
}

SpecialFiber SpecialFiber::with_self_intersections(std::map<ComponentId, Integer> selfs) const {
  SpecialFiber copy = *this;
  copy.self_intersections_ = std::move(selfs);
  return copy;
}

bool ValidationReport::ok() const {
  return std::none_of(issues.begin(), issues.end(),
                      [](const auto& i) { return i.severity == Severity::Violation; });
}

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(issues.begin(), issues.end(), [&](const auto& i) { return i.code == code; });
}

ValidationReport validate_fiber(const SpecialFiber& fiber) {
  ValidationReport report;
  auto add = [&](Severity s, std::string code, std::string message) {
    report.issues.push_back({s, std::move(code), std::move(message)});
  };

  std::set<ComponentId> ids;
  std::set<std::string> labels;
  for (const auto& c : fiber.components()) {
    if (!ids.insert(c.id).second) {
      add(Severity::Violation, "duplicate-id", "component id " + std::to_string(c.id.value) + " repeated");
    }
    if (!labels.insert(c.label).second) {
      add(Severity::Violation, "duplicate-label", "label '" + c.label + "' repeated");
    }
    if (c.multiplicity < 1) {
      add(Severity::Violation, "non-positive-multiplicity",
          "component '" + c.label + "' has multiplicity " + to_decimal(c.multiplicity));
    }
  }

  for (const auto& [pair, n] : fiber.pairing()) {
    if (pair.first == pair.second) {
      add(Severity::Violation, "self-pair", "pairing entry pairs component " +
                                                std::to_string(pair.first.value) + " with itself");
    }
    for (ComponentId id : {pair.first, pair.second}) {
      if (!ids.contains(id)) {
        add(Severity::Violation, "dangling-id",
            "pairing names missing component id " + std::to_string(id.value));
      }
    }
    if (n < 0) {
      add(Severity::Violation, "negative-intersection", "pairing entry is negative");
    }
  }

  std::map<IdPair, Integer> from_points;
  for (const auto& point : fiber.points())
    for (const auto& [pair, n] : point.local) from_points[pair] += n;
  if (from_points != fiber.pairing()) {
    add(Severity::Violation, "point-mismatch",
        "local intersection multiplicities do not sum to the pairing");
  }

  if (fiber.self_intersections() && !satisfies_zero_fiber_rule(fiber)) {
    add(Severity::Violation, "zero-fiber-rule", "sum_D m_D (C.D) != 0 for some C");
  }

  if (fiber.size() <= 1) {
    add(Severity::Note, "trivial-dual-graph", "fiber has a single component");
  } else if (!dual_graph_connected(fiber)) {
    add(Severity::Warning, "disconnected-dual-graph", "dual graph is not connected");
  }
  return report;
}

SpecialFiber derive_self_intersections(const SpecialFiber& fiber) {
  std::map<ComponentId, Integer> selfs;
  const auto& comps = fiber.components();
  if (comps.size() == 1) {
    selfs[comps.front().id] = 0;
    return fiber.with_self_intersections(std::move(selfs));
  }
  std::map<ComponentId, Integer> weighted;
  for (const auto& [pair, n] : fiber.pairing()) {
    weighted[pair.first] += fiber.at(pair.second).multiplicity * n;
    weighted[pair.second] += fiber.at(pair.first).multiplicity * n;
  }
  for (const auto& c : comps) {
    const Integer& sum = weighted[c.id];
    if (sum % c.multiplicity != 0) {
      throw DivisibilityError("multiplicity " + to_decimal(c.multiplicity) + " of '" + c.label +
                              "' does not divide " + to_decimal(sum));
    }
    selfs[c.id] = -(sum / c.multiplicity);
  }
  return fiber.with_self_intersections(std::move(selfs));
}

IntersectionMatrix IntersectionMatrix::reordered(const std::vector<ComponentId>& new_basis) const {
  std::vector<std::size_t> index;
  for (ComponentId id : new_basis) {
    auto it = std::find(basis.begin(), basis.end(), id);
    if (it == basis.end()) throw std::out_of_range("id not in basis");
    index.push_back(static_cast<std::size_t>(it - basis.begin()));
  }
  IntersectionMatrix out{new_basis, IntMatrix(new_basis.size(), new_basis.size())};
  for (std::size_t i = 0; i < index.size(); ++i)
    for (std::size_t j = 0; j < index.size(); ++j) out.entries(i, j) = entries(index[i], index[j]);
  return out;
}

IntersectionMatrix intersection_matrix(const SpecialFiber& input) {
  const SpecialFiber fiber =
      input.self_intersections() ? input : derive_self_intersections(input);
  const auto& comps = fiber.components();
  IntersectionMatrix m{{}, IntMatrix(comps.size(), comps.size())};
  for (const auto& c : comps) m.basis.push_back(c.id);
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = 0; j < comps.size(); ++j)
      m.entries(i, j) = fiber.intersection(comps[i].id, comps[j].id);
  return m;
}

std::vector<Integer> multiplicity_vector(const SpecialFiber& fiber) {
  std::vector<Integer> m;
  for (const auto& c : fiber.components()) m.push_back(c.multiplicity);
  return m;
}

std::vector<CrossingDescriptor> crossing_local_rings(const SpecialFiber& fiber) {
  std::vector<CrossingDescriptor> out;
  for (const auto& [pair, n] : fiber.pairing()) {
    if (n <= 0) continue;
    out.push_back({pair.first, pair.second, fiber.at(pair.first).multiplicity,
                   fiber.at(pair.second).multiplicity, n});
  }
  return out;
}

bool dual_graph_connected(const SpecialFiber& fiber) {
  const auto& comps = fiber.components();
  if (comps.size() <= 1) return true;
  std::set<ComponentId> seen{comps.front().id};
  std::queue<ComponentId> frontier;
  frontier.push(comps.front().id);
  while (!frontier.empty()) {
    const ComponentId current = frontier.front();
    frontier.pop();
    for (ComponentId next : fiber.neighbours(current))
      if (seen.insert(next).second) frontier.push(next);
  }
  return std::all_of(comps.begin(), comps.end(), [&](const auto& c) { return seen.contains(c.id); });
}

bool satisfies_zero_fiber_rule(const SpecialFiber& fiber) {
  if (!fiber.self_intersections()) return false;
  for (const auto& c : fiber.components()) {
    Integer sum = c.multiplicity * fiber.self_intersection(c.id);
    for (ComponentId d : fiber.neighbours(c.id)) sum += fiber.at(d).multiplicity * fiber.intersection(c.id, d);
    if (sum != 0) return false;
  }
  return true;
}

}  // namespace cartan
