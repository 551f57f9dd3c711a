#pragma once

#include "cartan/family.hpp"
#include "cartan/integer.hpp"
#include "cartan/matrix.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cartan {

struct ComponentId {
  std::uint32_t value = 0;

  friend auto operator<=>(const ComponentId&, const ComponentId&) = default;
};

enum class ComponentKind { IgusaVertical, Drinfeld, ExceptionalTail, External, Other };

/// What we know about the underlying curve of a component.
enum class Smoothness { SmoothRational, SingularRational, UnknownGenus };

std::string_view to_string(ComponentKind kind);
std::string_view to_string(Smoothness smoothness);
std::optional<ComponentKind> parse_component_kind(std::string_view text);
std::optional<Smoothness> parse_smoothness(std::string_view text);

struct Component {
  ComponentId id;
  std::string label;
  Integer multiplicity;
  ComponentKind kind = ComponentKind::Other;
  Smoothness smoothness = Smoothness::SmoothRational;

  friend bool operator==(const Component&, const Component&) = default;
};

/// Unordered pair of distinct components, stored with first < second.
struct IdPair {
  ComponentId first;
  ComponentId second;

  static IdPair of(ComponentId a, ComponentId b) { return a < b ? IdPair{a, b} : IdPair{b, a}; }
  bool contains(ComponentId id) const { return first == id || second == id; }
  ComponentId other(ComponentId id) const { return first == id ? second : first; }

  friend auto operator<=>(const IdPair&, const IdPair&) = default;
};

/// Intersection numbers C.D for distinct C, D. Zero entries are never stored.
using Pairing = std::map<IdPair, Integer>;

/// One geometric point where components cross. `local` holds the local
/// intersection multiplicity of every pair of components through the point.
/// Summing `local` over all points gives the pairing.
struct CrossingPoint {
  std::vector<ComponentId> through;  // sorted
  std::map<IdPair, Integer> local;

  friend bool operator==(const CrossingPoint&, const CrossingPoint&) = default;
};

/// Special fiber of a regular arithmetic-surface model: components with
/// multiplicities and the intersection pairing between them. Immutable.
class SpecialFiber {
 public:
  /// When `points` is empty, every unit of every pairing entry becomes its
  /// own transverse crossing point.
  SpecialFiber(CurveFamily family, std::int64_t prime, std::vector<Component> components,
               Pairing pairing, std::vector<CrossingPoint> points = {});

  const CurveFamily& family() const { return family_; }
  std::int64_t prime() const { return prime_; }
  const std::vector<Component>& components() const { return components_; }
  const Pairing& pairing() const { return pairing_; }
  const std::vector<CrossingPoint>& points() const { return points_; }
  const std::optional<std::map<ComponentId, Integer>>& self_intersections() const {
    return self_intersections_;
  }
  std::size_t size() const { return components_.size(); }

  const Component* find(ComponentId id) const;
  const Component* find_label(std::string_view label) const;
  /// Throws std::out_of_range.
  const Component& at(ComponentId id) const;
  const Component& at_label(std::string_view label) const;

  /// C.D for C != D (0 when absent); C^2 when C == D, which requires
  /// self-intersections to be filled.
  Integer intersection(ComponentId a, ComponentId b) const;
  Integer self_intersection(ComponentId id) const;

  /// Components meeting `id` with positive intersection number, in id order.
  std::vector<ComponentId> neighbours(ComponentId id) const;

  /// True when the crossing points are exactly the transverse points
  /// implied by the pairing alone.
  bool has_default_points() const;

  /// Same fiber with the given self-intersections attached.
  SpecialFiber with_self_intersections(std::map<ComponentId, Integer> selfs) const;

  friend bool operator==(const SpecialFiber&, const SpecialFiber&) = default;

 private:
  CurveFamily family_;
  std::int64_t prime_;
  std::vector<Component> components_;
  Pairing pairing_;
  std::vector<CrossingPoint> points_;
  std::optional<std::map<ComponentId, Integer>> self_intersections_;
};

/// Points implied by a pairing when nothing else is known: one transverse
/// point per unit of intersection.
std::vector<CrossingPoint> default_points(const Pairing& pairing);

enum class Severity { Violation, Warning, Note };

struct ValidationIssue {
  Severity severity;
  std::string code;  // e.g. "dangling-id"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  /// No violations (warnings and notes allowed).
  bool ok() const;
  bool has(std::string_view code) const;
};

ValidationReport validate_fiber(const SpecialFiber& fiber);

/// Fills C^2 = -(1/m_C) * sum_{D != C} m_D (C.D) for every component. A
/// single-component fiber gets C^2 = 0. Throws DivisibilityError.
SpecialFiber derive_self_intersections(const SpecialFiber& fiber);

/// Full intersection matrix in the fiber's component order.
struct IntersectionMatrix {
  std::vector<ComponentId> basis;
  IntMatrix entries;

  std::size_t order() const { return basis.size(); }
  /// Restrict and reorder to the given basis (ids must be present).
  IntersectionMatrix reordered(const std::vector<ComponentId>& new_basis) const;
};

/// Uses the stored self-intersections, deriving them first if needed.
IntersectionMatrix intersection_matrix(const SpecialFiber& fiber);

std::vector<Integer> multiplicity_vector(const SpecialFiber& fiber);

/// Completed local ring Z_p^ur[[X,Y]]/(X^a Y^b - p) at the crossings of
/// two components; a and b are their multiplicities.
struct CrossingDescriptor {
  ComponentId component_a;
  ComponentId component_b;
  Integer exponent_a;
  Integer exponent_b;
  Integer count;
};

std::vector<CrossingDescriptor> crossing_local_rings(const SpecialFiber& fiber);

bool dual_graph_connected(const SpecialFiber& fiber);

/// sum_D m_D (C.D), including D = C, is zero for every C.
bool satisfies_zero_fiber_rule(const SpecialFiber& fiber);

}  // namespace cartan
