#pragma once

#include "cartan/fiber.hpp"

#include <utility>
#include <vector>

namespace cartan {

struct PairUpdate {
  ComponentId a;
  ComponentId b;
  Integer before;
  Integer after;

  friend bool operator==(const PairUpdate&, const PairUpdate&) = default;
};

struct SelfUpdate {
  ComponentId id;
  Integer before;
  Integer after;

  friend bool operator==(const SelfUpdate&, const SelfUpdate&) = default;
};

struct SmoothnessChange {
  ComponentId id;
  Smoothness before;
  Smoothness after;

  friend bool operator==(const SmoothnessChange&, const SmoothnessChange&) = default;
};

/// One Castelnuovo blow-down.
struct ContractionStep {
  ComponentId contracted_id;
  std::string contracted_label;
  Integer pre_self_intersection;  // always -1
  std::vector<PairUpdate> updated_pairs;
  std::vector<SelfUpdate> updated_selfs;
  std::vector<SmoothnessChange> smoothness_changes;

  friend bool operator==(const ContractionStep&, const ContractionStep&) = default;
};

enum class ContractionTarget { Minimal, MinimalNcd };

std::string_view to_string(ContractionTarget target);

struct ContractionTrace {
  ContractionTarget target = ContractionTarget::Minimal;
  SpecialFiber initial;
  std::vector<ContractionStep> steps;
  SpecialFiber final_fiber;

  std::vector<std::string> contracted_labels() const;
};

/// Smooth rational components with self-intersection -1, ascending id.
std::vector<ComponentId> exceptional_candidates(const SpecialFiber& fiber);

/// Blows down `id` using the projection formula
///   (C.D)' = C.D + (C.E)(D.E),  (C^2)' = C^2 + (C.E)^2.
/// A smooth survivor with C.E >= 2 becomes SingularRational. All crossing
/// points on E merge into one point. Throws NotContractible.
std::pair<SpecialFiber, ContractionStep> contract_component(const SpecialFiber& fiber,
                                                            ComponentId id);

/// Every local intersection multiplicity is at most 1 and no component is
/// SingularRational.
bool is_ncd(const SpecialFiber& fiber);

/// Would contracting `id` keep the fiber ncd? Evaluated without contracting.
bool contraction_preserves_ncd(const SpecialFiber& fiber, ComponentId id);

/// Contract the lowest-id candidate until no smooth rational (-1)-curve is left.
ContractionTrace contract_to_minimal(const SpecialFiber& fiber);

/// Contract the lowest-id candidate whose contraction keeps the fiber ncd,
/// until none is left. Throws InvalidParameter if the input is not ncd.
ContractionTrace contract_to_minimal_ncd(const SpecialFiber& fiber);

/// Re-applies the recorded steps to trace.initial; throws InvariantViolation
/// if any recorded delta disagrees.
SpecialFiber replay(const ContractionTrace& trace);

}  // namespace cartan
