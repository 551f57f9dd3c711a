#pragma once

#include "cartan/family.hpp"
#include "cartan/intlinalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cartan {

/// Closed-form component group for a coarse family; nullopt for fine
/// families, where no closed form is known. Throws InvalidPrime.
std::optional<AbelianGroup> expected_component_group(const CurveFamily& family, std::int64_t p);

/// Number of components of the special fiber of the minimal regular model.
std::optional<std::size_t> expected_minimal_component_count(const CurveFamily& family,
                                                            std::int64_t p);

struct ExpectedResult {
  CurveFamily family;
  std::int64_t p;
  std::optional<AbelianGroup> group;
  std::optional<std::size_t> minimal_count;
  std::string source;
};

ExpectedResult expected_result(const CurveFamily& family, std::int64_t p);

struct CheckRecord {
  std::string check;
  std::string computed;
  std::string expected;  // "unspecified" when there is no closed form
  bool pass = false;
};

struct VerificationReport {
  CurveFamily family;
  std::int64_t p;
  std::vector<CheckRecord> checks;

  bool passed() const;
  const CheckRecord* find(std::string_view check) const;
};

/// Runs the whole pipeline (build, self-intersections, component group,
/// minor determinants, minimal model) and compares with the closed forms.
/// Never throws for a valid prime; failures become report entries.
VerificationReport verify(const CurveFamily& family, std::int64_t p);

}  // namespace cartan
