#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cartan {

/// Cartan level structure of the modular curve.
enum class CartanType {
  NonSplit,      // X_ns(p)
  NonSplitPlus,  // X_ns+(p)
  Split,         // X_s(p)
  SplitPlus,     // X_s+(p)
};

/// A curve family: the coarse curve, or the fine moduli space with an
/// auxiliary rigid moduli problem having `supersingular_count` supersingular
/// points.
class CurveFamily {
 public:
  static CurveFamily coarse(CartanType type);
  /// Throws InvalidParameter when s_p < 1.
  static CurveFamily fine(CartanType type, std::int64_t s_p);

  /// Accepts the display names produced by name(): "NsCoarse", "SPlusFine(3)", ...
  static std::optional<CurveFamily> from_name(std::string_view name);

  CartanType type() const { return type_; }
  bool is_fine() const { return s_p_.has_value(); }
  /// Supersingular-point count of the auxiliary problem; fine families only.
  std::optional<std::uint32_t> supersingular_count() const { return s_p_; }

  /// "NsCoarse", "NsPlusCoarse", "SCoarse", "SPlusCoarse", "NsFine(2)", ...
  std::string name() const;
  /// CLI selector: "ns", "ns+", "s", "s+", with a "-fine" suffix for fine families.
  std::string selector() const;

  friend bool operator==(const CurveFamily&, const CurveFamily&) = default;

 private:
  CurveFamily(CartanType type, std::optional<std::uint32_t> s_p) : type_(type), s_p_(s_p) {}

  CartanType type_;
  std::optional<std::uint32_t> s_p_;
};

std::string_view to_string(CartanType type);

}  // namespace cartan
