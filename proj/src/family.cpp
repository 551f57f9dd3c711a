#include "cartan/family.hpp"

#include "cartan/errors.hpp"

#include <array>
#include <charconv>
#include <utility>

namespace cartan {

namespace {

struct TypeNames {
  CartanType type;
  std::string_view display;
  std::string_view selector;
};

constexpr std::array<TypeNames, 4> kNames{{
    {CartanType::NonSplit, "Ns", "ns"},
    {CartanType::NonSplitPlus, "NsPlus", "ns+"},
    {CartanType::Split, "S", "s"},
    {CartanType::SplitPlus, "SPlus", "s+"},
}};

const TypeNames& names_of(CartanType type) {
  for (const auto& n : kNames)
    if (n.type == type) return n;
  throw std::logic_error("unknown Cartan type");
}

}  // namespace

CurveFamily CurveFamily::coarse(CartanType type) { return CurveFamily(type, std::nullopt); }

CurveFamily CurveFamily::fine(CartanType type, std::int64_t s_p) {
  if (s_p < 1) throw InvalidParameter("s_P must be at least 1 for fine families");
  if (s_p > UINT32_MAX) throw InvalidParameter("s_P is too large");
  return CurveFamily(type, static_cast<std::uint32_t>(s_p));
}

std::optional<CurveFamily> CurveFamily::from_name(std::string_view name) {
  // Longest prefixes first so "NsPlus" is not read as "Ns".
  for (CartanType type : {CartanType::NonSplitPlus, CartanType::SplitPlus, CartanType::NonSplit,
                          CartanType::Split}) {
    const std::string_view prefix = names_of(type).display;
    if (!name.starts_with(prefix)) continue;
    std::string_view rest = name.substr(prefix.size());
    if (rest == "Coarse") return coarse(type);
    if (rest.starts_with("Fine(") && rest.ends_with(")")) {
      rest = rest.substr(5, rest.size() - 6);
      std::int64_t s = 0;
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), s);
      if (ec != std::errc{} || ptr != rest.data() + rest.size() || s < 1) return std::nullopt;
      return fine(type, s);
    }
  }
  return std::nullopt;
}

std::string CurveFamily::name() const {
  std::string out(names_of(type_).display);
  if (s_p_) return out + "Fine(" + std::to_string(*s_p_) + ")";
  return out + "Coarse";
}

std::string CurveFamily::selector() const {
  std::string out(names_of(type_).selector);
  return s_p_ ? out + "-fine" : out;
}

std::string_view to_string(CartanType type) { return names_of(type).selector; }

}  // namespace cartan
