#include "cartan/builders.hpp"

#include "cartan/errors.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cartan {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

SupersingularProfile supersingular_profile(std::int64_t p) {
  if (p < 5 || !is_prime(p)) {
    throw InvalidPrime("p must be a prime >= 5 (got " + std::to_string(p) + ")");
  }
  SupersingularProfile profile;
  profile.p = p;
  profile.k = p / 12;
  profile.residue = static_cast<int>(p % 12);
  profile.generic_count = profile.k;
  profile.j0_supersingular = p % 3 == 2;
  profile.j1728_supersingular = p % 4 == 3;
  profile.total = profile.k + (profile.j0_supersingular ? 1 : 0) +
                  (profile.j1728_supersingular ? 1 : 0);
  return profile;
}

namespace {

class Assembler {
 public:
  ComponentId add(std::string label, Integer multiplicity, ComponentKind kind,
                  Smoothness smoothness = Smoothness::SmoothRational) {
    const ComponentId id{static_cast<std::uint32_t>(components_.size())};
    components_.push_back({id, std::move(label), std::move(multiplicity), kind, smoothness});
    return id;
  }

  void link(ComponentId a, ComponentId b) { pairing_[IdPair::of(a, b)] += 1; }

  SpecialFiber finish(const CurveFamily& family, std::int64_t p) && {
    return SpecialFiber(family, p, std::move(components_), std::move(pairing_));
  }

 private:
  std::vector<Component> components_;
  Pairing pairing_;
};

std::string indexed(std::string_view stem, std::int64_t i) {
  return std::string(stem) + "_" + std::to_string(i);
}

// Generic supersingular chains D_1..D_count. Each D_i meets every Igusa part
// in `igusa`; tails listed in `tails` hang off each D_i. Ids are laid out as
// all D_i first, then the first tail of every chain, then the second.
void add_generic_chains(Assembler& out, std::int64_t count, const Integer& p,
                        const std::vector<ComponentId>& igusa,
                        const std::vector<std::pair<std::string, Integer>>& tails) {
  std::vector<ComponentId> drinfeld;
  for (std::int64_t i = 1; i <= count; ++i) {
    const ComponentId d = out.add(indexed("D", i), p + 1, ComponentKind::Drinfeld);
    for (ComponentId v : igusa) out.link(v, d);
    drinfeld.push_back(d);
  }
  for (const auto& [stem, multiplicity] : tails) {
    for (std::int64_t i = 1; i <= count; ++i) {
      const ComponentId t = out.add(indexed(stem, i), multiplicity, ComponentKind::ExceptionalTail);
      out.link(drinfeld[static_cast<std::size_t>(i - 1)], t);
    }
  }
}

SpecialFiber build_ns_coarse(const CurveFamily& family, const SupersingularProfile& ss) {
  const Integer p = ss.p;
  Assembler out;
  const ComponentId a = out.add("A", p - 1, ComponentKind::IgusaVertical);
  if (ss.j1728_supersingular) {
    const ComponentId d = out.add("D_-1", (p + 1) / 2, ComponentKind::Drinfeld);
    out.link(a, d);
    out.link(d, out.add("E_-1", 1, ComponentKind::ExceptionalTail));
    out.link(d, out.add("F_-1", 1, ComponentKind::ExceptionalTail));
  } else {
    out.link(a, out.add("B", (p - 1) / 2, ComponentKind::Other));
  }
  if (ss.j0_supersingular) {
    const ComponentId d = out.add("D_0", (p + 1) / 3, ComponentKind::Drinfeld);
    out.link(a, d);
    out.link(d, out.add("E_0", 1, ComponentKind::ExceptionalTail));
    out.link(d, out.add("F_0", 1, ComponentKind::ExceptionalTail));
  } else {
    out.link(a, out.add("C", (p - 1) / 3, ComponentKind::Other));
  }
  add_generic_chains(out, ss.k, p, {a}, {{"E", Integer(1)}, {"F", Integer(1)}});
  return std::move(out).finish(family, ss.p);
}

SpecialFiber build_ns_plus_coarse(const CurveFamily& family, const SupersingularProfile& ss) {
  const Integer p = ss.p;
  Assembler out;
  const ComponentId a = out.add("A", (p - 1) / 2, ComponentKind::IgusaVertical);
  if (ss.j1728_supersingular) {
    const ComponentId d = out.add("D_-1", (p + 1) / 2, ComponentKind::Drinfeld);
    out.link(a, d);
    out.link(d, out.add("E_-1", 1, ComponentKind::ExceptionalTail));
  }
  if (ss.j0_supersingular) {
    const ComponentId d = out.add("D_0", (p + 1) / 3, ComponentKind::Drinfeld);
    out.link(a, d);
    out.link(d, out.add("E_0", (p + 1) / 6, ComponentKind::ExceptionalTail));
    out.link(d, out.add("F_0", 1, ComponentKind::ExceptionalTail));
  } else {
    const ComponentId c = out.add("C", (p - 1) / 3, ComponentKind::Other);
    out.link(a, c);
    out.link(c, out.add("C_0", (p - 1) / 6, ComponentKind::Other));
  }
  add_generic_chains(out, ss.k, p, {a}, {{"E", (p + 1) / 2}, {"F", Integer(1)}});
  return std::move(out).finish(family, ss.p);
}

SpecialFiber build_s_coarse(const CurveFamily& family, const SupersingularProfile& ss) {
  const Integer p = ss.p;
  Assembler out;
  const ComponentId a = out.add("A", p - 1, ComponentKind::IgusaVertical);
  const ComponentId e = out.add("E", 1, ComponentKind::External);
  const ComponentId f = out.add("F", 1, ComponentKind::External);
  if (ss.j1728_supersingular) {
    const ComponentId d = out.add("D_-1", (p + 1) / 2, ComponentKind::Drinfeld);
    for (ComponentId v : {a, e, f}) out.link(v, d);
  } else {
    out.link(a, out.add("B", (p - 1) / 2, ComponentKind::Other));
  }
  if (ss.j0_supersingular) {
    const ComponentId d = out.add("D_0", (p + 1) / 3, ComponentKind::Drinfeld);
    for (ComponentId v : {a, e, f}) out.link(v, d);
  } else {
    out.link(a, out.add("C", (p - 1) / 3, ComponentKind::Other));
  }
  add_generic_chains(out, ss.k, p, {a, e, f}, {});
  return std::move(out).finish(family, ss.p);
}

SpecialFiber build_s_plus_coarse(const CurveFamily& family, const SupersingularProfile& ss) {
  const Integer p = ss.p;
  Assembler out;
  const ComponentId a = out.add("A", (p - 1) / 2, ComponentKind::IgusaVertical);
  const ComponentId b = out.add("B", 1, ComponentKind::External);
  if (ss.j1728_supersingular) {
    // No tail here: D_-1 meets only A and B.
    const ComponentId d = out.add("D_-1", (p + 1) / 2, ComponentKind::Drinfeld);
    out.link(a, d);
    out.link(b, d);
  }
  if (ss.j0_supersingular) {
    const ComponentId d = out.add("D_0", (p + 1) / 3, ComponentKind::Drinfeld);
    out.link(a, d);
    out.link(b, d);
    out.link(d, out.add("C_0", (p + 1) / 6, ComponentKind::ExceptionalTail));
  } else {
    const ComponentId c = out.add("C", (p - 1) / 3, ComponentKind::Other);
    out.link(a, c);
    out.link(c, out.add("C_0", (p - 1) / 6, ComponentKind::Other));
  }
  add_generic_chains(out, ss.k, p, {a, b}, {{"C", (p + 1) / 2}});
  return std::move(out).finish(family, ss.p);
}

SpecialFiber build_fine(const CurveFamily& family, std::int64_t prime, std::int64_t count) {
  const Integer p = prime;
  constexpr Smoothness kUnknown = Smoothness::UnknownGenus;
  Assembler out;
  switch (family.type()) {
    case CartanType::NonSplit: {
      const ComponentId a = out.add("A", p - 1, ComponentKind::IgusaVertical, kUnknown);
      add_generic_chains(out, count, p, {a}, {{"E", Integer(1)}, {"F", Integer(1)}});
      break;
    }
    case CartanType::NonSplitPlus: {
      const ComponentId a = out.add("A", (p - 1) / 2, ComponentKind::IgusaVertical, kUnknown);
      add_generic_chains(out, count, p, {a}, {{"E", (p + 1) / 2}, {"F", Integer(1)}});
      break;
    }
    case CartanType::Split: {
      const ComponentId a = out.add("A", p - 1, ComponentKind::IgusaVertical, kUnknown);
      const ComponentId e = out.add("E", 1, ComponentKind::External, kUnknown);
      const ComponentId f = out.add("F", 1, ComponentKind::External, kUnknown);
      add_generic_chains(out, count, p, {a, e, f}, {});
      break;
    }
    case CartanType::SplitPlus: {
      const ComponentId a = out.add("A", (p - 1) / 2, ComponentKind::IgusaVertical, kUnknown);
      const ComponentId b = out.add("B", 1, ComponentKind::External, kUnknown);
      add_generic_chains(out, count, p, {a, b}, {{"C", (p + 1) / 2}});
      break;
    }
  }
  return std::move(out).finish(family, prime);
}

}  // namespace

SpecialFiber build_fiber(const CurveFamily& family, std::int64_t p) {
  const SupersingularProfile ss = supersingular_profile(p);
  if (family.is_fine()) {
    const SpecialFiber fiber = build_fine(family, p, *family.supersingular_count());
    try {
      return derive_self_intersections(fiber);
    } catch (const DivisibilityError&) {
      // A single Igusa node cannot absorb a non-integral share; see README.
      return fiber;
    }
  }
  switch (family.type()) {
    case CartanType::NonSplit:
      return derive_self_intersections(build_ns_coarse(family, ss));
    case CartanType::NonSplitPlus:
      return derive_self_intersections(build_ns_plus_coarse(family, ss));
    case CartanType::Split:
      return derive_self_intersections(build_s_coarse(family, ss));
    case CartanType::SplitPlus:
      return derive_self_intersections(build_s_plus_coarse(family, ss));
  }
  throw std::logic_error("unknown Cartan type");
}

}  // namespace cartan
