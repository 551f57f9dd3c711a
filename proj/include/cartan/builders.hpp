#pragma once

#include "cartan/family.hpp"
#include "cartan/fiber.hpp"

#include <cstdint>

namespace cartan {

/// Deterministic trial division; fine for the primes this library targets.
bool is_prime(std::int64_t n);

/// Supersingular j-invariants in characteristic p = 12k + i.
struct SupersingularProfile {
  std::int64_t p = 0;
  std::int64_t k = 0;
  int residue = 0;  // i in {1, 5, 7, 11}
  std::int64_t generic_count = 0;  // supersingular j outside {0, 1728}; equals k
  bool j0_supersingular = false;     // p = 2 mod 3
  bool j1728_supersingular = false;  // p = 3 mod 4
  std::int64_t total = 0;
};

/// Throws InvalidPrime unless p is a prime >= 5.
SupersingularProfile supersingular_profile(std::int64_t p);

/// Special fiber of the regular model of the family at p, with every crossing
/// transverse and of intersection number 1. Coarse fibers always carry
/// self-intersections. Fine fibers carry them only when the zero-fiber rule
/// gives integers; their Igusa parts are single nodes of unknown genus.
///
/// Component ids follow a fixed canonical order: Igusa parts, the j = 1728
/// chain, the j = 0 chain, then D_1..D_k, then the first tail of every D_i,
/// then the second tail of every D_i.
SpecialFiber build_fiber(const CurveFamily& family, std::int64_t p);

}  // namespace cartan
