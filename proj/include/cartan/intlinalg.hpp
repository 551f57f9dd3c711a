#pragma once

#include "cartan/fiber.hpp"
#include "cartan/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cartan {

enum class PivotStrategy {
  SmallestAbsolute,  // smallest nonzero |a_ij| in the working block
  FirstNonzero,      // first nonzero entry in column-major order
};

struct SmithOptions {
  bool compute_transforms = true;
  PivotStrategy pivot = PivotStrategy::SmallestAbsolute;
};

/// left * M * right = diagonal, with left and right unimodular and the
/// diagonal entries d_1 | d_2 | ... non-negative.
struct SmithDecomposition {
  IntMatrix diagonal;
  std::optional<IntMatrix> left;
  std::optional<IntMatrix> right;

  /// The min(rows, cols) diagonal entries.
  std::vector<Integer> divisors() const;
  std::size_t rank() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& m, SmithOptions options = {});

/// Finite abelian group plus a free part, in invariant-factor form.
class AbelianGroup {
 public:
  AbelianGroup() = default;

  /// Any list of cyclic orders (0 counts as a free Z summand, 1 is dropped);
  /// normalized by pairwise gcd/lcm exchange.
  static AbelianGroup from_cyclic_orders(const std::vector<Integer>& orders,
                                         std::size_t free_rank = 0);

  const std::vector<Integer>& invariant_factors() const { return factors_; }
  std::size_t free_rank() const { return free_rank_; }
  bool is_trivial() const { return factors_.empty() && free_rank_ == 0; }
  /// Product of the invariant factors (the torsion order).
  Integer torsion_order() const;

  /// "Z/3 x Z/72", "Z/12 x Z", "trivial".
  std::string to_string() const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::vector<Integer> factors_;
  std::size_t free_rank_ = 0;
};

/// Z^rows / M Z^cols.
AbelianGroup cokernel_torsion(const IntMatrix& m);

/// Component group of the Neron model of the Jacobian: torsion of the
/// cokernel of the full intersection matrix. Throws NotConnected or
/// NonUnimodularMultiplicities.
AbelianGroup component_group(const SpecialFiber& fiber);

/// |det| of the intersection matrix with base's row and column removed.
/// Throws BadBase unless base has multiplicity 1.
Integer minor_determinant_order(const SpecialFiber& fiber, ComponentId base);

}  // namespace cartan
