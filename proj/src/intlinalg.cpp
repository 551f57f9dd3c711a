#include "cartan/intlinalg.hpp"

#include "cartan/errors.hpp"

#include <algorithm>
#include <sstream>

namespace cartan {

namespace {

// Working state of the elimination: the matrix being diagonalised and the
// accumulated row (left) and column (right) transforms.
class SmithWorker {
 public:
  SmithWorker(const IntMatrix& m, const SmithOptions& options)
      : a_(m), options_(options) {
    if (options_.compute_transforms) {
      left_ = IntMatrix::identity(m.rows());
      right_ = IntMatrix::identity(m.cols());
    }
  }

  SmithDecomposition run() && {
    const std::size_t steps = std::min(a_.rows(), a_.cols());
    for (std::size_t t = 0; t < steps; ++t) {
      if (!place_pivot(t)) break;
      reduce_block(t);
      if (a_(t, t) < 0) negate_row(t);
    }
    return {std::move(a_), std::move(left_), std::move(right_)};
  }

 private:
  void swap_rows(std::size_t i, std::size_t j) {
    a_.swap_rows(i, j);
    if (left_) left_->swap_rows(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a_.swap_cols(i, j);
    if (right_) right_->swap_cols(i, j);
  }
  void add_row(std::size_t target, std::size_t source, const Integer& f) {
    a_.add_row_multiple(target, source, f);
    if (left_) left_->add_row_multiple(target, source, f);
  }
  void add_col(std::size_t target, std::size_t source, const Integer& f) {
    a_.add_col_multiple(target, source, f);
    if (right_) right_->add_col_multiple(target, source, f);
  }
  void negate_row(std::size_t i) {
    a_.negate_row(i);
    if (left_) left_->negate_row(i);
  }

  // Chooses a nonzero pivot in the block [t.., t..] and moves it to (t, t).
  bool place_pivot(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t j = t; j < a_.cols(); ++j) {
      for (std::size_t i = t; i < a_.rows(); ++i) {
        if (a_(i, j) == 0) continue;
        if (options_.pivot == PivotStrategy::FirstNonzero) {
          best = {i, j};
          break;
        }
        const Integer v = abs(a_(i, j));
        if (!best || v < best_abs) {
          best = {i, j};
          best_abs = v;
        }
      }
      if (best && options_.pivot == PivotStrategy::FirstNonzero) break;
    }
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  // Row/column with a nonzero remainder after division by the pivot, chosen
  // per the pivot strategy; nullopt when the column (row) is clear.
  std::optional<std::size_t> pick_row_remainder(std::size_t t) const {
    std::optional<std::size_t> pick;
    for (std::size_t i = t + 1; i < a_.rows(); ++i) {
      if (a_(i, t) == 0) continue;
      if (!pick || (options_.pivot == PivotStrategy::SmallestAbsolute &&
                    abs(a_(i, t)) < abs(a_(*pick, t)))) {
        pick = i;
        if (options_.pivot == PivotStrategy::FirstNonzero) break;
      }
    }
    return pick;
  }
  std::optional<std::size_t> pick_col_remainder(std::size_t t) const {
    std::optional<std::size_t> pick;
    for (std::size_t j = t + 1; j < a_.cols(); ++j) {
      if (a_(t, j) == 0) continue;
      if (!pick || (options_.pivot == PivotStrategy::SmallestAbsolute &&
                    abs(a_(t, j)) < abs(a_(t, *pick)))) {
        pick = j;
        if (options_.pivot == PivotStrategy::FirstNonzero) break;
      }
    }
    return pick;
  }

  void reduce_block(std::size_t t) {
    while (true) {
      // Clear column t below the pivot, swapping in remainders (Euclid).
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t i = t + 1; i < a_.rows(); ++i) {
          if (a_(i, t) == 0) continue;
          add_row(i, t, -Integer(a_(i, t) / a_(t, t)));
        }
        if (auto r = pick_row_remainder(t)) {
          swap_rows(t, *r);
          changed = true;
          continue;
        }
        for (std::size_t j = t + 1; j < a_.cols(); ++j) {
          if (a_(t, j) == 0) continue;
          add_col(j, t, -Integer(a_(t, j) / a_(t, t)));
        }
        if (auto c = pick_col_remainder(t)) {
          swap_cols(t, *c);
          changed = true;
        }
      }
      // Pivot must divide the rest of the block; otherwise fold the
      // offending row into row t and start over.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < a_.rows() && !offending; ++i)
        for (std::size_t j = t + 1; j < a_.cols(); ++j)
          if (a_(i, j) % a_(t, t) != 0) {
            offending = i;
            break;
          }
      if (!offending) return;
      add_row(t, *offending, 1);
    }
  }

  IntMatrix a_;
  SmithOptions options_;
  std::optional<IntMatrix> left_;
  std::optional<IntMatrix> right_;
};

}  // namespace

std::vector<Integer> SmithDecomposition::divisors() const {
  std::vector<Integer> out;
  const std::size_t n = std::min(diagonal.rows(), diagonal.cols());
  for (std::size_t i = 0; i < n; ++i) out.push_back(diagonal(i, i));
  return out;
}

std::size_t SmithDecomposition::rank() const {
  const auto d = divisors();
  return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](const Integer& x) { return x != 0; }));
}

SmithDecomposition smith_normal_form(const IntMatrix& m, SmithOptions options) {
  return SmithWorker(m, options).run();
}

AbelianGroup AbelianGroup::from_cyclic_orders(const std::vector<Integer>& orders,
                                              std::size_t free_rank) {
  AbelianGroup g;
  g.free_rank_ = free_rank;
  for (const Integer& o : orders) {
    const Integer v = abs(o);
    if (v == 0) {
      ++g.free_rank_;
    } else if (v != 1) {
      g.factors_.push_back(v);
    }
  }
  // Replacing (a, b) by (gcd, lcm) keeps the group and ends in a divisor chain.
  auto& f = g.factors_;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      const Integer d = gcd(f[i], f[j]);
      const Integer l = f[i] / d * f[j];
      f[i] = d;
      f[j] = l;
    }
  }
  std::erase_if(f, [](const Integer& x) { return x == 1; });
  return g;
}

Integer AbelianGroup::torsion_order() const {
  Integer order = 1;
  for (const auto& f : factors_) order *= f;
  return order;
}

std::string AbelianGroup::to_string() const {
  if (is_trivial()) return "trivial";
  std::ostringstream out;
  bool first = true;
  for (const auto& f : factors_) {
    out << (first ? "" : " x ") << "Z/" << f;
    first = false;
  }
  for (std::size_t i = 0; i < free_rank_; ++i) {
    out << (first ? "" : " x ") << "Z";
    first = false;
  }
  return out.str();
}

AbelianGroup cokernel_torsion(const IntMatrix& m) {
  const SmithDecomposition snf = smith_normal_form(m, {.compute_transforms = false});
  std::vector<Integer> torsion;
  for (const auto& d : snf.divisors())
    if (d != 0) torsion.push_back(d);
  return AbelianGroup::from_cyclic_orders(torsion, m.rows() - snf.rank());
}

namespace {

void require_group_preconditions(const SpecialFiber& fiber) {
  if (!dual_graph_connected(fiber)) throw NotConnected("special fiber is not connected");
  Integer g = 0;
  for (const auto& c : fiber.components()) g = gcd(g, c.multiplicity);
  if (g != 1) {
    throw NonUnimodularMultiplicities("gcd of multiplicities is " + to_decimal(g) + ", not 1");
  }
}

}  // namespace

AbelianGroup component_group(const SpecialFiber& fiber) {
  require_group_preconditions(fiber);
  const IntersectionMatrix m = intersection_matrix(fiber);
  // The free Z summand is the degree map; the component group is the torsion.
  return AbelianGroup::from_cyclic_orders(cokernel_torsion(m.entries).invariant_factors());
}

Integer minor_determinant_order(const SpecialFiber& fiber, ComponentId base) {
  const Component* c = fiber.find(base);
  if (c == nullptr) throw BadBase("no component with id " + std::to_string(base.value));
  if (c->multiplicity != 1) {
    throw BadBase("base component '" + c->label + "' has multiplicity " + to_decimal(c->multiplicity));
  }
  require_group_preconditions(fiber);
  const IntersectionMatrix m = intersection_matrix(fiber);
  const auto it = std::find(m.basis.begin(), m.basis.end(), base);
  const auto index = static_cast<std::size_t>(it - m.basis.begin());
  return abs(determinant(m.entries.without(index, index)));
}

}  // namespace cartan
