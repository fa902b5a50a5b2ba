#pragma once

#include <cstddef>
#include <vector>

#include "shamoduli/rational.hpp"

namespace shamoduli {

// coeffs . x <= bound, or < bound when strict.
struct Inequality {
  RationalVector coeffs;
  Rational bound;
  bool strict = false;
};

class LinearSystem {
 public:
  explicit LinearSystem(std::size_t dim) : dim_(dim) {}

  void add(RationalVector coeffs, Rational bound, bool strict);
  void add_le(RationalVector coeffs, Rational bound) { add(std::move(coeffs), std::move(bound), false); }
  void add_lt(RationalVector coeffs, Rational bound) { add(std::move(coeffs), std::move(bound), true); }
  void add_ge(RationalVector coeffs, Rational bound);
  void add_gt(RationalVector coeffs, Rational bound);

  std::size_t dim() const { return dim_; }
  const std::vector<Inequality>& rows() const { return rows_; }

  bool satisfied_by(const RationalVector& x) const;

 private:
  std::size_t dim_;
  std::vector<Inequality> rows_;
};

struct FeasibilityResult {
  bool feasible = false;
  RationalVector witness;  // a point satisfying every row, when feasible
  RationalVector farkas;   // nonnegative row multipliers proving infeasibility
  std::size_t peak_rows = 0;
};

// Exact Fourier-Motzkin elimination with strictness carried per row and
// Chernikov pruning. Both verdicts come with a certificate that is re-checked
// against the input rows before returning.
FeasibilityResult fourier_motzkin(const LinearSystem& system, std::size_t row_budget = 500000);

// lambda >= 0, lambda^T A = 0, and lambda^T b < 0 (or == 0 with a strict row used).
bool verify_farkas(const LinearSystem& system, const RationalVector& multipliers);

}  // namespace shamoduli
