#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "shamoduli/fourier_motzkin.hpp"
#include "shamoduli/projgeom.hpp"
#include "shamoduli/rational.hpp"

namespace shamoduli {

// Weights w_1..w_n of the marked lines; l_A implicitly carries weight 1.
class WeightVector {
 public:
  // Throws InvalidArgument unless 0 < w_i <= 1 and sum > 2.
  explicit WeightVector(RationalVector w);

  static WeightVector ones(int n);

  int n() const { return static_cast<int>(w_.size()); }
  const Rational& operator[](int i) const { return w_.at(static_cast<std::size_t>(i - 1)); }  // 1-based
  const RationalVector& values() const { return w_; }
  Rational sum() const;
  Rational sum(const IndexSet& I) const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  RationalVector w_;
};

enum class WallKind { MultiplePoint, Coincidence };

// MultiplePoint: sum_I w = 2. Coincidence: sum_I w = 1.
struct Wall {
  WallKind kind;
  IndexSet indices;

  Rational level() const { return kind == WallKind::MultiplePoint ? Rational(2) : Rational(1); }
  // Signed distance sum_I w - level.
  Rational evaluate(const RationalVector& w) const;

  friend auto operator<=>(const Wall&, const Wall&) = default;
};

// Every wall for n lines: W(I) for 3 <= |I| <= n-1 and W~(I) for 2 <= |I| <= n-1.
std::vector<Wall> all_walls(int n);
bool on_wall(const WeightVector& w);

struct BaseWeight {
  // Throws InvalidArgument if some proper subset sums above 2.
  explicit BaseWeight(WeightVector w);
  WeightVector w0;
};

BaseWeight default_base_weight(int n);

bool is_admissible(const WeightVector& w, const BaseWeight& w0);
bool destabilizes(const WeightVector& w, const IndexSet& I);

std::vector<Wall> walls_between(const WeightVector& u, const WeightVector& v);
std::optional<Wall> adjacent(const WeightVector& u, const WeightVector& v);

// Monotone chain from (a perturbation of) w0 to w crossing one MultiplePoint
// wall per step.
std::vector<WeightVector> weight_chain(const BaseWeight& w0, const WeightVector& w, std::uint64_t seed = 1);

struct ExclusionCertificate {
  int n = 0;
  std::vector<IndexSet> index_sets;     // I_1..I_n
  std::array<int, 3> triple{};          // inside I_1 and I_n
  RationalVector direct_farkas;         // triple row + (2) + positivity, over full.rows()
  LinearSystem full{0};                 // (1), (2), 0 < w_i <= 1
  LinearSystem relaxed{0};              // without (2)
  FeasibilityResult full_result;
  FeasibilityResult relaxed_result;
  bool ones_solve_relaxed = false;

  bool ok() const {
    return !full_result.feasible && relaxed_result.feasible && ones_solve_relaxed &&
           verify_farkas(full, direct_farkas);
  }
};

ExclusionCertificate exclusion_certificate(int n);

}  // namespace shamoduli
