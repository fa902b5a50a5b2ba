#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shamoduli/projgeom.hpp"
#include "shamoduli/weights.hpp"

namespace shamoduli {

struct BuildingSetElement {
  IndexSet I;
  int codim = 0;  // |I| - 2
  friend auto operator<=>(const BuildingSetElement&, const BuildingSetElement&) = default;
};

// Divisor intersection written through its G-factors: pairwise |J_a ∩ J_b| <= 1.
struct StratumLabel {
  std::vector<IndexSet> factors;  // sorted
  int codim() const;
  std::string str() const;
  friend auto operator<=>(const StratumLabel&, const StratumLabel&) = default;
};

struct HassettElement {
  IndexSet I;  // never contains 1
  friend auto operator<=>(const HassettElement&, const HassettElement&) = default;
};

// I with 3 <= |I| <= n-1 and sum_I w > 2, by codimension then lexicographically.
std::vector<BuildingSetElement> building_set(int n, const WeightVector& w);

// Merge factors sharing two or more indices until none do. Throws
// EmptyIntersection if a merged factor reaches n indices.
StratumLabel g_factors(const std::vector<IndexSet>& family, int n);

// r_0 = 0, r_m = sum_{i <= m} (|J_i| - 2). Throws DimensionUnderflow past n - 3.
std::vector<int> transversal_codims(const StratumLabel& label, int n);

// Exact search for s-coordinates where each J_i is a maximal multiple point
// and the combined h-locus system has the expected rank.
bool realizable(const StratumLabel& label, int n, std::uint64_t seed = 1);

// Labels of nonempty divisor intersections using at most max_depth divisors,
// the empty label (open stratum) first, then by codimension and lexicographically.
std::vector<StratumLabel> strata(int n, const WeightVector& w, int max_depth, std::size_t budget = 200000,
                                 std::uint64_t seed = 1);

// Decreasing |I|, lexicographic ties.
std::vector<BuildingSetElement> blow_up_sequence(int n, const WeightVector& w);

struct HassettSplit {
  std::vector<HassettElement> hassett;
  std::vector<BuildingSetElement> remainder;
};

HassettSplit hassett_split(int n, const WeightVector& w);

// (1, 3/(2(n-1)), 1/(n-1), ..., 1/(n-1)).
WeightVector hassett_weights(int n);

// Containment order of strata (edges from a stratum to the ones in its
// boundary), transitively reduced.
std::string strata_poset_dot(const std::vector<StratumLabel>& labels);

}  // namespace shamoduli
