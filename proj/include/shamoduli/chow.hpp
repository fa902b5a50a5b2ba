#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shamoduli/linalg.hpp"
#include "shamoduli/projgeom.hpp"
#include "shamoduli/sha.hpp"

namespace shamoduli {

// Element of the group fixing l_A pointwise, as the matrix
//   [[t^-2, 0, 0], [s0, t, 0], [s1, 0, t]]
// acting on dual points written as row vectors.
struct GroupElement {
  GroupElement(Rational t_, Rational s0_, Rational s1_);
  static GroupElement identity() { return GroupElement(1, 0, 0); }
  Rational t, s0, s1;
};

Matrix group_matrix(const GroupElement& g);
ProjPoint act(const GroupElement& g, const ProjPoint& p);
// act(compose(g1, g2), p) == act(g1, act(g2, p)).
GroupElement compose(const GroupElement& g1, const GroupElement& g2);

// Where the line dual to p meets l_A = (x0 = 0); nullopt for [1:0:0] itself.
std::optional<ProjPoint> base_point_of(const ProjPoint& p);

// Dual points of the n marked lines of one plane model. Lines collapsed onto
// the special line appear as [1:0:0].
struct DualConfig {
  std::vector<ProjPoint> points;
  int n() const { return static_cast<int>(points.size()); }
  bool collapsed(int i) const;  // 1-based
};

DualConfig dual_config(const LineArrangement& arr);
DualConfig dual_config(const ShaComponent& c, int n);

// Exponent vector with 0 <= m_i <= 2 and sum 3.
using MVector = std::vector<int>;
std::vector<MVector> all_mvectors(int n);
bool is_mvector(const MVector& m);

struct Condition {
  int codim = 0;
  std::optional<ProjLine> line;    // codim 1: the point must lie on this dual line
  std::optional<ProjPoint> point;  // codim 2: the point must equal this one
};

struct LinearConditions {
  std::vector<Condition> per_index;  // one per line, codim = m_i
};

// Every check that the linear system below relies on; empty means generic.
std::vector<std::string> genericity_failures(const DualConfig& config, const LinearConditions& conds);

// Seeded conditions of codim m_i passing every certificate.
LinearConditions generic_conditions(const DualConfig& config, const MVector& m, std::uint64_t seed);

enum class OrbitVerdict { None = 0, Unique = 1, Infinite = 2 };

// Substitutes u = t^-3, v0 = s0/t, v1 = s1/t, making every condition linear.
// Throws NonGenericConditions if a certificate fails.
OrbitVerdict reparametrized_orbit_system(const DualConfig& config, const LinearConditions& conds);

int component_coefficient(const ShaComponent& c, const MVector& m);

struct CycleClass {
  int n = 0;
  std::map<MVector, int> coeffs;  // every MVector, including zeros
  std::size_t support() const;
  friend bool operator==(const CycleClass&, const CycleClass&) = default;
};

CycleClass cycle_class(const Sha& x);
CycleClass generic_cycle_class(int n);

// Root descent: enter the child whose attachment set holds all of m, stop
// otherwise. Cross-checked against an exhaustive scan.
int unique_contributor(const Sha& x, const MVector& m);

struct Stabilizer {
  int dimension = 0;
  std::vector<RationalVector> relations;  // basis of the solved (log g1, log g2) space
};

// Diagonal subgroup diag((g1 g2)^-1, g1, g2) in the frame (l_A, l_{n-1}, l_n)
// fixing the base points of the lines in fixed (all lines by default).
Stabilizer stabilizer_dimension(const LineArrangement& arr, const std::optional<IndexSet>& fixed = std::nullopt);

// Representative of the G-orbit of a dual configuration.
DualConfig orbit_normal_form(const DualConfig& config);

}  // namespace shamoduli
