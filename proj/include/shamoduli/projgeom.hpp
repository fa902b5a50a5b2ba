#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shamoduli/rational.hpp"

namespace shamoduli {

// Sorted, duplicate-free set of 1-based line labels.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<int> items);
  explicit IndexSet(std::vector<int> items);

  static IndexSet range(int first, int last);  // {first..last}, empty if last < first

  // Throws InvalidArgument unless every element lies in 1..n.
  void check_bounds(int n) const;

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool contains(int i) const;
  bool subset_of(const IndexSet& other) const;
  const std::vector<int>& elements() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  int front() const { return items_.front(); }

  IndexSet united(const IndexSet& other) const;
  IndexSet intersected(const IndexSet& other) const;
  IndexSet without(const IndexSet& other) const;

  std::string str() const;

  auto operator<=>(const IndexSet&) const = default;

 private:
  std::vector<int> items_;
};

// All k-subsets of {1..n} in lexicographic order.
std::vector<IndexSet> subsets_of_size(int n, int k);
std::vector<IndexSet> subsets_of_size(const IndexSet& ground, int k);

namespace detail {
Triple canonical_triple(Triple t);
}

// Homogeneous triple in canonical form: first nonzero coordinate is 1.
template <class Tag>
class Homogeneous {
 public:
  explicit Homogeneous(Triple coords) : coords_(detail::canonical_triple(std::move(coords))) {}
  Homogeneous(Rational x0, Rational x1, Rational x2) : Homogeneous(Triple{x0, x1, x2}) {}

  const Triple& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const Homogeneous& a, const Homogeneous& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const Homogeneous& a, const Homogeneous& b) { return a.coords_ < b.coords_; }

 private:
  Triple coords_;
};

struct PointTag {};
struct LineTag {};
using ProjPoint = Homogeneous<PointTag>;  // point of P^2 (or of the dual plane)
using ProjLine = Homogeneous<LineTag>;    // linear form a0 t0 + a1 t1 + a2 t2

std::string to_string(const ProjPoint& p);
std::string to_string(const ProjLine& l);

ProjPoint dualize_line(const ProjLine& l);
ProjLine dualize_point(const ProjPoint& p);
Rational incidence(const ProjPoint& p, const ProjLine& l);
bool lies_on(const ProjPoint& p, const ProjLine& l);

// Throws ProportionalLines when l1 == l2.
ProjPoint meet(const ProjLine& l1, const ProjLine& l2);
ProjLine join(const ProjPoint& p1, const ProjPoint& p2);

// True iff every 3x3 minor of the stacked coordinates vanishes. Needs >= 3 points.
bool collinear(const std::vector<ProjPoint>& pts);
bool concurrent(const std::vector<ProjLine>& lines);

// The line t0 = 0.
ProjLine standard_special_line();

// Base parameters a_1..a_{n-3}: pairwise distinct and outside {0, 1}, so the n
// base points [0:a_i:1], [0:0:1], [0:1:0], [0:1:1] on t0 = 0 are distinct.
void validate_base_params(const RationalVector& a);
RationalVector generic_base_params(int n, std::uint64_t seed);

// n labeled lines together with a distinguished special line l_A.
class LineArrangement {
 public:
  // General arrangement; throws DegenerateBasePoints if a line equals l_A or two
  // lines meet l_A at the same point.
  LineArrangement(std::vector<ProjLine> lines, ProjLine special_line);

  int n() const { return static_cast<int>(lines_.size()); }
  const ProjLine& line(int i) const { return lines_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<ProjLine>& lines() const { return lines_; }
  const ProjLine& special_line() const { return special_; }
  ProjPoint base_point(int i) const { return meet(line(i), special_); }

  // Present when the arrangement was built in standard coordinates.
  const std::optional<RationalVector>& base_params() const { return base_params_; }
  const std::optional<RationalVector>& s() const { return s_; }

  friend bool operator==(const LineArrangement& a, const LineArrangement& b) {
    return a.lines_ == b.lines_ && a.special_ == b.special_;
  }

 private:
  friend LineArrangement arrangement_from_s(int n, const RationalVector& a, const RationalVector& s);
  std::vector<ProjLine> lines_;
  ProjLine special_;
  std::optional<RationalVector> base_params_;
  std::optional<RationalVector> s_;
};

// Standard coordinates: l_A = (t0), l_i = (t1 - a_i t2 + s_i t0) for i <= n-3,
// l_{n-2} = (s_{n-2} t0 + t1), l_{n-1} = (t2), l_n = (t1 - t2).
LineArrangement arrangement_from_s(int n, const RationalVector& a, const RationalVector& s);

// True iff arr is in standard coordinates for base parameters a.
bool matches_standard_coordinates(const LineArrangement& arr, const RationalVector& a);

// Points where >= 3 lines concur, each with the maximal set of lines through it.
std::map<ProjPoint, IndexSet> multiple_points(const LineArrangement& arr);
std::vector<IndexSet> concurrence_sets(const LineArrangement& arr);

// Linear forms in s_1..s_{n-2} whose common zero set is H(I): one 3x3
// determinant of dual points for every triple in I.
std::vector<RationalVector> h_locus_equations(int n, const RationalVector& a, const IndexSet& I);

// Scale a homogeneous vector so its first nonzero entry is 1; throws if all zero.
RationalVector canonical_homogeneous(RationalVector v);
bool all_zero(const RationalVector& v);

struct UniversalFamilyCheck {
  RationalVector zeta;       // zeta_1..zeta_n
  bool first = false;        // a2 z3 - a1 z4 == (a2 - a1) t1
  bool second = false;       // z3 - z4 == (a2 - a1) t2
  bool differences = false;  // z_i - z_{i+2} == s_i t0 for i <= n-2
  bool hyperplanes = false;  // H_i(zeta(t)) == (a2 - a1) l_i(t) for all i
  bool ok() const { return first && second && differences && hyperplanes; }
};

UniversalFamilyCheck check_universal_family(int n, const RationalVector& a, const RationalVector& s, const ProjPoint& t);
bool verify_universal_family(int n, const RationalVector& a, const RationalVector& s, const ProjPoint& t);

}  // namespace shamoduli
