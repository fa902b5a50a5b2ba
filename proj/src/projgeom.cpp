#include "shamoduli/projgeom.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "shamoduli/error.hpp"
#include "shamoduli/linalg.hpp"

namespace shamoduli {

IndexSet::IndexSet(std::initializer_list<int> items) : IndexSet(std::vector<int>(items)) {}

IndexSet::IndexSet(std::vector<int> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  if (!items_.empty() && items_.front() < 1)
    throw Error(ErrorCode::InvalidArgument, "line labels start at 1");
}

IndexSet IndexSet::range(int first, int last) {
  std::vector<int> v;
  for (int i = first; i <= last; ++i) v.push_back(i);
  return IndexSet(std::move(v));
}

void IndexSet::check_bounds(int n) const {
  if (!items_.empty() && items_.back() > n)
    throw Error(ErrorCode::InvalidArgument, "index set " + str() + " exceeds n = " + std::to_string(n));
}

bool IndexSet::contains(int i) const { return std::binary_search(items_.begin(), items_.end(), i); }

bool IndexSet::subset_of(const IndexSet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

IndexSet IndexSet::united(const IndexSet& other) const {
  std::vector<int> out;
  std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(), std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet IndexSet::intersected(const IndexSet& other) const {
  std::vector<int> out;
  std::set_intersection(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                        std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet IndexSet::without(const IndexSet& other) const {
  std::vector<int> out;
  std::set_difference(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                      std::back_inserter(out));
  return IndexSet(std::move(out));
}

std::string IndexSet::str() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < items_.size(); ++i) os << (i ? "," : "") << items_[i];
  os << '}';
  return os.str();
}

std::vector<IndexSet> subsets_of_size(const IndexSet& ground, int k) {
  std::vector<IndexSet> out;
  const auto& g = ground.elements();
  int n = static_cast<int>(g.size());
  if (k < 0 || k > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    std::vector<int> pick;
    for (int i : idx) pick.push_back(g[static_cast<std::size_t>(i)]);
    out.emplace_back(std::move(pick));
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::vector<IndexSet> subsets_of_size(int n, int k) { return subsets_of_size(IndexSet::range(1, n), k); }

namespace detail {
Triple canonical_triple(Triple t) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (t[i] == 0) continue;
    Rational inv = 1 / t[i];
    for (auto& x : t) x *= inv;
    return t;
  }
  throw Error(ErrorCode::InvalidArgument, "homogeneous triple with all coordinates zero");
}
}  // namespace detail

namespace {
std::string triple_str(const Triple& t) {
  return "[" + to_string(t[0]) + ":" + to_string(t[1]) + ":" + to_string(t[2]) + "]";
}
}  // namespace

std::string to_string(const ProjPoint& p) { return triple_str(p.coords()); }
std::string to_string(const ProjLine& l) { return "(" + triple_str(l.coords()) + ")"; }

ProjPoint dualize_line(const ProjLine& l) { return ProjPoint(l.coords()); }
ProjLine dualize_point(const ProjPoint& p) { return ProjLine(p.coords()); }

Rational incidence(const ProjPoint& p, const ProjLine& l) { return dot(p.coords(), l.coords()); }
bool lies_on(const ProjPoint& p, const ProjLine& l) { return incidence(p, l) == 0; }

ProjPoint meet(const ProjLine& l1, const ProjLine& l2) {
  if (l1 == l2) throw Error(ErrorCode::ProportionalLines, to_string(l1));
  return ProjPoint(cross(l1.coords(), l2.coords()));
}

ProjLine join(const ProjPoint& p1, const ProjPoint& p2) {
  if (p1 == p2) throw Error(ErrorCode::InvalidArgument, "join of coincident points " + to_string(p1));
  return ProjLine(cross(p1.coords(), p2.coords()));
}

bool collinear(const std::vector<ProjPoint>& pts) {
  if (pts.size() < 3) throw Error(ErrorCode::TooFewPoints, "need at least 3 points");
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k)
        if (det3(pts[i].coords(), pts[j].coords(), pts[k].coords()) != 0) return false;
  return true;
}

bool concurrent(const std::vector<ProjLine>& lines) {
  std::vector<ProjPoint> duals;
  for (const auto& l : lines) duals.push_back(dualize_line(l));
  return collinear(duals);
}

ProjLine standard_special_line() { return ProjLine(1, 0, 0); }

void validate_base_params(const RationalVector& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0 || a[i] == 1)
      throw Error(ErrorCode::DegenerateBasePoints, "a_" + std::to_string(i + 1) + " = " + to_string(a[i]));
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] == a[j])
        throw Error(ErrorCode::DegenerateBasePoints,
                    "a_" + std::to_string(i + 1) + " = a_" + std::to_string(j + 1));
  }
}

RationalVector generic_base_params(int n, std::uint64_t seed) {
  if (n < 3) throw Error(ErrorCode::BadN, "n >= 3 required");
  RationalStream rs(seed ^ 0x9e3779b97f4a7c15ULL);
  RationalVector a;
  while (static_cast<int>(a.size()) < n - 3) {
    Rational q = rs.next_nonzero();
    if (q == 1 || std::find(a.begin(), a.end(), q) != a.end()) continue;
    a.push_back(q);
  }
  validate_base_params(a);
  return a;
}

LineArrangement::LineArrangement(std::vector<ProjLine> lines, ProjLine special_line)
    : lines_(std::move(lines)), special_(std::move(special_line)) {
  std::set<ProjPoint> seen;
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    if (lines_[i] == special_)
      throw Error(ErrorCode::DegenerateBasePoints, "line " + std::to_string(i + 1) + " equals the special line");
    if (!seen.insert(meet(lines_[i], special_)).second)
      throw Error(ErrorCode::DegenerateBasePoints,
                  "line " + std::to_string(i + 1) + " shares its base point on the special line");
  }
}

LineArrangement arrangement_from_s(int n, const RationalVector& a, const RationalVector& s) {
  if (n < 3) throw Error(ErrorCode::BadN, "n >= 3 required");
  if (static_cast<int>(a.size()) != n - 3)
    throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(n - 3) + " base parameters");
  if (static_cast<int>(s.size()) != n - 2)
    throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(n - 2) + " s-coordinates");
  if (all_zero(s)) throw Error(ErrorCode::InvalidArgument, "s = 0 is an n-tuple point");
  validate_base_params(a);
  std::vector<ProjLine> lines;
  for (int i = 0; i < n - 3; ++i) lines.emplace_back(s[static_cast<std::size_t>(i)], Rational(1), -a[static_cast<std::size_t>(i)]);
  lines.emplace_back(s[static_cast<std::size_t>(n - 3)], Rational(1), Rational(0));
  lines.emplace_back(Rational(0), Rational(0), Rational(1));
  lines.emplace_back(Rational(0), Rational(1), Rational(-1));
  LineArrangement arr(std::move(lines), standard_special_line());
  arr.base_params_ = a;
  arr.s_ = s;
  return arr;
}

bool matches_standard_coordinates(const LineArrangement& arr, const RationalVector& a) {
  int n = arr.n();
  if (n < 3 || static_cast<int>(a.size()) != n - 3) return false;
  if (!(arr.special_line() == standard_special_line())) return false;
  for (int i = 1; i <= n; ++i) {
    ProjPoint expected = i <= n - 3   ? ProjPoint(0, a[static_cast<std::size_t>(i - 1)], 1)
                         : i == n - 2 ? ProjPoint(0, 0, 1)
                         : i == n - 1 ? ProjPoint(0, 1, 0)
                                      : ProjPoint(0, 1, 1);
    if (!(arr.base_point(i) == expected)) return false;
  }
  // l_{n-1} and l_n are pinned, not just their base points.
  return arr.line(n - 1) == ProjLine(0, 0, 1) && arr.line(n) == ProjLine(0, 1, -1);
}

std::map<ProjPoint, IndexSet> multiple_points(const LineArrangement& arr) {
  std::map<ProjPoint, std::vector<int>> through;
  for (int i = 1; i <= arr.n(); ++i)
    for (int j = i + 1; j <= arr.n(); ++j) {
      if (arr.line(i) == arr.line(j)) continue;  // excluded by callers; never concurrent data
      auto& v = through[meet(arr.line(i), arr.line(j))];
      v.push_back(i);
      v.push_back(j);
    }
  std::map<ProjPoint, IndexSet> out;
  for (auto& [p, v] : through) {
    IndexSet I(std::move(v));
    if (I.size() >= 3 && !lies_on(p, arr.special_line())) out.emplace(p, std::move(I));
  }
  return out;
}

std::vector<IndexSet> concurrence_sets(const LineArrangement& arr) {
  std::vector<IndexSet> out;
  for (auto& [p, I] : multiple_points(arr)) out.push_back(I);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {
// Dual point of line i in standard coordinates: (s_i or 0, c1, c2). `has_s` says
// whether the first coordinate is the variable s_i.
struct DualTemplate {
  bool has_s;
  Rational c1, c2;
};

DualTemplate dual_template(int n, const RationalVector& a, int i) {
  if (i <= n - 3) return {true, Rational(1), -a[static_cast<std::size_t>(i - 1)]};
  if (i == n - 2) return {true, Rational(1), Rational(0)};
  if (i == n - 1) return {false, Rational(0), Rational(1)};
  return {false, Rational(1), Rational(-1)};
}
}  // namespace

std::vector<RationalVector> h_locus_equations(int n, const RationalVector& a, const IndexSet& I) {
  if (static_cast<int>(a.size()) != n - 3) throw Error(ErrorCode::LengthMismatch, "base parameter count");
  I.check_bounds(n);
  if (static_cast<int>(I.size()) < 3 || static_cast<int>(I.size()) > n - 1)
    throw Error(ErrorCode::BadIndexSize, "|I| = " + std::to_string(I.size()) + " outside [3, n-1]");
  std::vector<RationalVector> eqs;
  for (const auto& T : subsets_of_size(I, 3)) {
    const auto& e = T.elements();
    DualTemplate y[3] = {dual_template(n, a, e[0]), dual_template(n, a, e[1]), dual_template(n, a, e[2])};
    RationalVector form(static_cast<std::size_t>(n - 2));
    // Cofactor expansion along the first column, the only one carrying s.
    for (int r = 0; r < 3; ++r) {
      if (!y[r].has_s) continue;
      const auto& p = y[(r + 1) % 3];
      const auto& q = y[(r + 2) % 3];
      form[static_cast<std::size_t>(e[static_cast<std::size_t>(r)] - 1)] += p.c1 * q.c2 - p.c2 * q.c1;
    }
    if (!all_zero(form)) eqs.push_back(std::move(form));
  }
  return eqs;
}

bool all_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

RationalVector canonical_homogeneous(RationalVector v) {
  for (auto& x : v) {
    if (x == 0) continue;
    Rational inv = 1 / x;
    for (auto& y : v) y *= inv;
    return v;
  }
  throw Error(ErrorCode::InvalidArgument, "homogeneous vector with all coordinates zero");
}

UniversalFamilyCheck check_universal_family(int n, const RationalVector& a, const RationalVector& s,
                                            const ProjPoint& t) {
  if (n < 5) throw Error(ErrorCode::BadN, "the zeta map needs n >= 5");
  if (static_cast<int>(a.size()) != n - 3 || static_cast<int>(s.size()) != n - 2)
    throw Error(ErrorCode::LengthMismatch, "a has n-3 and s has n-2 entries");
  if (all_zero(s)) throw Error(ErrorCode::InvalidArgument, "s = 0");
  validate_base_params(a);
  const Rational& t0 = t[0];
  const Rational& t1 = t[1];
  const Rational& t2 = t[2];
  if (t0 == 0) throw Error(ErrorCode::BasePointOnSpecialLine, "zeta is undefined on t0 = 0");

  auto S = [&](int k) -> const Rational& { return s[static_cast<std::size_t>(k - 1)]; };
  auto A = [&](int k) -> const Rational& { return a[static_cast<std::size_t>(k - 1)]; };

  UniversalFamilyCheck out;
  RationalVector& z = out.zeta;
  z.assign(static_cast<std::size_t>(n + 1), Rational(0));  // 1-based scratch, trimmed below
  z[1] = t1 - A(1) * t2 + S(1) * t0;
  z[2] = t1 - A(2) * t2 + S(2) * t0;
  for (int m = 2; 2 * m - 1 <= n; ++m) {
    Rational odd = 0;
    for (int k = 0; k <= m - 2; ++k) odd += S(2 * k + 1);
    z[static_cast<std::size_t>(2 * m - 1)] = z[1] - t0 * odd;
    if (2 * m <= n) {
      Rational even = 0;
      for (int k = 1; k <= m - 1; ++k) even += S(2 * k);
      z[static_cast<std::size_t>(2 * m)] = z[2] - t0 * even;
    }
  }
  auto Z = [&](int k) -> const Rational& { return z[static_cast<std::size_t>(k)]; };

  out.first = A(2) * Z(3) - A(1) * Z(4) == (A(2) - A(1)) * t1;
  out.second = Z(3) - Z(4) == (A(2) - A(1)) * t2;
  out.differences = true;
  for (int i = 1; i <= n - 2; ++i)
    if (Z(i) - Z(i + 2) != S(i) * t0) out.differences = false;

  Rational scale = A(2) - A(1);
  out.hyperplanes = true;
  for (int i = 1; i <= n; ++i) {
    Rational h;
    if (i <= n - 3)
      h = (A(2) * Z(3) - A(1) * Z(4)) - A(i) * (Z(3) - Z(4)) + (A(2) - A(1)) * (Z(i) - Z(i + 2));
    else if (i == n - 2)
      h = (A(2) - A(1)) * (Z(n - 2) - Z(n)) + A(2) * Z(3) - A(1) * Z(4);
    else if (i == n - 1)
      h = Z(3) - Z(4);
    else
      h = (A(2) - 1) * Z(3) - (A(1) - 1) * Z(4);
    // Lines are stored canonically; compare against the raw standard form.
    Triple raw = i <= n - 3   ? Triple{S(i), Rational(1), -A(i)}
                 : i == n - 2 ? Triple{S(n - 2), Rational(1), Rational(0)}
                 : i == n - 1 ? Triple{Rational(0), Rational(0), Rational(1)}
                              : Triple{Rational(0), Rational(1), Rational(-1)};
    if (h != scale * dot(raw, t.coords())) out.hyperplanes = false;
  }
  z.erase(z.begin());
  return out;
}

bool verify_universal_family(int n, const RationalVector& a, const RationalVector& s, const ProjPoint& t) {
  return check_universal_family(n, a, s, t).ok();
}

}  // namespace shamoduli
