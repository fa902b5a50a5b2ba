#include "shamoduli/chow.hpp"

#include <algorithm>
#include <functional>

#include "shamoduli/error.hpp"

namespace shamoduli {

GroupElement::GroupElement(Rational t_, Rational s0_, Rational s1_) : t(std::move(t_)), s0(std::move(s0_)), s1(std::move(s1_)) {
  if (t == 0) throw Error(ErrorCode::InvalidArgument, "group element needs t != 0");
}

Matrix group_matrix(const GroupElement& g) {
  Matrix m(3, 3);
  m(0, 0) = 1 / (g.t * g.t);
  m(1, 0) = g.s0;
  m(1, 1) = g.t;
  m(2, 0) = g.s1;
  m(2, 2) = g.t;
  return m;
}

ProjPoint act(const GroupElement& g, const ProjPoint& p) {
  const auto& a = p.coords();
  Rational x0 = a[0] / (g.t * g.t * g.t) + g.s0 / g.t * a[1] + g.s1 / g.t * a[2];
  return ProjPoint(x0, a[1], a[2]);
}

GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
  Rational inv = 1 / (g1.t * g1.t);
  return GroupElement(g1.t * g2.t, g2.s0 * inv + g2.t * g1.s0, g2.s1 * inv + g2.t * g1.s1);
}

std::optional<ProjPoint> base_point_of(const ProjPoint& p) {
  if (p[1] == 0 && p[2] == 0) return std::nullopt;
  return ProjPoint(Rational(0), p[2], -p[1]);
}

bool DualConfig::collapsed(int i) const {
  const auto& p = points.at(static_cast<std::size_t>(i - 1));
  return p[1] == 0 && p[2] == 0;
}

DualConfig dual_config(const LineArrangement& arr) {
  DualConfig c;
  for (const auto& l : arr.lines()) c.points.push_back(dualize_line(l));
  return c;
}

DualConfig dual_config(const ShaComponent& comp, int n) {
  DualConfig c;
  auto model = comp.plane_model();
  for (int i = 1; i <= n; ++i)
    c.points.push_back(comp.labels.contains(i) ? dualize_line(model.line(comp.local_index(i))) : ProjPoint(1, 0, 0));
  return c;
}

bool is_mvector(const MVector& m) {
  int total = 0;
  for (int x : m) {
    if (x < 0 || x > 2) return false;
    total += x;
  }
  return total == 3;
}

std::vector<MVector> all_mvectors(int n) {
  std::vector<MVector> out;
  MVector m(static_cast<std::size_t>(n), 0);
  // Lexicographic over {0,1,2}^n, keeping sum 3.
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n) {
      if (left == 0) out.push_back(m);
      return;
    }
    for (int v = 0; v <= std::min(2, left); ++v) {
      m[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
    m[static_cast<std::size_t>(pos)] = 0;
  };
  rec(0, 3);
  return out;
}

namespace {

// The point of the orbit line through p (joined with [1:0:0]) cut out by L.
ProjPoint condition_point(const ProjPoint& p, const ProjLine& L) {
  return meet(L, join(ProjPoint(1, 0, 0), p));
}

}  // namespace

std::vector<std::string> genericity_failures(const DualConfig& config, const LinearConditions& conds) {
  std::vector<std::string> out;
  if (static_cast<int>(conds.per_index.size()) != config.n()) return {"condition count differs from n"};
  std::vector<int> ones;
  for (int i = 1; i <= config.n(); ++i) {
    const auto& c = conds.per_index[static_cast<std::size_t>(i - 1)];
    const std::string tag = "index " + std::to_string(i) + ": ";
    if (c.codim == 1) {
      if (!c.line) {
        out.push_back(tag + "missing condition line");
        continue;
      }
      if ((*c.line)[0] == 0) out.push_back(tag + "condition line passes through [1:0:0]");
      if (!config.collapsed(i)) ones.push_back(i);
    } else if (c.codim == 2) {
      if (!c.point) {
        out.push_back(tag + "missing condition point");
        continue;
      }
      const auto& q = *c.point;
      if (q[0] == 0) out.push_back(tag + "condition point on x0 = 0");
      if (q[1] == 0 && q[2] == 0) out.push_back(tag + "condition point is [1:0:0]");
      auto bq = base_point_of(q);
      auto bp = base_point_of(config.points[static_cast<std::size_t>(i - 1)]);
      if (bq && bp && *bq == *bp) out.push_back(tag + "condition point shares the configuration's base point");
    } else if (c.codim != 0) {
      out.push_back(tag + "codimension must be 0, 1 or 2");
    }
  }
  for (std::size_t x = 0; x < ones.size(); ++x)
    for (std::size_t y = x + 1; y < ones.size(); ++y)
      for (std::size_t z = y + 1; z < ones.size(); ++z) {
        auto P = [&](int i) {
          return condition_point(config.points[static_cast<std::size_t>(i - 1)], *conds.per_index[static_cast<std::size_t>(i - 1)].line);
        };
        if (collinear({P(ones[x]), P(ones[y]), P(ones[z])}))
          out.push_back("condition points of " + IndexSet{ones[x], ones[y], ones[z]}.str() + " are collinear");
      }
  return out;
}

LinearConditions generic_conditions(const DualConfig& config, const MVector& m, std::uint64_t seed) {
  if (static_cast<int>(m.size()) != config.n() || !is_mvector(m)) throw Error(ErrorCode::InvalidArgument, "invalid m vector");
  RationalStream rng(seed, 997);
  for (int attempt = 0; attempt < 64; ++attempt) {
    LinearConditions conds;
    for (int mi : m) {
      Condition c;
      c.codim = mi;
      if (mi == 1) c.line = ProjLine(rng.next_nonzero(), rng.next_nonzero(), rng.next_nonzero());
      if (mi == 2) c.point = ProjPoint(rng.next_nonzero(), rng.next_nonzero(), rng.next_nonzero());
      conds.per_index.push_back(std::move(c));
    }
    if (genericity_failures(config, conds).empty()) return conds;
  }
  throw Error(ErrorCode::NonGenericConditions, "no generic conditions found");
}

OrbitVerdict reparametrized_orbit_system(const DualConfig& config, const LinearConditions& conds) {
  auto failures = genericity_failures(config, conds);
  if (!failures.empty()) throw Error(ErrorCode::NonGenericConditions, failures.front());

  // Unknowns (u, v0, v1); the moved point is [u p0 + v0 p1 + v1 p2 : p1 : p2].
  Matrix A(0, 3);
  RationalVector b;
  for (int i = 1; i <= config.n(); ++i) {
    const auto& p = config.points[static_cast<std::size_t>(i - 1)];
    const auto& c = conds.per_index[static_cast<std::size_t>(i - 1)];
    RationalVector row{p[0], p[1], p[2]};
    if (c.codim == 1) {
      const auto& L = *c.line;
      RationalVector r = row;
      for (auto& x : r) x *= L[0];
      A.append_row(std::move(r));
      b.push_back(-(L[1] * p[1] + L[2] * p[2]));
    } else if (c.codim == 2) {
      const auto& q = *c.point;
      // [X : p1 : p2] proportional to q: X q1 = p1 q0, X q2 = p2 q0, p1 q2 = p2 q1.
      RationalVector r1 = row, r2 = row;
      for (auto& x : r1) x *= q[1];
      for (auto& x : r2) x *= q[2];
      A.append_row(std::move(r1));
      b.push_back(p[1] * q[0]);
      A.append_row(std::move(r2));
      b.push_back(p[2] * q[0]);
      A.append_row(RationalVector(3));
      b.push_back(p[2] * q[1] - p[1] * q[2]);
    }
  }
  if (A.rows() == 0) return OrbitVerdict::Infinite;
  auto sol = solve(A, b);
  switch (sol.kind) {
    case SolutionKind::None:
      return OrbitVerdict::None;
    case SolutionKind::Unique:
      return sol.particular[0] != 0 ? OrbitVerdict::Unique : OrbitVerdict::None;
    case SolutionKind::Family: {
      bool all_u_zero = sol.particular[0] == 0 &&
                        std::all_of(sol.directions.begin(), sol.directions.end(), [](const RationalVector& d) { return d[0] == 0; });
      return all_u_zero ? OrbitVerdict::None : OrbitVerdict::Infinite;
    }
  }
  return OrbitVerdict::None;
}

int component_coefficient(const ShaComponent& c, const MVector& m) {
  if (!is_mvector(m)) throw Error(ErrorCode::InvalidArgument, "invalid m vector");
  auto mass = [&](const IndexSet& I) {
    int total = 0;
    for (int i : I) total += m.at(static_cast<std::size_t>(i - 1));
    return total;
  };
  if (mass(c.collapsed) != 0) return 0;
  for (const auto& I : c.concurrences)
    if (mass(I) > 2) return 0;
  for (int x : m)
    if (x > 1) return 0;
  return 1;
}

std::size_t CycleClass::support() const {
  return static_cast<std::size_t>(std::count_if(coeffs.begin(), coeffs.end(), [](const auto& kv) { return kv.second != 0; }));
}

CycleClass cycle_class(const Sha& x) {
  CycleClass cls;
  cls.n = x.n();
  for (const auto& m : all_mvectors(x.n())) {
    int total = 0;
    for (const auto& c : x.components()) total += component_coefficient(c, m);
    cls.coeffs[m] = total;
  }
  return cls;
}

CycleClass generic_cycle_class(int n) {
  CycleClass cls;
  cls.n = n;
  for (const auto& m : all_mvectors(n))
    cls.coeffs[m] = std::all_of(m.begin(), m.end(), [](int x) { return x <= 1; }) ? 1 : 0;
  return cls;
}

int unique_contributor(const Sha& x, const MVector& m) {
  if (!is_mvector(m) || static_cast<int>(m.size()) != x.n() ||
      std::any_of(m.begin(), m.end(), [](int v) { return v > 1; }))
    throw Error(ErrorCode::InvalidArgument, "m must be a 0/1 vector with three ones");
  if (!is_maximally_degenerate(x)) throw Error(ErrorCode::NotMaximallyDegenerate, "sha has a component with moduli");

  std::vector<int> support;
  for (int i = 1; i <= x.n(); ++i)
    if (m[static_cast<std::size_t>(i - 1)] == 1) support.push_back(i);
  const IndexSet S(support);

  int v = 0;
  for (;;) {
    const auto& c = x.component(v);
    auto next = std::find_if(c.attachments.begin(), c.attachments.end(), [&](const Attachment& at) { return S.subset_of(at.I); });
    if (next == c.attachments.end()) break;
    v = next->child;
  }

  std::vector<int> contributors;
  for (const auto& c : x.components())
    if (component_coefficient(c, m) == 1) contributors.push_back(c.id);
  if (contributors.empty()) throw Error(ErrorCode::NoContributor, "no component contributes to " + S.str());
  if (contributors.size() > 1) throw Error(ErrorCode::MultipleContributors, "several components contribute to " + S.str());
  if (contributors.front() != v)
    throw Error(ErrorCode::MultipleContributors, "root descent disagrees with the exhaustive scan for " + S.str());
  return v;
}

Stabilizer stabilizer_dimension(const LineArrangement& arr, const std::optional<IndexSet>& fixed) {
  const int n = arr.n();
  if (n < 3) throw Error(ErrorCode::DegenerateInput, "need at least three lines");
  const auto& lA = arr.special_line();
  const auto& l1 = arr.line(n - 1);
  const auto& l2 = arr.line(n);
  if (det3(lA.coords(), l1.coords(), l2.coords()) == 0)
    throw Error(ErrorCode::DegenerateInput, "l_A, l_{n-1}, l_n are not in general position");
  IndexSet which = fixed.value_or(IndexSet::range(1, n));
  which.check_bounds(n);

  // In the frame y = (l_A, l_{n-1}, l_n) a base point is [0 : q1 : q2]; the
  // diagonal element fixes it iff g1 q1 q2 = g2 q1 q2 (in log coordinates).
  Matrix rows(0, 2);
  for (int i : which) {
    auto b = arr.base_point(i);
    Rational q1 = dot(l1.coords(), b.coords());
    Rational q2 = dot(l2.coords(), b.coords());
    rows.append_row({q1 * q2, -q1 * q2});
  }
  Stabilizer st;
  st.relations = nullspace(rows);
  st.dimension = static_cast<int>(st.relations.size());
  return st;
}

DualConfig orbit_normal_form(const DualConfig& config) {
  // Affine coordinate X_i = p0 / p_pivot with the pivot the first nonzero of
  // (p1, p2); the group acts by X_i -> u X_i + v0 e1_i + v1 e2_i.
  struct Entry {
    Rational X, e1, e2;
    bool collapsed;
  };
  std::vector<Entry> es;
  for (const auto& p : config.points) {
    if (p[1] == 0 && p[2] == 0) {
      es.push_back({0, 0, 0, true});
      continue;
    }
    Rational piv = p[1] != 0 ? p[1] : p[2];
    es.push_back({p[0] / piv, p[1] / piv, p[2] / piv, false});
  }
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < es.size(); ++i)
    if (!es[i].collapsed) live.push_back(i);

  if (live.size() >= 2) {
    // Translate so the first two live entries (independent base points) get X = 0.
    const auto& a = es[live[0]];
    const auto& b = es[live[1]];
    Matrix M(std::vector<RationalVector>{{a.e1, a.e2}, {b.e1, b.e2}});
    auto sol = solve(M, {-a.X, -b.X});
    if (sol.kind == SolutionKind::Unique)
      for (auto& e : es)
        if (!e.collapsed) e.X += sol.particular[0] * e.e1 + sol.particular[1] * e.e2;
  }
  for (std::size_t idx : live)
    if (es[idx].X != 0) {
      Rational f = 1 / es[idx].X;
      for (auto& e : es) e.X *= f;
      break;
    }
  DualConfig out;
  for (const auto& e : es) out.points.push_back(e.collapsed ? ProjPoint(1, 0, 0) : ProjPoint(e.X, e.e1, e.e2));
  return out;
}

}  // namespace shamoduli
