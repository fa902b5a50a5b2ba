#include "shamoduli/wonderful.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "shamoduli/error.hpp"
#include "shamoduli/linalg.hpp"

namespace shamoduli {

int StratumLabel::codim() const {
  int r = 0;
  for (const auto& J : factors) r += static_cast<int>(J.size()) - 2;
  return r;
}

std::string StratumLabel::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? "," : "") + factors[i].str();
  return out + "}";
}

std::vector<BuildingSetElement> building_set(int n, const WeightVector& w) {
  if (w.n() != n) throw Error(ErrorCode::LengthMismatch, "weight length differs from n");
  std::vector<BuildingSetElement> out;
  for (int k = 3; k <= n - 1; ++k)
    for (auto& I : subsets_of_size(n, k))
      if (w.sum(I) > 2) out.push_back({I, k - 2});
  return out;
}

StratumLabel g_factors(const std::vector<IndexSet>& family, int n) {
  std::vector<IndexSet> f = family;
  for (const auto& I : f) I.check_bounds(n);
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < f.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < f.size() && !merged; ++j)
        if (f[i].intersected(f[j]).size() >= 2) {
          f[i] = f[i].united(f[j]);
          f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
  }
  for (const auto& I : f)
    if (static_cast<int>(I.size()) >= n) throw Error(ErrorCode::EmptyIntersection, I.str() + " would be an n-tuple point");
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return StratumLabel{f};
}

std::vector<int> transversal_codims(const StratumLabel& label, int n) {
  std::vector<int> r{0};
  for (const auto& J : label.factors) r.push_back(r.back() + static_cast<int>(J.size()) - 2);
  if (r.back() > n - 3) throw Error(ErrorCode::DimensionUnderflow, label.str() + " has codimension above n - 3");
  return r;
}

bool realizable(const StratumLabel& label, int n, std::uint64_t seed) {
  if (label.factors.empty()) return true;
  if (label.codim() > n - 3) return false;
  RationalVector a = generic_base_params(n, seed);
  Matrix eqs(0, static_cast<std::size_t>(n - 2));
  for (const auto& J : label.factors) {
    if (J.size() < 3 || static_cast<int>(J.size()) > n - 1) return false;
    for (auto& row : h_locus_equations(n, a, J)) eqs.append_row(std::move(row));
  }
  if (static_cast<int>(rank(eqs)) != label.codim()) return false;
  auto basis = nullspace(eqs);
  if (basis.empty()) return false;
  RationalStream rng(seed * 7919 + 17);
  for (int attempt = 0; attempt < 24; ++attempt) {
    RationalVector coeffs(basis.size());
    for (auto& q : coeffs) q = rng.next_nonzero();
    RationalVector s = combine(basis, coeffs);
    if (all_zero(s)) continue;
    auto sets = concurrence_sets(arrangement_from_s(n, a, s));
    bool ok = std::all_of(label.factors.begin(), label.factors.end(),
                          [&](const IndexSet& J) { return std::find(sets.begin(), sets.end(), J) != sets.end(); });
    if (ok) return true;
  }
  return false;
}

std::vector<StratumLabel> strata(int n, const WeightVector& w, int max_depth, std::size_t budget, std::uint64_t seed) {
  auto divisors = building_set(n, w);
  std::set<StratumLabel> all{StratumLabel{}};
  std::set<StratumLabel> level{StratumLabel{}};
  std::set<StratumLabel> rejected;
  for (int d = 1; d <= max_depth && !level.empty(); ++d) {
    std::set<StratumLabel> next;
    for (const auto& label : level) {
      for (const auto& H : divisors) {
        if (std::find(label.factors.begin(), label.factors.end(), H.I) != label.factors.end()) continue;
        std::vector<IndexSet> family = label.factors;
        family.push_back(H.I);
        StratumLabel merged;
        try {
          merged = g_factors(family, n);
        } catch (const Error&) {
          continue;
        }
        if (merged.codim() > n - 3 || all.count(merged) || rejected.count(merged)) continue;
        if (!realizable(merged, n, seed)) {
          rejected.insert(merged);
          continue;
        }
        all.insert(merged);
        next.insert(merged);
        if (all.size() > budget) throw Error(ErrorCode::BudgetExceeded, "more than " + std::to_string(budget) + " strata");
      }
    }
    level = std::move(next);
  }
  std::vector<StratumLabel> out(all.begin(), all.end());
  std::stable_sort(out.begin(), out.end(), [](const StratumLabel& x, const StratumLabel& y) {
    if (x.factors.size() == 0 || y.factors.size() == 0) return x.factors.size() < y.factors.size();
    return x.codim() < y.codim();
  });
  return out;
}

std::vector<BuildingSetElement> blow_up_sequence(int n, const WeightVector& w) {
  auto out = building_set(n, w);
  std::stable_sort(out.begin(), out.end(), [](const BuildingSetElement& x, const BuildingSetElement& y) {
    if (x.I.size() != y.I.size()) return x.I.size() > y.I.size();
    return x.I < y.I;
  });
  return out;
}

HassettSplit hassett_split(int n, const WeightVector& w) {
  if (w.n() != n) throw Error(ErrorCode::LengthMismatch, "weight length differs from n");
  if (w[1] != 1) throw Error(ErrorCode::FirstWeightNotOne, "the distinguished weight w_1 must be 1");
  HassettSplit out;
  for (auto& e : building_set(n, w)) {
    if (!e.I.contains(1)) {
      out.remainder.push_back(e);
      continue;
    }
    IndexSet rest = e.I.without(IndexSet{1});
    if ((w.sum(e.I) > 2) != (w.sum(rest) > 1))
      throw Error(ErrorCode::InvalidArgument, "internal: Hassett threshold mismatch at " + e.I.str());
    out.hassett.push_back({rest});
  }
  return out;
}

WeightVector hassett_weights(int n) {
  if (n < 5) throw Error(ErrorCode::BadN, "Hassett weights need n >= 5");
  RationalVector w(static_cast<std::size_t>(n), Rational(1, n - 1));
  w[0] = 1;
  w[1] = Rational(3, 2 * (n - 1));
  for (auto& q : w) q.canonicalize();
  return WeightVector(w);
}

namespace {

// y lies in the closure of x: every factor of x sits inside a factor of y.
bool below(const StratumLabel& y, const StratumLabel& x) {
  if (x == y) return false;
  return std::all_of(x.factors.begin(), x.factors.end(), [&](const IndexSet& J) {
    return std::any_of(y.factors.begin(), y.factors.end(), [&](const IndexSet& K) { return J.subset_of(K); });
  });
}

}  // namespace

std::string strata_poset_dot(const std::vector<StratumLabel>& labels) {
  std::ostringstream out;
  out << "digraph strata {\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << "  s" << i << " [label=\"" << labels[i].str() << "\"];\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (!below(labels[j], labels[i])) continue;
      bool covered = true;
      for (std::size_t k = 0; k < labels.size() && covered; ++k)
        if (below(labels[k], labels[i]) && below(labels[j], labels[k])) covered = false;
      if (covered) out << "  s" << i << " -> s" << j << ";\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace shamoduli
