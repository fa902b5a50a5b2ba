#include "shamoduli/sha.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "shamoduli/error.hpp"
#include "shamoduli/linalg.hpp"

namespace shamoduli {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t mix_string(std::uint64_t h, const std::string& s) {
  return mix(h, std::hash<std::string>{}(s));
}

// Base point of local line j as a pair (x1, x2) on t0 = 0.
std::pair<Rational, Rational> base_pair(const ShaComponent& c, int j) {
  int k = c.k();
  if (j <= k - 3) return {c.a[static_cast<std::size_t>(j - 1)], Rational(1)};
  if (j == k - 2) return {Rational(0), Rational(1)};
  if (j == k - 1) return {Rational(1), Rational(0)};
  return {Rational(1), Rational(1)};
}

Rational bracket(const std::pair<Rational, Rational>& x, const std::pair<Rational, Rational>& y) {
  return x.first * y.second - x.second * y.first;
}

std::vector<IndexSet> sorted_sets(std::vector<IndexSet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

int ShaComponent::local_index(int global) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), global);
  if (it == labels.end() || *it != global)
    throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(global) + " does not cross component");
  return static_cast<int>(it - labels.begin()) + 1;
}

IndexSet ShaComponent::to_local(const IndexSet& global) const {
  std::vector<int> out;
  for (int i : global) out.push_back(local_index(i));
  return IndexSet(out);
}

IndexSet ShaComponent::to_global(const IndexSet& local) const {
  std::vector<int> out;
  for (int j : local) out.push_back(labels.elements().at(static_cast<std::size_t>(j - 1)));
  return IndexSet(out);
}

LineArrangement ShaComponent::plane_model() const { return arrangement_from_s(k(), a, s); }

bool ShaComponent::resolved(const IndexSet& I) const {
  return std::any_of(attachments.begin(), attachments.end(), [&](const Attachment& at) { return at.I == I; });
}

RationalVector child_base_params(const ShaComponent& parent, const IndexSet& I) {
  std::vector<std::pair<Rational, Rational>> beta;
  for (int i : I) beta.push_back(base_pair(parent, parent.local_index(i)));
  const std::size_t m = beta.size();
  if (m < 3) throw Error(ErrorCode::BadIndexSize, "a replacement needs at least 3 lines");
  const auto& b0 = beta[m - 3];
  const auto& binf = beta[m - 2];
  const auto& b1 = beta[m - 1];
  RationalVector out;
  for (std::size_t j = 0; j + 3 < m; ++j)
    out.push_back(bracket(beta[j], b0) * bracket(b1, binf) / (bracket(beta[j], binf) * bracket(b1, b0)));
  return out;
}

void Sha::refresh(int id) {
  auto& c = components_.at(static_cast<std::size_t>(id));
  auto model = c.plane_model();
  c.concurrences.clear();
  std::map<IndexSet, ProjPoint> where;
  for (auto& [p, local] : multiple_points(model)) {
    IndexSet g = c.to_global(local);
    c.concurrences.push_back(g);
    where.emplace(g, p);
  }
  std::sort(c.concurrences.begin(), c.concurrences.end());
  c.collapsed = IndexSet::range(1, n_).without(c.labels);
  c.attachments.clear();
  for (int child : c.children) {
    const auto& cc = components_.at(static_cast<std::size_t>(child));
    auto it = where.find(cc.labels);
    if (it == where.end())
      throw Error(ErrorCode::InvalidArgument,
                  "child " + std::to_string(child) + " is not attached at a multiple point of " + std::to_string(id));
    c.attachments.push_back({child, cc.labels, it->second});
  }
}

Sha Sha::from_s(int n, const RationalVector& a, const RationalVector& s) {
  return assemble(n, {ComponentSpec{0, std::nullopt, IndexSet::range(1, n), a, canonical_homogeneous(s)}});
}

Sha Sha::generic(int n, std::uint64_t seed) {
  RationalVector a = generic_base_params(n, seed);
  RationalStream rng(mix(seed, 0x5eed));
  for (;;) {
    RationalVector s(static_cast<std::size_t>(n - 2));
    for (auto& x : s) x = rng.next_nonzero();
    auto model = arrangement_from_s(n, a, s);
    if (multiple_points(model).empty()) return from_s(n, a, s);
  }
}

Sha Sha::assemble(int n, const std::vector<ComponentSpec>& specs) {
  if (n < 3) throw Error(ErrorCode::BadN, "n >= 3 required");
  if (specs.empty()) throw Error(ErrorCode::InvalidArgument, "a sha needs a root component");
  Sha x;
  x.n_ = n;
  for (std::size_t idx = 0; idx < specs.size(); ++idx) {
    const auto& sp = specs[idx];
    if (sp.id != static_cast<int>(idx)) throw Error(ErrorCode::InvalidArgument, "component ids must be 0..N-1 in order");
    sp.labels.check_bounds(n);
    ShaComponent c;
    c.id = sp.id;
    c.parent = sp.parent;
    c.labels = sp.labels;
    c.a = sp.a;
    c.s = sp.s;
    if (idx == 0) {
      if (sp.parent) throw Error(ErrorCode::InvalidArgument, "root must not have a parent");
      if (sp.labels != IndexSet::range(1, n)) throw Error(ErrorCode::InvalidArgument, "root must carry every line");
    } else {
      if (!sp.parent || *sp.parent < 0 || *sp.parent >= sp.id)
        throw Error(ErrorCode::InvalidArgument, "parent of component " + std::to_string(sp.id) + " must precede it");
      auto& par = x.components_.at(static_cast<std::size_t>(*sp.parent));
      if (!sp.labels.subset_of(par.labels) || sp.labels.size() < 3 || sp.labels.size() >= par.labels.size())
        throw Error(ErrorCode::InvalidArgument, "child labels must be a proper subset of the parent's, of size >= 3");
      if (child_base_params(par, sp.labels) != sp.a)
        throw Error(ErrorCode::InvalidArgument,
                    "base parameters of component " + std::to_string(sp.id) + " do not match the parent's directions");
      par.children.push_back(sp.id);
    }
    if (all_zero(c.s) || canonical_homogeneous(c.s) != c.s)
      throw Error(ErrorCode::InvalidArgument, "moduli must be nonzero with first nonzero entry 1");
    c.plane_model();  // validates lengths, base points, distinct lines
    x.components_.push_back(std::move(c));
  }
  for (std::size_t idx = 0; idx < x.components_.size(); ++idx) x.refresh(static_cast<int>(idx));
  for (const auto& c : x.components_) {
    std::set<IndexSet> seen;
    for (const auto& at : c.attachments)
      if (!seen.insert(at.I).second) throw Error(ErrorCode::InvalidArgument, "two children attached at one point");
  }
  return x;
}

std::vector<ComponentSpec> Sha::specs() const {
  std::vector<ComponentSpec> out;
  for (const auto& c : components_) out.push_back({c.id, c.parent, c.labels, c.a, c.s});
  return out;
}

IndexSet Sha::markings(int v) const {
  const auto& c = component(v);
  IndexSet m = c.labels;
  for (int child : c.children) m = m.without(component(child).labels);
  return m;
}

std::vector<int> Sha::line_home(int i) const {
  std::vector<int> out;
  for (const auto& c : components_)
    if (markings(c.id).contains(i)) out.push_back(c.id);
  return out;
}

int Sha::depth(int v) const {
  int d = 0;
  while (component(v).parent) {
    v = *component(v).parent;
    ++d;
  }
  return d;
}

std::vector<Locus> unresolved_loci(const Sha& x) {
  std::vector<Locus> out;
  for (const auto& c : x.components())
    for (const auto& I : c.concurrences)
      if (!c.resolved(I)) out.push_back({c.id, I});
  return out;
}

std::vector<Locus> destabilized_loci(const Sha& x, const WeightVector& w) {
  if (w.n() != x.n()) throw Error(ErrorCode::LengthMismatch, "weight length differs from n");
  std::vector<Locus> out;
  for (auto& l : unresolved_loci(x))
    if (destabilizes(w, l.I)) out.push_back(l);
  return out;
}

bool is_stable(const Sha& x, const WeightVector& w) { return destabilized_loci(x, w).empty(); }

Sha stable_replacement(const Sha& x, int vertex, const IndexSet& I, const RationalVector& mu) {
  if (vertex < 0 || vertex >= static_cast<int>(x.size())) throw Error(ErrorCode::InvalidArgument, "no such vertex");
  const auto& par = x.component(vertex);
  bool found = std::find(par.concurrences.begin(), par.concurrences.end(), I) != par.concurrences.end();
  if (!found || par.resolved(I))
    throw Error(ErrorCode::NotDestabilized, I.str() + " is not an unresolved multiple point of vertex " + std::to_string(vertex));
  const int k = static_cast<int>(I.size());
  RationalVector s = mu;
  if (k == 3 && s.empty()) s = {Rational(1)};
  if (static_cast<int>(s.size()) != k - 2)
    throw Error(ErrorCode::LengthMismatch, "moduli point for |I| = " + std::to_string(k) + " needs " + std::to_string(k - 2) + " entries");
  if (all_zero(s)) throw Error(ErrorCode::UnstableReplacement, "mu = 0 makes all lines of " + I.str() + " concur");

  auto specs = x.specs();
  ComponentSpec child{static_cast<int>(specs.size()), vertex, I, child_base_params(par, I), canonical_homogeneous(s)};
  specs.push_back(std::move(child));
  return Sha::assemble(x.n(), specs);
}

std::optional<Sha> specialize(const Sha& x, int vertex, const IndexSet& I, std::uint64_t seed) {
  const auto& c = x.component(vertex);
  const int k = c.k();
  if (static_cast<int>(I.size()) < 3 || static_cast<int>(I.size()) > k - 1 || !I.subset_of(c.labels)) return std::nullopt;
  for (const auto& S : c.concurrences)
    if (S.intersected(I).size() >= 2) return std::nullopt;

  std::vector<IndexSet> target = c.concurrences;
  target.push_back(I);
  std::sort(target.begin(), target.end());

  Matrix eqs(0, static_cast<std::size_t>(k - 2));
  for (const auto& S : target)
    for (auto& row : h_locus_equations(k, c.a, c.to_local(S))) eqs.append_row(std::move(row));
  auto basis = nullspace(eqs);
  if (basis.empty()) return std::nullopt;

  RationalStream rng(mix(seed, static_cast<std::uint64_t>(vertex)));
  for (int attempt = 0; attempt < 24; ++attempt) {
    RationalVector coeffs(basis.size());
    for (auto& q : coeffs) q = rng.next_nonzero();
    RationalVector s = combine(basis, coeffs);
    if (all_zero(s)) continue;
    s = canonical_homogeneous(s);
    std::vector<IndexSet> got;
    for (auto& [p, local] : multiple_points(arrangement_from_s(k, c.a, s))) got.push_back(c.to_global(local));
    if (sorted_sets(got) != target) continue;
    Sha y = x;
    y.components_[static_cast<std::size_t>(vertex)].s = s;
    y.refresh(vertex);
    return y;
  }
  return std::nullopt;
}

RationalVector generic_mu(const ShaComponent& parent, const IndexSet& I, std::uint64_t seed) {
  const int k = static_cast<int>(I.size());
  RationalVector a = child_base_params(parent, I);
  RationalStream rng(mix(seed, 0xc0ffee));
  for (;;) {
    RationalVector mu(static_cast<std::size_t>(k - 2));
    for (auto& q : mu) q = rng.next_nonzero();
    mu = canonical_homogeneous(mu);
    if (multiple_points(arrangement_from_s(k, a, mu)).empty()) return mu;
  }
}

int moduli_dimension(const ShaComponent& c) {
  Matrix eqs(0, static_cast<std::size_t>(c.k() - 2));
  for (const auto& S : c.concurrences)
    for (auto& row : h_locus_equations(c.k(), c.a, c.to_local(S))) eqs.append_row(std::move(row));
  return c.k() - 3 - static_cast<int>(rank(eqs));
}

bool is_maximally_degenerate(const Sha& x) {
  return std::all_of(x.components().begin(), x.components().end(),
                     [](const ShaComponent& c) { return moduli_dimension(c) == 0; });
}

DualGraph dual_graph(const Sha& x) {
  DualGraph g;
  for (const auto& c : x.components()) g.nodes.push_back({c.id, c.parent, x.markings(c.id), c.children});
  return g;
}

std::string DualGraph::to_dot() const {
  std::ostringstream out;
  out << "graph dual {\n";
  for (const auto& v : nodes)
    out << "  v" << v.id << " [label=\"" << v.markings.str() << "\", shape=" << (v.parent ? "circle" : "doublecircle")
        << "];\n";
  for (const auto& v : nodes)
    for (int c : v.children) out << "  v" << v.id << " -- v" << c << ";\n";
  out << "}\n";
  return out.str();
}

std::vector<std::string> invariant_violations(const Sha& x) {
  std::vector<std::string> bad;
  const int N = static_cast<int>(x.size());
  if (N == 0) return {"empty sha"};
  if (x.root().parent || x.root().labels != IndexSet::range(1, x.n())) bad.push_back("root must carry every line");

  // Tree shape: every vertex reaches the root, children lists match parents.
  std::size_t edges = 0;
  for (const auto& c : x.components()) {
    edges += c.children.size();
    for (int ch : c.children)
      if (ch <= c.id || ch >= N || x.component(ch).parent != c.id) bad.push_back("child list mismatch at " + std::to_string(c.id));
    if (c.id > 0 && (!c.parent || *c.parent >= c.id)) bad.push_back("bad parent at " + std::to_string(c.id));
  }
  if (edges + 1 != static_cast<std::size_t>(N)) bad.push_back("dual graph is not a tree");

  for (const auto& c : x.components()) {
    // No overlapping lines and distinct base points in the plane model.
    try {
      auto model = c.plane_model();
      for (int i = 1; i <= model.n(); ++i)
        for (int j = i + 1; j <= model.n(); ++j)
          if (model.line(i) == model.line(j)) bad.push_back("overlapping lines at " + std::to_string(c.id));
    } catch (const Error& e) {
      bad.push_back("invalid plane model at " + std::to_string(c.id) + ": " + e.what());
    }
    if (c.parent) {
      const auto& par = x.component(*c.parent);
      if (!c.labels.subset_of(par.labels)) bad.push_back("child lines escape parent at " + std::to_string(c.id));
      if (std::find(par.concurrences.begin(), par.concurrences.end(), c.labels) == par.concurrences.end())
        bad.push_back("child not attached at a multiple point at " + std::to_string(c.id));
      else if (child_base_params(par, c.labels) != c.a)
        bad.push_back("child directions disagree with parent at " + std::to_string(c.id));
    }
    for (std::size_t p = 0; p < c.concurrences.size(); ++p)
      for (std::size_t q = p + 1; q < c.concurrences.size(); ++q)
        if (c.concurrences[p].intersected(c.concurrences[q]).size() > 1)
          bad.push_back("two multiple points share two lines at " + std::to_string(c.id));
  }

  // Broken lines: components meeting l_i form a subtree containing the root.
  for (int i = 1; i <= x.n(); ++i) {
    for (const auto& c : x.components()) {
      if (!c.labels.contains(i)) continue;
      if (c.parent && !x.component(*c.parent).labels.contains(i))
        bad.push_back("broken line " + std::to_string(i) + " disconnected at " + std::to_string(c.id));
    }
    if (x.line_home(i).empty()) bad.push_back("line " + std::to_string(i) + " has no home");
  }
  return bad;
}

namespace {

std::string skeleton_of(const Sha& x, int v) {
  const auto& c = x.component(v);
  std::string out = c.labels.str() + "[";
  for (const auto& S : c.concurrences) out += S.str();
  out += "](";
  std::vector<std::string> kids;
  for (int ch : c.children) kids.push_back(skeleton_of(x, ch));
  std::sort(kids.begin(), kids.end());
  for (const auto& k : kids) out += k;
  return out + ")";
}

}  // namespace

std::string skeleton(const Sha& x) { return skeleton_of(x, 0); }

std::vector<EnumeratedType> enumerate_combinatorial_types(int n, const WeightVector& w, int max_depth, std::size_t budget,
                                                          std::uint64_t seed) {
  if (w.n() != n) throw Error(ErrorCode::LengthMismatch, "weight length differs from n");
  std::map<std::string, EnumeratedType> seen;
  std::vector<std::string> frontier;
  Sha start = Sha::generic(n, seed);
  frontier.push_back(skeleton(start));
  seen.emplace(frontier.back(), EnumeratedType{0, start});

  for (int depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
    std::vector<std::string> next;
    for (const auto& key : frontier) {
      const Sha x = seen.at(key).sha;
      for (const auto& c : x.components()) {
        for (int size = 3; size <= c.k() - 1; ++size) {
          for (const auto& I : subsets_of_size(c.labels, size)) {
            if (!destabilizes(w, I)) continue;
            std::uint64_t h = mix_string(mix(seed, static_cast<std::uint64_t>(c.id)), key + I.str());
            auto y = specialize(x, c.id, I, h);
            if (!y) continue;
            Sha z = stable_replacement(*y, c.id, I, generic_mu(y->component(c.id), I, h));
            std::string zkey = skeleton(z);
            if (seen.count(zkey)) continue;
            if (seen.size() >= budget) throw Error(ErrorCode::BudgetExceeded, "more than " + std::to_string(budget) + " types");
            seen.emplace(zkey, EnumeratedType{depth, std::move(z)});
            next.push_back(zkey);
          }
        }
      }
    }
    frontier = std::move(next);
  }

  std::vector<std::pair<std::pair<int, std::string>, EnumeratedType>> sorted;
  for (auto& [k, v] : seen) sorted.push_back({{v.depth, k}, std::move(v)});
  std::sort(sorted.begin(), sorted.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  std::vector<EnumeratedType> out;
  for (auto& [k, v] : sorted) out.push_back(std::move(v));
  return out;
}

}  // namespace shamoduli
