#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shamoduli/projgeom.hpp"
#include "shamoduli/weights.hpp"

namespace shamoduli {

struct Attachment {
  int child = 0;
  IndexSet I;       // lines through the blown-up point
  ProjPoint point;  // p(I) in this component's plane model
};

// One plane component, stored as its contraction image in local standard
// coordinates. Local line j is the global line labels[j]; the gluing line to
// the parent (or l_A at the root) plays the role of t0 = 0.
struct ShaComponent {
  int id = 0;
  std::optional<int> parent;
  IndexSet labels;  // global lines crossing this component
  RationalVector a;  // local base parameters, length k-3
  RationalVector s;  // local moduli, length k-2, canonical
  std::vector<int> children;
  std::vector<Attachment> attachments;  // parallel to children
  std::vector<IndexSet> concurrences;   // maximal multiple-point sets I_i(v), global labels
  IndexSet collapsed;                   // I_A(v): lines not crossing v

  int k() const { return static_cast<int>(labels.size()); }
  int local_index(int global) const;  // 1-based, throws if absent
  IndexSet to_local(const IndexSet& global) const;
  IndexSet to_global(const IndexSet& local) const;
  LineArrangement plane_model() const;
  bool resolved(const IndexSet& I) const;  // I is an attachment set
  friend bool operator==(const ShaComponent& x, const ShaComponent& y) {
    return x.id == y.id && x.parent == y.parent && x.labels == y.labels && x.a == y.a && x.s == y.s &&
           x.children == y.children;
  }
};

// Serialized form of a component; everything else is derived.
struct ComponentSpec {
  int id = 0;
  std::optional<int> parent;
  IndexSet labels;
  RationalVector a;
  RationalVector s;
};

class Sha {
 public:
  // Single P^2 in standard coordinates.
  static Sha from_s(int n, const RationalVector& a, const RationalVector& s);
  // Single P^2 without multiple points, seeded.
  static Sha generic(int n, std::uint64_t seed);
  // Rebuild from component specs (ids 0..N-1, root 0, parents before children).
  // Throws InvalidArgument if any structural invariant fails.
  static Sha assemble(int n, const std::vector<ComponentSpec>& specs);

  int n() const { return n_; }
  std::size_t size() const { return components_.size(); }
  const std::vector<ShaComponent>& components() const { return components_; }
  const ShaComponent& component(int id) const { return components_.at(static_cast<std::size_t>(id)); }
  const ShaComponent& root() const { return components_.front(); }
  std::vector<ComponentSpec> specs() const;

  // Lines marked at v: crossing v but entering no child of v.
  IndexSet markings(int v) const;
  // Vertices where line i is marked (a broken line may end in several leaves).
  std::vector<int> line_home(int i) const;
  int depth(int v) const;

  friend bool operator==(const Sha& x, const Sha& y) { return x.n_ == y.n_ && x.components_ == y.components_; }

 private:
  friend Sha stable_replacement(const Sha&, int, const IndexSet&, const RationalVector&);
  friend std::optional<Sha> specialize(const Sha&, int, const IndexSet&, std::uint64_t);
  void refresh(int id);
  int n_ = 0;
  std::vector<ShaComponent> components_;
};

// Base parameters of the child created at p(I): cross-ratios of the parent's
// base points of I, normalized so the last three lines of I land on 0, oo, 1.
RationalVector child_base_params(const ShaComponent& parent, const IndexSet& I);

struct Locus {
  int vertex = 0;
  IndexSet I;
  friend auto operator<=>(const Locus&, const Locus&) = default;
};

// Unresolved multiple points (not yet blown up) in every component.
std::vector<Locus> unresolved_loci(const Sha& x);
std::vector<Locus> destabilized_loci(const Sha& x, const WeightVector& w);
bool is_stable(const Sha& x, const WeightVector& w);

// Blow up p(I) at vertex v and attach a plane carrying the lines of I with
// moduli mu (length |I|-2; for |I| = 3 length 0 or 1).
Sha stable_replacement(const Sha& x, int vertex, const IndexSet& I, const RationalVector& mu);

// Move component v to a seeded general point of the locus where I also
// concurs. nullopt if no such point exists with exactly the expected pattern.
std::optional<Sha> specialize(const Sha& x, int vertex, const IndexSet& I, std::uint64_t seed);

// Seeded mu whose replacement component has no multiple points.
RationalVector generic_mu(const ShaComponent& parent, const IndexSet& I, std::uint64_t seed);

int moduli_dimension(const ShaComponent& c);
bool is_maximally_degenerate(const Sha& x);

struct DualGraphNode {
  int id = 0;
  std::optional<int> parent;
  IndexSet markings;
  std::vector<int> children;
};

struct DualGraph {
  std::vector<DualGraphNode> nodes;  // nodes[0] is the root
  std::string to_dot() const;
};

DualGraph dual_graph(const Sha& x);

// Structural invariants of a sha; empty when all hold.
std::vector<std::string> invariant_violations(const Sha& x);

// Canonical string of the combinatorial type (labels, multiple points, tree).
std::string skeleton(const Sha& x);

// All types reachable from the generic arrangement by up to max_depth moves,
// each move imposing one w-destabilized multiple point and replacing it
// generically. Sorted by depth, then skeleton.
struct EnumeratedType {
  int depth = 0;
  Sha sha;
};
std::vector<EnumeratedType> enumerate_combinatorial_types(int n, const WeightVector& w, int max_depth,
                                                          std::size_t budget = 200000, std::uint64_t seed = 1);

}  // namespace shamoduli
