#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "shamoduli/error.hpp"
#include "shamoduli/io.hpp"
#include "shamoduli/sha.hpp"
#include "shamoduli/wonderful.hpp"

using namespace shamoduli;

namespace {

Sha fixture(const std::string& name) { return read_sha_file(std::string(SHAMODULI_FIXTURES) + "/" + name + ".json"); }

// Cross-ratio oracle: the Moebius map sending x -> 0, y -> oo, z -> 1, in the
// affine coordinate t1/t2 (oo for [0:1:0]).
std::optional<Rational> affine(const ProjPoint& p) {
  if (p[2] == 0) return std::nullopt;
  return p[1] / p[2];
}

Rational moebius(std::optional<Rational> v, std::optional<Rational> x, std::optional<Rational> y, std::optional<Rational> z) {
  // Handles oo among x, y, z by dropping the corresponding factors.
  auto diff = [](std::optional<Rational> p, std::optional<Rational> q) -> std::optional<Rational> {
    if (!p || !q) return std::nullopt;
    return *p - *q;
  };
  auto num1 = diff(v, x), den1 = diff(v, y), num2 = diff(z, y), den2 = diff(z, x);
  Rational r = 1;
  if (num1) r *= *num1;
  if (den1) r /= *den1;
  if (num2) r *= *num2;
  if (den2) r /= *den2;
  return r;
}

}  // namespace

TEST_CASE("child base parameters are the cross-ratios of the parent's base points") {
  RationalStream rng(31);
  for (int n = 5; n <= 8; ++n) {
    Sha x = Sha::generic(n, static_cast<std::uint64_t>(n));
    const auto& root = x.root();
    auto model = root.plane_model();
    for (int k = 4; k <= n - 1; ++k)
      for (auto& I : subsets_of_size(n, k)) {
        auto e = I.elements();
        auto got = child_base_params(root, I);
        REQUIRE(static_cast<int>(got.size()) == k - 3);
        auto b = [&](int idx) { return affine(model.base_point(e[static_cast<std::size_t>(idx)])); };
        for (int j = 0; j < k - 3; ++j) CHECK(got[static_cast<std::size_t>(j)] == moebius(b(j), b(k - 3), b(k - 2), b(k - 1)));
      }
  }
}

TEST_CASE("fixtures reproduce the three dual graphs") {
  auto middle = dual_graph(fixture("quadruple_leaf"));
  REQUIRE(middle.nodes.size() == 2);
  CHECK(middle.nodes[0].markings == IndexSet{5});
  CHECK(middle.nodes[1].markings == IndexSet{1, 2, 3, 4});

  auto right = dual_graph(fixture("quadruple_chain"));
  REQUIRE(right.nodes.size() == 3);
  CHECK(right.nodes[0].markings == IndexSet{5});
  CHECK(right.nodes[1].markings == IndexSet{1});
  CHECK(right.nodes[2].markings == IndexSet{2, 3, 4});
  CHECK(right.nodes[2].parent == 1);

  Sha left = fixture("two_triples");
  auto g = dual_graph(left);
  REQUIRE(g.nodes.size() == 3);
  CHECK(g.nodes[0].markings.empty());
  CHECK(g.nodes[0].children == std::vector<int>{1, 2});
  CHECK(g.nodes[1].markings == IndexSet{1, 2, 3});
  CHECK(g.nodes[2].markings == IndexSet{1, 4, 5});
  CHECK(left.line_home(1) == std::vector<int>{1, 2});

  auto dot = middle.to_dot();
  CHECK(dot.find("v0 [label=\"{5}\", shape=doublecircle]") != std::string::npos);
  CHECK(dot.find("v0 -- v1") != std::string::npos);
}

TEST_CASE("single component dual graph") {
  auto g = dual_graph(Sha::generic(6, 2));
  REQUIRE(g.nodes.size() == 1);
  CHECK_FALSE(g.nodes[0].parent.has_value());
  CHECK(g.nodes[0].markings == IndexSet::range(1, 6));
}

TEST_CASE("stability") {
  const auto ones = WeightVector::ones(5);
  CHECK(is_stable(Sha::generic(5, 4), ones));
  Sha triple = Sha::from_s(5, {2, 3}, {0, 3, 5});  // {1,4,5} concur
  CHECK_FALSE(is_stable(triple, ones));
  CHECK(is_stable(triple, default_base_weight(5).w0));

  Sha quad = Sha::from_s(5, {2, 3}, {1, 0, 0});
  auto loci = destabilized_loci(quad, ones);
  REQUIRE(loci.size() == 1);
  CHECK(loci[0].I == IndexSet{2, 3, 4, 5});

  Sha two = Sha::from_s(5, {2, 3}, {0, 1, -2});
  CHECK(destabilized_loci(two, ones).size() == 2);
  CHECK(is_stable(fixture("two_triples"), ones));
}

TEST_CASE("a quadruple point among six lines has two kinds of replacement") {
  Sha root = fixture("six_lines_quadruple");
  REQUIRE(root.root().concurrences == std::vector<IndexSet>{IndexSet{1, 2, 3, 4}});

  Sha generic = stable_replacement(root, 0, IndexSet{1, 2, 3, 4}, {1, 2});
  CHECK(generic == fixture("six_lines_generic"));
  CHECK(is_stable(generic, WeightVector::ones(6)));

  Sha special = stable_replacement(root, 0, IndexSet{1, 2, 3, 4}, {1, 0});
  CHECK_FALSE(is_stable(special, WeightVector::ones(6)));
  Sha chain = stable_replacement(special, 1, IndexSet{2, 3, 4}, {});
  CHECK(chain == fixture("six_lines_chain"));
  CHECK(is_stable(chain, WeightVector::ones(6)));
  CHECK(chain.component(2).k() == 3);

  // Every stable outcome: the generic one, or a triple point in the new plane
  // resolved by a third component with exactly three lines.
  std::set<std::pair<std::size_t, int>> shapes;
  shapes.insert({generic.size(), generic.component(1).k()});
  for (auto& I : subsets_of_size(IndexSet{1, 2, 3, 4}, 3)) {
    auto y = specialize(generic, 1, I, 5);
    REQUIRE(y.has_value());
    Sha z = stable_replacement(*y, 1, I, {});
    CHECK(is_stable(z, WeightVector::ones(6)));
    shapes.insert({z.size(), z.component(2).k()});
  }
  CHECK(shapes == std::set<std::pair<std::size_t, int>>{{2, 4}, {3, 3}});
}

TEST_CASE("a triple point has exactly one replacement") {
  Sha triple = Sha::from_s(5, {2, 3}, {0, 3, 5});
  Sha a = stable_replacement(triple, 0, IndexSet{1, 4, 5}, {});
  CHECK(stable_replacement(triple, 0, IndexSet{1, 4, 5}, {1}) == a);
  CHECK(stable_replacement(triple, 0, IndexSet{1, 4, 5}, {Rational(-7, 3)}) == a);
  CHECK(moduli_dimension(a.component(1)) == 0);
  CHECK_THROWS_AS(stable_replacement(triple, 0, IndexSet{1, 4, 5}, {0}), Error);
  CHECK_THROWS_AS(stable_replacement(triple, 0, IndexSet{1, 4, 5}, {1, 1}), Error);
  CHECK_THROWS_AS(stable_replacement(triple, 0, IndexSet{1, 2, 3}, {}), Error);
  CHECK_THROWS_AS(stable_replacement(a, 0, IndexSet{1, 4, 5}, {}), Error);  // already resolved
}

TEST_CASE("replacement moduli form P^{|I|-3}") {
  Sha root = fixture("six_lines_quadruple");
  CHECK_THROWS_AS(stable_replacement(root, 0, IndexSet{1, 2, 3, 4}, {0, 0}), Error);
  // Proportional mu give the same sha; non-proportional ones differ.
  CHECK(stable_replacement(root, 0, IndexSet{1, 2, 3, 4}, {2, 4}) == stable_replacement(root, 0, IndexSet{1, 2, 3, 4}, {1, 2}));
  CHECK_FALSE(stable_replacement(root, 0, IndexSet{1, 2, 3, 4}, {1, 3}) == stable_replacement(root, 0, IndexSet{1, 2, 3, 4}, {1, 2}));
  CHECK(moduli_dimension(stable_replacement(root, 0, IndexSet{1, 2, 3, 4}, {1, 2}).component(1)) == 1);
}

TEST_CASE("maximal degeneration") {
  CHECK_FALSE(is_maximally_degenerate(Sha::generic(5, 1)));
  CHECK_FALSE(is_maximally_degenerate(fixture("quadruple_leaf")));
  CHECK(is_maximally_degenerate(fixture("quadruple_chain")));
  CHECK(is_maximally_degenerate(fixture("two_triples")));
  CHECK(is_maximally_degenerate(fixture("six_lines_chain")) == false);  // root still has a line of moduli
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_combinatorial_types(5, WeightVector::ones(5), 0).size() == 1);
  CHECK(enumerate_combinatorial_types(4, WeightVector::ones(4), 3).size() == 5);

  auto depth1 = enumerate_combinatorial_types(5, WeightVector::ones(5), 1);
  CHECK(depth1.size() == 16);
  std::set<IndexSet> attached;
  for (const auto& t : depth1)
    for (const auto& at : t.sha.root().attachments) attached.insert(at.I);
  std::set<IndexSet> building;
  for (const auto& e : building_set(5, WeightVector::ones(5))) building.insert(e.I);
  CHECK(attached == building);

  // Maximally degenerate: 15 pairs of triples sharing one line, plus a
  // quadruple point whose new plane carries one of its 4 triples.
  auto all = enumerate_combinatorial_types(5, WeightVector::ones(5), 2);
  int maximal = 0;
  for (const auto& t : all) maximal += is_maximally_degenerate(t.sha);
  CHECK(maximal == 15 + 5 * 4);

  CHECK(enumerate_combinatorial_types(6, default_base_weight(6).w0, 3).size() == 1);
  CHECK_THROWS_AS(enumerate_combinatorial_types(6, WeightVector::ones(6), 3, 10), Error);
}

TEST_CASE("replacement sequences preserve the tree invariants") {
  RationalStream rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    int n = static_cast<int>(rng.next_int(5, 7));
    Sha x = Sha::generic(n, static_cast<std::uint64_t>(trial));
    for (int step = 0; step < 4; ++step) {
      const auto& c = x.component(static_cast<int>(rng.next_int(0, static_cast<long>(x.size()) - 1)));
      if (c.k() < 4) continue;
      auto choices = subsets_of_size(c.labels, static_cast<int>(rng.next_int(3, c.k() - 1)));
      const auto& I = choices[static_cast<std::size_t>(rng.next_int(0, static_cast<long>(choices.size()) - 1))];
      auto y = specialize(x, c.id, I, static_cast<std::uint64_t>(trial * 10 + step));
      if (!y) continue;
      auto before = destabilized_loci(*y, WeightVector::ones(n));
      Sha z = stable_replacement(*y, c.id, I, generic_mu(y->component(c.id), I, 3));
      CHECK(invariant_violations(z).empty());
      CHECK(z.size() == y->size() + 1);
      auto after = destabilized_loci(z, WeightVector::ones(n));
      CHECK(after.size() + 1 == before.size());
      x = z;
    }
  }
}
