// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "shamoduli/chow.hpp"
#include "shamoduli/error.hpp"
#include "shamoduli/io.hpp"
#include "shamoduli/linalg.hpp"
#include "shamoduli/sha.hpp"
#include "shamoduli/weights.hpp"
#include "shamoduli/wonderful.hpp"

using namespace shamoduli;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

Sha fixture(const std::string& name) { return read_sha_file(std::string(SHAMODULI_FIXTURES) + "/" + name + ".json"); }

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Outcome census_five_lines() {
  Outcome o;
  auto b = building_set(5, WeightVector::ones(5));
  int triples = 0, quads = 0;
  for (const auto& e : b) (e.I.size() == 3 ? triples : quads)++;
  o.require(b.size() == 15 && triples == 10 && quads == 5, "building set is not 10 triples + 5 quadruples");
  int pairs = 0, merged = 0, other = 0;
  for (const auto& l : strata(5, WeightVector::ones(5), 2)) {
    if (l.factors.empty() || l.codim() != 2) continue;
    if (l.factors.size() == 2 && l.factors[0].intersected(l.factors[1]).size() == 1)
      ++pairs;
    else if (l.factors.size() == 1 && l.factors[0].size() == 4)
      ++merged;
    else
      ++other;
  }
  o.require(pairs == 15 && merged == 5 && other == 0,
            "zero-dimensional strata: " + std::to_string(pairs) + " pairs, " + std::to_string(merged) + " quadruples, " +
                std::to_string(other) + " other");
  o.detail = o.pass ? "15 divisors; 20 points = 15 pairs + 5 quadruples" : o.detail;
  return o;
}

Outcome rank_law() {
  Outcome o;
  long checked = 0;
  for (int n = 5; n <= 8; ++n) {
    auto a = generic_base_params(n, 2024);
    for (int k = 3; k <= n - 1; ++k)
      for (auto& I : subsets_of_size(n, k)) {
        ++checked;
        o.require(static_cast<int>(rank(Matrix(h_locus_equations(n, a, I)))) == k - 2, "rank fails at n=" + std::to_string(n) + " I=" + I.str());
      }
  }
  if (o.pass) o.detail = std::to_string(checked) + " index sets";
  return o;
}

Outcome zeta_identities() {
  Outcome o;
  int passed = 0;
  for (int n = 5; n <= 8; ++n)
    for (int k = 0; k < 100; ++k) {
      std::uint64_t seed = 1000 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(k);
      RationalStream rng(seed);
      auto a = generic_base_params(n, seed);
      RationalVector s(static_cast<std::size_t>(n - 2));
      do {
        for (auto& q : s) q = rng.next();
      } while (all_zero(s));
      ProjPoint t(rng.next_nonzero(), rng.next(), rng.next());
      auto c = check_universal_family(n, a, s, t);
      o.require(c.first && c.second && c.differences, "identity fails at n=" + std::to_string(n) + " trial " + std::to_string(k));
      passed += c.ok();
    }
  if (o.pass) o.detail = std::to_string(passed) + "/400 evaluations";
  return o;
}

Outcome exclusion() {
  Outcome o;
  for (int n = 5; n <= 8; ++n) {
    auto c = exclusion_certificate(n);
    o.require(!c.full_result.feasible && verify_farkas(c.full, c.full_result.farkas), "system feasible at n=" + std::to_string(n));
    o.require(c.relaxed_result.feasible && c.relaxed.satisfied_by(c.relaxed_result.witness) && c.ones_solve_relaxed,
              "relaxed system not feasible at n=" + std::to_string(n));
  }
  if (o.pass) o.detail = "infeasible for n=5..8, relaxed feasible with w=1^n";
  return o;
}

Outcome quadruple_replacements() {
  Outcome o;
  Sha root = fixture("six_lines_quadruple");
  Sha generic = stable_replacement(root, 0, IndexSet{1, 2, 3, 4}, {1, 2});
  o.require(generic == fixture("six_lines_generic"), "generic replacement differs from golden fixture");
  Sha chain = stable_replacement(stable_replacement(root, 0, IndexSet{1, 2, 3, 4}, {1, 0}), 1, IndexSet{2, 3, 4}, {});
  o.require(chain == fixture("six_lines_chain"), "chain replacement differs from golden fixture");

  // All stable outcomes over the replacement's moduli, by shape.
  std::set<std::pair<std::size_t, int>> shapes{{generic.size(), generic.component(1).k()}};
  for (auto& I : subsets_of_size(IndexSet{1, 2, 3, 4}, 3)) {
    auto y = specialize(generic, 1, I, 11);
    o.require(y.has_value(), "triple " + I.str() + " not realizable in the new plane");
    if (!y) continue;
    Sha z = stable_replacement(*y, 1, I, {});
    shapes.insert({z.size(), z.component(2).k()});
  }
  o.require(shapes == std::set<std::pair<std::size_t, int>>{{2, 4}, {3, 3}}, "outcomes are not exactly {2 components, 3-chain with 3-line leaf}");
  o.require(moduli_dimension(generic.component(1)) == 1, "quadruple replacement moduli is not P^1");

  // Triple points: one replacement regardless of mu.
  for (int n = 5; n <= 7; ++n) {
    Sha x = Sha::generic(n, static_cast<std::uint64_t>(n));
    auto y = specialize(x, 0, IndexSet{1, 2, 3}, 3);
    if (!y) continue;
    Sha first = stable_replacement(*y, 0, IndexSet{1, 2, 3}, {});
    for (const auto& mu : std::vector<RationalVector>{{1}, {Rational(-5, 2)}, {7}})
      o.require(stable_replacement(*y, 0, IndexSet{1, 2, 3}, mu) == first, "triple replacement depends on mu");
    o.require(moduli_dimension(first.component(1)) == 0, "triple replacement has moduli");
  }
  if (o.pass) o.detail = "golden fixtures match; outcomes {2-component, 3-chain}; |I|=3 unique";
  return o;
}

Outcome criterion_vs_oracle() {
  Outcome o;
  long comparisons = 0, components = 0;
  for (int n = 5; n <= 7; ++n) {
    auto types = enumerate_combinatorial_types(n, WeightVector::ones(n), 3);
    auto ms = all_mvectors(n);
    for (const auto& t : types)
      for (const auto& c : t.sha.components()) {
        ++components;
        auto config = dual_config(c, n);
        std::uint64_t seed = 17;
        for (const auto& m : ms) {
          auto v = reparametrized_orbit_system(config, generic_conditions(config, m, seed++));
          ++comparisons;
          o.require(v != OrbitVerdict::Infinite && static_cast<int>(v) == component_coefficient(c, m),
                    "disagreement at n=" + std::to_string(n) + " component " + c.labels.str());
        }
      }
  }
  if (o.pass) o.detail = std::to_string(comparisons) + " comparisons over " + std::to_string(components) + " components, 0 disagreements";
  return o;
}

Outcome maximal_degenerations() {
  Outcome o;
  std::string counts;
  for (int n = 5; n <= 7; ++n) {
    auto generic = generic_cycle_class(n);
    int maximal = 0;
    for (const auto& t : enumerate_combinatorial_types(n, WeightVector::ones(n), n - 3)) {
      if (!is_maximally_degenerate(t.sha)) continue;
      ++maximal;
      auto cls = cycle_class(t.sha);
      o.require(cls == generic && static_cast<long>(cls.support()) == binomial(n, 3), "class differs from generic: " + skeleton(t.sha));
      for (const auto& [m, c] : cls.coeffs) {
        if (std::any_of(m.begin(), m.end(), [](int v) { return v > 1; })) continue;
        try {
          unique_contributor(t.sha, m);
        } catch (const Error& e) {
          o.require(false, std::string(e.what()) + " in " + skeleton(t.sha));
        }
      }
    }
    counts += (counts.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + ": " + std::to_string(maximal);
    o.require(maximal > 0, "no maximally degenerate sha at n=" + std::to_string(n));
  }
  if (o.pass) o.detail = "maximally degenerate shas " + counts;
  return o;
}

Outcome random_sequences() {
  Outcome o;
  RationalStream rng(8);
  long steps = 0, violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    int n = static_cast<int>(rng.next_int(4, 7));
    Sha x = Sha::generic(n, static_cast<std::uint64_t>(trial));
    int length = static_cast<int>(rng.next_int(1, n - 3));
    for (int step = 0; step < length; ++step) {
      std::vector<int> roomy;
      for (const auto& c : x.components())
        if (moduli_dimension(c) > 0) roomy.push_back(c.id);
      if (roomy.empty()) break;
      const auto& c = x.component(roomy[static_cast<std::size_t>(rng.next_int(0, static_cast<long>(roomy.size()) - 1))]);
      auto sizes = rng.next_int(3, c.k() - 1);
      auto choices = subsets_of_size(c.labels, static_cast<int>(sizes));
      const auto& I = choices[static_cast<std::size_t>(rng.next_int(0, static_cast<long>(choices.size()) - 1))];
      auto y = specialize(x, c.id, I, static_cast<std::uint64_t>(trial) * 31 + static_cast<std::uint64_t>(step));
      if (!y) continue;
      Sha z = stable_replacement(*y, c.id, I, generic_mu(y->component(c.id), I, static_cast<std::uint64_t>(trial)));
      ++steps;
      auto bad = invariant_violations(z);
      bool grew = z.size() == y->size() + 1 && dual_graph(z).nodes.size() == z.size();
      if (!bad.empty() || !grew) {
        ++violations;
        o.require(false, bad.empty() ? "tree did not gain one vertex" : bad.front());
      }
      x = std::move(z);
    }
  }
  if (o.pass) o.detail = "10000 sequences, " + std::to_string(steps) + " replacements, " + std::to_string(violations) + " violations";
  return o;
}

Outcome stabilizer() {
  Outcome o;
  int ok = 0;
  for (int k = 0; k < 100; ++k) {
    int n = 4 + k % 5;
    RationalStream rng(static_cast<std::uint64_t>(k));
    auto a = generic_base_params(n, static_cast<std::uint64_t>(k));
    RationalVector s(static_cast<std::size_t>(n - 2));
    for (auto& q : s) q = rng.next_nonzero();
    auto st = stabilizer_dimension(arrangement_from_s(n, a, s));
    bool g1_eq_g2 = st.relations.size() == 1 && st.relations[0][0] == st.relations[0][1];
    o.require(st.dimension == 1 && g1_eq_g2, "input " + std::to_string(k) + " gives dimension " + std::to_string(st.dimension));
    ok += st.dimension == 1 && g1_eq_g2;
  }
  if (o.pass) o.detail = std::to_string(ok) + "/100 inputs: dimension 1, g1 = g2";
  return o;
}

struct Criterion {
  const char* name;
  double limit_seconds;  // 0: no time limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"five-line census", 1.0, census_five_lines},
      {"h-locus rank law", 10.0, rank_law},
      {"universal family identities", 5.0, zeta_identities},
      {"exclusion system", 5.0, exclusion},
      {"quadruple-point replacements", 0.0, quadruple_replacements},
      {"criterion vs orbit oracle", 300.0, criterion_vs_oracle},
      {"maximally degenerate classes", 300.0, maximal_degenerations},
      {"random replacement sequences", 0.0, random_sequences},
      {"stabilizer dimension", 0.0, stabilizer},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = c.limit_seconds == 0.0 || secs < c.limit_seconds;
    bool pass = o.pass && in_time;
    failures += !pass;
    char timing[64];
    if (c.limit_seconds > 0)
      std::snprintf(timing, sizeof timing, "%.2fs, limit %.0fs", secs, c.limit_seconds);
    else
      std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::printf("%s %s: %s (%s)%s\n", pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), timing, in_time ? "" : " over time limit");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
