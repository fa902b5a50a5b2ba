#include "shamoduli/weights.hpp"

#include <algorithm>
#include <set>

#include "shamoduli/error.hpp"

namespace shamoduli {

WeightVector::WeightVector(RationalVector w) : w_(std::move(w)) {
  for (const auto& x : w_)
    if (x <= 0 || x > 1) throw Error(ErrorCode::InvalidArgument, "weights must lie in (0, 1]");
  if (sum() <= 2) throw Error(ErrorCode::InvalidArgument, "weights must sum to more than 2");
}

WeightVector WeightVector::ones(int n) { return WeightVector(RationalVector(static_cast<std::size_t>(n), Rational(1))); }

Rational WeightVector::sum() const {
  Rational s = 0;
  for (const auto& x : w_) s += x;
  return s;
}

Rational WeightVector::sum(const IndexSet& I) const {
  Rational s = 0;
  for (int i : I) s += (*this)[i];
  return s;
}

Rational Wall::evaluate(const RationalVector& w) const {
  Rational s = -level();
  for (int i : indices) s += w.at(static_cast<std::size_t>(i - 1));
  return s;
}

std::vector<Wall> all_walls(int n) {
  std::vector<Wall> out;
  for (int k = 3; k <= n - 1; ++k)
    for (auto& I : subsets_of_size(n, k)) out.push_back({WallKind::MultiplePoint, I});
  for (int k = 2; k <= n - 1; ++k)
    for (auto& I : subsets_of_size(n, k)) out.push_back({WallKind::Coincidence, I});
  return out;
}

bool on_wall(const WeightVector& w) {
  for (const auto& wall : all_walls(w.n()))
    if (wall.evaluate(w.values()) == 0) return true;
  return false;
}

BaseWeight::BaseWeight(WeightVector w) : w0(std::move(w)) {
  // The largest proper subset drops the smallest entry.
  Rational smallest = *std::min_element(w0.values().begin(), w0.values().end());
  if (w0.sum() - smallest > 2) throw Error(ErrorCode::InvalidArgument, "base weight has a proper subset summing above 2");
}

BaseWeight default_base_weight(int n) {
  if (n < 4) throw Error(ErrorCode::BadN, "base weight needs n >= 4");
  for (long k = 1;; ++k) {
    Rational eps = Rational(1) / (k * n * (n - 1));
    Rational value = Rational(2, n - 1) - eps;
    value.canonicalize();
    WeightVector w(RationalVector(static_cast<std::size_t>(n), value));
    if (!on_wall(w)) return BaseWeight(std::move(w));
  }
}

bool is_admissible(const WeightVector& w, const BaseWeight& w0) {
  if (w.n() != w0.w0.n()) throw Error(ErrorCode::LengthMismatch, "weight lengths differ");
  if (w.sum() < 2) return false;
  for (int i = 1; i <= w.n(); ++i)
    if (w[i] <= 0 || w[i] > 1 || w[i] < w0.w0[i]) return false;
  return true;
}

bool destabilizes(const WeightVector& w, const IndexSet& I) { return w.sum(I) > 2; }

std::vector<Wall> walls_between(const WeightVector& u, const WeightVector& v) {
  if (u.n() != v.n()) throw Error(ErrorCode::LengthMismatch, "weight lengths differ");
  std::vector<Wall> out;
  for (const auto& wall : all_walls(u.n())) {
    Rational fu = wall.evaluate(u.values());
    Rational fv = wall.evaluate(v.values());
    if (fu == 0 || fv == 0) throw Error(ErrorCode::EndpointOnWall, "endpoint lies on wall " + wall.indices.str());
    if ((fu < 0) != (fv < 0)) out.push_back(wall);
  }
  return out;
}

std::optional<Wall> adjacent(const WeightVector& u, const WeightVector& v) {
  std::optional<Wall> found;
  for (const auto& wall : walls_between(u, v)) {
    if (wall.kind != WallKind::MultiplePoint) continue;
    if (found) return std::nullopt;
    found = wall;
  }
  return found;
}

namespace {

RationalVector lerp(const RationalVector& a, const RationalVector& b, const Rational& t) {
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
  return out;
}

// Parameter where the segment a -> b meets the wall, if strictly inside (0, 1).
std::optional<Rational> crossing_time(const Wall& wall, const RationalVector& a, const RationalVector& b) {
  Rational fa = wall.evaluate(a), fb = wall.evaluate(b);
  if (fa == fb || (fa < 0) == (fb < 0) || fa == 0 || fb == 0) return std::nullopt;
  return fa / (fa - fb);
}

bool count_mp(const std::vector<Wall>& walls) {
  return std::any_of(walls.begin(), walls.end(), [](const Wall& w) { return w.kind == WallKind::MultiplePoint; });
}

}  // namespace

std::vector<WeightVector> weight_chain(const BaseWeight& w0, const WeightVector& w, std::uint64_t seed) {
  if (!is_admissible(w, w0)) throw Error(ErrorCode::InvalidArgument, "target weight is not admissible");
  if (!count_mp(walls_between(w0.w0, w))) return {w};

  const int n = w.n();
  const auto walls = all_walls(n);
  RationalStream rng(seed, 1009);
  for (int attempt = 0; attempt < 64; ++attempt) {
    // Perturb w0 inside its chamber so crossing times become distinct.
    RationalVector start = w0.w0.values();
    Rational shrink = Rational(1, 1000 * (attempt + 1));
    for (int i = 0; i < n; ++i) start[i] += shrink * rng.next_unit() * (w[i + 1] - w0.w0[i + 1]);
    WeightVector first(start);
    if (on_wall(first) || !walls_between(w0.w0, first).empty()) continue;

    std::vector<Rational> mp_times, all_times;
    for (const auto& wall : walls) {
      auto t = crossing_time(wall, start, w.values());
      if (!t) continue;
      all_times.push_back(*t);
      if (wall.kind == WallKind::MultiplePoint) mp_times.push_back(*t);
    }
    std::sort(mp_times.begin(), mp_times.end());
    std::sort(all_times.begin(), all_times.end());
    if (std::adjacent_find(mp_times.begin(), mp_times.end()) != mp_times.end()) continue;

    std::vector<WeightVector> chain{first};
    for (std::size_t k = 0; k + 1 < mp_times.size(); ++k) {
      auto next = std::upper_bound(all_times.begin(), all_times.end(), mp_times[k]);
      Rational t = (mp_times[k] + *next) / 2;
      chain.emplace_back(lerp(start, w.values(), t));
    }
    chain.push_back(w);

    bool ok = true;
    for (std::size_t k = 0; k + 1 < chain.size() && ok; ++k) ok = adjacent(chain[k], chain[k + 1]).has_value();
    if (ok) return chain;
  }
  throw Error(ErrorCode::NoChainFound, "could not separate wall crossings");
}

ExclusionCertificate exclusion_certificate(int n) {
  if (n < 5) throw Error(ErrorCode::BadN, "exclusion system needs n >= 5");
  ExclusionCertificate cert;
  cert.n = n;
  const IndexSet all = IndexSet::range(1, n);
  for (int k = 1; k <= n - 1; ++k) cert.index_sets.push_back(all.without(IndexSet{k + 1}));
  const IndexSet In = IndexSet::range(2, n);
  cert.index_sets.push_back(In);

  std::set<IndexSet> triples;
  for (int k = 0; k < n - 1; ++k)
    for (auto& T : subsets_of_size(cert.index_sets[static_cast<std::size_t>(k)], 3)) triples.insert(T);

  const auto N = static_cast<std::size_t>(n);
  auto indicator = [&](const IndexSet& I, int sign) {
    RationalVector v(N);
    for (int i : I) v[static_cast<std::size_t>(i - 1)] = sign;
    return v;
  };

  cert.full = LinearSystem(N);
  cert.relaxed = LinearSystem(N);
  for (auto* sys : {&cert.full, &cert.relaxed}) {
    for (const auto& T : triples) sys->add_gt(indicator(T, 1), 2);  // (1)
    for (int i = 1; i <= n; ++i) {
      sys->add_gt(indicator(IndexSet{i}, 1), 0);
      sys->add_le(indicator(IndexSet{i}, 1), 1);
    }
  }
  const std::size_t row_2 = cert.full.rows().size();
  cert.full.add_le(indicator(In, 1), 2);  // (2)

  const IndexSet common = cert.index_sets.front().intersected(In);
  cert.triple = {common.elements()[0], common.elements()[1], common.elements()[2]};
  for (const auto& Ik : cert.index_sets)
    if (Ik.intersected(In).size() < 3) throw Error(ErrorCode::InvalidArgument, "internal: I_k and I_n share fewer than 3 indices");

  // Direct certificate: the triple row, inequality (2), and w_i > 0 for the rest of I_n.
  const IndexSet T{cert.triple[0], cert.triple[1], cert.triple[2]};
  cert.direct_farkas.assign(cert.full.rows().size(), Rational(0));
  std::size_t row = 0;
  for (const auto& S : triples) {
    if (S == T) cert.direct_farkas[row] = 1;
    ++row;
  }
  for (int i = 1; i <= n; ++i) {
    if (In.contains(i) && !T.contains(i)) cert.direct_farkas[row] = 1;
    row += 2;
  }
  cert.direct_farkas[row_2] = 1;

  cert.full_result = fourier_motzkin(cert.full);
  cert.relaxed_result = fourier_motzkin(cert.relaxed);
  cert.ones_solve_relaxed = cert.relaxed.satisfied_by(RationalVector(N, Rational(1)));
  return cert;
}

}  // namespace shamoduli
