#include "shamoduli/fourier_motzkin.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "shamoduli/error.hpp"

namespace shamoduli {

void LinearSystem::add(RationalVector coeffs, Rational bound, bool strict) {
  if (coeffs.size() != dim_) throw Error(ErrorCode::LengthMismatch, "inequality dimension");
  rows_.push_back({std::move(coeffs), std::move(bound), strict});
}

void LinearSystem::add_ge(RationalVector coeffs, Rational bound) {
  for (auto& c : coeffs) c = -c;
  add(std::move(coeffs), -bound, false);
}

void LinearSystem::add_gt(RationalVector coeffs, Rational bound) {
  for (auto& c : coeffs) c = -c;
  add(std::move(coeffs), -bound, true);
}

bool LinearSystem::satisfied_by(const RationalVector& x) const {
  if (x.size() != dim_) return false;
  for (const auto& r : rows_) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < dim_; ++j) lhs += r.coeffs[j] * x[j];
    if (r.strict ? !(lhs < r.bound) : !(lhs <= r.bound)) return false;
  }
  return true;
}

bool verify_farkas(const LinearSystem& system, const RationalVector& lambda) {
  const auto& rows = system.rows();
  if (lambda.size() != rows.size()) return false;
  RationalVector combo(system.dim());
  Rational rhs = 0;
  bool strict_used = false;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (lambda[r] < 0) return false;
    if (lambda[r] == 0) continue;
    for (std::size_t j = 0; j < system.dim(); ++j) combo[j] += lambda[r] * rows[r].coeffs[j];
    rhs += lambda[r] * rows[r].bound;
    strict_used = strict_used || rows[r].strict;
  }
  for (const auto& c : combo)
    if (c != 0) return false;
  return rhs < 0 || (rhs == 0 && strict_used);
}

namespace {

struct Row {
  RationalVector coeffs;
  Rational bound;
  bool strict;
  RationalVector mult;  // over the original rows
  std::size_t support() const {
    return static_cast<std::size_t>(std::count_if(mult.begin(), mult.end(), [](const Rational& q) { return q != 0; }));
  }
  bool trivial() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& q) { return q == 0; });
  }
  bool contradiction() const { return trivial() && (bound < 0 || (bound == 0 && strict)); }
};

void scale(Row& r, const Rational& f) {
  for (auto& c : r.coeffs) c *= f;
  r.bound *= f;
  for (auto& m : r.mult) m *= f;
}

// Positive rescaling so the first nonzero coefficient is +-1.
void normalize(Row& r) {
  for (const auto& c : r.coeffs)
    if (c != 0) {
      scale(r, 1 / abs(c));
      return;
    }
}

// Keep one row per coefficient vector: the tightest bound, then strictness,
// then the smallest history.
std::vector<Row> dedupe(std::vector<Row> rows) {
  std::map<RationalVector, Row> best;
  for (auto& r : rows) {
    normalize(r);
    auto it = best.find(r.coeffs);
    if (it == best.end()) {
      best.emplace(r.coeffs, std::move(r));
      continue;
    }
    Row& cur = it->second;
    bool better = r.bound < cur.bound || (r.bound == cur.bound && r.strict && !cur.strict) ||
                  (r.bound == cur.bound && r.strict == cur.strict && r.support() < cur.support());
    if (better) cur = std::move(r);
  }
  std::vector<Row> out;
  out.reserve(best.size());
  for (auto& [k, r] : best) out.push_back(std::move(r));
  return out;
}

struct Interval {
  std::optional<Rational> lo, hi;
  bool lo_strict = false, hi_strict = false;
};

Rational pick(const Interval& iv) {
  if (iv.lo && iv.hi) {
    if (*iv.lo == *iv.hi) return *iv.lo;
    return (*iv.lo + *iv.hi) / 2;
  }
  if (iv.lo) return *iv.lo + 1;
  if (iv.hi) return *iv.hi - 1;
  return Rational(0);
}

}  // namespace

FeasibilityResult fourier_motzkin(const LinearSystem& system, std::size_t row_budget) {
  const std::size_t dim = system.dim();
  const std::size_t m = system.rows().size();
  FeasibilityResult result;

  std::vector<Row> current;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& in = system.rows()[r];
    Row row{in.coeffs, in.bound, in.strict, RationalVector(m)};
    row.mult[r] = 1;
    current.push_back(std::move(row));
  }

  auto finish_infeasible = [&](const Row& bad) {
    result.feasible = false;
    result.farkas = bad.mult;
    if (!verify_farkas(system, result.farkas))
      throw Error(ErrorCode::InvalidArgument, "internal: Farkas certificate failed verification");
    return result;
  };

  std::vector<bool> eliminated(dim, false);
  std::vector<std::size_t> order;
  std::vector<std::vector<Row>> levels;  // levels[k] = system before eliminating order[k]

  for (std::size_t step = 0; step <= dim; ++step) {
    std::vector<Row> kept;
    for (auto& r : current) {
      if (r.contradiction()) return finish_infeasible(r);
      if (!r.trivial()) kept.push_back(std::move(r));
    }
    current = dedupe(std::move(kept));
    result.peak_rows = std::max(result.peak_rows, current.size());
    if (step == dim) break;

    // Cheapest variable first: fewest generated pairs.
    std::size_t var = dim;
    std::size_t best_cost = 0;
    for (std::size_t j = 0; j < dim; ++j) {
      if (eliminated[j]) continue;
      std::size_t pos = 0, neg = 0;
      for (const auto& r : current) {
        if (r.coeffs[j] > 0) ++pos;
        if (r.coeffs[j] < 0) ++neg;
      }
      std::size_t cost = pos * neg;
      if (var == dim || cost < best_cost) {
        var = j;
        best_cost = cost;
      }
    }
    levels.push_back(current);
    order.push_back(var);
    eliminated[var] = true;

    std::vector<Row> upper, lower, next;
    for (auto& r : current) {
      if (r.coeffs[var] > 0)
        upper.push_back(r);
      else if (r.coeffs[var] < 0)
        lower.push_back(r);
      else
        next.push_back(r);
    }
    const std::size_t history_cap = order.size() + 1;
    for (const auto& u : upper) {
      for (const auto& l : lower) {
        Row c{RationalVector(dim), Rational(0), u.strict || l.strict, RationalVector(m)};
        Rational fu = 1 / u.coeffs[var];
        Rational fl = -1 / l.coeffs[var];
        for (std::size_t j = 0; j < dim; ++j) c.coeffs[j] = fu * u.coeffs[j] + fl * l.coeffs[j];
        c.coeffs[var] = 0;
        c.bound = fu * u.bound + fl * l.bound;
        for (std::size_t k = 0; k < m; ++k) c.mult[k] = fu * u.mult[k] + fl * l.mult[k];
        if (c.contradiction()) return finish_infeasible(c);
        if (c.support() > history_cap) continue;  // Chernikov: implied by the others
        next.push_back(std::move(c));
        if (next.size() > row_budget)
          throw Error(ErrorCode::BudgetExceeded, "Fourier-Motzkin row budget exhausted");
      }
    }
    current = std::move(next);
  }

  // Feasible: back-substitute in reverse elimination order.
  RationalVector x(dim);
  for (std::size_t k = order.size(); k-- > 0;) {
    std::size_t var = order[k];
    Interval iv;
    for (const auto& r : levels[k]) {
      const Rational& a = r.coeffs[var];
      if (a == 0) continue;
      Rational rest = r.bound;
      for (std::size_t j = 0; j < dim; ++j)
        if (j != var) rest -= r.coeffs[j] * x[j];
      Rational b = rest / a;
      if (a > 0) {
        if (!iv.hi || b < *iv.hi || (b == *iv.hi && r.strict)) {
          iv.hi = b;
          iv.hi_strict = r.strict;
        }
      } else {
        if (!iv.lo || b > *iv.lo || (b == *iv.lo && r.strict)) {
          iv.lo = b;
          iv.lo_strict = r.strict;
        }
      }
    }
    x[var] = pick(iv);
  }
  if (!system.satisfied_by(x))
    throw Error(ErrorCode::InvalidArgument, "internal: Fourier-Motzkin witness failed verification");
  result.feasible = true;
  result.witness = std::move(x);
  return result;
}

}  // namespace shamoduli
