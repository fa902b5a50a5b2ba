#include "shamoduli/linalg.hpp"

#include <utility>

#include "shamoduli/error.hpp"

namespace shamoduli {

Matrix::Matrix(std::vector<RationalVector> rows) : data_(std::move(rows)) {
  cols_ = data_.empty() ? 0 : data_.front().size();
  for (const auto& r : data_)
    if (r.size() != cols_) throw Error(ErrorCode::LengthMismatch, "ragged matrix rows");
}

void Matrix::append_row(RationalVector row) {
  if (data_.empty() && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw Error(ErrorCode::LengthMismatch, "row length");
  data_.push_back(std::move(row));
}

EchelonForm rref(Matrix m) {
  EchelonForm out;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t p = lead_row;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != lead_row)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(lead_row, k));
    Rational inv = 1 / m(lead_row, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(lead_row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= f * m(lead_row, k);
    }
    out.pivots.push_back(c);
    ++lead_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<RationalVector> nullspace(const Matrix& m) {
  auto ef = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ef.pivots) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < ef.pivots.size(); ++r) v[ef.pivots[r]] = -ef.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

AffineSolution solve(const Matrix& m, const RationalVector& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::LengthMismatch, "rhs length");
  std::size_t n = m.cols();
  Matrix aug(m.rows(), n + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n) = b[r];
  }
  auto ef = rref(aug);
  AffineSolution out;
  if (!ef.pivots.empty() && ef.pivots.back() == n) return out;  // 0 = 1
  out.particular.assign(n, Rational(0));
  for (std::size_t r = 0; r < ef.pivots.size(); ++r) out.particular[ef.pivots[r]] = ef.reduced(r, n);
  out.directions = nullspace(m);
  out.kind = out.directions.empty() ? SolutionKind::Unique : SolutionKind::Family;
  return out;
}

RationalVector combine(const std::vector<RationalVector>& basis, const RationalVector& coeffs) {
  if (basis.size() != coeffs.size()) throw Error(ErrorCode::LengthMismatch, "combination size");
  if (basis.empty()) return {};
  RationalVector out(basis.front().size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += coeffs[i] * basis[i][k];
  return out;
}

}  // namespace shamoduli
