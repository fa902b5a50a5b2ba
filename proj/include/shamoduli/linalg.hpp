#pragma once

#include <optional>
#include <vector>

#include "shamoduli/rational.hpp"

namespace shamoduli {

// Dense exact matrix, row major. Small by construction (at most a few dozen
// rows and columns), so plain Gauss-Jordan is all we need.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows, RationalVector(cols)) {}
  explicit Matrix(std::vector<RationalVector> rows);

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r][c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r][c]; }
  const RationalVector& row(std::size_t r) const { return data_[r]; }

  void append_row(RationalVector row);

 private:
  std::size_t cols_ = 0;
  std::vector<RationalVector> data_;
};

struct EchelonForm {
  Matrix reduced;                  // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

EchelonForm rref(Matrix m);
std::size_t rank(const Matrix& m);

// Basis of {x : m x = 0}.
std::vector<RationalVector> nullspace(const Matrix& m);

enum class SolutionKind { None, Unique, Family };

// Affine solution set of m x = b: particular + span(directions).
struct AffineSolution {
  SolutionKind kind = SolutionKind::None;
  RationalVector particular;
  std::vector<RationalVector> directions;
};

AffineSolution solve(const Matrix& m, const RationalVector& b);

RationalVector combine(const std::vector<RationalVector>& basis, const RationalVector& coeffs);

}  // namespace shamoduli
