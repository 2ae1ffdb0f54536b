#pragma once

#include <optional>
#include <vector>

#include "posgeom/rat.hpp"

namespace posgeom {

// Dense matrix of exact rationals. Rank, kernel and determinants go through
// fraction-free (Bareiss) elimination on the row-scaled integer matrix to
// bound intermediate swell; systems here are small (<= ~50x50).
class RatMatrix {
public:
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
  static RatMatrix identity(int n);
  static RatMatrix from_rows(const std::vector<std::vector<Rat>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int i, int j) { return e_[i * cols_ + j]; }
  const Rat& at(int i, int j) const { return e_[i * cols_ + j]; }
  std::vector<Rat> row(int i) const;

  RatMatrix transpose() const;
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  std::vector<Rat> apply(const std::vector<Rat>& v) const;

  int rank() const;
  Rat det() const;  // square only

  // Exact basis of the right kernel {v : M v = 0}. Each basis vector is a
  // primitive integer vector with positive first nonzero entry. Empty iff
  // the matrix is injective.
  std::vector<std::vector<Rat>> nullspace() const;

  // Unique solution of M x = b for square M; nullopt if M is singular.
  std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const;

  std::optional<RatMatrix> inverse() const;

  bool operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

private:
  int rows_, cols_;
  std::vector<Rat> e_;
};

}  // namespace posgeom
