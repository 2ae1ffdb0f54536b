#include "posgeom/linalg.hpp"

#include <algorithm>

#include "posgeom/errors.hpp"

namespace posgeom {

namespace {

// Row-echelon state of the row-scaled integer matrix after fraction-free
// (Bareiss) forward elimination with column pivoting.
struct Echelon {
  std::vector<std::vector<Int>> m;
  std::vector<int> pivot_col;  // one per eliminated row, ascending
  int rank = 0;
  int swap_sign = 1;
  Int row_scale_product = 1;  // product of the lcm factors used per row
};

Echelon bareiss(const RatMatrix& M) {
  const int R = M.rows(), C = M.cols();
  Echelon e;
  e.m.assign(R, std::vector<Int>(C));
  for (int i = 0; i < R; ++i) {
    Int l(1);
    for (int j = 0; j < C; ++j) {
      Int den = M.at(i, j).den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    for (int j = 0; j < C; ++j)
      e.m[i][j] = M.at(i, j).num() * (l / M.at(i, j).den());
    e.row_scale_product *= l;
  }

  Int prev(1);
  int r = 0;
  for (int c = 0; c < C && r < R; ++c) {
    int piv = -1;
    for (int i = r; i < R; ++i)
      if (e.m[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r) {
      std::swap(e.m[piv], e.m[r]);
      e.swap_sign = -e.swap_sign;
    }
    for (int i = r + 1; i < R; ++i) {
      for (int j = c + 1; j < C; ++j) {
        Int t = e.m[r][c] * e.m[i][j] - e.m[i][c] * e.m[r][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        e.m[i][j] = t;
      }
      e.m[i][c] = 0;
    }
    prev = e.m[r][c];
    e.pivot_col.push_back(c);
    ++r;
  }
  e.rank = r;
  return e;
}

}  // namespace

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rat>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  RatMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw DomainError("BadMatrix", "ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Rat> RatMatrix::row(int i) const {
  std::vector<Rat> r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("BadMatrix", "dimension mismatch in product");
  RatMatrix p(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k)
      for (int j = 0; j < b.cols(); ++j) p.at(i, j) += a.at(i, k) * b.at(k, j);
  return p;
}

std::vector<Rat> RatMatrix::apply(const std::vector<Rat>& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw DomainError("BadMatrix", "dimension mismatch in apply");
  std::vector<Rat> out(rows_, Rat(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
  return out;
}

int RatMatrix::rank() const { return bareiss(*this).rank; }

Rat RatMatrix::det() const {
  if (rows_ != cols_) throw DomainError("BadMatrix", "determinant of non-square matrix");
  if (rows_ == 0) return Rat(1);
  const Echelon e = bareiss(*this);
  if (e.rank < rows_) return Rat(0);
  // For a full-rank square matrix the last Bareiss pivot is the determinant
  // of the scaled integer matrix.
  return Rat(e.swap_sign) * Rat(e.m[rows_ - 1][cols_ - 1], e.row_scale_product);
}

std::vector<std::vector<Rat>> RatMatrix::nullspace() const {
  const Echelon e = bareiss(*this);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : e.pivot_col) is_pivot[c] = true;

  std::vector<std::vector<Rat>> basis;
  for (int fc = 0; fc < cols_; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Rat> v(cols_, Rat(0));
    v[fc] = Rat(1);
    // Back-substitute through the echelon rows, bottom-up.
    for (int r = e.rank - 1; r >= 0; --r) {
      const int pc = e.pivot_col[r];
      Rat s(0);
      for (int j = pc + 1; j < cols_; ++j)
        if (!v[j].is_zero() && e.m[r][j] != 0) s += Rat(e.m[r][j]) * v[j];
      v[pc] = -s / Rat(e.m[r][pc]);
    }
    // Normalize: primitive integer vector, first nonzero entry positive.
    Int l(1);
    for (const auto& x : v) {
      Int den = x.den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    Int g(0);
    std::vector<Int> iv(cols_);
    for (int j = 0; j < cols_; ++j) {
      iv[j] = v[j].num() * (l / v[j].den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), iv[j].get_mpz_t());
    }
    int sign = 0;
    for (const auto& x : iv)
      if (x != 0) { sign = sgn(x); break; }
    for (int j = 0; j < cols_; ++j) v[j] = Rat(iv[j] * sign, g);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rat>> RatMatrix::solve(const std::vector<Rat>& b) const {
  if (rows_ != cols_ || static_cast<int>(b.size()) != rows_)
    throw DomainError("BadMatrix", "solve requires a square system");
  // Eliminate the augmented matrix [A | b]; consistency is automatic when A
  // has full rank.
  RatMatrix aug(rows_, cols_ + 1);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[i];
  }
  const Echelon e = bareiss(aug);
  if (e.rank != rows_ || e.pivot_col.back() == cols_) return std::nullopt;
  std::vector<Rat> x(cols_, Rat(0));
  for (int r = rows_ - 1; r >= 0; --r) {
    const int pc = e.pivot_col[r];
    Rat s = Rat(e.m[r][cols_]);
    for (int j = pc + 1; j < cols_; ++j) s -= Rat(e.m[r][j]) * x[j];
    x[pc] = s / Rat(e.m[r][pc]);
  }
  return x;
}

std::optional<RatMatrix> RatMatrix::inverse() const {
  if (rows_ != cols_) throw DomainError("BadMatrix", "inverse of non-square matrix");
  RatMatrix inv(rows_, rows_);
  for (int k = 0; k < rows_; ++k) {
    std::vector<Rat> ek(rows_, Rat(0));
    ek[k] = Rat(1);
    auto col = solve(ek);
    if (!col) return std::nullopt;
    for (int i = 0; i < rows_; ++i) inv.at(i, k) = (*col)[i];
  }
  return inv;
}

}  // namespace posgeom
