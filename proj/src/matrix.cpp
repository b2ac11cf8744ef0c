#include "flexlines/matrix.hpp"

#include <utility>

namespace flex {

ExactMatrix::ExactMatrix(const Field& f, std::size_t rows, std::size_t cols)
    : f_(f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

ExactMatrix ExactMatrix::identity(const Field& f, std::size_t n) {
  ExactMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

ExactMatrix ExactMatrix::from_rows(const Field& f, const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(f, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw Error(ErrorCode::InvalidInput, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) {
      if (rows[i][j].field() != f) throw Error(ErrorCode::DescriptorMismatch, "matrix entry field mismatch");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

std::vector<Scalar> ExactMatrix::row(std::size_t i) const {
  return {a_.begin() + static_cast<std::ptrdiff_t>(i * cols_), a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(f_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::InvalidInput, "matrix shape mismatch");
  if (a.f_ != b.f_) throw Error(ErrorCode::DescriptorMismatch, "matrix field mismatch");
  ExactMatrix c(a.f_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

std::vector<Scalar> operator*(const ExactMatrix& a, const std::vector<Scalar>& v) {
  if (a.cols_ != v.size()) throw Error(ErrorCode::InvalidInput, "matrix-vector shape mismatch");
  std::vector<Scalar> r(a.rows_, a.f_.zero());
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
  return r;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.a_.size(); ++i)
    if (a.a_[i] != b.a_[i]) return false;
  return true;
}

namespace {

using IntRows = std::vector<std::vector<mpz_class>>;

// Clears denominators row by row so Bareiss runs over Z.
IntRows integer_rows(const ExactMatrix& m, mpz_class* scale) {
  IntRows rows(m.rows(), std::vector<mpz_class>(m.cols()));
  if (scale) *scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).rational().get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const mpq_class& q = m(i, j).rational();
      rows[i][j] = q.get_num() * (l / q.get_den());
    }
    if (scale) *scale *= l;
  }
  return rows;
}

// Fraction-free forward elimination. Returns pivot columns; rows are left in
// echelon form. sign tracks row swaps.
std::vector<std::size_t> bareiss(IntRows& a, int& sign) {
  const std::size_t n = a.size(), c = n ? a[0].size() : 0;
  std::vector<std::size_t> piv;
  mpz_class prev = 1;
  std::size_t r = 0;
  sign = 1;
  for (std::size_t col = 0; col < c && r < n; ++col) {
    std::size_t sel = r;
    while (sel < n && a[sel][col] == 0) ++sel;
    if (sel == n) continue;
    if (sel != r) {
      std::swap(a[sel], a[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < n; ++i) {
      for (std::size_t j = col + 1; j < c; ++j) {
        a[i][j] = (a[r][col] * a[i][j] - a[i][col] * a[r][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[r][col];
    piv.push_back(col);
    ++r;
  }
  return piv;
}

// Gauss-Jordan over a finite field; returns pivot columns, rows reduced.
std::vector<std::size_t> rref(std::vector<std::vector<Scalar>>& a, int& sign, Scalar* det_acc) {
  const std::size_t n = a.size(), c = n ? a[0].size() : 0;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  sign = 1;
  for (std::size_t col = 0; col < c && r < n; ++col) {
    std::size_t sel = r;
    while (sel < n && a[sel][col].is_zero()) ++sel;
    if (sel == n) continue;
    if (sel != r) {
      std::swap(a[sel], a[r]);
      sign = -sign;
    }
    Scalar pv = a[r][col];
    if (det_acc) *det_acc *= pv;
    Scalar inv = pv.inverse();
    for (std::size_t j = col; j < c; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i][col].is_zero()) continue;
      Scalar f = a[i][col];
      for (std::size_t j = col; j < c; ++j)
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
    }
    piv.push_back(col);
    ++r;
  }
  return piv;
}

std::vector<std::vector<Scalar>> rows_of(const ExactMatrix& m) {
  std::vector<std::vector<Scalar>> a(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) a[i] = m.row(i);
  return a;
}

// Row echelon data usable by both field kinds: reduced rows over the field.
std::vector<std::size_t> reduced_echelon(const ExactMatrix& m, std::vector<std::vector<Scalar>>& out) {
  const Field& f = m.field();
  int sign = 1;
  if (f.is_rational()) {
    IntRows a = integer_rows(m, nullptr);
    auto piv = bareiss(a, sign);
    // Back-substitute to reduced form with rationals on the (small) echelon part.
    out.assign(piv.size(), std::vector<Scalar>(m.cols(), f.zero()));
    for (std::size_t i = 0; i < piv.size(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = Scalar::from_rational(f, mpq_class(a[i][j]));
    for (std::size_t i = piv.size(); i-- > 0;) {
      Scalar inv = out[i][piv[i]].inverse();
      for (auto& v : out[i]) v *= inv;
      for (std::size_t k = 0; k < i; ++k) {
        Scalar fct = out[k][piv[i]];
        if (fct.is_zero()) continue;
        for (std::size_t j = piv[i]; j < m.cols(); ++j) out[k][j] -= fct * out[i][j];
      }
    }
    return piv;
  }
  out = rows_of(m);
  auto piv = rref(out, sign, nullptr);
  out.resize(piv.size());
  return piv;
}

}  // namespace

Scalar determinant(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidInput, "determinant of a non-square matrix");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  if (n == 0) return f.one();
  int sign = 1;
  if (f.is_rational()) {
    mpz_class scale;
    IntRows a = integer_rows(m, &scale);
    auto piv = bareiss(a, sign);
    if (piv.size() < n) return f.zero();
    mpq_class d(a[n - 1][n - 1] * sign, scale);
    d.canonicalize();
    return Scalar::from_rational(f, d);
  }
  auto a = rows_of(m);
  Scalar acc = f.one();
  auto piv = rref(a, sign, &acc);
  if (piv.size() < n) return f.zero();
  return sign < 0 ? -acc : acc;
}

std::size_t rank(const ExactMatrix& m) {
  std::vector<std::vector<Scalar>> e;
  return reduced_echelon(m, e).size();
}

std::vector<std::vector<Scalar>> nullspace(const ExactMatrix& m) {
  const Field& f = m.field();
  std::vector<std::vector<Scalar>> e;
  auto piv = reduced_echelon(m, e);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t freec = 0; freec < m.cols(); ++freec) {
    if (is_piv[freec]) continue;
    std::vector<Scalar> v(m.cols(), f.zero());
    v[freec] = f.one();
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -e[i][freec];
    basis.push_back(std::move(v));
  }
  return basis;
}

ExactMatrix inverse(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidInput, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const Field& f = m.field();
  std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(2 * n, f.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n + i] = f.one();
  }
  int sign = 1;
  auto piv = rref(a, sign, nullptr);
  if (piv.size() < n || piv[n - 1] != n - 1) throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
  ExactMatrix inv(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = a[i][n + j];
  return inv;
}

}  // namespace flex
