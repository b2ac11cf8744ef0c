#include "flexlines/field.hpp"
#include "flexlines/univariate.hpp"

namespace flex {

FieldEmbedding FieldEmbedding::with_min_size(const Field& base, std::uint64_t min_size) {
  if (base.is_rational() || base.order() >= min_size) return extend(base, 1);
  const std::uint64_t p = base.characteristic();
  const int a = base.extension_degree();
  int b = 2;
  for (;; ++b) {
    long double size = 1;
    for (int i = 0; i < a * b; ++i) size *= static_cast<long double>(p);
    if (size >= static_cast<long double>(min_size)) break;
  }
  return extend(base, b);
}

FieldEmbedding FieldEmbedding::extend(const Field& base, int b) {
  FieldEmbedding e;
  e.base_ = base;
  e.target_ = base;
  if (base.is_rational() || b == 1) return e;
  const std::uint64_t p = base.characteristic();
  const int a = base.extension_degree();
  e.target_ = Field::galois(p, a * b);
  const Field& K = e.target_;
  Scalar theta = K.zero();
  if (a > 1) {
    std::vector<Scalar> m;
    for (auto c : base.modulus()) m.push_back(K.from_int(static_cast<long long>(c)));
    auto roots = distinct_roots(UniPoly(K, m));
    if (roots.empty()) throw Error(ErrorCode::UnsupportedField, "modulus has no root in the extension");
    theta = roots.front();
  }
  Scalar pw = K.one();
  for (int i = 0; i < a; ++i) {
    e.basis_.push_back(pw);
    pw *= theta;
  }
  return e;
}

Scalar FieldEmbedding::up(const Scalar& s) const {
  if (s.field() != base_) throw Error(ErrorCode::DescriptorMismatch, "embedding source mismatch");
  if (trivial()) return s;
  const std::uint64_t p = base_.characteristic();
  std::uint64_t code = s.code();
  Scalar r = target_.zero();
  for (const auto& b : basis_) {
    std::uint64_t d = code % p;
    code /= p;
    if (d) r += b * target_.from_int(static_cast<long long>(d));
  }
  return r;
}

bool FieldEmbedding::solve(const Scalar& s, std::vector<std::uint64_t>& coords) const {
  // Gaussian elimination over GF(p) on the digit vectors of the basis.
  const std::uint64_t p = base_.characteristic();
  const int n = target_.extension_degree();
  const int a = static_cast<int>(basis_.size());
  const Field fp = Field::prime(p);
  auto digits = [&](std::uint64_t c) {
    std::vector<Scalar> d;
    for (int i = 0; i < n; ++i) {
      d.push_back(fp.from_int(static_cast<long long>(c % p)));
      c /= p;
    }
    return d;
  };
  std::vector<std::vector<Scalar>> rows(n, std::vector<Scalar>(a + 1, fp.zero()));
  for (int j = 0; j < a; ++j) {
    auto d = digits(basis_[j].code());
    for (int i = 0; i < n; ++i) rows[i][j] = d[i];
  }
  auto rhs = digits(s.code());
  for (int i = 0; i < n; ++i) rows[i][a] = rhs[i];
  int r = 0;
  std::vector<int> piv;
  for (int c = 0; c < a && r < n; ++c) {
    int sel = -1;
    for (int i = r; i < n; ++i)
      if (!rows[i][c].is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[r], rows[sel]);
    Scalar inv = rows[r][c].inverse();
    for (auto& v : rows[r]) v *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Scalar fct = rows[i][c];
      for (int k = 0; k <= a; ++k) rows[i][k] -= fct * rows[r][k];
    }
    piv.push_back(c);
    ++r;
  }
  for (int i = r; i < n; ++i)
    if (!rows[i][a].is_zero()) return false;
  coords.assign(a, 0);
  for (int i = 0; i < r; ++i) coords[piv[i]] = rows[i][a].code();
  return true;
}

bool FieldEmbedding::in_image(const Scalar& s) const {
  if (trivial()) return true;
  std::vector<std::uint64_t> c;
  return solve(s, c);
}

Scalar FieldEmbedding::down(const Scalar& s) const {
  if (s.field() != target_) throw Error(ErrorCode::DescriptorMismatch, "embedding target mismatch");
  if (trivial()) return s;
  std::vector<std::uint64_t> c;
  if (!solve(s, c)) throw Error(ErrorCode::InvalidInput, "element is not in the base field");
  std::uint64_t code = 0;
  for (std::size_t i = c.size(); i-- > 0;) code = code * base_.characteristic() + c[i];
  return Scalar::from_code(base_, code);
}

}  // namespace flex
