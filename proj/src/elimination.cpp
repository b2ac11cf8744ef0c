#include "flexlines/elimination.hpp"

#include <algorithm>

namespace flex {

namespace {

void trim(YPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UniPoly content(const YPoly& p) {
  UniPoly c;
  bool first = true;
  for (const auto& e : p) {
    if (e.is_zero()) continue;
    c = first ? e.monic() : gcd(c, e);
    first = false;
    if (c.degree() == 0) break;
  }
  return c;
}

YPoly divide_content(YPoly p, const UniPoly& c) {
  for (auto& e : p) e = e / c;
  return p;
}

YPoly pseudo_remainder(YPoly a, const YPoly& b) {
  const int db = y_degree(b);
  const UniPoly& lb = b.back();
  while (y_degree(a) >= db) {
    const int da = y_degree(a);
    UniPoly la = a.back();
    for (auto& e : a) e = e * lb;
    for (int j = 0; j <= db; ++j) a[da - db + j] -= la * b[j];
    trim(a);
  }
  return a;
}

}  // namespace

YPoly dehomogenize(const HomogeneousPoly& f) {
  const Field& fld = f.field();
  YPoly p(static_cast<std::size_t>(f.degree()) + 1, UniPoly(fld));
  f.for_each_term([&](int i, int j, int, const Scalar& c) { p[j] += UniPoly::monomial(c, i); });
  trim(p);
  return p;
}

HomogeneousPoly homogenize(const Field& f, const YPoly& p, int degree) {
  HomogeneousPoly r(f, degree);
  for (std::size_t j = 0; j < p.size(); ++j)
    for (int i = 0; i <= p[j].degree(); ++i) {
      Scalar c = p[j].coeff(i);
      if (!c.is_zero()) r.set(i, static_cast<int>(j), degree - i - static_cast<int>(j), c);
    }
  return r;
}

int y_degree(const YPoly& p) { return static_cast<int>(p.size()) - 1; }

UniPoly at_x(const YPoly& p, const Scalar& x0) {
  std::vector<Scalar> c;
  c.reserve(p.size());
  for (const auto& e : p) c.push_back(e(x0));
  return UniPoly(x0.field(), std::move(c));
}

YPoly reduce_mod(const YPoly& p, const UniPoly& m) {
  YPoly r;
  r.reserve(p.size());
  for (const auto& e : p) r.push_back(e % m);
  trim(r);
  return r;
}

UniPoly det_over_kx(std::vector<std::vector<UniPoly>> a) {
  const std::size_t n = a.size();
  if (n == 0) throw Error(ErrorCode::InvalidInput, "determinant of an empty matrix");
  const Field f = a[0][0].field();
  UniPoly prev = UniPoly::constant(f.one());
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t sel = k + 1;
      while (sel < n && a[sel][k].is_zero()) ++sel;
      if (sel == n) return UniPoly(f);
      std::swap(a[sel], a[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      a[i][k] = UniPoly(f);
    }
    prev = a[k][k];
  }
  return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

UniPoly resultant_y(const YPoly& f, const YPoly& g) {
  const int m = y_degree(f), n = y_degree(g);
  if (m < 0 || n < 0) throw Error(ErrorCode::ZeroPolynomial, "resultant with the zero polynomial");
  const Field fld = f[0].field();
  if (m == 0 && n == 0) return UniPoly::constant(fld.one());
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<UniPoly>> s(size, std::vector<UniPoly>(size, UniPoly(fld)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s[i][i + (m - k)] = f[k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s[n + i][i + (n - k)] = g[k];
  return det_over_kx(std::move(s));
}

std::pair<UniPoly, UniPoly> first_subresultant(const YPoly& f, const YPoly& g) {
  const int m = y_degree(f), n = y_degree(g);
  if (m < 1 || n < 1 || m + n < 3) throw Error(ErrorCode::InvalidInput, "first subresultant needs degrees summing to at least 3");
  const Field fld = f[0].field();
  const int rows = m + n - 2, cols = m + n - 1;
  // Column c holds the coefficient of y^(cols - 1 - c).
  std::vector<std::vector<UniPoly>> s(rows, std::vector<UniPoly>(cols, UniPoly(fld)));
  for (int i = 0; i < n - 1; ++i)
    for (int k = 0; k <= m; ++k) s[i][i + (m - k)] = f[k];
  for (int i = 0; i < m - 1; ++i)
    for (int k = 0; k <= n; ++k) s[n - 1 + i][i + (n - k)] = g[k];
  auto minor_with = [&](int col) {
    std::vector<std::vector<UniPoly>> t(rows);
    for (int r = 0; r < rows; ++r) {
      t[r].assign(s[r].begin(), s[r].begin() + (rows - 1));
      t[r].push_back(s[r][col]);
    }
    return det_over_kx(std::move(t));
  };
  return {minor_with(cols - 1), minor_with(cols - 2)};
}

YPoly gcd_y(YPoly a, YPoly b) {
  trim(a);
  trim(b);
  if (a.empty() && b.empty()) return {};
  if (a.empty()) return b;
  if (b.empty()) return a;
  const UniPoly ca = content(a), cb = content(b);
  const UniPoly c = gcd(ca, cb);
  if (y_degree(a) == 0 || y_degree(b) == 0) return {c};
  a = divide_content(a, ca);
  b = divide_content(b, cb);
  if (y_degree(a) < y_degree(b)) std::swap(a, b);
  for (;;) {
    YPoly r = pseudo_remainder(a, b);
    if (r.empty()) break;
    if (y_degree(r) == 0) return {c};
    a = std::move(b);
    b = divide_content(r, content(r));
  }
  for (auto& e : b) e = e * c;
  return b;
}

}  // namespace flex
