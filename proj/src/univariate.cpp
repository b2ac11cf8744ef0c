#include "flexlines/univariate.hpp"

#include <algorithm>
#include <map>

namespace flex {

UniPoly::UniPoly(const Field& f, std::vector<Scalar> coeffs) : f_(f), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (c.field() != f_) throw Error(ErrorCode::DescriptorMismatch, "coefficient field mismatch");
  trim();
}

UniPoly UniPoly::constant(const Scalar& c) { return UniPoly(c.field(), {c}); }

UniPoly UniPoly::monomial(const Scalar& c, int degree) {
  Field f = c.field();
  std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1, f.zero());
  v[degree] = c;
  return UniPoly(f, std::move(v));
}

UniPoly UniPoly::x(const Field& f) { return UniPoly(f, {f.zero(), f.one()}); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar UniPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return f_.zero();
  return c_[i];
}

Scalar UniPoly::lead() const {
  if (c_.empty()) return f_.zero();
  return c_.back();
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.f_ != f_) throw Error(ErrorCode::DescriptorMismatch, "polynomial field mismatch");
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), f_.zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.f_ != f_) throw Error(ErrorCode::DescriptorMismatch, "polynomial field mismatch");
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), f_.zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.f_ != b.f_) throw Error(ErrorCode::DescriptorMismatch, "polynomial field mismatch");
  UniPoly r(a.f_);
  if (a.c_.empty() || b.c_.empty()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, a.f_.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  r.trim();
  return r;
}

UniPoly operator*(UniPoly a, const Scalar& s) {
  for (auto& c : a.c_) c *= s;
  a.trim();
  return a;
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

bool operator==(const UniPoly& a, const UniPoly& b) {
  if (a.f_ != b.f_) throw Error(ErrorCode::DescriptorMismatch, "polynomial field mismatch");
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

UniPoly UniPoly::monic() const {
  if (c_.empty()) return *this;
  return *this * lead().inverse();
}

UniPoly UniPoly::derivative() const {
  UniPoly r(f_);
  if (c_.size() <= 1) return r;
  r.c_.reserve(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_.push_back(c_[i] * f_.from_int(static_cast<long long>(i)));
  r.trim();
  return r;
}

Scalar UniPoly::operator()(const Scalar& t) const {
  Scalar acc = f_.zero();
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
  return acc;
}

UniPoly UniPoly::pth_root() const {
  const auto p = static_cast<std::size_t>(f_.characteristic());
  if (p == 0) throw Error(ErrorCode::UnsupportedField, "p-th root in characteristic 0");
  UniPoly r(f_);
  if (c_.empty()) return r;
  r.c_.assign((c_.size() - 1) / p + 1, f_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (i % p != 0) throw Error(ErrorCode::InvalidInput, "polynomial is not a p-th power");
    r.c_[i / p] = c_[i].pth_root();
  }
  r.trim();
  return r;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  const Field& f = a.field();
  if (a.degree() < b.degree()) return {UniPoly(f), a};
  std::vector<Scalar> rem = a.coeffs();
  const int db = b.degree();
  std::vector<Scalar> quo(static_cast<std::size_t>(a.degree() - db) + 1, f.zero());
  const Scalar inv = b.lead().inverse();
  const auto& bc = b.coeffs();
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i].is_zero()) continue;
    Scalar c = rem[i] * inv;
    quo[i - db] = c;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= c * bc[j];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {UniPoly(f, std::move(quo)), UniPoly(f, std::move(rem))};
}

UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::pair<UniPoly, UniPoly> inverse_mod(const UniPoly& a, const UniPoly& m) {
  const Field& f = m.field();
  UniPoly r0 = m, r1 = a % m;
  UniPoly s0(f), s1 = UniPoly::constant(f.one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UniPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.is_zero()) return {r0, s0};
  Scalar inv = r0.lead().inverse();
  return {r0 * inv, (s0 * inv) % m};
}

UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& m) { return (a * b) % m; }

UniPoly powmod(UniPoly base, const mpz_class& e, const UniPoly& m) {
  UniPoly r = UniPoly::constant(m.field().one()) % m;
  base = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mulmod(r, r, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, base, m);
  }
  return r;
}

Scalar resultant(const UniPoly& a0, const UniPoly& b0) {
  const Field& f = a0.field();
  if (a0.is_zero() || b0.is_zero()) return f.zero();
  UniPoly a = a0, b = b0;
  Scalar acc = f.one();
  for (;;) {
    const int m = a.degree(), n = b.degree();
    if (n == 0) return acc * b.lead().pow(m);
    if (m == 0) return acc * a.lead().pow(n);
    if (m < n) {
      if ((m * n) % 2) acc = -acc;
      std::swap(a, b);
      continue;
    }
    UniPoly r = a % b;
    if (r.is_zero()) return f.zero();
    if ((m * n) % 2) acc = -acc;
    acc *= b.lead().pow(m - r.degree());
    a = std::move(b);
    b = std::move(r);
  }
}

std::vector<std::pair<UniPoly, int>> squarefree_factorization(const UniPoly& f0) {
  if (f0.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "squarefree factorization of zero");
  std::vector<std::pair<UniPoly, int>> out;
  UniPoly f = f0.monic();
  if (f.degree() == 0) return out;
  const Field& fld = f.field();
  const int p = static_cast<int>(fld.characteristic());
  UniPoly c = gcd(f, f.derivative());
  if (c.is_zero()) c = f;  // derivative vanished entirely
  UniPoly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    UniPoly y = gcd(w, c);
    UniPoly fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    if (p == 0) throw Error(ErrorCode::InvalidInput, "unexpected cofactor in characteristic 0");
    for (auto& [g, m] : squarefree_factorization(c.pth_root())) out.emplace_back(g, m * p);
  }
  return out;
}

namespace {

void split_linear(const UniPoly& g, std::vector<Scalar>& roots);

std::vector<Scalar> exhaustive_roots(const UniPoly& g) {
  std::vector<Scalar> r;
  const Field& f = g.field();
  for (std::uint64_t c = 0; c < f.order() && static_cast<int>(r.size()) < g.degree(); ++c) {
    Scalar s = Scalar::from_code(f, c);
    if (g(s).is_zero()) r.push_back(s);
  }
  return r;
}

// g monic, squarefree, product of distinct linear factors over a finite field.
void split_linear(const UniPoly& g, std::vector<Scalar>& roots) {
  const Field& f = g.field();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    roots.push_back(-g.coeff(0) / g.coeff(1));
    return;
  }
  if (f.order() <= 4096) {
    auto r = exhaustive_roots(g);
    roots.insert(roots.end(), r.begin(), r.end());
    return;
  }
  const UniPoly xpoly = UniPoly::x(f);
  const mpz_class q(static_cast<unsigned long>(f.order()));
  for (std::uint64_t j = 1;; ++j) {
    UniPoly h(f);
    if (f.characteristic() == 2) {
      UniPoly beta_x = xpoly * f.element(j);
      UniPoly term = beta_x % g;
      h = term;
      for (int i = 1; i < f.extension_degree(); ++i) {
        term = mulmod(term, term, g);
        h += term;
      }
    } else {
      UniPoly base = xpoly + UniPoly::constant(f.element(j));
      h = powmod(base, (q - 1) / 2, g) - UniPoly::constant(f.one());
    }
    UniPoly d = gcd(g, h);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_linear(d, roots);
      split_linear(g / d, roots);
      return;
    }
  }
}

// Degrees of the irreducible factors of a squarefree polynomial with no roots.
std::vector<int> distinct_degree_degrees(UniPoly g) {
  std::vector<int> out;
  const Field& f = g.field();
  const mpz_class q(static_cast<unsigned long>(f.order()));
  UniPoly xq = UniPoly::x(f);
  for (int i = 1; g.degree() >= 2 * i; ++i) {
    xq = powmod(xq, q, g);
    UniPoly d = gcd(g, xq - UniPoly::x(f));
    if (d.degree() > 0) {
      for (int c = 0; c < d.degree() / i; ++c) out.push_back(i);
      g = g / d;
      xq = xq % g;
    }
  }
  if (g.degree() > 0) out.push_back(g.degree());
  return out;
}

std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<std::pair<mpz_class, int>> fac;
  for (mpz_class d = 2; d * d <= n && d < 1000000; ++d) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      fac.emplace_back(d, e);
    }
  }
  if (n > 1) fac.emplace_back(n, 1);
  std::vector<mpz_class> out{1};
  for (auto& [pr, e] : fac) {
    std::size_t sz = out.size();
    mpz_class pw = 1;
    for (int i = 1; i <= e; ++i) {
      pw *= pr;
      for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pw);
    }
  }
  return out;
}

std::vector<Scalar> rational_roots_squarefree(const UniPoly& g) {
  const Field& f = g.field();
  std::vector<Scalar> roots;
  UniPoly h = g;
  if (h.coeff(0).is_zero()) {
    roots.push_back(f.zero());
    h = h / UniPoly::x(f);
  }
  if (h.degree() <= 0) return roots;
  mpz_class den = 1;
  for (const auto& c : h.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
  std::vector<mpz_class> ints;
  for (const auto& c : h.coeffs()) ints.emplace_back(c.rational() * den);
  auto ds = divisors(ints.front());
  auto es = divisors(ints.back());
  for (const auto& d : ds) {
    for (const auto& e : es) {
      for (int sgn : {1, -1}) {
        mpq_class cand(sgn * d, e);
        cand.canonicalize();
        if (cand.get_den() != e) continue;
        Scalar s = Scalar::from_rational(f, cand);
        if (h(s).is_zero()) roots.push_back(s);
      }
    }
  }
  std::sort(roots.begin(), roots.end(), canonical_less);
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace

Scalar any_root(const UniPoly& f) {
  if (f.degree() <= 0) throw Error(ErrorCode::InvalidInput, "no roots of a constant");
  const Field& fld = f.field();
  if (!fld.is_finite()) throw Error(ErrorCode::UnsupportedField, "any_root needs a finite field");
  UniPoly g = f.monic();
  const UniPoly xpoly = UniPoly::x(fld);
  const mpz_class q(static_cast<unsigned long>(fld.order()));
  for (std::uint64_t j = 1; g.degree() > 1; ++j) {
    if (fld.order() <= 4096) return exhaustive_roots(g).at(0);
    UniPoly h(fld);
    if (fld.characteristic() == 2) {
      UniPoly term = (xpoly * fld.element(j)) % g;
      h = term;
      for (int i = 1; i < fld.extension_degree(); ++i) {
        term = mulmod(term, term, g);
        h += term;
      }
    } else {
      h = powmod(xpoly + UniPoly::constant(fld.element(j)), (q - 1) / 2, g) - UniPoly::constant(fld.one());
    }
    UniPoly d = gcd(g, h);
    if (d.degree() > 0 && d.degree() < g.degree()) g = 2 * d.degree() <= g.degree() ? d : g / d;
  }
  return -g.coeff(0) / g.coeff(1);
}

std::vector<Scalar> distinct_roots(const UniPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  std::vector<Scalar> roots;
  const Field& fld = f.field();
  if (f.degree() <= 0) return roots;
  if (fld.is_rational()) return rational_roots_squarefree(f.monic());
  UniPoly g = f.monic();
  UniPoly lin = g;
  if (fld.order() > 4096) {
    UniPoly xq = powmod(UniPoly::x(fld), mpz_class(static_cast<unsigned long>(fld.order())), g);
    lin = gcd(g, xq - UniPoly::x(fld));
  }
  split_linear(lin, roots);
  std::sort(roots.begin(), roots.end(), canonical_less);
  return roots;
}

RootReport univariate_roots(const UniPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  RootReport rep;
  for (const auto& [g, m] : squarefree_factorization(f)) {
    auto rs = distinct_roots(g);
    UniPoly rest = g;
    for (const auto& r : rs) {
      rep.roots.emplace_back(r, m);
      rest = rest / (UniPoly::x(f.field()) - UniPoly::constant(r));
    }
    if (rest.degree() > 0) {
      std::vector<int> degs;
      if (f.field().is_rational())
        degs.push_back(rest.degree());
      else
        degs = distinct_degree_degrees(rest);
      for (int i = 0; i < m; ++i) rep.residual_degrees.insert(rep.residual_degrees.end(), degs.begin(), degs.end());
    }
  }
  std::sort(rep.roots.begin(), rep.roots.end(),
            [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  std::sort(rep.residual_degrees.begin(), rep.residual_degrees.end());
  return rep;
}

RootReport univariate_roots(const std::vector<Scalar>& coeffs) {
  if (coeffs.empty()) throw Error(ErrorCode::ZeroPolynomial, "empty coefficient list");
  return univariate_roots(UniPoly(coeffs.front().field(), coeffs));
}

UniPoly interpolate(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
  if (xs.empty() || xs.size() != ys.size()) throw Error(ErrorCode::InvalidInput, "interpolation size mismatch");
  const Field& f = xs.front().field();
  const std::size_t n = xs.size();
  // Newton divided differences.
  std::vector<Scalar> dd = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  UniPoly r = UniPoly::constant(dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    r = r * (UniPoly::x(f) - UniPoly::constant(xs[i])) + UniPoly::constant(dd[i]);
  }
  return r;
}

UniPoly map_up(const UniPoly& f, const FieldEmbedding& e) {
  std::vector<Scalar> c;
  c.reserve(f.coeffs().size());
  for (const auto& s : f.coeffs()) c.push_back(e.up(s));
  return UniPoly(e.target(), std::move(c));
}

}  // namespace flex
