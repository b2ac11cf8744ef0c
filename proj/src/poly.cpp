#include "flexlines/poly.hpp"

#include <cctype>
#include <map>

#include "flexlines/elimination.hpp"

namespace flex {

HomogeneousPoly::HomogeneousPoly(const Field& f, int degree) : f_(f), d_(degree) {
  if (degree < 0) throw Error(ErrorCode::InvalidInput, "negative degree");
  c_.assign(static_cast<std::size_t>((degree + 1) * (degree + 2) / 2), f.zero());
}

HomogeneousPoly HomogeneousPoly::constant(const Scalar& c) {
  HomogeneousPoly p(c.field(), 0);
  p.c_[0] = c;
  return p;
}

HomogeneousPoly HomogeneousPoly::monomial(const Scalar& c, int i, int j, int k) {
  HomogeneousPoly p(c.field(), i + j + k);
  p.set(i, j, k, c);
  return p;
}

HomogeneousPoly HomogeneousPoly::variable(const Field& f, int var) {
  return monomial(f.one(), var == 0, var == 1, var == 2);
}

HomogeneousPoly HomogeneousPoly::linear(const Point3& v) {
  HomogeneousPoly p(v[0].field(), 1);
  p.set(1, 0, 0, v[0]);
  p.set(0, 1, 0, v[1]);
  p.set(0, 0, 1, v[2]);
  return p;
}

bool HomogeneousPoly::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

Scalar HomogeneousPoly::coeff(int i, int j, int k) const {
  if (i < 0 || j < 0 || k < 0 || i + j + k != d_) return f_.zero();
  return c_[index(d_, i, j)];
}

void HomogeneousPoly::set(int i, int j, int k, const Scalar& c) {
  if (i < 0 || j < 0 || k < 0 || i + j + k != d_) throw Error(ErrorCode::DegreeMismatch, "exponent outside the form's degree");
  c_[index(d_, i, j)] = c;
}

void HomogeneousPoly::add_to(int i, int j, int k, const Scalar& c) {
  if (i + j + k != d_) throw Error(ErrorCode::DegreeMismatch, "exponent outside the form's degree");
  c_[index(d_, i, j)] += c;
}

void HomogeneousPoly::for_each_term(const std::function<void(int, int, int, const Scalar&)>& fn) const {
  std::size_t idx = 0;
  for (int i = d_; i >= 0; --i)
    for (int j = d_ - i; j >= 0; --j, ++idx)
      if (!c_[idx].is_zero()) fn(i, j, d_ - i - j, c_[idx]);
}

Scalar HomogeneousPoly::leading_coefficient() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return c;
  return f_.zero();
}

HomogeneousPoly& HomogeneousPoly::operator+=(const HomogeneousPoly& o) {
  if (o.f_ != f_) throw Error(ErrorCode::DescriptorMismatch, "form field mismatch");
  if (o.d_ != d_) throw Error(ErrorCode::DegreeMismatch, "adding forms of different degrees");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

HomogeneousPoly& HomogeneousPoly::operator-=(const HomogeneousPoly& o) {
  if (o.f_ != f_) throw Error(ErrorCode::DescriptorMismatch, "form field mismatch");
  if (o.d_ != d_) throw Error(ErrorCode::DegreeMismatch, "subtracting forms of different degrees");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

namespace {

struct Term {
  int i, j;
  Scalar c;
};

std::vector<Term> terms_of(const HomogeneousPoly& p) {
  std::vector<Term> t;
  const auto& c = p.dense();
  std::size_t idx = 0;
  for (int i = p.degree(); i >= 0; --i)
    for (int j = p.degree() - i; j >= 0; --j, ++idx)
      if (!c[idx].is_zero()) t.push_back({i, j, c[idx]});
  return t;
}

}  // namespace

HomogeneousPoly operator*(const HomogeneousPoly& a, const HomogeneousPoly& b) {
  if (a.f_ != b.f_) throw Error(ErrorCode::DescriptorMismatch, "form field mismatch");
  HomogeneousPoly r(a.f_, a.d_ + b.d_);
  auto ta = terms_of(a), tb = terms_of(b);
  for (const auto& x : ta)
    for (const auto& y : tb) r.c_[HomogeneousPoly::index(r.d_, x.i + y.i, x.j + y.j)] += x.c * y.c;
  return r;
}

HomogeneousPoly operator*(HomogeneousPoly a, const Scalar& s) {
  for (auto& c : a.c_) c *= s;
  return a;
}

HomogeneousPoly HomogeneousPoly::operator-() const {
  HomogeneousPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

bool operator==(const HomogeneousPoly& a, const HomogeneousPoly& b) {
  if (a.f_ != b.f_) throw Error(ErrorCode::DescriptorMismatch, "form field mismatch");
  if (a.d_ != b.d_) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

HomogeneousPoly HomogeneousPoly::pow(int e) const {
  HomogeneousPoly r = constant(f_.one());
  HomogeneousPoly b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

HomogeneousPoly HomogeneousPoly::partial(int var) const {
  if (d_ == 0) return HomogeneousPoly(f_, 0);
  HomogeneousPoly r(f_, d_ - 1);
  for_each_term([&](int i, int j, int k, const Scalar& c) {
    int e[3] = {i, j, k};
    if (e[var] == 0) return;
    Scalar m = c * f_.from_int(e[var]);
    e[var] -= 1;
    r.add_to(e[0], e[1], e[2], m);
  });
  return r;
}

HomogeneousPoly HomogeneousPoly::hasse2(int a, int b) const {
  if (d_ < 2) return HomogeneousPoly(f_, 0);
  HomogeneousPoly r(f_, d_ - 2);
  for_each_term([&](int i, int j, int k, const Scalar& c) {
    int e[3] = {i, j, k};
    long long mult;
    if (a == b) {
      if (e[a] < 2) return;
      mult = static_cast<long long>(e[a]) * (e[a] - 1) / 2;
      e[a] -= 2;
    } else {
      if (e[a] == 0 || e[b] == 0) return;
      mult = static_cast<long long>(e[a]) * e[b];
      e[a] -= 1;
      e[b] -= 1;
    }
    r.add_to(e[0], e[1], e[2], c * f_.from_int(mult));
  });
  return r;
}

Scalar HomogeneousPoly::operator()(const Point3& v) const {
  // Horner in x over polynomials in y, z.
  std::vector<Scalar> py(static_cast<std::size_t>(d_) + 1, f_.one()), pz(static_cast<std::size_t>(d_) + 1, f_.one());
  for (int e = 1; e <= d_; ++e) {
    py[e] = py[e - 1] * v[1];
    pz[e] = pz[e - 1] * v[2];
  }
  Scalar acc = f_.zero();
  std::size_t idx = 0;
  for (int i = d_; i >= 0; --i) {
    Scalar inner = f_.zero();
    for (int j = d_ - i; j >= 0; --j, ++idx)
      if (!c_[idx].is_zero()) inner += c_[idx] * py[j] * pz[d_ - i - j];
    acc = acc * v[0] + inner;
  }
  return acc;
}

HomogeneousPoly HomogeneousPoly::normalized() const {
  Scalar l = leading_coefficient();
  if (l.is_zero() || l.is_one()) return *this;
  return *this * l.inverse();
}

std::string HomogeneousPoly::to_string() const {
  std::string out;
  const bool rational = f_.is_rational();
  for_each_term([&](int i, int j, int k, const Scalar& c) {
    std::string mono;
    auto add_var = [&](char v, int e) {
      if (e == 0) return;
      if (!mono.empty()) mono += '*';
      mono += v;
      if (e > 1) mono += '^' + std::to_string(e);
    };
    add_var('x', i);
    add_var('y', j);
    add_var('z', k);
    Scalar mag = c;
    bool negative = false;
    if (rational && c.rational() < 0) {
      negative = true;
      mag = -c;
    }
    std::string coef;
    if (!(mag.is_one() && !mono.empty())) {
      coef = mag.to_string();
      if (mag.is_compound()) coef = "(" + coef + ")";
    }
    std::string term = coef;
    if (!coef.empty() && !mono.empty()) term += '*';
    term += mono;
    if (negative)
      out += "-" + term;
    else
      out += (out.empty() ? "" : "+") + term;
  });
  return out.empty() ? "0" : out;
}

namespace {

// Sparse intermediate for parsing (not necessarily homogeneous).
using Exps = std::array<int, 3>;
using Sparse = std::map<Exps, Scalar>;

class Parser {
 public:
  Parser(const Field& f, std::string_view s) : f_(f), s_(s) {}

  Sparse run() {
    Sparse r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  static constexpr int kMaxDepth = 256;
  static constexpr int kMaxDegree = 1000;

  const Field& f_;
  std::string_view s_;
  std::size_t pos_ = 0;
  int depth_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    const std::string shown = s_.size() > 80 ? std::string(s_.substr(0, 77)) + "..." : std::string(s_);
    throw Error(ErrorCode::ParseError, what + " at position " + std::to_string(pos_) + " in \"" + shown + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void clean(Sparse& a) const {
    for (auto it = a.begin(); it != a.end();) it = it->second.is_zero() ? a.erase(it) : std::next(it);
  }
  Sparse add(Sparse a, const Sparse& b, bool negate) const {
    for (const auto& [e, c] : b) {
      auto it = a.find(e);
      Scalar v = negate ? -c : c;
      if (it == a.end())
        a.emplace(e, v);
      else
        it->second += v;
    }
    clean(a);
    return a;
  }
  Sparse mul(const Sparse& a, const Sparse& b) const {
    Sparse r;
    for (const auto& [ea, ca] : a)
      for (const auto& [eb, cb] : b) {
        Exps e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
        if (e[0] + e[1] + e[2] > kMaxDegree) fail("degree too large");
        auto it = r.find(e);
        if (it == r.end())
          r.emplace(e, ca * cb);
        else
          it->second += ca * cb;
      }
    clean(r);
    return r;
  }
  Sparse expr() {
    skip();
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    Sparse r = term();
    if (neg) r = add(Sparse{}, r, true);
    for (;;) {
      if (accept('+'))
        r = add(r, term(), false);
      else if (accept('-'))
        r = add(r, term(), true);
      else
        return r;
    }
  }
  Sparse term() {
    Sparse r = factor();
    for (;;) {
      if (accept('*')) {
        r = mul(r, factor());
      } else if (accept('/')) {
        Sparse d = factor();
        if (d.size() != 1 || d.begin()->first != Exps{0, 0, 0}) fail("division by a non-constant");
        Scalar inv = d.begin()->second.inverse();
        for (auto& [e, c] : r) c *= inv;
      } else {
        return r;
      }
    }
  }
  Sparse factor() {
    Sparse b = base();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      if (pos_ - start > 4) fail("exponent too large");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      if (e > 1000) fail("exponent too large");
      Sparse r;
      r.emplace(Exps{0, 0, 0}, f_.one());
      for (int i = 0; i < e; ++i) {
        r = mul(r, b);
        if (r.empty()) break;
      }
      return r;
    }
    return b;
  }
  Sparse base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    Sparse r;
    if (c == '(') {
      if (++depth_ > kMaxDepth) fail("nesting too deep");
      ++pos_;
      r = expr();
      if (!accept(')')) fail("expected ')'");
      --depth_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Scalar v = f_.from_mpz(mpz_class(std::string(s_.substr(start, pos_ - start))));
      if (!v.is_zero()) r.emplace(Exps{0, 0, 0}, v);
      return r;
    }
    ++pos_;
    switch (c) {
      case 'x': r.emplace(Exps{1, 0, 0}, f_.one()); return r;
      case 'y': r.emplace(Exps{0, 1, 0}, f_.one()); return r;
      case 'z': r.emplace(Exps{0, 0, 1}, f_.one()); return r;
      case 't':
        if (f_.is_rational() || f_.extension_degree() < 2) fail("'t' needs an extension field");
        r.emplace(Exps{0, 0, 0}, f_.generator());
        return r;
      default: --pos_; fail(std::string("unexpected character '") + c + "'");
    }
  }
};

}  // namespace

HomogeneousPoly HomogeneousPoly::parse(const Field& f, std::string_view text) {
  Sparse s = Parser(f, text).run();
  int deg = 0;
  for (const auto& [e, c] : s) deg = std::max(deg, e[0] + e[1] + e[2]);
  HomogeneousPoly p(f, deg);
  for (const auto& [e, c] : s) p.add_to(e[0], e[1], deg - e[0] - e[1], c);
  return p;
}

HomogeneousPoly partial_derivative(const HomogeneousPoly& f, int var) { return f.partial(var); }

HomogeneousPoly hessian_det(const HomogeneousPoly& f) {
  if (f.degree() < 3) throw Error(ErrorCode::DegreeTooLow, "Hessian needs degree >= 3");
  HomogeneousPoly h[3][3];
  HomogeneousPoly g[3] = {f.partial(0), f.partial(1), f.partial(2)};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) h[a][b] = g[a].partial(b);
  return h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
         h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
}

HomogeneousPoly linear_change(const HomogeneousPoly& f, const ExactMatrix& m) {
  if (m.rows() != 3 || m.cols() != 3) throw Error(ErrorCode::InvalidInput, "linear change needs a 3x3 matrix");
  if (m.field() != f.field()) throw Error(ErrorCode::DescriptorMismatch, "matrix field mismatch");
  if (determinant(m).is_zero()) throw Error(ErrorCode::SingularMatrix, "linear change by a singular matrix");
  const Field& fld = f.field();
  const int d = f.degree();
  std::vector<HomogeneousPoly> pw[3];
  for (int r = 0; r < 3; ++r) {
    HomogeneousPoly l = HomogeneousPoly::linear({m(r, 0), m(r, 1), m(r, 2)});
    pw[r].push_back(HomogeneousPoly::constant(fld.one()));
    for (int e = 1; e <= d; ++e) pw[r].push_back(pw[r].back() * l);
  }
  HomogeneousPoly out(fld, d);
  // Group by the x exponent to reuse partial products.
  for (int i = d; i >= 0; --i) {
    HomogeneousPoly inner(fld, d - i);
    bool any = false;
    for (int j = d - i; j >= 0; --j) {
      Scalar c = f.coeff(i, j, d - i - j);
      if (c.is_zero()) continue;
      inner += pw[1][j] * pw[2][d - i - j] * c;
      any = true;
    }
    if (any) out += pw[0][i] * inner;
  }
  return out;
}

HomogeneousPoly resultant(const HomogeneousPoly& f, const HomogeneousPoly& g, int var) {
  if (f.field() != g.field()) throw Error(ErrorCode::DescriptorMismatch, "form field mismatch");
  const Field& fld = f.field();
  // Remaining variables u (kept) and w (dehomogenized to 1).
  int u = var == 0 ? 1 : 0;
  int w = var == 2 ? 1 : 2;
  auto view = [&](const HomogeneousPoly& p) {
    std::vector<UniPoly> coeffs;
    int top = -1;
    p.for_each_term([&](int i, int j, int k, const Scalar&) {
      int e[3] = {i, j, k};
      top = std::max(top, e[var]);
    });
    coeffs.assign(static_cast<std::size_t>(std::max(top, 0)) + 1, UniPoly(fld));
    p.for_each_term([&](int i, int j, int k, const Scalar& c) {
      int e[3] = {i, j, k};
      coeffs[e[var]] += UniPoly::monomial(c, e[u]);
    });
    return std::pair{coeffs, top};
  };
  auto [vf, mf] = view(f);
  auto [vg, mg] = view(g);
  if (mf <= 0 || mg <= 0) throw Error(ErrorCode::DegreeZeroInVariable, "resultant needs positive degree in the variable");
  UniPoly r = resultant_y(vf, vg);
  const int deg = f.degree() * g.degree() - (f.degree() - mf) * (g.degree() - mg);
  HomogeneousPoly out(fld, deg);
  for (int a = 0; a <= r.degree(); ++a) {
    Scalar c = r.coeff(a);
    if (c.is_zero()) continue;
    int e[3] = {0, 0, 0};
    e[u] = a;
    e[w] = deg - a;
    out.set(e[0], e[1], e[2], c);
  }
  return out;
}

std::optional<HomogeneousPoly> divide_exact(const HomogeneousPoly& f, const HomogeneousPoly& g) {
  if (g.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero form");
  if (f.field() != g.field()) throw Error(ErrorCode::DescriptorMismatch, "form field mismatch");
  const Field& fld = f.field();
  if (f.is_zero()) return HomogeneousPoly(fld, std::max(0, f.degree() - g.degree()));
  if (f.degree() < g.degree()) return std::nullopt;
  auto tg = terms_of(g);
  const Term lead = tg.front();
  const Scalar inv = lead.c.inverse();
  const int dq = f.degree() - g.degree();
  HomogeneousPoly q(fld, dq);
  std::vector<Scalar> r = f.dense();
  const int df = f.degree();
  std::size_t idx = 0;
  for (int i = df; i >= 0; --i) {
    for (int j = df - i; j >= 0; --j, ++idx) {
      if (r[idx].is_zero()) continue;
      const int k = df - i - j;
      const int gk = g.degree() - lead.i - lead.j;
      if (i < lead.i || j < lead.j || k < gk) return std::nullopt;
      Scalar c = r[idx] * inv;
      const int qi = i - lead.i, qj = j - lead.j;
      q.set(qi, qj, dq - qi - qj, c);
      for (const auto& t : tg) r[HomogeneousPoly::index(df, qi + t.i, qj + t.j)] -= c * t.c;
    }
  }
  return q;
}

namespace {

int z_valuation(const HomogeneousPoly& p) {
  int v = p.degree();
  p.for_each_term([&](int, int, int k, const Scalar&) { v = std::min(v, k); });
  return v;
}

HomogeneousPoly strip_z(const HomogeneousPoly& p, int v) {
  HomogeneousPoly r(p.field(), p.degree() - v);
  p.for_each_term([&](int i, int j, int k, const Scalar& c) { r.set(i, j, k - v, c); });
  return r;
}

HomogeneousPoly times_z(const HomogeneousPoly& p, int v) {
  if (v == 0) return p;
  return p * HomogeneousPoly::monomial(p.field().one(), 0, 0, v);
}

}  // namespace

HomogeneousPoly gcd(const HomogeneousPoly& f, const HomogeneousPoly& g) {
  if (f.field() != g.field()) throw Error(ErrorCode::DescriptorMismatch, "form field mismatch");
  if (f.is_zero()) return g.normalized();
  if (g.is_zero()) return f.normalized();
  const int vf = z_valuation(f), vg = z_valuation(g);
  YPoly a = dehomogenize(strip_z(f, vf));
  YPoly b = dehomogenize(strip_z(g, vg));
  YPoly h = gcd_y(a, b);
  int deg = 0;
  for (std::size_t j = 0; j < h.size(); ++j)
    if (!h[j].is_zero()) deg = std::max(deg, static_cast<int>(j) + h[j].degree());
  return times_z(homogenize(f.field(), h, deg), std::min(vf, vg)).normalized();
}

HomogeneousPoly pth_root(const HomogeneousPoly& f) {
  const int p = static_cast<int>(f.field().characteristic());
  if (p == 0) throw Error(ErrorCode::UnsupportedField, "p-th root in characteristic 0");
  if (f.degree() % p) throw Error(ErrorCode::InvalidInput, "form is not a p-th power");
  HomogeneousPoly r(f.field(), f.degree() / p);
  f.for_each_term([&](int i, int j, int k, const Scalar& c) {
    if (i % p || j % p || k % p) throw Error(ErrorCode::InvalidInput, "form is not a p-th power");
    r.set(i / p, j / p, k / p, c.pth_root());
  });
  return r;
}

SquarefreeResult gcd_and_squarefree(const HomogeneousPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "squarefree part of zero");
  SquarefreeResult out;
  HomogeneousPoly g = f.normalized();
  for (int v = 0; v < 3; ++v) {
    HomogeneousPoly d = f.partial(v);
    if (!d.is_zero()) g = gcd(g, d);
  }
  out.derivative_gcd = g;
  out.is_squarefree = g.degree() == 0;
  HomogeneousPoly r = *divide_exact(f, g);
  HomogeneousPoly h = g;
  for (;;) {
    HomogeneousPoly c = gcd(h, r);
    if (c.degree() == 0) break;
    h = *divide_exact(h, c);
  }
  HomogeneousPoly sq = r;
  if (h.degree() > 0) {
    HomogeneousPoly k = pth_root(h.normalized());
    sq = sq * gcd_and_squarefree(k).squarefree;
  }
  out.squarefree = sq.normalized();
  return out;
}

HomogeneousPoly map_up(const HomogeneousPoly& f, const FieldEmbedding& e) {
  HomogeneousPoly r(e.target(), f.degree());
  f.for_each_term([&](int i, int j, int k, const Scalar& c) { r.set(i, j, k, e.up(c)); });
  return r;
}

std::optional<HomogeneousPoly> map_down(const HomogeneousPoly& f, const FieldEmbedding& e) {
  HomogeneousPoly r(e.base(), f.degree());
  bool ok = true;
  f.for_each_term([&](int i, int j, int k, const Scalar& c) {
    if (!ok) return;
    if (!e.in_image(c)) {
      ok = false;
      return;
    }
    r.set(i, j, k, e.down(c));
  });
  if (!ok) return std::nullopt;
  return r;
}

}  // namespace flex
