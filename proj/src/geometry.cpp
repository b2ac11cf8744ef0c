#include <algorithm>
#include <random>

#include "curves_internal.hpp"

namespace flex {

ProjPoint::ProjPoint(Point3 c) : c_(std::move(c)) {
  int lead = 0;
  while (lead < 3 && c_[lead].is_zero()) ++lead;
  if (lead == 3) throw Error(ErrorCode::InvalidInput, "all coordinates vanish");
  if (!c_[lead].is_one()) {
    Scalar inv = c_[lead].inverse();
    for (auto& v : c_) v *= inv;
  }
}

std::string ProjPoint::to_string() const {
  return "[" + c_[0].to_string() + ", " + c_[1].to_string() + ", " + c_[2].to_string() + "]";
}

bool operator<(const ProjPoint& a, const ProjPoint& b) {
  for (int i = 0; i < 3; ++i) {
    if (canonical_less(a.c_[i], b.c_[i])) return true;
    if (canonical_less(b.c_[i], a.c_[i])) return false;
  }
  return false;
}

Scalar incidence(const ProjLine& l, const ProjPoint& p) { return l[0] * p[0] + l[1] * p[1] + l[2] * p[2]; }

namespace {

Point3 cross(const Point3& a, const Point3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

ProjLine line_through(const ProjPoint& p, const ProjPoint& q) {
  if (p == q) throw Error(ErrorCode::InvalidInput, "line through a repeated point");
  return ProjLine(cross(p.coords(), q.coords()));
}

ProjPoint meet(const ProjLine& l, const ProjLine& m) {
  if (l == m) throw Error(ErrorCode::InvalidInput, "meet of a repeated line");
  return ProjPoint(cross(l.coords(), m.coords()));
}

ProjPoint transform_point(const ExactMatrix& m, const ProjPoint& p) {
  auto v = m * std::vector<Scalar>(p.coords().begin(), p.coords().end());
  return ProjPoint(v[0], v[1], v[2]);
}

ProjLine transform_line(const ExactMatrix& m_inverse_transpose, const ProjLine& l) {
  return transform_point(m_inverse_transpose, l);
}

ProjPoint map_up(const ProjPoint& p, const FieldEmbedding& e) { return ProjPoint(e.up(p[0]), e.up(p[1]), e.up(p[2])); }

std::optional<ProjPoint> map_down(const ProjPoint& p, const FieldEmbedding& e) {
  for (int i = 0; i < 3; ++i)
    if (!e.in_image(p[i])) return std::nullopt;
  return ProjPoint(e.down(p[0]), e.down(p[1]), e.down(p[2]));
}

PlaneCurve::PlaneCurve(const HomogeneousPoly& form) : f_(form.normalized()) {
  if (f_.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "a curve needs a nonzero form");
}

PlaneCurve PlaneCurve::parse(const Field& f, std::string_view text) { return PlaneCurve(HomogeneousPoly::parse(f, text)); }

std::string_view kind_name(SingularityKind k) {
  switch (k) {
    case SingularityKind::node: return "node";
    case SingularityKind::cusp: return "cusp";
    case SingularityKind::tacnode: return "tacnode";
    case SingularityKind::other: return "other";
  }
  return "other";
}

std::string_view kind_name(LineKind k) {
  switch (k) {
    case LineKind::type0: return "type0";
    case LineKind::type1: return "type1";
    case LineKind::degenerate: return "degenerate";
    case LineKind::unknown: return "unknown";
  }
  return "unknown";
}

ExactMatrix shear(const Field& f, int index) {
  ExactMatrix m = ExactMatrix::identity(f, 3);
  if (index == 0) return m;
  std::mt19937_64 rng(0x5ea5u + static_cast<std::uint64_t>(index));
  m(0, 1) = f.random(rng);
  m(2, 0) = f.random(rng);
  m(2, 1) = f.random(rng);
  return m;
}

ExactMatrix chart_at(const ProjPoint& p) {
  const Field f = p.field();
  int lead = 0;
  while (p[lead].is_zero()) ++lead;
  ExactMatrix m(f, 3, 3);
  int col = 0;
  for (int i = 0; i < 3; ++i)
    if (i != lead) m(i, col++) = f.one();
  for (int i = 0; i < 3; ++i) m(i, 2) = p[i];
  return m;
}

ProjLine tangent_line(const PlaneCurve& c, const ProjPoint& p) {
  if (p.field() != c.field()) throw Error(ErrorCode::DescriptorMismatch, "point and curve fields differ");
  if (!c.contains(p)) throw Error(ErrorCode::PointNotOnCurve, p.to_string());
  Point3 g{c.form().partial(0)(p.coords()), c.form().partial(1)(p.coords()), c.form().partial(2)(p.coords())};
  if (g[0].is_zero() && g[1].is_zero() && g[2].is_zero()) throw Error(ErrorCode::SingularAtPoint, p.to_string());
  return ProjLine(g);
}

namespace detail {

UniPoly restrict_to_line(const HomogeneousPoly& f, const Point3& p, const Point3& r) {
  const Field fld = f.field();
  const int d = f.degree();
  std::vector<UniPoly> pw[3];
  for (int a = 0; a < 3; ++a) {
    UniPoly lin(fld, {p[a], r[a]});
    pw[a].push_back(UniPoly::constant(fld.one()));
    for (int e = 1; e <= d; ++e) pw[a].push_back(pw[a].back() * lin);
  }
  UniPoly out(fld);
  f.for_each_term([&](int i, int j, int k, const Scalar& c) { out += pw[0][i] * pw[1][j] * pw[2][k] * c; });
  return out;
}

std::pair<ProjPoint, ProjPoint> line_basis(const ProjLine& l) {
  const Field f = l.field();
  std::vector<ProjPoint> pts;
  for (int i = 0; i < 3 && pts.size() < 2; ++i) {
    Point3 e{f.zero(), f.zero(), f.zero()};
    e[i] = f.one();
    Point3 q = cross(l.coords(), e);
    if (q[0].is_zero() && q[1].is_zero() && q[2].is_zero()) continue;
    ProjPoint pt(q);
    if (pts.empty() || pts[0] != pt) pts.push_back(pt);
  }
  return {pts[0], pts[1]};
}

std::vector<ProjPoint> points_on_line(const HomogeneousPoly& f, const ProjLine& l) {
  const Field fld = f.field();
  auto [a, b] = line_basis(l);
  // Base point c with F(c) != 0 so that every zero is e + s c with s finite.
  std::optional<ProjPoint> c;
  ProjPoint other = a;
  if (!f(b.coords()).is_zero()) {
    c = b;
  } else if (!f(a.coords()).is_zero()) {
    c = a;
    other = b;
  } else {
    for (std::uint64_t i = 1; i < 64 && !c; ++i) {
      Scalar s = fld.element(i);
      if (fld.is_finite() && i >= fld.order()) break;
      Point3 q{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
      if (!f(q).is_zero()) c = ProjPoint(q);
    }
  }
  std::vector<ProjPoint> out;
  if (!c) {
    // Every point of a small line lies on F: enumerate.
    if (fld.is_finite() && fld.order() < 64) {
      out.push_back(b);
      for (std::uint64_t i = 0; i < fld.order(); ++i) {
        Scalar s = fld.element(i);
        out.push_back(ProjPoint(a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]));
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    throw Error(ErrorCode::InvalidInput, "form vanishes on the line");
  }
  if (other == *c) other = (a == *c) ? b : a;
  UniPoly u = restrict_to_line(f, other.coords(), c->coords());
  if (u.is_zero()) throw Error(ErrorCode::InvalidInput, "form vanishes on the line");
  for (const auto& [s, m] : univariate_roots(u).roots) {
    (void)m;
    out.push_back(ProjPoint(other[0] + s * (*c)[0], other[1] + s * (*c)[1], other[2] + s * (*c)[2]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

int line_curve_multiplicity(const PlaneCurve& c, const ProjLine& l, const ProjPoint& p) {
  if (!incidence(l, p).is_zero()) throw Error(ErrorCode::PointNotOnLine, p.to_string() + " not on " + l.to_string());
  auto [a, b] = detail::line_basis(l);
  const ProjPoint& r = (a == p) ? b : a;
  UniPoly u = detail::restrict_to_line(c.form(), p.coords(), r.coords());
  if (u.is_zero()) return kInfiniteMultiplicity;
  int k = 0;
  while (u.coeff(k).is_zero()) ++k;
  return k;
}

std::vector<std::pair<ProjLine, int>> linear_components(const PlaneCurve& c) {
  const Field f = c.field();
  const HomogeneousPoly& form = c.form();
  std::vector<ProjLine> candidates;
  auto on_curve = [&](const ProjLine& l) {
    auto [a, b] = detail::line_basis(l);
    return detail::restrict_to_line(form, a.coords(), b.coords()).is_zero();
  };
  if (f.is_finite() && f.order() <= 140) {
    const std::uint64_t q = f.order();
    auto add = [&](const Scalar& a, const Scalar& b, const Scalar& cc) {
      ProjLine l(a, b, cc);
      if (on_curve(l)) candidates.push_back(l);
    };
    add(f.zero(), f.zero(), f.one());
    for (std::uint64_t i = 0; i < q; ++i) add(f.zero(), f.one(), f.element(i));
    for (std::uint64_t i = 0; i < q; ++i)
      for (std::uint64_t j = 0; j < q; ++j) add(f.one(), f.element(i), f.element(j));
  } else {
    // A line component meets two slice lines in base-field points.
    std::vector<ProjLine> slices;
    for (std::uint64_t i = 0; slices.size() < 2 && i < 400; ++i) {
      ProjLine l(f.one(), f.element(i % 20), f.element(i / 20 + 1));
      if (on_curve(l)) continue;
      if (!slices.empty() && (slices[0] == l || c.contains(meet(slices[0], l)))) continue;
      slices.push_back(l);
    }
    if (slices.size() < 2) throw Error(ErrorCode::EliminationDegenerate, "no slice lines for the line search");
    auto p1 = detail::points_on_line(form, slices[0]);
    auto p2 = detail::points_on_line(form, slices[1]);
    for (const auto& a : p1)
      for (const auto& b : p2) {
        ProjLine l = line_through(a, b);
        if (on_curve(l)) candidates.push_back(l);
      }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<std::pair<ProjLine, int>> out;
  for (const auto& l : candidates) {
    HomogeneousPoly rest = form;
    HomogeneousPoly lf = HomogeneousPoly::linear(l.coords());
    int m = 0;
    while (auto q = divide_exact(rest, lf)) {
      rest = *q;
      ++m;
    }
    out.emplace_back(l, m);
  }
  return out;
}

LineConfiguration::LineConfiguration(const Field& f, int ambient_degree)
    : f_(f), d_(ambient_degree), residual_(HomogeneousPoly::constant(f.one())) {}

void LineConfiguration::add(const ProjLine& l, int multiplicity, LineKind kind) {
  if (l.field() != f_) throw Error(ErrorCode::DescriptorMismatch, "line field differs from configuration field");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), l, [](const LineEntry& e, const ProjLine& x) { return e.line < x; });
  if (it != entries_.end() && it->line == l) {
    it->multiplicity += multiplicity;
    if (it->kind == LineKind::unknown) it->kind = kind;
    return;
  }
  entries_.insert(it, LineEntry{l, multiplicity, kind});
}

void LineConfiguration::set_residual(const HomogeneousPoly& form, std::vector<int> degrees) {
  residual_ = form.normalized();
  residual_degrees_ = std::move(degrees);
  std::sort(residual_degrees_.begin(), residual_degrees_.end());
}

void LineConfiguration::multiply_residual(const HomogeneousPoly& form, const std::vector<int>& degrees) {
  residual_ = (residual_ * form).normalized();
  residual_degrees_.insert(residual_degrees_.end(), degrees.begin(), degrees.end());
  std::sort(residual_degrees_.begin(), residual_degrees_.end());
}

int LineConfiguration::total_multiplicity() const {
  int t = residual_.degree();
  for (const auto& e : entries_) t += e.multiplicity;
  return t;
}

std::vector<int> LineConfiguration::multiplicities() const {
  std::vector<int> m;
  for (const auto& e : entries_) m.push_back(e.multiplicity);
  std::sort(m.rbegin(), m.rend());
  return m;
}

std::optional<LineEntry> LineConfiguration::find(const ProjLine& l) const {
  for (const auto& e : entries_)
    if (e.line == l) return e;
  return std::nullopt;
}

bool LineConfiguration::same_lines(const LineConfiguration& o) const {
  if (entries_.size() != o.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].line != o.entries_[i].line || entries_[i].multiplicity != o.entries_[i].multiplicity) return false;
  return residual_ == o.residual_;
}

std::string LineConfiguration::to_string() const {
  std::string s;
  for (const auto& e : entries_)
    s += e.line.to_string() + " x" + std::to_string(e.multiplicity) + " " + std::string(kind_name(e.kind)) + "\n";
  if (residual_.degree() > 0) s += "residual " + residual_.to_string() + "\n";
  return s;
}

}  // namespace flex
