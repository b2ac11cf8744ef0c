#include <algorithm>
#include <cmath>

#include "curves_internal.hpp"

namespace flex {
namespace detail {

UniPoly squarefree_part(const UniPoly& f) {
  UniPoly out = UniPoly::constant(f.field().one());
  for (const auto& [factor, m] : squarefree_factorization(f)) {
    (void)m;
    out = out * factor;
  }
  return out;
}

namespace {

void trim(YPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Makes the leading coefficient of p a unit modulo g, splitting g where it is
// a zero divisor. Each emitted branch carries p reduced modulo its factor.
void split_on_lead(const UniPoly& g, YPoly p, std::vector<std::pair<UniPoly, YPoly>>& out) {
  p = reduce_mod(p, g);
  if (p.empty()) {
    out.emplace_back(g, p);
    return;
  }
  UniPoly d = gcd(p.back(), g);
  if (d.degree() <= 0) {
    out.emplace_back(g, p);
    return;
  }
  split_on_lead(d, p, out);
  split_on_lead(g / d, p, out);
}

UniPoly inverse_unit(const UniPoly& a, const UniPoly& g) {
  auto [d, s] = inverse_mod(a, g);
  if (d.degree() != 0) throw Error(ErrorCode::InvalidInput, "not a unit");
  return s;
}

YPoly make_monic(const YPoly& p, const UniPoly& g) {
  if (p.empty()) return p;
  UniPoly inv = inverse_unit(p.back(), g);
  YPoly r;
  for (const auto& c : p) r.push_back(mulmod(c, inv, g));
  return r;
}

// Euclid over (k[x]/(g))[y] with dynamic splitting.
void gcd_mod(const UniPoly& g, YPoly a, YPoly b, std::vector<GcdBranch>& out) {
  if (g.degree() <= 0) return;
  a = reduce_mod(a, g);
  b = reduce_mod(b, g);
  for (;;) {
    if (b.empty()) {
      std::vector<std::pair<UniPoly, YPoly>> parts;
      split_on_lead(g, a, parts);
      for (auto& [gi, ai] : parts) out.push_back({gi, make_monic(ai, gi)});
      return;
    }
    std::vector<std::pair<UniPoly, YPoly>> parts;
    split_on_lead(g, b, parts);
    if (parts.size() > 1) {
      for (auto& [gi, bi] : parts) gcd_mod(gi, a, bi, out);
      return;
    }
    b = parts[0].second;
    if (b.empty()) continue;
    if (y_degree(a) < y_degree(b)) {
      std::swap(a, b);
      continue;
    }
    const UniPoly inv = inverse_unit(b.back(), g);
    const int db = y_degree(b);
    while (!a.empty() && y_degree(a) >= db) {
      const int da = y_degree(a);
      UniPoly f = mulmod(a.back(), inv, g);
      for (int j = 0; j <= db; ++j) a[da - db + j] = (a[da - db + j] - f * b[j]) % g;
      trim(a);
    }
    std::swap(a, b);
  }
}

}  // namespace

std::vector<GcdBranch> gcd_over_quotient(const std::vector<YPoly>& polys, const UniPoly& g) {
  std::vector<GcdBranch> branches{{g.monic(), reduce_mod(polys.front(), g)}};
  for (std::size_t i = 1; i < polys.size(); ++i) {
    std::vector<GcdBranch> next;
    for (const auto& br : branches) gcd_mod(br.modulus, br.gcd, polys[i], next);
    branches = std::move(next);
  }
  std::vector<GcdBranch> out;
  for (auto& br : branches) {
    std::vector<std::pair<UniPoly, YPoly>> parts;
    split_on_lead(br.modulus, br.gcd, parts);
    for (auto& [gi, hi] : parts) out.push_back({gi, make_monic(hi, gi)});
  }
  return out;
}

std::optional<std::vector<GcdBranch>> affine_singular_branches(const HomogeneousPoly& f) {
  std::vector<YPoly> polys;
  polys.push_back(dehomogenize(f));
  for (int v = 0; v < 3; ++v) {
    YPoly p = dehomogenize(f.partial(v));
    if (!p.empty()) polys.push_back(p);
  }
  const Field fld = f.field();
  UniPoly g(fld);
  auto fold = [&](const UniPoly& u) {
    if (u.is_zero()) return;
    g = g.is_zero() ? u.monic() : gcd(g, u);
  };
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (y_degree(polys[i]) == 0) fold(polys[i][0]);
    for (std::size_t j = i + 1; j < polys.size() && !(g.degree() == 0); ++j)
      if (y_degree(polys[i]) > 0 && y_degree(polys[j]) > 0) fold(resultant_y(polys[i], polys[j]));
    if (g.degree() == 0) return std::vector<GcdBranch>{};
  }
  if (g.is_zero()) return std::nullopt;
  if (g.degree() == 0) return std::vector<GcdBranch>{};
  std::vector<GcdBranch> out;
  for (auto& br : gcd_over_quotient(polys, squarefree_part(g))) {
    if (br.gcd.empty()) return std::nullopt;
    if (y_degree(br.gcd) >= 1) out.push_back(std::move(br));
  }
  return out;
}

std::vector<ProjPoint> singular_points_at_infinity(const HomogeneousPoly& f, int& residual) {
  const Field fld = f.field();
  residual = 0;
  HomogeneousPoly forms[4] = {f, f.partial(0), f.partial(1), f.partial(2)};
  std::vector<ProjPoint> out;
  const Point3 e1{fld.one(), fld.zero(), fld.zero()};
  if (std::all_of(std::begin(forms), std::end(forms), [&](const HomogeneousPoly& h) { return h(e1).is_zero(); }))
    out.emplace_back(e1);
  UniPoly g(fld);
  for (const auto& h : forms) {
    std::vector<Scalar> c(static_cast<std::size_t>(h.degree()) + 1, fld.zero());
    h.for_each_term([&](int i, int, int k, const Scalar& v) {
      if (k == 0) c[i] = v;
    });
    UniPoly u(fld, c);
    if (u.is_zero()) continue;
    g = g.is_zero() ? u.monic() : gcd(g, u);
  }
  if (g.is_zero()) throw Error(ErrorCode::NonReducedCurve, "singular along the line z = 0");
  if (g.degree() > 0) {
    auto rep = univariate_roots(squarefree_part(g));
    for (const auto& [x0, m] : rep.roots) {
      (void)m;
      out.emplace_back(x0, fld.one(), fld.zero());
    }
    for (int d : rep.residual_degrees) residual += d;
  }
  return out;
}

}  // namespace detail

namespace {

SingularPointInfo classify(const HomogeneousPoly& form, const ProjPoint& p) {
  const Field f = form.field();
  const int d = form.degree();
  const bool char2 = f.characteristic() == 2;
  SingularPointInfo info;
  info.point = p;
  ExactMatrix m = chart_at(p);
  HomogeneousPoly g = linear_change(form, m);
  Scalar a = g.coeff(2, 0, d - 2), b = g.coeff(1, 1, d - 2), c = g.coeff(0, 2, d - 2);
  if (a.is_zero() && b.is_zero() && c.is_zero()) return info;
  const ExactMatrix back = inverse(m).transpose();
  auto to_original = [&](const Scalar& al, const Scalar& be) { return transform_line(back, ProjLine(al, be, f.zero())); };
  const bool double_line = char2 ? b.is_zero() : (b * b - f.from_int(4) * a * c).is_zero();
  if (!double_line) {
    info.kind = SingularityKind::node;
    if (a.is_zero()) {
      info.tangent_cone = {{to_original(f.zero(), f.one()), 1}, {to_original(b, c), 1}};
    } else {
      // a x^2 + b x y + c y^2 = a (x - t1 y)(x - t2 y)
      auto rep = univariate_roots({c, b, a});
      if (rep.roots.empty()) {
        HomogeneousPoly q(f, 2);
        q.set(2, 0, 0, a);
        q.set(1, 1, 0, b);
        q.set(0, 2, 0, c);
        info.irreducible_cone = linear_change(q, inverse(m)).normalized();
      } else {
        for (const auto& [t, mult] : rep.roots) {
          (void)mult;
          info.tangent_cone.emplace_back(to_original(f.one(), -t), 1);
        }
      }
    }
    std::sort(info.tangent_cone.begin(), info.tangent_cone.end());
    return info;
  }
  Scalar al, be;
  if (char2) {
    al = a.pth_root();
    be = c.pth_root();
  } else if (!a.is_zero()) {
    al = f.one();
    be = b / (f.from_int(2) * a);
  } else {
    al = f.zero();
    be = f.one();
  }
  info.tangent_cone = {{to_original(al, be), 2}};
  // Coordinates (u, v, w) with the tangent line v = 0 and the point at w.
  ExactMatrix n(f, 3, 3);
  n(0, 0) = -be;
  n(1, 0) = al;
  if (!al.is_zero())
    n(0, 1) = al.inverse();
  else
    n(1, 1) = be.inverse();
  n(2, 2) = f.one();
  HomogeneousPoly t = linear_change(g, n);
  if (!t.coeff(3, 0, d - 3).is_zero()) {
    info.kind = SingularityKind::cusp;
    return info;
  }
  // Blow-up v = u w: quadratic part c2 w^2 + e u w + q4 u^2 at the origin.
  Scalar c2 = t.coeff(0, 2, d - 2);
  Scalar e = t.coeff(2, 1, d - 3);
  Scalar q4 = d >= 4 ? t.coeff(4, 0, d - 4) : f.zero();
  const bool nondegenerate = char2 ? !e.is_zero() : !(e * e - f.from_int(4) * c2 * q4).is_zero();
  info.kind = nondegenerate ? SingularityKind::tacnode : SingularityKind::other;
  return info;
}

struct RawLocus {
  std::vector<ProjPoint> points;
  int residual = 0;
};

// Base-field singular points of a curve whose form has no repeated factor in
// the partial-derivative gcd.
RawLocus locate(const HomogeneousPoly& form) {
  const Field f = form.field();
  const int d = form.degree();
  for (int s = 0; s < 40; ++s) {
    ExactMatrix m = shear(f, s);
    HomogeneousPoly g = linear_change(form, m);
    if (g.coeff(0, d, 0).is_zero()) continue;
    auto branches = detail::affine_singular_branches(g);
    if (!branches) continue;
    RawLocus out;
    for (const auto& br : *branches) {
      auto xr = univariate_roots(br.modulus);
      for (int deg : xr.residual_degrees) out.residual += deg * y_degree(br.gcd);
      for (const auto& [x0, mult] : xr.roots) {
        (void)mult;
        UniPoly hy = detail::squarefree_part(at_x(br.gcd, x0));
        auto yr = univariate_roots(hy);
        for (int deg : yr.residual_degrees) out.residual += deg;
        for (const auto& [y0, my] : yr.roots) {
          (void)my;
          out.points.push_back(transform_point(m, ProjPoint(x0, y0, f.one())));
        }
      }
    }
    int inf_residual = 0;
    for (const auto& p : detail::singular_points_at_infinity(g, inf_residual)) out.points.push_back(transform_point(m, p));
    out.residual += inf_residual;
    std::sort(out.points.begin(), out.points.end());
    return out;
  }
  if (f.is_finite() && f.order() < 64) {
    // Tiny fields may have no usable projection center; the point count is
    // geometric, so solve over an extension and descend.
    int k = 2;
    while (static_cast<double>(k) * std::log2(static_cast<double>(f.order())) < 6.0) ++k;
    FieldEmbedding e = FieldEmbedding::extend(f, k);
    RawLocus up = locate(map_up(form, e));
    RawLocus out;
    out.residual = up.residual;
    for (const auto& p : up.points) {
      if (auto down = map_down(p, e))
        out.points.push_back(*down);
      else
        ++out.residual;
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
  }
  throw Error(ErrorCode::EliminationDegenerate, "shear list exhausted while locating singular points");
}

}  // namespace

bool is_smooth(const PlaneCurve& c) {
  const HomogeneousPoly& form = c.form();
  if (form.degree() <= 1) return true;
  HomogeneousPoly g = form;
  for (int v = 0; v < 3; ++v) g = gcd(g, form.partial(v));
  if (g.degree() > 0) return false;
  RawLocus l = locate(form);
  return l.points.empty() && l.residual == 0;
}

SingularLocus singular_points(const PlaneCurve& c) {
  const HomogeneousPoly& form = c.form();
  if (!gcd_and_squarefree(form).is_squarefree) throw Error(ErrorCode::NonReducedCurve, form.to_string());
  SingularLocus out;
  if (form.degree() <= 1) return out;
  RawLocus l = locate(form);
  out.residual_points = l.residual;
  for (const auto& p : l.points) out.points.push_back(classify(form, p));
  return out;
}

}  // namespace flex
