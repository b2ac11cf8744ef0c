#include <algorithm>
#include <cmath>
#include <optional>
#include <tuple>

#include "curves_internal.hpp"

namespace flex {
namespace detail {

HomogeneousPoly norm_form(const UniPoly& r, const UniPoly& a, const UniPoly& b, const UniPoly& c) {
  const Field base = r.field();
  const int n = r.degree();
  if (n <= 0) return HomogeneousPoly::constant(base.one());
  // Needs n + 1 distinct evaluation values per variable.
  FieldEmbedding e = FieldEmbedding::with_min_size(base, static_cast<std::uint64_t>(n) + 1);
  const Field K = e.target();
  UniPoly rk = map_up(r.monic(), e);
  const UniPoly ak = map_up(a, e) % rk, bk = map_up(b, e) % rk, ck = map_up(c, e) % rk;
  std::vector<Scalar> pts;
  for (int i = 0; i <= n; ++i) pts.push_back(K.element(static_cast<std::uint64_t>(i)));
  // values[j][i] = N(pts[i], pts[j], 1) = Res(r, A u + B v + C) for monic r.
  std::vector<std::vector<Scalar>> values(n + 1, std::vector<Scalar>(n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) values[j][i] = resultant(rk, ak * pts[i] + bk * pts[j] + ck);
  std::vector<UniPoly> in_u;  // N(u, pts[j], 1)
  for (int j = 0; j <= n; ++j) in_u.push_back(interpolate(pts, values[j]));
  HomogeneousPoly out(base, n);
  for (int i = 0; i <= n; ++i) {
    std::vector<Scalar> col;
    for (int j = 0; j <= n; ++j) col.push_back(in_u[j].coeff(i));
    UniPoly in_v = interpolate(pts, col);
    for (int j = 0; j <= in_v.degree(); ++j) {
      Scalar v = in_v.coeff(j);
      if (v.is_zero()) continue;
      if (i + j > n || !e.in_image(v)) throw Error(ErrorCode::EliminationDegenerate, "norm form interpolation failed");
      out.set(i, j, n - i - j, e.down(v));
    }
  }
  return out;
}

}  // namespace detail

namespace {

// Second-order Taylor coefficient of F along the tangent direction (F_y, -F_x, 0).
HomogeneousPoly polar_covariant(const HomogeneousPoly& f) {
  HomogeneousPoly fx = f.partial(0), fy = f.partial(1);
  return f.hasse2(0, 0) * fy * fy - f.hasse2(0, 1) * fx * fy + f.hasse2(1, 1) * fx * fx;
}

// S11^e G(x, -S10/S11, 1) modulo r, where e bounds the y-degree of G.
UniPoly eval_on_branch(const HomogeneousPoly& g, const UniPoly& s10, const UniPoly& s11, const UniPoly& r) {
  const Field f = g.field();
  const int e = g.degree();
  std::vector<UniPoly> xp{UniPoly::constant(f.one())}, np{UniPoly::constant(f.one())}, dp{UniPoly::constant(f.one())};
  const UniPoly num = (-s10) % r, den = s11 % r;
  for (int i = 1; i <= e; ++i) {
    xp.push_back(mulmod(xp.back(), UniPoly::x(f), r));
    np.push_back(mulmod(np.back(), num, r));
    dp.push_back(mulmod(dp.back(), den, r));
  }
  UniPoly out(f);
  g.for_each_term([&](int i, int j, int, const Scalar& c) { out += mulmod(mulmod(xp[i], np[j], r), dp[e - j], r) * c; });
  return out % r;
}

// Tangent-line norm over the branch points of rest, scaled to leading coefficient 1.
std::optional<HomogeneousPoly> branch_norm(const HomogeneousPoly& fm, const UniPoly& s10, const UniPoly& s11,
                                           const UniPoly& rest) {
  if (gcd(s11, rest).degree() != 0) return std::nullopt;
  UniPoly a = eval_on_branch(fm.partial(0), s10, s11, rest);
  UniPoly b = eval_on_branch(fm.partial(1), s10, s11, rest);
  UniPoly c = eval_on_branch(fm.partial(2), s10, s11, rest);
  return detail::norm_form(rest, a, b, c).normalized();
}

std::optional<Scalar> reduce_mod_p(const Scalar& a, const Field& gp) {
  const mpq_class& v = a.rational();
  const mpz_class p(static_cast<unsigned long>(gp.characteristic()));
  if (mpz_class(v.get_den() % p) == 0) return std::nullopt;
  return gp.from_mpz(v.get_num()) / gp.from_mpz(v.get_den());
}

std::optional<UniPoly> reduce_mod_p(const UniPoly& u, const Field& gp) {
  std::vector<Scalar> c;
  for (const auto& a : u.coeffs()) {
    auto r = reduce_mod_p(a, gp);
    if (!r) return std::nullopt;
    c.push_back(*r);
  }
  return UniPoly(gp, c);
}

std::optional<HomogeneousPoly> reduce_mod_p(const HomogeneousPoly& h, const Field& gp) {
  HomogeneousPoly out(gp, h.degree());
  bool ok = true;
  h.for_each_term([&](int i, int j, int k, const Scalar& a) {
    auto r = reduce_mod_p(a, gp);
    if (r)
      out.set(i, j, k, *r);
    else
      ok = false;
  });
  if (!ok) return std::nullopt;
  return out;
}

// n/d with |n|, |d| <= sqrt(m / 2) and n/d = a mod m.
std::optional<mpq_class> rational_reconstruction(const mpz_class& a, const mpz_class& m) {
  mpz_class bound = sqrt(mpz_class(m / 2));
  mpz_class r0 = m, r1 = a, t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (abs(t1) > bound || t1 == 0 || gcd(r1, t1) != 1) return std::nullopt;
  mpq_class out(r1, t1);
  out.canonicalize();
  return out;
}

// Over Q the norm is computed modulo word-size primes and lifted by CRT and
// rational reconstruction until two consecutive lifts agree.
std::optional<HomogeneousPoly> rational_branch_norm(const HomogeneousPoly& fm, const UniPoly& s10, const UniPoly& s11,
                                                    const UniPoly& rest) {
  const Field q = fm.field();
  const int n = rest.degree();
  if (gcd(s11, rest).degree() != 0) return std::nullopt;
  const std::size_t size = HomogeneousPoly(q, n).size();
  std::size_t lead = size;
  mpz_class modulus = 1;
  std::vector<mpz_class> acc(size);
  std::optional<std::vector<mpq_class>> last;
  mpz_class prime = mpz_class(1) << 61;
  for (int iter = 0; iter < 400; ++iter) {
    mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
    const Field gp = Field::prime(prime.get_ui());
    auto fp = reduce_mod_p(fm, gp);
    auto s10p = reduce_mod_p(s10, gp), s11p = reduce_mod_p(s11, gp), restp = reduce_mod_p(rest, gp);
    if (!fp || !s10p || !s11p || !restp || restp->degree() != n) continue;
    auto img = branch_norm(*fp, *s10p, *s11p, *restp);
    if (!img) continue;
    const auto& dense = img->dense();
    std::size_t li = 0;
    while (li < size && dense[li].is_zero()) ++li;
    if (li > lead) continue;
    if (li < lead) {
      lead = li;
      modulus = 1;
      std::fill(acc.begin(), acc.end(), mpz_class(0));
      last.reset();
    }
    mpz_class minv;
    mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), prime.get_mpz_t());
    for (std::size_t k = 0; k < size; ++k) {
      mpz_class b(static_cast<unsigned long>(dense[k].code()));
      mpz_class t = ((b - acc[k]) * minv) % prime;
      if (t < 0) t += prime;
      acc[k] += modulus * t;
    }
    modulus *= prime;
    std::vector<mpq_class> rec;
    for (std::size_t k = 0; k < size; ++k) {
      auto r = rational_reconstruction(acc[k], modulus);
      if (!r) break;
      rec.push_back(*r);
    }
    if (rec.size() != size) continue;
    if (last && *last == rec) {
      HomogeneousPoly out(q, n);
      for (int i = n; i >= 0; --i)
        for (int j = n - i; j >= 0; --j)
          out.set(i, j, n - i - j, Scalar::from_rational(q, rec[HomogeneousPoly::index(n, i, j)]));
      return out;
    }
    last = std::move(rec);
  }
  throw Error(ErrorCode::EliminationDegenerate, "norm form reconstruction did not stabilize");
}

// Remainder of a by the monic b over (k[x]/(g))[y].
YPoly rem_monic(YPoly a, const YPoly& b, const UniPoly& g) {
  const int db = y_degree(b);
  while (!a.empty() && y_degree(a) >= db) {
    const int da = y_degree(a);
    UniPoly lead = a.back();
    for (int j = 0; j <= db; ++j) a[da - db + j] = (a[da - db + j] - lead * b[j]) % g;
    while (!a.empty() && a.back().is_zero()) a.pop_back();
  }
  return a;
}

YPoly mul_mod(const YPoly& a, const YPoly& b, const UniPoly& g) {
  if (a.empty() || b.empty()) return {};
  YPoly r(a.size() + b.size() - 1, UniPoly(g.field()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % g;
  while (!r.empty() && r.back().is_zero()) r.pop_back();
  return r;
}

// True when above every root of the branch modulus the common zeros of f and h
// are among the singular points described by the branch.
bool only_singular_above(const detail::GcdBranch& sing, const YPoly& f, const YPoly& h) {
  for (const auto& br : detail::gcd_over_quotient({f, h}, sing.modulus)) {
    if (y_degree(br.gcd) <= 0) continue;
    YPoly s = reduce_mod(sing.gcd, br.modulus);
    YPoly pw{UniPoly::constant(br.modulus.field().one())};
    for (int i = 0; i < y_degree(br.gcd); ++i) pw = rem_monic(mul_mod(pw, s, br.modulus), br.gcd, br.modulus);
    if (!rem_monic(pw, br.gcd, br.modulus).empty()) return false;
  }
  return true;
}

bool no_common_zero_at_infinity(const HomogeneousPoly& f, const HomogeneousPoly& h) {
  const Field fld = f.field();
  const Point3 e1{fld.one(), fld.zero(), fld.zero()};
  if (f(e1).is_zero() && h(e1).is_zero()) return false;
  auto at_infinity = [&](const HomogeneousPoly& p) {
    std::vector<Scalar> c(static_cast<std::size_t>(p.degree()) + 1, fld.zero());
    p.for_each_term([&](int i, int, int k, const Scalar& v) {
      if (k == 0) c[i] = v;
    });
    return UniPoly(fld, c);
  };
  UniPoly a = at_infinity(f), b = at_infinity(h);
  if (a.is_zero() || b.is_zero()) return false;
  return gcd(a, b).degree() == 0;
}

// One projection of V(F, H) from the point [0, 1, 0] of a sheared chart.
struct Projection {
  ExactMatrix m;
  HomogeneousPoly fm;
  YPoly fy, hy;
  UniPoly r;  // x-coordinates of the relevant intersection points, with multiplicity
};

class FlexSolver {
 public:
  FlexSolver(const PlaneCurve& curve, bool smooth) : curve_(curve), smooth_(smooth) {}

  const Projection* projection(int s) {
    while (static_cast<int>(cache_.size()) <= s) cache_.push_back(build(static_cast<int>(cache_.size())));
    return cache_[s] ? &*cache_[s] : nullptr;
  }

  // Intersection multiplicity at a base-field point, read off a projection in
  // which the point is alone in its fiber.
  std::optional<int> isolated_multiplicity(const ProjPoint& p) {
    for (int s = 0; s < kShears; ++s) {
      const Projection* pr = projection(s);
      if (!pr) continue;
      ProjPoint v = transform_point(inverse(pr->m), p);
      if (v[2].is_zero()) continue;
      const Scalar x0 = v[0] / v[2];
      if (detail::squarefree_part(gcd(at_x(pr->fy, x0), at_x(pr->hy, x0))).degree() != 1) continue;
      return root_multiplicity(pr->r, x0);
    }
    return std::nullopt;
  }

  static constexpr int kShears = 60;

 private:
  const PlaneCurve& curve_;
  bool smooth_;
  std::vector<std::optional<Projection>> cache_;

  static int root_multiplicity(UniPoly r, const Scalar& x0) {
    const UniPoly lin(r.field(), {-x0, r.field().one()});
    int m = 0;
    for (;;) {
      auto [q, rem] = divmod(r, lin);
      if (!rem.is_zero()) return m;
      r = q;
      ++m;
    }
  }

  std::optional<Projection> build(int s) const {
    const HomogeneousPoly& form = curve_.form();
    const Field f = curve_.field();
    const int d = form.degree();
    const bool char2 = f.characteristic() == 2;
    Projection pr;
    pr.m = shear(f, s);
    pr.fm = linear_change(form, pr.m);
    if (pr.fm.coeff(0, d, 0).is_zero()) return std::nullopt;
    HomogeneousPoly hm = char2 ? polar_covariant(pr.fm) : hessian_det(pr.fm);
    pr.fy = dehomogenize(pr.fm);
    pr.hy = dehomogenize(hm);
    if (pr.hy.empty()) return std::nullopt;
    pr.r = resultant_y(pr.fy, pr.hy);
    if (pr.r.is_zero()) return std::nullopt;
    if (smooth_) {
      if (pr.r.degree() != 3 * d * (d - 2)) return std::nullopt;
      return pr;
    }
    if (!no_common_zero_at_infinity(pr.fm, hm)) return std::nullopt;
    auto branches = detail::affine_singular_branches(pr.fm);
    if (!branches) return std::nullopt;
    for (const auto& br : *branches) {
      if (!only_singular_above(br, pr.fy, pr.hy)) return std::nullopt;
      for (;;) {
        UniPoly c = gcd(pr.r, br.modulus);
        if (c.degree() <= 0) break;
        pr.r = pr.r / c;
      }
    }
    return pr;
  }
};

std::optional<InflectionResult> solve_over_base(const PlaneCurve& curve, bool smooth) {
  const Field f = curve.field();
  const int d = curve.degree();
  FlexSolver solver(curve, smooth);
  for (int s = 0; s < FlexSolver::kShears; ++s) {
    const Projection* pr = solver.projection(s);
    if (!pr) continue;
    auto rep = univariate_roots(pr->r);
    UniPoly rest = pr->r.monic();
    // Base-field points with their x-multiplicity and fiber size.
    std::vector<std::tuple<ProjPoint, int, std::size_t>> found;
    bool ok = true;
    for (const auto& [x0, mult] : rep.roots) {
      UniPoly sq = detail::squarefree_part(gcd(at_x(pr->fy, x0), at_x(pr->hy, x0)));
      auto yr = univariate_roots(sq);
      if (!yr.residual_degrees.empty() || yr.roots.empty()) {
        ok = false;
        break;
      }
      for (const auto& [y0, my] : yr.roots) {
        (void)my;
        found.emplace_back(transform_point(pr->m, ProjPoint(x0, y0, f.one())), mult, yr.roots.size());
      }
      for (int i = 0; i < mult; ++i) rest = rest / UniPoly(f, {-x0, f.one()});
    }
    if (!ok) continue;
    HomogeneousPoly residual;
    if (rest.degree() > 0) {
      auto [s10, s11] = first_subresultant(pr->fy, pr->hy);
      auto norm = f.is_rational() ? rational_branch_norm(pr->fm, s10, s11, rest) : branch_norm(pr->fm, s10, s11, rest);
      if (!norm) continue;
      residual = linear_change(*norm, inverse(pr->m));
    }
    InflectionResult out;
    out.lines = LineConfiguration(f, d);
    out.total_multiplicity = pr->r.degree();
    for (const auto& [p, mult, fiber] : found) {
      int m = mult;
      if (fiber > 1) {
        auto im = solver.isolated_multiplicity(p);
        if (!im) return std::nullopt;
        m = *im;
      }
      out.points.emplace_back(p, m);
      out.lines.add(tangent_line(curve, p), m, LineKind::type0);
    }
    if (rest.degree() > 0) {
      std::vector<int> degs;
      for (int deg : univariate_roots(rest).residual_degrees) degs.push_back(deg);
      out.lines.set_residual(residual, degs);
      out.residual_degrees = out.lines.residual_degrees();
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
  }
  return std::nullopt;
}

bool is_prime(int k) {
  if (k < 2) return false;
  for (int i = 2; i * i <= k; ++i)
    if (k % i == 0) return false;
  return true;
}

ProjPoint frobenius(const ProjPoint& p, const mpz_class& q) {
  return ProjPoint(p[0].pow(q), p[1].pow(q), p[2].pow(q));
}

// Small finite fields may have no usable projection center. Solve over an
// extension of prime degree k > 3d(d-2)/2: a flex of degree n over the base is
// rational there only when n is 1 or k, and otherwise keeps degree n.
InflectionResult solve_by_extension(const PlaneCurve& curve, bool smooth) {
  const Field f = curve.field();
  const int d = curve.degree();
  const double bits = std::log2(static_cast<double>(f.order()));
  int k = 3 * d * (d - 2) / 2 + 1;
  while (!is_prime(k) || (bits * k < 10.0)) ++k;
  if (bits * k > 60.0) throw Error(ErrorCode::EliminationDegenerate, "shear list exhausted in the flex computation");
  FieldEmbedding e = FieldEmbedding::extend(f, k);
  auto inner = solve_over_base(PlaneCurve(map_up(curve.form(), e)), smooth);
  if (!inner) throw Error(ErrorCode::EliminationDegenerate, "shear list exhausted in the flex computation");
  InflectionResult out;
  out.lines = LineConfiguration(f, d);
  out.total_multiplicity = inner->total_multiplicity;
  const mpz_class q(static_cast<unsigned long>(f.order()));
  HomogeneousPoly residual = HomogeneousPoly::constant(e.target().one());
  std::vector<int> degs;
  std::vector<ProjPoint> done;
  for (const auto& [p, mult] : inner->points) {
    if (auto down = map_down(p, e)) {
      out.points.emplace_back(*down, mult);
      out.lines.add(tangent_line(curve, *down), mult, LineKind::type0);
      continue;
    }
    if (std::find(done.begin(), done.end(), p) != done.end()) continue;
    int n = 0;
    for (ProjPoint o = p; n == 0 || o != p; o = frobenius(o, q), ++n) {
      done.push_back(o);
      for (int i = 0; i < mult; ++i)
        residual = residual * HomogeneousPoly::linear(tangent_line(PlaneCurve(map_up(curve.form(), e)), o).coords());
    }
    for (int i = 0; i < mult; ++i) degs.push_back(n);
  }
  if (inner->lines.residual_degree() > 0) {
    residual = residual * inner->lines.residual();
    degs.insert(degs.end(), inner->residual_degrees.begin(), inner->residual_degrees.end());
  }
  if (residual.degree() > 0) {
    auto down = map_down(residual.normalized(), e);
    if (!down) throw Error(ErrorCode::EliminationDegenerate, "residual flex lines do not descend");
    out.lines.set_residual(*down, degs);
    out.residual_degrees = out.lines.residual_degrees();
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

InflectionResult flex_core(const PlaneCurve& curve, bool smooth) {
  const HomogeneousPoly& form = curve.form();
  const Field f = curve.field();
  const int d = form.degree();
  if (d < 3) throw Error(ErrorCode::DegreeTooLow, "flexes need degree >= 3");
  const bool char2 = f.characteristic() == 2;
  if (char2 && !smooth) throw Error(ErrorCode::UnsupportedField, "flexes of singular curves in characteristic 2");
  if (smooth && !is_smooth(curve)) throw Error(ErrorCode::NotSmooth, form.to_string());
  if (!char2) {
    HomogeneousPoly h = hessian_det(form);
    if (h.is_zero() || gcd(form, h).degree() > 0)
      throw Error(ErrorCode::HessianIdenticallyZeroOnCurve, form.to_string());
  } else if (polar_covariant(form).is_zero()) {
    throw Error(ErrorCode::HessianIdenticallyZeroOnCurve, form.to_string());
  }
  if (auto out = solve_over_base(curve, smooth)) return *out;
  if (f.is_finite()) return solve_by_extension(curve, smooth);
  throw Error(ErrorCode::EliminationDegenerate, "shear list exhausted in the flex computation");
}

}  // namespace

InflectionResult inflection_scheme(const PlaneCurve& c) { return flex_core(c, true); }

InflectionResult smooth_point_flexes(const PlaneCurve& c) { return flex_core(c, false); }

}  // namespace flex
