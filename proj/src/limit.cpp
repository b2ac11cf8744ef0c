#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "curves_internal.hpp"
#include "flexlines/quartic_lab.hpp"

namespace flex {

namespace {

bool vanishes_on(const HomogeneousPoly& f, const ProjLine& l) {
  auto [a, b] = detail::line_basis(l);
  return detail::restrict_to_line(f, a.coords(), b.coords()).is_zero();
}

// Generic slicing lines: images of z = 0 under the shear list, skipping index 0.
ProjLine slice(const Field& f, int k) {
  return transform_point(shear(f, k + 1).transpose(), ProjPoint(f.zero(), f.zero(), f.one()));
}

// Base-field lines found by joining zeros of F on two slices; returns true if any was removed.
bool peel_lines(HomogeneousPoly& rest, LineConfiguration& cfg, const ProjLine& s1, const ProjLine& s2) {
  if (rest.degree() == 0 || vanishes_on(rest, s1) || vanishes_on(rest, s2) || s1 == s2) return false;
  bool found = false;
  const auto p1 = detail::points_on_line(rest, s1);
  const auto p2 = detail::points_on_line(rest, s2);
  for (const auto& q : p1)
    for (const auto& r : p2) {
      if (q == r || rest.degree() == 0) continue;
      const ProjLine l = line_through(q, r);
      if (!vanishes_on(rest, l)) continue;
      const HomogeneousPoly lf = HomogeneousPoly::linear(l.coords());
      int mult = 0;
      while (rest.degree() > 0) {
        auto quotient = divide_exact(rest, lf);
        if (!quotient) break;
        rest = *quotient;
        ++mult;
      }
      cfg.add(l, mult, LineKind::unknown);
      found = true;
    }
  return found;
}

std::optional<std::pair<UniPoly, UniPoly>> rational_reconstruction(const UniPoly& a, const UniPoly& m) {
  const Field f = m.field();
  const int bound = m.degree() / 2;
  UniPoly r0 = m, r1 = a, s0(f), s1 = UniPoly::constant(f.one());
  while (!r1.is_zero() && r1.degree() >= bound) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UniPoly s = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (s1.is_zero() || s1.degree() > bound) return std::nullopt;
  return std::make_pair(r1, s1);
}

int valuation(const UniPoly& p) {
  int v = 0;
  while (p.coeff(v).is_zero()) ++v;
  return v;
}

// Product of all inflection lines of a smooth member as one form.
std::optional<HomogeneousPoly> flex_product(const HomogeneousPoly& member) {
  if (member.is_zero()) return std::nullopt;
  try {
    InflectionResult r = inflection_scheme(PlaneCurve(member));
    HomogeneousPoly out = HomogeneousPoly::constant(member.field().one());
    for (const auto& e : r.lines.entries()) out = out * HomogeneousPoly::linear(e.line.coords()).pow(e.multiplicity);
    if (r.lines.residual_degree() > 0) out = out * r.lines.residual();
    return out;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotSmooth) return std::nullopt;
    throw;
  }
}


// Frobenius conjugate of a point or line over an extension of GF(q).
ProjPoint frobenius(const ProjPoint& x, std::uint64_t q) {
  const mpz_class e(static_cast<unsigned long>(q));
  return ProjPoint(x[0].pow(e), x[1].pow(e), x[2].pow(e));
}

// Lines of a product of conjugate lines over the target of e, with
// multiplicities. A zero of multiplicity m of the restriction to a base-field
// slice, lying on a single line L of multiplicity m, recovers L as the gradient
// of the (m-1)-th Hasse derivative along the slice; the conjugates of L follow
// by Frobenius. Zeros on two lines are left for later slices. Empty if lines
// remain or a multiplicity is divisible by the characteristic.
std::optional<std::vector<std::pair<ProjLine, int>>> split_by_orbits(const HomogeneousPoly& form,
                                                                     const FieldEmbedding& e) {
  const Field& f = form.field();
  const Field& big = e.target();
  const mpz_class q(static_cast<unsigned long>(f.order()));
  HomogeneousPoly rest = map_up(form, e), base_rest = form;
  std::vector<std::pair<ProjLine, int>> found;
  for (int k = 0; k < 32 && rest.degree() > 0; ++k) {
    const ProjLine s = slice(f, k);
    if (vanishes_on(base_rest, s)) continue;
    auto [a, b] = detail::line_basis(s);
    const UniPoly u = detail::restrict_to_line(base_rest, a.coords(), b.coords());
    if (u.degree() != base_rest.degree()) continue;
    const Point3 pa = map_up(a, e).coords(), pb = map_up(b, e).coords();
    const std::array<HomogeneousPoly, 3> grad = {partial_derivative(rest, 0), partial_derivative(rest, 1),
                                                 partial_derivative(rest, 2)};
    // Divides l^mult out of rest; false if it does not divide.
    const auto remove = [&](const ProjLine& l, int mult) {
      const HomogeneousPoly lf = HomogeneousPoly::linear(l.coords());
      for (int i = 0; i < mult; ++i) {
        auto quotient = divide_exact(rest, lf);
        if (!quotient) return false;
        rest = *quotient;
      }
      return true;
    };
    for (const auto& [part, mult] : squarefree_factorization(u)) {
      if (static_cast<std::uint64_t>(mult) % f.characteristic() == 0) continue;
      UniPoly pending = map_up(part, e).monic();
      while (pending.degree() > 0) {
        const Scalar t = any_root(pending);
        const Point3 pt{pa[0] + t * pb[0], pa[1] + t * pb[1], pa[2] + t * pb[2]};
        Point3 g;
        for (int i = 0; i < 3; ++i)
          g[i] = mult == 1 ? grad[i](pt) : detail::restrict_to_line(grad[i], pt, pb).coeff(mult - 1);
        if (g[0].is_zero() && g[1].is_zero() && g[2].is_zero()) break;
        ProjLine l(g);
        if (!remove(l, mult)) break;
        Scalar r = t;
        for (;;) {
          found.emplace_back(l, mult);
          pending = pending / UniPoly(big, {-r, big.one()});
          r = r.pow(q);
          l = frobenius(l, f.order());
          if (r == t) break;
          if (!remove(l, mult)) return std::nullopt;
        }
      }
    }
    auto down = map_down(rest.normalized(), e);
    if (!down) return std::nullopt;
    base_rest = *down;
  }
  if (rest.degree() > 0) return std::nullopt;
  return found;
}

}  // namespace

LineConfiguration split_into_lines(const HomogeneousPoly& product, int ambient_degree) {
  const Field f = product.field();
  LineConfiguration cfg(f, ambient_degree);
  HomogeneousPoly rest = product;
  int k = 0;
  for (int round = 0; round < 12 && rest.degree() > 0; ++round, k += 2) {
    peel_lines(rest, cfg, slice(f, k), slice(f, k + 1));
    // A base-field line meets every base-field slice in a base-field point.
    const ProjLine probe = slice(f, k + 2);
    if (!vanishes_on(rest, probe) && detail::points_on_line(rest, probe).empty()) break;
  }
  if (rest.degree() == 0) return cfg;
  auto [a, b] = detail::line_basis(slice(f, k + 3));
  auto rep = univariate_roots(detail::restrict_to_line(rest, a.coords(), b.coords()));
  if (!rep.roots.empty()) throw Error(ErrorCode::ResidualNonLinearFactors, rest.to_string());
  // Conjugate lines split over the extension of degree lcm of the orbit sizes.
  int l = 1;
  for (int d : rep.residual_degrees) l = std::lcm(l, d);
  if (f.is_finite() && l * std::log2(static_cast<double>(f.order())) <= 60.0) {
    FieldEmbedding e = FieldEmbedding::extend(f, l);
    LineConfiguration over = split_into_lines(map_up(rest, e), ambient_degree);
    if (over.residual_degree() > 0) throw Error(ErrorCode::ResidualNonLinearFactors, rest.to_string());
  }
  cfg.set_residual(rest, rep.residual_degrees);
  return cfg;
}

LineConfiguration split_over_extension(const LineConfiguration& config) {
  if (config.residual_degree() == 0) return config;
  int l = 1;
  for (int d : config.residual_degrees()) l = std::lcm(l, d);
  const Field f = config.field();
  if (!f.is_finite() || l * std::log2(static_cast<double>(f.order())) > 60.0) return config;
  FieldEmbedding e = FieldEmbedding::extend(f, l);
  LineConfiguration out(e.target(), config.ambient_degree());
  for (const auto& entry : config.entries()) out.add(map_up(entry.line, e), entry.multiplicity, entry.kind);
  if (auto lines = split_by_orbits(config.residual(), e)) {
    for (const auto& [line, mult] : *lines) out.add(line, mult, LineKind::unknown);
    return out;
  }
  const LineConfiguration rest = split_into_lines(map_up(config.residual(), e), config.ambient_degree());
  for (const auto& entry : rest.entries()) out.add(entry.line, entry.multiplicity, entry.kind);
  return out;
}

LineConfiguration limit_configuration(const SmoothingPencil& pencil) {
  const Field f = pencil.central().field();
  if (!f.is_finite()) throw Error(ErrorCode::UnsupportedField, "the limit oracle needs a finite field");
  FieldEmbedding e = FieldEmbedding::with_min_size(f, 2048);
  const Field& big = e.target();
  const HomogeneousPoly c = map_up(pencil.central().form(), e), d = map_up(pencil.direction(), e);
  const int degree = 3 * 4 * 2;
  const std::size_t terms = HomogeneousPoly(big, degree).size();

  std::vector<Scalar> ts;
  std::vector<std::vector<Scalar>> values;  // coefficients normalized at a fixed term
  std::optional<std::size_t> pivot;
  std::uint64_t next = 1;
  const auto sample = [&]() {
    for (;; ++next) {
      if (big.is_finite() && next >= big.order()) throw Error(ErrorCode::EliminationDegenerate, "ran out of samples");
      const Scalar t = big.element(next);
      auto prod = flex_product(c + d * t);
      if (!prod) continue;
      const auto& dense = prod->dense();
      if (!pivot) {
        for (std::size_t i = 0; i < dense.size(); ++i)
          if (!dense[i].is_zero()) {
            pivot = i;
            break;
          }
      }
      if (dense[*pivot].is_zero()) continue;
      const Scalar inv = dense[*pivot].inverse();
      std::vector<Scalar> v;
      for (const auto& x : dense) v.push_back(x * inv);
      ts.push_back(t);
      values.push_back(std::move(v));
      ++next;
      return;
    }
  };

  constexpr std::size_t kChecks = 6;
  for (std::size_t n = 32; n <= 1024; n *= 2) {
    while (ts.size() < n + kChecks) sample();
    const std::vector<Scalar> xs(ts.begin(), ts.begin() + static_cast<long>(n));
    UniPoly modulus = UniPoly::constant(big.one());
    for (const auto& x : xs) modulus = modulus * UniPoly(big, {-x, big.one()});
    std::vector<std::pair<UniPoly, UniPoly>> fractions;
    bool ok = true;
    for (std::size_t m = 0; m < terms && ok; ++m) {
      std::vector<Scalar> ys;
      for (std::size_t i = 0; i < n; ++i) ys.push_back(values[i][m]);
      auto frac = rational_reconstruction(interpolate(xs, ys), modulus);
      if (!frac) {
        ok = false;
        break;
      }
      for (std::size_t i = n; i < n + kChecks && ok; ++i) {
        const Scalar den = frac->second(ts[i]);
        ok = !den.is_zero() && frac->first(ts[i]) == values[i][m] * den;
      }
      fractions.push_back(std::move(*frac));
    }
    if (!ok) continue;
    // Common denominator, then the lowest order in t of the coefficient vector.
    UniPoly lcm_den = UniPoly::constant(big.one());
    for (const auto& [num, den] : fractions) lcm_den = lcm_den * (den / gcd(lcm_den, den));
    std::vector<UniPoly> polys;
    int order = -1;
    for (const auto& [num, den] : fractions) {
      polys.push_back(num * (lcm_den / den));
      if (!polys.back().is_zero()) {
        const int v = valuation(polys.back());
        order = order < 0 ? v : std::min(order, v);
      }
    }
    std::vector<Scalar> coeffs;
    for (const auto& p : polys) coeffs.push_back(p.coeff(order));
    HomogeneousPoly out(big, degree);
    for (int i = degree, q = 0; i >= 0; --i)
      for (int j = degree - i; j >= 0; --j, ++q) out.set(i, j, degree - i - j, coeffs[static_cast<std::size_t>(q)]);
    auto down = map_down(out.normalized(), e);
    if (!down) throw Error(ErrorCode::EliminationDegenerate, "limit form does not descend");
    return split_into_lines(*down, 4);
  }
  throw Error(ErrorCode::EliminationDegenerate, "limit reconstruction did not stabilize");
}

}  // namespace flex
