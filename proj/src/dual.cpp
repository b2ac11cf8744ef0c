#include <cmath>

#include "curves_internal.hpp"

namespace flex {

namespace {

// Remainder of g modulo f as a polynomial in y; f has a nonzero y^d coefficient.
HomogeneousPoly reduce_in_y(HomogeneousPoly g, const HomogeneousPoly& f) {
  const int d = f.degree(), n = g.degree();
  if (n < d) return g;
  const Scalar inv = f.coeff(0, d, 0).inverse();
  std::vector<std::tuple<int, int, Scalar>> tail;  // terms of f other than y^d
  f.for_each_term([&](int i, int j, int k, const Scalar& c) {
    (void)k;
    if (j != d) tail.emplace_back(i, j, c * inv);
  });
  for (int j = n; j >= d; --j)
    for (int i = 0; i <= n - j; ++i) {
      const int k = n - j - i;
      Scalar c = g.coeff(i, j, k);
      if (c.is_zero()) continue;
      g.set(i, j, k, g.field().zero());
      // y^j = y^(j-d) * y^d and y^d = -(tail)
      for (const auto& [ti, tj, tc] : tail) g.add_to(i + ti, j - d + tj, k + (f.degree() - ti - tj), -(c * tc));
    }
  return g;
}

}  // namespace

PlaneCurve dual_curve(const PlaneCurve& c, bool reduced) {
  const HomogeneousPoly& form = c.form();
  const Field f = c.field();
  const int d = form.degree();
  if (d < 2) throw Error(ErrorCode::HasLineComponent, "the curve is a line");
  if (!gcd_and_squarefree(form).is_squarefree) throw Error(ErrorCode::NonReducedCurve, form.to_string());
  if (!linear_components(c).empty()) throw Error(ErrorCode::HasLineComponent, form.to_string());
  for (int s = 0; s < 20; ++s) {
    ExactMatrix m = shear(f, s);
    HomogeneousPoly fm = linear_change(form, m);
    if (fm.coeff(0, d, 0).is_zero()) continue;
    HomogeneousPoly grad[3] = {fm.partial(0), fm.partial(1), fm.partial(2)};
    std::vector<HomogeneousPoly> pw[3];
    for (int a = 0; a < 3; ++a) pw[a].push_back(HomogeneousPoly::constant(f.one()));
    for (int n = 1; n <= d * (d - 1); ++n) {
      for (int a = 0; a < 3; ++a) pw[a].push_back(reduce_in_y(pw[a].back() * grad[a], fm));
      // Columns: reductions of the monomials of degree n in the gradient.
      std::vector<std::array<int, 3>> monos;
      std::vector<HomogeneousPoly> cols;
      for (int i = n; i >= 0; --i)
        for (int j = n - i; j >= 0; --j) {
          const int k = n - i - j;
          monos.push_back({i, j, k});
          cols.push_back(reduce_in_y(reduce_in_y(pw[0][i] * pw[1][j], fm) * pw[2][k], fm));
        }
      const int target = n * (d - 1);
      std::vector<std::pair<int, int>> rows;  // (i, j) with y-degree j < d
      for (int i = target; i >= 0; --i)
        for (int j = std::min(d - 1, target - i); j >= 0; --j) rows.emplace_back(i, j);
      ExactMatrix sys(f, rows.size(), cols.size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t q = 0; q < cols.size(); ++q)
          sys(r, q) = cols[q].coeff(rows[r].first, rows[r].second, target - rows[r].first - rows[r].second);
      auto ns = nullspace(sys);
      if (ns.empty()) continue;
      HomogeneousPoly dm(f, n);
      for (std::size_t q = 0; q < monos.size(); ++q) dm.set(monos[q][0], monos[q][1], monos[q][2], ns[0][q]);
      HomogeneousPoly dual = linear_change(dm, m.transpose());
      if (!reduced && is_smooth(c) && (d * (d - 1)) % n == 0) dual = dual.pow(d * (d - 1) / n);
      return PlaneCurve(dual);
    }
    break;
  }
  if (f.is_finite() && f.order() < 64) {
    // No usable projection over a tiny field: the dual is defined over the
    // base field, so compute it over an extension and descend.
    int k = 2;
    while (static_cast<double>(k) * std::log2(static_cast<double>(f.order())) < 6.0) ++k;
    FieldEmbedding e = FieldEmbedding::extend(f, k);
    PlaneCurve up = dual_curve(PlaneCurve(map_up(form, e)), reduced);
    if (auto down = map_down(up.form().normalized(), e)) return PlaneCurve(*down);
  }
  throw Error(ErrorCode::EliminationDegenerate, "no dual form found");
}

}  // namespace flex
