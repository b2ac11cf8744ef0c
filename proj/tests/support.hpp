#ifndef FLEXLINES_TESTS_SUPPORT_HPP
#define FLEXLINES_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "flexlines/curves.hpp"

namespace flex::testing {

inline PlaneCurve C(const Field& f, const char* s) { return PlaneCurve::parse(f, s); }
inline ProjPoint pt(const Field& f, long long a, long long b, long long c) {
  return ProjPoint(f.from_int(a), f.from_int(b), f.from_int(c));
}

inline ExactMatrix random_invertible(const Field& f, std::mt19937_64& rng) {
  for (;;) {
    ExactMatrix m(f, 3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = f.random(rng);
    if (!determinant(m).is_zero()) return m;
  }
}

inline HomogeneousPoly random_form(const Field& f, int d, std::mt19937_64& rng) {
  HomogeneousPoly p(f, d);
  for (int i = d; i >= 0; --i)
    for (int j = d - i; j >= 0; --j) p.set(i, j, d - i - j, f.random(rng));
  return p;
}

inline PlaneCurve random_smooth(const Field& f, int d, std::mt19937_64& rng) {
  for (;;) {
    HomogeneousPoly p = random_form(f, d, rng);
    if (p.is_zero()) continue;
    PlaneCurve c(p);
    if (is_smooth(c)) return c;
  }
}

// All points of P^2 over a finite field.
inline std::vector<ProjPoint> all_points(const Field& f) {
  std::vector<ProjPoint> out;
  const std::uint64_t q = f.order();
  for (std::uint64_t a = 0; a < q; ++a)
    for (std::uint64_t b = 0; b < q; ++b) out.emplace_back(f.element(a), f.element(b), f.one());
  for (std::uint64_t a = 0; a < q; ++a) out.emplace_back(f.element(a), f.one(), f.zero());
  out.emplace_back(f.one(), f.zero(), f.zero());
  return out;
}

// x^3 + y^3 + z^3 + t x y z.
inline HomogeneousPoly hesse_form(const Scalar& t) {
  const Field f = t.field();
  HomogeneousPoly form(f, 3);
  form.set(3, 0, 0, f.one());
  form.set(0, 3, 0, f.one());
  form.set(0, 0, 3, f.one());
  form.set(1, 1, 1, t);
  return form;
}

// Inflection lines of a smooth cubic as a nine-point set of the dual plane.
inline std::vector<ProjPoint> flex_lines(const PlaneCurve& c) {
  const InflectionResult flexes = inflection_scheme(c);
  std::vector<ProjPoint> out;
  for (const auto& e : flexes.lines.entries()) out.push_back(e.line);
  return out;
}

// Image of a line under F -> F(M v): l -> M^T l.
inline ProjLine pull_line(const ExactMatrix& m, const ProjLine& l) {
  return transform_point(m.transpose(), l);
}

}  // namespace flex::testing

#endif
