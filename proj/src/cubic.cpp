#include <algorithm>

#include "curves_internal.hpp"

namespace flex {

namespace {

// j of a smooth cubic with a base-field flex p.
Scalar j_from_flex(const HomogeneousPoly& form, const ProjPoint& p) {
  const Field f = form.field();
  const ProjLine t = tangent_line(PlaneCurve(form), p);
  auto [q1, q2] = detail::line_basis(t);
  const ProjPoint on_t = q1 != p ? q1 : q2;
  int off = 0;
  while (t[off].is_zero()) ++off;
  // Columns: a second point on the tangent, the flex, a point off the tangent.
  ExactMatrix m(f, 3, 3);
  for (int i = 0; i < 3; ++i) {
    m(i, 0) = on_t[i];
    m(i, 1) = p[i];
  }
  m(off, 2) = f.one();
  // c x^3 + z (al y^2 + be x y + ga y z + de x^2 + ep x z + ze z^2)
  HomogeneousPoly w = linear_change(form, m);
  const Scalar c = w.coeff(3, 0, 0), al = w.coeff(0, 2, 1), be = w.coeff(1, 1, 1), ga = w.coeff(0, 1, 2);
  const Scalar de = w.coeff(2, 0, 1), ep = w.coeff(1, 0, 2), ze = w.coeff(0, 0, 3);
  if (c.is_zero() || al.is_zero()) throw Error(ErrorCode::NotSmoothCubic, form.to_string());
  // Rescale to y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
  const Scalar a1 = be / al, a3 = -ga * c / (al * al);
  const Scalar a2 = -de / al, a4 = ep * c / (al * al), a6 = -ze * c * c / (al * al * al);
  const Scalar two = f.from_int(2), four = f.from_int(4);
  const Scalar b2 = a1 * a1 + four * a2, b4 = a1 * a3 + two * a4, b6 = a3 * a3 + four * a6;
  const Scalar b8 = a1 * a1 * a6 + four * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  const Scalar c4 = b2 * b2 - f.from_int(24) * b4;
  const Scalar disc =
      -b2 * b2 * b8 - f.from_int(8) * b4 * b4 * b4 - f.from_int(27) * b6 * b6 + f.from_int(9) * b2 * b4 * b6;
  if (disc.is_zero()) throw Error(ErrorCode::NotSmoothCubic, form.to_string());
  return c4 * c4 * c4 / disc;
}

}  // namespace

Scalar j_invariant(const PlaneCurve& c) {
  const Field f = c.field();
  if (c.degree() != 3 || !is_smooth(c)) throw Error(ErrorCode::NotSmoothCubic, c.to_string());
  if (f.characteristic() == 3) throw Error(ErrorCode::CharacteristicThree, c.to_string());
  InflectionResult flexes = inflection_scheme(c);
  if (!flexes.points.empty()) return j_from_flex(c.form(), flexes.points.front().first);
  if (f.is_rational()) throw Error(ErrorCode::NoRationalFlex, c.to_string());
  int b = flexes.residual_degrees.front();
  for (int deg : flexes.residual_degrees) b = std::min(b, deg);
  FieldEmbedding e = FieldEmbedding::extend(f, b);
  HomogeneousPoly up = map_up(c.form(), e);
  InflectionResult over = inflection_scheme(PlaneCurve(up));
  if (over.points.empty()) throw Error(ErrorCode::NoRationalFlex, c.to_string());
  return e.down(j_from_flex(up, over.points.front().first));
}

Scalar hasse_invariant(const HomogeneousPoly& cubic) {
  const Field f = cubic.field();
  if (f.is_rational()) throw Error(ErrorCode::UnsupportedField, "Hasse invariant needs a finite field");
  if (cubic.degree() != 3) throw Error(ErrorCode::DegreeMismatch, cubic.to_string());
  const int e = static_cast<int>(f.characteristic()) - 1;
  return cubic.pow(e).coeff(e, e, e);
}

HesseMember hesse_member(const Scalar& lambda) {
  const Field f = lambda.field();
  if (f.characteristic() == 3) throw Error(ErrorCode::NoCubeRootOfUnity, f.spec());
  auto rep = univariate_roots({f.one(), f.one(), f.one()});
  if (rep.roots.empty()) throw Error(ErrorCode::NoCubeRootOfUnity, f.spec());
  if (lambda.pow(3).is_one()) throw Error(ErrorCode::SingularMember, lambda.to_string());
  const Scalar omega = rep.roots.front().first;
  HomogeneousPoly form(f, 3);
  form.set(3, 0, 0, f.one());
  form.set(0, 3, 0, f.one());
  form.set(0, 0, 3, f.one());
  form.set(1, 1, 1, -f.from_int(3) * lambda);
  HesseMember out{PlaneCurve(form), LineConfiguration(f, 3)};
  Scalar w = f.one();
  for (int i = 0; i < 3; ++i, w *= omega) {
    const Scalar lw2 = lambda * w * w;
    out.lines.add(ProjLine(f.one(), w, lw2), 1, LineKind::type0);
    out.lines.add(ProjLine(f.one(), lw2, w), 1, LineKind::type0);
    out.lines.add(ProjLine(lw2, f.one(), w), 1, LineKind::type0);
  }
  return out;
}

}  // namespace flex
