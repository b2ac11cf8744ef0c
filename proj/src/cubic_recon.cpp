#include "flexlines/cubic_recon.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "curves_internal.hpp"

namespace flex {

namespace {

std::vector<std::array<int, 3>> monomials(int d) {
  std::vector<std::array<int, 3>> out;
  for (int i = d; i >= 0; --i)
    for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
  return out;
}

Scalar monomial_at(const std::array<int, 3>& e, const Point3& p) {
  Scalar v = p[0].field().one();
  for (int a = 0; a < 3; ++a)
    if (e[a] > 0) v *= p[a].pow(e[a]);
  return v;
}

HomogeneousPoly form_from(const Field& f, int d, const std::vector<Scalar>& coeffs) {
  HomogeneousPoly out(f, d);
  const auto monos = monomials(d);
  for (std::size_t q = 0; q < monos.size(); ++q) out.set(monos[q][0], monos[q][1], monos[q][2], coeffs[q]);
  return out;
}

// Rows: the value and the three partials of a degree-d form at each point.
ExactMatrix singularity_system(const NinePointInput& input, int d) {
  const Field f = input.field();
  const auto monos = monomials(d);
  ExactMatrix sys(f, 4 * input.points().size(), monos.size());
  std::size_t r = 0;
  for (const ProjPoint& p : input.points()) {
    for (std::size_t q = 0; q < monos.size(); ++q) {
      sys(r, q) = monomial_at(monos[q], p.coords());
      for (int a = 0; a < 3; ++a) {
        if (monos[q][a] == 0) continue;
        auto e = monos[q];
        --e[a];
        sys(r + 1 + a, q) = f.from_int(monos[q][a]) * monomial_at(e, p.coords());
      }
    }
    r += 4;
  }
  return sys;
}

// Members of the pencil where the tangent cone at `at` degenerates to a double
// line, as (lambda, mu) pairs; nullopt when the condition does not split.
std::optional<std::vector<std::pair<Scalar, Scalar>>> cusp_parameters(const SexticPencil& pencil, const ProjPoint& at,
                                                                      UniPoly& condition) {
  const Field f = at.field();
  const ExactMatrix m = chart_at(at);
  std::array<Scalar, 3> q[2];
  const HomogeneousPoly g[2] = {linear_change(pencil.first, m), linear_change(pencil.second, m)};
  for (int s = 0; s < 2; ++s) q[s] = {g[s].coeff(2, 0, 4), g[s].coeff(1, 1, 4), g[s].coeff(0, 2, 4)};
  const Scalar four = f.from_int(4);
  // b^2 - 4ac along lambda F0 + mu F1, as a binary quadratic.
  const Scalar c2 = q[0][1] * q[0][1] - four * q[0][0] * q[0][2];
  const Scalar c1 = f.from_int(2) * q[0][1] * q[1][1] - four * (q[0][0] * q[1][2] + q[1][0] * q[0][2]);
  const Scalar c0 = q[1][1] * q[1][1] - four * q[1][0] * q[1][2];
  if (c2.is_zero() && c1.is_zero() && c0.is_zero())
    throw Error(ErrorCode::CuspVerificationFailed, "every member has a degenerate tangent cone");
  condition = UniPoly(f, {c0, c1, c2});  // in lambda with mu = 1
  std::vector<std::pair<Scalar, Scalar>> out;
  if (c2.is_zero()) out.emplace_back(f.one(), f.zero());
  auto rep = univariate_roots(condition);
  if (std::accumulate(rep.residual_degrees.begin(), rep.residual_degrees.end(), 0) > 0) return std::nullopt;
  for (const auto& [root, mult] : rep.roots) {
    (void)mult;
    out.emplace_back(root, f.one());
  }
  return out;
}

bool all_cusps(const PlaneCurve& c, const NinePointInput& input) {
  SingularLocus locus = singular_points(c);
  if (locus.residual_points != 0 || locus.points.size() != input.points().size()) return false;
  for (const auto& info : locus.points) {
    if (info.kind != SingularityKind::cusp) return false;
    if (std::find(input.points().begin(), input.points().end(), info.point) == input.points().end()) return false;
  }
  return true;
}

// A cubic with a flex at each point p_i with tangent line l_i.
HomogeneousPoly cubic_from_flexes(const std::vector<std::pair<ProjPoint, ProjLine>>& flexes) {
  const Field f = flexes.front().first.field();
  const auto monos = monomials(3);
  ExactMatrix sys(f, 3 * flexes.size(), monos.size());
  for (std::size_t i = 0; i < flexes.size(); ++i) {
    const auto& [p, l] = flexes[i];
    auto [q1, q2] = detail::line_basis(l);
    const ProjPoint& u = q1 != p ? q1 : q2;
    for (std::size_t q = 0; q < monos.size(); ++q) {
      UniPoly r = detail::restrict_to_line(HomogeneousPoly::monomial(f.one(), monos[q][0], monos[q][1], monos[q][2]),
                                           p.coords(), u.coords());
      for (int e = 0; e < 3; ++e) sys(3 * i + e, q) = r.coeff(e);
    }
  }
  auto ns = nullspace(sys);
  if (ns.size() != 1)
    throw Error(ErrorCode::UnexpectedDimension, std::to_string(ns.size()) + " cubics with the given flexes");
  return form_from(f, 3, ns[0]);
}

}  // namespace

NinePointInput::NinePointInput(std::vector<ProjPoint> points) : points_(std::move(points)) {
  if (points_.size() != 9)
    throw Error(ErrorCode::InvalidInput, "expected 9 points, got " + std::to_string(points_.size()));
  for (const auto& p : points_)
    if (p.field() != points_.front().field()) throw Error(ErrorCode::DescriptorMismatch, p.to_string());
  std::sort(points_.begin(), points_.end());
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
    throw Error(ErrorCode::InvalidInput, "points are not distinct");
}

NinePointInput NinePointInput::from_lines(const LineConfiguration& lines) {
  if (lines.residual_degree() != 0) throw Error(ErrorCode::InvalidInput, "lines not over the base field");
  std::vector<ProjPoint> pts;
  for (const auto& e : lines.entries()) pts.push_back(e.line);
  return NinePointInput(std::move(pts));
}

SexticPencil sextics_singular_at(const NinePointInput& input) {
  if (input.field().characteristic() == 2)
    throw Error(ErrorCode::UnsupportedField, "sextic pencil needs characteristic other than 2");
  auto ns = nullspace(singularity_system(input, 6));
  if (ns.size() != 2) throw Error(ErrorCode::UnexpectedDimension, std::to_string(ns.size()));
  return {form_from(input.field(), 6, ns[0]), form_from(input.field(), 6, ns[1])};
}

PlaneCurve cusp_member(const SexticPencil& pencil, const ProjPoint& at, const NinePointInput& input,
                       bool allow_extension) {
  const Field f = input.field();
  const auto p = f.characteristic();
  if (p == 2 || p == 3) throw Error(ErrorCode::UnsupportedField, "cusp condition needs characteristic prime to 6");
  UniPoly condition;
  auto params = cusp_parameters(pencil, at, condition);
  if (!params) {
    if (!allow_extension || !f.is_finite())
      throw Error(ErrorCode::DiscriminantNotSplit, condition.coeff(2).to_string() + "*l^2 + " +
                                                       condition.coeff(1).to_string() + "*l*m + " +
                                                       condition.coeff(0).to_string() + "*m^2");
    FieldEmbedding e = FieldEmbedding::extend(f, 2);
    std::vector<ProjPoint> up;
    for (const auto& q : input.points()) up.push_back(map_up(q, e));
    PlaneCurve over = cusp_member({map_up(pencil.first, e), map_up(pencil.second, e)}, map_up(at, e),
                                  NinePointInput(std::move(up)), false);
    auto down = map_down(over.form(), e);
    if (!down) throw Error(ErrorCode::CuspVerificationFailed, "cuspidal member is not defined over the base field");
    return PlaneCurve(*down);
  }
  std::vector<PlaneCurve> reduced;
  for (const auto& [l, m] : *params) {
    HomogeneousPoly member = pencil.first * l + pencil.second * m;
    if (member.is_zero()) continue;
    if (gcd_and_squarefree(member).is_squarefree) reduced.emplace_back(member);
  }
  if (reduced.empty()) throw Error(ErrorCode::BothMembersNonReduced, at.to_string());
  for (const auto& c : reduced)
    if (all_cusps(c, input)) return c;
  throw Error(ErrorCode::CuspVerificationFailed, reduced.front().to_string());
}

std::vector<HomogeneousPoly> cubics_through(const NinePointInput& input) {
  const auto monos = monomials(3);
  ExactMatrix sys(input.field(), input.points().size(), monos.size());
  for (std::size_t r = 0; r < input.points().size(); ++r)
    for (std::size_t q = 0; q < monos.size(); ++q) sys(r, q) = monomial_at(monos[q], input.points()[r].coords());
  auto ns = nullspace(sys);
  if (ns.empty() || ns.size() > 2) throw Error(ErrorCode::UnexpectedDimension, std::to_string(ns.size()));
  std::vector<HomogeneousPoly> out;
  for (const auto& v : ns) out.push_back(form_from(input.field(), 3, v));
  return out;
}

Reconstruction reconstruct(const NinePointInput& input, bool allow_extension) {
  const Field f = input.field();
  if (f.characteristic() == 3)
    throw Error(ErrorCode::CharacteristicThree,
                "in characteristic 3 the inflection lines do not determine the cubic (x = 0, y = 0, z = 0 are the "
                "inflection lines of every smooth Hesse member)");
  Reconstruction out;
  if (f.characteristic() != 2) {
    SexticPencil pencil = sextics_singular_at(input);
    out.dual = cusp_member(pencil, input.points().front(), input, allow_extension);
    out.cubic = dual_curve(out.dual);
  } else {
    std::vector<HomogeneousPoly> basis = cubics_through(input);
    out.cubics_dimension = static_cast<int>(basis.size());
    HomogeneousPoly dual = basis.front();
    if (basis.size() == 2) {
      // The supersingular member: the Hasse invariant is linear along the pencil.
      const Scalar h0 = hasse_invariant(basis[0]), h1 = hasse_invariant(basis[1]);
      if (h0.is_zero() && h1.is_zero())
        throw Error(ErrorCode::InvalidInput, "every cubic through the points is supersingular");
      dual = basis[0] * h1 - basis[1] * h0;
    }
    out.dual = PlaneCurve(dual);
    // The tangent line of the dual cubic at each inflection line is its flex point.
    std::vector<std::pair<ProjPoint, ProjLine>> flexes;
    for (const ProjPoint& l : input.points()) flexes.emplace_back(tangent_line(out.dual, l), l);
    out.cubic = PlaneCurve(cubic_from_flexes(flexes));
  }
  if (out.cubic.degree() != 3 || !is_smooth(out.cubic))
    throw Error(ErrorCode::RoundTripMismatch, "recovered curve is not a smooth cubic: " + out.cubic.to_string());
  out.lines = inflection_scheme(out.cubic).lines;
  LineConfiguration expected(f, 3);
  for (const ProjPoint& l : input.points()) expected.add(l, 1, LineKind::type0);
  if (!out.lines.same_lines(expected))
    throw Error(ErrorCode::RoundTripMismatch, out.cubic.to_string() + " has inflection lines " + out.lines.to_string());
  return out;
}

PlaneCurve reconstruct_cubic(const NinePointInput& input, bool allow_extension) {
  return reconstruct(input, allow_extension).cubic;
}

}  // namespace flex
