#include "flexlines/quartic_lab.hpp"

#include <algorithm>

#include "curves_internal.hpp"

namespace flex {

namespace {

int delta_invariant(SingularityKind k) { return k == SingularityKind::tacnode ? 2 : 1; }

bool on_line(const ProjLine& l, const ProjPoint& p) { return incidence(l, p).is_zero(); }

// Conics through the intersection points of two conic components: passing
// through every singular point, tangent to the cone line at a tacnode.
std::optional<std::pair<HomogeneousPoly, HomogeneousPoly>> split_conics(const HomogeneousPoly& form,
                                                                        const SingularLocus& locus) {
  const Field f = form.field();
  std::vector<std::vector<Scalar>> rows;
  const std::array<std::array<int, 3>, 6> monos = {{{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}}};
  for (const auto& info : locus.points) {
    const Point3& p = info.point.coords();
    std::vector<Scalar> value;
    for (const auto& m : monos) value.push_back(HomogeneousPoly::monomial(f.one(), m[0], m[1], m[2])(p));
    rows.push_back(value);
    if (info.kind == SingularityKind::tacnode && !info.tangent_cone.empty()) {
      auto [q1, q2] = detail::line_basis(info.tangent_cone.front().first);
      const ProjPoint& u = q1 != info.point ? q1 : q2;
      std::vector<Scalar> tangency;
      for (const auto& m : monos)
        tangency.push_back(detail::restrict_to_line(HomogeneousPoly::monomial(f.one(), m[0], m[1], m[2]), p, u.coords())
                               .coeff(1));
      rows.push_back(tangency);
    }
  }
  if (rows.empty()) return std::nullopt;
  auto pencil = nullspace(ExactMatrix::from_rows(f, rows));
  if (pencil.size() != 2) return std::nullopt;
  auto conic = [&](const std::vector<Scalar>& v) {
    HomogeneousPoly c(f, 2);
    for (std::size_t i = 0; i < monos.size(); ++i) c.set(monos[i][0], monos[i][1], monos[i][2], v[i]);
    return c;
  };
  const HomogeneousPoly c0 = conic(pencil[0]), c1 = conic(pencil[1]);
  // Points of the quartic on lines through a singular point pick out the member containing them.
  const ProjPoint& s = locus.points.front().point;
  for (int k = 0; k < 40; ++k) {
    const ProjPoint dir = transform_point(shear(f, k), ProjPoint(f.one(), f.from_int(k + 1), f.from_int(2 * k + 3)));
    if (dir == s) continue;
    for (const ProjPoint& q : detail::points_on_line(form, line_through(s, dir))) {
      if (std::any_of(locus.points.begin(), locus.points.end(), [&](const auto& i) { return i.point == q; })) continue;
      const Scalar a = c0(q.coords()), b = c1(q.coords());
      HomogeneousPoly member = c0 * b - c1 * a;
      if (member.is_zero()) continue;
      if (auto other = divide_exact(form, member)) return std::make_pair(member.normalized(), other->normalized());
    }
  }
  return std::nullopt;
}

// Line components through p tangent there to another component.
bool tangent_to_other_component(const QuarticClass& q, const ProjLine& l) {
  for (const auto& info : q.singularities().points)
    if (info.kind == SingularityKind::tacnode && on_line(l, info.point) && !info.tangent_cone.empty() &&
        info.tangent_cone.front().first == l)
      return true;
  return false;
}

}  // namespace

QuarticClass::QuarticClass(const PlaneCurve& curve) : curve_(curve) {
  const HomogeneousPoly& form = curve.form();
  if (curve.degree() != 4) throw Error(ErrorCode::DegreeMismatch, "expected a quartic: " + form.to_string());
  if (!gcd_and_squarefree(form).is_squarefree) {
    reason_ = "not reduced";
    return;
  }
  locus_ = singular_points(curve);
  HomogeneousPoly rest = form;
  for (const auto& [l, m] : linear_components(curve)) {
    (void)m;
    lines_.push_back(l);
    components_.push_back({HomogeneousPoly::linear(l.coords()), 1});
    rest = *divide_exact(rest, HomogeneousPoly::linear(l.coords()));
  }
  int delta = locus_.residual_points;
  for (const auto& info : locus_.points) delta += delta_invariant(info.kind);
  if (rest.degree() == 4 && delta >= 4) {
    if (auto pair = split_conics(rest, locus_)) {
      components_.push_back({pair->first, 2});
      components_.push_back({pair->second, 2});
      rest = HomogeneousPoly::constant(form.field().one());
    }
  }
  if (rest.degree() > 0) components_.push_back({rest.normalized(), rest.degree()});

  int tacnodes = 0;
  for (const auto& info : locus_.points) {
    if (info.kind == SingularityKind::other) {
      reason_ = "singular point " + info.point.to_string() + " is not a node, cusp or tacnode";
      return;
    }
    if (info.kind == SingularityKind::tacnode) ++tacnodes;
  }
  if (locus_.residual_points > 0) reason_ = "singular points outside the base field";
  else if (tacnodes > 1) reason_ = "more than one tacnode (infinite stabilizer)";
}

SmoothingPencil::SmoothingPencil(const PlaneCurve& central, const HomogeneousPoly& direction)
    : central_(central), direction_(direction) {
  if (central.degree() != 4 || direction.degree() != 4)
    throw Error(ErrorCode::DegreeMismatch, "pencil members must be quartics");
  const Field f = central.field();
  FieldEmbedding e = FieldEmbedding::with_min_size(f, 64);
  const HomogeneousPoly c = map_up(central.form(), e), d = map_up(direction, e);
  for (std::uint64_t i = 1; i <= 8; ++i) {
    HomogeneousPoly m = c + d * e.target().element(i);
    if (!m.is_zero() && is_smooth(PlaneCurve(m))) return;
  }
  throw Error(ErrorCode::GenericMemberSingular, direction.to_string());
}

LineConfiguration table_configuration(const QuarticClass& q) {
  if (!q.vclass_member()) throw Error(ErrorCode::NotInV, q.rejection_reason());
  const PlaneCurve& c = q.curve();
  const Field f = c.field();
  LineConfiguration cfg(f, 4);
  const auto is_component = [&](const ProjLine& l) {
    return std::find(q.line_components().begin(), q.line_components().end(), l) != q.line_components().end();
  };
  for (const ProjLine& l : q.line_components()) cfg.add(l, tangent_to_other_component(q, l) ? 12 : 6, LineKind::degenerate);

  for (const auto& info : q.singularities().points) {
    switch (info.kind) {
      case SingularityKind::node:
        if (info.irreducible_cone) {
          // Conjugate branch tangents: the multiplicity is read over the quadratic extension.
          FieldEmbedding e = FieldEmbedding::extend(f, 2);
          PlaneCurve up(map_up(c.form(), e));
          const ProjPoint p = map_up(info.point, e);
          int mult = 3;
          for (const auto& s : singular_points(up).points)
            if (s.point == p && !s.tangent_cone.empty())
              mult = line_curve_multiplicity(up, s.tangent_cone.front().first, p) >= 4 ? 4 : 3;
          cfg.multiply_residual(info.irreducible_cone->pow(mult), std::vector<int>(mult, 2));
          break;
        }
        for (const auto& [l, m] : info.tangent_cone) {
          (void)m;
          if (is_component(l)) continue;
          cfg.add(l, line_curve_multiplicity(c, l, info.point) >= 4 ? 4 : 3, LineKind::type1);
        }
        break;
      case SingularityKind::cusp:
        cfg.add(info.tangent_cone.front().first, 8, LineKind::type1);
        break;
      case SingularityKind::tacnode:
        if (!is_component(info.tangent_cone.front().first)) cfg.add(info.tangent_cone.front().first, 12, LineKind::type1);
        break;
      case SingularityKind::other:
        break;
    }
  }

  HomogeneousPoly rest = c.form();
  for (const ProjLine& l : q.line_components()) rest = *divide_exact(rest, HomogeneousPoly::linear(l.coords()));
  if (rest.degree() >= 3) {
    PlaneCurve r(rest);
    InflectionResult flexes = smooth_point_flexes(r);
    for (const auto& [p, m] : flexes.points) {
      // Flexes of a component on a line component are nodes of C, counted above.
      if (std::any_of(q.line_components().begin(), q.line_components().end(),
                      [&](const ProjLine& l) { return on_line(l, p); }))
        continue;
      cfg.add(tangent_line(r, p), m, LineKind::type0);
    }
    if (flexes.lines.residual_degree() > 0)
      cfg.multiply_residual(flexes.lines.residual(), flexes.lines.residual_degrees());
  }
  if (cfg.total_multiplicity() != cfg.expected_total())
    throw Error(ErrorCode::IncompleteConfiguration,
                "table total " + std::to_string(cfg.total_multiplicity()) + " for " + c.to_string());
  return cfg;
}

std::string_view verdict_name(GitVerdict v) {
  switch (v) {
    case GitVerdict::stable:
      return "stable";
    case GitVerdict::strictly_semistable:
      return "strictly_semistable";
    case GitVerdict::unstable:
      return "unstable";
  }
  return "unknown";
}

GitReport git_check(const LineConfiguration& config) {
  if (!config.complete() || config.entries().empty())
    throw Error(ErrorCode::IncompleteConfiguration,
                "total " + std::to_string(config.total_multiplicity()) + " with residual degree " +
                    std::to_string(config.residual_degree()));
  const auto& lines = config.entries();
  GitReport out;
  for (const auto& e : lines)
    if (e.multiplicity > out.line_weight) {
      out.line_weight = e.multiplicity;
      out.heaviest_line = e.line;
    }
  std::vector<ProjPoint> seen;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const ProjPoint p = meet(lines[i].line, lines[j].line);
      if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
      seen.push_back(p);
      int w = 0;
      for (const auto& e : lines)
        if (on_line(e.line, p)) w += e.multiplicity;
      if (w > out.point_weight || (w == out.point_weight && out.heaviest_point && p < *out.heaviest_point)) {
        out.point_weight = w;
        out.heaviest_point = p;
      }
    }
  if (out.point_weight > 16 || out.line_weight > 8)
    out.verdict = GitVerdict::unstable;
  else if (out.point_weight == 16 || out.line_weight == 8)
    out.verdict = GitVerdict::strictly_semistable;
  else
    out.verdict = GitVerdict::stable;
  return out;
}

std::optional<std::string> nodal_cubic_line_defect(const QuarticClass& q) {
  if (!q.vclass_member()) return q.rejection_reason();
  if (q.line_components().size() != 1) return "expected exactly one line component";
  const ProjLine& l = q.line_components().front();
  for (const auto& info : q.singularities().points)
    if (info.kind != SingularityKind::node) return "not nodal";
  const HomogeneousPoly cubic = *divide_exact(q.curve().form(), HomogeneousPoly::linear(l.coords()));
  const PlaneCurve y(cubic);
  if (!linear_components(y).empty()) return "cubic component is reducible";
  SingularLocus ys = singular_points(y);
  if (ys.points.size() + ys.residual_points != 1 || (!ys.points.empty() && ys.points.front().kind != SingularityKind::node))
    return "cubic component is not nodal";
  for (const auto& info : q.singularities().points) {
    if (!on_line(l, info.point)) continue;
    if (line_curve_multiplicity(y, tangent_line(y, info.point), info.point) > 2) return "line meets the cubic at a flex";
  }
  return std::nullopt;
}

PlaneCurve sample_nodal_cubic_plus_line(const Field& f, std::mt19937_64& rng) {
  if (!f.is_finite()) throw Error(ErrorCode::UnsupportedField, "sampling needs a finite field");
  const HomogeneousPoly cubic = PlaneCurve::parse(f, "y^2*z-x^3-x^2*z").form();
  // Points t -> (t^2 - 1, t (t^2 - 1), 1) of the cubic; t = +-1 is the node.
  const auto point = [&](const Scalar& t) {
    const Scalar x = t * t - f.one();
    return ProjPoint(x, t * x, f.one());
  };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const ProjPoint p = point(f.random(rng)), q = point(f.random(rng));
    if (p == q) continue;
    ExactMatrix m(f, 3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = f.random(rng);
    if (determinant(m).is_zero()) continue;
    const PlaneCurve c(linear_change(cubic * HomogeneousPoly::linear(line_through(p, q).coords()), m));
    if (!nodal_cubic_line_defect(QuarticClass(c))) return c;
  }
  throw Error(ErrorCode::HypothesesNotMet, "no admissible curve found over " + f.spec());
}

UniquenessReport uniqueness_experiment(const QuarticClass& q1, const QuarticClass& q2) {
  for (const QuarticClass* q : {&q1, &q2})
    if (auto defect = nodal_cubic_line_defect(*q))
      throw Error(ErrorCode::HypothesesNotMet, q->curve().to_string() + ": " + *defect);
  UniquenessReport out;
  out.configs_equal = table_configuration(q1).same_lines(table_configuration(q2));
  out.curves_equal = q1.curve() == q2.curve();
  return out;
}

}  // namespace flex
