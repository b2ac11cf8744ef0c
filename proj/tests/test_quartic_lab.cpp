#include <doctest.h>

#include <random>
#include <string>

#include "quartic_support.hpp"

using namespace flex;
using namespace flex::testing;

namespace {

std::vector<int> component_degrees(const QuarticClass& q) {
  std::vector<int> out;
  for (const auto& c : q.components()) out.push_back(c.degree);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SingularityKind> kinds(const QuarticClass& q) {
  std::vector<SingularityKind> out;
  for (const auto& info : q.singularities().points) out.push_back(info.kind);
  std::sort(out.begin(), out.end());
  return out;
}

LineConfiguration moved(const LineConfiguration& cfg, const ExactMatrix& m) {
  LineConfiguration out(cfg.field(), cfg.ambient_degree());
  for (const auto& e : cfg.entries()) out.add(pull_line(m, e.line), e.multiplicity, e.kind);
  return out;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("quartic classes") {
  Field f = Field::prime(31);
  std::mt19937_64 rng(1);
  using K = SingularityKind;
  const auto check = [&](const PlaneCurve& c, std::vector<int> degrees, std::vector<K> sing) {
    QuarticClass q(c);
    CHECK(q.vclass_member());
    CHECK(component_degrees(q) == degrees);
    std::sort(sing.begin(), sing.end());
    CHECK(kinds(q) == sing);
  };
  check(cuspidal_quartic(f, rng), {4}, {K::cusp});
  check(tacnodal_quartic(f, rng), {4}, {K::tacnode});
  check(nodal_quartic(f, rng), {4}, {K::node});
  check(nodal_cubic_plus_line(f, rng), {1, 3}, {K::node, K::node, K::node, K::node});
  check(two_tangent_conics(f, rng), {2, 2}, {K::tacnode, K::node, K::node});
  check(conic_plus_two_lines(f, rng), {1, 1, 2}, {K::node, K::node, K::node, K::node, K::node});
  check(four_lines(f, rng), {1, 1, 1, 1}, std::vector<K>(6, K::node));

  CHECK(QuarticClass(C(f, "x^2*y*z")).rejection_reason() == "not reduced");
  CHECK_FALSE(QuarticClass(C(f, "(x^3+y^3)*z+x^4+y^4")).vclass_member());
  // Conics tangent at two points.
  QuarticClass bitangent(C(f, "(x*z-y^2)*(2*x*z-y^2)"));
  CHECK(kinds(bitangent) == std::vector<K>{K::tacnode, K::tacnode});
  CHECK_FALSE(bitangent.vclass_member());
  CHECK(code_of([&] { QuarticClass(C(f, "x^3+y^3+z^3")); }) == ErrorCode::DegreeMismatch);
  CHECK(code_of([&] { table_configuration(bitangent); }) == ErrorCode::NotInV);
}

TEST_CASE("table multiplicities") {
  Field f = Field::prime(31);
  std::mt19937_64 rng(2);
  const auto heaviest = [](const LineConfiguration& cfg) { return multiplicities(cfg).back(); };
  LineConfiguration cusp = table_configuration(QuarticClass(cuspidal_quartic(f, rng)));
  CHECK(heaviest(cusp) == 8);
  CHECK(heaviest(table_configuration(QuarticClass(tacnodal_quartic(f, rng)))) == 12);
  CHECK(multiplicities(table_configuration(QuarticClass(nodal_cubic_plus_line(f, rng)))) ==
        std::vector<int>{1, 1, 1, 3, 3, 3, 3, 3, 6});
  CHECK(multiplicities(table_configuration(QuarticClass(two_tangent_conics(f, rng)))) ==
        std::vector<int>{3, 3, 3, 3, 12});
  CHECK(multiplicities(table_configuration(QuarticClass(four_lines(f, rng)))) == std::vector<int>{6, 6, 6, 6});
  for (const auto& cls : table_classes()) {
    CAPTURE(cls.name);
    LineConfiguration cfg = table_configuration(QuarticClass(cls.make(f, rng)));
    CHECK(cfg.total_multiplicity() == 24);
  }
}

TEST_CASE("limit of a smooth central fiber") {
  Field f = Field::prime(13);
  std::mt19937_64 rng(4);
  PlaneCurve c = random_smooth(f, 4, rng);
  LineConfiguration lim = limit_configuration(random_pencil(c, rng));
  CHECK(lim.same_lines(inflection_scheme(c).lines));
  CHECK(lim.total_multiplicity() == 24);
}

TEST_CASE("table agrees with the limit on every class") {
  Field f = Field::prime(31);
  std::mt19937_64 rng(6);
  for (const auto& cls : table_classes()) {
    CAPTURE(cls.name);
    PlaneCurve c = cls.make(f, rng);
    LineConfiguration table = table_configuration(QuarticClass(c));
    LineConfiguration lim = limit_configuration(random_pencil(c, rng));
    CHECK(table.same_lines(lim));
  }
}

TEST_CASE("smoothing pencil") {
  Field f = Field::prime(31);
  PlaneCurve c = C(f, "x*y*z*(x+y+z)");
  CHECK(code_of([&] { SmoothingPencil(c, c.form()); }) == ErrorCode::GenericMemberSingular);
  CHECK(code_of([&] { SmoothingPencil(c, C(f, "x^3").form()); }) == ErrorCode::DegreeMismatch);

  Field q = Field::rationals();
  SmoothingPencil over_q(C(q, "x*y*z*(x+y+z)"), C(q, "x^4+2*y^4+3*z^4+x*y*z^2").form());
  CHECK(code_of([&] { limit_configuration(over_q); }) == ErrorCode::UnsupportedField);
}

TEST_CASE("splitting a product of lines") {
  Field f = Field::prime(13);
  HomogeneousPoly prod = C(f, "x^2*(x+y)*(y-3*z)^3*(x^2+y^2)").form();
  // x^2 + y^2 = (x + 5y)(x - 5y) over GF(13).
  LineConfiguration cfg = split_into_lines(prod, 4);
  CHECK(cfg.residual_degree() == 0);
  CHECK(multiplicities(cfg) == std::vector<int>{1, 1, 1, 2, 3});

  Field g = Field::prime(7);
  // x^2 + y^2 has no roots mod 7: a conjugate pair of lines.
  LineConfiguration part = split_into_lines(C(g, "z^3*(x^2+y^2)").form(), 4);
  CHECK(multiplicities(part) == std::vector<int>{3});
  CHECK(part.residual_degrees() == std::vector<int>{2});
  LineConfiguration split = split_over_extension(part);
  CHECK(split.residual_degree() == 0);
  CHECK(multiplicities(split) == std::vector<int>{1, 1, 3});

  // Doubled conjugate pair and a conjugate triple, all through a rational point.
  const HomogeneousPoly mixed = C(g, "(x+y+z)*(x^2+y^2)^2*(x^3-2*y^3)").form();
  LineConfiguration orbits = split_into_lines(mixed, 4);
  CHECK(orbits.residual_degrees() == std::vector<int>{2, 2, 3});
  LineConfiguration lines = split_over_extension(orbits);
  CHECK(lines.residual_degree() == 0);
  CHECK(multiplicities(lines) == std::vector<int>{1, 1, 1, 1, 2, 2});
  HomogeneousPoly product = HomogeneousPoly::constant(lines.field().one());
  for (const auto& e : lines.entries()) product = product * HomogeneousPoly::linear(e.line.coords()).pow(e.multiplicity);
  CHECK(product.normalized() == map_up(mixed, FieldEmbedding::extend(g, 6)).normalized());

  CHECK(code_of([&] { split_into_lines(C(g, "z*(x*z+y^2)").form(), 4); }) == ErrorCode::ResidualNonLinearFactors);
}

TEST_CASE("git check") {
  Field f = Field::prime(13);
  std::mt19937_64 rng(8);
  int smooth = 0;
  while (smooth < 3) {
    LineConfiguration cfg = split_over_extension(inflection_scheme(random_smooth(f, 4, rng)).lines);
    if (!cfg.complete()) continue;
    ++smooth;
    GitReport r = git_check(cfg);
    CHECK(r.verdict == GitVerdict::stable);
    CHECK(r.line_weight <= 2);
  }

  LineConfiguration concurrent(f, 4);
  for (const ProjLine& l : {pt(f, 1, 0, 0), pt(f, 0, 1, 0), pt(f, 1, 1, 0), pt(f, 1, 2, 0)})
    concurrent.add(l, 6, LineKind::unknown);
  GitReport bad = git_check(concurrent);
  CHECK(bad.verdict == GitVerdict::unstable);
  CHECK(bad.point_weight == 24);
  CHECK(bad.heaviest_point == ProjPoint(f.zero(), f.zero(), f.one()));

  LineConfiguration boundary(f, 4);
  boundary.add(pt(f, 1, 0, 0), 8, LineKind::unknown);
  const std::vector<ProjLine> others = {pt(f, 0, 1, 0), pt(f, 0, 0, 1), pt(f, 1, 1, 1), pt(f, 1, 2, 3),
                                        pt(f, 1, 3, 7), pt(f, 2, 1, 5), pt(f, 1, 5, 2), pt(f, 3, 1, 9)};
  for (const ProjLine& l : others) boundary.add(l, 2, LineKind::unknown);
  GitReport edge = git_check(boundary);
  CHECK(edge.line_weight == 8);
  CHECK(edge.verdict == GitVerdict::strictly_semistable);

  LineConfiguration partial(f, 4);
  partial.add(pt(f, 1, 0, 0), 3, LineKind::unknown);
  CHECK(code_of([&] { git_check(partial); }) == ErrorCode::IncompleteConfiguration);

  // The cuspidal tangent carries weight 8, so the cuspidal configuration is not stable.
  // Over GF(7) its flex lines split in degree 14.
  Field g = Field::prime(7);
  bool cusp_checked = false;
  for (int trial = 0; trial < 20 && !cusp_checked; ++trial) {
    LineConfiguration cusp = split_over_extension(table_configuration(QuarticClass(cuspidal_quartic(g, rng))));
    if (!cusp.complete()) continue;
    GitReport r = git_check(cusp);
    CHECK(r.line_weight == 8);
    CHECK(r.verdict != GitVerdict::stable);
    cusp_checked = true;
  }
  CHECK(cusp_checked);

  for (int trial = 0; trial < 5; ++trial) {
    ExactMatrix m = random_invertible(f, rng);
    for (const LineConfiguration* cfg : {&concurrent, &boundary}) {
      GitReport a = git_check(*cfg), b = git_check(moved(*cfg, m));
      CHECK(a.verdict == b.verdict);
      CHECK(a.line_weight == b.line_weight);
      CHECK(a.point_weight == b.point_weight);
    }
  }
}

TEST_CASE("uniqueness experiment") {
  Field f = Field::prime(31);
  std::mt19937_64 rng(10);
  QuarticClass q1(nodal_cubic_plus_line(f, rng));
  UniquenessReport same = uniqueness_experiment(q1, q1);
  CHECK(same.configs_equal);
  CHECK(same.curves_equal);

  QuarticClass translate(PlaneCurve(linear_change(q1.curve().form(), random_invertible(f, rng))));
  UniquenessReport t = uniqueness_experiment(q1, translate);
  CHECK_FALSE(t.configs_equal);
  CHECK_FALSE(t.curves_equal);

  for (int trial = 0; trial < 5; ++trial) {
    QuarticClass q2(nodal_cubic_plus_line(f, rng));
    UniquenessReport r = uniqueness_experiment(q1, q2);
    CHECK(r.configs_equal == r.curves_equal);
  }
  QuarticClass cusp(cuspidal_quartic(f, rng));
  CHECK(code_of([&] { uniqueness_experiment(q1, cusp); }) == ErrorCode::HypothesesNotMet);
  CHECK(nodal_cubic_line_defect(cusp).has_value());
}
