#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "flexlines/curves.hpp"
#include "support.hpp"

using namespace flex;
using namespace flex::testing;

namespace {

// Smooth points of C whose tangent meets C there with multiplicity >= 3, by
// direct evaluation of F along the tangent.
std::set<ProjPoint> brute_flexes(const PlaneCurve& c) {
  const HomogeneousPoly& F = c.form();
  const Field f = c.field();
  std::set<ProjPoint> out;
  for (const auto& p : all_points(f)) {
    if (!c.contains(p)) continue;
    Point3 g{F.partial(0)(p.coords()), F.partial(1)(p.coords()), F.partial(2)(p.coords())};
    if (g[0].is_zero() && g[1].is_zero() && g[2].is_zero()) continue;
    // Direction r on the tangent, then F(p + s r) = s^2 (h2 + s h3 + ...).
    Point3 r;
    for (int i = 0; i < 3; ++i) {
      Point3 e{f.zero(), f.zero(), f.zero()};
      e[i] = f.one();
      Point3 cand{g[1] * e[2] - g[2] * e[1], g[2] * e[0] - g[0] * e[2], g[0] * e[1] - g[1] * e[0]};
      if (cand[0].is_zero() && cand[1].is_zero() && cand[2].is_zero()) continue;
      if (ProjPoint(cand) != p) r = cand;
    }
    Point3 at = p.coords();
    Scalar h2 = f.zero();
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) h2 += F.hasse2(a, b)(at) * r[a] * r[b];
    if (h2.is_zero()) out.insert(p);
  }
  return out;
}

}  // namespace

TEST_CASE("points and tangent lines") {
  Field q = Field::rationals();
  CHECK(pt(q, 2, 4, 6).to_string() == "[1, 2, 3]");
  CHECK(pt(q, 0, -3, 6).to_string() == "[0, 1, -2]");
  CHECK_THROWS_AS(pt(q, 0, 0, 0), Error);
  ProjLine l = line_through(pt(q, 1, 0, 0), pt(q, 0, 1, 0));
  CHECK(l == pt(q, 0, 0, 1));
  CHECK(meet(pt(q, 1, 0, 0), pt(q, 0, 1, 0)) == pt(q, 0, 0, 1));

  PlaneCurve fermat = C(q, "x^3+y^3+z^3");
  CHECK(tangent_line(fermat, pt(q, 1, -1, 0)) == pt(q, 1, 1, 0));
  CHECK(tangent_line(C(q, "x^2+y^2-z^2"), pt(q, 1, 0, 1)) == pt(q, 1, 0, -1));
  CHECK_THROWS_AS(tangent_line(fermat, pt(q, 1, 1, 1)), Error);
  CHECK_THROWS_AS(tangent_line(C(q, "y^2*z-x^3"), pt(q, 0, 0, 1)), Error);

  CHECK(line_curve_multiplicity(fermat, pt(q, 1, 1, 0), pt(q, 1, -1, 0)) == 3);
  PlaneCurve conic = C(q, "x^2+y^2-z^2");
  CHECK(line_curve_multiplicity(conic, pt(q, 1, 0, 0), pt(q, 0, 1, 1)) == 1);
  CHECK(line_curve_multiplicity(C(q, "x*y*z"), pt(q, 1, 0, 0), pt(q, 0, 1, 0)) == kInfiniteMultiplicity);
  CHECK_THROWS_AS(line_curve_multiplicity(fermat, pt(q, 1, 1, 0), pt(q, 1, 1, 0)), Error);

  // Tangent property on random curve points.
  Field f = Field::prime(31);
  std::mt19937_64 rng(7);
  PlaneCurve c = random_smooth(f, 4, rng);
  int seen = 0;
  for (const auto& p : all_points(f)) {
    if (!c.contains(p)) continue;
    ProjLine t = tangent_line(c, p);
    CHECK(incidence(t, p).is_zero());
    CHECK(line_curve_multiplicity(c, t, p) >= 2);
    ++seen;
  }
  CHECK(seen > 10);
}

TEST_CASE("smoothness") {
  Field q = Field::rationals();
  CHECK(is_smooth(C(q, "x^3+y^3+z^3")));
  CHECK_FALSE(is_smooth(C(q, "x*y*z")));
  CHECK_FALSE(is_smooth(C(q, "y^2*z-x^3")));
  CHECK_FALSE(is_smooth(C(q, "(x+y)^2*z+x^3")));
  // Hesse members over GF(7): singular exactly when (3 lambda)^3 = 27.
  Field f = Field::prime(7);
  for (int l = 0; l < 7; ++l) {
    Scalar lam = f.from_int(l);
    HomogeneousPoly form = HomogeneousPoly::parse(f, "x^3+y^3+z^3") -
                           HomogeneousPoly::parse(f, "x*y*z") * (f.from_int(3) * lam);
    CHECK(is_smooth(PlaneCurve(form)) == !lam.pow(3).is_one());
  }
  // Char 3: F does not vanish at the critical points of x^3 + y^3 + z^3 + x y z.
  Field f3 = Field::prime(3);
  CHECK(is_smooth(C(f3, "x^3+y^3+z^3+x*y*z")));
  CHECK_FALSE(is_smooth(C(f3, "x^3+y^3+z^3")));
}

TEST_CASE("singular points") {
  Field q = Field::rationals();
  SingularLocus nodal = singular_points(C(q, "z*y^2-x^2*(x+z)"));
  REQUIRE(nodal.points.size() == 1);
  CHECK(nodal.points[0].point == pt(q, 0, 0, 1));
  CHECK(nodal.points[0].kind == SingularityKind::node);
  REQUIRE(nodal.points[0].tangent_cone.size() == 2);
  std::set<ProjLine> cone{nodal.points[0].tangent_cone[0].first, nodal.points[0].tangent_cone[1].first};
  CHECK(cone == std::set<ProjLine>{pt(q, 1, 1, 0), pt(q, 1, -1, 0)});

  SingularLocus cusp = singular_points(C(q, "z*y^2-x^3"));
  REQUIRE(cusp.points.size() == 1);
  CHECK(cusp.points[0].kind == SingularityKind::cusp);
  REQUIRE(cusp.points[0].tangent_cone.size() == 1);
  CHECK(cusp.points[0].tangent_cone[0] == std::pair<ProjLine, int>{pt(q, 0, 1, 0), 2});

  // The two conics are tangent at [0, 0, 1] and at [0, 1, 0].
  SingularLocus tac = singular_points(C(q, "(y*z-x^2)*(y*z+x^2)"));
  REQUIRE(tac.points.size() == 2);
  CHECK(tac.points[0].point == pt(q, 0, 0, 1));
  CHECK(tac.points[0].kind == SingularityKind::tacnode);
  CHECK(tac.points[0].tangent_cone[0] == std::pair<ProjLine, int>{pt(q, 0, 1, 0), 2});
  CHECK(tac.points[1].point == pt(q, 0, 1, 0));
  CHECK(tac.points[1].kind == SingularityKind::tacnode);
  CHECK(tac.points[1].tangent_cone[0] == std::pair<ProjLine, int>{pt(q, 0, 0, 1), 2});

  // Non-split node over Q: x^2 + y^2 = x^3 has cone x^2 + y^2.
  SingularLocus ns = singular_points(C(q, "x^2*z+y^2*z-x^3"));
  REQUIRE(ns.points.size() == 1);
  CHECK(ns.points[0].kind == SingularityKind::node);
  CHECK(ns.points[0].tangent_cone.empty());
  REQUIRE(ns.points[0].irreducible_cone.has_value());
  CHECK(*ns.points[0].irreducible_cone == HomogeneousPoly::parse(q, "x^2+y^2"));

  // Three lines: three nodes. Triple point: other.
  CHECK(singular_points(C(q, "x*y*z")).points.size() == 3);
  SingularLocus triple = singular_points(C(q, "x^3-y^3"));
  REQUIRE(triple.points.size() == 1);
  CHECK(triple.points[0].kind == SingularityKind::other);
  // The A4 singularity y^2 = x^5 is neither a cusp nor a tacnode.
  SingularLocus a4 = singular_points(C(q, "y^2*z^3-x^5"));
  auto at_origin = std::find_if(a4.points.begin(), a4.points.end(),
                                [&](const SingularPointInfo& s) { return s.point == pt(q, 0, 0, 1); });
  REQUIRE(at_origin != a4.points.end());
  CHECK(at_origin->kind == SingularityKind::other);

  // Two conics meeting in four irrational points.
  SingularLocus conj = singular_points(C(q, "(x^2+y^2-5*z^2)*(x^2-y^2-z^2)"));
  CHECK(conj.points.empty());
  CHECK(conj.residual_points == 4);

  CHECK_THROWS_AS(singular_points(C(q, "x^2*y")), Error);

  // Char 2: cusp of y^2 z = x^3 and node of y^2 z + x y z = x^3.
  Field f2 = Field::prime(2);
  SingularLocus c2 = singular_points(C(f2, "y^2*z+x^3"));
  REQUIRE(c2.points.size() == 1);
  CHECK(c2.points[0].kind == SingularityKind::cusp);
  SingularLocus n2 = singular_points(C(f2, "y^2*z+x*y*z+x^3"));
  REQUIRE(n2.points.size() == 1);
  CHECK(n2.points[0].kind == SingularityKind::node);

  // Brute-force oracle over GF(7): singular points of random reducible curves.
  Field f = Field::prime(7);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    HomogeneousPoly form = random_form(f, 2, rng) * random_form(f, 2, rng);
    if (form.is_zero() || !gcd_and_squarefree(form).is_squarefree) continue;
    PlaneCurve c(form);
    std::set<ProjPoint> expect;
    for (const auto& p : all_points(f)) {
      bool sing = c.contains(p);
      for (int v = 0; v < 3 && sing; ++v) sing = form.partial(v)(p.coords()).is_zero();
      if (sing) expect.insert(p);
    }
    std::set<ProjPoint> got;
    for (const auto& s : singular_points(c).points) got.insert(s.point);
    CHECK(got == expect);
  }
}

TEST_CASE("linear components") {
  Field q = Field::rationals();
  auto comps = linear_components(C(q, "x*y*(x^2+y^2-z^2)"));
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].second == 1);
  CHECK(linear_components(C(q, "x^3+y^3+z^3")).empty());
  Field f = Field::prime(5);
  auto sq = linear_components(C(f, "(x+2*y)^2*(x*y+z^2)"));
  REQUIRE(sq.size() == 1);
  CHECK(sq[0] == std::pair<ProjLine, int>{pt(f, 1, 2, 0), 2});
}

TEST_CASE("inflection scheme of the Fermat cubic over GF(7)") {
  Field f = Field::prime(7);
  PlaneCurve fermat = C(f, "x^3+y^3+z^3");
  InflectionResult r = inflection_scheme(fermat);
  std::vector<std::pair<ProjPoint, int>> expect;
  for (int e : {3, 5, 6}) {
    expect.emplace_back(pt(f, 1, e, 0), 1);
    expect.emplace_back(pt(f, 1, 0, e), 1);
    expect.emplace_back(pt(f, 0, 1, e), 1);
  }
  std::sort(expect.begin(), expect.end());
  CHECK(r.points == expect);
  CHECK(r.total_multiplicity == 9);
  CHECK(r.lines.complete());
  CHECK(r.lines.multiplicities() == std::vector<int>(9, 1));
  for (const auto& [p, m] : r.points) CHECK(line_curve_multiplicity(fermat, tangent_line(fermat, p), p) >= 3);
}

TEST_CASE("inflection scheme in characteristic 3") {
  Field f = Field::prime(3);
  for (const char* s : {"x^3+y^3+z^3+x*y*z", "x^3+y^3+z^3-x*y*z"}) {
    PlaneCurve c = C(f, s);
    InflectionResult r = inflection_scheme(c);
    std::vector<std::pair<ProjPoint, int>> pts{{pt(f, 0, 1, -1), 3}, {pt(f, 1, 0, -1), 3}, {pt(f, 1, -1, 0), 3}};
    std::sort(pts.begin(), pts.end());
    CHECK(r.points == pts);
    CHECK(r.lines.complete());
    REQUIRE(r.lines.entries().size() == 3);
    CHECK(r.lines.find(pt(f, 1, 0, 0))->multiplicity == 3);
    CHECK(r.lines.find(pt(f, 0, 1, 0))->multiplicity == 3);
    CHECK(r.lines.find(pt(f, 0, 0, 1))->multiplicity == 3);
  }
  // The Fermat cubic in char 3 is a triple line.
  CHECK_THROWS_AS(inflection_scheme(C(f, "x^3+y^3+z^3")), Error);
}

TEST_CASE("inflection scheme against brute force") {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {5ULL, 7ULL, 13ULL}) {
    Field f = Field::prime(p);
    for (int d : {3, 4}) {
      PlaneCurve c = random_smooth(f, d, rng);
      InflectionResult r = inflection_scheme(c);
      CHECK(r.total_multiplicity == 3 * d * (d - 2));
      CHECK(r.lines.total_multiplicity() == 3 * d * (d - 2));
      std::set<ProjPoint> got;
      for (const auto& [q, m] : r.points) got.insert(q);
      CHECK(got == brute_flexes(c));
    }
  }
  // Small fields, where no projection separates every flex.
  for (const Field& small : {Field::prime(2), Field::prime(3), Field::galois(2, 2)})
    for (int trial = 0; trial < 4; ++trial) {
      PlaneCurve c = random_smooth(small, 3, rng);
      InflectionResult r = inflection_scheme(c);
      CHECK(r.lines.total_multiplicity() == 9);
      std::set<ProjPoint> got;
      for (const auto& [q, m] : r.points) got.insert(q);
      CHECK(got == brute_flexes(c));
    }
}

TEST_CASE("residual flex lines split over an extension") {
  std::mt19937_64 rng(5);
  for (const Field& f : {Field::prime(7), Field::prime(5), Field::galois(2, 2)}) {
    PlaneCurve c = random_smooth(f, 3, rng);
    InflectionResult r = inflection_scheme(c);
    if (r.residual_degrees.empty()) continue;
    int b = 1;
    for (int deg : r.residual_degrees) b = std::lcm(b, deg);
    FieldEmbedding e = FieldEmbedding::extend(f, b);
    InflectionResult up = inflection_scheme(PlaneCurve(map_up(c.form(), e)));
    CHECK(up.residual_degrees.empty());
    CHECK(up.lines.total_multiplicity() == 9);
    // Product of the new lines equals the residual form up to scalar.
    HomogeneousPoly prod = HomogeneousPoly::constant(e.target().one());
    for (const auto& entry : up.lines.entries()) {
      auto down = map_down(entry.line, e);
      if (down && r.lines.find(*down)) continue;
      for (int i = 0; i < entry.multiplicity; ++i) prod = prod * HomogeneousPoly::linear(entry.line.coords());
    }
    CHECK(prod.normalized() == map_up(r.lines.residual(), e).normalized());
  }
}

TEST_CASE("quartic flexes") {
  // Fermat quartic over GF(17): twelve hyperflexes.
  Field f = Field::prime(17);
  InflectionResult r = inflection_scheme(C(f, "x^4+y^4+z^4"));
  CHECK(r.points.size() == 12);
  for (const auto& [p, m] : r.points) CHECK(m == 2);
  CHECK(r.lines.complete());
  CHECK(r.lines.total_multiplicity() == 24);
  // Over Q none is rational.
  InflectionResult rq = inflection_scheme(C(Field::rationals(), "x^4+y^4+z^4"));
  CHECK(rq.points.empty());
  CHECK(rq.total_multiplicity == 24);
  CHECK(rq.lines.residual_degree() == 24);
  // Hyperflex tangents on x = 0 are the factors of y^4 + z^4, each counted twice.
  CHECK(rq.lines.residual() == HomogeneousPoly::parse(Field::rationals(), "((x^4+y^4)*(y^4+z^4)*(x^4+z^4))^2"));
  // Random quartic over GF(101).
  std::mt19937_64 rng(17);
  PlaneCurve c = random_smooth(Field::prime(101), 4, rng);
  CHECK(inflection_scheme(c).lines.total_multiplicity() == 24);
}

TEST_CASE("flex lines are equivariant") {
  std::mt19937_64 rng(23);
  Field f = Field::prime(13);
  for (int trial = 0; trial < 4; ++trial) {
    PlaneCurve c = random_smooth(f, trial < 2 ? 3 : 4, rng);
    ExactMatrix m = random_invertible(f, rng);
    PlaneCurve moved(linear_change(c.form(), m));
    LineConfiguration a = inflection_scheme(c).lines, b = inflection_scheme(moved).lines;
    // Lines of F(M v) are M^T applied to the lines of F.
    LineConfiguration mapped(f, c.degree());
    for (const auto& e : a.entries()) mapped.add(transform_line(m.transpose(), e.line), e.multiplicity, e.kind);
    if (a.residual_degree() > 0) mapped.set_residual(linear_change(a.residual(), m), a.residual_degrees());
    CHECK(mapped.same_lines(b));
  }
}

TEST_CASE("flexes at smooth points of singular curves") {
  Field q = Field::rationals();
  InflectionResult cusp = smooth_point_flexes(C(q, "y^2*z-x^3"));
  CHECK(cusp.total_multiplicity == 1);
  REQUIRE(cusp.points.size() == 1);
  CHECK(cusp.points[0].first == pt(q, 0, 1, 0));
  CHECK(cusp.lines.find(pt(q, 0, 0, 1)).has_value());
  InflectionResult node = smooth_point_flexes(C(q, "y^2*z-x^2*(x+z)"));
  CHECK(node.total_multiplicity == 3);
  Field f = Field::prime(11);
  InflectionResult node11 = smooth_point_flexes(C(f, "y^2*z-x^2*(x+z)"));
  CHECK(node11.total_multiplicity == 3);
  std::set<ProjPoint> got;
  for (const auto& [p, m] : node11.points) got.insert(p);
  CHECK(got == brute_flexes(C(f, "y^2*z-x^2*(x+z)")));
  CHECK_THROWS_AS(inflection_scheme(C(q, "y^2*z-x^3")), Error);
  CHECK_THROWS_AS(smooth_point_flexes(C(Field::prime(2), "y^2*z+x^3")), Error);
}

TEST_CASE("dual curves") {
  Field f = Field::prime(7);
  PlaneCurve fermat = C(f, "x^3+y^3+z^3");
  PlaneCurve d = dual_curve(fermat);
  CHECK(d.degree() == 6);
  // Tangent lines at curve points lie on the dual.
  for (const auto& p : all_points(f))
    if (fermat.contains(p)) CHECK(d.contains(tangent_line(fermat, p)));
  // Its singular points are nine cusps at the flex lines.
  SingularLocus sing = singular_points(d);
  CHECK(sing.residual_points == 0);
  REQUIRE(sing.points.size() == 9);
  LineConfiguration flex = inflection_scheme(fermat).lines;
  for (const auto& s : sing.points) {
    CHECK(s.kind == SingularityKind::cusp);
    CHECK(flex.find(s.point).has_value());
  }
  CHECK(dual_curve(fermat, false).degree() == 6);

  Field q = Field::rationals();
  CHECK(dual_curve(C(q, "y^2*z-x^2*(x+z)")).degree() == 4);
  CHECK(dual_curve(C(q, "y^2*z-x^3")).degree() == 3);
  CHECK(dual_curve(C(q, "x^2+y^2-z^2")) == C(q, "x^2+y^2-z^2"));
  CHECK_THROWS_AS(dual_curve(C(q, "x*(x^2+y^2-z^2)")), Error);

  // Biduality for smooth cubics over GF(p), p > 3.
  std::mt19937_64 rng(29);
  for (std::uint64_t p : {5ULL, 7ULL, 11ULL}) {
    PlaneCurve c = random_smooth(Field::prime(p), 3, rng);
    CHECK(dual_curve(dual_curve(c)) == c);
  }

  // Char 2: the Gauss map is inseparable and the reduced image is a cubic.
  Field f4 = Field::galois(2, 2);
  for (int trial = 0; trial < 3; ++trial) {
    PlaneCurve c = random_smooth(f4, 3, rng);
    PlaneCurve dc = dual_curve(c);
    CHECK(dc.degree() == 3);
    for (const auto& p : all_points(f4))
      if (c.contains(p)) CHECK(dc.contains(tangent_line(c, p)));
    CHECK(dual_curve(c, false).degree() == 6);
  }

  // A smooth quartic has a dual of degree 12.
  PlaneCurve quartic = random_smooth(Field::prime(31), 4, rng);
  CHECK(dual_curve(quartic).degree() == 12);
}

TEST_CASE("j-invariant") {
  Field q = Field::rationals();
  CHECK(j_invariant(C(q, "x^3+y^3+z^3")).is_zero());
  CHECK(j_invariant(C(Field::prime(7), "x^3+y^3+z^3")).is_zero());
  Field f2 = Field::prime(2);
  CHECK(j_invariant(C(f2, "y^2*z+y*z^2+x^3")).is_zero());
  // y^2 + x y = x^3 + a6 has j = 1 / a6.
  CHECK(j_invariant(C(f2, "y^2*z+x*y*z+x^3+z^3")).is_one());
  Field f16 = Field::galois(2, 4);
  Scalar a6 = f16.generator();
  HomogeneousPoly w = HomogeneousPoly::parse(f16, "y^2*z+x*y*z+x^3") + HomogeneousPoly::parse(f16, "z^3") * a6;
  CHECK(j_invariant(PlaneCurve(w)) == a6.inverse());
  // Short Weierstrass oracle over Q: y^2 = x^3 + a x + b has j = 6912 a^3 / (4 a^3 + 27 b^2).
  Scalar jw = j_invariant(C(q, "y^2*z-x^3-2*x*z^2-3*z^3"));
  CHECK(jw == q.from_int(6912 * 8) / q.from_int(4 * 8 + 27 * 9));
  // Legendre-type oracle: j(Hesse member) = 27 l^3 (l^3 + 8)^3 / (l^3 - 1)^3.
  Field f13 = Field::prime(13);
  for (int l : {2, 5, 6, 7, 11}) {
    Scalar lam = f13.from_int(l);
    if (lam.pow(3).is_one()) continue;
    Scalar expect = f13.from_int(27) * lam.pow(3) * (lam.pow(3) + f13.from_int(8)).pow(3) / (lam.pow(3) - f13.one()).pow(3);
    CHECK(j_invariant(hesse_member(lam).curve) == expect);
  }
  // Invariance under coordinate changes; residual-flex curves use an extension.
  std::mt19937_64 rng(31);
  for (const Field& f : {Field::prime(5), Field::prime(11), Field::galois(2, 2), Field::galois(2, 3)}) {
    for (int trial = 0; trial < 3; ++trial) {
      PlaneCurve c = random_smooth(f, 3, rng);
      Scalar j = j_invariant(c);
      CHECK(j_invariant(PlaneCurve(linear_change(c.form(), random_invertible(f, rng)))) == j);
    }
  }
  CHECK_THROWS_AS(j_invariant(C(Field::prime(3), "x^3+y^3+z^3+x*y*z")), Error);
  CHECK_THROWS_AS(j_invariant(C(q, "y^2*z-x^3")), Error);
  // x^3 + 2 y^3 + 4 z^3 has no rational flex.
  CHECK_THROWS_AS(j_invariant(C(q, "x^3+2*y^3+4*z^3")), Error);
}

TEST_CASE("Hasse invariant") {
  Field f2 = Field::prime(2);
  CHECK(hasse_invariant(HomogeneousPoly::parse(f2, "y^2*z+y*z^2+x^3")).is_zero());
  CHECK(hasse_invariant(HomogeneousPoly::parse(f2, "y^2*z+x*y*z+x^3+z^3")).is_one());
  Field f5 = Field::prime(5);
  CHECK(hasse_invariant(HomogeneousPoly::parse(f5, "y^2*z-x^3-z^3")).is_zero());
  CHECK_FALSE(hasse_invariant(HomogeneousPoly::parse(f5, "y^2*z-x^3-x*z^2")).is_zero());
  // Char 2: zero Hasse invariant exactly when j = 0.
  std::mt19937_64 rng(37);
  Field f4 = Field::galois(2, 2);
  for (int trial = 0; trial < 6; ++trial) {
    PlaneCurve c = random_smooth(f4, 3, rng);
    CHECK(hasse_invariant(c.form()).is_zero() == j_invariant(c).is_zero());
  }
}

TEST_CASE("Hesse members") {
  Field f7 = Field::prime(7);
  HesseMember h = hesse_member(f7.zero());
  CHECK(h.curve == C(f7, "x^3+y^3+z^3"));
  CHECK(h.lines.find(pt(f7, 1, 1, 0)).has_value());
  CHECK(h.lines.find(pt(f7, 1, 2, 0)).has_value());
  CHECK(h.lines.find(pt(f7, 1, 4, 0)).has_value());
  CHECK(h.lines.entries().size() == 9);
  CHECK_THROWS_AS(hesse_member(f7.one()), Error);
  CHECK_THROWS_AS(hesse_member(f7.from_int(2)), Error);
  CHECK_THROWS_AS(hesse_member(Field::prime(5).from_int(2)), Error);
  CHECK_THROWS_AS(hesse_member(Field::prime(3).from_int(2)), Error);
  for (const Field& f : {f7, Field::prime(13)}) {
    int checked = 0;
    for (std::uint64_t i = 0; i < f.order() && checked < 10; ++i) {
      Scalar lam = f.element(i);
      if (lam.pow(3).is_one()) continue;
      HesseMember m = hesse_member(lam);
      CHECK(m.lines.same_lines(inflection_scheme(m.curve).lines));
      ++checked;
    }
  }
  // Char 2 with a cube root of unity.
  Field f4 = Field::galois(2, 2);
  HesseMember m4 = hesse_member(f4.zero());
  CHECK(m4.lines.same_lines(inflection_scheme(m4.curve).lines));
}
