#include <doctest.h>

#include <random>

#include "flexlines/elimination.hpp"
#include "flexlines/matrix.hpp"
#include "flexlines/poly.hpp"

using namespace flex;

namespace {

HomogeneousPoly P(const Field& f, const char* s) { return HomogeneousPoly::parse(f, s); }

HomogeneousPoly random_form(const Field& f, int d, std::mt19937_64& rng) {
  HomogeneousPoly p(f, d);
  for (int i = d; i >= 0; --i)
    for (int j = d - i; j >= 0; --j) p.set(i, j, d - i - j, f.random(rng));
  return p;
}

ExactMatrix random_invertible(const Field& f, std::mt19937_64& rng) {
  for (;;) {
    ExactMatrix m(f, 3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = f.random(rng);
    if (!determinant(m).is_zero()) return m;
  }
}

// Cofactor expansion, independent of the elimination code.
Scalar det3(const std::array<std::array<Scalar, 3>, 3>& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

}  // namespace

TEST_CASE("form arithmetic anchors") {
  Field q = Field::rationals();
  CHECK(P(q, "x^3+y^3+z^3").partial(0) == P(q, "3*x^2"));
  Field f3 = Field::prime(3);
  CHECK(P(f3, "x^3").partial(0).is_zero());
  CHECK(P(q, "(x+y)*(x-y)") == P(q, "x^2-y^2"));
  CHECK((P(q, "x+y") * P(q, "x-y")).to_string() == "x^2-y^2");
  CHECK_THROWS_AS(P(q, "x^2") + P(q, "x"), Error);
  CHECK_THROWS_AS(P(q, "x") + P(Field::prime(5), "x"), Error);
}

TEST_CASE("parse and print round trip") {
  Field q = Field::rationals();
  for (const char* s : {"3*x^2*y-z^3+5*x*y*z", "1/2*x-2/3*y", "-x^4+y^4-7*z^4", "0"}) {
    HomogeneousPoly p = P(q, s);
    CHECK(P(q, p.to_string().c_str()) == p);
  }
  CHECK(P(q, "3*x^2*y - z^3").to_string() == "3*x^2*y-z^3");
  Field gf9 = Field::galois(3, 2);
  HomogeneousPoly e = P(gf9, "(t+1)*x^2 + t*y*z - 2*z^2");
  CHECK(P(gf9, e.to_string().c_str()) == e);
  CHECK_THROWS_AS(P(Field::prime(7), "t*x"), Error);
  CHECK_THROWS_AS(P(q, "x^"), Error);
  CHECK_THROWS_AS(P(q, "x + * y"), Error);
  // Inhomogeneous input is homogenized with z.
  CHECK(P(q, "x^2 + y + 1") == P(q, "x^2 + y*z + z^2"));
  std::mt19937_64 rng(11);
  Field gf16 = Field::galois(2, 4);
  for (int it = 0; it < 20; ++it) {
    HomogeneousPoly r = random_form(gf16, 4, rng);
    CHECK(P(gf16, r.to_string().c_str()) == r);
  }
}

TEST_CASE("hessian") {
  Field q = Field::rationals();
  CHECK(hessian_det(P(q, "x^3+y^3+z^3")) == P(q, "216*x*y*z"));
  CHECK(hessian_det(P(q, "x^3")).is_zero());
  CHECK_THROWS_AS(hessian_det(P(q, "x^2")), Error);
  // Hesse base point [1, -1, 0] lies on the Hessian of every member.
  Field f13 = Field::prime(13);
  for (int lam = 0; lam < 13; ++lam) {
    HomogeneousPoly c = P(f13, "x^3+y^3+z^3") - P(f13, "3*x*y*z") * f13.from_int(lam);
    CHECK(hessian_det(c)({f13.one(), -f13.one(), f13.zero()}).is_zero());
  }
  std::mt19937_64 rng(5);
  Field f101 = Field::prime(101);
  for (int it = 0; it < 10; ++it) {
    HomogeneousPoly f = random_form(f101, 3 + it % 2, rng);
    ExactMatrix m = random_invertible(f101, rng);
    Scalar d = determinant(m);
    CHECK(hessian_det(linear_change(f, m)) == linear_change(hessian_det(f), m) * (d * d));
  }
}

TEST_CASE("resultants") {
  Field q = Field::rationals();
  CHECK(resultant(P(q, "x^2-z^2"), P(q, "x-z"), 0).is_zero());
  // Sylvester [[1, -a], [1, -b]] has determinant a - b.
  HomogeneousPoly r = resultant(P(q, "x-3*z"), P(q, "x-5*z"), 0);
  CHECK(r == P(q, "-2*z"));
  HomogeneousPoly conic = P(q, "x^2+y^2-z^2");
  HomogeneousPoly rc = resultant(conic, conic.partial(0), 0);
  // Direct 3x3 Sylvester determinant at sample (y, z).
  for (int y = -3; y <= 3; ++y)
    for (int z = -2; z <= 2; ++z) {
      Scalar c0 = q.from_int(y * y - z * z);
      std::array<std::array<Scalar, 3>, 3> s{{{q.one(), q.zero(), c0}, {q.from_int(2), q.zero(), q.zero()}, {q.zero(), q.from_int(2), q.zero()}}};
      CHECK(rc({q.zero(), q.from_int(y), q.from_int(z)}) == det3(s));
    }
  CHECK(rc == P(q, "4*y^2-4*z^2"));
  CHECK_THROWS_AS(resultant(P(q, "y^2"), P(q, "x"), 0), Error);

  std::mt19937_64 rng(9);
  Field f31 = Field::prime(31);
  for (int it = 0; it < 10; ++it) {
    HomogeneousPoly a = random_form(f31, 3, rng), b = random_form(f31, 2, rng), c = random_form(f31, 2, rng);
    for (auto* p : {&a, &b, &c}) p->set(p->degree(), 0, 0, f31.one());
    HomogeneousPoly rab = resultant(a, b, 0), rba = resultant(b, a, 0);
    CHECK(rab == rba);  // (-1)^(3*2) = 1
    CHECK(resultant(b, c, 0) == resultant(c, b, 0));
    CHECK(resultant(a, b * c, 0) == rab * resultant(a, c, 0));
    HomogeneousPoly l = random_form(f31, 1, rng);
    l.set(1, 0, 0, f31.one());
    CHECK(resultant(a, l, 0) == -resultant(l, a, 0));
  }
}

TEST_CASE("gcd, exact division, squarefree") {
  Field q = Field::rationals();
  CHECK(gcd(P(q, "(x+y)*(x-z)"), P(q, "(x+y)*(y+2*z)")) == P(q, "x+y"));
  CHECK(gcd(P(q, "z^2*(x-y)"), P(q, "z*(x+y)")) == P(q, "z"));
  CHECK(gcd(P(q, "x^2+y^2"), P(q, "x*y")).degree() == 0);
  CHECK(*divide_exact(P(q, "x^3-y^3"), P(q, "x-y")) == P(q, "x^2+x*y+y^2"));
  CHECK(!divide_exact(P(q, "x^3-y^3"), P(q, "x+y")).has_value());
  CHECK(gcd_and_squarefree(P(q, "(x+y)^2*z")).squarefree == P(q, "(x+y)*z"));
  CHECK(!gcd_and_squarefree(P(q, "(x+y)^2*z")).is_squarefree);
  Field f2 = Field::prime(2);
  CHECK(gcd_and_squarefree(P(f2, "x^2+y^2")).squarefree == P(f2, "x+y"));
  Field f7 = Field::prime(7);
  HomogeneousPoly sextic = P(f7, "x^6+y^6+z^6+x*y^2*z^3");
  auto sq = gcd_and_squarefree(sextic);
  CHECK(sq.is_squarefree);
  CHECK(sq.squarefree == sextic);
  // Char 3 with a cube factor: (x + y)^3 (y - z).
  Field f3 = Field::prime(3);
  CHECK(gcd_and_squarefree(P(f3, "(x+y)^3*(y-z)")).squarefree == P(f3, "(x+y)*(y-z)"));
  CHECK(gcd_and_squarefree(P(f3, "(x+y)^4*(x-z)^2")).squarefree == P(f3, "(x+y)*(x-z)"));
  Field gf4 = Field::galois(2, 2);
  CHECK(gcd_and_squarefree(P(gf4, "(x+t*y)^2*(x+z)^3")).squarefree == P(gf4, "(x+t*y)*(x+z)"));
}

TEST_CASE("linear change") {
  Field q = Field::rationals();
  ExactMatrix swap = ExactMatrix::from_rows(q, {{q.zero(), q.one(), q.zero()}, {q.one(), q.zero(), q.zero()}, {q.zero(), q.zero(), q.one()}});
  CHECK(linear_change(P(q, "x^3+2*y^3"), swap) == P(q, "y^3+2*x^3"));
  HomogeneousPoly f = P(q, "x^3+y^2*z-5*x*z^2");
  CHECK(linear_change(f, ExactMatrix::identity(q, 3)) == f);
  std::mt19937_64 rng(2);
  for (int it = 0; it < 5; ++it) {
    ExactMatrix m = random_invertible(q, rng);
    CHECK(linear_change(linear_change(f, m), inverse(m)) == f);
    Point3 v{q.from_int(it), q.from_int(2), q.from_int(-1)};
    auto mv = m * std::vector<Scalar>(v.begin(), v.end());
    CHECK(linear_change(f, m)(v) == f({mv[0], mv[1], mv[2]}));
  }
  ExactMatrix sing(q, 3, 3);
  CHECK_THROWS_AS(linear_change(f, sing), Error);
}

TEST_CASE("exact linear algebra") {
  Field q = Field::rationals();
  CHECK(nullspace(ExactMatrix::identity(q, 3)).empty());
  CHECK(nullspace(ExactMatrix(q, 2, 3)).size() == 3);
  std::mt19937_64 rng(4);
  for (Field f : {q, Field::prime(13), Field::galois(2, 3)}) {
    for (int it = 0; it < 10; ++it) {
      const std::size_t r = 3 + it % 4, c = 7;
      ExactMatrix m(f, r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = f.random(rng);
      if (it % 3 == 0)  // force a dependent row
        for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) + m(1, j);
      auto ns = nullspace(m);
      CHECK(ns.size() == c - rank(m));
      for (const auto& v : ns)
        for (const auto& e : m * v) CHECK(e.is_zero());
    }
  }
  ExactMatrix a = ExactMatrix::from_rows(q, {{q.from_int(2), q.one()}, {q.from_int(7), q.from_int(4)}});
  CHECK(determinant(a) == q.one());
  CHECK(a * inverse(a) == ExactMatrix::identity(q, 2));
}

TEST_CASE("subresultant and bivariate gcd") {
  Field f = Field::prime(101);
  // f = (y - x)(y - 2), g = (y - x)(y + x + 1): common factor y - x.
  HomogeneousPoly a = P(f, "(y-x)*(y-2*z)"), b = P(f, "(y-x)*(y+x+z)");
  YPoly g = gcd_y(dehomogenize(a), dehomogenize(b));
  CHECK(homogenize(f, g, 1).normalized() == P(f, "x-y"));
  // Subresultant root recovers the common y for each x where the resultant vanishes.
  HomogeneousPoly c = P(f, "y^2-x*z"), d = P(f, "y^2+y*z-3*x*z");
  auto [s10, s11] = first_subresultant(dehomogenize(c), dehomogenize(d));
  UniPoly res = resultant_y(dehomogenize(c), dehomogenize(d));
  for (const Scalar& x0 : distinct_roots(res)) {
    if (s11(x0).is_zero()) continue;
    Scalar y0 = -s10(x0) / s11(x0);
    CHECK(c({x0, y0, f.one()}).is_zero());
    CHECK(d({x0, y0, f.one()}).is_zero());
  }
}
