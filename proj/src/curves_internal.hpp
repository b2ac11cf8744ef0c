#ifndef FLEXLINES_CURVES_INTERNAL_HPP
#define FLEXLINES_CURVES_INTERNAL_HPP

#include <vector>

#include "flexlines/curves.hpp"
#include "flexlines/elimination.hpp"

namespace flex::detail {

// F(p + s r) as a polynomial in s.
UniPoly restrict_to_line(const HomogeneousPoly& f, const Point3& p, const Point3& r);
// Distinct base-field points of V(F) on L; F must not vanish on L.
std::vector<ProjPoint> points_on_line(const HomogeneousPoly& f, const ProjLine& l);
// Two distinct base-field points spanning L.
std::pair<ProjPoint, ProjPoint> line_basis(const ProjLine& l);

// Branch of k[x]/(g) on which a set of polynomials in y has gcd h (monic,
// coefficients reduced modulo g). g is squarefree.
struct GcdBranch {
  UniPoly modulus;
  YPoly gcd;
};
std::vector<GcdBranch> gcd_over_quotient(const std::vector<YPoly>& polys, const UniPoly& g);
UniPoly squarefree_part(const UniPoly& f);

// Affine singular locus of F(x, y, 1) where F has a nonzero y^d coefficient.
// Returns nullopt when elimination degenerates in these coordinates.
std::optional<std::vector<GcdBranch>> affine_singular_branches(const HomogeneousPoly& f);
// Singular points of F on z = 0 over the base field, plus the number outside it.
std::vector<ProjPoint> singular_points_at_infinity(const HomogeneousPoly& f, int& residual);

// Norm form prod (A(t) u + B(t) v + C(t) w) over the roots t of r, for
// coefficient polynomials reduced modulo r. Homogeneous of degree deg r.
HomogeneousPoly norm_form(const UniPoly& r, const UniPoly& a, const UniPoly& b, const UniPoly& c);

}  // namespace flex::detail

#endif
