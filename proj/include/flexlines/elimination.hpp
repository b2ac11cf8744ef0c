#ifndef FLEXLINES_ELIMINATION_HPP
#define FLEXLINES_ELIMINATION_HPP

#include <utility>
#include <vector>

#include "flexlines/poly.hpp"
#include "flexlines/univariate.hpp"

namespace flex {

// Affine view F(x, y, 1) as a polynomial in y over k[x]; entry j is the
// coefficient of y^j. No trailing zero entries.
using YPoly = std::vector<UniPoly>;

YPoly dehomogenize(const HomogeneousPoly& f);
HomogeneousPoly homogenize(const Field& f, const YPoly& p, int degree);
int y_degree(const YPoly& p);
UniPoly at_x(const YPoly& p, const Scalar& x0);  // polynomial in y
// Coefficients of p reduced modulo m (entries in k[x]/(m)).
YPoly reduce_mod(const YPoly& p, const UniPoly& m);

// Fraction-free determinant over k[x].
UniPoly det_over_kx(std::vector<std::vector<UniPoly>> m);
// Res_y(f, g) with actual y-degrees, Sylvester convention f rows first.
UniPoly resultant_y(const YPoly& f, const YPoly& g);
// First subresultant S_1 = S11 * y + S10, returned as (S10, S11).
std::pair<UniPoly, UniPoly> first_subresultant(const YPoly& f, const YPoly& g);
// Primitive-PRS gcd in k[x][y].
YPoly gcd_y(YPoly a, YPoly b);

}  // namespace flex

#endif
