#ifndef FLEXLINES_UNIVARIATE_HPP
#define FLEXLINES_UNIVARIATE_HPP

#include <utility>
#include <vector>

#include "flexlines/field.hpp"

namespace flex {

// Dense univariate polynomial, coefficients low to high, no trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(const Field& f) : f_(f) {}
  UniPoly(const Field& f, std::vector<Scalar> coeffs);
  static UniPoly constant(const Scalar& c);
  static UniPoly monomial(const Scalar& c, int degree);
  static UniPoly x(const Field& f);

  const Field& field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Scalar coeff(int i) const;
  Scalar lead() const;
  const std::vector<Scalar>& coeffs() const { return c_; }

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(UniPoly a, const Scalar& s);
  UniPoly operator-() const;
  friend bool operator==(const UniPoly& a, const UniPoly& b);
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  UniPoly monic() const;
  UniPoly derivative() const;
  Scalar operator()(const Scalar& t) const;
  // Coefficientwise p-th root of a polynomial in x^p (finite fields).
  UniPoly pth_root() const;

 private:
  Field f_;
  std::vector<Scalar> c_;
  void trim();
};

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly operator/(const UniPoly& a, const UniPoly& b);  // quotient
UniPoly operator%(const UniPoly& a, const UniPoly& b);  // remainder
UniPoly gcd(UniPoly a, UniPoly b);                       // monic, gcd(0,0) = 0
// Returns (g, s) with s*a = g mod m, g = gcd(a, m) monic.
std::pair<UniPoly, UniPoly> inverse_mod(const UniPoly& a, const UniPoly& m);
UniPoly powmod(UniPoly base, const mpz_class& e, const UniPoly& m);
UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& m);
// Resultant with the standard normalization lc(a)^deg b lc(b)^deg a prod(alpha_i - beta_j).
Scalar resultant(const UniPoly& a, const UniPoly& b);

// Squarefree factorization: pairs (factor, multiplicity) with pairwise coprime
// monic squarefree factors, in every characteristic.
std::vector<std::pair<UniPoly, int>> squarefree_factorization(const UniPoly& f);

struct RootReport {
  std::vector<std::pair<Scalar, int>> roots;  // sorted canonically
  // Finite fields: degrees of the irreducible nonlinear factors (with repetition).
  // Q: degrees of the squarefree parts left after removing rational roots.
  std::vector<int> residual_degrees;
};

RootReport univariate_roots(const UniPoly& f);
RootReport univariate_roots(const std::vector<Scalar>& coeffs);
// Distinct roots in the base field of a squarefree polynomial; faster path.
std::vector<Scalar> distinct_roots(const UniPoly& f);

// One root of a squarefree product of distinct linear factors over a finite field.
Scalar any_root(const UniPoly& f);
// Lagrange interpolation through (xs[i], ys[i]); xs pairwise distinct.
UniPoly interpolate(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys);

// Moves polynomial coefficients along an embedding.
UniPoly map_up(const UniPoly& f, const FieldEmbedding& e);

}  // namespace flex

#endif
