#ifndef FLEXLINES_POLY_HPP
#define FLEXLINES_POLY_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flexlines/field.hpp"
#include "flexlines/matrix.hpp"

namespace flex {

using Point3 = std::array<Scalar, 3>;

// Ternary form of fixed degree, stored densely in lexicographic term order
// (x^d, x^(d-1) y, x^(d-1) z, ..., z^d).
class HomogeneousPoly {
 public:
  HomogeneousPoly() = default;
  HomogeneousPoly(const Field& f, int degree);
  static HomogeneousPoly constant(const Scalar& c);
  static HomogeneousPoly monomial(const Scalar& c, int i, int j, int k);
  static HomogeneousPoly variable(const Field& f, int var);  // 0 = x, 1 = y, 2 = z
  static HomogeneousPoly linear(const Point3& coeffs);       // a x + b y + c z

  const Field& field() const { return f_; }
  int degree() const { return d_; }
  bool is_zero() const;
  std::size_t size() const { return c_.size(); }

  static std::size_t index(int d, int i, int j) {
    const int a = d - i;
    return static_cast<std::size_t>(a * (a + 1) / 2 + (a - j));
  }
  Scalar coeff(int i, int j, int k) const;
  void set(int i, int j, int k, const Scalar& c);
  void add_to(int i, int j, int k, const Scalar& c);
  // Terms in storage order; the callback receives (i, j, k, coefficient).
  void for_each_term(const std::function<void(int, int, int, const Scalar&)>& fn) const;
  const std::vector<Scalar>& dense() const { return c_; }
  // First nonzero coefficient in lexicographic order (zero if none).
  Scalar leading_coefficient() const;

  HomogeneousPoly& operator+=(const HomogeneousPoly& o);
  HomogeneousPoly& operator-=(const HomogeneousPoly& o);
  friend HomogeneousPoly operator+(HomogeneousPoly a, const HomogeneousPoly& b) { return a += b; }
  friend HomogeneousPoly operator-(HomogeneousPoly a, const HomogeneousPoly& b) { return a -= b; }
  friend HomogeneousPoly operator*(const HomogeneousPoly& a, const HomogeneousPoly& b);
  friend HomogeneousPoly operator*(HomogeneousPoly a, const Scalar& s);
  HomogeneousPoly operator-() const;
  friend bool operator==(const HomogeneousPoly& a, const HomogeneousPoly& b);
  friend bool operator!=(const HomogeneousPoly& a, const HomogeneousPoly& b) { return !(a == b); }
  HomogeneousPoly pow(int e) const;

  HomogeneousPoly partial(int var) const;
  // Divided second derivative: binom(i, 2) x^(i-2) for a == b, the mixed
  // partial otherwise. Well defined in characteristic 2.
  HomogeneousPoly hasse2(int a, int b) const;
  Scalar operator()(const Point3& v) const;
  // Scales so that the leading coefficient is 1; zero stays zero.
  HomogeneousPoly normalized() const;

  std::string to_string() const;
  static HomogeneousPoly parse(const Field& f, std::string_view text);

 private:
  Field f_;
  int d_ = 0;
  std::vector<Scalar> c_;
};

HomogeneousPoly partial_derivative(const HomogeneousPoly& f, int var);
HomogeneousPoly hessian_det(const HomogeneousPoly& f);
// F(M v): substitute (x, y, z) -> M (x, y, z).
HomogeneousPoly linear_change(const HomogeneousPoly& f, const ExactMatrix& m);
// Resultant with respect to var, Sylvester convention: F rows first, decreasing degree.
HomogeneousPoly resultant(const HomogeneousPoly& f, const HomogeneousPoly& g, int var);

std::optional<HomogeneousPoly> divide_exact(const HomogeneousPoly& f, const HomogeneousPoly& g);
// Normalized gcd of two forms (gcd with zero is the other argument).
HomogeneousPoly gcd(const HomogeneousPoly& f, const HomogeneousPoly& g);

struct SquarefreeResult {
  HomogeneousPoly derivative_gcd;  // gcd(F, F_x, F_y, F_z), normalized
  HomogeneousPoly squarefree;      // normalized squarefree part
  bool is_squarefree = false;
};
SquarefreeResult gcd_and_squarefree(const HomogeneousPoly& f);

// Coefficientwise p-th root of a form all of whose exponents are multiples of p.
HomogeneousPoly pth_root(const HomogeneousPoly& f);

HomogeneousPoly map_up(const HomogeneousPoly& f, const FieldEmbedding& e);
// Nullopt when some coefficient is outside the base field.
std::optional<HomogeneousPoly> map_down(const HomogeneousPoly& f, const FieldEmbedding& e);

}  // namespace flex

#endif
