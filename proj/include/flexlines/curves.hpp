#ifndef FLEXLINES_CURVES_HPP
#define FLEXLINES_CURVES_HPP

#include <climits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flexlines/poly.hpp"

namespace flex {

// Point of P^2 with the first nonzero coordinate scaled to 1.
class ProjPoint {
 public:
  ProjPoint() = default;
  explicit ProjPoint(Point3 coords);  // InvalidInput if all coordinates vanish
  ProjPoint(const Scalar& a, const Scalar& b, const Scalar& c) : ProjPoint(Point3{a, b, c}) {}

  const Point3& coords() const { return c_; }
  const Scalar& operator[](std::size_t i) const { return c_[i]; }
  Field field() const { return c_[0].field(); }
  std::string to_string() const;

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b);

 private:
  Point3 c_;
};

// The line a x + b y + c z = 0, stored as the dual point [a, b, c].
using ProjLine = ProjPoint;

Scalar incidence(const ProjLine& l, const ProjPoint& p);
ProjLine line_through(const ProjPoint& p, const ProjPoint& q);
ProjPoint meet(const ProjLine& l, const ProjLine& m);
// Image of a point under v -> M v, and of a line under the contragredient action.
ProjPoint transform_point(const ExactMatrix& m, const ProjPoint& p);
ProjLine transform_line(const ExactMatrix& m_inverse_transpose, const ProjLine& l);
ProjPoint map_up(const ProjPoint& p, const FieldEmbedding& e);
std::optional<ProjPoint> map_down(const ProjPoint& p, const FieldEmbedding& e);

// Nonzero form up to scalar, stored with leading coefficient 1.
class PlaneCurve {
 public:
  PlaneCurve() = default;
  explicit PlaneCurve(const HomogeneousPoly& form);  // ZeroPolynomial for the zero form
  static PlaneCurve parse(const Field& f, std::string_view text);

  const HomogeneousPoly& form() const { return f_; }
  int degree() const { return f_.degree(); }
  Field field() const { return f_.field(); }
  bool contains(const ProjPoint& p) const { return f_(p.coords()).is_zero(); }
  std::string to_string() const { return f_.to_string(); }

  friend bool operator==(const PlaneCurve& a, const PlaneCurve& b) { return a.f_ == b.f_; }
  friend bool operator!=(const PlaneCurve& a, const PlaneCurve& b) { return !(a == b); }

 private:
  HomogeneousPoly f_;
};

enum class SingularityKind { node, cusp, tacnode, other };
std::string_view kind_name(SingularityKind k);

struct SingularPointInfo {
  ProjPoint point;
  SingularityKind kind = SingularityKind::other;
  // Split tangent cone lines with multiplicity (two lines for a split node, one
  // double line for cusps and tacnodes, empty for a non-split node or a point
  // of multiplicity >= 3).
  std::vector<std::pair<ProjLine, int>> tangent_cone;
  // Non-split node: the irreducible quadratic cone in the original coordinates.
  std::optional<HomogeneousPoly> irreducible_cone;
};

struct SingularLocus {
  std::vector<SingularPointInfo> points;  // base-field points, sorted
  int residual_points = 0;                // singular points outside the base field
};

bool is_smooth(const PlaneCurve& c);
SingularLocus singular_points(const PlaneCurve& c);

ProjLine tangent_line(const PlaneCurve& c, const ProjPoint& p);
inline constexpr int kInfiniteMultiplicity = INT_MAX;
// Order of vanishing of F restricted to L at p; kInfiniteMultiplicity when L is a component.
int line_curve_multiplicity(const PlaneCurve& c, const ProjLine& l, const ProjPoint& p);

enum class LineKind { type0, type1, degenerate, unknown };
std::string_view kind_name(LineKind k);

struct LineEntry {
  ProjLine line;
  int multiplicity = 0;
  LineKind kind = LineKind::unknown;
};

// Multiset of lines with multiplicities. Lines that are not defined over the
// base field are kept as a residual form in (x, y, z): the product of those
// lines, with multiplicity, as a plane curve.
class LineConfiguration {
 public:
  LineConfiguration() = default;
  LineConfiguration(const Field& f, int ambient_degree);

  // Adds multiplicity to an existing line (keeping its kind unless it is unknown).
  void add(const ProjLine& l, int multiplicity, LineKind kind);
  void set_residual(const HomogeneousPoly& form, std::vector<int> degrees);
  void multiply_residual(const HomogeneousPoly& form, const std::vector<int>& degrees);

  const std::vector<LineEntry>& entries() const { return entries_; }
  Field field() const { return f_; }
  int ambient_degree() const { return d_; }
  int total_multiplicity() const;  // split lines plus residual degree
  int expected_total() const { return 3 * d_ * (d_ - 2); }
  int residual_degree() const { return residual_.degree(); }
  const HomogeneousPoly& residual() const { return residual_; }
  const std::vector<int>& residual_degrees() const { return residual_degrees_; }
  bool complete() const { return residual_.degree() == 0 && total_multiplicity() == expected_total(); }
  std::vector<int> multiplicities() const;  // sorted descending
  std::optional<LineEntry> find(const ProjLine& l) const;

  // Equality of the line multisets and residual forms; kinds are ignored.
  bool same_lines(const LineConfiguration& o) const;
  std::string to_string() const;

 private:
  Field f_;
  int d_ = 0;
  std::vector<LineEntry> entries_;
  HomogeneousPoly residual_;
  std::vector<int> residual_degrees_;
};

struct InflectionResult {
  std::vector<std::pair<ProjPoint, int>> points;  // base-field flexes, sorted
  LineConfiguration lines;
  std::vector<int> residual_degrees;  // degrees of the unsplit flex clusters
  int total_multiplicity = 0;         // over the closure
};

// Flex scheme of a smooth curve of degree >= 3.
InflectionResult inflection_scheme(const PlaneCurve& c);
// Flexes at smooth points of a reduced curve without line components
// (singular points are excluded). Not available in characteristic 2.
InflectionResult smooth_point_flexes(const PlaneCurve& c);

// Lines over the base field contained in C, with their multiplicity in F.
std::vector<std::pair<ProjLine, int>> linear_components(const PlaneCurve& c);

// Dual curve in coordinates (u, v, w) = (x, y, z) of the dual plane.
// With reduced == false a smooth curve's dual carries the degree of the Gauss map.
PlaneCurve dual_curve(const PlaneCurve& c, bool reduced = true);

Scalar j_invariant(const PlaneCurve& c);
// Coefficient of (xyz)^(p-1) in F^(p-1); zero exactly for supersingular cubics.
Scalar hasse_invariant(const HomogeneousPoly& cubic);

struct HesseMember {
  PlaneCurve curve;
  LineConfiguration lines;
};
// x^3 + y^3 + z^3 - 3 lambda x y z with its nine flex lines.
HesseMember hesse_member(const Scalar& lambda);

// Shears used whenever a coordinate system has to be generic: the identity
// first, then unipotent matrices from a fixed-seed generator.
ExactMatrix shear(const Field& f, int index);
// Invertible matrix whose third column is p.
ExactMatrix chart_at(const ProjPoint& p);

}  // namespace flex

#endif
