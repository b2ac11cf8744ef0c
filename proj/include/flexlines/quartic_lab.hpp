#ifndef FLEXLINES_QUARTIC_LAB_HPP
#define FLEXLINES_QUARTIC_LAB_HPP

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "flexlines/curves.hpp"

namespace flex {

struct Component {
  HomogeneousPoly form;
  int degree = 0;
};

// A plane quartic with its singularities and component split.
class QuarticClass {
 public:
  explicit QuarticClass(const PlaneCurve& curve);  // DegreeMismatch unless degree 4

  const PlaneCurve& curve() const { return curve_; }
  const SingularLocus& singularities() const { return locus_; }
  const std::vector<Component>& components() const { return components_; }
  const std::vector<ProjLine>& line_components() const { return lines_; }
  // Reduced, only nodes, cusps and tacnodes (at most one), all over the base field.
  bool vclass_member() const { return reason_.empty(); }
  const std::string& rejection_reason() const { return reason_; }

 private:
  PlaneCurve curve_;
  SingularLocus locus_;
  std::vector<Component> components_;
  std::vector<ProjLine> lines_;
  std::string reason_;
};

// The family central + t * direction.
class SmoothingPencil {
 public:
  // GenericMemberSingular when no sampled member is smooth.
  SmoothingPencil(const PlaneCurve& central, const HomogeneousPoly& direction);

  const PlaneCurve& central() const { return central_; }
  const HomogeneousPoly& direction() const { return direction_; }
  HomogeneousPoly member(const Scalar& t) const { return central_.form() + direction_ * t; }

 private:
  PlaneCurve central_;
  HomogeneousPoly direction_;
};

// Inflection lines with multiplicities read from the singularity types and the
// flexes at smooth points. NotInV unless q.vclass_member().
LineConfiguration table_configuration(const QuarticClass& q);

// Flat limit at t = 0 of the inflection lines of the members of the pencil.
// Finite fields only (UnsupportedField otherwise).
LineConfiguration limit_configuration(const SmoothingPencil& pencil);

// Lines over the base field dividing a product of lines, with multiplicity; the
// rest is kept as the residual form.
LineConfiguration split_into_lines(const HomogeneousPoly& product, int ambient_degree);

// The same configuration over the smallest extension splitting its residual lines;
// unchanged when that extension exceeds 2^60 elements.
LineConfiguration split_over_extension(const LineConfiguration& config);

enum class GitVerdict { stable, strictly_semistable, unstable };
std::string_view verdict_name(GitVerdict v);

struct GitReport {
  GitVerdict verdict = GitVerdict::stable;
  ProjLine heaviest_line;
  int line_weight = 0;
  std::optional<ProjPoint> heaviest_point;  // none when the configuration is a single line
  int point_weight = 0;
};

// Semistable iff every point carries weight <= 16 and every line <= 8, stable iff strict.
GitReport git_check(const LineConfiguration& config);

struct UniquenessReport {
  bool configs_equal = false;
  bool curves_equal = false;
};

// Why q is not an irreducible nodal cubic plus a line meeting it transversally
// away from its flexes; nullopt when it is.
std::optional<std::string> nodal_cubic_line_defect(const QuarticClass& q);

// A random nodal cubic plus a line satisfying the hypotheses above (finite fields).
PlaneCurve sample_nodal_cubic_plus_line(const Field& f, std::mt19937_64& rng);

// Both curves must be a nodal irreducible cubic plus a line meeting it
// transversally away from its flexes (HypothesesNotMet otherwise).
UniquenessReport uniqueness_experiment(const QuarticClass& q1, const QuarticClass& q2);

}  // namespace flex

#endif
