#ifndef FLEXLINES_CUBIC_RECON_HPP
#define FLEXLINES_CUBIC_RECON_HPP

#include <optional>
#include <vector>

#include "flexlines/curves.hpp"

namespace flex {

// Nine distinct points of the dual plane, the candidate inflection lines of a cubic.
class NinePointInput {
 public:
  explicit NinePointInput(std::vector<ProjPoint> points);  // InvalidInput unless nine distinct points
  static NinePointInput from_lines(const LineConfiguration& lines);

  const std::vector<ProjPoint>& points() const { return points_; }
  Field field() const { return points_.front().field(); }

 private:
  std::vector<ProjPoint> points_;
};

// Basis of the sextics singular at all nine points.
struct SexticPencil {
  HomogeneousPoly first;
  HomogeneousPoly second;
};

SexticPencil sextics_singular_at(const NinePointInput& input);
// The reduced member of the pencil with a cusp at `at`, verified to have cusps
// at all nine points. With allow_extension a non-split cusp condition over a
// finite field is solved over the quadratic extension.
PlaneCurve cusp_member(const SexticPencil& pencil, const ProjPoint& at, const NinePointInput& input,
                       bool allow_extension = false);
// Basis of the cubics through the nine points (one or two forms).
std::vector<HomogeneousPoly> cubics_through(const NinePointInput& input);

struct Reconstruction {
  PlaneCurve cubic;
  PlaneCurve dual;              // cuspidal sextic, or the cubic of tangent lines in characteristic 2
  int cubics_dimension = 0;     // characteristic 2 only
  LineConfiguration lines;      // inflection lines of the recovered cubic
};

// The smooth cubic whose inflection lines are the input, verified by recomputing them.
Reconstruction reconstruct(const NinePointInput& input, bool allow_extension = false);
PlaneCurve reconstruct_cubic(const NinePointInput& input, bool allow_extension = false);

}  // namespace flex

#endif
