#ifndef FLEXLINES_TESTS_QUARTIC_SUPPORT_HPP
#define FLEXLINES_TESTS_QUARTIC_SUPPORT_HPP

#include <functional>
#include <string>
#include <vector>

#include "flexlines/quartic_lab.hpp"
#include "support.hpp"

namespace flex::testing {

inline HomogeneousPoly line_form(const ProjLine& l) { return HomogeneousPoly::linear(l.coords()); }

// Resamples until the curve lies in the class of curves with an inflection table.
inline PlaneCurve sample_in_v(const std::function<HomogeneousPoly()>& make, std::mt19937_64& rng) {
  for (;;) {
    HomogeneousPoly form = make();
    if (form.is_zero()) continue;
    const PlaneCurve c(linear_change(form, random_invertible(form.field(), rng)));
    if (QuarticClass(c).vclass_member()) return c;
  }
}

inline Scalar random_nonzero(const Field& f, std::mt19937_64& rng) {
  for (;;)
    if (Scalar s = f.random(rng); !s.is_zero()) return s;
}

// Point with parameter t on the conic x z = y^2.
inline ProjPoint conic_point(const Scalar& t) { return ProjPoint(t.field().one(), t, t * t); }

inline PlaneCurve cuspidal_quartic(const Field& f, std::mt19937_64& rng) {
  return sample_in_v([&] { return C(f, "y^2*z^2+x^3*z+x^4+y^4+x*y^3").form(); }, rng);
}

inline PlaneCurve tacnodal_quartic(const Field& f, std::mt19937_64& rng) {
  return sample_in_v([&] { return C(f, "y^2*z^2+y^3*z-x^4+x^3*y+y^4").form(); }, rng);
}

inline PlaneCurve nodal_quartic(const Field& f, std::mt19937_64& rng) {
  return sample_in_v([&] { return C(f, "y^2*z^2-x^2*z^2+x^4+y^4+x^3*y").form(); }, rng);
}

inline PlaneCurve nodal_cubic_plus_line(const Field& f, std::mt19937_64& rng) {
  return sample_nodal_cubic_plus_line(f, rng);
}

inline PlaneCurve two_tangent_conics(const Field& f, std::mt19937_64& rng) {
  const HomogeneousPoly conic = C(f, "x*z-y^2").form(), tangent = C(f, "z").form();
  return sample_in_v(
      [&] {
        const ProjLine chord = line_through(conic_point(f.random(rng)), conic_point(f.random(rng)));
        return conic * (conic + tangent * line_form(chord) * random_nonzero(f, rng));
      },
      rng);
}

inline PlaneCurve conic_plus_two_lines(const Field& f, std::mt19937_64& rng) {
  const HomogeneousPoly conic = C(f, "x*z-y^2").form();
  return sample_in_v(
      [&] {
        const auto chord = [&] {
          return line_form(line_through(conic_point(f.random(rng)), conic_point(f.random(rng))));
        };
        return conic * chord() * chord();
      },
      rng);
}

inline PlaneCurve four_lines(const Field& f, std::mt19937_64& rng) {
  return sample_in_v(
      [&] {
        HomogeneousPoly out = HomogeneousPoly::constant(f.one());
        for (int i = 0; i < 4; ++i) out = out * random_form(f, 1, rng);
        return out;
      },
      rng);
}

struct CurveClass {
  std::string name;
  std::function<PlaneCurve(const Field&, std::mt19937_64&)> make;
};

inline std::vector<CurveClass> table_classes() {
  return {{"cuspidal quartic", cuspidal_quartic},         {"tacnodal quartic", tacnodal_quartic},
          {"nodal quartic", nodal_quartic},               {"nodal cubic plus line", nodal_cubic_plus_line},
          {"two tangent conics", two_tangent_conics},     {"conic plus two lines", conic_plus_two_lines},
          {"four lines", four_lines}};
}

// A smoothing direction whose pencil has smooth members.
inline SmoothingPencil random_pencil(const PlaneCurve& central, std::mt19937_64& rng) {
  for (;;) {
    try {
      return SmoothingPencil(central, random_form(central.field(), 4, rng));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::GenericMemberSingular) throw;
    }
  }
}

inline std::vector<int> multiplicities(const LineConfiguration& cfg) {
  std::vector<int> out;
  for (const auto& e : cfg.entries()) out.push_back(e.multiplicity);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace flex::testing

#endif
