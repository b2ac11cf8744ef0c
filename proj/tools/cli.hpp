#ifndef FLEXLINES_TOOLS_CLI_HPP
#define FLEXLINES_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "flexlines/curves.hpp"

namespace flex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;

// One invocation; args excludes the program name. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Record list {a, b, c, multiplicity, kind} plus the residual and totals.
nlohmann::json configuration_to_json(const LineConfiguration& cfg);
// Accepts the object above or a bare record list (ambient degree 4).
LineConfiguration configuration_from_json(const Field& f, const nlohmann::json& j);

}  // namespace flex::cli

#endif
