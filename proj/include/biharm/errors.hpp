#ifndef BIHARM_ERRORS_HPP
#define BIHARM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace biharm {

/// Base class for all toolkit errors.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration, schema violation, inadmissible exponents or caps.
struct schema_error : error {
  explicit schema_error(const std::string& msg) : error(msg) {}
};

/// A requested operation would push frequency content off the lattice.
/// Carries the per-axis point count that would make it representable.
struct resolution_error : error {
  int required_points;
  resolution_error(const std::string& msg, int required)
      : error(msg + " (requires points_per_axis >= " + std::to_string(required) + ")"),
        required_points(required) {}
};

/// Numerical degeneracy: collapsed iterates, stagnation, singular symbols.
struct degeneracy_error : error {
  explicit degeneracy_error(const std::string& msg) : error(msg) {}
};

}  // namespace biharm

#endif
