#ifndef BIHARM_CLI_HPP
#define BIHARM_CLI_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "biharm/io.hpp"
#include "biharm/limits.hpp"

namespace biharm::cli {

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
  std::filesystem::path config_path;
  std::optional<std::filesystem::path> out_override;
  bool strict = false;
  bool no_cache = false;
};

/// Validates the config, dispatches the command, writes artifacts (JSON
/// reports, CSV tables, field files, SVG plots) and returns the process exit
/// code: 0 ok, 2 schema violation, 3 resolution/band-limit, 4 numerical
/// degeneracy.
int run(const RunOptions& opt);

/// Same, for an already-parsed config.  Throws instead of returning codes.
std::vector<std::filesystem::path> run_config(const io::json& config,
                                              const std::filesystem::path& out_dir,
                                              bool strict);

/// Shared helpers (also used by the test suites).
Field build_input(const GridSpec& g, std::uint64_t seed, const io::json& spec);
Field build_synthetic_sum(const GridSpec& g, double mu, const io::json& bubbles);
io::json canonical_config(const io::json& config);
std::string config_cache_key(const io::json& config);

/// Env-var thread request (BIHARM_THREADS); evaluation loops are free to
/// consult it.
int requested_threads();

}  // namespace biharm::cli

#endif
