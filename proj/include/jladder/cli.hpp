#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "jladder/error.hpp"
#include "jladder/hybrid.hpp"
#include "jladder/ladder.hpp"

namespace jladder {

inline constexpr const char* kCacheDirEnv = "JLADDER_CACHE_DIR";

struct RunConfig {
  double height_cap = 1.2e5;
  double target_abs_error = 1e-10;
  double step = 0.05;
  double t_max = 1.2e5;  // height the table subcommand builds to
  double invert_tol = 1e-8;
  double t0 = 200.0;
  double c0 = 0.0;
  double point_tol = 1e-9;
  double grid_step = 0.02;
  WeightMode weight_mode = WeightMode::Z2;
  std::string zeta_window;     // "re_min,re_max,im_min,im_max"; empty = default
  std::string partner_window;  // same, for the partner loci
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::filesystem::path cache_dir = "jladder-cache";
  std::filesystem::path out_dir = "jladder-out";

  EvalOptions eval_options() const;
  LadderConfig ladder_config() const;
};

/// Keys are the RunConfig field names; throws InvalidArgument on unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
/// Flat "key = value" lines; '#' starts a comment.
void apply_config_text(RunConfig& cfg, const std::string& text);
/// Checks positivity of tolerances and that the cache directory can be created.
void validate(const RunConfig& cfg);

/// 0 success, 1 usage error, 2 numerical failure, 3 invariant violation.
int exit_code(ErrorKind kind);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jladder
