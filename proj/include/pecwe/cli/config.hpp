#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "pecwe/analytics/patterns.hpp"
#include "pecwe/dates.hpp"

namespace pecwe {

/// Everything a command needs to run, after merging the four configuration
/// layers: command-line flag, then environment variable, then config file,
/// then built-in default. Higher layers win per key.
struct RunConfig {
  std::filesystem::path cache_dir = "pecwe_cache";
  std::string epss_source = "https://epss.cyentia.com";
  std::string nvd_source = "https://services.nvd.nist.gov";
  std::string catalog_source;  ///< empty means the bundled snapshot
  std::optional<std::string> nvd_api_key;

  std::optional<ScoreDate> from;
  std::optional<ScoreDate> to;
  std::string anchor = "wednesday";
  bool weekly = false;

  int round_decimals = 2;
  double threshold = 0.1;
  PatternParams pattern_params;

  std::string format = "csv";
  bool log_x = false;
  std::optional<std::string> cwe;
  bool all_cwes = false;
  std::optional<std::string> output_path;

  int workers = 4;
  int rate_limit = 0;  ///< 0 = pick by API key presence

  std::chrono::weekday anchor_weekday() const;
};

/// String-valued settings captured from one layer; absent keys fall
/// through to the next layer.
using ConfigLayer = std::map<std::string, std::string>;

/// Parses "key = value" lines; '#' starts a comment. Unknown keys are a
/// Usage error so typos surface instead of silently defaulting.
ConfigLayer parse_config_file(const std::filesystem::path& path);

/// Reads the PECWE_* environment variables as a layer.
ConfigLayer environment_layer();

/// Merges layers (flags strongest, defaults weakest) and validates every
/// value.
RunConfig resolve_config(const ConfigLayer& flags, const ConfigLayer& env,
                         const ConfigLayer& file);

/// One "key = value" line per setting, in fixed order. Secrets print as
/// (set)/(unset), never their value.
std::string show_config(const RunConfig& config);

/// Location of the bundled View-1003 snapshot.
std::filesystem::path bundled_catalog_path();

}  // namespace pecwe
