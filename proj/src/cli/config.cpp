#include "pecwe/cli/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "pecwe/errors.hpp"
#include "pecwe/util/numfmt.hpp"

#ifndef PECWE_DATA_DIR
#define PECWE_DATA_DIR "data"
#endif

namespace pecwe {
namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "cache_dir",   "epss_source",     "nvd_source",  "catalog_source",
      "nvd_api_key", "from",            "to",          "anchor",
      "weekly",      "round",           "threshold",   "abrupt_span",
      "min_step_span", "monotone_fraction", "format",  "log_x",
      "cwe",         "all",             "output",      "workers",
      "rate_limit",
  };
  return keys;
}

std::string trim(std::string_view text) {
  std::size_t b = text.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  std::size_t e = text.find_last_not_of(" \t\r");
  return std::string(text.substr(b, e - b + 1));
}

const std::string* lookup(const ConfigLayer& flags, const ConfigLayer& env,
                          const ConfigLayer& file, const std::string& key) {
  for (const ConfigLayer* layer : {&flags, &env, &file}) {
    auto it = layer->find(key);
    if (it != layer->end()) return &it->second;
  }
  return nullptr;
}

int parse_int(const std::string& text, const std::string& key, int lo, int hi) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < lo || value > hi) {
    fail(ErrorKind::Usage, key + " must be an integer in [" + std::to_string(lo) +
                               "," + std::to_string(hi) + "], got '" + text + "'");
  }
  return value;
}

double parse_double(const std::string& text, const std::string& key) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(ErrorKind::Usage, key + " must be a number, got '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  fail(ErrorKind::Usage, key + " must be true or false, got '" + text + "'");
}

}  // namespace

std::chrono::weekday RunConfig::anchor_weekday() const {
  using namespace std::chrono;
  static const std::map<std::string, weekday> names = {
      {"sunday", Sunday},     {"monday", Monday},   {"tuesday", Tuesday},
      {"wednesday", Wednesday}, {"thursday", Thursday}, {"friday", Friday},
      {"saturday", Saturday},
  };
  auto it = names.find(anchor);
  if (it == names.end()) {
    fail(ErrorKind::Usage, "anchor must be a weekday name, got '" + anchor + "'");
  }
  return it->second;
}

ConfigLayer parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorKind::Usage, "cannot open config file " + path.string());
  }
  ConfigLayer layer;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    auto eq = text.find('=');
    if (eq == std::string::npos) {
      fail(ErrorKind::Usage, path.string() + ":" + std::to_string(line_no) +
                                 ": expected 'key = value'");
    }
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (known_keys().count(key) == 0) {
      fail(ErrorKind::Usage, path.string() + ":" + std::to_string(line_no) +
                                 ": unknown key '" + key + "'");
    }
    layer[key] = value;
  }
  return layer;
}

ConfigLayer environment_layer() {
  ConfigLayer layer;
  if (const char* v = std::getenv("PECWE_CACHE_DIR")) layer["cache_dir"] = v;
  if (const char* v = std::getenv("PECWE_NVD_API_KEY")) layer["nvd_api_key"] = v;
  return layer;
}

RunConfig resolve_config(const ConfigLayer& flags, const ConfigLayer& env,
                         const ConfigLayer& file) {
  RunConfig config;
  auto get = [&](const std::string& key) { return lookup(flags, env, file, key); };

  if (const auto* v = get("cache_dir")) {
    if (v->empty()) fail(ErrorKind::Usage, "cache_dir must not be empty");
    config.cache_dir = *v;
  }
  if (const auto* v = get("epss_source")) config.epss_source = *v;
  if (const auto* v = get("nvd_source")) config.nvd_source = *v;
  if (const auto* v = get("catalog_source")) config.catalog_source = *v;
  if (const auto* v = get("nvd_api_key")) {
    if (!v->empty()) config.nvd_api_key = *v;
  }
  if (const auto* v = get("from")) config.from = ScoreDate::parse(*v);
  if (const auto* v = get("to")) config.to = ScoreDate::parse(*v);
  if (const auto* v = get("anchor")) config.anchor = *v;
  if (const auto* v = get("weekly")) config.weekly = parse_bool(*v, "weekly");
  if (const auto* v = get("round")) config.round_decimals = parse_int(*v, "round", 0, 12);
  if (const auto* v = get("threshold")) {
    double t = parse_double(*v, "threshold");
    if (!(t > 0.0) || t > 1.0) {
      fail(ErrorKind::Usage, "threshold must be in (0,1], got '" + *v + "'");
    }
    config.threshold = t;
  }
  if (const auto* v = get("abrupt_span")) {
    config.pattern_params.abrupt_span = parse_int(*v, "abrupt_span", 1, 1000);
  }
  if (const auto* v = get("min_step_span")) {
    config.pattern_params.min_step_span = parse_int(*v, "min_step_span", 2, 1000);
  }
  if (const auto* v = get("monotone_fraction")) {
    config.pattern_params.monotone_fraction = parse_double(*v, "monotone_fraction");
  }
  if (const auto* v = get("format")) {
    if (*v != "csv" && *v != "json" && *v != "svg") {
      fail(ErrorKind::Usage, "format must be csv, json, or svg, got '" + *v + "'");
    }
    config.format = *v;
  }
  if (const auto* v = get("log_x")) config.log_x = parse_bool(*v, "log_x");
  if (const auto* v = get("cwe")) {
    if (!v->empty()) config.cwe = *v;
  }
  if (const auto* v = get("all")) config.all_cwes = parse_bool(*v, "all");
  if (const auto* v = get("output")) {
    if (!v->empty()) config.output_path = *v;
  }
  if (const auto* v = get("workers")) config.workers = parse_int(*v, "workers", 1, 64);
  if (const auto* v = get("rate_limit")) {
    config.rate_limit = parse_int(*v, "rate_limit", 0, 10000);
  }

  config.pattern_params.validate();
  config.anchor_weekday();  // validates the name
  if (config.from && config.to && *config.to < *config.from) {
    fail(ErrorKind::Usage, "to " + config.to->to_string() + " precedes from " +
                               config.from->to_string());
  }
  return config;
}

std::string show_config(const RunConfig& config) {
  std::ostringstream out;
  out << "cache_dir = " << config.cache_dir.string() << '\n';
  out << "epss_source = " << config.epss_source << '\n';
  out << "nvd_source = " << config.nvd_source << '\n';
  out << "catalog_source = "
      << (config.catalog_source.empty() ? bundled_catalog_path().string()
                                        : config.catalog_source)
      << '\n';
  out << "nvd_api_key = " << (config.nvd_api_key ? "(set)" : "(unset)") << '\n';
  out << "from = " << (config.from ? config.from->to_string() : "(unset)") << '\n';
  out << "to = " << (config.to ? config.to->to_string() : "(unset)") << '\n';
  out << "anchor = " << config.anchor << '\n';
  out << "weekly = " << (config.weekly ? "true" : "false") << '\n';
  out << "round = " << config.round_decimals << '\n';
  out << "threshold = " << float_repr(config.threshold) << '\n';
  out << "abrupt_span = " << config.pattern_params.abrupt_span << '\n';
  out << "min_step_span = " << config.pattern_params.min_step_span << '\n';
  out << "monotone_fraction = " << float_repr(config.pattern_params.monotone_fraction)
      << '\n';
  out << "format = " << config.format << '\n';
  out << "log_x = " << (config.log_x ? "true" : "false") << '\n';
  out << "workers = " << config.workers << '\n';
  out << "rate_limit = " << config.rate_limit << '\n';
  return out.str();
}

std::filesystem::path bundled_catalog_path() {
  return std::filesystem::path(PECWE_DATA_DIR) / "view1003_snapshot.tsv";
}

}  // namespace pecwe
