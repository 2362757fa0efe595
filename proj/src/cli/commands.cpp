#include "pecwe/cli/commands.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <thread>

#include "pecwe/analytics/analytics.hpp"
#include "pecwe/analytics/patterns.hpp"
#include "pecwe/cli/config.hpp"
#include "pecwe/cli/report.hpp"
#include "pecwe/cli/svg.hpp"
#include "pecwe/errors.hpp"
#include "pecwe/ingest/epss.hpp"
#include "pecwe/ingest/nvd.hpp"
#include "pecwe/ingest/view1003.hpp"
#include "pecwe/metric/metric.hpp"
#include "pecwe/store/cache.hpp"
#include "pecwe/util/gzip.hpp"

namespace pecwe {
namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage:
    case ErrorKind::UnknownCwe:
    case ErrorKind::DegenerateInput:
    case ErrorKind::EmptySeries:
    case ErrorKind::EmptySnapshot:
    case ErrorKind::TooShort:
    case ErrorKind::TooLarge:
    case ErrorKind::EraGap:
    case ErrorKind::MissingData:
      return 2;
    default:
      return 1;
  }
}

ScoreDate today_utc() {
  auto days = std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now());
  std::chrono::year_month_day ymd(days);
  return ScoreDate(static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                   static_cast<unsigned>(ymd.day()));
}

struct Workspace {
  CacheLayout cache;
  CweCatalog catalog;
  CveCweIndex index;
};

Workspace load_workspace(const RunConfig& config) {
  CacheLayout cache = CacheLayout::open(config.cache_dir);
  std::optional<CweCatalog> catalog = cache.load_catalog();
  if (!catalog) {
    fail(ErrorKind::MissingData, "no CWE catalog in cache " + config.cache_dir.string() +
                                     "; run 'pecwe ingest catalog' first");
  }
  if (!cache.has_index()) {
    fail(ErrorKind::MissingData, "no NVD index in cache " + config.cache_dir.string() +
                                     "; run 'pecwe ingest nvd' first");
  }
  CveCweIndex index = cache.load_index();
  return {std::move(cache), std::move(*catalog), std::move(index)};
}

std::pair<ScoreDate, ScoreDate> require_range(const RunConfig& config) {
  if (!config.from || !config.to) {
    fail(ErrorKind::Usage, "this command needs --from and --to dates");
  }
  return {*config.from, *config.to};
}

/// Schedule dates that actually have a cached snapshot, ascending.
std::vector<ScoreDate> usable_dates(const CacheLayout& cache, const RunConfig& config) {
  auto [from, to] = require_range(config);
  std::vector<ScoreDate> schedule = weekly_schedule(from, to, config.anchor_weekday());
  std::vector<ScoreDate> available = cache.list_available_dates(from, to);
  std::set<ScoreDate> have(available.begin(), available.end());
  std::vector<ScoreDate> usable;
  for (const ScoreDate& d : schedule) {
    if (have.count(d)) usable.push_back(d);
  }
  if (usable.empty()) {
    fail(ErrorKind::MissingData,
         "no cached EPSS snapshots on the " + config.anchor + " schedule between " +
             from.to_string() + " and " + to.to_string() +
             "; run 'pecwe ingest epss' first");
  }
  return usable;
}

enum class CweSelection { ExplicitOnly, DefaultAll, SingleRequired };

std::vector<CweId> select_cwes(const Workspace& ws, const RunConfig& config,
                               CweSelection mode) {
  if (config.cwe && config.all_cwes) {
    fail(ErrorKind::Usage, "--cwe and --all are mutually exclusive");
  }
  if (config.cwe) {
    CweId id = parse_cwe_id(*config.cwe);
    if (!ws.catalog.contains(id)) {
      fail(ErrorKind::UnknownCwe, id.to_string() + " is not a member of catalog " +
                                      ws.catalog.snapshot_label());
    }
    return {id};
  }
  if (mode == CweSelection::SingleRequired) {
    fail(ErrorKind::Usage, "this command needs --cwe <id>");
  }
  if (config.all_cwes || mode == CweSelection::DefaultAll) {
    return {ws.catalog.nodes().begin(), ws.catalog.nodes().end()};
  }
  fail(ErrorKind::Usage, "pass --cwe <id> or --all");
}

struct Computed {
  CweId cwe;
  std::size_t closure_size;
  PecweSeries series;
};

/// Closures once per CWE, then one pass per date: each worker loads a
/// snapshot and scores every closure against it, so memory stays at one
/// snapshot per thread regardless of range length.
std::vector<Computed> compute_series_set(const Workspace& ws, const RunConfig& config,
                                         const std::vector<CweId>& cwes,
                                         const std::vector<ScoreDate>& dates) {
  ClosureBuilder builder(ws.catalog, ws.index);
  std::vector<CveClosure> closures;
  closures.reserve(cwes.size());
  for (const CweId& cwe : cwes) closures.push_back(builder.closure(cwe));

  std::vector<std::vector<double>> matrix(cwes.size(),
                                          std::vector<double>(dates.size(), 0.0));
  std::atomic<std::size_t> cursor{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= dates.size()) return;
      try {
        std::optional<EpssSnapshot> snapshot = ws.cache.get_snapshot(dates[i]);
        if (!snapshot) {
          fail(ErrorKind::MissingData,
               "snapshot for " + dates[i].to_string() + " vanished from the cache");
        }
        for (std::size_t j = 0; j < closures.size(); ++j) {
          matrix[j][i] = pecwe(closures[j], *snapshot).value();
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        cursor.store(dates.size());
        return;
      }
    }
  };

  std::size_t n_threads = std::min<std::size_t>(
      static_cast<std::size_t>(config.workers), std::max<std::size_t>(dates.size(), 1));
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < n_threads; ++t) threads.emplace_back(worker);
  worker();
  for (std::thread& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);

  std::string label = "weekly-" + config.anchor;
  std::vector<Computed> out;
  out.reserve(cwes.size());
  for (std::size_t j = 0; j < cwes.size(); ++j) {
    std::vector<SeriesPoint> points;
    points.reserve(dates.size());
    for (std::size_t i = 0; i < dates.size(); ++i) {
      points.push_back({dates[i], Probability(matrix[j][i])});
    }
    out.push_back({cwes[j], closures[j].members.size(),
                   PecweSeries(cwes[j], std::move(points), label)});
  }
  return out;
}

nlohmann::json config_echo(const RunConfig& config) {
  return {
      {"cache_dir", config.cache_dir.string()},
      {"from", config.from ? nlohmann::json(config.from->to_string())
                           : nlohmann::json(nullptr)},
      {"to", config.to ? nlohmann::json(config.to->to_string())
                       : nlohmann::json(nullptr)},
      {"anchor", config.anchor},
      {"weekly", config.weekly},
      {"round", config.round_decimals},
      {"threshold", config.threshold},
      {"format", config.format},
      {"workers", config.workers},
      {"cwe", config.cwe ? nlohmann::json(*config.cwe)
                         : nlohmann::json(nullptr)},
      {"all", config.all_cwes},
      {"log_x", config.log_x},
  };
}

// ----------------------------------------------------------------- ingest

int cmd_ingest_epss(const RunConfig& config) {
  auto [from, to] = require_range(config);
  EpssFeed feed(feed_source_from_location(config.epss_source));
  CacheLayout cache = CacheLayout::open(config.cache_dir);

  std::vector<ScoreDate> dates;
  if (config.weekly) {
    dates = weekly_schedule(from, to, config.anchor_weekday());
  } else {
    for (ScoreDate d = from; d <= to; d = d.plus_days(1)) dates.push_back(d);
  }

  long fetched = 0, skipped = 0, not_published = 0, failed = 0;
  for (const ScoreDate& date : dates) {
    if (cache.has_snapshot(date)) {
      ++skipped;
      continue;
    }
    try {
      std::string raw = feed.fetch_raw(date);
      // Validate before caching; a bad file must not poison the store.
      parse_epss_csv(gzip_decompress(raw), date);
      cache.put_snapshot_bytes(date, raw);
      ++fetched;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NotPublished) {
        ++not_published;
        std::cerr << "pecwe: " << date.to_string() << ": no snapshot published\n";
      } else {
        ++failed;
        std::cerr << "pecwe: " << date.to_string() << ": " << e.what() << "\n";
      }
    }
  }
  std::cout << "epss: fetched=" << fetched << " skipped=" << skipped
            << " not_published=" << not_published << " failed=" << failed << "\n";
  return failed > 0 ? 1 : 0;
}

int cmd_ingest_nvd(const RunConfig& config) {
  FeedSource source = feed_source_from_location(config.nvd_source);
  int limit = config.rate_limit > 0
                  ? config.rate_limit
                  : NvdFeed::default_rate_limit(config.nvd_api_key.has_value());
  RateLimiter limiter(limit);
  NvdFeed feed(source, config.nvd_api_key, &limiter);
  CacheLayout cache = CacheLayout::open(config.cache_dir);

  IndexBuilder builder;
  long pages = 0;
  std::optional<long> start = 0;
  while (start) {
    NvdPage page = feed.fetch_page(*start);
    builder.add(page);
    ++pages;
    start = page.next_start();
  }
  cache.persist_index(builder.build(today_utc()));
  std::cout << "nvd: cves=" << builder.size() << " pages=" << pages << "\n";
  return 0;
}

int cmd_ingest_catalog(const RunConfig& config) {
  std::string location = config.catalog_source.empty()
                             ? bundled_catalog_path().string()
                             : config.catalog_source;
  CweCatalog catalog = load_view1003(location);
  CacheLayout cache = CacheLayout::open(config.cache_dir);
  cache.put_catalog(catalog);
  std::size_t edges = 0;
  for (const auto& [parent, children] : catalog.child_edges()) {
    (void)parent;
    edges += children.size();
  }
  std::cout << "catalog: label=" << catalog.snapshot_label()
            << " members=" << catalog.nodes().size() << " edges=" << edges << "\n";
  return 0;
}

// --------------------------------------------------------------- analysis

Report cmd_compute(const RunConfig& config) {
  Workspace ws = load_workspace(config);
  std::vector<CweId> cwes = select_cwes(ws, config, CweSelection::ExplicitOnly);
  std::vector<ScoreDate> dates = usable_dates(ws.cache, config);
  std::vector<Computed> computed = compute_series_set(ws, config, cwes, dates);

  Report report;
  report.command = "compute";
  report.config_echo = config_echo(config);
  report.table.columns = {"cwe", "date", "pecwe"};
  for (const Computed& c : computed) {
    for (const SeriesPoint& p : c.series.points()) {
      report.table.rows.push_back(
          {c.cwe.to_string(), p.date.to_string(), p.value.value()});
    }
  }
  return report;
}

std::vector<SeriesSummary> summarize_all(const std::vector<Computed>& computed,
                                         const RoundingPolicy& policy) {
  std::vector<SeriesSummary> out;
  out.reserve(computed.size());
  for (const Computed& c : computed) {
    out.push_back(summarize(c.series, c.closure_size, policy));
  }
  return out;
}

Report cmd_classify(const RunConfig& config) {
  Workspace ws = load_workspace(config);
  std::vector<CweId> cwes = select_cwes(ws, config, CweSelection::DefaultAll);
  std::vector<ScoreDate> dates = usable_dates(ws.cache, config);
  RoundingPolicy policy{config.round_decimals};
  std::vector<SeriesSummary> summaries =
      summarize_all(compute_series_set(ws, config, cwes, dates), policy);

  Report report;
  report.command = "classify";
  report.config_echo = config_echo(config);
  report.table.columns = {"cwe", "mean", "min", "max",
                          "n_points", "cve_count", "range_class"};
  std::map<RangeClass, long long> histogram = {{RangeClass::Exploited, 0},
                                               {RangeClass::High, 0},
                                               {RangeClass::Variable, 0},
                                               {RangeClass::Low, 0}};
  for (const SeriesSummary& s : summaries) {
    ++histogram[s.range_class];
    report.table.rows.push_back({s.cwe.to_string(),
                                 Fixed{s.mean_pecwe, policy.decimals},
                                 Fixed{s.min_pecwe, policy.decimals},
                                 Fixed{s.max_pecwe, policy.decimals},
                                 static_cast<long long>(s.n_points),
                                 static_cast<long long>(s.cve_count),
                                 std::string(to_string(s.range_class))});
  }

  Table footer;
  footer.columns = {"range_class", "count", "percent"};
  double total = static_cast<double>(summaries.size());
  for (RangeClass c : {RangeClass::Exploited, RangeClass::High, RangeClass::Variable,
                       RangeClass::Low}) {
    long long count = histogram[c];
    footer.rows.push_back({std::string(to_string(c)), count,
                           Fixed{100.0 * static_cast<double>(count) / total, 1}});
  }
  report.footer = std::move(footer);
  return report;
}

Report cmd_patterns(const RunConfig& config) {
  Workspace ws = load_workspace(config);
  std::vector<CweId> cwes = select_cwes(ws, config, CweSelection::SingleRequired);
  std::vector<ScoreDate> dates = usable_dates(ws.cache, config);
  std::vector<Computed> computed = compute_series_set(ws, config, cwes, dates);
  const Computed& c = computed.front();

  std::vector<EpssVersionEra> eras = default_eras();
  auto split = split_by_era(c.series, eras);

  struct Row {
    ScoreDate start;
    ScoreDate end;
    std::string kind;
    std::string era;
    double delta;
  };
  std::vector<Row> rows;
  for (const auto& [era, sub] : split) {
    if (sub.size() < 2) continue;  // a lone point cannot form a pattern
    for (const PatternSegment& seg :
         detect_patterns(sub, config.threshold, config.pattern_params)) {
      rows.push_back({seg.start, seg.end, to_string(seg.kind), era.label(), seg.delta});
    }
  }
  for (const EraBoundaryDelta& b : era_boundary_deltas(split)) {
    rows.push_back({b.prev_date, b.next_date, "EraBoundary",
                    "v" + std::to_string(b.from_version) + "->v" +
                        std::to_string(b.to_version),
                    b.delta});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.start, a.end, a.kind) < std::tie(b.start, b.end, b.kind);
  });

  Report report;
  report.command = "patterns";
  report.config_echo = config_echo(config);
  report.table.columns = {"cwe", "era", "kind", "start", "end", "delta"};
  for (const Row& r : rows) {
    report.table.rows.push_back({c.cwe.to_string(), r.era, r.kind,
                                 r.start.to_string(), r.end.to_string(), r.delta});
  }
  return report;
}

Report cmd_correlate(const RunConfig& config) {
  if (config.cwe) {
    fail(ErrorKind::Usage, "correlate always uses every catalog member; drop --cwe");
  }
  Workspace ws = load_workspace(config);
  std::vector<CweId> cwes = select_cwes(ws, config, CweSelection::DefaultAll);
  std::vector<ScoreDate> dates = usable_dates(ws.cache, config);
  RoundingPolicy policy{config.round_decimals};
  std::vector<SeriesSummary> summaries =
      summarize_all(compute_series_set(ws, config, cwes, dates), policy);

  double rho = frequency_correlation(summaries);

  Report report;
  report.command = "correlate";
  report.config_echo = config_echo(config);
  report.table.columns = {"cwe", "cve_count", "mean_pecwe"};
  for (const SeriesSummary& s : summaries) {
    report.table.rows.push_back({s.cwe.to_string(),
                                 static_cast<long long>(s.cve_count), s.mean_pecwe});
  }
  Table footer;
  footer.columns = {"statistic", "value"};
  footer.rows.push_back({std::string("spearman_rho"), Fixed{rho, 6}});
  footer.rows.push_back(
      {std::string("n_cwes"), static_cast<long long>(summaries.size())});
  report.footer = std::move(footer);
  return report;
}

// --------------------------------------------------------------- plotdata

struct PlotResult {
  Report report;
  std::string svg;  ///< non-empty only for --format svg
};

PlotResult cmd_plotdata(const RunConfig& config, const std::string& kind) {
  Workspace ws = load_workspace(config);
  RoundingPolicy policy{config.round_decimals};
  PlotResult result;
  result.report.command = "plotdata";
  result.report.config_echo = config_echo(config);
  result.report.config_echo["plot"] = kind;

  if (kind == "series") {
    std::vector<CweId> cwes = select_cwes(ws, config, CweSelection::SingleRequired);
    std::vector<ScoreDate> dates = usable_dates(ws.cache, config);
    std::vector<Computed> computed = compute_series_set(ws, config, cwes, dates);
    const Computed& c = computed.front();
    std::vector<EpssVersionEra> eras = default_eras();
    auto split = split_by_era(c.series, eras);
    // First point of every non-first era is the visual boundary marker.
    std::set<ScoreDate> boundary_points;
    for (std::size_t i = 1; i < split.size(); ++i) {
      boundary_points.insert(split[i].second.points().front().date);
    }
    result.report.table.columns = {"date", "pecwe", "era", "era_boundary"};
    std::vector<SvgSeriesPoint> svg_points;
    for (const auto& [era, sub] : split) {
      for (const SeriesPoint& p : sub.points()) {
        bool boundary = boundary_points.count(p.date) != 0;
        result.report.table.rows.push_back(
            {p.date.to_string(), p.value.value(), era.label(), boundary});
        svg_points.push_back({p.date, p.value.value(), boundary});
      }
    }
    if (config.format == "svg") {
      result.svg = render_series_svg(c.cwe.to_string() + " PECWE", svg_points);
    }
    return result;
  }

  std::vector<CweId> cwes = select_cwes(ws, config, CweSelection::DefaultAll);
  std::vector<ScoreDate> dates = usable_dates(ws.cache, config);
  std::vector<SeriesSummary> summaries =
      summarize_all(compute_series_set(ws, config, cwes, dates), policy);

  if (kind == "distribution") {
    std::stable_sort(summaries.begin(), summaries.end(),
                     [](const SeriesSummary& a, const SeriesSummary& b) {
                       return a.mean_pecwe < b.mean_pecwe;
                     });
    result.report.table.columns = {"rank", "cwe", "mean_pecwe"};
    std::vector<double> means;
    for (std::size_t i = 0; i < summaries.size(); ++i) {
      result.report.table.rows.push_back({static_cast<long long>(i + 1),
                                          summaries[i].cwe.to_string(),
                                          summaries[i].mean_pecwe});
      means.push_back(summaries[i].mean_pecwe);
    }
    if (config.format == "svg") {
      result.svg = render_distribution_svg("PECWE distribution", means);
    }
    return result;
  }

  if (kind == "scatter") {
    result.report.table.columns = {"cwe", "cve_count", "mean_pecwe"};
    if (config.log_x) result.report.table.columns.push_back("log10_cve_count");
    std::vector<SvgScatterPoint> points;
    for (const SeriesSummary& s : summaries) {
      std::vector<Cell> row = {s.cwe.to_string(), static_cast<long long>(s.cve_count),
                               s.mean_pecwe};
      std::optional<double> log_count;
      if (s.cve_count > 0) log_count = std::log10(static_cast<double>(s.cve_count));
      if (config.log_x) {
        row.push_back(log_count ? Cell(*log_count) : Cell(std::monostate{}));
        if (log_count) {
          points.push_back({s.cwe.to_string(), *log_count, s.mean_pecwe});
        }
      } else {
        points.push_back(
            {s.cwe.to_string(), static_cast<double>(s.cve_count), s.mean_pecwe});
      }
      result.report.table.rows.push_back(std::move(row));
    }
    if (config.format == "svg") {
      result.svg = render_scatter_svg("PECWE vs CVE count",
                                      config.log_x ? "log10(cves)" : "cves", points);
    }
    return result;
  }

  fail(ErrorKind::Usage, "plot kind must be distribution, scatter, or series, got '" +
                             kind + "'");
}

// ------------------------------------------------------------------ main

void write_output(const std::string& text, const std::optional<std::string>& path) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot open output file " + *path);
  out << text;
  if (!out.good()) fail(ErrorKind::Io, "failed writing " + *path);
}

int emit_report(const Report& report, const RunConfig& config) {
  if (config.format == "svg") {
    fail(ErrorKind::Usage, "--format svg is only available for plotdata");
  }
  write_output(config.format == "json" ? render_json(report) : render_csv(report),
               config.output_path);
  return 0;
}

struct FlagHolders {
  std::string config_file, cache_dir, epss_source, nvd_source, catalog_source;
  std::string api_key, from, to, round, threshold, format, cwe, output, workers;
  std::string rate_limit, anchor;
  bool weekly = false, all = false, log_x = false, show_config = false;
};

void register_options(CLI::App& app, FlagHolders& h) {
  app.add_option("--config", h.config_file, "Config file (key = value lines)");
  app.add_option("--cache-dir", h.cache_dir, "Cache directory");
  app.add_option("--from", h.from, "Range start, YYYY-MM-DD");
  app.add_option("--to", h.to, "Range end, YYYY-MM-DD");
  app.add_flag("--weekly", h.weekly, "Restrict ingest to the weekly schedule");
  app.add_option("--anchor", h.anchor, "Weekly schedule weekday (default wednesday)");
  app.add_option("--cwe", h.cwe, "Single CWE id, e.g. CWE-79");
  app.add_flag("--all", h.all, "Every catalog member");
  app.add_option("--format", h.format, "Output format: csv, json, or svg");
  app.add_option("--round", h.round, "Display rounding decimals (default 2)");
  app.add_option("--threshold", h.threshold, "Pattern threshold (default 0.1)");
  app.add_flag("--log-x", h.log_x, "Add log10 CVE-count column to scatter output");
  app.add_flag("--show-config", h.show_config, "Print resolved configuration and exit");
  app.add_option("--workers", h.workers, "Parallel workers (default 4)");
  app.add_option("-o,--output", h.output, "Write the report here instead of stdout");
  app.add_option("--epss-source", h.epss_source, "EPSS base URL or local directory");
  app.add_option("--nvd-source", h.nvd_source, "NVD base URL or local directory");
  app.add_option("--catalog-source", h.catalog_source,
                 "Catalog .tsv/.xml/.zip path or URL");
  app.add_option("--api-key", h.api_key, "NVD API key");
  app.add_option("--rate-limit", h.rate_limit, "Requests per 30s window (0 = auto)");
}

ConfigLayer flags_to_layer(const CLI::App& app, const FlagHolders& h) {
  ConfigLayer layer;
  auto put = [&](const char* flag, const char* key, const std::string& value) {
    auto* opt = app.get_option_no_throw(flag);
    if (opt && opt->count() > 0) layer[key] = value;
  };
  put("--cache-dir", "cache_dir", h.cache_dir);
  put("--from", "from", h.from);
  put("--to", "to", h.to);
  put("--anchor", "anchor", h.anchor);
  put("--cwe", "cwe", h.cwe);
  put("--format", "format", h.format);
  put("--round", "round", h.round);
  put("--threshold", "threshold", h.threshold);
  put("--workers", "workers", h.workers);
  put("--output", "output", h.output);
  put("--epss-source", "epss_source", h.epss_source);
  put("--nvd-source", "nvd_source", h.nvd_source);
  put("--catalog-source", "catalog_source", h.catalog_source);
  put("--api-key", "nvd_api_key", h.api_key);
  put("--rate-limit", "rate_limit", h.rate_limit);
  if (h.weekly) layer["weekly"] = "true";
  if (h.all) layer["all"] = "true";
  if (h.log_x) layer["log_x"] = "true";
  return layer;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"PECWE: probability that a CWE weakness class sees exploitation "
               "activity in a 30-day window"};
  app.name("pecwe");
  app.fallthrough(true);
  app.require_subcommand(0, 1);

  FlagHolders h;
  register_options(app, h);

  CLI::App* ingest = app.add_subcommand("ingest", "Fetch feeds into the cache");
  ingest->require_subcommand(1);
  CLI::App* ingest_epss = ingest->add_subcommand("epss", "Daily EPSS score files");
  CLI::App* ingest_nvd = ingest->add_subcommand("nvd", "NVD CVE records -> CWE index");
  CLI::App* ingest_catalog = ingest->add_subcommand("catalog", "CWE View-1003 hierarchy");
  CLI::App* compute = app.add_subcommand("compute", "PECWE values per CWE and date");
  CLI::App* classify = app.add_subcommand("classify", "Range classes per CWE");
  CLI::App* patterns = app.add_subcommand("patterns", "Temporal patterns for one CWE");
  CLI::App* correlate =
      app.add_subcommand("correlate", "CVE count vs mean PECWE rank correlation");
  CLI::App* plotdata = app.add_subcommand("plotdata", "Plot-ready tables and SVG");
  std::string plot_kind;
  plotdata->add_option("kind", plot_kind, "distribution, scatter, or series")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "pecwe: error: " << e.what() << "\n";
    return 2;
  }

  try {
    ConfigLayer file_layer;
    if (!h.config_file.empty()) file_layer = parse_config_file(h.config_file);
    RunConfig config =
        resolve_config(flags_to_layer(app, h), environment_layer(), file_layer);

    if (h.show_config) {
      std::cout << show_config(config);
      return 0;
    }

    if (ingest_epss->parsed()) return cmd_ingest_epss(config);
    if (ingest_nvd->parsed()) return cmd_ingest_nvd(config);
    if (ingest_catalog->parsed()) return cmd_ingest_catalog(config);
    if (compute->parsed()) return emit_report(cmd_compute(config), config);
    if (classify->parsed()) return emit_report(cmd_classify(config), config);
    if (patterns->parsed()) return emit_report(cmd_patterns(config), config);
    if (correlate->parsed()) return emit_report(cmd_correlate(config), config);
    if (plotdata->parsed()) {
      PlotResult result = cmd_plotdata(config, plot_kind);
      if (config.format == "svg") {
        write_output(result.svg, config.output_path);
        return 0;
      }
      return emit_report(result.report, config);
    }

    std::cerr << app.help();
    return 2;
  } catch (const Error& e) {
    std::cerr << "pecwe: error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "pecwe: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pecwe
