#include "pecwe/ingest/epss.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "pecwe/errors.hpp"
#include "pecwe/util/gzip.hpp"
#include "pecwe/util/numfmt.hpp"
#include "src/ingest/http_get.hpp"

namespace pecwe {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (pos < text.size()) lines.push_back(text.substr(pos));
      break;
    }
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

double parse_unit_double(std::string_view field, std::size_t row, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail(ErrorKind::Parse, "row " + std::to_string(row) + ": bad " + what + " '" +
                               std::string(field) + "'");
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    fail(ErrorKind::Parse, "row " + std::to_string(row) + ": " + what + " " +
                               std::string(field) + " out of [0,1]");
  }
  return value;
}

}  // namespace

std::string epss_filename(const ScoreDate& date) {
  return "epss_scores-" + date.to_string() + ".csv.gz";
}

EpssSnapshot parse_epss_csv(std::string_view text,
                            std::optional<ScoreDate> expected_date) {
  std::vector<std::string_view> lines = split_lines(text);
  if (lines.size() < 2 || lines[0].empty() || lines[0][0] != '#') {
    fail(ErrorKind::Parse, "missing '#model_version' comment line");
  }

  std::string_view comment = lines[0].substr(1);
  auto version_key = comment.find("model_version:");
  auto date_key = comment.find("score_date:");
  if (version_key == std::string_view::npos || date_key == std::string_view::npos) {
    fail(ErrorKind::Parse, "malformed header comment: '" + std::string(lines[0]) + "'");
  }
  std::string_view version = comment.substr(version_key + 14);
  version = version.substr(0, version.find(','));
  std::string_view date_text = comment.substr(date_key + 11);
  date_text = date_text.substr(0, date_text.find(','));
  ScoreDate score_date = ScoreDate::parse(date_text);
  if (version.empty()) {
    fail(ErrorKind::Parse, "empty model version tag");
  }
  if (expected_date && score_date != *expected_date) {
    fail(ErrorKind::Parse, "file is for " + score_date.to_string() + ", expected " +
                               expected_date->to_string());
  }

  if (lines[1] != "cve,epss,percentile") {
    fail(ErrorKind::Parse, "missing 'cve,epss,percentile' header row");
  }

  std::map<CveId, Probability> scores;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (line.empty()) continue;
    std::size_t row = i - 1;  // data rows count from 1
    std::size_t c1 = line.find(',');
    std::size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
      fail(ErrorKind::Parse, "row " + std::to_string(row) + ": expected 3 fields");
    }
    CveId cve = [&] {
      try {
        return CveId::parse(line.substr(0, c1));
      } catch (const Error& e) {
        fail(ErrorKind::Parse, "row " + std::to_string(row) + ": " + e.what());
      }
    }();
    double score = parse_unit_double(line.substr(c1 + 1, c2 - c1 - 1), row, "epss score");
    parse_unit_double(line.substr(c2 + 1), row, "percentile");
    // Repeated CVEs keep the last row, mirroring feed semantics elsewhere.
    scores.insert_or_assign(cve, Probability(score));
  }
  return EpssSnapshot(score_date, std::string(version), std::move(scores));
}

std::string serialize_epss_csv(const EpssSnapshot& snapshot) {
  std::ostringstream out;
  out << "#model_version:" << snapshot.model_version()
      << ",score_date:" << snapshot.score_date().to_string() << "T00:00:00+0000\n";
  out << "cve,epss,percentile\n";
  for (const auto& [cve, score] : snapshot.scores()) {
    out << cve.to_string() << ',' << float_repr(score.value()) << ",0.0\n";
  }
  return out.str();
}

std::string EpssFeed::fetch_raw(const ScoreDate& date) const {
  std::string name = epss_filename(date);
  if (source_.is_live()) {
    HttpResponse response = http_get(source_.base_url(), "/" + name);
    if (response.status == 404) {
      fail(ErrorKind::NotPublished, "no EPSS scores published for " + date.to_string());
    }
    if (response.status != 200) {
      fail(ErrorKind::Transport, "GET " + name + " returned HTTP " +
                                     std::to_string(response.status));
    }
    return std::move(response.body);
  }

  std::filesystem::path path = source_.directory() / name;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorKind::NotPublished, "no EPSS scores published for " + date.to_string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (!in.good() && !in.eof()) {
    fail(ErrorKind::Io, "failed reading " + path.string());
  }
  return buffer.str();
}

EpssSnapshot EpssFeed::fetch(const ScoreDate& date) const {
  std::string raw = fetch_raw(date);
  return parse_epss_csv(gzip_decompress(raw), date);
}

}  // namespace pecwe
