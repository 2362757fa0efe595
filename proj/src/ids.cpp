#include "pecwe/ids.hpp"

#include <cctype>
#include <charconv>

#include "pecwe/errors.hpp"

namespace pecwe {
namespace {

std::string_view trimmed(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

bool istarts_with(std::string_view text, std::string_view prefix) {
  return text.size() >= prefix.size() && iequals(text.substr(0, prefix.size()), prefix);
}

bool all_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

CweId CweId::numbered(int value) {
  if (value <= 0) {
    fail(ErrorKind::Parse, "CWE number must be positive, got " + std::to_string(value));
  }
  return CweId(value);
}

std::optional<int> CweId::number() const noexcept {
  if (is_special()) return std::nullopt;
  return code_;
}

std::string CweId::to_string() const {
  switch (code_) {
    case kOther: return "NVD-CWE-Other";
    case kNoInfo: return "NVD-CWE-noinfo";
    default: return "CWE-" + std::to_string(code_);
  }
}

CweId parse_cwe_id(std::string_view text) {
  std::string_view t = trimmed(text);
  if (iequals(t, "NVD-CWE-Other")) return CweId::other();
  if (iequals(t, "NVD-CWE-noinfo")) return CweId::noinfo();
  if (istarts_with(t, "CWE-")) t.remove_prefix(4);
  if (!all_digits(t) || t.size() > 9) {
    fail(ErrorKind::Parse, "not a CWE identifier: '" + std::string(text) + "'");
  }
  int value = 0;
  std::from_chars(t.data(), t.data() + t.size(), value);
  return CweId::numbered(value);
}

CveId::CveId(int year, long long sequence) : year_(year), sequence_(sequence) {
  if (year < 1000 || year > 9999) {
    fail(ErrorKind::Parse, "CVE year out of range: " + std::to_string(year));
  }
  if (sequence < 1) {
    fail(ErrorKind::Parse, "CVE sequence must be >= 1, got " + std::to_string(sequence));
  }
}

CveId CveId::parse(std::string_view text) {
  std::string_view t = trimmed(text);
  if (!istarts_with(t, "CVE-")) {
    fail(ErrorKind::Parse, "not a CVE identifier: '" + std::string(text) + "'");
  }
  t.remove_prefix(4);
  auto dash = t.find('-');
  if (dash == std::string_view::npos) {
    fail(ErrorKind::Parse, "not a CVE identifier: '" + std::string(text) + "'");
  }
  std::string_view year_part = t.substr(0, dash);
  std::string_view seq_part = t.substr(dash + 1);
  if (year_part.size() != 4 || !all_digits(year_part) || seq_part.size() < 4 ||
      seq_part.size() > 18 || !all_digits(seq_part)) {
    fail(ErrorKind::Parse, "not a CVE identifier: '" + std::string(text) + "'");
  }
  int year = 0;
  std::from_chars(year_part.data(), year_part.data() + year_part.size(), year);
  long long seq = 0;
  std::from_chars(seq_part.data(), seq_part.data() + seq_part.size(), seq);
  return CveId(year, seq);
}

std::string CveId::to_string() const {
  std::string seq = std::to_string(sequence_);
  if (seq.size() < 4) seq.insert(0, 4 - seq.size(), '0');
  return "CVE-" + std::to_string(year_) + "-" + seq;
}

}  // namespace pecwe
