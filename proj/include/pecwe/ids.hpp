#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace pecwe {

/// A CWE identifier: either a numbered weakness (CWE-79) or one of the two
/// special NVD designators that mark records without a usable mapping.
/// Ordering sorts numbered identifiers ascending, then Other, then NoInfo,
/// which fixes the row order of every report.
class CweId {
 public:
  static CweId numbered(int value);
  static CweId other() noexcept { return CweId(kOther); }
  static CweId noinfo() noexcept { return CweId(kNoInfo); }

  bool is_special() const noexcept { return code_ < 0; }
  /// Numeric id, or nullopt for the special designators.
  std::optional<int> number() const noexcept;

  std::string to_string() const;

  friend auto operator<=>(const CweId& a, const CweId& b) noexcept {
    return a.sort_key() <=> b.sort_key();
  }
  friend bool operator==(const CweId& a, const CweId& b) noexcept {
    return a.code_ == b.code_;
  }

 private:
  static constexpr int kOther = -1;
  static constexpr int kNoInfo = -2;

  explicit CweId(int code) noexcept : code_(code) {}
  long sort_key() const noexcept {
    return is_special() ? (1L << 32) - code_ : code_;
  }

  int code_;
};

/// Accepts "CWE-79", bare "79", and the two special designator spellings,
/// all case-insensitively. Anything else is a Parse error.
CweId parse_cwe_id(std::string_view text);

/// A CVE identifier, ordered by (year, sequence). The canonical rendering
/// zero-pads the sequence to at least four digits.
class CveId {
 public:
  CveId(int year, long long sequence);
  static CveId parse(std::string_view text);

  int year() const noexcept { return year_; }
  long long sequence() const noexcept { return sequence_; }
  std::string to_string() const;

  friend auto operator<=>(const CveId&, const CveId&) noexcept = default;

 private:
  int year_;
  long long sequence_;
};

}  // namespace pecwe
