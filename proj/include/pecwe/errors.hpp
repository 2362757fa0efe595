#pragma once

#include <stdexcept>
#include <string>

namespace pecwe {

/// Failure categories surfaced by the library. CLI exit codes and test
/// assertions key off the kind, never off message text alone.
enum class ErrorKind {
  Parse,           ///< malformed feed bytes or text input
  NotPublished,    ///< no EPSS snapshot exists for the requested date
  RateLimited,     ///< upstream refused the request for pacing reasons
  Transport,       ///< network or process-level fetch failure
  Schema,          ///< persisted document missing, corrupt, or wrong version
  Catalog,         ///< CWE catalog structurally invalid
  Io,              ///< filesystem failure
  Conflict,        ///< cache already holds different bytes for the same key
  Checksum,        ///< cached bytes do not match their manifest digest
  UnknownCwe,      ///< identifier not present in the loaded catalog
  DegenerateInput, ///< statistic undefined for this input (ties everywhere, too few pairs)
  EmptySeries,     ///< operation needs at least one series point
  EmptySnapshot,   ///< operation needs at least one scored CVE
  EraGap,          ///< series point not covered by any version era
  TooShort,        ///< series shorter than the operation requires
  TooLarge,        ///< input exceeds a hard combinatorial limit
  MissingData,     ///< cache lacks a required artifact for the requested range
  Usage,           ///< bad command line or config value
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace pecwe
