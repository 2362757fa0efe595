#include "pecwe/errors.hpp"

namespace pecwe {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::NotPublished: return "not-published";
    case ErrorKind::RateLimited: return "rate-limited";
    case ErrorKind::Transport: return "transport";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Catalog: return "catalog";
    case ErrorKind::Io: return "io";
    case ErrorKind::Conflict: return "conflict";
    case ErrorKind::Checksum: return "checksum";
    case ErrorKind::UnknownCwe: return "unknown-cwe";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::EmptySeries: return "empty-series";
    case ErrorKind::EmptySnapshot: return "empty-snapshot";
    case ErrorKind::EraGap: return "era-gap";
    case ErrorKind::TooShort: return "too-short";
    case ErrorKind::TooLarge: return "too-large";
    case ErrorKind::MissingData: return "missing-data";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace pecwe
