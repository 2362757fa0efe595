#include "pecwe/util/zip.hpp"

#include <cstdint>

#include "pecwe/errors.hpp"
#include "pecwe/util/gzip.hpp"

namespace pecwe {
namespace {

constexpr std::uint32_t kEocdSig = 0x06054b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kLocalSig = 0x04034b50;

std::uint16_t rd16(std::string_view s, std::size_t off) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(s[off]) |
                                    (static_cast<unsigned char>(s[off + 1]) << 8));
}

std::uint32_t rd32(std::string_view s, std::size_t off) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(s[off])) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 1])) << 8) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 2])) << 16) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 3])) << 24);
}

struct CentralEntry {
  std::string name;
  std::uint16_t method;
  std::uint16_t flags;
  std::uint32_t comp_size;
  std::uint32_t uncomp_size;
  std::uint32_t local_offset;
};

std::vector<CentralEntry> read_central_directory(std::string_view archive) {
  if (archive.size() < 22) fail(ErrorKind::Parse, "not a zip archive: too small");
  // The end-of-central-directory record sits within the last 64 KiB
  // (fixed 22 bytes plus an optional comment).
  std::size_t scan_start = archive.size() >= 22 + 65535 ? archive.size() - 22 - 65535 : 0;
  std::size_t eocd = std::string_view::npos;
  for (std::size_t i = archive.size() - 22 + 1; i-- > scan_start;) {
    if (rd32(archive, i) == kEocdSig) {
      eocd = i;
      break;
    }
  }
  if (eocd == std::string_view::npos) {
    fail(ErrorKind::Parse, "not a zip archive: missing end record");
  }
  std::uint16_t count = rd16(archive, eocd + 10);
  std::uint32_t dir_offset = rd32(archive, eocd + 16);
  if (count == 0xffff || dir_offset == 0xffffffffu) {
    fail(ErrorKind::Parse, "zip64 archives are not supported");
  }

  std::vector<CentralEntry> entries;
  std::size_t pos = dir_offset;
  for (std::uint16_t i = 0; i < count; ++i) {
    if (pos + 46 > archive.size() || rd32(archive, pos) != kCentralSig) {
      fail(ErrorKind::Parse, "corrupt zip central directory");
    }
    CentralEntry e;
    e.flags = rd16(archive, pos + 8);
    e.method = rd16(archive, pos + 10);
    e.comp_size = rd32(archive, pos + 20);
    e.uncomp_size = rd32(archive, pos + 24);
    std::uint16_t name_len = rd16(archive, pos + 28);
    std::uint16_t extra_len = rd16(archive, pos + 30);
    std::uint16_t comment_len = rd16(archive, pos + 32);
    e.local_offset = rd32(archive, pos + 42);
    if (pos + 46 + name_len > archive.size()) {
      fail(ErrorKind::Parse, "corrupt zip central directory");
    }
    e.name.assign(archive.substr(pos + 46, name_len));
    if (e.comp_size == 0xffffffffu || e.uncomp_size == 0xffffffffu ||
        e.local_offset == 0xffffffffu) {
      fail(ErrorKind::Parse, "zip64 archives are not supported");
    }
    entries.push_back(std::move(e));
    pos += 46 + name_len + extra_len + comment_len;
  }
  return entries;
}

std::string extract(std::string_view archive, const CentralEntry& e) {
  if (e.flags & 0x1) {
    fail(ErrorKind::Parse, "encrypted zip entry '" + e.name + "'");
  }
  std::size_t pos = e.local_offset;
  if (pos + 30 > archive.size() || rd32(archive, pos) != kLocalSig) {
    fail(ErrorKind::Parse, "corrupt zip local header for '" + e.name + "'");
  }
  std::uint16_t name_len = rd16(archive, pos + 26);
  std::uint16_t extra_len = rd16(archive, pos + 28);
  std::size_t data_off = pos + 30 + name_len + extra_len;
  if (data_off + e.comp_size > archive.size()) {
    fail(ErrorKind::Parse, "zip entry '" + e.name + "' is truncated");
  }
  std::string_view data = archive.substr(data_off, e.comp_size);
  switch (e.method) {
    case 0:  // stored
      return std::string(data);
    case 8:  // deflate
      return inflate_raw(data, e.uncomp_size);
    default:
      fail(ErrorKind::Parse, "unsupported zip compression method for '" + e.name + "'");
  }
}

}  // namespace

std::vector<std::string> zip_entry_names(std::string_view archive) {
  std::vector<std::string> names;
  for (const CentralEntry& e : read_central_directory(archive)) {
    names.push_back(e.name);
  }
  return names;
}

std::string zip_read_entry(std::string_view archive, std::string_view name) {
  for (const CentralEntry& e : read_central_directory(archive)) {
    if (e.name == name) return extract(archive, e);
  }
  fail(ErrorKind::Parse, "zip entry '" + std::string(name) + "' not found");
}

std::string zip_read_first_with_suffix(std::string_view archive, std::string_view suffix) {
  for (const CentralEntry& e : read_central_directory(archive)) {
    if (e.name.size() >= suffix.size() &&
        e.name.compare(e.name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      return extract(archive, e);
    }
  }
  fail(ErrorKind::Parse, "no zip entry with suffix '" + std::string(suffix) + "'");
}

}  // namespace pecwe
