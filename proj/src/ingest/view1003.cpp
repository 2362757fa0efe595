#include "pecwe/ingest/view1003.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "pecwe/errors.hpp"
#include "pecwe/util/zip.hpp"
#include "src/ingest/http_get.hpp"

namespace pecwe {
namespace {

constexpr std::string_view kViewId = "1003";

void add_edge(std::map<CweId, std::set<CweId>>& edges, const CweId& parent,
              const CweId& child) {
  edges[parent].insert(child);
}

std::string basename_label(const std::filesystem::path& path) {
  return path.filename().string();
}

// --- minimal XML attribute scanning -------------------------------------
//
// The CWE catalog is too large and too regular to justify a full XML
// dependency: the loader only needs attribute values from three element
// kinds. The scanner handles quoted attributes and self-closing tags and
// nothing else.

struct Tag {
  std::size_t end;  ///< offset just past '>'
  std::map<std::string, std::string, std::less<>> attrs;
};

std::optional<Tag> parse_tag_at(std::string_view xml, std::size_t start) {
  Tag tag;
  std::size_t i = start;
  while (i < xml.size() && xml[i] != '>') {
    if (xml[i] == '"') {
      return std::nullopt;  // stray quote before attributes begin
    }
    if (std::isalpha(static_cast<unsigned char>(xml[i])) || xml[i] == '_') {
      std::size_t name_start = i;
      while (i < xml.size() && (std::isalnum(static_cast<unsigned char>(xml[i])) ||
                                xml[i] == '_' || xml[i] == '-' || xml[i] == ':')) {
        ++i;
      }
      std::string name(xml.substr(name_start, i - name_start));
      while (i < xml.size() && std::isspace(static_cast<unsigned char>(xml[i]))) ++i;
      if (i >= xml.size() || xml[i] != '=') continue;
      ++i;
      while (i < xml.size() && std::isspace(static_cast<unsigned char>(xml[i]))) ++i;
      if (i >= xml.size() || (xml[i] != '"' && xml[i] != '\'')) return std::nullopt;
      char quote = xml[i++];
      std::size_t value_start = i;
      while (i < xml.size() && xml[i] != quote) ++i;
      if (i >= xml.size()) return std::nullopt;
      tag.attrs.emplace(std::move(name), std::string(xml.substr(value_start, i - value_start)));
      ++i;
    } else {
      ++i;
    }
  }
  if (i >= xml.size()) return std::nullopt;
  tag.end = i + 1;
  return tag;
}

// Invokes fn(attrs) for every <element ...> occurrence, in document order.
template <typename Fn>
void for_each_tag(std::string_view xml, std::string_view element, Fn&& fn) {
  std::string needle = "<" + std::string(element);
  std::size_t pos = 0;
  while ((pos = xml.find(needle, pos)) != std::string_view::npos) {
    std::size_t after = pos + needle.size();
    // Reject prefix matches like <Has_Memberships.
    if (after < xml.size() && !std::isspace(static_cast<unsigned char>(xml[after])) &&
        xml[after] != '>' && xml[after] != '/') {
      pos = after;
      continue;
    }
    if (auto tag = parse_tag_at(xml, after)) {
      fn(tag->attrs);
      pos = tag->end;
    } else {
      pos = after;
    }
  }
}

}  // namespace

CweCatalog parse_catalog_tsv(std::string_view text, std::string fallback_label) {
  std::set<CweId> nodes;
  std::map<CweId, std::set<CweId>> edges;
  std::string label = std::move(fallback_label);

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("#label:", 0) == 0) label = std::string(line.substr(7));
      continue;
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
      fail(ErrorKind::Parse, "catalog line " + std::to_string(line_no) +
                                 ": expected '<cwe>\\t<parent-or-ROOT>'");
    }
    CweId child = parse_cwe_id(line.substr(0, tab));
    nodes.insert(child);
    std::string_view parent_text = line.substr(tab + 1);
    if (parent_text == "ROOT") continue;
    CweId parent = parse_cwe_id(parent_text);
    nodes.insert(parent);
    add_edge(edges, parent, child);
  }
  nodes.insert(CweId::other());
  nodes.insert(CweId::noinfo());
  return CweCatalog::build(std::move(nodes), std::move(edges), std::move(label));
}

std::string serialize_catalog_tsv(const CweCatalog& catalog) {
  std::map<CweId, std::set<CweId>> parents;
  for (const auto& [parent, children] : catalog.child_edges()) {
    for (const CweId& child : children) parents[child].insert(parent);
  }
  std::ostringstream out;
  out << "#label:" << catalog.snapshot_label() << '\n';
  for (const CweId& node : catalog.nodes()) {
    auto it = parents.find(node);
    if (it == parents.end() || it->second.empty()) {
      out << node.to_string() << "\tROOT\n";
    } else {
      for (const CweId& parent : it->second) {
        out << node.to_string() << '\t' << parent.to_string() << '\n';
      }
    }
  }
  return out.str();
}

CweCatalog parse_catalog_xml(std::string_view xml, std::string fallback_label) {
  std::string label = std::move(fallback_label);
  for_each_tag(xml, "Weakness_Catalog", [&](const auto& attrs) {
    auto it = attrs.find("Version");
    if (it != attrs.end() && !it->second.empty()) label = "cwe-" + it->second;
  });

  std::set<CweId> nodes;
  for_each_tag(xml, "Has_Member", [&](const auto& attrs) {
    auto view = attrs.find("View_ID");
    auto member = attrs.find("CWE_ID");
    if (view == attrs.end() || member == attrs.end() || view->second != kViewId) return;
    nodes.insert(parse_cwe_id(member->second));
  });
  if (nodes.empty()) {
    fail(ErrorKind::Parse, "no View-1003 Has_Member entries found");
  }

  // Related_Weakness tags carry the child implicitly: they live inside the
  // <Weakness> block they belong to. One pass over both element kinds in
  // document order, tracking the most recent Weakness ID, recovers the
  // pairing without real XML tree-building.
  std::map<CweId, std::set<CweId>> edges;
  std::optional<CweId> current;
  std::size_t pos = 0;
  while (pos < xml.size()) {
    std::size_t w = xml.find("<Weakness ", pos);
    std::size_t r = xml.find("<Related_Weakness ", pos);
    if (w == std::string_view::npos && r == std::string_view::npos) break;
    if (w != std::string_view::npos && (r == std::string_view::npos || w < r)) {
      auto tag = parse_tag_at(xml, w + 10);
      if (tag) {
        auto id = tag->attrs.find("ID");
        if (id != tag->attrs.end()) current = parse_cwe_id(id->second);
        pos = tag->end;
      } else {
        pos = w + 10;
      }
    } else {
      auto tag = parse_tag_at(xml, r + 18);
      if (tag) {
        auto nature = tag->attrs.find("Nature");
        auto view = tag->attrs.find("View_ID");
        auto parent = tag->attrs.find("CWE_ID");
        if (current && nature != tag->attrs.end() && nature->second == "ChildOf" &&
            view != tag->attrs.end() && view->second == kViewId &&
            parent != tag->attrs.end()) {
          CweId parent_id = parse_cwe_id(parent->second);
          if (nodes.count(*current) && nodes.count(parent_id)) {
            add_edge(edges, parent_id, *current);
          }
        }
        pos = tag->end;
      } else {
        pos = r + 18;
      }
    }
  }

  nodes.insert(CweId::other());
  nodes.insert(CweId::noinfo());
  return CweCatalog::build(std::move(nodes), std::move(edges), std::move(label));
}

namespace {

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorKind::Io, "cannot open catalog file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CweCatalog catalog_from_bytes(const std::string& bytes, const std::string& name) {
  auto ends_with = [&](std::string_view suffix) {
    return name.size() >= suffix.size() &&
           name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".zip")) {
    return parse_catalog_xml(zip_read_first_with_suffix(bytes, ".xml"), name);
  }
  if (ends_with(".xml")) {
    return parse_catalog_xml(bytes, name);
  }
  if (ends_with(".tsv")) {
    return parse_catalog_tsv(bytes, name);
  }
  fail(ErrorKind::Usage, "catalog source must end in .tsv, .xml, or .zip: " + name);
}

}  // namespace

CweCatalog load_view1003_file(const std::filesystem::path& path) {
  return catalog_from_bytes(read_file_bytes(path), basename_label(path));
}

CweCatalog load_view1003_url(const std::string& url) {
  auto slash = url.find_last_of('/');
  std::string name = slash == std::string::npos ? url : url.substr(slash + 1);
  std::string base = slash == std::string::npos ? url : url.substr(0, slash);
  HttpResponse response = http_get(base, "/" + name);
  if (response.status != 200) {
    fail(ErrorKind::Transport, "GET " + url + " returned HTTP " +
                                   std::to_string(response.status));
  }
  return catalog_from_bytes(response.body, name);
}

CweCatalog load_view1003(const std::string& location) {
  if (location.rfind("http://", 0) == 0 || location.rfind("https://", 0) == 0) {
    return load_view1003_url(location);
  }
  return load_view1003_file(location);
}

}  // namespace pecwe
