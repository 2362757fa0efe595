#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pecwe/catalog.hpp"

namespace pecwe {

/// Parses the snapshot TSV format: one "<cwe>\t<parent-or-ROOT>" row per
/// edge, "#" comments ignored except an optional "#label:<text>" line.
/// The special designators are added as isolated nodes if absent.
CweCatalog parse_catalog_tsv(std::string_view text, std::string fallback_label);

/// Renders a catalog to the snapshot TSV format, label line included.
std::string serialize_catalog_tsv(const CweCatalog& catalog);

/// Extracts View-1003 from MITRE's full catalog XML: Has_Member entries
/// select the members, Related_Weakness ChildOf entries scoped to the view
/// supply the edges. Only the handful of attributes involved are read, so
/// this survives schema additions around them.
CweCatalog parse_catalog_xml(std::string_view xml, std::string fallback_label);

/// Loads a catalog from a .tsv, .xml, or .zip (containing the XML) file.
CweCatalog load_view1003_file(const std::filesystem::path& path);

/// Fetches and loads a catalog from a URL ending in .tsv, .xml, or .zip.
CweCatalog load_view1003_url(const std::string& url);

/// Dispatches on shape: http(s) URLs go live, anything else is a file.
CweCatalog load_view1003(const std::string& location);

}  // namespace pecwe
