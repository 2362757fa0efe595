#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pecwe {

/// Entry names in a zip archive, in central-directory order.
std::vector<std::string> zip_entry_names(std::string_view archive);

/// Extracts one entry by exact name. Supports stored and deflated entries;
/// zip64 archives are rejected.
std::string zip_read_entry(std::string_view archive, std::string_view name);

/// Extracts the first entry whose name ends with `suffix` (e.g. ".xml").
std::string zip_read_first_with_suffix(std::string_view archive, std::string_view suffix);

}  // namespace pecwe
