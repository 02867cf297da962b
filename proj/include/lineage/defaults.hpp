#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace lineage {

using ExtensionTable = std::map<std::string, std::string>; // lowercase ext -> language

// Built-in copies of the data files shipped under data/. CLI flags accept
// replacement files; the unit tests assert that the shipped files and these
// tables stay in sync.
const ExtensionTable& builtin_extension_table();
const std::vector<std::string>& builtin_exclusion_lines();
const std::vector<std::string>& builtin_name_stoplist();
const std::vector<std::pair<std::string, std::string>>& builtin_alias_entries();
const std::vector<std::pair<std::string, std::string>>& builtin_author_entries();

ExtensionTable load_extension_table(const std::string& path);

} // namespace lineage
