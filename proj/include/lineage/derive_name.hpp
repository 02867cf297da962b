#pragma once

#include "lineage/corpus.hpp"
#include "lineage/edges.hpp"

#include <set>
#include <string>
#include <vector>

namespace lineage {

// Stoplist entries are stored normalized.
std::set<std::string> builtin_stoplist();
std::set<std::string> load_stoplist(const std::string& path);

// Edge A -> B when normalize(name(B)) is a proper prefix of
// normalize(name(A)) and B is not stoplisted. Output sorted by
// (target, source); evidence carries both original names.
std::vector<DerivationEdge> detect_name_derivations(const std::vector<Project>& projects,
                                                    const std::set<std::string>& stoplist);

} // namespace lineage
