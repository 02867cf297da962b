#pragma once

#include "lineage/corpus.hpp"
#include "lineage/edges.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lineage {

enum class AttributionSource { copying_file, source_header };

struct Attribution {
    std::string repo_id;
    AttributionSource source = AttributionSource::copying_file;
    std::string raw_line; // whitespace-collapsed, contains "copyright"
    std::optional<std::string> resolved_project;
};

// Normalized-pattern -> project_id map. Longest pattern wins; ties resolve
// lexicographically by pattern.
struct NameMap {
    std::vector<std::pair<std::string, std::string>> entries; // (normalized key, project_id)

    static NameMap from_pairs(const std::vector<std::pair<std::string, std::string>>& raw);
    static NameMap load_csv(const std::string& path);
};

struct AttributionScanConfig {
    int copying_window = 50; // leading lines scanned in COPYING/LICENSE files
    int header_window = 30;  // leading lines scanned in source files
};

// COPYING/LICENSE files (any depth, case-insensitive stem, optional
// extension) take priority: when at least one exists, only those files are
// scanned. Otherwise the header window of every source file is scanned.
// One attribution per distinct collapsed line matching /copyright/i.
std::vector<Attribution> extract_attributions(const RepositorySnapshot& repo,
                                              const ExtensionTable& table,
                                              const AttributionScanConfig& config = {});

// Resolution order: longest project-name substring, then alias map, then
// author map; all matching is on normalized strings. Only ids present in
// `projects` can be returned.
std::optional<std::string> resolve_attribution(const std::string& raw_line,
                                               const std::vector<Project>& projects,
                                               const NameMap& aliases,
                                               const NameMap& authors);

// Edge A -> B when some repo of A carries an attribution resolving to B != A.
// Evidence: up to 5 witness lines, sorted. Output sorted by (source, target).
std::vector<DerivationEdge>
detect_copyright_derivations(const std::vector<Project>& projects,
                             const std::vector<Attribution>& resolved);

} // namespace lineage
