#pragma once

#include "lineage/corpus.hpp"
#include "lineage/similarity.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

namespace lineage {

struct BaselineVersion {
    int label = 0; // 1..N, ordered by snapshot_time
    std::int64_t snapshot_time = 0;
    std::string commit_hash;
    std::unordered_set<std::string> file_hashes;
    std::unordered_set<std::string> file_paths;
    std::string tree_path;
};

// Materializes the working tree of a commit and returns its root directory.
using TreeProvider = std::function<std::filesystem::path(const std::string& commit_hash)>;

// Walks the interval grid start_time + k*interval_days: each grid point
// selects the latest commit at or before it; points before the first commit
// are skipped and consecutive points selecting the same commit collapse to
// one version. File sets cover source files only (per the extension table).
std::vector<BaselineVersion> snapshot_baseline(const std::vector<CommitRecord>& history,
                                               const TreeProvider& trees,
                                               std::int64_t start_time, int interval_days,
                                               const ExtensionTable& table, int threads);

// Fraction of source files whose relative path appears in the target path
// set; content ignored. Undefined when the source has no files.
std::optional<SimilarityScore>
s_dir(const ProjectFiles& source, const std::string& target_id,
      const std::unordered_set<std::string>& target_paths);

enum class MatchMetric { hash, dir };
const char* to_string(MatchMetric m);

struct VersionMatch {
    std::string project_id;
    MatchMetric metric = MatchMetric::hash;
    int best_version = 0;
    double best_score = 0.0;
    std::vector<std::pair<int, double>> per_version; // (label, score), label order
};

// Scores the project against every version; argmax with earliest-version
// tie-break.
VersionMatch match_to_versions(const ProjectFiles& project,
                               const std::vector<BaselineVersion>& versions,
                               MatchMetric metric);

// Parallel over projects; output order follows input order.
std::vector<VersionMatch> match_all_projects(const std::vector<ProjectFiles>& projects,
                                             const std::vector<BaselineVersion>& versions,
                                             MatchMetric metric, int threads);

namespace serial {
std::vector<VersionMatch> match_all_projects(const std::vector<ProjectFiles>& projects,
                                             const std::vector<BaselineVersion>& versions,
                                             MatchMetric metric);
} // namespace serial

// Per-version project counts at the given score bands (a project counts
// toward band b when best_score >= b).
struct VersionHistogram {
    std::vector<double> bands;
    // rows[version_label - 1][band_index]
    std::vector<std::vector<std::int64_t>> rows;
};

VersionHistogram version_histogram(const std::vector<VersionMatch>& matches, int version_count,
                                   const std::vector<double>& bands);

std::string versions_manifest_json(const std::vector<BaselineVersion>& versions);
std::string matches_csv(const std::vector<VersionMatch>& matches);
std::string score_matrix_csv(const std::vector<VersionMatch>& matches);
std::string histogram_csv(const VersionHistogram& hist);

} // namespace lineage
