#pragma once

#include "lineage/corpus.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace lineage {

// Per-project file material, aggregated over the repos under analysis.
// Hashes and paths keep one entry per file occurrence (file-count
// semantics); the sets back the membership side of the scores.
struct ProjectFiles {
    std::string project_id;
    std::vector<std::string> file_hashes;
    std::vector<std::string> file_paths;
    std::unordered_set<std::string> hash_set;
    std::unordered_set<std::string> path_set;

    std::size_t total_files() const { return file_hashes.size(); }
};

// Collects file material per project. When `selected_repos` is non-null only
// those repos contribute; otherwise all repos do. Projects with zero files
// are dropped (their scores are undefined rather than 0). Order follows the
// index's project order.
std::vector<ProjectFiles>
gather_project_files(const CorpusIndex& index,
                     const std::set<std::string>* selected_repos);

struct SimilarityScore {
    std::string source;
    std::string target;
    double score = 0.0;
    std::int64_t matched_files = 0;
    std::int64_t total_files = 0;
};

// Fraction of source files with a byte-identical counterpart in the target
// hash set. Undefined (nullopt) when the source has no files.
std::optional<SimilarityScore>
s_hash(const ProjectFiles& source, const std::string& target_id,
       const std::unordered_set<std::string>& target_hashes);

// All ordered pairs with at least one shared content hash (other pairs score
// 0 and are skipped; identical results, fewer pairs). Output ordered by
// (source position, target position). Parallel over source projects.
std::vector<SimilarityScore> score_all_pairs(const std::vector<ProjectFiles>& projects,
                                             int threads);

namespace serial {
// Reference implementation: plain all-pairs loop, no candidate pruning.
std::vector<SimilarityScore> score_all_pairs(const std::vector<ProjectFiles>& projects);
} // namespace serial

struct GraphEdge {
    std::string source;
    std::string target;
    double score = 0.0;
};

struct SimilarityGraph {
    double threshold = 0.7;
    std::int64_t scored_projects = 0; // includes isolated nodes left unserialized
    std::vector<std::string> nodes;                  // ids with >= 1 incident edge, sorted
    std::vector<GraphEdge> edges;                    // sorted by (source, target)
    std::vector<std::vector<std::string>> components; // by size desc, members sorted
};

// Thresholded graph over the given projects: edge A -> B iff
// S_hash(A,B) > threshold. Components ignore edge direction.
SimilarityGraph build_similarity_graph(const std::vector<ProjectFiles>& projects,
                                       double threshold, int threads);

struct ComponentStats {
    std::vector<std::string> nodes;
    std::int64_t edge_count = 0;
    double mean_score = 0.0;
    std::vector<std::pair<std::string, int>> degrees; // (node, in+out), node order
};

std::vector<ComponentStats> component_stats(const SimilarityGraph& graph);

// {threshold, nodes:[{id,name,category}], edges:[{source,target,score}],
//  components:[[ids]]}
std::string serialize_graph(const SimilarityGraph& graph, const CorpusIndex& index);
SimilarityGraph parse_graph(const std::string& json_text);
std::string graph_to_dot(const SimilarityGraph& graph);
std::string component_stats_csv(const std::vector<ComponentStats>& stats);
std::string component_degrees_csv(const std::vector<ComponentStats>& stats);

} // namespace lineage
