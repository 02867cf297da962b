#pragma once

#include "lineage/corpus.hpp"
#include "lineage/edges.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lineage {

struct CommitRepoRef {
    std::string repo_id;
    std::int64_t repo_created_at = 0;
};

struct CommitIndex {
    // Per commit, the repos containing it, ascending by created_at then repo_id.
    std::map<std::string, std::vector<CommitRepoRef>> commit_to_repos;
    std::map<std::string, std::string> repo_to_project;
};

// Repos without a commit log contribute nothing. Malformed logs are rejected
// at load time (load_commit_log); this indexes already-validated snapshots.
CommitIndex index_commits(const std::vector<RepositorySnapshot>& repos);

// For every commit shared by >= 2 repos, the project owning the repo with the
// earliest first-commit time is the origin; every other containing repo's
// project gains an edge to it. Edges dedupe at project level, self-loops are
// dropped, weight = number of witnessing commits, evidence carries one
// witness hash (and "ambiguous-origin" when the origin was settled by the
// repo_id tie-break).
std::vector<DerivationEdge> detect_fork_derivations(const CommitIndex& index);

} // namespace lineage
