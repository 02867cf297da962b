#pragma once

#include "lineage/corpus.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lineage {

struct ExclusionList {
    std::vector<std::string> literal_terms; // lowercase substrings
    std::vector<std::string> patterns;      // regex, matched against lowercased name
    std::vector<std::pair<std::string, std::string>> exceptions; // (project_id, repo name)
};

ExclusionList builtin_exclusion_list();
ExclusionList load_exclusion_list(const std::string& path);

// Matched term/pattern when the repo name is excluded, nullopt otherwise.
// Exceptions win over any match; an exception with an empty project_id
// applies to every project.
std::optional<std::string> match_exclusion(const std::string& project_id,
                                           const std::string& repo_name,
                                           const ExclusionList& list);

// Name-relevance bonus constants, overridable per run.
struct RelevanceBonus {
    int exact_name = 100; // repo name equals project name after normalization
    int related = 50;     // contains project name / "core", or token keywords
};

struct RepoRating {
    std::string repo_id;
    std::string repo_name;
    std::int64_t staleness_weeks = 0;
    std::int64_t fork_count = 0;
    int relevance_bonus = 0;
    bool excluded = false;
    std::string excluded_by;
    std::int64_t score = 0; // fork_count - staleness_weeks + relevance_bonus
};

// Throws when last_update lies after reference_time.
RepoRating score_repository(const RepositorySnapshot& repo, const std::string& project_name,
                            ProjectKind kind, std::int64_t reference_time,
                            const ExclusionList& exclusions,
                            const RelevanceBonus& bonus = {});

// Top max(1, ceil(0.2*N)) of the N non-excluded repos by (score desc,
// fork_count desc, repo name asc). Empty when every repo is excluded.
std::vector<std::string> select_repositories(const std::vector<RepoRating>& ratings);

// Manual post-selection adjustments: "pin,<project_id>,<repo_id>" forces a
// repo in, "ban,<project_id>,<repo_id>" forces it out.
struct SelectionOverrides {
    std::vector<std::pair<std::string, std::string>> pins;
    std::vector<std::pair<std::string, std::string>> bans;
};

SelectionOverrides load_overrides(const std::string& path);

std::vector<std::string> apply_overrides(const std::string& project_id,
                                         std::vector<std::string> selected,
                                         const std::vector<RepoRating>& ratings,
                                         const SelectionOverrides& overrides);

} // namespace lineage
