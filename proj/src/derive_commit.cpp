#include "lineage/derive_commit.hpp"

#include <algorithm>
#include <set>

namespace lineage {

CommitIndex index_commits(const std::vector<RepositorySnapshot>& repos) {
    CommitIndex index;
    for (const RepositorySnapshot& r : repos) {
        index.repo_to_project[r.repo_id] = r.project_id;
        if (!r.created_at)
            continue;
        for (const CommitRecord& c : r.commit_log)
            index.commit_to_repos[c.hash].push_back(CommitRepoRef{r.repo_id, *r.created_at});
    }
    for (auto& [hash, refs] : index.commit_to_repos) {
        (void)hash;
        std::sort(refs.begin(), refs.end(), [](const CommitRepoRef& a, const CommitRepoRef& b) {
            if (a.repo_created_at != b.repo_created_at)
                return a.repo_created_at < b.repo_created_at;
            return a.repo_id < b.repo_id;
        });
    }
    return index;
}

std::vector<DerivationEdge> detect_fork_derivations(const CommitIndex& index) {
    struct EdgeAccum {
        std::int64_t shared_commits = 0;
        std::string witness; // lexicographically smallest commit hash
        bool ambiguous_origin = false;
    };
    // (derivative project, origin project) -> accumulated evidence
    std::map<std::pair<std::string, std::string>, EdgeAccum> accum;

    for (const auto& [hash, refs] : index.commit_to_repos) {
        if (refs.size() < 2)
            continue;
        const CommitRepoRef& oldest = refs.front();
        const std::string& origin_project = index.repo_to_project.at(oldest.repo_id);
        const bool ambiguous =
            refs.size() >= 2 && refs[1].repo_created_at == oldest.repo_created_at;

        std::set<std::string> derived_projects;
        for (std::size_t i = 1; i < refs.size(); ++i) {
            const std::string& project = index.repo_to_project.at(refs[i].repo_id);
            if (project != origin_project)
                derived_projects.insert(project);
        }
        for (const std::string& derived : derived_projects) {
            EdgeAccum& a = accum[{derived, origin_project}];
            ++a.shared_commits;
            if (a.witness.empty() || hash < a.witness)
                a.witness = hash;
            a.ambiguous_origin |= ambiguous;
        }
    }

    std::vector<DerivationEdge> edges;
    edges.reserve(accum.size());
    for (const auto& [key, a] : accum) {
        DerivationEdge e;
        e.source = key.first;
        e.target = key.second;
        e.method = DerivationMethod::commit;
        e.weight = static_cast<double>(a.shared_commits);
        e.evidence = {"commit:" + a.witness,
                      "shared_commits:" + std::to_string(a.shared_commits)};
        if (a.ambiguous_origin)
            e.evidence.push_back("ambiguous-origin");
        edges.push_back(std::move(e));
    }
    // std::map iteration already yields (source, target) order
    return edges;
}

} // namespace lineage
