#include "lineage/derive_name.hpp"

#include "lineage/util.hpp"

#include <algorithm>

namespace lineage {

namespace {
std::set<std::string> normalize_all(const std::vector<std::string>& names) {
    std::set<std::string> out;
    for (const std::string& n : names) {
        const std::string line = collapse_whitespace(n);
        if (line.empty() || line[0] == '#')
            continue;
        out.insert(normalize_name(line));
    }
    return out;
}
} // namespace

std::set<std::string> builtin_stoplist() {
    return normalize_all(builtin_name_stoplist());
}

std::set<std::string> load_stoplist(const std::string& path) {
    return normalize_all(split_lines(read_file(path)));
}

std::vector<DerivationEdge> detect_name_derivations(const std::vector<Project>& projects,
                                                    const std::set<std::string>& stoplist) {
    struct Entry {
        const Project* project;
        std::string norm;
    };
    std::vector<Entry> entries;
    entries.reserve(projects.size());
    for (const Project& p : projects)
        entries.push_back(Entry{&p, normalize_name(p.name)});

    std::vector<DerivationEdge> edges;
    for (const Entry& target : entries) {
        if (target.norm.empty() || stoplist.count(target.norm))
            continue;
        for (const Entry& source : entries) {
            if (source.project == target.project)
                continue;
            // proper prefix: strictly shorter, then prefix match
            if (source.norm.size() <= target.norm.size())
                continue;
            if (source.norm.compare(0, target.norm.size(), target.norm) != 0)
                continue;
            DerivationEdge e;
            e.source = source.project->project_id;
            e.target = target.project->project_id;
            e.method = DerivationMethod::name;
            e.evidence = {"source_name:" + source.project->name,
                          "target_name:" + target.project->name};
            edges.push_back(std::move(e));
        }
    }
    std::sort(edges.begin(), edges.end(), [](const DerivationEdge& a, const DerivationEdge& b) {
        if (a.target != b.target)
            return a.target < b.target;
        return a.source < b.source;
    });
    return edges;
}

} // namespace lineage
