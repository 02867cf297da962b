#include "lineage/baseline.hpp"

#include "lineage/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <stdexcept>

using ordered_json = nlohmann::ordered_json;

namespace lineage {

const char* to_string(MatchMetric m) {
    return m == MatchMetric::hash ? "hash" : "dir";
}

std::vector<BaselineVersion> snapshot_baseline(const std::vector<CommitRecord>& history,
                                               const TreeProvider& trees,
                                               std::int64_t start_time, int interval_days,
                                               const ExtensionTable& table, int threads) {
    if (history.empty())
        throw std::runtime_error("baseline history is empty");
    if (interval_days < 1)
        throw std::runtime_error("interval_days must be >= 1");
    for (std::size_t i = 1; i < history.size(); ++i)
        if (history[i].timestamp < history[i - 1].timestamp)
            throw std::runtime_error("baseline history is not sorted by committer time");

    const std::int64_t last_ts = history.back().timestamp;
    const std::int64_t interval = std::int64_t(interval_days) * kSecondsPerDay;

    std::vector<BaselineVersion> versions;
    std::string previous_commit;
    for (std::int64_t grid = start_time; grid <= last_ts; grid += interval) {
        // latest commit at or before the grid point
        const CommitRecord* pick = nullptr;
        for (const CommitRecord& c : history) {
            if (c.timestamp > grid)
                break;
            pick = &c;
        }
        if (!pick)
            continue; // grid point before the first commit
        if (pick->hash == previous_commit)
            continue; // same codebase state, collapse
        previous_commit = pick->hash;
        BaselineVersion v;
        v.label = static_cast<int>(versions.size()) + 1;
        v.snapshot_time = grid;
        v.commit_hash = pick->hash;
        versions.push_back(std::move(v));
    }

    if (versions.empty())
        throw std::runtime_error("no grid point selects a commit; check start_time against "
                                 "the history span");

    for (BaselineVersion& v : versions) {
        const std::filesystem::path root = trees(v.commit_hash);
        v.tree_path = root.string();
        const FileScan scan = classify_source_files(root, table, threads);
        for (const SourceFile& f : scan.files) {
            v.file_hashes.insert(f.content_hash);
            v.file_paths.insert(f.rel_path);
        }
    }
    return versions;
}

std::optional<SimilarityScore> s_dir(const ProjectFiles& source, const std::string& target_id,
                                     const std::unordered_set<std::string>& target_paths) {
    if (source.file_paths.empty())
        return std::nullopt;
    SimilarityScore s;
    s.source = source.project_id;
    s.target = target_id;
    s.total_files = static_cast<std::int64_t>(source.file_paths.size());
    for (const std::string& p : source.file_paths)
        if (target_paths.count(p))
            ++s.matched_files;
    s.score = static_cast<double>(s.matched_files) / static_cast<double>(s.total_files);
    return s;
}

VersionMatch match_to_versions(const ProjectFiles& project,
                               const std::vector<BaselineVersion>& versions,
                               MatchMetric metric) {
    if (versions.empty())
        throw std::runtime_error("no baseline versions to match against");
    VersionMatch m;
    m.project_id = project.project_id;
    m.metric = metric;
    m.best_version = 0;
    m.best_score = -1.0;
    for (const BaselineVersion& v : versions) {
        const std::string target = "v" + std::to_string(v.label);
        const auto s = metric == MatchMetric::hash ? s_hash(project, target, v.file_hashes)
                                                   : s_dir(project, target, v.file_paths);
        const double score = s ? s->score : 0.0;
        m.per_version.emplace_back(v.label, score);
        if (score > m.best_score) { // strict: earliest version wins ties
            m.best_score = score;
            m.best_version = v.label;
        }
    }
    return m;
}

std::vector<VersionMatch> match_all_projects(const std::vector<ProjectFiles>& projects,
                                             const std::vector<BaselineVersion>& versions,
                                             MatchMetric metric, int threads) {
    if (versions.empty())
        throw std::runtime_error("no baseline versions to match against");
    std::vector<VersionMatch> out(projects.size());
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(projects.size()); ++i)
        out[i] = match_to_versions(projects[i], versions, metric);
    return out;
}

namespace serial {
std::vector<VersionMatch> match_all_projects(const std::vector<ProjectFiles>& projects,
                                             const std::vector<BaselineVersion>& versions,
                                             MatchMetric metric) {
    std::vector<VersionMatch> out;
    out.reserve(projects.size());
    for (const ProjectFiles& p : projects)
        out.push_back(match_to_versions(p, versions, metric));
    return out;
}
} // namespace serial

VersionHistogram version_histogram(const std::vector<VersionMatch>& matches, int version_count,
                                   const std::vector<double>& bands) {
    VersionHistogram hist;
    hist.bands = bands;
    hist.rows.assign(version_count, std::vector<std::int64_t>(bands.size(), 0));
    for (const VersionMatch& m : matches) {
        if (m.best_version < 1 || m.best_version > version_count)
            continue;
        for (std::size_t b = 0; b < bands.size(); ++b)
            if (m.best_score >= bands[b])
                ++hist.rows[m.best_version - 1][b];
    }
    return hist;
}

namespace {
constexpr const char* kVersionsSchema = "lineage-versions/1";
} // namespace

std::string versions_manifest_json(const std::vector<BaselineVersion>& versions) {
    ordered_json doc;
    doc["schema"] = kVersionsSchema;
    ordered_json arr = ordered_json::array();
    for (const BaselineVersion& v : versions) {
        ordered_json vj;
        vj["label"] = v.label;
        vj["time"] = format_iso8601(v.snapshot_time);
        vj["commit"] = v.commit_hash;
        vj["path"] = v.tree_path;
        vj["file_count"] = v.file_paths.size();
        arr.push_back(std::move(vj));
    }
    doc["versions"] = std::move(arr);
    return doc.dump(2) + "\n";
}

std::string matches_csv(const std::vector<VersionMatch>& matches) {
    std::string out = "project_id,metric,best_version,best_score\n";
    for (const VersionMatch& m : matches)
        out += csv_escape(m.project_id) + "," + to_string(m.metric) + "," +
               std::to_string(m.best_version) + "," + format_score(m.best_score) + "\n";
    return out;
}

std::string score_matrix_csv(const std::vector<VersionMatch>& matches) {
    std::string out = "project_id,metric,version,score\n";
    for (const VersionMatch& m : matches)
        for (const auto& [label, score] : m.per_version)
            out += csv_escape(m.project_id) + "," + to_string(m.metric) + "," +
                   std::to_string(label) + "," + format_score(score) + "\n";
    return out;
}

std::string histogram_csv(const VersionHistogram& hist) {
    std::string out = "version";
    for (double b : hist.bands)
        out += ",ge_" + format_score(b);
    out += "\n";
    for (std::size_t v = 0; v < hist.rows.size(); ++v) {
        out += std::to_string(v + 1);
        for (std::int64_t c : hist.rows[v])
            out += "," + std::to_string(c);
        out += "\n";
    }
    return out;
}

} // namespace lineage
