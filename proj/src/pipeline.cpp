#include "lineage/pipeline.hpp"

#include "lineage/baseline.hpp"
#include "lineage/corpus.hpp"
#include "lineage/derive_commit.hpp"
#include "lineage/derive_copyright.hpp"
#include "lineage/derive_name.hpp"
#include "lineage/edges.hpp"
#include "lineage/selection.hpp"
#include "lineage/similarity.hpp"
#include "lineage/solidity.hpp"
#include "lineage/util.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace lineage {

int resolve_threads(int requested) {
    if (requested > 0)
        return requested;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace {

std::string index_path(const RunConfig& c) {
    return c.index_path.empty() ? c.out_dir + "/index.json" : c.index_path;
}

std::string selection_path(const RunConfig& c) {
    return c.selection_path.empty() ? c.out_dir + "/selection.csv" : c.selection_path;
}

CorpusIndex load_index_artifact(const RunConfig& c) {
    const std::string path = index_path(c);
    if (!fs::exists(path))
        throw PrerequisiteError("missing index artifact: " + path + " (run 'index' first)");
    try {
        return load_index(path);
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
}

ExtensionTable extension_table_for(const RunConfig& c) {
    if (c.extensions_path.empty())
        return builtin_extension_table();
    try {
        return load_extension_table(c.extensions_path);
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
}

// selection.csv reader (our own format: project_id,repo_id,score,selected,excluded_by)
std::set<std::string> load_selected_repos(const RunConfig& c) {
    const std::string path = selection_path(c);
    if (!fs::exists(path))
        throw PrerequisiteError("missing selection artifact: " + path + " (run 'select' first)");
    std::set<std::string> selected;
    const std::vector<std::string> lines = split_lines(read_file(path));
    for (std::size_t i = 1; i < lines.size(); ++i) { // skip header
        const std::string& line = lines[i];
        std::vector<std::string> cols;
        std::size_t start = 0;
        for (std::size_t p = 0; p <= line.size(); ++p) {
            if (p == line.size() || line[p] == ',') {
                cols.push_back(line.substr(start, p - start));
                start = p + 1;
            }
        }
        if (cols.size() < 4)
            throw DataError(path + ": malformed row " + std::to_string(i + 1));
        if (cols[3] == "true")
            selected.insert(cols[1]);
    }
    return selected;
}

std::vector<ProjectFiles> project_files_for(const RunConfig& c, const CorpusIndex& index) {
    if (c.all_repos)
        return gather_project_files(index, nullptr);
    const std::set<std::string> selected = load_selected_repos(c);
    return gather_project_files(index, &selected);
}

void write_edge_artifacts(const RunConfig& c, const std::string& stem,
                          const std::vector<DerivationEdge>& edges) {
    write_file(c.out_dir + "/" + stem + ".json", serialize_edges(edges));
    write_file(c.out_dir + "/" + stem + ".csv", edges_to_csv(edges));
}

} // namespace

int cmd_index(const RunConfig& config) {
    if (config.manifest_path.empty())
        throw DataError("index requires --manifest");
    Manifest manifest;
    try {
        manifest = load_manifest(config.manifest_path);
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }

    const ExtensionTable table = extension_table_for(config);
    const int threads = resolve_threads(config.threads);

    std::map<std::string, FileScan> scans;
    for (RepositorySnapshot& repo : manifest.repos) {
        const auto log_path = manifest.commit_log_paths.find(repo.repo_id);
        if (log_path != manifest.commit_log_paths.end()) {
            try {
                repo.commit_log = load_commit_log(log_path->second, repo.repo_id);
            } catch (const std::exception& e) {
                throw DataError(e.what());
            }
            if (!repo.commit_log.empty())
                repo.created_at = repo.commit_log.front().timestamp;
        }
        try {
            scans[repo.repo_id] = classify_source_files(repo.root_path, table, threads);
        } catch (const std::exception& e) {
            throw DataError(e.what());
        }
        if (scans[repo.repo_id].skipped_unreadable > 0)
            std::cerr << "warning: " << repo.repo_id << ": "
                      << scans[repo.repo_id].skipped_unreadable << " unreadable file(s) skipped"
                      << std::endl;
    }

    CorpusIndex index;
    try {
        index = build_corpus_index(manifest, scans, table);
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
    save_index(index, index_path(config));
    std::cerr << "indexed " << index.projects.size() << " project(s), " << index.repos.size()
              << " repo(s)" << std::endl;
    return 0;
}

int cmd_select(const RunConfig& config) {
    const CorpusIndex index = load_index_artifact(config);

    ExclusionList exclusions;
    try {
        exclusions = config.exclusions_path.empty() ? builtin_exclusion_list()
                                                    : load_exclusion_list(config.exclusions_path);
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
    SelectionOverrides overrides;
    if (!config.overrides_path.empty()) {
        try {
            overrides = load_overrides(config.overrides_path);
        } catch (const std::exception& e) {
            throw DataError(e.what());
        }
    }

    std::int64_t reference_time = 0;
    if (config.reference_time) {
        reference_time = *config.reference_time;
    } else {
        for (const RepositorySnapshot& r : index.repos)
            reference_time = std::max(reference_time, r.last_update);
    }

    std::string csv = "project_id,repo_id,score,selected,excluded_by\n";
    for (const Project& p : index.projects) {
        std::vector<RepoRating> ratings;
        for (const std::string& repo_id : p.repo_ids) {
            const RepositorySnapshot* repo = index.find_repo(repo_id);
            if (!repo)
                continue;
            try {
                ratings.push_back(
                    score_repository(*repo, p.name, p.kind, reference_time, exclusions));
            } catch (const std::exception& e) {
                throw DataError(e.what());
            }
        }
        std::vector<std::string> selected = select_repositories(ratings);
        selected = apply_overrides(p.project_id, std::move(selected), ratings, overrides);
        const std::set<std::string> selected_set(selected.begin(), selected.end());

        std::vector<const RepoRating*> ordered;
        for (const RepoRating& r : ratings)
            ordered.push_back(&r);
        std::sort(ordered.begin(), ordered.end(), [](const RepoRating* a, const RepoRating* b) {
            if (a->excluded != b->excluded)
                return !a->excluded;
            if (a->score != b->score)
                return a->score > b->score;
            if (a->fork_count != b->fork_count)
                return a->fork_count > b->fork_count;
            return a->repo_name < b->repo_name;
        });
        for (const RepoRating* r : ordered)
            csv += csv_escape(p.project_id) + "," + csv_escape(r->repo_id) + "," +
                   std::to_string(r->score) + "," +
                   (selected_set.count(r->repo_id) ? "true" : "false") + "," +
                   csv_escape(r->excluded_by) + "\n";
    }
    write_file(selection_path(config), csv);
    return 0;
}

int cmd_derive_name(const RunConfig& config) {
    const CorpusIndex index = load_index_artifact(config);
    std::set<std::string> stoplist;
    try {
        stoplist = config.stoplist_path.empty() ? builtin_stoplist()
                                                : load_stoplist(config.stoplist_path);
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
    write_edge_artifacts(config, "edges_name", detect_name_derivations(index.projects, stoplist));
    return 0;
}

int cmd_derive_commit(const RunConfig& config) {
    const CorpusIndex index = load_index_artifact(config);
    const CommitIndex commits = index_commits(index.repos);
    write_edge_artifacts(config, "edges_commit", detect_fork_derivations(commits));
    return 0;
}

int cmd_derive_copyright(const RunConfig& config) {
    const CorpusIndex index = load_index_artifact(config);
    NameMap aliases, authors;
    try {
        aliases = config.alias_map_path.empty() ? NameMap::from_pairs(builtin_alias_entries())
                                                : NameMap::load_csv(config.alias_map_path);
        authors = config.author_map_path.empty() ? NameMap::from_pairs(builtin_author_entries())
                                                 : NameMap::load_csv(config.author_map_path);
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }

    std::vector<Attribution> attributions;
    for (const RepositorySnapshot& repo : index.repos) {
        std::vector<Attribution> found;
        try {
            found = extract_attributions(repo, index.extension_table);
        } catch (const std::exception& e) {
            throw DataError(std::string("repo ") + repo.repo_id + ": " + e.what());
        }
        for (Attribution& a : found) {
            a.resolved_project = resolve_attribution(a.raw_line, index.projects, aliases, authors);
            attributions.push_back(std::move(a));
        }
    }

    const std::vector<DerivationEdge> edges =
        detect_copyright_derivations(index.projects, attributions);
    write_edge_artifacts(config, "edges_copyright", edges);

    // in-degree ranking: projects by number of distinct derivatives
    std::map<std::string, std::set<std::string>> derivers;
    for (const DerivationEdge& e : edges)
        derivers[e.target].insert(e.source);
    std::vector<std::pair<std::string, std::size_t>> ranked;
    for (const auto& [target, sources] : derivers)
        ranked.emplace_back(target, sources.size());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    std::string csv = "project_id,in_degree\n";
    for (const auto& [target, degree] : ranked)
        csv += csv_escape(target) + "," + std::to_string(degree) + "\n";
    write_file(config.out_dir + "/copyright_indegree.csv", csv);
    return 0;
}

int cmd_similarity(const RunConfig& config) {
    if (config.threshold < 0.0 || config.threshold >= 1.0)
        throw DataError("threshold must lie in [0, 1)");
    const CorpusIndex index = load_index_artifact(config);
    const std::vector<ProjectFiles> projects = project_files_for(config, index);
    const int threads = resolve_threads(config.threads);

    const SimilarityGraph graph = build_similarity_graph(projects, config.threshold, threads);
    write_file(config.out_dir + "/graph.json", serialize_graph(graph, index));
    write_file(config.out_dir + "/graph.dot", graph_to_dot(graph));

    const std::vector<ComponentStats> stats = component_stats(graph);
    write_file(config.out_dir + "/component_stats.csv", component_stats_csv(stats));
    write_file(config.out_dir + "/component_degrees.csv", component_degrees_csv(stats));

    std::vector<DerivationEdge> edges;
    for (const GraphEdge& ge : graph.edges) {
        DerivationEdge e;
        e.source = ge.source;
        e.target = ge.target;
        e.method = DerivationMethod::filehash;
        e.weight = ge.score;
        e.evidence = {"score:" + format_score(ge.score)};
        edges.push_back(std::move(e));
    }
    write_edge_artifacts(config, "edges_filehash", edges);
    std::cerr << "similarity graph: " << graph.nodes.size() << " node(s), "
              << graph.edges.size() << " edge(s), " << graph.components.size()
              << " component(s)" << std::endl;
    return 0;
}

namespace {

struct BaselineConfig {
    std::string commit_log;
    std::string trees_dir;
    std::int64_t start_time = 0;
};

BaselineConfig load_baseline_config(const std::string& path) {
    if (path.empty())
        throw DataError("baseline requires --baseline-config");
    if (!fs::exists(path))
        throw DataError("baseline config not found: " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(read_file(path));
    } catch (const std::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    if (!doc.contains("schema") || doc["schema"] != "lineage-baseline-config/1")
        throw DataError(path + ": baseline config schema mismatch");
    const fs::path base = fs::path(path).parent_path();
    auto resolve = [&base](const std::string& p) {
        fs::path fp(p);
        return (fp.is_absolute() ? fp : base / fp).lexically_normal().string();
    };
    BaselineConfig c;
    try {
        c.commit_log = resolve(doc["commit_log"].get<std::string>());
        c.trees_dir = resolve(doc["trees_dir"].get<std::string>());
        c.start_time = parse_iso8601(doc["start_time"].get<std::string>());
    } catch (const std::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    return c;
}

} // namespace

int cmd_baseline(const RunConfig& config) {
    const CorpusIndex index = load_index_artifact(config);
    const BaselineConfig bc = load_baseline_config(config.baseline_config_path);
    const std::vector<ProjectFiles> projects = project_files_for(config, index);
    const int threads = resolve_threads(config.threads);

    std::vector<CommitRecord> history;
    try {
        history = load_commit_log(bc.commit_log, "baseline");
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }

    const TreeProvider trees = [&bc](const std::string& commit) {
        const fs::path tree = fs::path(bc.trees_dir) / commit;
        if (!fs::is_directory(tree))
            throw DataError("baseline tree not materialized for commit " + commit + ": " +
                            tree.string());
        return tree;
    };

    std::vector<BaselineVersion> versions;
    try {
        versions = snapshot_baseline(history, trees, bc.start_time, config.interval_days,
                                     index.extension_table, threads);
    } catch (const DataError&) {
        throw;
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
    write_file(config.out_dir + "/versions.json", versions_manifest_json(versions));

    for (const MatchMetric metric : {MatchMetric::hash, MatchMetric::dir}) {
        const std::vector<VersionMatch> matches =
            match_all_projects(projects, versions, metric, threads);
        const std::string stem = std::string(to_string(metric));
        write_file(config.out_dir + "/matches_" + stem + ".csv", matches_csv(matches));
        write_file(config.out_dir + "/scores_" + stem + ".csv", score_matrix_csv(matches));
        const VersionHistogram hist = version_histogram(
            matches, static_cast<int>(versions.size()), config.score_bands);
        write_file(config.out_dir + "/histogram_" + stem + ".csv", histogram_csv(hist));
    }
    std::cerr << "baseline: " << versions.size() << " version(s), " << projects.size()
              << " project(s) matched" << std::endl;
    return 0;
}

int cmd_solidity(const RunConfig& config) {
    const CorpusIndex index = load_index_artifact(config);
    const int threads = resolve_threads(config.threads);

    std::vector<ContractInput> inputs;
    for (const Project& p : index.projects) {
        for (const ContractSource& c : p.contracts) {
            ContractInput in;
            in.file_id = c.path;
            in.origin = c.origin;
            try {
                in.source = read_file(c.path);
            } catch (const std::exception& e) {
                throw DataError(e.what());
            }
            inputs.push_back(std::move(in));
        }
    }

    const std::vector<ContractProfile> profiles = analyze_contracts(inputs, threads);
    for (const ContractProfile& p : profiles) {
        if (!p.parse_error.empty())
            std::cerr << "warning: " << p.file_id << ": " << p.parse_error << std::endl;
        if (p.unterminated_comment)
            std::cerr << "warning: " << p.file_id << ": unterminated block comment" << std::endl;
    }
    write_file(config.out_dir + "/contracts.json", profiles_json(profiles));

    for (const CdfFeature feature :
         {CdfFeature::types, CdfFeature::solidity_version, CdfFeature::safemath_version}) {
        for (const ContractOrigin origin :
             {ContractOrigin::deployed, ContractOrigin::repository}) {
            const PopularityCdf cdf = aggregate_cdf(profiles, feature, origin);
            write_file(config.out_dir + "/cdf_" + to_string(feature) + "_" + to_string(origin) +
                           ".csv",
                       cdf_csv(cdf));
        }
    }
    write_file(config.out_dir + "/template_counts.csv",
               template_counts_csv(count_templates(profiles)));
    return 0;
}

int cmd_report(const RunConfig& config) {
    const CorpusIndex index = load_index_artifact(config);

    std::vector<DerivationEdge> all;
    for (const char* stem :
         {"edges_name", "edges_commit", "edges_copyright", "edges_filehash"}) {
        const std::string path = config.out_dir + "/" + std::string(stem) + ".json";
        if (!fs::exists(path))
            throw PrerequisiteError("missing edge artifact: " + path);
        std::vector<DerivationEdge> edges;
        try {
            edges = parse_edges(read_file(path));
        } catch (const std::exception& e) {
            throw DataError(e.what());
        }
        all.insert(all.end(), edges.begin(), edges.end());
    }
    std::stable_sort(all.begin(), all.end(), [](const DerivationEdge& a, const DerivationEdge& b) {
        if (a.method != b.method)
            return static_cast<int>(a.method) < static_cast<int>(b.method);
        if (a.source != b.source)
            return a.source < b.source;
        return a.target < b.target;
    });
    write_file(config.out_dir + "/derivations.json", serialize_edges(all));
    write_file(config.out_dir + "/derivations.csv", edges_to_csv(all));

    // per-project roll-up: the targets each project derives from, per method
    std::map<std::string, std::map<DerivationMethod, std::set<std::string>>> by_source;
    for (const DerivationEdge& e : all)
        by_source[e.source][e.method].insert(e.target);

    std::string csv = "project_id,name,name_targets,commit_targets,copyright_targets,"
                      "filehash_targets\n";
    for (const Project& p : index.projects) {
        csv += csv_escape(p.project_id) + "," + csv_escape(p.name);
        const auto it = by_source.find(p.project_id);
        for (const DerivationMethod m :
             {DerivationMethod::name, DerivationMethod::commit, DerivationMethod::copyright,
              DerivationMethod::filehash}) {
            std::string joined;
            if (it != by_source.end()) {
                const auto targets = it->second.find(m);
                if (targets != it->second.end()) {
                    for (const std::string& t : targets->second) {
                        if (!joined.empty())
                            joined += "; ";
                        joined += t;
                    }
                }
            }
            csv += "," + csv_escape(joined);
        }
        csv += "\n";
    }
    write_file(config.out_dir + "/project_summary.csv", csv);
    return 0;
}

} // namespace lineage
