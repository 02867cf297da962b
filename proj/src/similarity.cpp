#include "lineage/similarity.hpp"

#include "lineage/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

using ordered_json = nlohmann::ordered_json;

namespace lineage {

std::vector<ProjectFiles> gather_project_files(const CorpusIndex& index,
                                               const std::set<std::string>* selected_repos) {
    std::vector<ProjectFiles> out;
    for (const Project& p : index.projects) {
        ProjectFiles pf;
        pf.project_id = p.project_id;
        for (const std::string& repo_id : p.repo_ids) {
            if (selected_repos && !selected_repos->count(repo_id))
                continue;
            const auto scan = index.files.find(repo_id);
            if (scan == index.files.end())
                continue;
            for (const SourceFile& f : scan->second.files) {
                pf.file_hashes.push_back(f.content_hash);
                pf.file_paths.push_back(f.rel_path);
                pf.hash_set.insert(f.content_hash);
                pf.path_set.insert(f.rel_path);
            }
        }
        if (!pf.file_hashes.empty())
            out.push_back(std::move(pf));
    }
    return out;
}

std::optional<SimilarityScore> s_hash(const ProjectFiles& source, const std::string& target_id,
                                      const std::unordered_set<std::string>& target_hashes) {
    if (source.file_hashes.empty())
        return std::nullopt;
    SimilarityScore s;
    s.source = source.project_id;
    s.target = target_id;
    s.total_files = static_cast<std::int64_t>(source.file_hashes.size());
    for (const std::string& h : source.file_hashes)
        if (target_hashes.count(h))
            ++s.matched_files;
    s.score = static_cast<double>(s.matched_files) / static_cast<double>(s.total_files);
    return s;
}

std::vector<SimilarityScore> score_all_pairs(const std::vector<ProjectFiles>& projects,
                                             int threads) {
    const std::size_t n = projects.size();

    // Inverted map: content hash -> projects holding it. Restricting each
    // source to projects it shares a hash with skips exactly the score-0
    // pairs.
    std::unordered_map<std::string, std::vector<std::uint32_t>> holders;
    for (std::size_t j = 0; j < n; ++j)
        for (const std::string& h : projects[j].hash_set)
            holders[h].push_back(static_cast<std::uint32_t>(j));

    std::vector<std::vector<SimilarityScore>> per_source(n);

#pragma omp parallel for schedule(static) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        const ProjectFiles& src = projects[i];
        std::vector<char> is_candidate(n, 0);
        for (const std::string& h : src.hash_set) {
            const auto it = holders.find(h);
            if (it == holders.end())
                continue;
            for (std::uint32_t j : it->second)
                if (j != static_cast<std::uint32_t>(i))
                    is_candidate[j] = 1;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_candidate[j])
                continue;
            auto s = s_hash(src, projects[j].project_id, projects[j].hash_set);
            if (s && s->matched_files > 0)
                per_source[i].push_back(std::move(*s));
        }
    }

    std::vector<SimilarityScore> out;
    for (auto& v : per_source)
        out.insert(out.end(), std::make_move_iterator(v.begin()),
                   std::make_move_iterator(v.end()));
    return out;
}

namespace serial {
std::vector<SimilarityScore> score_all_pairs(const std::vector<ProjectFiles>& projects) {
    std::vector<SimilarityScore> out;
    for (const ProjectFiles& src : projects) {
        for (const ProjectFiles& dst : projects) {
            if (&src == &dst)
                continue;
            auto s = s_hash(src, dst.project_id, dst.hash_set);
            if (s && s->matched_files > 0)
                out.push_back(std::move(*s));
        }
    }
    return out;
}
} // namespace serial

namespace {

// Union-find over node indices.
struct DisjointSet {
    std::vector<std::size_t> parent;
    explicit DisjointSet(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace

SimilarityGraph build_similarity_graph(const std::vector<ProjectFiles>& projects,
                                       double threshold, int threads) {
    if (threshold < 0.0 || threshold >= 1.0)
        throw std::runtime_error("threshold must lie in [0, 1)");

    SimilarityGraph g;
    g.threshold = threshold;
    g.scored_projects = static_cast<std::int64_t>(projects.size());

    for (SimilarityScore& s : score_all_pairs(projects, threads))
        if (s.score > threshold)
            g.edges.push_back(GraphEdge{std::move(s.source), std::move(s.target), s.score});
    std::sort(g.edges.begin(), g.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        if (a.source != b.source)
            return a.source < b.source;
        return a.target < b.target;
    });

    std::set<std::string> node_set;
    for (const GraphEdge& e : g.edges) {
        node_set.insert(e.source);
        node_set.insert(e.target);
    }
    g.nodes.assign(node_set.begin(), node_set.end());

    std::map<std::string, std::size_t> node_pos;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        node_pos[g.nodes[i]] = i;

    DisjointSet ds(g.nodes.size());
    for (const GraphEdge& e : g.edges)
        ds.unite(node_pos[e.source], node_pos[e.target]);

    std::map<std::size_t, std::vector<std::string>> groups;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        groups[ds.find(i)].push_back(g.nodes[i]);

    for (auto& [root, members] : groups) {
        (void)root;
        g.components.push_back(std::move(members)); // members already id-sorted
    }
    std::sort(g.components.begin(), g.components.end(),
              [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
                  if (a.size() != b.size())
                      return a.size() > b.size();
                  return a.front() < b.front();
              });
    return g;
}

std::vector<ComponentStats> component_stats(const SimilarityGraph& graph) {
    std::map<std::string, std::size_t> component_of;
    for (std::size_t c = 0; c < graph.components.size(); ++c)
        for (const std::string& node : graph.components[c])
            component_of[node] = c;

    std::vector<ComponentStats> stats(graph.components.size());
    std::vector<double> score_sum(graph.components.size(), 0.0);
    std::vector<std::map<std::string, int>> degree(graph.components.size());

    for (std::size_t c = 0; c < graph.components.size(); ++c) {
        stats[c].nodes = graph.components[c];
        for (const std::string& node : graph.components[c])
            degree[c][node] = 0;
    }
    for (const GraphEdge& e : graph.edges) {
        const std::size_t c = component_of.at(e.source);
        ++stats[c].edge_count;
        score_sum[c] += e.score;
        ++degree[c][e.source];
        ++degree[c][e.target];
    }
    for (std::size_t c = 0; c < stats.size(); ++c) {
        stats[c].mean_score =
            stats[c].edge_count ? score_sum[c] / double(stats[c].edge_count) : 0.0;
        for (const auto& [node, deg] : degree[c])
            stats[c].degrees.emplace_back(node, deg);
    }
    return stats;
}

namespace {
constexpr const char* kGraphSchema = "lineage-graph/1";
} // namespace

std::string serialize_graph(const SimilarityGraph& graph, const CorpusIndex& index) {
    ordered_json doc;
    doc["schema"] = kGraphSchema;
    doc["threshold"] = graph.threshold;
    doc["scored_projects"] = graph.scored_projects;

    ordered_json nodes = ordered_json::array();
    for (const std::string& id : graph.nodes) {
        ordered_json nj;
        nj["id"] = id;
        const Project* p = index.find_project(id);
        nj["name"] = p ? p->name : id;
        nj["category"] = p ? p->category : "";
        nodes.push_back(std::move(nj));
    }
    doc["nodes"] = std::move(nodes);

    ordered_json edges = ordered_json::array();
    for (const GraphEdge& e : graph.edges)
        edges.push_back({{"source", e.source}, {"target", e.target}, {"score", e.score}});
    doc["edges"] = std::move(edges);
    doc["components"] = graph.components;
    return doc.dump(2) + "\n";
}

SimilarityGraph parse_graph(const std::string& json_text) {
    ordered_json doc = ordered_json::parse(json_text);
    if (!doc.contains("schema") || doc["schema"] != kGraphSchema)
        throw std::runtime_error("graph schema mismatch: expected " + std::string(kGraphSchema));
    SimilarityGraph g;
    g.threshold = doc["threshold"].get<double>();
    g.scored_projects = doc["scored_projects"].get<std::int64_t>();
    for (const auto& nj : doc["nodes"])
        g.nodes.push_back(nj["id"].get<std::string>());
    for (const auto& ej : doc["edges"])
        g.edges.push_back(GraphEdge{ej["source"].get<std::string>(),
                                    ej["target"].get<std::string>(),
                                    ej["score"].get<double>()});
    g.components = doc["components"].get<std::vector<std::vector<std::string>>>();
    return g;
}

std::string graph_to_dot(const SimilarityGraph& graph) {
    std::string out = "digraph similarity {\n";
    for (const std::string& node : graph.nodes)
        out += "  \"" + node + "\";\n";
    for (const GraphEdge& e : graph.edges)
        out += "  \"" + e.source + "\" -> \"" + e.target + "\" [label=\"" +
               format_score(e.score) + "\"];\n";
    out += "}\n";
    return out;
}

std::string component_stats_csv(const std::vector<ComponentStats>& stats) {
    std::string out = "component,node_count,edge_count,mean_score\n";
    for (std::size_t c = 0; c < stats.size(); ++c)
        out += std::to_string(c) + "," + std::to_string(stats[c].nodes.size()) + "," +
               std::to_string(stats[c].edge_count) + "," + format_score(stats[c].mean_score) +
               "\n";
    return out;
}

std::string component_degrees_csv(const std::vector<ComponentStats>& stats) {
    std::string out = "component,project_id,degree\n";
    for (std::size_t c = 0; c < stats.size(); ++c)
        for (const auto& [node, deg] : stats[c].degrees)
            out += std::to_string(c) + "," + csv_escape(node) + "," + std::to_string(deg) + "\n";
    return out;
}

} // namespace lineage
