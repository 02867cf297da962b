#include "lineage/sha256.hpp"
#include "lineage/similarity.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <map>
#include <random>
#include <set>

using namespace lineage;

namespace {

// Build ProjectFiles straight from byte contents; the oracle below never
// touches the hashes.
struct RawProject {
    std::string id;
    std::vector<std::pair<std::string, std::string>> files; // rel_path -> bytes
};

ProjectFiles to_project_files(const RawProject& raw) {
    ProjectFiles pf;
    pf.project_id = raw.id;
    for (const auto& [path, bytes] : raw.files) {
        const std::string h = sha256_hex(bytes);
        pf.file_hashes.push_back(h);
        pf.file_paths.push_back(path);
        pf.hash_set.insert(h);
        pf.path_set.insert(path);
    }
    return pf;
}

// Brute-force S_hash over raw bytes: for every file of A, check byte
// equality against every file of B.
std::pair<long, long> oracle_match(const RawProject& a, const RawProject& b) {
    long matched = 0;
    for (const auto& [pa, ba] : a.files) {
        (void)pa;
        bool hit = false;
        for (const auto& [pb, bb] : b.files) {
            (void)pb;
            if (ba == bb) {
                hit = true;
                break;
            }
        }
        if (hit)
            ++matched;
    }
    return {matched, static_cast<long>(a.files.size())};
}

std::vector<RawProject> random_corpus(std::mt19937& rng, int max_projects, int max_files) {
    const int n = 2 + static_cast<int>(rng() % (max_projects - 1));
    // shared byte pool drives overlap; the pool includes the empty file
    std::vector<std::string> pool = {""};
    for (int i = 0; i < 30; ++i)
        pool.push_back("shared " + std::to_string(rng() % 10) + "\n");

    std::vector<RawProject> corpus;
    for (int p = 0; p < n; ++p) {
        RawProject raw;
        raw.id = "p" + std::to_string(p);
        const int files = 1 + static_cast<int>(rng() % max_files);
        for (int f = 0; f < files; ++f) {
            std::string bytes;
            if (rng() % 3 != 0)
                bytes = pool[rng() % pool.size()];
            else
                bytes = "unique " + std::to_string(p) + "/" + std::to_string(f) + "\n";
            raw.files.emplace_back("src/f" + std::to_string(f) + ".c", bytes);
        }
        corpus.push_back(std::move(raw));
    }
    return corpus;
}

} // namespace

TEST_CASE("s_hash: self similarity is 1.0") {
    RawProject a{"a", {{"f1.c", "one\n"}, {"f2.c", "two\n"}}};
    const ProjectFiles pf = to_project_files(a);
    const auto s = s_hash(pf, "a", pf.hash_set);
    REQUIRE(s.has_value());
    CHECK(s->score == 1.0);
    CHECK(s->matched_files == 2);
}

TEST_CASE("s_hash: half overlap scores 0.5") {
    RawProject c1{"c1", {{"a.c", "A"}, {"b.c", "B"}, {"c.c", "C"}, {"d.c", "D"}}};
    RawProject c2{"c2", {{"x/a.c", "A"}, {"y/b.c", "B"}, {"z.c", "Z"}}};
    const auto s = s_hash(to_project_files(c1), "c2", to_project_files(c2).hash_set);
    REQUIRE(s.has_value());
    CHECK(s->score == 0.5);
    CHECK(s->matched_files == 2);
    CHECK(s->total_files == 4);
    const auto [m, t] = oracle_match(c1, c2);
    CHECK(s->matched_files == m);
    CHECK(s->total_files == t);
}

TEST_CASE("s_hash: license-only repository scores 1.0 against a superset") {
    RawProject lone{"lone", {{"LICENSE.md", "LGPL-3.0 text\n"}}};
    RawProject big{"big",
                   {{"LICENSE.md", "LGPL-3.0 text\n"}, {"src/a.c", "a"}, {"src/b.c", "b"}}};
    const auto s = s_hash(to_project_files(lone), "big", to_project_files(big).hash_set);
    REQUIRE(s.has_value());
    CHECK(s->score == 1.0);
}

TEST_CASE("s_hash: zero files is absent, distinct from score 0") {
    ProjectFiles empty;
    empty.project_id = "empty";
    CHECK_FALSE(s_hash(empty, "x", {}).has_value());

    RawProject a{"a", {{"f.c", "self"}}};
    const auto zero = s_hash(to_project_files(a), "b", {});
    REQUIRE(zero.has_value());
    CHECK(zero->score == 0.0);
}

TEST_CASE("s_hash: duplicate source files count per occurrence") {
    RawProject a{"a", {{"f1.c", "dup"}, {"f2.c", "dup"}, {"f3.c", "solo"}}};
    RawProject b{"b", {{"g.c", "dup"}}};
    const auto s = s_hash(to_project_files(a), "b", to_project_files(b).hash_set);
    REQUIRE(s.has_value());
    CHECK(s->matched_files == 2); // both occurrences of "dup"
    CHECK(s->total_files == 3);
}

TEST_CASE("s_hash: empty files match like any file") {
    RawProject a{"a", {{"empty1.c", ""}, {"real.c", "code"}}};
    RawProject b{"b", {{"other_empty.c", ""}}};
    const auto s = s_hash(to_project_files(a), "b", to_project_files(b).hash_set);
    REQUIRE(s.has_value());
    CHECK(s->matched_files == 1);
}

TEST_CASE("score_all_pairs: parallel kernel equals the serial reference") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<ProjectFiles> projects;
        for (const RawProject& raw : random_corpus(rng, 10, 30))
            projects.push_back(to_project_files(raw));
        const auto serial_scores = serial::score_all_pairs(projects);
        for (int threads : {1, 4, 8}) {
            const auto parallel_scores = score_all_pairs(projects, threads);
            REQUIRE(parallel_scores.size() == serial_scores.size());
            for (std::size_t i = 0; i < serial_scores.size(); ++i) {
                CHECK(parallel_scores[i].source == serial_scores[i].source);
                CHECK(parallel_scores[i].target == serial_scores[i].target);
                CHECK(parallel_scores[i].matched_files == serial_scores[i].matched_files);
                CHECK(parallel_scores[i].total_files == serial_scores[i].total_files);
                CHECK(parallel_scores[i].score == serial_scores[i].score);
            }
        }
    }
}

TEST_CASE("score_all_pairs: exact agreement with byte-comparison oracle") {
    std::mt19937 rng(47);
    for (int trial = 0; trial < 25; ++trial) {
        const std::vector<RawProject> corpus = random_corpus(rng, 10, 50);
        std::vector<ProjectFiles> projects;
        for (const RawProject& raw : corpus)
            projects.push_back(to_project_files(raw));

        std::map<std::pair<std::string, std::string>, std::pair<long, long>> actual;
        for (const SimilarityScore& s : score_all_pairs(projects, 4))
            actual[{s.source, s.target}] = {s.matched_files, s.total_files};

        for (const RawProject& a : corpus) {
            for (const RawProject& b : corpus) {
                if (a.id == b.id)
                    continue;
                const auto [matched, total] = oracle_match(a, b);
                const auto it = actual.find({a.id, b.id});
                if (matched == 0) {
                    CHECK(it == actual.end()); // skipped as score 0
                } else {
                    REQUIRE(it != actual.end());
                    CHECK(it->second.first == matched);
                    CHECK(it->second.second == total);
                }
            }
        }
    }
}

TEST_CASE("monotonicity: adding a duplicate of an unmatched file never lowers the score") {
    RawProject a{"a", {{"f1.c", "one"}, {"f2.c", "two"}, {"f3.c", "three"}}};
    RawProject b{"b", {{"g1.c", "one"}}};
    const auto before = s_hash(to_project_files(a), "b", to_project_files(b).hash_set);
    RawProject b2 = b;
    b2.files.emplace_back("g2.c", "two");
    const auto after = s_hash(to_project_files(a), "b2", to_project_files(b2).hash_set);
    CHECK(after->score >= before->score);
    CHECK(after->score == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("graph: three identical projects give 6 edges, one component") {
    RawProject proto{"", {{"a.c", "A"}, {"b.c", "B"}}};
    std::vector<ProjectFiles> projects;
    for (const char* id : {"p1", "p2", "p3"}) {
        RawProject r = proto;
        r.id = id;
        projects.push_back(to_project_files(r));
    }
    const SimilarityGraph g = build_similarity_graph(projects, 0.7, 2);
    CHECK(g.edges.size() == 6);
    CHECK(g.nodes.size() == 3);
    REQUIRE(g.components.size() == 1);
    CHECK(g.components[0].size() == 3);
    for (const GraphEdge& e : g.edges)
        CHECK(e.score == 1.0);
}

TEST_CASE("graph: disjoint projects serialize no nodes") {
    std::vector<ProjectFiles> projects = {
        to_project_files(RawProject{"a", {{"f.c", "unique-a"}}}),
        to_project_files(RawProject{"b", {{"f.c", "unique-b"}}}),
    };
    const SimilarityGraph g = build_similarity_graph(projects, 0.7, 1);
    CHECK(g.edges.empty());
    CHECK(g.nodes.empty());
    CHECK(g.components.empty());
}

TEST_CASE("graph: threshold is strict") {
    // 7 of 10 files match: score 0.7 exactly, which must NOT pass
    RawProject a{"a", {}};
    RawProject b{"b", {}};
    for (int i = 0; i < 10; ++i) {
        const std::string bytes = "file" + std::to_string(i);
        a.files.emplace_back("f" + std::to_string(i) + ".c", bytes);
        if (i < 7)
            b.files.emplace_back("g" + std::to_string(i) + ".c", bytes);
    }
    std::vector<ProjectFiles> projects = {to_project_files(a), to_project_files(b)};
    const SimilarityGraph g = build_similarity_graph(projects, 0.7, 1);
    for (const GraphEdge& e : g.edges)
        CHECK_FALSE((e.source == "a" && e.target == "b"));
    // b -> a is 7/7 = 1.0 and passes
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].source == "b");
}

TEST_CASE("graph: planted clusters equal brute-force all-pairs graph") {
    std::mt19937 rng(61);
    // two planted clusters of near-identical projects plus noise
    std::vector<RawProject> corpus;
    for (int c = 0; c < 2; ++c) {
        RawProject proto{"", {}};
        for (int f = 0; f < 8; ++f)
            proto.files.emplace_back("f" + std::to_string(f) + ".c",
                                     "cluster" + std::to_string(c) + " file" +
                                         std::to_string(f));
        for (int m = 0; m < 4; ++m) {
            RawProject member = proto;
            member.id = "c" + std::to_string(c) + "m" + std::to_string(m);
            if (m > 0) // perturb one file, staying above threshold
                member.files[0].second += " v" + std::to_string(m);
            corpus.push_back(member);
        }
    }
    for (int i = 0; i < 4; ++i) {
        RawProject noise{"noise" + std::to_string(i), {}};
        for (int f = 0; f < 5; ++f)
            noise.files.emplace_back("n" + std::to_string(f) + ".c",
                                     "noise " + std::to_string(rng()));
        corpus.push_back(noise);
    }

    std::vector<ProjectFiles> projects;
    for (const RawProject& raw : corpus)
        projects.push_back(to_project_files(raw));
    const SimilarityGraph g = build_similarity_graph(projects, 0.7, 4);

    // oracle: no candidate pruning, byte comparison, same threshold
    std::set<std::pair<std::string, std::string>> expected;
    for (const RawProject& a : corpus)
        for (const RawProject& b : corpus) {
            if (a.id == b.id)
                continue;
            const auto [matched, total] = oracle_match(a, b);
            if (total > 0 && double(matched) / double(total) > 0.7)
                expected.insert({a.id, b.id});
        }
    std::set<std::pair<std::string, std::string>> actual;
    for (const GraphEdge& e : g.edges)
        actual.insert({e.source, e.target});
    CHECK(actual == expected);
    CHECK(g.components.size() == 2);
    CHECK(g.components[0].size() == 4);
    CHECK(g.components[1].size() == 4);
}

TEST_CASE("component stats: star fixture") {
    RawProject hub{"hub", {{"f.c", "common"}}};
    std::vector<ProjectFiles> projects = {to_project_files(hub)};
    for (int i = 0; i < 5; ++i) {
        RawProject leaf{"leaf" + std::to_string(i),
                        {{"f.c", "common"}, {"u1.c", "u1-" + std::to_string(i)},
                         {"u2.c", "u2-" + std::to_string(i)}}};
        projects.push_back(to_project_files(leaf));
    }
    // hub -> leaf scores 1.0; leaf -> hub scores 1/3
    const SimilarityGraph g = build_similarity_graph(projects, 0.7, 2);
    CHECK(g.edges.size() == 5);
    const auto stats = component_stats(g);
    REQUIRE(stats.size() == 1);
    CHECK(stats[0].nodes.size() == 6);
    CHECK(stats[0].edge_count == 5);
    CHECK(stats[0].mean_score == 1.0);
    for (const auto& [node, degree] : stats[0].degrees)
        CHECK(degree == (node == "hub" ? 5 : 1));
}

TEST_CASE("component stats: single edge graph") {
    std::vector<ProjectFiles> projects = {
        to_project_files(RawProject{"a", {{"f.c", "same"}}}),
        to_project_files(RawProject{"b", {{"f.c", "same"}, {"g.c", "extra"}}}),
    };
    const SimilarityGraph g = build_similarity_graph(projects, 0.7, 1);
    REQUIRE(g.edges.size() == 1); // a->b 1.0; b->a 0.5 below threshold
    const auto stats = component_stats(g);
    REQUIRE(stats.size() == 1);
    CHECK(stats[0].nodes.size() == 2);
    CHECK(stats[0].edge_count == 1);
}

TEST_CASE("graph serialization round-trips") {
    std::vector<ProjectFiles> projects = {
        to_project_files(RawProject{"a", {{"f.c", "same"}}}),
        to_project_files(RawProject{"b", {{"f.c", "same"}}}),
    };
    const SimilarityGraph g = build_similarity_graph(projects, 0.5, 1);
    CorpusIndex index; // names fall back to ids
    const std::string json = serialize_graph(g, index);
    const SimilarityGraph parsed = parse_graph(json);
    CHECK(parsed.threshold == g.threshold);
    CHECK(parsed.nodes == g.nodes);
    CHECK(parsed.components == g.components);
    REQUIRE(parsed.edges.size() == g.edges.size());
    CHECK(serialize_graph(parsed, index) == json);
}
