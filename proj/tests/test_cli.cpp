#include "lineage/demo.hpp"
#include "lineage/edges.hpp"
#include "lineage/util.hpp"

#include <doctest.h>

#include "helpers.hpp"
#include <set>

#include <cstdlib>
#include <string>

using namespace lineage;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(LINEAGE_BIN) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

struct Workspace {
    test::TempDir tmp{"cli"};
    std::string demo;
    std::string out;

    Workspace() {
        demo = (tmp.path() / "demo").string();
        out = (tmp.path() / "out").string();
        REQUIRE(run("demo --out " + demo) == 0);
        REQUIRE(run("index --manifest " + demo + "/manifest.jsonl --out " + out) == 0);
    }

    int stage(const std::string& name, const std::string& extra = "") {
        return run(name + " --out " + out + (extra.empty() ? "" : " " + extra));
    }
};

} // namespace

TEST_CASE("cli: prerequisite ordering is enforced") {
    test::TempDir tmp("cli_prereq");
    const std::string out = (tmp.path() / "out").string();
    // similarity before index
    CHECK(run("similarity --out " + out) == 3);
    // report before any derive stage
    CHECK(run("report --out " + out) == 3);
}

TEST_CASE("cli: usage errors exit 1") {
    CHECK(run("index") == 1);           // missing --manifest
    CHECK(run("definitely-not-a-cmd") == 1);
}

TEST_CASE("cli: malformed input data exits 2") {
    test::TempDir tmp("cli_data");
    tmp.file("bad.jsonl", "{\"id\":\"x\"}\n"); // missing name
    const std::string out = (tmp.path() / "out").string();
    CHECK(run("index --manifest " + (tmp.path() / "bad.jsonl").string() + " --out " + out) == 2);

    // schema mismatch on a serialized input is a data error, not a missing
    // prerequisite
    tmp.file("out/index.json", "{\"schema\":\"lineage-index/999\"}\n");
    CHECK(run("derive-name --out " + out) == 2);
}

TEST_CASE("cli: full pipeline over the demo corpus") {
    Workspace ws;
    CHECK(ws.stage("select") == 0);
    CHECK(ws.stage("derive-name") == 0);
    CHECK(ws.stage("derive-commit") == 0);
    CHECK(ws.stage("derive-copyright") == 0);
    CHECK(ws.stage("similarity") == 0);
    CHECK(ws.stage("baseline", "--baseline-config " + ws.demo + "/baseline_config.json") == 0);
    CHECK(ws.stage("solidity") == 0);
    CHECK(ws.stage("report") == 0);

    for (const char* artifact :
         {"index.json", "selection.csv", "edges_name.json", "edges_name.csv",
          "edges_commit.json", "edges_copyright.json", "copyright_indegree.csv", "graph.json",
          "graph.dot", "component_stats.csv", "component_degrees.csv", "edges_filehash.json",
          "versions.json", "matches_hash.csv", "matches_dir.csv", "scores_hash.csv",
          "scores_dir.csv", "histogram_hash.csv", "histogram_dir.csv", "contracts.json",
          "cdf_types_deployed.csv", "cdf_solidity_version_deployed.csv",
          "cdf_safemath_version_repository.csv", "template_counts.csv", "derivations.json",
          "derivations.csv", "project_summary.csv"})
        CHECK_MESSAGE(fs::exists(fs::path(ws.out) / artifact), artifact);

    // spot checks against the constructed corpus
    const auto name_edges = parse_edges(read_file(fs::path(ws.out) / "edges_name.json"));
    REQUIRE(name_edges.size() == 2);
    CHECK(name_edges[0].source == "bitcoin-planet");
    CHECK(name_edges[0].target == "bitcoin");
    CHECK(name_edges[1].source == "ethereum-gold");
    CHECK(name_edges[1].target == "ethereum");

    const auto commit_edges = parse_edges(read_file(fs::path(ws.out) / "edges_commit.json"));
    std::set<std::pair<std::string, std::string>> commit_set;
    for (const auto& e : commit_edges)
        commit_set.insert({e.source, e.target});
    const std::set<std::pair<std::string, std::string>> expected_commit = {
        {"litecoin", "bitcoin"},
        {"peercoin", "bitcoin"},
        {"bitcoin-planet", "bitcoin"},
        {"aurora", "bitcoin"},
        {"aurora", "litecoin"},
    };
    CHECK(commit_set == expected_commit);

    const auto copyright_edges =
        parse_edges(read_file(fs::path(ws.out) / "edges_copyright.json"));
    std::set<std::pair<std::string, std::string>> copyright_set;
    for (const auto& e : copyright_edges)
        copyright_set.insert({e.source, e.target});
    const std::set<std::pair<std::string, std::string>> expected_copyright = {
        {"litecoin", "bitcoin"},
        {"bitcoin-planet", "bitcoin"},
        {"peercoin", "bitcoin"},
        {"ethereum-gold", "ethereum"},
    };
    CHECK(copyright_set == expected_copyright);

    // the license-only project is 100% similar to the five license peers
    const auto filehash_edges =
        parse_edges(read_file(fs::path(ws.out) / "edges_filehash.json"));
    int zeep_out = 0;
    for (const auto& e : filehash_edges)
        if (e.source == "zeepcoin") {
            ++zeep_out;
            CHECK(*e.weight == 1.0);
        }
    CHECK(zeep_out == 5);

    // merged table carries all four methods
    const auto merged = parse_edges(read_file(fs::path(ws.out) / "derivations.json"));
    std::set<DerivationMethod> methods;
    for (const auto& e : merged)
        methods.insert(e.method);
    CHECK(methods.size() == 4);

    // per-project roll-up lists targets under every method that fired
    const std::string summary = read_file(fs::path(ws.out) / "project_summary.csv");
    CHECK(summary.find("bitcoin-planet,Bitcoin Planet,bitcoin,bitcoin,bitcoin,bitcoin") !=
          std::string::npos);
    CHECK(summary.find("zeepcoin,ZeepCoin,,,,aurora; dynamic; hyperion; sentinel; waverider") !=
          std::string::npos);
}

TEST_CASE("cli: reruns are byte-identical and thread count does not matter") {
    Workspace ws;
    REQUIRE(ws.stage("select") == 0);
    REQUIRE(ws.stage("derive-name") == 0);
    REQUIRE(ws.stage("derive-commit") == 0);
    REQUIRE(ws.stage("derive-copyright") == 0);
    REQUIRE(ws.stage("similarity", "--threads 1") == 0);

    const std::string graph_once = read_file(fs::path(ws.out) / "graph.json");
    REQUIRE(ws.stage("similarity", "--threads 8") == 0);
    CHECK(read_file(fs::path(ws.out) / "graph.json") == graph_once);

    const std::string sel_once = read_file(fs::path(ws.out) / "selection.csv");
    REQUIRE(ws.stage("select") == 0);
    CHECK(read_file(fs::path(ws.out) / "selection.csv") == sel_once);
}

TEST_CASE("cli: edge schema round-trips through serialize/parse/serialize") {
    Workspace ws;
    REQUIRE(ws.stage("derive-name") == 0);
    const std::string once = read_file(fs::path(ws.out) / "edges_name.json");
    CHECK(serialize_edges(parse_edges(once)) == once);
}

TEST_CASE("cli: selection honors the exclusion list and picks top repos") {
    Workspace ws;
    REQUIRE(ws.stage("select") == 0);
    const std::string csv = read_file(fs::path(ws.out) / "selection.csv");
    // bitcoin-website excluded by "website", never selected
    CHECK(csv.find("bitcoin,bitcoin-website") != std::string::npos);
    for (const std::string& line : split_lines(csv))
        if (line.find("bitcoin-website") != std::string::npos)
            CHECK(line.find("true") == std::string::npos);
    // go-ethereum selected for ethereum; ethereum-tests excluded by "test"
    bool geth_selected = false;
    for (const std::string& line : split_lines(csv)) {
        if (line.rfind("ethereum,go-ethereum,", 0) == 0)
            geth_selected = line.find(",true,") != std::string::npos;
        if (line.rfind("ethereum,ethereum-tests,", 0) == 0)
            CHECK(line.find(",test") != std::string::npos);
    }
    CHECK(geth_selected);
}

TEST_CASE("cli: baseline matches the planted expectations") {
    Workspace ws;
    REQUIRE(ws.stage("select") == 0);
    REQUIRE(ws.stage("baseline",
                     "--baseline-config " + ws.demo + "/baseline_config.json") == 0);
    const std::string versions = read_file(fs::path(ws.out) / "versions.json");
    CHECK(versions.find("\"label\": 7") != std::string::npos);   // 7 versions
    CHECK(versions.find("\"label\": 8") == std::string::npos);

    const std::string matches = read_file(fs::path(ws.out) / "matches_hash.csv");
    // bitcoin's tree equals version 5 (ties at 6 and 7 resolve earliest)
    CHECK(matches.find("bitcoin,hash,5,1.000000") != std::string::npos);
    CHECK(matches.find("bitcoin-planet,hash,5,1.000000") != std::string::npos);

    const std::string dir_matches = read_file(fs::path(ws.out) / "matches_dir.csv");
    // litecoin keeps 4 of 5 upstream paths from version 3 onward
    CHECK(dir_matches.find("litecoin,dir,3,0.800000") != std::string::npos);
}
