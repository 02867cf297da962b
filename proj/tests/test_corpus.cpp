#include "lineage/corpus.hpp"
#include "lineage/sha256.hpp"
#include "lineage/util.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <algorithm>
#include <random>

using namespace lineage;
namespace fs = std::filesystem;

TEST_CASE("manifest: field mapping and validation") {
    test::TempDir tmp("manifest");
    tmp.file("repo/a.cpp", "int a;\n");
    tmp.file("m.jsonl",
             R"({"id":"btc","name":"Bitcoin","symbol":"BTC","kind":"coin","repos":[{"repo_id":"btc-core","path":"repo","fork_count":5,"last_update":"2018-07-01T00:00:00Z"}]})"
             "\n"
             R"({"id":"tok","name":"Token Thing","kind":"token","contracts":[{"path":"c.sol","origin":"deployed"}]})"
             "\n");
    const Manifest m = load_manifest(tmp.path() / "m.jsonl");
    REQUIRE(m.projects.size() == 2);
    CHECK(m.projects[0].project_id == "btc");
    CHECK(m.projects[0].name == "Bitcoin");
    CHECK(m.projects[0].kind == ProjectKind::coin);
    CHECK(m.projects[0].repo_ids == std::vector<std::string>{"btc-core"});
    REQUIRE(m.repos.size() == 1);
    CHECK(m.repos[0].fork_count == 5);
    CHECK(m.repos[0].last_update == parse_iso8601("2018-07-01T00:00:00Z"));
    CHECK(m.projects[1].kind == ProjectKind::token);
    REQUIRE(m.projects[1].contracts.size() == 1);
    CHECK(m.projects[1].contracts[0].origin == ContractOrigin::deployed);
}

TEST_CASE("manifest: duplicate project id rejected with line number") {
    test::TempDir tmp("manifest_dup");
    tmp.file("m.jsonl", R"({"id":"btc","name":"Bitcoin"})"
                        "\n"
                        R"({"id":"btc","name":"Bitcoin Again"})"
                        "\n");
    CHECK_THROWS_WITH_AS(load_manifest(tmp.path() / "m.jsonl"),
                         "manifest line 2: duplicate project id 'btc'", std::runtime_error);
}

TEST_CASE("manifest: missing required field reports line and field") {
    test::TempDir tmp("manifest_missing");
    tmp.file("m.jsonl", R"({"id":"btc"})"
                        "\n");
    CHECK_THROWS_WITH_AS(load_manifest(tmp.path() / "m.jsonl"),
                         "manifest line 1: missing or empty field 'name'", std::runtime_error);
}

TEST_CASE("manifest: token with neither repos nor contracts is invalid") {
    test::TempDir tmp("manifest_token");
    tmp.file("m.jsonl", R"({"id":"t","name":"T","kind":"token"})"
                        "\n");
    CHECK_THROWS(load_manifest(tmp.path() / "m.jsonl"));
    // with a contract source it becomes valid
    test::TempDir tmp2("manifest_token2");
    tmp2.file("m.jsonl", R"({"id":"t","name":"T","kind":"token","contracts":["c.sol"]})"
                         "\n");
    const Manifest m = load_manifest(tmp2.path() / "m.jsonl");
    CHECK(m.projects[0].contracts.size() == 1);
}

TEST_CASE("commit log parsing") {
    test::TempDir tmp("commitlog");
    const std::string h1(40, 'a');
    const std::string h2(40, 'b');
    tmp.file("log", h2 + " 2011-01-01T00:00:00Z\n" + h1 + " 2009-08-01T00:00:00Z\n");
    const auto log = load_commit_log(tmp.path() / "log", "r1");
    REQUIRE(log.size() == 2);
    CHECK(log[0].hash == h1); // sorted ascending by time
    CHECK(log[1].hash == h2);

    tmp.file("bad", "xyz 2009-08-01T00:00:00Z\n");
    CHECK_THROWS_WITH_AS(load_commit_log(tmp.path() / "bad", "r1"),
                         "r1 commit log line 1: malformed commit hash 'xyz'",
                         std::runtime_error);
}

TEST_CASE("classify: extension table membership decides") {
    test::TempDir tmp("classify");
    tmp.file("src/main.cpp", "int main() {}\n");
    tmp.file("README.md", "# readme\n");
    tmp.file("logo.png", "\x89PNG");
    const ExtensionTable table = {{"cpp", "C++"}, {"md", "Markdown"}};
    const FileScan scan = classify_source_files(tmp.path(), table, 2);
    REQUIRE(scan.files.size() == 2);
    CHECK(scan.files[0].rel_path == "README.md"); // sorted by rel_path
    CHECK(scan.files[0].language == "Markdown");
    CHECK(scan.files[1].rel_path == "src/main.cpp");
    CHECK(scan.files[1].language == "C++");
    CHECK(scan.files[1].content_hash == sha256_hex("int main() {}\n"));
    CHECK(scan.files[1].byte_size == 14);
}

TEST_CASE("classify: empty repository") {
    test::TempDir tmp("classify_empty");
    const FileScan scan = classify_source_files(tmp.path(), builtin_extension_table(), 1);
    CHECK(scan.files.empty());
}

TEST_CASE("classify: symlinks are not followed") {
    test::TempDir tmp("classify_symlink");
    tmp.file("real/a.c", "int a;\n");
    std::filesystem::create_symlink(tmp.path() / "real/a.c", tmp.path() / "link.c");
    std::filesystem::create_directory_symlink(tmp.path() / "real", tmp.path() / "linkdir");
    const FileScan scan = classify_source_files(tmp.path(), {{"c", "C"}}, 1);
    REQUIRE(scan.files.size() == 1);
    CHECK(scan.files[0].rel_path == "real/a.c");
}

TEST_CASE("classify: .git skipped, other dotdirs kept, case-insensitive ext") {
    test::TempDir tmp("classify_git");
    tmp.file(".git/objects/blob.cpp", "not hashed\n");
    tmp.file(".github/workflows/ci.yml", "on: push\n");
    tmp.file("src/Main.CPP", "int main() {}\n");
    const FileScan scan = classify_source_files(tmp.path(), builtin_extension_table(), 1);
    std::vector<std::string> paths;
    for (const auto& f : scan.files)
        paths.push_back(f.rel_path);
    CHECK(paths == std::vector<std::string>{".github/workflows/ci.yml", "src/Main.CPP"});
}

TEST_CASE("classify: matches an independent directory walk") {
    // 100 files, a known subset with matching extensions
    test::TempDir tmp("classify_walk");
    const ExtensionTable table = {{"c", "C"}, {"py", "Python"}};
    std::mt19937 rng(7);
    int expected = 0;
    for (int i = 0; i < 100; ++i) {
        const int pick = rng() % 3;
        const char* ext = pick == 0 ? ".c" : (pick == 1 ? ".py" : ".txt");
        if (pick != 2)
            ++expected;
        tmp.file("d" + std::to_string(i % 7) + "/f" + std::to_string(i) + ext,
                 "content " + std::to_string(i) + "\n");
    }
    const FileScan scan = classify_source_files(tmp.path(), table, 4);
    CHECK(static_cast<int>(scan.files.size()) == expected);

    // oracle: plain recursive walk + suffix check
    int oracle = 0;
    for (const auto& de : fs::recursive_directory_iterator(tmp.path())) {
        if (!de.is_regular_file())
            continue;
        const std::string p = de.path().string();
        if (p.ends_with(".c") || p.ends_with(".py"))
            ++oracle;
    }
    CHECK(static_cast<int>(scan.files.size()) == oracle);
}

TEST_CASE("classify: parallel equals serial reference") {
    test::TempDir tmp("classify_par");
    for (int i = 0; i < 40; ++i)
        tmp.file("f" + std::to_string(i) + ".c", std::string(i, 'x') + "\n");
    const ExtensionTable table = {{"c", "C"}};
    const FileScan par = classify_source_files(tmp.path(), table, 8);
    const FileScan ser = serial::classify_source_files(tmp.path(), table);
    REQUIRE(par.files.size() == ser.files.size());
    for (std::size_t i = 0; i < par.files.size(); ++i) {
        CHECK(par.files[i].rel_path == ser.files[i].rel_path);
        CHECK(par.files[i].content_hash == ser.files[i].content_hash);
    }
}

TEST_CASE("empty file hashes to the digest of the empty string") {
    test::TempDir tmp("classify_zero");
    tmp.file("empty.c", "");
    const FileScan scan = classify_source_files(tmp.path(), {{"c", "C"}}, 1);
    REQUIRE(scan.files.size() == 1);
    CHECK(scan.files[0].byte_size == 0);
    CHECK(scan.files[0].content_hash ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

namespace {

Manifest synthetic_manifest(const test::TempDir& tmp, int repos, int files_per_repo,
                            int duplicate_every, std::map<std::string, FileScan>& scans) {
    Manifest m;
    std::mt19937 rng(99);
    for (int r = 0; r < repos; ++r) {
        const std::string repo_id = "r" + std::to_string(r);
        Project p = test::make_project("p" + std::to_string(r), "Project " + std::to_string(r),
                                       {repo_id});
        m.projects.push_back(p);
        m.repos.push_back(test::make_repo(repo_id, p.project_id,
                                          (tmp.path() / repo_id).string()));
        for (int f = 0; f < files_per_repo; ++f) {
            std::string contents;
            if (duplicate_every > 0 && f % duplicate_every == 0)
                contents = "shared contents\n"; // duplicates across repos
            else
                contents = "file " + std::to_string(r) + "/" + std::to_string(f) + "\n";
            tmp.file(repo_id + "/f" + std::to_string(f) + ".c", contents);
        }
        scans[repo_id] =
            classify_source_files(tmp.path() / repo_id, ExtensionTable{{"c", "C"}}, 1);
    }
    return m;
}

} // namespace

TEST_CASE("index: inverted map vs brute-force byte comparison") {
    test::TempDir tmp("index_oracle");
    std::map<std::string, FileScan> scans;
    const Manifest m = synthetic_manifest(tmp, 5, 40, 5, scans);
    const CorpusIndex index = build_corpus_index(m, scans, {{"c", "C"}});

    // brute force: group all files by byte equality
    struct Loc {
        std::string repo, path, bytes;
    };
    std::vector<Loc> all;
    for (const auto& [repo_id, scan] : scans)
        for (const SourceFile& f : scan.files)
            all.push_back(
                Loc{repo_id, f.rel_path, read_file(tmp.path() / repo_id / f.rel_path)});

    std::map<std::string, int> group_sizes; // keyed by contents
    for (const Loc& l : all)
        ++group_sizes[l.bytes];

    // every hash bucket's size equals its byte-equality group size
    int total = 0;
    for (const auto& [hash, locs] : index.hash_to_files) {
        (void)hash;
        const Loc* witness = nullptr;
        for (const Loc& l : all)
            if (l.repo == locs[0].repo_id && l.path == locs[0].rel_path)
                witness = &l;
        REQUIRE(witness != nullptr);
        CHECK(static_cast<int>(locs.size()) == group_sizes[witness->bytes]);
        total += static_cast<int>(locs.size());
    }
    // file count conservation
    CHECK(total == static_cast<int>(all.size()));
}

TEST_CASE("index: two repos sharing one identical file") {
    test::TempDir tmp("index_share");
    tmp.file("r1/same.c", "identical\n");
    tmp.file("r2/same.c", "identical\n");
    tmp.file("r2/other.c", "different\n");
    Manifest m;
    m.projects = {test::make_project("a", "A", {"r1"}), test::make_project("b", "B", {"r2"})};
    m.repos = {test::make_repo("r1", "a", (tmp.path() / "r1").string()),
               test::make_repo("r2", "b", (tmp.path() / "r2").string())};
    std::map<std::string, FileScan> scans;
    for (const char* r : {"r1", "r2"})
        scans[r] = classify_source_files(tmp.path() / r, {{"c", "C"}}, 1);
    const CorpusIndex index = build_corpus_index(m, scans, {{"c", "C"}});
    const auto& locs = index.hash_to_files.at(sha256_hex("identical\n"));
    REQUIRE(locs.size() == 2);
    CHECK(locs[0].repo_id == "r1");
    CHECK(locs[1].repo_id == "r2");
    CHECK(index.hash_to_files.at(sha256_hex("different\n")).size() == 1);
}

TEST_CASE("index: project referencing unscanned repo fails") {
    Manifest m;
    m.projects = {test::make_project("a", "A", {"missing"})};
    m.repos = {test::make_repo("missing", "a")};
    CHECK_THROWS(build_corpus_index(m, {}, {}));
}

TEST_CASE("index: serialization round-trips and is deterministic") {
    test::TempDir tmp("index_roundtrip");
    std::map<std::string, FileScan> scans;
    Manifest m = synthetic_manifest(tmp, 3, 10, 3, scans);
    m.repos[0].commit_log = {{std::string(40, 'a'), 1249084800}};
    m.repos[0].created_at = 1249084800;
    const CorpusIndex index = build_corpus_index(m, scans, {{"c", "C"}});

    const std::string once = serialize_index(index);
    const std::string twice = serialize_index(build_corpus_index(m, scans, {{"c", "C"}}));
    CHECK(once == twice); // byte-identical rebuild

    const CorpusIndex parsed = parse_index(once);
    CHECK(serialize_index(parsed) == once);
    CHECK(parsed.projects.size() == index.projects.size());
    CHECK(parsed.hash_to_files.size() == index.hash_to_files.size());
    CHECK(parsed.repos[0].commit_log.size() == 1);
}

TEST_CASE("index: schema version is checked") {
    CHECK_THROWS_WITH_AS(parse_index(R"({"schema":"lineage-index/999"})"),
                         "index schema mismatch: expected lineage-index/1", std::runtime_error);
}

TEST_CASE("index: re-hashing located files reproduces their bucket hash") {
    test::TempDir tmp("index_rehash");
    std::map<std::string, FileScan> scans;
    const Manifest m = synthetic_manifest(tmp, 3, 15, 4, scans);
    const CorpusIndex index = build_corpus_index(m, scans, {{"c", "C"}});
    for (const auto& [hash, locs] : index.hash_to_files)
        for (const FileLocation& loc : locs)
            CHECK(sha256_hex(read_file(tmp.path() / loc.repo_id / loc.rel_path)) == hash);
}

TEST_CASE("manifest: ids with commas are rejected") {
    test::TempDir tmp("manifest_comma");
    tmp.file("m.jsonl", R"({"id":"a,b","name":"Weird"})"
                        "\n");
    CHECK_THROWS(load_manifest(tmp.path() / "m.jsonl"));
}

TEST_CASE("shipped extension table matches the built-in table") {
    CHECK(load_extension_table(std::string(LINEAGE_DATA_DIR) + "/extensions.txt") ==
          builtin_extension_table());
}
