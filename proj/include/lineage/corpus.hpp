#pragma once

#include "lineage/defaults.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lineage {

enum class ProjectKind { coin, token };
enum class ContractOrigin { deployed, repository };

const char* to_string(ProjectKind k);
const char* to_string(ContractOrigin o);

struct CommitRecord {
    std::string hash; // 40 lowercase hex chars
    std::int64_t timestamp = 0;
};

struct ContractSource {
    std::string path;
    ContractOrigin origin = ContractOrigin::deployed;
};

struct RepositorySnapshot {
    std::string repo_id;
    std::string project_id;
    std::string name;
    std::string root_path;
    std::int64_t fork_count = 0;
    std::int64_t last_update = 0;
    std::vector<CommitRecord> commit_log;       // ascending by timestamp
    std::optional<std::int64_t> created_at;     // min committer timestamp
};

struct Project {
    std::string project_id;
    std::string name;
    std::string symbol;
    ProjectKind kind = ProjectKind::coin;
    std::string category; // empty when unlabeled
    std::vector<std::string> repo_ids;
    std::vector<ContractSource> contracts;
};

struct SourceFile {
    std::string rel_path; // forward slashes, no leading slash
    std::string language;
    std::string content_hash;
    std::uint64_t byte_size = 0;
};

struct FileScan {
    std::vector<SourceFile> files; // sorted by rel_path
    std::uint64_t skipped_unreadable = 0;
};

struct FileLocation {
    std::string repo_id;
    std::string rel_path;
};

struct Manifest {
    std::vector<Project> projects;             // manifest order
    std::vector<RepositorySnapshot> repos;     // manifest order
    std::map<std::string, std::string> commit_log_paths; // repo_id -> path
};

struct CorpusIndex {
    ExtensionTable extension_table;
    std::vector<Project> projects;
    std::vector<RepositorySnapshot> repos;
    std::map<std::string, FileScan> files; // repo_id -> scan
    std::map<std::string, std::vector<FileLocation>> hash_to_files;

    const Project* find_project(const std::string& project_id) const;
    const RepositorySnapshot* find_repo(const std::string& repo_id) const;
    const FileScan& scan_for(const std::string& repo_id) const; // throws if absent
};

// Parses the JSON Lines manifest. Relative repo/contract paths are resolved
// against the manifest's directory. Reports malformed records with their
// line number; rejects duplicate project ids.
Manifest load_manifest(const std::filesystem::path& path);

// "<40-hex-hash> <ISO-8601 committer timestamp>" per line. Result sorted
// ascending by timestamp (ties by hash). `origin` names the repo in errors.
std::vector<CommitRecord> load_commit_log(const std::filesystem::path& path,
                                          const std::string& origin);

// Walks root, picks regular files whose lowercase extension is in the table,
// hashes contents. ".git" directories are skipped, symlinks are not
// followed, other hidden entries are included. Unreadable files are counted
// in skipped_unreadable. Hashing runs across `threads` OpenMP threads;
// output bytes are independent of the thread count.
FileScan classify_source_files(const std::filesystem::path& root,
                               const ExtensionTable& table, int threads);

namespace serial {
// Single-threaded reference for the parallel scan above.
FileScan classify_source_files(const std::filesystem::path& root,
                               const ExtensionTable& table);
} // namespace serial

// Assembles the index and checks the cross-references; throws when a project
// references a repo missing from `scans`.
CorpusIndex build_corpus_index(const Manifest& manifest,
                               const std::map<std::string, FileScan>& scans,
                               const ExtensionTable& table);

std::string serialize_index(const CorpusIndex& index);
CorpusIndex parse_index(const std::string& json_text);

void save_index(const CorpusIndex& index, const std::filesystem::path& path);
CorpusIndex load_index(const std::filesystem::path& path);

} // namespace lineage
