#include "lineage/corpus.hpp"

#include "lineage/sha256.hpp"
#include "lineage/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace lineage {

const char* to_string(ProjectKind k) {
    return k == ProjectKind::coin ? "coin" : "token";
}

const char* to_string(ContractOrigin o) {
    return o == ContractOrigin::deployed ? "deployed" : "repository";
}

const Project* CorpusIndex::find_project(const std::string& project_id) const {
    for (const auto& p : projects)
        if (p.project_id == project_id)
            return &p;
    return nullptr;
}

const RepositorySnapshot* CorpusIndex::find_repo(const std::string& repo_id) const {
    for (const auto& r : repos)
        if (r.repo_id == repo_id)
            return &r;
    return nullptr;
}

const FileScan& CorpusIndex::scan_for(const std::string& repo_id) const {
    auto it = files.find(repo_id);
    if (it == files.end())
        throw std::runtime_error("no file scan for repo: " + repo_id);
    return it->second;
}

namespace {

[[noreturn]] void manifest_error(int lineno, const std::string& what) {
    throw std::runtime_error("manifest line " + std::to_string(lineno) + ": " + what);
}

std::string require_string(const ordered_json& rec, const char* field, int lineno) {
    if (!rec.contains(field) || !rec[field].is_string() || rec[field].get<std::string>().empty())
        manifest_error(lineno, std::string("missing or empty field '") + field + "'");
    return rec[field].get<std::string>();
}

// ids end up as CSV keys and artifact filenames
void validate_id(const std::string& id, const char* field, int lineno) {
    if (id.find_first_of(",\"\n\r") != std::string::npos)
        manifest_error(lineno, std::string(field) + " '" + id +
                                   "' contains a comma, quote or newline");
}

std::string resolve_path(const fs::path& base, const std::string& p) {
    fs::path fp(p);
    if (fp.is_absolute())
        return fp.lexically_normal().string();
    return (base / fp).lexically_normal().string();
}

bool valid_commit_hash(const std::string& h) {
    if (h.size() != 40)
        return false;
    for (char c : h)
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')))
            return false;
    return true;
}

} // namespace

Manifest load_manifest(const fs::path& path) {
    Manifest m;
    const std::string text = read_file(path);
    const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::set<std::string> seen_projects;
    std::set<std::string> seen_repos;

    int lineno = 0;
    for (const std::string& line : split_lines(text)) {
        ++lineno;
        if (collapse_whitespace(line).empty())
            continue;
        ordered_json rec;
        try {
            rec = ordered_json::parse(line);
        } catch (const std::exception& e) {
            manifest_error(lineno, std::string("invalid JSON: ") + e.what());
        }
        if (!rec.is_object())
            manifest_error(lineno, "record is not an object");

        Project p;
        p.project_id = require_string(rec, "id", lineno);
        validate_id(p.project_id, "project id", lineno);
        p.name = require_string(rec, "name", lineno);
        if (!seen_projects.insert(p.project_id).second)
            manifest_error(lineno, "duplicate project id '" + p.project_id + "'");
        if (rec.contains("symbol"))
            p.symbol = rec["symbol"].get<std::string>();
        if (rec.contains("kind")) {
            const std::string kind = rec["kind"].get<std::string>();
            if (kind == "coin")
                p.kind = ProjectKind::coin;
            else if (kind == "token")
                p.kind = ProjectKind::token;
            else
                manifest_error(lineno, "field 'kind' must be \"coin\" or \"token\"");
        }
        if (rec.contains("category") && rec["category"].is_string())
            p.category = rec["category"].get<std::string>();

        if (rec.contains("repos")) {
            if (!rec["repos"].is_array())
                manifest_error(lineno, "field 'repos' must be an array");
            for (const auto& rj : rec["repos"]) {
                RepositorySnapshot r;
                r.project_id = p.project_id;
                r.repo_id = require_string(rj, "repo_id", lineno);
                validate_id(r.repo_id, "repo_id", lineno);
                if (!seen_repos.insert(r.repo_id).second)
                    manifest_error(lineno, "duplicate repo_id '" + r.repo_id + "'");
                r.root_path = resolve_path(base, require_string(rj, "path", lineno));
                r.name = rj.contains("name") ? rj["name"].get<std::string>() : r.repo_id;
                if (rj.contains("fork_count")) {
                    r.fork_count = rj["fork_count"].get<std::int64_t>();
                    if (r.fork_count < 0)
                        manifest_error(lineno, "negative fork_count");
                }
                if (!rj.contains("last_update"))
                    manifest_error(lineno, "missing or empty field 'last_update'");
                try {
                    r.last_update = parse_iso8601(rj["last_update"].get<std::string>());
                } catch (const std::exception& e) {
                    manifest_error(lineno, e.what());
                }
                if (rj.contains("commit_log_path"))
                    m.commit_log_paths[r.repo_id] =
                        resolve_path(base, rj["commit_log_path"].get<std::string>());
                p.repo_ids.push_back(r.repo_id);
                m.repos.push_back(std::move(r));
            }
        }

        if (rec.contains("contracts")) {
            if (!rec["contracts"].is_array())
                manifest_error(lineno, "field 'contracts' must be an array");
            for (const auto& cj : rec["contracts"]) {
                ContractSource cs;
                if (cj.is_string()) {
                    cs.path = resolve_path(base, cj.get<std::string>());
                } else {
                    cs.path = resolve_path(base, require_string(cj, "path", lineno));
                    if (cj.contains("origin")) {
                        const std::string o = cj["origin"].get<std::string>();
                        if (o == "deployed")
                            cs.origin = ContractOrigin::deployed;
                        else if (o == "repository")
                            cs.origin = ContractOrigin::repository;
                        else
                            manifest_error(lineno, "contract origin must be "
                                                   "\"deployed\" or \"repository\"");
                    }
                }
                p.contracts.push_back(std::move(cs));
            }
        }

        if (p.kind == ProjectKind::token && p.repo_ids.empty() && p.contracts.empty())
            manifest_error(lineno, "token project '" + p.project_id +
                                       "' has neither repositories nor contract sources");

        m.projects.push_back(std::move(p));
    }
    return m;
}

std::vector<CommitRecord> load_commit_log(const fs::path& path, const std::string& origin) {
    std::vector<CommitRecord> log;
    const std::string text = read_file(path);
    int lineno = 0;
    for (const std::string& line : split_lines(text)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        const auto sp = line.find(' ');
        if (sp == std::string::npos)
            throw std::runtime_error(origin + " commit log line " + std::to_string(lineno) +
                                     ": expected '<hash> <timestamp>'");
        CommitRecord rec;
        rec.hash = line.substr(0, sp);
        if (!valid_commit_hash(rec.hash))
            throw std::runtime_error(origin + " commit log line " + std::to_string(lineno) +
                                     ": malformed commit hash '" + rec.hash + "'");
        try {
            rec.timestamp = parse_iso8601(line.substr(sp + 1));
        } catch (const std::exception& e) {
            throw std::runtime_error(origin + " commit log line " + std::to_string(lineno) +
                                     ": " + e.what());
        }
        log.push_back(std::move(rec));
    }
    std::sort(log.begin(), log.end(), [](const CommitRecord& a, const CommitRecord& b) {
        if (a.timestamp != b.timestamp)
            return a.timestamp < b.timestamp;
        return a.hash < b.hash;
    });
    return log;
}

namespace {

struct WalkEntry {
    std::string rel_path;
    fs::path abs_path;
    std::string language;
};

struct WalkResult {
    std::vector<WalkEntry> entries;
    std::uint64_t skipped = 0; // entries the walk could not stat
};

// Deterministic pre-scan: collects matching files sorted by rel_path so the
// hashing loop can be parallelized over a fixed order. Unreadable entries
// are counted, not fatal; an unreadable root is.
WalkResult collect_entries(const fs::path& root, const ExtensionTable& table) {
    if (!fs::is_directory(root))
        throw std::runtime_error("repository root is not a directory: " + root.string());
    WalkResult result;
    std::error_code ec;
    fs::recursive_directory_iterator it(root, fs::directory_options::none, ec);
    if (ec)
        throw std::runtime_error("cannot open repository root: " + root.string());
    const fs::recursive_directory_iterator end;
    while (it != end) {
        const fs::directory_entry de = *it;
        std::error_code entry_ec;
        const bool is_symlink = de.is_symlink(entry_ec);
        const bool is_dir = !entry_ec && de.is_directory(entry_ec);
        if (entry_ec) {
            ++result.skipped;
        } else if (is_dir && !is_symlink) {
            if (de.path().filename() == ".git")
                it.disable_recursion_pending();
        } else if (!is_symlink && de.is_regular_file(entry_ec) && !entry_ec) {
            const std::string ext = de.path().extension().string();
            if (ext.size() > 1 && ext[0] == '.') {
                const auto lang = table.find(to_lower(ext.substr(1)));
                if (lang != table.end()) {
                    WalkEntry e;
                    e.abs_path = de.path();
                    e.rel_path = de.path().lexically_relative(root).generic_string();
                    e.language = lang->second;
                    result.entries.push_back(std::move(e));
                }
            }
        }
        it.increment(ec);
        if (ec) { // failed advance resets the iterator to end
            ++result.skipped;
            break;
        }
    }
    std::sort(result.entries.begin(), result.entries.end(),
              [](const WalkEntry& a, const WalkEntry& b) { return a.rel_path < b.rel_path; });
    return result;
}

} // namespace

FileScan classify_source_files(const fs::path& root, const ExtensionTable& table,
                               int threads) {
    const WalkResult walk = collect_entries(root, table);
    const std::size_t n = walk.entries.size();
    std::vector<SourceFile> out(n);
    std::vector<char> skipped(n, 0);

#pragma omp parallel for schedule(static) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        const WalkEntry& e = walk.entries[i];
        try {
            const std::string bytes = read_file(e.abs_path);
            out[i] = SourceFile{e.rel_path, e.language, sha256_hex(bytes), bytes.size()};
        } catch (const std::exception&) {
            skipped[i] = 1;
        }
    }

    FileScan scan;
    scan.skipped_unreadable = walk.skipped;
    scan.files.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (skipped[i])
            ++scan.skipped_unreadable;
        else
            scan.files.push_back(std::move(out[i]));
    }
    return scan;
}

namespace serial {
FileScan classify_source_files(const fs::path& root, const ExtensionTable& table) {
    const WalkResult walk = collect_entries(root, table);
    FileScan scan;
    scan.skipped_unreadable = walk.skipped;
    for (const WalkEntry& e : walk.entries) {
        try {
            const std::string bytes = read_file(e.abs_path);
            scan.files.push_back(
                SourceFile{e.rel_path, e.language, sha256_hex(bytes), bytes.size()});
        } catch (const std::exception&) {
            ++scan.skipped_unreadable;
        }
    }
    return scan;
}
} // namespace serial

CorpusIndex build_corpus_index(const Manifest& manifest,
                               const std::map<std::string, FileScan>& scans,
                               const ExtensionTable& table) {
    CorpusIndex index;
    index.extension_table = table;
    index.projects = manifest.projects;
    index.repos = manifest.repos;

    for (const Project& p : index.projects) {
        for (const std::string& repo_id : p.repo_ids) {
            auto it = scans.find(repo_id);
            if (it == scans.end())
                throw std::runtime_error("project '" + p.project_id +
                                         "' references repo '" + repo_id +
                                         "' with no enumerated files");
            index.files[repo_id] = it->second;
        }
    }

    for (const auto& [repo_id, scan] : index.files)
        for (const SourceFile& f : scan.files)
            index.hash_to_files[f.content_hash].push_back(FileLocation{repo_id, f.rel_path});
    for (auto& [hash, locs] : index.hash_to_files) {
        (void)hash;
        std::sort(locs.begin(), locs.end(), [](const FileLocation& a, const FileLocation& b) {
            if (a.repo_id != b.repo_id)
                return a.repo_id < b.repo_id;
            return a.rel_path < b.rel_path;
        });
    }
    return index;
}

namespace {
constexpr const char* kIndexSchema = "lineage-index/1";
} // namespace

std::string serialize_index(const CorpusIndex& index) {
    ordered_json doc;
    doc["schema"] = kIndexSchema;
    doc["extension_table"] = index.extension_table;

    ordered_json projects = ordered_json::array();
    for (const Project& p : index.projects) {
        ordered_json pj;
        pj["id"] = p.project_id;
        pj["name"] = p.name;
        pj["symbol"] = p.symbol;
        pj["kind"] = to_string(p.kind);
        if (!p.category.empty())
            pj["category"] = p.category;
        pj["repos"] = p.repo_ids;
        ordered_json contracts = ordered_json::array();
        for (const ContractSource& c : p.contracts)
            contracts.push_back({{"path", c.path}, {"origin", to_string(c.origin)}});
        pj["contracts"] = std::move(contracts);
        projects.push_back(std::move(pj));
    }
    doc["projects"] = std::move(projects);

    ordered_json repos = ordered_json::array();
    for (const RepositorySnapshot& r : index.repos) {
        ordered_json rj;
        rj["repo_id"] = r.repo_id;
        rj["project_id"] = r.project_id;
        rj["name"] = r.name;
        rj["root_path"] = r.root_path;
        rj["fork_count"] = r.fork_count;
        rj["last_update"] = format_iso8601(r.last_update);
        if (r.created_at)
            rj["created_at"] = format_iso8601(*r.created_at);
        ordered_json commits = ordered_json::array();
        for (const CommitRecord& c : r.commit_log)
            commits.push_back({{"hash", c.hash}, {"time", format_iso8601(c.timestamp)}});
        rj["commits"] = std::move(commits);

        const auto scan = index.files.find(r.repo_id);
        ordered_json files = ordered_json::array();
        std::uint64_t skipped = 0;
        if (scan != index.files.end()) {
            for (const SourceFile& f : scan->second.files)
                files.push_back({{"path", f.rel_path},
                                 {"language", f.language},
                                 {"hash", f.content_hash},
                                 {"size", f.byte_size}});
            skipped = scan->second.skipped_unreadable;
        }
        rj["files"] = std::move(files);
        rj["skipped_unreadable"] = skipped;
        repos.push_back(std::move(rj));
    }
    doc["repos"] = std::move(repos);
    return doc.dump(2) + "\n";
}

CorpusIndex parse_index(const std::string& json_text) {
    ordered_json doc = ordered_json::parse(json_text);
    if (!doc.contains("schema") || doc["schema"] != kIndexSchema)
        throw std::runtime_error("index schema mismatch: expected " +
                                 std::string(kIndexSchema));
    CorpusIndex index;
    index.extension_table = doc["extension_table"].get<ExtensionTable>();

    for (const auto& pj : doc["projects"]) {
        Project p;
        p.project_id = pj["id"].get<std::string>();
        p.name = pj["name"].get<std::string>();
        p.symbol = pj["symbol"].get<std::string>();
        p.kind = pj["kind"] == "token" ? ProjectKind::token : ProjectKind::coin;
        if (pj.contains("category"))
            p.category = pj["category"].get<std::string>();
        p.repo_ids = pj["repos"].get<std::vector<std::string>>();
        for (const auto& cj : pj["contracts"])
            p.contracts.push_back(
                ContractSource{cj["path"].get<std::string>(),
                               cj["origin"] == "repository" ? ContractOrigin::repository
                                                            : ContractOrigin::deployed});
        index.projects.push_back(std::move(p));
    }

    for (const auto& rj : doc["repos"]) {
        RepositorySnapshot r;
        r.repo_id = rj["repo_id"].get<std::string>();
        r.project_id = rj["project_id"].get<std::string>();
        r.name = rj["name"].get<std::string>();
        r.root_path = rj["root_path"].get<std::string>();
        r.fork_count = rj["fork_count"].get<std::int64_t>();
        r.last_update = parse_iso8601(rj["last_update"].get<std::string>());
        if (rj.contains("created_at"))
            r.created_at = parse_iso8601(rj["created_at"].get<std::string>());
        for (const auto& cj : rj["commits"])
            r.commit_log.push_back(CommitRecord{cj["hash"].get<std::string>(),
                                                parse_iso8601(cj["time"].get<std::string>())});
        FileScan scan;
        for (const auto& fj : rj["files"])
            scan.files.push_back(SourceFile{fj["path"].get<std::string>(),
                                            fj["language"].get<std::string>(),
                                            fj["hash"].get<std::string>(),
                                            fj["size"].get<std::uint64_t>()});
        scan.skipped_unreadable = rj["skipped_unreadable"].get<std::uint64_t>();
        index.files[r.repo_id] = std::move(scan);
        index.repos.push_back(std::move(r));
    }

    for (const auto& [repo_id, scan] : index.files)
        for (const SourceFile& f : scan.files)
            index.hash_to_files[f.content_hash].push_back(FileLocation{repo_id, f.rel_path});
    for (auto& [hash, locs] : index.hash_to_files) {
        (void)hash;
        std::sort(locs.begin(), locs.end(), [](const FileLocation& a, const FileLocation& b) {
            if (a.repo_id != b.repo_id)
                return a.repo_id < b.repo_id;
            return a.rel_path < b.rel_path;
        });
    }
    return index;
}

void save_index(const CorpusIndex& index, const fs::path& path) {
    write_file(path, serialize_index(index));
}

CorpusIndex load_index(const fs::path& path) {
    return parse_index(read_file(path));
}

} // namespace lineage
