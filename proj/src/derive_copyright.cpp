#include "lineage/derive_copyright.hpp"

#include "lineage/util.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

namespace fs = std::filesystem;

namespace lineage {

NameMap NameMap::from_pairs(const std::vector<std::pair<std::string, std::string>>& raw) {
    NameMap m;
    for (const auto& [key, project] : raw) {
        const std::string norm = normalize_name(key);
        if (!norm.empty())
            m.entries.emplace_back(norm, project);
    }
    std::sort(m.entries.begin(), m.entries.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size())
            return a.first.size() > b.first.size();
        return a.first < b.first;
    });
    return m;
}

NameMap NameMap::load_csv(const std::string& path) {
    std::vector<std::pair<std::string, std::string>> raw;
    int lineno = 0;
    for (const std::string& line : split_lines(read_file(path))) {
        ++lineno;
        const std::string collapsed = collapse_whitespace(line);
        if (collapsed.empty() || collapsed[0] == '#')
            continue;
        const auto comma = collapsed.rfind(',');
        if (comma == std::string::npos)
            throw std::runtime_error(path + " line " + std::to_string(lineno) +
                                     ": expected '<pattern>,<project_id>'");
        raw.emplace_back(collapsed.substr(0, comma),
                         collapse_whitespace(collapsed.substr(comma + 1)));
    }
    return NameMap::from_pairs(raw);
}

namespace {

bool is_license_filename(const fs::path& p) {
    std::string stem = to_lower(p.filename().string());
    const auto dot = stem.find('.');
    if (dot != std::string::npos)
        stem = stem.substr(0, dot);
    return stem == "copying" || stem == "license";
}

bool line_mentions_copyright(const std::string& line) {
    return contains_icase(line, "copyright");
}

void scan_leading_lines(const fs::path& file, int window, AttributionSource source,
                        const std::string& repo_id,
                        std::map<std::string, Attribution>& found, std::uint64_t& skipped) {
    std::string text;
    try {
        text = read_file(file);
    } catch (const std::exception&) {
        ++skipped;
        return;
    }
    int count = 0;
    for (const std::string& line : split_lines(text)) {
        if (++count > window)
            break;
        if (!line_mentions_copyright(line))
            continue;
        const std::string collapsed = collapse_whitespace(line);
        if (collapsed.empty() || found.count(collapsed))
            continue;
        found.emplace(collapsed, Attribution{repo_id, source, collapsed, std::nullopt});
    }
}

} // namespace

std::vector<Attribution> extract_attributions(const RepositorySnapshot& repo,
                                              const ExtensionTable& table,
                                              const AttributionScanConfig& config) {
    const fs::path root(repo.root_path);
    if (!fs::is_directory(root))
        throw std::runtime_error("repository root is not a directory: " + root.string());
    std::vector<fs::path> license_files;
    std::vector<fs::path> source_files;

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
        if (!entry_ec && is_dir && !is_symlink) {
            if (de.path().filename() == ".git")
                it.disable_recursion_pending();
        } else if (!entry_ec && !is_symlink && de.is_regular_file(entry_ec) && !entry_ec) {
            if (is_license_filename(de.path())) {
                license_files.push_back(de.path());
            } else {
                const std::string ext = de.path().extension().string();
                if (ext.size() > 1 && ext[0] == '.' && table.count(to_lower(ext.substr(1))))
                    source_files.push_back(de.path());
            }
        }
        it.increment(ec);
        if (ec)
            break;
    }
    std::sort(license_files.begin(), license_files.end());
    std::sort(source_files.begin(), source_files.end());

    std::map<std::string, Attribution> found; // collapsed line -> attribution
    std::uint64_t skipped = 0;
    if (!license_files.empty()) {
        for (const fs::path& f : license_files)
            scan_leading_lines(f, config.copying_window, AttributionSource::copying_file,
                               repo.repo_id, found, skipped);
    } else {
        for (const fs::path& f : source_files)
            scan_leading_lines(f, config.header_window, AttributionSource::source_header,
                               repo.repo_id, found, skipped);
    }

    std::vector<Attribution> out;
    out.reserve(found.size());
    for (auto& [line, attr] : found) {
        (void)line;
        out.push_back(std::move(attr));
    }
    return out;
}

std::optional<std::string> resolve_attribution(const std::string& raw_line,
                                               const std::vector<Project>& projects,
                                               const NameMap& aliases,
                                               const NameMap& authors) {
    const std::string norm_line = normalize_name(raw_line);
    if (norm_line.empty())
        return std::nullopt;

    std::set<std::string> known_ids;
    for (const Project& p : projects)
        known_ids.insert(p.project_id);

    // Rule 1: project name as substring; longest name wins, ties by id.
    const Project* best = nullptr;
    std::size_t best_len = 0;
    for (const Project& p : projects) {
        const std::string norm = normalize_name(p.name);
        if (norm.empty() || norm_line.find(norm) == std::string::npos)
            continue;
        if (norm.size() > best_len ||
            (norm.size() == best_len && best && p.project_id < best->project_id)) {
            best = &p;
            best_len = norm.size();
        }
    }
    if (best)
        return best->project_id;

    // Rules 2 and 3: alias map, then author map (entries pre-sorted longest
    // first).
    for (const NameMap* map : {&aliases, &authors}) {
        for (const auto& [key, project_id] : map->entries) {
            if (norm_line.find(key) != std::string::npos && known_ids.count(project_id))
                return project_id;
        }
    }
    return std::nullopt;
}

std::vector<DerivationEdge>
detect_copyright_derivations(const std::vector<Project>& projects,
                             const std::vector<Attribution>& resolved) {
    std::map<std::string, std::string> repo_to_project;
    for (const Project& p : projects)
        for (const std::string& repo_id : p.repo_ids)
            repo_to_project[repo_id] = p.project_id;

    std::map<std::pair<std::string, std::string>, std::set<std::string>> witnesses;
    for (const Attribution& a : resolved) {
        if (!a.resolved_project)
            continue;
        const auto owner = repo_to_project.find(a.repo_id);
        if (owner == repo_to_project.end())
            continue;
        if (owner->second == *a.resolved_project)
            continue; // self-attribution
        witnesses[{owner->second, *a.resolved_project}].insert(a.raw_line);
    }

    std::vector<DerivationEdge> edges;
    edges.reserve(witnesses.size());
    for (const auto& [key, lines] : witnesses) {
        DerivationEdge e;
        e.source = key.first;
        e.target = key.second;
        e.method = DerivationMethod::copyright;
        int kept = 0;
        for (const std::string& line : lines) {
            if (kept++ == 5)
                break;
            e.evidence.push_back(line);
        }
        e.weight = static_cast<double>(lines.size());
        edges.push_back(std::move(e));
    }
    return edges;
}

} // namespace lineage
