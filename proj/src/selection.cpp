#include "lineage/selection.hpp"

#include "lineage/util.hpp"

#include <algorithm>
#include <regex>
#include <stdexcept>

namespace lineage {

namespace {

ExclusionList parse_exclusion_lines(const std::vector<std::string>& lines,
                                    const std::string& origin) {
    ExclusionList list;
    int lineno = 0;
    for (const std::string& raw : lines) {
        ++lineno;
        const std::string line = collapse_whitespace(raw);
        if (line.empty() || line[0] == '#')
            continue;
        if (line.rfind("re:", 0) == 0) {
            const std::string pattern = line.substr(3);
            try {
                std::regex probe(pattern); // validate eagerly
            } catch (const std::exception&) {
                throw std::runtime_error(origin + " line " + std::to_string(lineno) +
                                         ": bad regex '" + pattern + "'");
            }
            list.patterns.push_back(pattern);
        } else if (line.rfind("except:", 0) == 0) {
            const std::string rest = line.substr(7);
            const auto colon = rest.find(':');
            if (colon == std::string::npos)
                throw std::runtime_error(origin + " line " + std::to_string(lineno) +
                                         ": expected except:<project_id>:<repo name>");
            list.exceptions.emplace_back(rest.substr(0, colon), rest.substr(colon + 1));
        } else {
            list.literal_terms.push_back(to_lower(line));
        }
    }
    return list;
}

} // namespace

ExclusionList builtin_exclusion_list() {
    return parse_exclusion_lines(builtin_exclusion_lines(), "builtin exclusion list");
}

ExclusionList load_exclusion_list(const std::string& path) {
    return parse_exclusion_lines(split_lines(read_file(path)), path);
}

std::optional<std::string> match_exclusion(const std::string& project_id,
                                           const std::string& repo_name,
                                           const ExclusionList& list) {
    for (const auto& [exc_project, exc_name] : list.exceptions) {
        if ((exc_project.empty() || exc_project == project_id) &&
            to_lower(exc_name) == to_lower(repo_name))
            return std::nullopt;
    }
    const std::string lowered = to_lower(repo_name);
    // longest matching term reported ("website" rather than its substring
    // "site")
    const std::string* best = nullptr;
    for (const std::string& term : list.literal_terms)
        if (lowered.find(term) != std::string::npos && (!best || term.size() > best->size()))
            best = &term;
    if (best)
        return *best;
    for (const std::string& pattern : list.patterns)
        if (std::regex_search(lowered, std::regex(pattern)))
            return "re:" + pattern;
    return std::nullopt;
}

RepoRating score_repository(const RepositorySnapshot& repo, const std::string& project_name,
                            ProjectKind kind, std::int64_t reference_time,
                            const ExclusionList& exclusions, const RelevanceBonus& bonus) {
    if (repo.last_update > reference_time)
        throw std::runtime_error("repo '" + repo.repo_id +
                                 "' last_update lies after the reference time");

    RepoRating r;
    r.repo_id = repo.repo_id;
    r.repo_name = repo.name;
    r.fork_count = repo.fork_count;
    r.staleness_weeks = (reference_time - repo.last_update) / (7 * kSecondsPerDay);

    const std::string norm_repo = normalize_name(repo.name);
    const std::string norm_project = normalize_name(project_name);
    if (!norm_project.empty() && norm_repo == norm_project) {
        r.relevance_bonus = bonus.exact_name;
    } else if ((!norm_project.empty() && norm_repo.find(norm_project) != std::string::npos) ||
               norm_repo.find("core") != std::string::npos) {
        r.relevance_bonus = bonus.related;
    } else if (kind == ProjectKind::token && (norm_repo.find("token") != std::string::npos ||
                                              norm_repo.find("contract") != std::string::npos)) {
        r.relevance_bonus = bonus.related;
    }

    if (auto term = match_exclusion(repo.project_id, repo.name, exclusions)) {
        r.excluded = true;
        r.excluded_by = *term;
    }
    r.score = r.fork_count - r.staleness_weeks + r.relevance_bonus;
    return r;
}

std::vector<std::string> select_repositories(const std::vector<RepoRating>& ratings) {
    std::vector<const RepoRating*> eligible;
    for (const RepoRating& r : ratings)
        if (!r.excluded)
            eligible.push_back(&r);
    if (eligible.empty())
        return {};

    std::sort(eligible.begin(), eligible.end(), [](const RepoRating* a, const RepoRating* b) {
        if (a->score != b->score)
            return a->score > b->score;
        if (a->fork_count != b->fork_count)
            return a->fork_count > b->fork_count;
        return a->repo_name < b->repo_name;
    });

    const std::size_t n = eligible.size();
    const std::size_t take = std::max<std::size_t>(1, (n + 4) / 5); // ceil(0.2 * n)
    std::vector<std::string> selected;
    selected.reserve(take);
    for (std::size_t i = 0; i < take && i < n; ++i)
        selected.push_back(eligible[i]->repo_id);
    return selected;
}

SelectionOverrides load_overrides(const std::string& path) {
    SelectionOverrides o;
    int lineno = 0;
    for (const std::string& raw : split_lines(read_file(path))) {
        ++lineno;
        const std::string line = collapse_whitespace(raw);
        if (line.empty() || line[0] == '#')
            continue;
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos)
            throw std::runtime_error(path + " line " + std::to_string(lineno) +
                                     ": expected pin|ban,<project_id>,<repo_id>");
        const std::string kind = line.substr(0, c1);
        const std::string project = line.substr(c1 + 1, c2 - c1 - 1);
        const std::string repo = line.substr(c2 + 1);
        if (kind == "pin")
            o.pins.emplace_back(project, repo);
        else if (kind == "ban")
            o.bans.emplace_back(project, repo);
        else
            throw std::runtime_error(path + " line " + std::to_string(lineno) +
                                     ": expected pin|ban,<project_id>,<repo_id>");
    }
    return o;
}

std::vector<std::string> apply_overrides(const std::string& project_id,
                                         std::vector<std::string> selected,
                                         const std::vector<RepoRating>& ratings,
                                         const SelectionOverrides& overrides) {
    for (const auto& [proj, repo] : overrides.bans) {
        if (proj != project_id)
            continue;
        selected.erase(std::remove(selected.begin(), selected.end(), repo), selected.end());
    }
    for (const auto& [proj, repo] : overrides.pins) {
        if (proj != project_id)
            continue;
        const bool known = std::any_of(ratings.begin(), ratings.end(),
                                       [&](const RepoRating& r) { return r.repo_id == repo; });
        if (known && std::find(selected.begin(), selected.end(), repo) == selected.end())
            selected.push_back(repo);
    }
    return selected;
}

} // namespace lineage
