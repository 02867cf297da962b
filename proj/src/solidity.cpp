#include "lineage/solidity.hpp"

#include "lineage/sha256.hpp"
#include "lineage/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <stdexcept>

using ordered_json = nlohmann::ordered_json;

namespace lineage {

StripResult strip_comments(std::string_view src) {
    StripResult res;
    res.text.reserve(src.size());
    enum class State { code, line_comment, block_comment, str_dq, str_sq };
    State state = State::code;

    for (std::size_t i = 0; i < src.size(); ++i) {
        const char c = src[i];
        const char next = i + 1 < src.size() ? src[i + 1] : '\0';
        switch (state) {
        case State::code:
            if (c == '/' && next == '/') {
                state = State::line_comment;
                ++i;
            } else if (c == '/' && next == '*') {
                state = State::block_comment;
                ++i;
            } else {
                if (c == '"')
                    state = State::str_dq;
                else if (c == '\'')
                    state = State::str_sq;
                res.text.push_back(c);
            }
            break;
        case State::line_comment:
            if (c == '\n') {
                res.text.push_back(c);
                state = State::code;
            }
            break;
        case State::block_comment:
            // block comments do not nest; keep newlines for line structure
            if (c == '*' && next == '/') {
                state = State::code;
                ++i;
            } else if (c == '\n') {
                res.text.push_back(c);
            }
            break;
        case State::str_dq:
        case State::str_sq: {
            res.text.push_back(c);
            if (c == '\\' && i + 1 < src.size()) {
                res.text.push_back(next);
                ++i;
            } else if ((state == State::str_dq && c == '"') ||
                       (state == State::str_sq && c == '\'')) {
                state = State::code;
            } else if (c == '\n') {
                state = State::code; // unterminated literal, stop at line end
            }
            break;
        }
        }
    }
    res.unterminated_block = state == State::block_comment;
    return res;
}

std::vector<std::string> extract_pragma_versions(std::string_view stripped) {
    std::vector<std::string> versions;
    for (const std::string& raw : split_lines(stripped)) {
        std::string line = collapse_whitespace(raw);
        if (line.rfind("pragma solidity", 0) != 0)
            continue;
        std::string rest = line.substr(std::string("pragma solidity").size());
        const auto semi = rest.find(';');
        if (semi != std::string::npos)
            rest = rest.substr(0, semi);
        // first token of the form digits(.digits)*: range operators and any
        // upper bound are dropped
        std::string version;
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(rest[i])))
                continue;
            std::size_t j = i;
            while (j < rest.size() &&
                   (std::isdigit(static_cast<unsigned char>(rest[j])) || rest[j] == '.'))
                ++j;
            version = rest.substr(i, j - i);
            break;
        }
        if (!version.empty() && version.back() == '.')
            version.pop_back();
        if (!version.empty())
            versions.push_back(version);
    }
    return versions;
}

namespace {

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

struct Token {
    std::string text; // identifier or single punctuation char
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i + 1;
            while (j < text.size() && ident_char(text[j]))
                ++j;
            tokens.push_back(Token{std::string(text.substr(i, j - i))});
            i = j;
            continue;
        }
        tokens.push_back(Token{std::string(1, c)});
        ++i;
    }
    return tokens;
}

} // namespace

ContractGraph extract_contract_graph(std::string_view stripped) {
    ContractGraph g;
    const std::vector<Token> tokens = tokenize(stripped);

    for (std::size_t i = 0; i < tokens.size(); ++i) {
        std::size_t decl = i;
        if (tokens[i].text == "abstract" && i + 1 < tokens.size() &&
            tokens[i + 1].text == "contract")
            decl = i + 1;
        else if (tokens[i].text != "contract" && tokens[i].text != "interface")
            continue;
        if (decl + 1 >= tokens.size() || !ident_start(tokens[decl + 1].text[0]))
            continue;
        const std::string name = tokens[decl + 1].text;
        std::vector<std::string> parents;
        std::size_t j = decl + 2;
        if (j < tokens.size() && tokens[j].text == "is") {
            ++j;
            int paren_depth = 0;
            for (; j < tokens.size() && tokens[j].text != "{"; ++j) {
                const std::string& t = tokens[j].text;
                if (t == "(") {
                    ++paren_depth;
                } else if (t == ")") {
                    --paren_depth;
                } else if (paren_depth == 0 && ident_start(t[0])) {
                    parents.push_back(t); // constructor args inside () skipped
                }
            }
        }
        g.declared[name] = std::move(parents);
        i = decl + 1;
    }

    std::set<std::string> used_as_parent;
    for (const auto& [name, parents] : g.declared) {
        (void)name;
        for (const std::string& p : parents)
            used_as_parent.insert(p);
    }
    for (const auto& [name, parents] : g.declared) {
        (void)parents;
        if (!used_as_parent.count(name))
            g.terminals.push_back(name);
    }

    // Cycle check over every declared contract (a pure cycle has no
    // terminal, so terminal-rooted walks alone would miss it).
    struct Frame {
        std::string node;
        std::size_t next_parent = 0;
    };
    auto walk = [&g](const std::string& root, std::set<std::string>& ancestors) {
        std::vector<Frame> frames{{root, 0}};
        std::set<std::string> on_path{root};
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto decl_it = g.declared.find(f.node);
            const std::vector<std::string>* parents =
                decl_it != g.declared.end() ? &decl_it->second : nullptr;
            if (!parents || f.next_parent >= parents->size()) {
                on_path.erase(f.node);
                frames.pop_back();
                continue;
            }
            const std::string parent = (*parents)[f.next_parent++];
            if (on_path.count(parent)) {
                std::string cycle;
                bool in_cycle = false;
                for (const Frame& fr : frames) {
                    if (fr.node == parent)
                        in_cycle = true;
                    if (in_cycle)
                        cycle += fr.node + " -> ";
                }
                cycle += parent;
                throw std::runtime_error("cyclic inheritance: " + cycle);
            }
            if (ancestors.insert(parent).second && g.declared.count(parent)) {
                frames.push_back(Frame{parent, 0});
                on_path.insert(parent);
            }
        }
    };

    for (const auto& [name, parents] : g.declared) {
        (void)parents;
        std::set<std::string> scratch;
        walk(name, scratch);
    }
    for (const std::string& terminal : g.terminals) {
        std::set<std::string> ancestors;
        walk(terminal, ancestors);
        g.types[terminal] = std::move(ancestors);
    }
    return g;
}

std::optional<std::string> fingerprint_safemath(std::string_view stripped) {
    // find "contract SafeMath" / "library SafeMath" followed by "{"
    for (std::size_t i = 0; i + 8 < stripped.size(); ++i) {
        if (!(stripped.compare(i, 8, "contract") == 0 || stripped.compare(i, 7, "library") == 0))
            continue;
        if (i > 0 && ident_char(stripped[i - 1]))
            continue;
        const std::size_t kw_len = stripped[i] == 'c' ? 8 : 7;
        std::size_t j = i + kw_len;
        while (j < stripped.size() && std::isspace(static_cast<unsigned char>(stripped[j])))
            ++j;
        if (j == i + kw_len) // keyword must end at a boundary
            continue;
        if (stripped.compare(j, 8, "SafeMath") != 0)
            continue;
        std::size_t k = j + 8;
        if (k < stripped.size() && ident_char(stripped[k]))
            continue; // e.g. SafeMath32
        while (k < stripped.size() && stripped[k] != '{') {
            if (!std::isspace(static_cast<unsigned char>(stripped[k])))
                break;
            ++k;
        }
        if (k >= stripped.size() || stripped[k] != '{')
            continue;

        // brace-depth scan, string-aware
        int depth = 0;
        char in_string = '\0';
        for (std::size_t e = k; e < stripped.size(); ++e) {
            const char c = stripped[e];
            if (in_string) {
                if (c == '\\')
                    ++e;
                else if (c == in_string)
                    in_string = '\0';
                continue;
            }
            if (c == '"' || c == '\'') {
                in_string = c;
            } else if (c == '{') {
                ++depth;
            } else if (c == '}') {
                if (--depth == 0)
                    return sha256_hex(stripped.substr(i, e - i + 1));
            }
        }
        return std::nullopt; // unbalanced braces
    }
    return std::nullopt;
}

TemplateFlags detect_templates(std::string_view stripped) {
    TemplateFlags f;
    f.firstblood = contains_word(stripped, "StandardToken");
    f.upgradeable_golem = contains_word(stripped, "UpgradeableToken");
    f.openzeppelin = contains_word(stripped, "zeppelin", /*icase=*/true) ||
                     contains_icase(stripped, "openzeppelin");
    f.safemath = contains_word(stripped, "SafeMath");
    return f;
}

ContractProfile analyze_contract(const ContractInput& input) {
    ContractProfile p;
    p.file_id = input.file_id;
    p.origin = input.origin;
    const StripResult stripped = strip_comments(input.source);
    p.unterminated_comment = stripped.unterminated_block;
    p.pragma_versions = extract_pragma_versions(stripped.text);
    p.safemath_fingerprint = fingerprint_safemath(stripped.text);
    p.flags = detect_templates(stripped.text);
    try {
        p.graph = extract_contract_graph(stripped.text);
    } catch (const std::exception& e) {
        p.parse_error = e.what();
        p.graph = ContractGraph{};
    }
    return p;
}

std::vector<ContractProfile> analyze_contracts(const std::vector<ContractInput>& inputs,
                                               int threads) {
    std::vector<ContractProfile> out(inputs.size());
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(inputs.size()); ++i)
        out[i] = analyze_contract(inputs[i]);
    return out;
}

namespace serial {
std::vector<ContractProfile> analyze_contracts(const std::vector<ContractInput>& inputs) {
    std::vector<ContractProfile> out;
    out.reserve(inputs.size());
    for (const ContractInput& in : inputs)
        out.push_back(analyze_contract(in));
    return out;
}
} // namespace serial

const char* to_string(CdfFeature f) {
    switch (f) {
    case CdfFeature::types: return "types";
    case CdfFeature::solidity_version: return "solidity_version";
    case CdfFeature::safemath_version: return "safemath_version";
    }
    return "?";
}

PopularityCdf aggregate_cdf(const std::vector<ContractProfile>& profiles, CdfFeature feature,
                            std::optional<ContractOrigin> origin_filter) {
    PopularityCdf cdf;
    cdf.feature = feature;

    // value -> contracts (by profile position) holding it
    std::map<std::string, std::set<std::size_t>> holders;
    std::int64_t population = 0;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const ContractProfile& p = profiles[i];
        if (origin_filter && p.origin != *origin_filter)
            continue;
        std::set<std::string> values;
        switch (feature) {
        case CdfFeature::types:
            for (const auto& [terminal, ancestors] : p.graph.types) {
                (void)terminal;
                values.insert(ancestors.begin(), ancestors.end());
            }
            break;
        case CdfFeature::solidity_version:
            values.insert(p.pragma_versions.begin(), p.pragma_versions.end());
            break;
        case CdfFeature::safemath_version:
            if (p.safemath_fingerprint)
                values.insert(*p.safemath_fingerprint);
            break;
        }
        if (values.empty())
            continue;
        ++population;
        for (const std::string& v : values)
            holders[v].insert(i);
    }
    cdf.population = population;
    cdf.distinct_values = static_cast<std::int64_t>(holders.size());

    std::vector<std::pair<std::string, const std::set<std::size_t>*>> ranked;
    ranked.reserve(holders.size());
    for (const auto& [value, contracts] : holders) {
        ranked.emplace_back(value, &contracts);
        if (contracts.size() == 1)
            ++cdf.singletons;
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second->size() != b.second->size())
            return a.second->size() > b.second->size();
        return a.first < b.first;
    });

    std::set<std::size_t> covered;
    for (const auto& [value, contracts] : ranked) {
        cdf.ranked_counts.emplace_back(value, static_cast<std::int64_t>(contracts->size()));
        covered.insert(contracts->begin(), contracts->end());
        cdf.cumulative_pct.push_back(population ? 100.0 * double(covered.size()) /
                                                      double(population)
                                                : 0.0);
    }
    return cdf;
}

std::string profiles_json(const std::vector<ContractProfile>& profiles) {
    ordered_json doc;
    doc["schema"] = "lineage-contracts/1";
    ordered_json arr = ordered_json::array();
    for (const ContractProfile& p : profiles) {
        ordered_json pj;
        pj["file"] = p.file_id;
        pj["origin"] = to_string(p.origin);
        ordered_json decl = ordered_json::object();
        for (const auto& [name, parents] : p.graph.declared)
            decl[name] = parents;
        pj["declared_contracts"] = std::move(decl);
        pj["terminal_contracts"] = p.graph.terminals;
        ordered_json types = ordered_json::object();
        for (const auto& [terminal, ancestors] : p.graph.types)
            types[terminal] = ancestors;
        pj["types"] = std::move(types);
        pj["pragma_versions"] = p.pragma_versions;
        if (p.safemath_fingerprint)
            pj["safemath_fingerprint"] = *p.safemath_fingerprint;
        ordered_json flags = ordered_json::array();
        if (p.flags.firstblood)
            flags.push_back("firstblood");
        if (p.flags.upgradeable_golem)
            flags.push_back("upgradeable_golem");
        if (p.flags.openzeppelin)
            flags.push_back("openzeppelin");
        if (p.flags.safemath)
            flags.push_back("safemath");
        pj["template_flags"] = std::move(flags);
        if (p.unterminated_comment)
            pj["unterminated_comment"] = true;
        if (!p.parse_error.empty())
            pj["parse_error"] = p.parse_error;
        arr.push_back(std::move(pj));
    }
    doc["contracts"] = std::move(arr);
    return doc.dump(2) + "\n";
}

std::string cdf_csv(const PopularityCdf& cdf) {
    std::string out = "rank,value,count,cumulative_pct\n";
    for (std::size_t i = 0; i < cdf.ranked_counts.size(); ++i)
        out += std::to_string(i + 1) + "," + csv_escape(cdf.ranked_counts[i].first) + "," +
               std::to_string(cdf.ranked_counts[i].second) + "," +
               format_score(cdf.cumulative_pct[i]) + "\n";
    return out;
}

std::vector<TemplateCount> count_templates(const std::vector<ContractProfile>& profiles) {
    const std::vector<std::pair<std::string, bool TemplateFlags::*>> templates = {
        {"firstblood", &TemplateFlags::firstblood},
        {"upgradeable_golem", &TemplateFlags::upgradeable_golem},
        {"openzeppelin", &TemplateFlags::openzeppelin},
        {"safemath", &TemplateFlags::safemath},
    };
    std::vector<TemplateCount> out;
    for (ContractOrigin origin : {ContractOrigin::deployed, ContractOrigin::repository}) {
        std::int64_t total = 0;
        for (const ContractProfile& p : profiles)
            if (p.origin == origin)
                ++total;
        for (const auto& [name, member] : templates) {
            TemplateCount tc;
            tc.template_name = name;
            tc.origin = origin;
            for (const ContractProfile& p : profiles)
                if (p.origin == origin && p.flags.*member)
                    ++tc.count;
            tc.pct = total ? 100.0 * double(tc.count) / double(total) : 0.0;
            out.push_back(tc);
        }
    }
    return out;
}

std::string template_counts_csv(const std::vector<TemplateCount>& counts) {
    std::string out = "template,origin,count,pct\n";
    for (const TemplateCount& tc : counts)
        out += tc.template_name + "," + to_string(tc.origin) + "," + std::to_string(tc.count) +
               "," + format_score(tc.pct) + "\n";
    return out;
}

} // namespace lineage
