#pragma once

#include "lineage/corpus.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lineage {

struct StripResult {
    std::string text;
    bool unterminated_block = false;
};

// Removes // and /* */ comments. String literals are preserved verbatim;
// newlines inside block comments are kept so line structure survives. An
// unterminated block comment strips to end of input and sets the flag.
StripResult strip_comments(std::string_view source);

// Version tokens from "pragma solidity" lines, range operators removed,
// first bound of a range kept. Input must already be comment-stripped.
std::vector<std::string> extract_pragma_versions(std::string_view stripped);

struct ContractGraph {
    // declaration name -> direct parents, in declaration order
    std::map<std::string, std::vector<std::string>> declared;
    // declared contracts never used as a parent in this file
    std::vector<std::string> terminals;
    // terminal contract -> transitive ancestor set (undeclared parents kept
    // as opaque names)
    std::map<std::string, std::set<std::string>> types;
};

// Parses "contract X is P1, P2 {" declarations (also interface / abstract
// contract, possibly spanning lines up to the opening brace) and closes the
// parent relation transitively. Throws on cyclic inheritance, naming the
// cycle.
ContractGraph extract_contract_graph(std::string_view stripped);

// Digest of the "contract SafeMath {...}" / "library SafeMath {...}" block,
// located by brace matching; whitespace-sensitive. Absent when there is no
// SafeMath block or its braces never balance.
std::optional<std::string> fingerprint_safemath(std::string_view stripped);

struct TemplateFlags {
    bool firstblood = false;        // StandardToken
    bool upgradeable_golem = false; // UpgradeableToken
    bool openzeppelin = false;      // OpenZeppelin / zeppelin (icase)
    bool safemath = false;          // SafeMath declaration or usage

    bool operator==(const TemplateFlags&) const = default;
};

TemplateFlags detect_templates(std::string_view stripped);

struct ContractProfile {
    std::string file_id;
    ContractOrigin origin = ContractOrigin::deployed;
    ContractGraph graph;
    std::vector<std::string> pragma_versions;
    std::optional<std::string> safemath_fingerprint;
    TemplateFlags flags;
    bool unterminated_comment = false;
    std::string parse_error; // set on cyclic inheritance; graph left empty
};

struct ContractInput {
    std::string file_id;
    ContractOrigin origin = ContractOrigin::deployed;
    std::string source;
};

ContractProfile analyze_contract(const ContractInput& input);

// Parallel over files; output order follows input order.
std::vector<ContractProfile> analyze_contracts(const std::vector<ContractInput>& inputs,
                                               int threads);

namespace serial {
std::vector<ContractProfile> analyze_contracts(const std::vector<ContractInput>& inputs);
} // namespace serial

enum class CdfFeature { types, solidity_version, safemath_version };
const char* to_string(CdfFeature f);

struct PopularityCdf {
    CdfFeature feature = CdfFeature::types;
    std::vector<std::pair<std::string, std::int64_t>> ranked_counts; // desc, ties lexicographic
    std::vector<double> cumulative_pct; // % of contracts covered by the top-x values
    std::int64_t population = 0;        // contracts with >= 1 value of this feature
    std::int64_t distinct_values = 0;
    std::int64_t singletons = 0;        // values appearing in exactly one contract
};

// Counts each distinct value once per contract. For `types`, a contract's
// values are the union of its terminal contracts' ancestor sets. cumulative
// percentages count contracts matching at least one of the top-x values.
PopularityCdf aggregate_cdf(const std::vector<ContractProfile>& profiles, CdfFeature feature,
                            std::optional<ContractOrigin> origin_filter);

std::string profiles_json(const std::vector<ContractProfile>& profiles);
std::string cdf_csv(const PopularityCdf& cdf);

struct TemplateCount {
    std::string template_name;
    ContractOrigin origin;
    std::int64_t count = 0;
    double pct = 0.0; // of all contracts with that origin
};

std::vector<TemplateCount> count_templates(const std::vector<ContractProfile>& profiles);
std::string template_counts_csv(const std::vector<TemplateCount>& counts);

} // namespace lineage
