#pragma once

#include <optional>
#include <string>
#include <vector>

namespace lineage {

enum class DerivationMethod { name, commit, copyright, filehash };

const char* to_string(DerivationMethod m);
DerivationMethod method_from_string(const std::string& s);

// A directed claim "source derives from target", tagged with the detection
// method and method-specific evidence strings.
struct DerivationEdge {
    std::string source;
    std::string target;
    DerivationMethod method = DerivationMethod::name;
    std::vector<std::string> evidence;
    std::optional<double> weight;
};

bool operator==(const DerivationEdge& a, const DerivationEdge& b);

// Unified edge schema, one JSON document per method artifact:
// {"schema":"lineage-edges/1","edges":[{source,target,method,weight,evidence}]}
std::string serialize_edges(const std::vector<DerivationEdge>& edges);
std::vector<DerivationEdge> parse_edges(const std::string& json_text);

// source,target,method,weight,evidence (evidence strings joined by "; ")
std::string edges_to_csv(const std::vector<DerivationEdge>& edges);

} // namespace lineage
