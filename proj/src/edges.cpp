#include "lineage/edges.hpp"

#include "lineage/util.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

using ordered_json = nlohmann::ordered_json;

namespace lineage {

const char* to_string(DerivationMethod m) {
    switch (m) {
    case DerivationMethod::name: return "name";
    case DerivationMethod::commit: return "commit";
    case DerivationMethod::copyright: return "copyright";
    case DerivationMethod::filehash: return "filehash";
    }
    return "?";
}

DerivationMethod method_from_string(const std::string& s) {
    if (s == "name") return DerivationMethod::name;
    if (s == "commit") return DerivationMethod::commit;
    if (s == "copyright") return DerivationMethod::copyright;
    if (s == "filehash") return DerivationMethod::filehash;
    throw std::runtime_error("unknown derivation method: " + s);
}

bool operator==(const DerivationEdge& a, const DerivationEdge& b) {
    return a.source == b.source && a.target == b.target && a.method == b.method &&
           a.evidence == b.evidence && a.weight == b.weight;
}

namespace {
constexpr const char* kEdgesSchema = "lineage-edges/1";
} // namespace

std::string serialize_edges(const std::vector<DerivationEdge>& edges) {
    ordered_json doc;
    doc["schema"] = kEdgesSchema;
    ordered_json arr = ordered_json::array();
    for (const DerivationEdge& e : edges) {
        ordered_json ej;
        ej["source"] = e.source;
        ej["target"] = e.target;
        ej["method"] = to_string(e.method);
        if (e.weight)
            ej["weight"] = *e.weight;
        ej["evidence"] = e.evidence;
        arr.push_back(std::move(ej));
    }
    doc["edges"] = std::move(arr);
    return doc.dump(2) + "\n";
}

std::vector<DerivationEdge> parse_edges(const std::string& json_text) {
    ordered_json doc = ordered_json::parse(json_text);
    if (!doc.contains("schema") || doc["schema"] != kEdgesSchema)
        throw std::runtime_error("edge schema mismatch: expected " + std::string(kEdgesSchema));
    std::vector<DerivationEdge> edges;
    for (const auto& ej : doc["edges"]) {
        DerivationEdge e;
        e.source = ej["source"].get<std::string>();
        e.target = ej["target"].get<std::string>();
        e.method = method_from_string(ej["method"].get<std::string>());
        if (ej.contains("weight"))
            e.weight = ej["weight"].get<double>();
        e.evidence = ej["evidence"].get<std::vector<std::string>>();
        edges.push_back(std::move(e));
    }
    return edges;
}

std::string edges_to_csv(const std::vector<DerivationEdge>& edges) {
    std::string out = "source,target,method,weight,evidence\n";
    for (const DerivationEdge& e : edges) {
        std::string joined;
        for (std::size_t i = 0; i < e.evidence.size(); ++i) {
            if (i)
                joined += "; ";
            joined += e.evidence[i];
        }
        out += csv_escape(e.source) + "," + csv_escape(e.target) + "," + to_string(e.method) +
               "," + (e.weight ? format_score(*e.weight) : "") + "," + csv_escape(joined) +
               "\n";
    }
    return out;
}

} // namespace lineage
