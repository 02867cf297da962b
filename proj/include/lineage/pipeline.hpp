#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lineage {

// A required pipeline artifact (e.g. index.json) is missing: exit code 3.
struct PrerequisiteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input or artifact (including schema-version mismatch): exit 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string manifest_path;
    std::string out_dir = "out";
    std::string index_path;     // defaults to <out_dir>/index.json
    std::string selection_path; // defaults to <out_dir>/selection.csv
    double threshold = 0.7;
    int interval_days = 183;
    std::optional<std::int64_t> reference_time; // default: max last_update
    std::vector<double> score_bands = {0.3, 0.5, 0.7};
    std::string extensions_path; // empty = builtin table
    std::string exclusions_path;
    std::string stoplist_path;
    std::string alias_map_path;
    std::string author_map_path;
    std::string overrides_path;
    std::string baseline_config_path;
    bool all_repos = false; // similarity/baseline over all repos, not the selection
    int threads = 0;        // <= 0: all hardware threads
};

int resolve_threads(int requested);

int cmd_index(const RunConfig& config);
int cmd_select(const RunConfig& config);
int cmd_derive_name(const RunConfig& config);
int cmd_derive_commit(const RunConfig& config);
int cmd_derive_copyright(const RunConfig& config);
int cmd_similarity(const RunConfig& config);
int cmd_baseline(const RunConfig& config);
int cmd_solidity(const RunConfig& config);
int cmd_report(const RunConfig& config);

} // namespace lineage
