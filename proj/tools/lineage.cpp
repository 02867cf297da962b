#include "lineage/demo.hpp"
#include "lineage/pipeline.hpp"
#include "lineage/util.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

void add_common(CLI::App* cmd, lineage::RunConfig& config) {
    cmd->add_option("--out", config.out_dir, "Output directory for artifacts");
    cmd->add_option("--index", config.index_path, "Index artifact (default <out>/index.json)");
    cmd->add_option("--threads", config.threads, "Worker threads (default: all cores)");
}

std::string reference_time_str;
std::string bands_str;

} // namespace

int main(int argc, char** argv) {
    lineage::RunConfig config;

    CLI::App app{"lineage - code provenance and derivation analysis over a project corpus"};
    app.require_subcommand(1);

    CLI::App* demo = app.add_subcommand("demo", "Write the bundled demo corpus");
    std::string demo_dir = "demo";
    demo->add_option("--out", demo_dir, "Directory for the demo corpus");

    CLI::App* index = app.add_subcommand("index", "Enumerate and hash the corpus");
    index->add_option("--manifest", config.manifest_path, "JSON Lines project manifest")
        ->required();
    index->add_option("--extensions", config.extensions_path,
                      "Extension table file (default: built-in)");
    add_common(index, config);

    CLI::App* select = app.add_subcommand("select", "Rate and select repositories");
    select->add_option("--exclusions", config.exclusions_path,
                       "Exclusion list file (default: built-in)");
    select->add_option("--overrides", config.overrides_path, "pin/ban override file");
    select->add_option("--reference-time", reference_time_str,
                       "Rating reference time, ISO-8601 (default: newest last_update)");
    add_common(select, config);

    CLI::App* dname = app.add_subcommand("derive-name", "Name-prefix derivations");
    dname->add_option("--stoplist", config.stoplist_path,
                      "Name stoplist file (default: built-in)");
    add_common(dname, config);

    CLI::App* dcommit = app.add_subcommand("derive-commit", "Shared-commit fork derivations");
    add_common(dcommit, config);

    CLI::App* dcopy = app.add_subcommand("derive-copyright", "Copyright derivations");
    dcopy->add_option("--alias-map", config.alias_map_path, "Alias map CSV (default: built-in)");
    dcopy->add_option("--author-map", config.author_map_path,
                      "Author map CSV (default: built-in)");
    add_common(dcopy, config);

    CLI::App* sim = app.add_subcommand("similarity", "File-hash similarity graph");
    sim->add_option("--threshold", config.threshold, "Edge threshold (default 0.7)");
    sim->add_option("--selection", config.selection_path,
                    "Selection CSV (default <out>/selection.csv)");
    sim->add_flag("--all-repos", config.all_repos, "Score all repos, not just the selection");
    add_common(sim, config);

    CLI::App* base = app.add_subcommand("baseline", "Match projects to baseline versions");
    base->add_option("--baseline-config", config.baseline_config_path,
                     "Baseline config JSON (commit_log, trees_dir, start_time)")
        ->required();
    base->add_option("--interval-days", config.interval_days,
                     "Snapshot interval in days (default 183)");
    base->add_option("--bands", bands_str, "Histogram score bands (default 0.3,0.5,0.7)");
    base->add_option("--selection", config.selection_path,
                     "Selection CSV (default <out>/selection.csv)");
    base->add_flag("--all-repos", config.all_repos, "Score all repos, not just the selection");
    add_common(base, config);

    CLI::App* sol = app.add_subcommand("solidity", "Contract feature extraction");
    add_common(sol, config);

    CLI::App* report = app.add_subcommand("report", "Merge edge sets into the unified table");
    add_common(report, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (!reference_time_str.empty())
            config.reference_time = lineage::parse_iso8601(reference_time_str);
        if (!bands_str.empty()) {
            config.score_bands.clear();
            std::size_t start = 0;
            while (start <= bands_str.size()) {
                const auto comma = bands_str.find(',', start);
                const std::string tok = bands_str.substr(
                    start, comma == std::string::npos ? std::string::npos : comma - start);
                if (!tok.empty())
                    config.score_bands.push_back(std::stod(tok));
                if (comma == std::string::npos)
                    break;
                start = comma + 1;
            }
        }

        if (demo->parsed()) {
            lineage::write_demo_corpus(demo_dir);
            std::cerr << "demo corpus written to " << demo_dir << std::endl;
            return 0;
        }
        if (index->parsed())
            return lineage::cmd_index(config);
        if (select->parsed())
            return lineage::cmd_select(config);
        if (dname->parsed())
            return lineage::cmd_derive_name(config);
        if (dcommit->parsed())
            return lineage::cmd_derive_commit(config);
        if (dcopy->parsed())
            return lineage::cmd_derive_copyright(config);
        if (sim->parsed())
            return lineage::cmd_similarity(config);
        if (base->parsed())
            return lineage::cmd_baseline(config);
        if (sol->parsed())
            return lineage::cmd_solidity(config);
        if (report->parsed())
            return lineage::cmd_report(config);
    } catch (const lineage::PrerequisiteError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
    return 1;
}
