// Benchmark comparing the OpenMP kernels against their serial references on
// a synthetic corpus. Checksums must agree; timings show the speedup.

#include "lineage/baseline.hpp"
#include "lineage/pipeline.hpp"
#include "lineage/sha256.hpp"
#include "lineage/similarity.hpp"
#include "lineage/solidity.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace lineage;

namespace {

double now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

std::vector<ProjectFiles> synthetic_corpus(int projects, int files_per_project) {
    std::mt19937 rng(42);
    // a shared pool so projects overlap
    std::vector<std::string> pool;
    for (int i = 0; i < files_per_project * 4; ++i)
        pool.push_back("int shared_" + std::to_string(i) + ";\n");

    std::vector<ProjectFiles> out;
    for (int p = 0; p < projects; ++p) {
        ProjectFiles pf;
        pf.project_id = "p" + std::to_string(p);
        for (int f = 0; f < files_per_project; ++f) {
            std::string contents;
            if (rng() % 2 == 0)
                contents = pool[rng() % pool.size()];
            else
                contents = "int unique_" + std::to_string(p) + "_" + std::to_string(f) + ";\n";
            const std::string hash = sha256_hex(contents);
            const std::string path = "src/file" + std::to_string(f) + ".c";
            pf.file_hashes.push_back(hash);
            pf.file_paths.push_back(path);
            pf.hash_set.insert(hash);
            pf.path_set.insert(path);
        }
        out.push_back(std::move(pf));
    }
    return out;
}

std::uint64_t checksum_scores(const std::vector<SimilarityScore>& scores) {
    std::uint64_t sum = 1469598103934665603ull;
    for (const SimilarityScore& s : scores) {
        sum ^= std::hash<std::string>{}(s.source) + std::hash<std::string>{}(s.target) +
               static_cast<std::uint64_t>(s.matched_files);
        sum *= 1099511628211ull;
    }
    return sum;
}

std::string synthetic_contract(int seed) {
    std::string src = "pragma solidity ^0.4." + std::to_string(18 + seed % 8) + ";\n";
    src += "library SafeMath { function add(uint a, uint b) internal pure returns (uint) { "
           "return a + b; } /* variant " +
           std::to_string(seed % 10) + " */ }\n";
    src += "contract Ownable { address owner; }\n";
    src += "contract Base" + std::to_string(seed % 5) + " is Ownable {}\n";
    src += "contract Tok" + std::to_string(seed) + " is Base" + std::to_string(seed % 5) +
           " { using SafeMath for uint; }\n";
    return src;
}

} // namespace

int main(int argc, char** argv) {
    int projects = 60;
    int files = 400;
    int contracts = 2000;
    int threads = 0;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        const int value = std::atoi(argv[i + 1]);
        if (flag == "--projects")
            projects = value;
        else if (flag == "--files")
            files = value;
        else if (flag == "--contracts")
            contracts = value;
        else if (flag == "--threads")
            threads = value;
    }
    threads = resolve_threads(threads);

    std::printf("synthetic corpus: %d projects x %d files, %d contracts, %d thread(s)\n",
                projects, files, contracts, threads);

    const std::vector<ProjectFiles> corpus = synthetic_corpus(projects, files);

    double t0 = now_ms();
    const auto serial_scores = serial::score_all_pairs(corpus);
    double t1 = now_ms();
    const auto parallel_scores = score_all_pairs(corpus, threads);
    double t2 = now_ms();
    std::printf("s_hash all-pairs   serial %8.1f ms   parallel %8.1f ms   %s\n", t1 - t0,
                t2 - t1,
                checksum_scores(serial_scores) == checksum_scores(parallel_scores)
                    ? "results match"
                    : "RESULTS DIFFER");

    std::vector<ContractInput> inputs;
    for (int i = 0; i < contracts; ++i)
        inputs.push_back(ContractInput{"c" + std::to_string(i), ContractOrigin::deployed,
                                       synthetic_contract(i)});
    t0 = now_ms();
    const auto serial_profiles = serial::analyze_contracts(inputs);
    t1 = now_ms();
    const auto parallel_profiles = analyze_contracts(inputs, threads);
    t2 = now_ms();
    bool same = serial_profiles.size() == parallel_profiles.size();
    for (std::size_t i = 0; same && i < serial_profiles.size(); ++i)
        same = serial_profiles[i].pragma_versions == parallel_profiles[i].pragma_versions &&
               serial_profiles[i].safemath_fingerprint ==
                   parallel_profiles[i].safemath_fingerprint;
    std::printf("contract analysis  serial %8.1f ms   parallel %8.1f ms   %s\n", t1 - t0,
                t2 - t1, same ? "results match" : "RESULTS DIFFER");
    return 0;
}
