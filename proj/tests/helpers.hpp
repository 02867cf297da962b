#pragma once

#include "lineage/corpus.hpp"
#include "lineage/util.hpp"

#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

namespace test {

// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        root_ = std::filesystem::temp_directory_path() /
                ("lineage_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(root_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(root_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return root_; }

    void file(const std::string& rel, const std::string& contents) const {
        lineage::write_file(root_ / rel, contents);
    }

private:
    std::filesystem::path root_;
};

inline lineage::RepositorySnapshot make_repo(const std::string& repo_id,
                                             const std::string& project_id,
                                             const std::string& root_path = "",
                                             std::int64_t fork_count = 0,
                                             std::int64_t last_update = 0) {
    lineage::RepositorySnapshot r;
    r.repo_id = repo_id;
    r.project_id = project_id;
    r.name = repo_id;
    r.root_path = root_path;
    r.fork_count = fork_count;
    r.last_update = last_update;
    return r;
}

inline lineage::Project make_project(const std::string& id, const std::string& name,
                                     std::vector<std::string> repo_ids = {}) {
    lineage::Project p;
    p.project_id = id;
    p.name = name;
    p.repo_ids = std::move(repo_ids);
    return p;
}

} // namespace test
