#pragma once

#include <filesystem>

namespace lineage {

// Writes the bundled demo corpus: 15 projects with repositories, commit
// logs, contract sources, a baseline history with materialized trees, and a
// manifest tying it together. Content is fixed; two runs produce identical
// trees.
void write_demo_corpus(const std::filesystem::path& dir);

} // namespace lineage
