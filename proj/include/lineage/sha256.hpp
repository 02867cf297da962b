#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace lineage {

// Streaming SHA-256 (FIPS 180-4). Content hashes are computed over raw file
// bytes with no newline or encoding normalization.
class Sha256 {
public:
    Sha256();
    void update(const void* data, std::size_t len);
    std::array<std::uint8_t, 32> finish();

private:
    void compress(const std::uint8_t* block);

    std::array<std::uint32_t, 8> state_;
    std::uint64_t total_bytes_ = 0;
    std::array<std::uint8_t, 64> buf_{};
    std::size_t buf_len_ = 0;
};

// Lowercase hex digest of the given bytes.
std::string sha256_hex(std::string_view bytes);

} // namespace lineage
