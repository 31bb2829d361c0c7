// SHA-256 for input/output fingerprints in run manifests.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace corecrest {

class Sha256 {
public:
    Sha256();

    void update(const void* data, std::size_t len);
    std::array<std::uint8_t, 32> finish();

private:
    void compress(const std::uint8_t* block);

    std::array<std::uint32_t, 8> state_;
    std::uint8_t buffer_[64];
    std::size_t buffered_ = 0;
    std::uint64_t total_bytes_ = 0;
};

std::string to_hex(const std::array<std::uint8_t, 32>& digest);

std::string sha256_hex(std::string_view data);

// Throws ConfigError when the file cannot be opened.
std::string sha256_file(const std::string& path);

}  // namespace corecrest
