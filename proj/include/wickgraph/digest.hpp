#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace wickgraph {

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

// FNV-1a, used as a cheap integrity checksum on binary cache files.
inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t seed = kFnvOffset) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
    return h;
}

// SHA-256 of a byte string, lowercase hex. Used to pin bundled data files.
std::string sha256_hex(std::string_view data);

}  // namespace wickgraph
