#pragma once

#include <cstdint>
#include <string>

namespace skewform {

// FNV-1a, used for config hashes in reports. Stable across platforms.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a_hex(const std::string& s);

}  // namespace skewform
