#ifndef SPECINV_VERSION_HPP
#define SPECINV_VERSION_HPP

#include <cstdint>
#include <string>

namespace specinv {

inline constexpr const char* kVersion = "0.1.0";

/// FNV-1a 64-bit hash; used to stamp every artifact with its config.
inline uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace specinv

#endif
