#ifndef EHSN_RNG_HPP
#define EHSN_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace ehsn {

using RngEngine = std::mt19937_64;

// Stream splitting rule: every random process gets its own engine seeded by
//
//     splitmix64(splitmix64(root ^ fnv1a(purpose)) + index)
//
// where `purpose` is a short tag ("mac", "traffic", "ambient", ...) and
// `index` is the node or source index. Streams are independent of each
// other, so adding a node leaves every other stream untouched.
constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : s) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 1099511628211ULL;
    }
    return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t root, std::string_view purpose,
                                    std::uint64_t index = 0) {
    return splitmix64(splitmix64(root ^ fnv1a(purpose)) + index);
}

inline RngEngine make_stream(std::uint64_t root, std::string_view purpose,
                             std::uint64_t index = 0) {
    return RngEngine(stream_seed(root, purpose, index));
}

} // namespace ehsn

#endif // EHSN_RNG_HPP
