#pragma once

#include <vector>

#include "rlnc/crypto/hash.hpp"

namespace rlnc::crypto {

inline constexpr std::uint8_t kLeafTag = 0x00;
inline constexpr std::uint8_t kNodeTag = 0x01;

/// One level of a leaf-to-root walk. A node without a sibling is promoted
/// unchanged, so `has_sibling` is false for that level.
struct PathStep {
    bool has_sibling;
    bool sibling_on_left;
};

/// Shape of the walk from leaf `index` in a tree of `leaf_count` leaves,
/// shared by the plain tree here and the signature-carrying tree in pip.
std::vector<PathStep> path_shape(std::size_t index, std::size_t leaf_count);

struct AuthPath {
    std::size_t leaf_count = 0;
    std::vector<Digest> siblings;  // only levels that have one
};

Digest merkle_commit(const std::vector<Bytes>& leaves, HashSpec spec = {});
AuthPath merkle_open(const std::vector<Bytes>& leaves, std::size_t index, HashSpec spec = {});
bool merkle_verify(const Digest& root, ByteView leaf, std::size_t index, const AuthPath& path, HashSpec spec = {});

}  // namespace rlnc::crypto
