#include "rlnc/crypto/merkle.hpp"

#include <stdexcept>

namespace rlnc::crypto {

namespace {

Digest leaf_hash(ByteView leaf, HashSpec spec) { return Hasher(spec).update_u8(kLeafTag).update(leaf).finish(); }

Digest node_hash(const Digest& l, const Digest& r, HashSpec spec) {
    return Hasher(spec).update_u8(kNodeTag).update(l.h).update(r.h).finish();
}

std::vector<std::vector<Digest>> build_levels(const std::vector<Bytes>& leaves, HashSpec spec) {
    if (leaves.empty()) throw std::invalid_argument("merkle: no leaves");
    std::vector<std::vector<Digest>> levels(1);
    for (const auto& l : leaves) levels[0].push_back(leaf_hash(l, spec));
    while (levels.back().size() > 1) {
        const auto& cur = levels.back();
        std::vector<Digest> next;
        for (std::size_t i = 0; i + 1 < cur.size(); i += 2) next.push_back(node_hash(cur[i], cur[i + 1], spec));
        if (cur.size() % 2 == 1) next.push_back(cur.back());
        levels.push_back(std::move(next));
    }
    return levels;
}

}  // namespace

std::vector<PathStep> path_shape(std::size_t index, std::size_t leaf_count) {
    if (index >= leaf_count) throw std::out_of_range("merkle: index out of range");
    std::vector<PathStep> steps;
    std::size_t pos = index, size = leaf_count;
    while (size > 1) {
        const bool promoted = (size % 2 == 1) && pos == size - 1;
        steps.push_back({!promoted, (pos % 2) == 1});
        pos /= 2;
        size = (size + 1) / 2;
    }
    return steps;
}

Digest merkle_commit(const std::vector<Bytes>& leaves, HashSpec spec) { return build_levels(leaves, spec).back()[0]; }

AuthPath merkle_open(const std::vector<Bytes>& leaves, std::size_t index, HashSpec spec) {
    const auto levels = build_levels(leaves, spec);
    AuthPath path{leaves.size(), {}};
    std::size_t pos = index;
    const auto shape = path_shape(index, leaves.size());
    for (std::size_t lvl = 0; lvl < shape.size(); ++lvl) {
        if (shape[lvl].has_sibling) path.siblings.push_back(levels[lvl][pos ^ 1]);
        pos /= 2;
    }
    return path;
}

bool merkle_verify(const Digest& root, ByteView leaf, std::size_t index, const AuthPath& path, HashSpec spec) {
    if (index >= path.leaf_count) return false;
    const auto shape = path_shape(index, path.leaf_count);
    std::size_t used = 0;
    Digest cur = leaf_hash(leaf, spec);
    for (const auto& step : shape) {
        if (!step.has_sibling) continue;
        if (used >= path.siblings.size()) return false;
        const Digest& sib = path.siblings[used++];
        cur = step.sibling_on_left ? node_hash(sib, cur, spec) : node_hash(cur, sib, spec);
    }
    return used == path.siblings.size() && cur == root;
}

}  // namespace rlnc::crypto
