#pragma once

#include <optional>
#include <vector>

#include "rlnc/pip/pip.hpp"

namespace rlnc::pip {

/// Tree node: hash label plus the signature product of its subtree.
struct TreeNode {
    crypto::Digest hash;
    validity::Sigma sigma;
    bool operator==(const TreeNode&) const = default;
};

/// Leaf contents A = sigma || H || alpha.
struct LeafData {
    validity::Sigma sigma;
    HelperToken helper;
    BigInt alpha;
    bool operator==(const LeafData&) const = default;
};

struct LogPipTestToken {
    crypto::Digest root;
    bool operator==(const LogPipTestToken&) const = default;
};

/// Retained by the sender until its children finish challenging.
struct MerkleTreeState {
    validity::DlGroup group;
    crypto::HashSpec hash;
    std::vector<crypto::NodeId> parent_ids;  // leaf order
    std::vector<LeafData> leaves;
    std::vector<std::vector<TreeNode>> levels;  // levels[0] = B nodes, back() = {root}

    std::size_t leaf_count() const { return leaves.size(); }
    const TreeNode& root() const { return levels.back().front(); }
};

struct ChallengeProof {
    std::uint16_t index = 0;
    std::uint16_t leaf_count = 0;
    LeafData leaf;
    std::vector<TreeNode> siblings;  // bottom-up, levels with a sibling only
    bool operator==(const ChallengeProof&) const = default;
};

Bytes leaf_bytes(const LeafData& leaf, const Widths& widths);
TreeNode leaf_node(const LeafData& leaf, const validity::DlGroup& group, const crypto::HashSpec& hash);
TreeNode interior_node(const TreeNode& left, const TreeNode& right, const validity::DlGroup& group,
                       const crypto::HashSpec& hash);

/// Builds the tree over parents sorted by id. Throws on empty input or duplicates.
std::pair<LogPipTestToken, MerkleTreeState> logpip_build(std::vector<ParentContribution> parents,
                                                         const validity::DlGroup& group, const crypto::HashSpec& hash);

/// Rebuilds the interior of `state` from its leaves (after editing leaves).
void logpip_rehash(MerkleTreeState& state);

ChallengeProof logpip_respond(const MerkleTreeState& state, std::size_t parent_index);

/// Optional check (vi): the helper token of the packet itself.
struct PacketHelperCheck {
    gf::CodedVector e;
    HelperToken helper;
    crypto::PublicKey sender_pk;
    crypto::NodeId receiver;
};

struct LogPipContext {
    validity::DlGroup group;
    crypto::HashSpec hash;
    crypto::NodeId sender;
    validity::Sigma sigma_n;
    LogPipTestToken token;
    std::size_t challenged_index = 0;
    std::size_t expected_leaf_count = 0;
    ExpectedParent parent;
    std::optional<PacketHelperCheck> packet_helper;
};

/// Checks (i) helper and coefficient, (ii)-(iii) recomputed path, (iv) root
/// hash, (v) root sigma, (vi) packet helper.
CheckResult logpip_verify(const ChallengeProof& proof, const LogPipContext& ctx);

void encode_proof(ByteWriter& w, const ChallengeProof& proof, const Widths& widths);
ChallengeProof decode_proof(ByteReader& r, const Widths& widths);

}  // namespace rlnc::pip
