#include "rlnc/pip/logpip.hpp"

#include <algorithm>
#include <stdexcept>

#include "rlnc/crypto/merkle.hpp"

namespace rlnc::pip {

namespace {

BigInt powm(const BigInt& b, const BigInt& e, const BigInt& p) {
    BigInt r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
}

}  // namespace

Bytes leaf_bytes(const LeafData& leaf, const Widths& widths) {
    ByteWriter w;
    write_fixed(w, leaf.sigma.v, widths.sigma);
    if (leaf.helper.sig.size() != widths.sig) throw std::length_error("helper signature width");
    w.put_bytes(leaf.helper.sig);
    write_fixed(w, leaf.alpha, widths.alpha);
    return w.take();
}

TreeNode leaf_node(const LeafData& leaf, const validity::DlGroup& group, const crypto::HashSpec& hash) {
    const Widths widths = Widths::from(group, hash);
    crypto::Digest h = crypto::Hasher(hash).update_u8(crypto::kLeafTag).update(leaf_bytes(leaf, widths)).finish();
    return {std::move(h), {powm(leaf.sigma.v, leaf.alpha, group.p)}};
}

TreeNode interior_node(const TreeNode& left, const TreeNode& right, const validity::DlGroup& group,
                       const crypto::HashSpec& hash) {
    const std::size_t w = group.element_bytes();
    crypto::Hasher hs(hash);
    hs.update_u8(crypto::kNodeTag);
    hs.update(left.hash.h).update(to_fixed_bytes(left.sigma.v, w));
    hs.update(right.hash.h).update(to_fixed_bytes(right.sigma.v, w));
    return {hs.finish(), {left.sigma.v * right.sigma.v % group.p}};
}

void logpip_rehash(MerkleTreeState& s) {
    if (s.leaves.empty()) throw std::invalid_argument("logpip: no leaves");
    s.levels.assign(1, {});
    for (const auto& leaf : s.leaves) s.levels[0].push_back(leaf_node(leaf, s.group, s.hash));
    while (s.levels.back().size() > 1) {
        const auto& cur = s.levels.back();
        std::vector<TreeNode> next;
        for (std::size_t i = 0; i + 1 < cur.size(); i += 2) next.push_back(interior_node(cur[i], cur[i + 1], s.group, s.hash));
        if (cur.size() % 2 == 1) next.push_back(cur.back());
        s.levels.push_back(std::move(next));
    }
}

std::pair<LogPipTestToken, MerkleTreeState> logpip_build(std::vector<ParentContribution> parents,
                                                         const validity::DlGroup& group, const crypto::HashSpec& hash) {
    if (parents.empty()) throw std::invalid_argument("logpip_build: no parents");
    if (parents.size() > 0xffff) throw std::length_error("logpip_build: too many parents");
    std::sort(parents.begin(), parents.end(), [](const auto& a, const auto& b) { return id_less(a.parent_id, b.parent_id); });
    MerkleTreeState s{group, hash, {}, {}, {}};
    for (std::size_t i = 0; i < parents.size(); ++i) {
        if (i > 0 && parents[i].parent_id == parents[i - 1].parent_id)
            throw std::invalid_argument("logpip_build: duplicate parent " + parents[i].parent_id);
        s.parent_ids.push_back(parents[i].parent_id);
        s.leaves.push_back({parents[i].sigma, parents[i].helper, parents[i].coefficient});
    }
    logpip_rehash(s);
    LogPipTestToken token{s.root().hash};
    return {std::move(token), std::move(s)};
}

ChallengeProof logpip_respond(const MerkleTreeState& state, std::size_t parent_index) {
    const auto shape = crypto::path_shape(parent_index, state.leaf_count());
    ChallengeProof proof;
    proof.index = static_cast<std::uint16_t>(parent_index);
    proof.leaf_count = static_cast<std::uint16_t>(state.leaf_count());
    proof.leaf = state.leaves[parent_index];
    std::size_t pos = parent_index;
    for (std::size_t lvl = 0; lvl < shape.size(); ++lvl) {
        if (shape[lvl].has_sibling) proof.siblings.push_back(state.levels[lvl][pos ^ 1]);
        pos /= 2;
    }
    return proof;
}

CheckResult logpip_verify(const ChallengeProof& proof, const LogPipContext& ctx) {
    const auto fail = [&](ViolationKind k, std::string detail) {
        return make_violation(k, ctx.sender, std::move(detail), to_bytes(ctx.parent.id));
    };
    if (proof.leaf_count != ctx.expected_leaf_count)
        return fail(ViolationKind::MissingEntry, "tree has " + std::to_string(proof.leaf_count) + " leaves, expected " +
                                                     std::to_string(ctx.expected_leaf_count));
    if (proof.index != ctx.challenged_index || proof.index >= proof.leaf_count)
        return fail(ViolationKind::BadMerklePath, "proof opens the wrong leaf");

    // (i)
    if (!helper_verifies(proof.leaf.helper, proof.leaf.sigma, ctx.group, ctx.parent.pk, ctx.parent.id, ctx.sender))
        return fail(ViolationKind::BadHelperSig, "helper of parent " + ctx.parent.id + " does not verify");
    if (sgn(proof.leaf.alpha) == 0) return fail(ViolationKind::ZeroCoefficient, "zero coefficient for " + ctx.parent.id);
    if (proof.leaf.alpha >= ctx.group.q || proof.leaf.alpha != ctx.parent.coefficient)
        return fail(ViolationKind::WrongCoefficient, "coefficient for " + ctx.parent.id);

    // (ii)-(iii): the verifier derives B_i and every ancestor itself.
    const auto shape = crypto::path_shape(proof.index, proof.leaf_count);
    const auto needed = static_cast<std::size_t>(std::count_if(shape.begin(), shape.end(), [](auto s) { return s.has_sibling; }));
    if (needed != proof.siblings.size()) return fail(ViolationKind::BadMerklePath, "wrong number of siblings");
    TreeNode cur = leaf_node(proof.leaf, ctx.group, ctx.hash);
    std::size_t used = 0;
    for (const auto& step : shape) {
        if (!step.has_sibling) continue;
        const TreeNode& sib = proof.siblings[used++];
        if (sib.hash.h.size() != ctx.hash.bytes() || sgn(sib.sigma.v) <= 0 || sib.sigma.v >= ctx.group.p)
            return fail(ViolationKind::BadMerklePath, "malformed sibling");
        cur = step.sibling_on_left ? interior_node(sib, cur, ctx.group, ctx.hash)
                                   : interior_node(cur, sib, ctx.group, ctx.hash);
    }
    // (iv)
    if (cur.hash != ctx.token.root) return fail(ViolationKind::BadMerklePath, "root hash differs from token");
    // (v)
    if (cur.sigma != ctx.sigma_n) return fail(ViolationKind::RootSigMismatch, "root signature differs from packet");
    // (vi)
    if (ctx.packet_helper) {
        const auto& ph = *ctx.packet_helper;
        if (auto v = check_helper(ph.e, ctx.sigma_n, ph.helper, ctx.group, ph.sender_pk, ctx.sender, ph.receiver))
            return v;
    }
    return std::nullopt;
}

void encode_proof(ByteWriter& w, const ChallengeProof& proof, const Widths& widths) {
    w.put_u16(proof.index);
    w.put_u16(proof.leaf_count);
    w.put_bytes(leaf_bytes(proof.leaf, widths));
    for (const auto& s : proof.siblings) {
        if (s.hash.h.size() != widths.hash) throw std::length_error("sibling hash width");
        w.put_bytes(s.hash.h);
        write_fixed(w, s.sigma.v, widths.sigma);
    }
}

ChallengeProof decode_proof(ByteReader& r, const Widths& widths) {
    ChallengeProof p;
    p.index = r.u16();
    p.leaf_count = r.u16();
    if (p.leaf_count == 0 || p.index >= p.leaf_count) throw DecodeError("proof index out of range", r.offset());
    p.leaf.sigma.v = from_bytes(r.bytes(widths.sigma));
    auto sig = r.bytes(widths.sig);
    p.leaf.helper.sig.assign(sig.begin(), sig.end());
    p.leaf.alpha = from_bytes(r.bytes(widths.alpha));
    const auto shape = crypto::path_shape(p.index, p.leaf_count);
    for (const auto& step : shape) {
        if (!step.has_sibling) continue;
        TreeNode n;
        auto h = r.bytes(widths.hash);
        n.hash.h.assign(h.begin(), h.end());
        n.sigma.v = from_bytes(r.bytes(widths.sigma));
        p.siblings.push_back(std::move(n));
    }
    return p;
}

}  // namespace rlnc::pip
