#include "doctest.h"
#include "rlnc/node/node.hpp"
#include "rlnc/pip/logpip.hpp"
#include "rlnc/pip/sizes.hpp"
#include "test_util.hpp"

using namespace rlnc;
using pip::ViolationKind;

namespace {

// Node N with d parents; each parent holds a valid packet and a helper addressed to N.
struct Fixture {
    Rng rng;
    validity::DlGroup group;
    crypto::HashSpec hash;
    validity::SourceEpochParams epoch;
    crypto::KeyPair n_keys;
    std::vector<crypto::NodeId> ids;
    std::vector<crypto::KeyPair> keys;
    std::vector<gf::CodedVector> packets;
    std::vector<validity::Sigma> sigmas;
    std::vector<pip::HelperToken> helpers;
    std::vector<BigInt> alphas;

    Fixture(std::size_t d, std::uint64_t seed, const std::string& profile = "test")
        : rng(seed), group(validity::profile(profile).group), hash(validity::profile(profile).hash) {
        const auto master = crypto::keygen(rng);
        const auto originals = node::random_originals(3, 3, group.q, rng);
        epoch = validity::epoch_setup(master.sk, group, originals, 1, rng);
        n_keys = crypto::keygen(rng);
        const gf::PrimeField f(group.q);
        for (std::size_t i = 0; i < d; ++i) {
            ids.push_back("P" + std::to_string(i));
            keys.push_back(crypto::keygen(rng));
            std::vector<BigInt> mix;
            for (int j = 0; j < 3; ++j) mix.push_back(gf::random_nonzero(group.q, rng));
            packets.push_back(gf::linear_combine(originals, mix, f));
            sigmas.push_back(validity::sign_validity(epoch, packets.back()));
            helpers.push_back(pip::make_helper_token(keys.back().sk, sigmas.back(), group, ids.back(), "N"));
            alphas.push_back(gf::random_nonzero(group.q, rng));
        }
    }
    std::size_t d() const { return ids.size(); }
    std::vector<pip::ParentContribution> contributions(const std::vector<BigInt>& a) const {
        std::vector<pip::ParentContribution> out;
        for (std::size_t i = 0; i < d(); ++i) out.push_back({ids[i], a[i], sigmas[i], helpers[i]});
        return out;
    }
    std::vector<pip::ExpectedParent> expected() const {
        std::vector<pip::ExpectedParent> out;
        for (std::size_t i = 0; i < d(); ++i) out.push_back({ids[i], keys[i].pk, alphas[i]});
        return out;
    }
    validity::Sigma sigma_n(const std::vector<BigInt>& a) const { return validity::combine_validity(sigmas, a, group); }
    pip::Widths widths() const { return pip::Widths::from(group, hash); }

    pip::LogPipContext context(const pip::LogPipTestToken& token, std::size_t idx,
                               const std::vector<BigInt>& a) const {
        return {group, hash, "N", sigma_n(a), token, idx, d(), expected()[idx], std::nullopt};
    }
};

}  // namespace

TEST_CASE("helper token binds sender, receiver and sigma") {
    Fixture fx(2, 1);
    const auto& h = fx.helpers[0];
    CHECK(pip::helper_verifies(h, fx.sigmas[0], fx.group, fx.keys[0].pk, "P0", "N"));
    CHECK_FALSE(pip::helper_verifies(h, fx.sigmas[0], fx.group, fx.keys[0].pk, "P0", "M"));
    CHECK_FALSE(pip::helper_verifies(h, fx.sigmas[0], fx.group, fx.keys[1].pk, "P0", "N"));
    CHECK_FALSE(pip::helper_verifies(h, fx.sigmas[1], fx.group, fx.keys[0].pk, "P0", "N"));
}

TEST_CASE("check_helper: honest, zero packet, foreign signer") {
    Fixture fx(2, 2);
    CHECK_FALSE(pip::check_helper(fx.packets[0], fx.sigmas[0], fx.helpers[0], fx.group, fx.keys[0].pk, "P0", "N"));

    const gf::CodedVector zero{{0, 0, 0}, {0, 0, 0}};
    const auto zh = pip::make_helper_token(fx.keys[0].sk, validity::identity_sigma(), fx.group, "P0", "N");
    const auto v = pip::check_helper(zero, validity::identity_sigma(), zh, fx.group, fx.keys[0].pk, "P0", "N");
    REQUIRE(v);
    CHECK(v->kind == ViolationKind::HelperOnZero);

    const auto w = pip::check_helper(fx.packets[0], fx.sigmas[0], fx.helpers[1], fx.group, fx.keys[0].pk, "P0", "N");
    REQUIRE(w);
    CHECK(w->kind == ViolationKind::BadHelperSig);
}

TEST_CASE("pip_combine: canonical order, degenerate and duplicate inputs") {
    Fixture fx(3, 3);
    auto parts = fx.contributions(fx.alphas);
    std::reverse(parts.begin(), parts.end());
    const auto tok = pip::pip_combine(parts);
    REQUIRE(tok.entries.size() == 3);
    CHECK(tok.entries[0].parent_id == "P0");
    CHECK(tok.entries[2].parent_id == "P2");
    CHECK(pip::pip_combine({parts[0]}).entries.size() == 1);
    parts.push_back(parts[0]);
    CHECK_THROWS_AS(pip::pip_combine(parts), std::invalid_argument);
}

TEST_CASE("pip_verif_test: honest node over three parents") {
    Fixture fx(3, 4);
    const auto tok = pip::pip_combine(fx.contributions(fx.alphas));
    CHECK_FALSE(pip::pip_verif_test(fx.sigma_n(fx.alphas), tok, fx.expected(), "N", fx.group));
}

TEST_CASE("pip_verif_test: each cheating variant maps to its violation") {
    Fixture fx(3, 5);
    const auto expected = fx.expected();

    SUBCASE("omitted entry") {
        auto a = fx.alphas;
        a[1] = 0;
        auto parts = fx.contributions(fx.alphas);
        parts.erase(parts.begin() + 1);
        const auto v = pip::pip_verif_test(fx.sigma_n(a), pip::pip_combine(parts), expected, "N", fx.group);
        REQUIRE(v);
        CHECK(v->kind == ViolationKind::MissingEntry);
        CHECK(v->culprit == "N");
        CHECK(v->evidence == to_bytes("P1"));
    }
    SUBCASE("zero coefficient") {
        auto a = fx.alphas;
        a[0] = 0;
        const auto v = pip::pip_verif_test(fx.sigma_n(a), pip::pip_combine(fx.contributions(a)), expected, "N", fx.group);
        REQUIRE(v);
        CHECK(v->kind == ViolationKind::ZeroCoefficient);
    }
    SUBCASE("wrong coefficient") {
        auto a = fx.alphas;
        a[2] = gf::PrimeField(fx.group.q).add(a[2], 1);
        const auto v = pip::pip_verif_test(fx.sigma_n(a), pip::pip_combine(fx.contributions(a)), expected, "N", fx.group);
        REQUIRE(v);
        CHECK(v->kind == ViolationKind::WrongCoefficient);
    }
    SUBCASE("correct entries, sigma without one parent's term") {
        auto a = fx.alphas;
        a[0] = 0;
        const auto v = pip::pip_verif_test(fx.sigma_n(a), pip::pip_combine(fx.contributions(fx.alphas)), expected, "N",
                                           fx.group);
        REQUIRE(v);
        CHECK(v->kind == ViolationKind::SignatureCombineMismatch);
    }
    SUBCASE("forged helper") {
        auto parts = fx.contributions(fx.alphas);
        parts[1].helper = fx.helpers[0];
        const auto v = pip::pip_verif_test(fx.sigma_n(fx.alphas), pip::pip_combine(parts), expected, "N", fx.group);
        REQUIRE(v);
        CHECK(v->kind == ViolationKind::BadHelperSig);
    }
    SUBCASE("unexpected extra entry") {
        auto short_expected = expected;
        short_expected.pop_back();
        const auto v = pip::pip_verif_test(fx.sigma_n(fx.alphas), pip::pip_combine(fx.contributions(fx.alphas)),
                                           short_expected, "N", fx.group);
        CHECK(v);
    }
}

TEST_CASE("PIP token codec round-trips and rejects truncation") {
    Fixture fx(5, 6);
    const auto tok = pip::pip_combine(fx.contributions(fx.alphas));
    ByteWriter w;
    pip::encode_pip_token(w, tok, fx.widths());
    ByteReader r(w.bytes());
    CHECK(pip::decode_pip_token(r, fx.widths()) == tok);
    CHECK_NOTHROW(r.expect_end());
    for (std::size_t cut = 0; cut < w.size(); cut += 7) {
        ByteReader rt(ByteView(w.bytes()).first(cut));
        CHECK_THROWS_AS(pip::decode_pip_token(rt, fx.widths()), DecodeError);
    }
}

TEST_CASE("PIP token size: d=4 at |sigma|=1024") {
    CHECK(pip::token_size_bits(pip::Protocol::Pip, 4, 1024, 320, 160) - 320 == 5376);
    Fixture fx(4, 7, "production");
    const auto tok = pip::pip_combine(fx.contributions(fx.alphas));
    ByteWriter w;
    pip::encode_pip_token(w, tok, fx.widths());
    const std::size_t sig_bits = crypto::kSignatureBits;
    CHECK(w.size() * 8 == 4 * (1024 + sig_bits) + pip::pip_framing_bytes(tok, fx.widths()) * 8);
}

TEST_CASE("token_size_bits: closed forms") {
    CHECK(pip::token_size_bits(pip::Protocol::Pip, 10, 160, 320, 160) == 5120);
    CHECK(pip::token_size_bits(pip::Protocol::LogPip, 8, 160, 320, 160) == 1600);
    CHECK(pip::token_size_bits(pip::Protocol::LogPip, 1, 160, 320, 160) == 640);
    CHECK(pip::token_size_bits(pip::Protocol::LogPip, 50, 160, 320, 160) == 640 + 320 * 6);
    CHECK(pip::token_size_bits_ideal(pip::Protocol::LogPip, 8, 160, 320, 160) == doctest::Approx(1600));
    CHECK(pip::ceil_log2(1) == 0);
    CHECK(pip::ceil_log2(2) == 1);
    CHECK(pip::ceil_log2(5) == 3);
    CHECK(pip::ceil_log2(64) == 6);
}

TEST_CASE("logpip_build: singleton tree") {
    Fixture fx(1, 8);
    const auto [tok, state] = pip::logpip_build(fx.contributions(fx.alphas), fx.group, fx.hash);
    CHECK(state.levels.size() == 1);
    CHECK(tok.root == pip::leaf_node(state.leaves[0], fx.group, fx.hash).hash);
    CHECK(state.root().sigma.v == testutil::powm(fx.sigmas[0].v, fx.alphas[0], fx.group.p));
    const auto proof = pip::logpip_respond(state, 0);
    CHECK(proof.siblings.empty());
    CHECK_FALSE(pip::logpip_verify(proof, fx.context(tok, 0, fx.alphas)));
}

TEST_CASE("logpip_build: root sigma equals the direct combination") {
    Fixture fx(4, 9);
    const auto [tok, state] = pip::logpip_build(fx.contributions(fx.alphas), fx.group, fx.hash);
    CHECK(state.root().sigma == fx.sigma_n(fx.alphas));
    CHECK(pip::logpip_respond(state, 0).siblings.size() == 2);
}

TEST_CASE("logpip_verify: every index of honest trees passes") {
    for (std::size_t d = 1; d <= 9; ++d) {
        Fixture fx(d, 10 + d);
        const auto [tok, state] = pip::logpip_build(fx.contributions(fx.alphas), fx.group, fx.hash);
        for (std::size_t i = 0; i < d; ++i) {
            const auto proof = pip::logpip_respond(state, i);
            CHECK(proof.siblings.size() <= pip::ceil_log2(d));
            CHECK_FALSE(pip::logpip_verify(proof, fx.context(tok, i, fx.alphas)));
        }
    }
}

TEST_CASE("logpip_verify: skipped parent is caught when challenged") {
    Fixture fx(4, 20);
    auto a = fx.alphas;
    a[1] = 0;
    const auto [tok, state] = pip::logpip_build(fx.contributions(a), fx.group, fx.hash);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto v = pip::logpip_verify(pip::logpip_respond(state, i), fx.context(tok, i, a));
        if (i == 1) {
            REQUIRE(v);
            CHECK(v->kind == ViolationKind::ZeroCoefficient);
        } else {
            CHECK_FALSE(v);
        }
    }
}

TEST_CASE("logpip_verify: root sigma must match the packet") {
    Fixture fx(3, 21);
    const auto [tok, state] = pip::logpip_build(fx.contributions(fx.alphas), fx.group, fx.hash);
    auto ctx = fx.context(tok, 0, fx.alphas);
    ctx.sigma_n = fx.sigmas[0];
    const auto v = pip::logpip_verify(pip::logpip_respond(state, 0), ctx);
    REQUIRE(v);
    CHECK(v->kind == ViolationKind::RootSigMismatch);
}

TEST_CASE("logpip_verify: tampering any stored node is detected by some challenge") {
    Fixture fx(4, 22);
    const auto [tok, state] = pip::logpip_build(fx.contributions(fx.alphas), fx.group, fx.hash);
    for (std::size_t lvl = 0; lvl + 1 < state.levels.size(); ++lvl) {
        for (std::size_t j = 0; j < state.levels[lvl].size(); ++j) {
            for (int field = 0; field < 2; ++field) {
                auto bad = state;
                auto& node = bad.levels[lvl][j];
                if (field == 0)
                    node.sigma.v = node.sigma.v * fx.sigmas[0].v % fx.group.p;
                else
                    node.hash.h[0] ^= 1;
                std::size_t detected = 0;
                for (std::size_t i = 0; i < 4; ++i)
                    detected += pip::logpip_verify(pip::logpip_respond(bad, i), fx.context(tok, i, fx.alphas)).has_value();
                CAPTURE(lvl);
                CAPTURE(j);
                CHECK(detected > 0);
            }
        }
    }
    for (std::size_t i = 0; i < 4; ++i) {
        auto bad = state;
        bad.leaves[i].sigma = fx.sigmas[(i + 1) % 4];
        CHECK(pip::logpip_verify(pip::logpip_respond(bad, i), fx.context(tok, i, fx.alphas)));
    }
}

TEST_CASE("challenge proof codec round-trips") {
    Fixture fx(5, 23);
    const auto [tok, state] = pip::logpip_build(fx.contributions(fx.alphas), fx.group, fx.hash);
    for (std::size_t i = 0; i < 5; ++i) {
        const auto proof = pip::logpip_respond(state, i);
        ByteWriter w;
        pip::encode_proof(w, proof, fx.widths());
        ByteReader r(w.bytes());
        CHECK(pip::decode_proof(r, fx.widths()) == proof);
        CHECK(w.size() == 4 + fx.widths().sigma + fx.widths().sig + fx.widths().alpha +
                              proof.siblings.size() * (fx.widths().hash + fx.widths().sigma));
    }
}

TEST_CASE("challenge proofs: 10^5 single-byte mutations never verify") {
    Fixture fx(4, 24);
    const auto [tok, state] = pip::logpip_build(fx.contributions(fx.alphas), fx.group, fx.hash);
    std::vector<Bytes> encoded;
    for (std::size_t i = 0; i < 4; ++i) {
        ByteWriter w;
        pip::encode_proof(w, pip::logpip_respond(state, i), fx.widths());
        encoded.push_back(w.take());
    }
    std::vector<pip::LogPipContext> ctx;
    for (std::size_t i = 0; i < 4; ++i) ctx.push_back(fx.context(tok, i, fx.alphas));

    std::size_t accepted = 0, decoded = 0;
    for (int trial = 0; trial < 100000; ++trial) {
        const std::size_t i = fx.rng.uniform(4);
        auto bytes = encoded[i];
        bytes[fx.rng.uniform(bytes.size())] ^= static_cast<std::uint8_t>(1 + fx.rng.uniform(255));
        try {
            ByteReader r(bytes);
            const auto proof = pip::decode_proof(r, fx.widths());
            ++decoded;
            accepted += !pip::logpip_verify(proof, ctx[i]).has_value();
        } catch (const DecodeError&) {
        }
    }
    CHECK(decoded > 90000);
    CHECK(accepted == 0);
}

TEST_CASE("violation names round-trip") {
    for (int k = 0; k <= static_cast<int>(ViolationKind::PolicyViolation); ++k) {
        const auto kind = static_cast<ViolationKind>(k);
        CHECK(pip::violation_from_string(pip::to_string(kind)) == kind);
    }
    CHECK_FALSE(pip::violation_from_string("Nope"));
    CHECK(pip::protocol_from_string("logpip") == pip::Protocol::LogPip);
    CHECK_THROWS_AS(pip::protocol_from_string("x"), std::invalid_argument);
}
