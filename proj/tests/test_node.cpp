#include <cmath>
#include <map>

#include "doctest.h"
#include "rlnc/node/adjudicate.hpp"
#include "rlnc/node/coefficient.hpp"
#include "rlnc/pip/sizes.hpp"
#include "rlnc/sim/scenario.hpp"

using namespace rlnc;
using pip::ViolationKind;
using sim::BehaviorKind;

namespace {

sim::Fanin make_fanin(std::size_t d, pip::Protocol proto, std::uint64_t seed) {
    sim::FaninConfig cfg;
    cfg.parents = d;
    cfg.protocol = proto;
    cfg.seed = seed;
    return sim::Fanin(cfg);
}

node::Judgement judge(sim::Fanin& f, const node::ReceivedPacket& r) {
    const auto proof = node::build_misbehavior_proof(r.packet, r.transcript, f.epoch(),
                                                     node::sender_view(f.registry(), r.packet.sender));
    return node::adjudicate(proof, f.system(), &f.registry());
}

struct Authority {
    Rng rng{5};
    crypto::KeyPair keys = crypto::keygen(rng);
    node::ClaimedParent parent(const std::string& id, crypto::Priority prio = crypto::Priority::Normal) {
        const auto kp = crypto::keygen(rng);
        return {id, kp.pk, crypto::certify(keys.sk, kp.pk, id, prio)};
    }
};

}  // namespace

TEST_CASE("derive_coefficient: deterministic, epoch and child separated") {
    const crypto::Seed seed(Bytes(20, 7));
    const BigInt q = validity::profile("test").group.q;
    const auto a = node::derive_coefficient(seed, "P", "N", std::nullopt, to_bytes("epoch1"), q);
    CHECK(a == node::derive_coefficient(seed, "P", "N", std::nullopt, to_bytes("epoch1"), q));
    CHECK(a != node::derive_coefficient(seed, "P", "N", std::nullopt, to_bytes("epoch2"), q));
    CHECK(a != node::derive_coefficient(seed, "P", "N", std::string("C"), to_bytes("epoch1"), q));
    CHECK(a != node::derive_coefficient(seed, "Q", "N", std::nullopt, to_bytes("epoch1"), q));
    CHECK(a > 0);
    CHECK(a < q);
    CHECK(a == node::derive_coefficient(seed, "P", "N", std::nullopt, validity::epoch_digest(to_bytes("epoch1")), q));
}

TEST_CASE("derive_coefficient: uniform over GF(13)* within 5 sigma") {
    const crypto::Seed seed(Bytes(20, 3));
    std::map<long, int> counts;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i)
        ++counts[node::derive_coefficient(seed, "P" + std::to_string(i), "N", std::nullopt, to_bytes("pk"), 13).get_si()];
    CHECK(counts.size() == 12);
    const double p = 1.0 / 12, mean = draws * p, sd = std::sqrt(draws * p * (1 - p));
    for (const auto& [v, c] : counts) {
        CHECK(v >= 1);
        CHECK(v <= 12);
        CHECK(std::abs(c - mean) < 5 * sd);
    }
}

TEST_CASE("policy_check: threshold, priority, subset, specific") {
    Authority auth;
    std::vector<node::ClaimedParent> five;
    std::vector<crypto::NodeId> declared;
    for (int i = 0; i < 6; ++i) declared.push_back("P" + std::to_string(i));
    for (int i = 0; i < 5; ++i) five.push_back(auth.parent(declared[i]));

    CHECK_FALSE(node::policy_check(node::ThresholdParents{5}, "N", declared, five, auth.keys.pk));

    auto forged = five;
    forged[2].cert->sig[0] ^= 1;
    const auto v = node::policy_check(node::ThresholdParents{5}, "N", declared, forged, auth.keys.pk);
    REQUIRE(v);
    CHECK(v->kind == ViolationKind::PolicyViolation);

    auto four = five;
    four.pop_back();
    CHECK(node::policy_check(node::ThresholdParents{5}, "N", declared, four, auth.keys.pk));
    CHECK(node::policy_check(node::AllParents{}, "N", declared, five, auth.keys.pk));

    auto prio = five;
    prio[0] = auth.parent("P0", crypto::Priority::High);
    CHECK(node::policy_check(node::PriorityParents{2, 3}, "N", declared, prio, auth.keys.pk));
    prio[1] = auth.parent("P1", crypto::Priority::High);
    CHECK_FALSE(node::policy_check(node::PriorityParents{2, 3}, "N", declared, prio, auth.keys.pk));

    CHECK_FALSE(node::policy_check(node::SubsetParents{{"P0", "P5"}, 1}, "N", declared, five, auth.keys.pk));
    CHECK(node::policy_check(node::SubsetParents{{"P0", "P5"}, 2}, "N", declared, five, auth.keys.pk));
    CHECK_FALSE(node::policy_check(node::SpecificParents{{"P1", "P3"}}, "N", declared, five, auth.keys.pk));
    CHECK(node::policy_check(node::SpecificParents{{"P5"}}, "N", declared, five, auth.keys.pk));

    auto stranger = five;
    stranger.push_back(auth.parent("X"));
    CHECK(node::policy_check(node::ThresholdParents{1}, "N", declared, stranger, auth.keys.pk));
    auto twice = five;
    twice.push_back(five[0]);
    CHECK(node::policy_check(node::ThresholdParents{1}, "N", declared, twice, auth.keys.pk));
}

TEST_CASE("validate_policy rejects malformed policies") {
    const std::vector<crypto::NodeId> declared{"A", "B"};
    CHECK_THROWS_AS(node::validate_policy(node::ThresholdParents{0}, declared), std::invalid_argument);
    CHECK_THROWS_AS(node::validate_policy(node::SpecificParents{{"C"}}, declared), std::invalid_argument);
    CHECK_THROWS_AS(node::validate_policy(node::PriorityParents{3, 1}, declared), std::invalid_argument);
    CHECK_NOTHROW(node::validate_policy(node::SubsetParents{{"A"}, 1}, declared));
    CHECK(node::describe(node::ThresholdParents{5}) == "threshold(5)");
}

TEST_CASE("packets: round-trip, size accounting, truncation") {
    for (auto proto : {pip::Protocol::Pip, pip::Protocol::LogPip}) {
        auto f = make_fanin(3, proto, 1);
        const auto p = f.relay_packet({});
        const auto bytes = node::serialize_packet(p);
        CHECK(node::deserialize_packet(bytes) == p);

        const auto& w = p.widths;
        const std::size_t vec = (p.e.n() + p.e.m()) * w.alpha;
        std::size_t token_bits = 0;
        if (proto == pip::Protocol::Pip)
            token_bits = pip::token_size_bits(proto, 3, w.sigma * 8u, w.sig * 8u, w.hash * 8u);
        else
            token_bits = (w.hash + w.sig) * 8u;  // root hash plus the packet's own helper
        CHECK(bytes.size() == vec + token_bits / 8 + node::packet_fixed_overhead(p));

        for (std::size_t cut = 0; cut < bytes.size(); ++cut)
            CHECK_THROWS_AS(node::deserialize_packet(ByteView(bytes).first(cut)), DecodeError);
        auto extra = bytes;
        extra.push_back(0);
        CHECK_THROWS_AS(node::deserialize_packet(extra), DecodeError);
    }
}

TEST_CASE("packets: random mutations decode or fail cleanly") {
    auto f = make_fanin(2, pip::Protocol::Pip, 2);
    const auto bytes = node::serialize_packet(f.relay_packet({}));
    Rng rng(3);
    std::size_t rejected = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        auto b = bytes;
        const int flips = 1 + static_cast<int>(rng.uniform(4));
        for (int i = 0; i < flips; ++i) b[rng.uniform(b.size())] ^= static_cast<std::uint8_t>(1 + rng.uniform(255));
        if (rng.uniform(4) == 0) b.resize(rng.uniform(b.size()));
        if (b == bytes) {
            ++rejected;
            continue;
        }
        try {
            const auto p = node::deserialize_packet(b);
            // Anything that still parses must fail the attest check.
            rejected += !node::verify_attest(f.relay().identity().pk, p);
        } catch (const DecodeError& e) {
            CHECK(e.offset() <= b.size());
            ++rejected;
        }
    }
    CHECK(rejected == 20000);
}

TEST_CASE("attest: covers the whole packet and the signer") {
    auto f = make_fanin(3, pip::Protocol::Pip, 3);
    auto p = f.relay_packet({});
    const auto& relay_pk = f.relay().identity().pk;
    CHECK(node::verify_attest(relay_pk, p));
    CHECK_FALSE(node::verify_attest(f.child().identity().pk, p));

    auto mutated = p;
    std::get<pip::PipTestToken>(mutated.token).entries[0].helper.sig[0] ^= 1;
    CHECK_FALSE(node::verify_attest(relay_pk, mutated));
    mutated = p;
    mutated.receiver = "X";
    CHECK_FALSE(node::verify_attest(relay_pk, mutated));

    const auto r = f.verify_at_child(mutated);
    REQUIRE(r.result);
    CHECK(r.result->kind == ViolationKind::BadAttest);
}

TEST_CASE("child accepts honest packets from a three-parent relay") {
    for (auto proto : {pip::Protocol::Pip, pip::Protocol::LogPip}) {
        auto f = make_fanin(3, proto, 4);
        for (int i = 0; i < 5; ++i) {
            const auto r = f.verify_at_child(f.relay_packet({}));
            CHECK_FALSE(r.result);
            if (proto == pip::Protocol::LogPip) CHECK(r.transcript.size() == 1);
        }
    }
}

TEST_CASE("polluted payload is reported as PollutedPacket") {
    auto f = make_fanin(3, pip::Protocol::Pip, 5);
    auto p = f.relay_packet({});
    p.e.payload[0] = gf::PrimeField(f.group().q).add(p.e.payload[0], 1);
    p.attest = node::attest_packet(*f.relay().identity().sk, p);
    const auto r = f.verify_at_child(p);
    REQUIRE(r.result);
    CHECK(r.result->kind == ViolationKind::PollutedPacket);
    CHECK(r.result->culprit == "R");
}

TEST_CASE("replayed packet from the previous epoch is BadEpoch") {
    for (auto proto : {pip::Protocol::Pip, pip::Protocol::LogPip}) {
        auto f = make_fanin(2, proto, 6);
        const auto old = f.relay_packet({});
        f.next_epoch();
        const auto r = f.verify_at_child(old);
        REQUIRE(r.result);
        CHECK(r.result->kind == ViolationKind::BadEpoch);

        // Same payload re-labelled with the new epoch still fails validity.
        auto relabelled = old;
        relabelled.epoch = {f.epoch().k, f.epoch().master_sig};
        relabelled.attest = node::attest_packet(*f.relay().identity().sk, relabelled);
        const auto r2 = f.verify_at_child(relabelled);
        REQUIRE(r2.result);
        CHECK(r2.result->kind == ViolationKind::BadEpoch);
    }
}

TEST_CASE("adversarial relays are detected under PIP with the expected violation") {
    const std::vector<std::pair<BehaviorKind, ViolationKind>> cases{
        {BehaviorKind::SkipParent, ViolationKind::MissingEntry},
        {BehaviorKind::ZeroCoefficient, ViolationKind::ZeroCoefficient},
        {BehaviorKind::WrongCoefficient, ViolationKind::WrongCoefficient},
        {BehaviorKind::ForgeToken, ViolationKind::BadHelperSig},
        // The forwarded parent's entry carries alpha = 1 and is checked first.
        {BehaviorKind::ForwardOnly, ViolationKind::WrongCoefficient},
    };
    for (const auto& [kind, expected] : cases) {
        auto f = make_fanin(3, pip::Protocol::Pip, 7);
        for (std::size_t t = 0; t < 3; ++t) {
            const auto r = f.verify_at_child(f.relay_packet({kind, t}));
            REQUIRE(r.result);
            CAPTURE(sim::to_string(sim::Behavior{kind, t}));
            CHECK(r.result->kind == expected);
            CHECK(r.result->culprit == "R");
        }
    }
}

TEST_CASE("adjudication: guilty, innocent, inadmissible") {
    SUBCASE("PIP skip-parent") {
        auto f = make_fanin(3, pip::Protocol::Pip, 8);
        const auto r = f.verify_at_child(f.relay_packet({BehaviorKind::SkipParent, 1}));
        REQUIRE(r.result);
        const auto j = judge(f, r);
        CHECK(j.ruling == node::Ruling::Guilty);
        REQUIRE(j.violation);
        CHECK(j.violation->kind == ViolationKind::MissingEntry);
    }
    SUBCASE("Log-PIP skip-parent with transcript") {
        auto f = make_fanin(2, pip::Protocol::LogPip, 9);
        node::ReceivedPacket r;
        for (int i = 0; i < 64 && !r.result; ++i) r = f.verify_at_child(f.relay_packet({BehaviorKind::SkipParent, 0}));
        REQUIRE(r.result);
        CHECK(judge(f, r).ruling == node::Ruling::Guilty);

        auto no_transcript = r;
        no_transcript.transcript.clear();
        CHECK(judge(f, no_transcript).ruling == node::Ruling::Inadmissible);
    }
    SUBCASE("honest packet is innocent") {
        auto f = make_fanin(3, pip::Protocol::Pip, 10);
        const auto r = f.verify_at_child(f.relay_packet({}));
        CHECK_FALSE(r.result);
        CHECK(judge(f, r).ruling == node::Ruling::Innocent);
    }
    SUBCASE("forged attest is inadmissible") {
        auto f = make_fanin(3, pip::Protocol::Pip, 11);
        auto r = f.verify_at_child(f.relay_packet({BehaviorKind::ZeroCoefficient, 0}));
        REQUIRE(r.result);
        r.packet.attest->at(0) ^= 1;
        CHECK(judge(f, r).ruling == node::Ruling::Inadmissible);
    }
    SUBCASE("view disagreeing with the registry is inadmissible") {
        auto f = make_fanin(3, pip::Protocol::Pip, 12);
        const auto r = f.verify_at_child(f.relay_packet({BehaviorKind::SkipParent, 0}));
        auto view = node::sender_view(f.registry(), "R");
        view.sender.coded_set.pop_back();
        view.coded_parents.pop_back();
        const auto proof = node::build_misbehavior_proof(r.packet, r.transcript, f.epoch(), view);
        CHECK(node::adjudicate(proof, f.system(), &f.registry()).ruling == node::Ruling::Inadmissible);
    }
}

TEST_CASE("a colluding parent cannot lend its helper to another edge") {
    // R reuses the helper its parent addressed to R as if the parent had sent it to C.
    auto f = make_fanin(2, pip::Protocol::Pip, 13);
    const auto* in = f.inputs().front();
    REQUIRE(in->helper);
    CHECK(pip::helper_verifies(*in->helper, in->sigma, f.group(), f.registry().at(in->sender).pk, in->sender, "R"));
    CHECK_FALSE(pip::helper_verifies(*in->helper, in->sigma, f.group(), f.registry().at(in->sender).pk, in->sender, "C"));
}

TEST_CASE("registry: children, drop_link, policy validation") {
    auto f = make_fanin(3, pip::Protocol::Pip, 14);
    auto& reg = f.registry();
    CHECK(reg.children_of("R") == std::vector<crypto::NodeId>{"C"});
    CHECK(reg.children_of("S").size() == 3);
    reg.drop_link("P01", "R");
    CHECK(reg.at("R").parents.size() == 2);
    CHECK(reg.at("R").coded_set == std::vector<crypto::NodeId>{"P00", "P02"});
    CHECK_THROWS(reg.at("nobody"));
    auto rec = reg.at("R");
    rec.policy = node::SpecificParents{{"ghost"}};
    CHECK_THROWS_AS(reg.add(rec), std::invalid_argument);
}

TEST_CASE("process_round: honest node codes over every verified parent") {
    auto f = make_fanin(3, pip::Protocol::Pip, 15);
    CHECK(f.inputs().size() == 3);
    const auto p = f.relay_packet({});
    const auto& tok = std::get<pip::PipTestToken>(p.token);
    CHECK(tok.entries.size() == 3);
    CHECK(validity::verify_validity(f.epoch(), p.e, p.sigma));
}
