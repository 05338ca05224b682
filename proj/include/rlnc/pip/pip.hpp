#pragma once

#include <vector>

#include "rlnc/pip/helper.hpp"

namespace rlnc::pip {

enum class Protocol : std::uint8_t { None = 0, Pip = 1, LogPip = 2 };

std::string_view to_string(Protocol p);
Protocol protocol_from_string(std::string_view s);  // throws std::invalid_argument

/// Fixed field widths (bytes) used by every wire encoding in a deployment.
struct Widths {
    std::uint16_t alpha = 0;  // |q|
    std::uint16_t sigma = 0;  // |p|
    std::uint16_t sig = static_cast<std::uint16_t>(crypto::kSignatureBytes);
    std::uint16_t hash = 0;

    static Widths from(const validity::DlGroup& group, const crypto::HashSpec& hash);
    bool operator==(const Widths&) const = default;
};

/// What a node contributes per parent it coded over.
struct ParentContribution {
    crypto::NodeId parent_id;
    BigInt coefficient;
    validity::Sigma sigma;
    HelperToken helper;
};

struct PipEntry {
    crypto::NodeId parent_id;
    BigInt alpha;
    validity::Sigma sigma;
    HelperToken helper;
    bool operator==(const PipEntry&) const = default;
};

struct PipTestToken {
    std::vector<PipEntry> entries;  // sorted by parent id
    bool operator==(const PipTestToken&) const = default;
};

/// Sorted concatenation. Throws std::invalid_argument on a duplicate parent id.
PipTestToken pip_combine(std::vector<ParentContribution> parents);

/// A parent the verifier expects an entry for, with its PRF coefficient.
struct ExpectedParent {
    crypto::NodeId id;
    crypto::PublicKey pk;
    BigInt coefficient;
};

/// Checks, per expected parent in id order: entry present, helper verifies,
/// coefficient nonzero and equal to the PRF value; then no unexpected entries;
/// then the combined signature equals sigma_n. First failure wins.
CheckResult pip_verif_test(const validity::Sigma& sigma_n, const PipTestToken& token,
                           std::vector<ExpectedParent> expected, const crypto::NodeId& sender,
                           const validity::DlGroup& group);

void encode_pip_token(ByteWriter& w, const PipTestToken& token, const Widths& widths);
PipTestToken decode_pip_token(ByteReader& r, const Widths& widths);

/// Sort key shared by token entries and Merkle leaves.
bool id_less(const crypto::NodeId& a, const crypto::NodeId& b);

}  // namespace rlnc::pip
