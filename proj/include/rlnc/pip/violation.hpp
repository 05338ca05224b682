#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "rlnc/common/bytes.hpp"
#include "rlnc/crypto/sign.hpp"

namespace rlnc::pip {

enum class ViolationKind : std::uint8_t {
    MissingEntry,
    BadHelperSig,
    ZeroCoefficient,
    WrongCoefficient,
    SignatureCombineMismatch,
    BadMerklePath,
    RootSigMismatch,
    BadAttest,
    PollutedPacket,
    HelperOnZero,
    BadEpoch,
    PolicyViolation,
};

std::string_view to_string(ViolationKind k);
std::optional<ViolationKind> violation_from_string(std::string_view s);

struct Violation {
    ViolationKind kind;
    crypto::NodeId culprit;
    Bytes evidence;  // usually the offending parent id
    std::string detail;
};

/// nullopt means the check passed.
using CheckResult = std::optional<Violation>;

inline Violation make_violation(ViolationKind kind, crypto::NodeId culprit, std::string detail = {},
                                Bytes evidence = {}) {
    return Violation{kind, std::move(culprit), std::move(evidence), std::move(detail)};
}

}  // namespace rlnc::pip
