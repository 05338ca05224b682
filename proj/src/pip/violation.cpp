#include "rlnc/pip/violation.hpp"

#include <array>

namespace rlnc::pip {

namespace {
constexpr std::array<std::string_view, 12> kNames{
    "MissingEntry",  "BadHelperSig",   "ZeroCoefficient", "WrongCoefficient", "SignatureCombineMismatch",
    "BadMerklePath", "RootSigMismatch", "BadAttest",      "PollutedPacket",   "HelperOnZero",
    "BadEpoch",      "PolicyViolation",
};
}

std::string_view to_string(ViolationKind k) { return kNames.at(static_cast<std::size_t>(k)); }

std::optional<ViolationKind> violation_from_string(std::string_view s) {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == s) return static_cast<ViolationKind>(i);
    return std::nullopt;
}

}  // namespace rlnc::pip
