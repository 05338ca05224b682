#pragma once

#include <variant>
#include <vector>

#include "rlnc/pip/violation.hpp"

namespace rlnc::node {

struct AllParents {};
struct SpecificParents {
    std::vector<crypto::NodeId> ids;
};
struct ThresholdParents {
    std::size_t d = 1;
};
struct SubsetParents {
    std::vector<crypto::NodeId> ids;
    std::size_t d = 1;
};
struct PriorityParents {
    std::size_t min_high = 0;
    std::size_t min_total = 0;
};

using RequiredSetPolicy = std::variant<AllParents, SpecificParents, ThresholdParents, SubsetParents, PriorityParents>;

struct ClaimedParent {
    crypto::NodeId id;
    crypto::PublicKey pk;
    std::optional<crypto::Certificate> cert;
};

/// Validates the parents a node claims to code over against its declared
/// parents and policy. Every claimed parent must be declared and carry a
/// certificate valid under `authority_pk`.
pip::CheckResult policy_check(const RequiredSetPolicy& policy, const crypto::NodeId& node,
                              const std::vector<crypto::NodeId>& declared, const std::vector<ClaimedParent>& claimed,
                              const crypto::PublicKey& authority_pk);

/// Throws std::invalid_argument for malformed policies (d = 0, subset not declared).
void validate_policy(const RequiredSetPolicy& policy, const std::vector<crypto::NodeId>& declared);

std::string describe(const RequiredSetPolicy& policy);

}  // namespace rlnc::node
