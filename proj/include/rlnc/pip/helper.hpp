#pragma once

#include "rlnc/pip/violation.hpp"
#include "rlnc/validity/scheme.hpp"

namespace rlnc::pip {

struct HelperToken {
    crypto::Signature sig;
    bool operator==(const HelperToken&) const = default;
};

/// sigma (fixed width |p|) || "from " || sender || " to " || receiver, ids length-prefixed.
Bytes helper_message(const validity::Sigma& sigma, const validity::DlGroup& group, const crypto::NodeId& sender,
                     const crypto::NodeId& receiver);

HelperToken make_helper_token(const crypto::SecretKey& sender_sk, const validity::Sigma& sigma,
                              const validity::DlGroup& group, const crypto::NodeId& sender,
                              const crypto::NodeId& receiver);

bool helper_verifies(const HelperToken& h, const validity::Sigma& sigma, const validity::DlGroup& group,
                     const crypto::PublicKey& sender_pk, const crypto::NodeId& sender, const crypto::NodeId& receiver);

/// HelperOnZero when the coding vector is all zero or sigma is the identity;
/// BadHelperSig when the signature does not verify.
CheckResult check_helper(const gf::CodedVector& e, const validity::Sigma& sigma, const HelperToken& h,
                         const validity::DlGroup& group, const crypto::PublicKey& sender_pk,
                         const crypto::NodeId& sender, const crypto::NodeId& receiver);

}  // namespace rlnc::pip
