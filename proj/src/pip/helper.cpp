#include "rlnc/pip/helper.hpp"

namespace rlnc::pip {

Bytes helper_message(const validity::Sigma& sigma, const validity::DlGroup& group, const crypto::NodeId& sender,
                     const crypto::NodeId& receiver) {
    ByteWriter w;
    write_fixed(w, sigma.v, group.element_bytes());
    w.put_bytes(to_bytes("from "));
    w.put_short_string(sender);
    w.put_bytes(to_bytes(" to "));
    w.put_short_string(receiver);
    return w.take();
}

HelperToken make_helper_token(const crypto::SecretKey& sender_sk, const validity::Sigma& sigma,
                              const validity::DlGroup& group, const crypto::NodeId& sender,
                              const crypto::NodeId& receiver) {
    return {crypto::sign(sender_sk, helper_message(sigma, group, sender, receiver))};
}

bool helper_verifies(const HelperToken& h, const validity::Sigma& sigma, const validity::DlGroup& group,
                     const crypto::PublicKey& sender_pk, const crypto::NodeId& sender, const crypto::NodeId& receiver) {
    if (sgn(sigma.v) < 0 || sigma.v >= group.p || sender.size() > 255 || receiver.size() > 255) return false;
    return crypto::verify(sender_pk, helper_message(sigma, group, sender, receiver), h.sig);
}

CheckResult check_helper(const gf::CodedVector& e, const validity::Sigma& sigma, const HelperToken& h,
                         const validity::DlGroup& group, const crypto::PublicKey& sender_pk,
                         const crypto::NodeId& sender, const crypto::NodeId& receiver) {
    if (e.coding_is_zero() || sigma == validity::identity_sigma())
        return make_violation(ViolationKind::HelperOnZero, sender, "helper token covers a zero packet");
    if (!helper_verifies(h, sigma, group, sender_pk, sender, receiver))
        return make_violation(ViolationKind::BadHelperSig, sender, "helper token does not verify");
    return std::nullopt;
}

}  // namespace rlnc::pip
