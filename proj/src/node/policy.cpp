#include "rlnc/node/policy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rlnc::node {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool contains(const std::vector<crypto::NodeId>& v, const crypto::NodeId& id) {
    return std::find(v.begin(), v.end(), id) != v.end();
}

}  // namespace

void validate_policy(const RequiredSetPolicy& policy, const std::vector<crypto::NodeId>& declared) {
    std::visit(overloaded{
                   [](const AllParents&) {},
                   [&](const SpecificParents& p) {
                       for (const auto& id : p.ids)
                           if (!contains(declared, id)) throw std::invalid_argument("policy names undeclared parent " + id);
                   },
                   [](const ThresholdParents& p) {
                       if (p.d < 1) throw std::invalid_argument("threshold must be >= 1");
                   },
                   [&](const SubsetParents& p) {
                       if (p.d < 1) throw std::invalid_argument("subset threshold must be >= 1");
                       for (const auto& id : p.ids)
                           if (!contains(declared, id)) throw std::invalid_argument("policy names undeclared parent " + id);
                   },
                   [](const PriorityParents& p) {
                       if (p.min_total < p.min_high) throw std::invalid_argument("min_total below min_high");
                   },
               },
               policy);
}

pip::CheckResult policy_check(const RequiredSetPolicy& policy, const crypto::NodeId& node,
                              const std::vector<crypto::NodeId>& declared, const std::vector<ClaimedParent>& claimed,
                              const crypto::PublicKey& authority_pk) {
    const auto fail = [&](std::string why) { return pip::make_violation(pip::ViolationKind::PolicyViolation, node, std::move(why)); };

    std::set<crypto::NodeId> ids;
    std::size_t high = 0;
    for (const auto& c : claimed) {
        if (!ids.insert(c.id).second) return fail("parent " + c.id + " claimed twice");
        if (!contains(declared, c.id)) return fail("parent " + c.id + " is not declared");
        if (!c.cert || !crypto::verify_cert(*c.cert, c.pk, c.id, authority_pk))
            return fail("certificate of " + c.id + " does not verify");
        if (c.cert->priority == crypto::Priority::High) ++high;
    }
    const auto covers = [&](const std::vector<crypto::NodeId>& need) {
        return std::all_of(need.begin(), need.end(), [&](const auto& id) { return ids.count(id) > 0; });
    };
    return std::visit(
        overloaded{
            [&](const AllParents&) -> pip::CheckResult {
                if (!covers(declared)) return fail("not every declared parent is covered");
                return std::nullopt;
            },
            [&](const SpecificParents& p) -> pip::CheckResult {
                if (!covers(p.ids)) return fail("a required parent is not covered");
                return std::nullopt;
            },
            [&](const ThresholdParents& p) -> pip::CheckResult {
                if (ids.size() < p.d) return fail("fewer than " + std::to_string(p.d) + " parents");
                return std::nullopt;
            },
            [&](const SubsetParents& p) -> pip::CheckResult {
                const auto n = static_cast<std::size_t>(std::count_if(p.ids.begin(), p.ids.end(), [&](const auto& id) { return ids.count(id) > 0; }));
                if (n < p.d) return fail("fewer than " + std::to_string(p.d) + " parents from the subset");
                return std::nullopt;
            },
            [&](const PriorityParents& p) -> pip::CheckResult {
                if (high < p.min_high) return fail("fewer than " + std::to_string(p.min_high) + " high-priority parents");
                if (ids.size() < p.min_total) return fail("fewer than " + std::to_string(p.min_total) + " parents");
                return std::nullopt;
            },
        },
        policy);
}

std::string describe(const RequiredSetPolicy& policy) {
    return std::visit(overloaded{
                          [](const AllParents&) { return std::string("all"); },
                          [](const SpecificParents& p) { return "specific(" + std::to_string(p.ids.size()) + ")"; },
                          [](const ThresholdParents& p) { return "threshold(" + std::to_string(p.d) + ")"; },
                          [](const SubsetParents& p) {
                              return "subset(" + std::to_string(p.ids.size()) + "," + std::to_string(p.d) + ")";
                          },
                          [](const PriorityParents& p) {
                              return "priority(" + std::to_string(p.min_high) + "," + std::to_string(p.min_total) + ")";
                          },
                      },
                      policy);
}

}  // namespace rlnc::node
