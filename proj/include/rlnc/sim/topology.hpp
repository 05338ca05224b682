#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rlnc/node/policy.hpp"

namespace rlnc::sim {

enum class Role { Source, Interior, Sink };

enum class BehaviorKind {
    Honest,            // mode 3
    NonInnovative,     // mode 1
    ForwardOnly,       // mode 2
    SkipParent,
    ZeroCoefficient,
    WrongCoefficient,
    ReplayOld,
    ForgeToken,
};

struct Behavior {
    BehaviorKind kind = BehaviorKind::Honest;
    std::size_t target = 0;  // parent index for the targeted kinds
    bool operator==(const Behavior&) const = default;
};

std::string to_string(Behavior b);
Behavior parse_behavior(const std::string& s);  // throws std::invalid_argument
std::string_view to_string(Role r);

struct TopoNode {
    crypto::NodeId id;
    Role role = Role::Interior;
    Behavior behavior;
    node::RequiredSetPolicy policy = node::AllParents{};
    crypto::Priority priority = crypto::Priority::Normal;
};

using Edge = std::pair<std::size_t, std::size_t>;

/// Directed graph whose node indices are a topological order.
struct Topology {
    std::vector<TopoNode> nodes;
    std::vector<Edge> edges;

    std::size_t index_of(const crypto::NodeId& id) const;
    std::vector<std::size_t> parents(std::size_t v) const;
    std::vector<std::size_t> children(std::size_t v) const;
    std::size_t source() const;
    std::vector<std::size_t> sinks() const;
    std::vector<std::size_t> byzantine() const;
};

/// Throws std::invalid_argument unless edges point forward in index order,
/// there is exactly one source, no duplicate edges, and every node is
/// reachable from the source.
void validate(const Topology& t);

/// Longest-path depth of every node from the source (source = 0).
std::vector<std::size_t> depths(const Topology& t);
std::size_t diameter(const Topology& t);

/// Unit-capacity max-flow (edge-disjoint paths).
std::size_t min_cut(const Topology& t, std::size_t src, std::size_t dst);
/// Edges crossing a minimum cut (source side = residual reachability).
std::vector<Edge> min_cut_edges(const Topology& t, std::size_t src, std::size_t dst);

/// S, R1, R2, N1, N4, N2, N3 with sinks N2 and N3.
Topology butterfly_topology();

/// Layered random DAG with max-flow(source, sink) == target_min_cut. The
/// upstream part is random; a small downstream region holds the sink and is
/// entered only through the cut edges. Byzantine nodes are the cut vertices
/// with the most cut edges and get `byzantine_behavior`.
Topology random_topology(std::size_t node_count, std::size_t edge_count, std::size_t target_min_cut,
                         std::size_t byzantine_count, std::uint64_t seed,
                         Behavior byzantine_behavior = {BehaviorKind::NonInnovative, 0});

class TopologyParseError : public std::runtime_error {
public:
    TopologyParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// "node <id> <source|interior|sink> <behavior>" lines, then "src dst" edges.
/// Blank lines and '#' comments are ignored.
Topology parse_topology(const std::string& text);
std::string format_topology(const Topology& t);

}  // namespace rlnc::sim
