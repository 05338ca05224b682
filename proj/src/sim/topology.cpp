#include "rlnc/sim/topology.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "rlnc/common/rng.hpp"

namespace rlnc::sim {

namespace {

struct KindName {
    BehaviorKind kind;
    std::string_view name;
    bool targeted;
};

constexpr KindName kKinds[] = {
    {BehaviorKind::Honest, "honest", false},
    {BehaviorKind::NonInnovative, "noninnovative", false},
    {BehaviorKind::ForwardOnly, "forwardonly", false},
    {BehaviorKind::SkipParent, "skipparent", true},
    {BehaviorKind::ZeroCoefficient, "zerocoefficient", true},
    {BehaviorKind::WrongCoefficient, "wrongcoefficient", true},
    {BehaviorKind::ReplayOld, "replayold", false},
    {BehaviorKind::ForgeToken, "forgetoken", true},
};

// Residual graph for unit-capacity max-flow.
struct FlowGraph {
    struct Arc {
        std::size_t to;
        int cap;
        std::size_t rev;
    };
    std::vector<std::vector<Arc>> adj;

    explicit FlowGraph(const Topology& t) : adj(t.nodes.size()) {
        for (const auto& [u, v] : t.edges) {
            adj[u].push_back({v, 1, adj[v].size()});
            adj[v].push_back({u, 0, adj[u].size() - 1});
        }
    }

    std::size_t run(std::size_t s, std::size_t d) {
        std::size_t flow = 0;
        for (;;) {
            std::vector<std::pair<std::size_t, std::size_t>> prev(adj.size(), {SIZE_MAX, 0});
            std::deque<std::size_t> q{s};
            prev[s] = {s, 0};
            while (!q.empty() && prev[d].first == SIZE_MAX) {
                const std::size_t u = q.front();
                q.pop_front();
                for (std::size_t i = 0; i < adj[u].size(); ++i) {
                    const auto& a = adj[u][i];
                    if (a.cap > 0 && prev[a.to].first == SIZE_MAX) {
                        prev[a.to] = {u, i};
                        q.push_back(a.to);
                    }
                }
            }
            if (prev[d].first == SIZE_MAX) return flow;
            for (std::size_t v = d; v != s;) {
                auto [u, i] = prev[v];
                auto& a = adj[u][i];
                a.cap -= 1;
                adj[v][a.rev].cap += 1;
                v = u;
            }
            ++flow;
        }
    }

    std::vector<bool> reachable(std::size_t s) const {
        std::vector<bool> seen(adj.size(), false);
        std::deque<std::size_t> q{s};
        seen[s] = true;
        while (!q.empty()) {
            const std::size_t u = q.front();
            q.pop_front();
            for (const auto& a : adj[u])
                if (a.cap > 0 && !seen[a.to]) {
                    seen[a.to] = true;
                    q.push_back(a.to);
                }
        }
        return seen;
    }
};

std::string pad_id(std::size_t i, std::size_t count) {
    std::string digits = std::to_string(count > 0 ? count - 1 : 0);
    std::string s = std::to_string(i);
    return "n" + std::string(digits.size() - std::min(digits.size(), s.size()), '0') + s;
}

}  // namespace

std::string to_string(Behavior b) {
    for (const auto& k : kKinds)
        if (k.kind == b.kind) return k.targeted ? std::string(k.name) + ":" + std::to_string(b.target) : std::string(k.name);
    return "?";
}

Behavior parse_behavior(const std::string& s) {
    const auto colon = s.find(':');
    const std::string name = s.substr(0, colon);
    for (const auto& k : kKinds) {
        if (k.name != name) continue;
        Behavior b{k.kind, 0};
        if (colon != std::string::npos) {
            if (!k.targeted) throw std::invalid_argument("behavior " + name + " takes no parent index");
            const std::string arg = s.substr(colon + 1);
            if (arg.empty() || !std::all_of(arg.begin(), arg.end(), ::isdigit))
                throw std::invalid_argument("bad parent index in behavior " + s);
            b.target = std::stoul(arg);
        }
        return b;
    }
    throw std::invalid_argument("unknown behavior " + s);
}

std::string_view to_string(Role r) {
    switch (r) {
        case Role::Source: return "source";
        case Role::Interior: return "interior";
        case Role::Sink: return "sink";
    }
    return "?";
}

std::size_t Topology::index_of(const crypto::NodeId& id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id == id) return i;
    throw std::out_of_range("unknown node " + id);
}

std::vector<std::size_t> Topology::parents(std::size_t v) const {
    std::vector<std::size_t> out;
    for (const auto& [a, b] : edges)
        if (b == v) out.push_back(a);
    return out;
}

std::vector<std::size_t> Topology::children(std::size_t v) const {
    std::vector<std::size_t> out;
    for (const auto& [a, b] : edges)
        if (a == v) out.push_back(b);
    return out;
}

std::size_t Topology::source() const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].role == Role::Source) return i;
    throw std::logic_error("topology has no source");
}

std::vector<std::size_t> Topology::sinks() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].role == Role::Sink) out.push_back(i);
    return out;
}

std::vector<std::size_t> Topology::byzantine() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].behavior.kind != BehaviorKind::Honest) out.push_back(i);
    return out;
}

void validate(const Topology& t) {
    std::size_t sources = 0;
    std::set<crypto::NodeId> ids;
    for (const auto& n : t.nodes) {
        if (n.role == Role::Source) ++sources;
        if (n.id.empty() || n.id.size() > 255) throw std::invalid_argument("node ids must be 1..255 bytes");
        if (!ids.insert(n.id).second) throw std::invalid_argument("duplicate node id " + n.id);
    }
    if (sources != 1) throw std::invalid_argument("topology needs exactly one source");
    std::set<Edge> seen;
    for (const auto& e : t.edges) {
        if (e.first >= t.nodes.size() || e.second >= t.nodes.size()) throw std::invalid_argument("edge endpoint out of range");
        if (e.first >= e.second) throw std::invalid_argument("edges must follow topological order");
        if (!seen.insert(e).second) throw std::invalid_argument("duplicate edge");
        if (t.nodes[e.second].role == Role::Source) throw std::invalid_argument("edge into the source");
    }
    const auto d = depths(t);
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
        if (d[i] == SIZE_MAX) throw std::invalid_argument("node " + t.nodes[i].id + " is unreachable from the source");
}

std::vector<std::size_t> depths(const Topology& t) {
    std::vector<std::size_t> d(t.nodes.size(), SIZE_MAX);
    d[t.source()] = 0;
    auto edges = t.edges;
    std::sort(edges.begin(), edges.end());
    for (const auto& [u, v] : edges)
        if (d[u] != SIZE_MAX) d[v] = d[v] == SIZE_MAX ? d[u] + 1 : std::max(d[v], d[u] + 1);
    return d;
}

std::size_t diameter(const Topology& t) {
    std::size_t best = 0;
    for (auto x : depths(t))
        if (x != SIZE_MAX) best = std::max(best, x);
    return best;
}

std::size_t min_cut(const Topology& t, std::size_t src, std::size_t dst) {
    if (src >= t.nodes.size() || dst >= t.nodes.size()) throw std::out_of_range("min_cut: node out of range");
    if (src == dst) return 0;
    FlowGraph g(t);
    return g.run(src, dst);
}

std::vector<Edge> min_cut_edges(const Topology& t, std::size_t src, std::size_t dst) {
    FlowGraph g(t);
    g.run(src, dst);
    const auto side = g.reachable(src);
    std::vector<Edge> out;
    for (const auto& e : t.edges)
        if (side[e.first] && !side[e.second]) out.push_back(e);
    return out;
}

Topology butterfly_topology() {
    Topology t;
    const char* ids[] = {"S", "R1", "R2", "N1", "N4", "N2", "N3"};
    for (const char* id : ids) t.nodes.push_back({id, Role::Interior, {}, node::AllParents{}, crypto::Priority::Normal});
    t.nodes[0].role = Role::Source;
    t.nodes[5].role = Role::Sink;
    t.nodes[6].role = Role::Sink;
    // S->R1 S->R2 R1->N1 R2->N1 N1->N4 N4->N2 N4->N3 R1->N2 R2->N3
    t.edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {4, 6}, {1, 5}, {2, 6}};
    return t;
}

Topology random_topology(std::size_t node_count, std::size_t edge_count, std::size_t c, std::size_t byzantine_count,
                         std::uint64_t seed, Behavior byzantine_behavior) {
    if (c < 1) throw std::invalid_argument("random_topology: min-cut must be >= 1");
    if (node_count < 5) throw std::invalid_argument("random_topology: need at least 5 nodes");
    // Downstream region: d0, d1, sink. Upstream: 0 .. u-1, last node is the main gateway.
    const std::size_t u = node_count - 3;
    const std::size_t d0 = u, d1 = u + 1, sink = u + 2;
    const std::size_t extra_gateways = c >= 2 ? c - 2 : 0;
    if (u < extra_gateways + 2) throw std::invalid_argument("random_topology: too few nodes for the requested min-cut");
    const std::size_t fixed = 3 + c;
    const std::size_t chain = u - 1;
    const std::size_t max_upstream = u * (u - 1) / 2;
    if (edge_count < fixed + chain) throw std::invalid_argument("random_topology: too few edges to connect the graph");
    if (edge_count > fixed + max_upstream) throw std::invalid_argument("random_topology: too many edges for the node count");
    const std::size_t upstream_budget = edge_count - fixed;

    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        Rng rng(mix_seed(seed, attempt));
        Topology t;
        for (std::size_t i = 0; i < node_count; ++i)
            t.nodes.push_back({pad_id(i, node_count), Role::Interior, {}, node::AllParents{}, crypto::Priority::Normal});
        t.nodes[0].role = Role::Source;
        t.nodes[sink].role = Role::Sink;

        std::set<Edge> chosen;
        for (std::size_t i = 0; i + 1 < u; ++i) chosen.insert({i, i + 1});
        std::vector<Edge> pool;
        for (std::size_t i = 0; i < u; ++i)
            for (std::size_t j = i + 2; j < u; ++j) pool.push_back({i, j});
        for (std::size_t i = 0; i < pool.size() && chosen.size() < upstream_budget; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.uniform(pool.size() - i));
            std::swap(pool[i], pool[j]);
            chosen.insert(pool[i]);
        }
        chosen.insert({d0, d1});
        chosen.insert({d0, sink});
        chosen.insert({d1, sink});
        const std::size_t main_gw = u - 1;
        chosen.insert({main_gw, d0});
        if (c >= 2) chosen.insert({main_gw, d1});
        for (std::size_t g = 0; g < extra_gateways; ++g) chosen.insert({u - 2 - g, sink});
        t.edges.assign(chosen.begin(), chosen.end());

        if (t.edges.size() != edge_count) continue;
        if (min_cut(t, 0, sink) != c) continue;
        validate(t);

        std::map<std::size_t, std::size_t> per_tail;
        for (const auto& e : min_cut_edges(t, 0, sink)) ++per_tail[e.first];
        std::vector<std::pair<std::size_t, std::size_t>> ranked(per_tail.begin(), per_tail.end());
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            return a.second != b.second ? a.second > b.second : a.first > b.first;
        });
        for (std::size_t i = 0; i < std::min(byzantine_count, ranked.size()); ++i)
            t.nodes[ranked[i].first].behavior = byzantine_behavior;
        return t;
    }
    throw std::runtime_error("random_topology: no graph with the requested min-cut after bounded retries");
}

TopologyParseError::TopologyParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Topology parse_topology(const std::string& text) {
    struct RawNode {
        TopoNode node;
        std::size_t line;
    };
    std::vector<RawNode> raw;
    std::map<crypto::NodeId, std::size_t> index;
    std::vector<std::pair<Edge, std::size_t>> raw_edges;
    std::istringstream in(text);
    std::string line;
    for (std::size_t ln = 1; std::getline(in, line); ++ln) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string w; ls >> w;) tok.push_back(w);
        if (tok.empty()) continue;
        if (tok[0] == "node") {
            if (!raw_edges.empty()) throw TopologyParseError(ln, "node declared after edges");
            if (tok.size() != 4) throw TopologyParseError(ln, "expected: node <id> <role> <behavior>");
            TopoNode n;
            n.id = tok[1];
            if (n.id.size() > 255) throw TopologyParseError(ln, "node id longer than 255 bytes");
            if (tok[2] == "source") n.role = Role::Source;
            else if (tok[2] == "interior") n.role = Role::Interior;
            else if (tok[2] == "sink") n.role = Role::Sink;
            else throw TopologyParseError(ln, "unknown role " + tok[2]);
            try {
                n.behavior = parse_behavior(tok[3]);
            } catch (const std::invalid_argument& e) {
                throw TopologyParseError(ln, e.what());
            }
            if (!index.emplace(n.id, raw.size()).second) throw TopologyParseError(ln, "duplicate node " + n.id);
            raw.push_back({std::move(n), ln});
        } else {
            if (tok.size() != 2) throw TopologyParseError(ln, "expected: <src> <dst>");
            auto a = index.find(tok[0]), b = index.find(tok[1]);
            if (a == index.end()) throw TopologyParseError(ln, "unknown node " + tok[0]);
            if (b == index.end()) throw TopologyParseError(ln, "unknown node " + tok[1]);
            if (a->second == b->second) throw TopologyParseError(ln, "self loop");
            raw_edges.push_back({{a->second, b->second}, ln});
        }
    }
    if (raw.empty()) throw TopologyParseError(0, "no nodes");

    // Stable topological order (declaration order breaks ties).
    std::vector<std::size_t> indeg(raw.size(), 0);
    std::vector<std::vector<std::size_t>> out(raw.size());
    for (const auto& [e, ln] : raw_edges) {
        out[e.first].push_back(e.second);
        ++indeg[e.second];
    }
    std::set<std::size_t> ready;
    for (std::size_t i = 0; i < raw.size(); ++i)
        if (indeg[i] == 0) ready.insert(i);
    std::vector<std::size_t> order, pos(raw.size());
    while (!ready.empty()) {
        const std::size_t v = *ready.begin();
        ready.erase(ready.begin());
        pos[v] = order.size();
        order.push_back(v);
        for (auto w : out[v])
            if (--indeg[w] == 0) ready.insert(w);
    }
    if (order.size() != raw.size()) throw TopologyParseError(raw_edges.back().second, "graph has a cycle");

    Topology t;
    for (auto v : order) t.nodes.push_back(raw[v].node);
    std::set<Edge> seen;
    for (const auto& [e, ln] : raw_edges) {
        Edge mapped{pos[e.first], pos[e.second]};
        if (!seen.insert(mapped).second) throw TopologyParseError(ln, "duplicate edge");
        t.edges.push_back(mapped);
    }
    try {
        validate(t);
    } catch (const std::invalid_argument& e) {
        throw TopologyParseError(0, e.what());
    }
    return t;
}

std::string format_topology(const Topology& t) {
    std::ostringstream os;
    for (const auto& n : t.nodes) os << "node " << n.id << ' ' << to_string(n.role) << ' ' << to_string(n.behavior) << '\n';
    for (const auto& [a, b] : t.edges) os << t.nodes[a].id << ' ' << t.nodes[b].id << '\n';
    return os.str();
}

}  // namespace rlnc::sim
