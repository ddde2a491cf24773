#ifndef EHSN_ROUTING_HPP
#define EHSN_ROUTING_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ehsn/energy_model.hpp"

namespace ehsn {

using NodeId = std::string;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Vec2& a, const Vec2& b);

// Periodic keyframed node positions; the topology replays a gesture loop.
struct Keyframe {
    double t = 0.0; // within [0, period)
    std::map<NodeId, Vec2> positions;
};

struct TopologyTrace {
    double period_s = 0.0;
    double comm_range_m = 0.0;
    std::vector<Keyframe> keyframes;

    // `period <s>`, `comm_range <m>`, then `keyframe <t>` blocks of
    // `node_id x y` lines. '#' comments.
    static TopologyTrace parse(std::istream& in, const std::string& origin);
    static TopologyTrace load(const std::string& path);

    void validate() const;
};

// Snapshot adjacency: an edge needs both endpoints alive and within range.
struct LinkGraph {
    struct Node {
        NodeId id;
        Vec2 pos;
        bool alive = true;
    };

    std::vector<Node> nodes;             // sorted by id
    std::vector<std::vector<int>> adj;   // alive-filtered, sorted neighbor indices
    double comm_range_m = 0.0;

    int index_of(const NodeId& id) const; // -1 when absent

    // Adjacency by range alone, ignoring the alive flags. Route planning
    // uses it because dead relays may be revived mid-schedule.
    std::vector<int> range_neighbors(int index) const;
};

LinkGraph make_link_graph(std::vector<LinkGraph::Node> nodes, double comm_range_m);

LinkGraph topology_at(const TopologyTrace& trace, double t_s);
LinkGraph topology_at(const TopologyTrace& trace, double t_s,
                      const std::map<NodeId, Battery>& batteries);

struct Route {
    std::vector<NodeId> nodes; // src..dst inclusive; single entry when src == dst
    int hops() const { return static_cast<int>(nodes.size()) - 1; }
};

// Minimum-hop route over the alive adjacency; ties resolve to the
// lexicographically smallest node sequence. nullopt when unreachable.
std::optional<Route> shortest_route(const LinkGraph& graph, const NodeId& src,
                                    const NodeId& dst);

struct FlowRequest {
    NodeId source;
    NodeId destination;
    int release_order = 0;
    int packets = 1;
};

struct TxParams {
    double tx_power_w = 0.0;     // radiated while sending one packet
    double tx_duration_s = 0.0;  // airtime of one packet
    double tx_cost_j = 0.0;      // battery drain per packet sent
    double aperture_cm2 = 1.0;
    double sensitivity_floor_w_cm2 = kDefaultSensitivityFloorWCm2;
};

struct FlowAssignment {
    std::vector<Route> routes; // one per flow, in release order
    int total_hops = 0;
    bool exact = true;         // false when the exhaustive search fell back to greedy
    std::string warning;
};

// Walks a route hop by hop against mutable battery state: the transmitter
// must be alive with at least one packet of energy, the receiver must be
// alive when the packet arrives, and every transmission then credits
// overheard energy to all other nodes (possibly reviving dead ones).
// Returns false at the first failing hop; `batteries` reflects however far
// the walk got.
bool walk_route(const LinkGraph& graph, const Route& route, int packets,
                std::map<NodeId, Battery>& batteries, const ChargeCurve& curve,
                const TxParams& tx);

// Exhaustive search over candidate route combinations in release order,
// energy effects of earlier flows applied before later ones; minimizes the
// total hop count. Exact for at most 2 flows on graphs of at most 30
// nodes; beyond that it falls back to sequential greedy and says so.
FlowAssignment joint_route_select(const LinkGraph& graph, const std::vector<FlowRequest>& flows,
                                  const std::map<NodeId, Battery>& batteries,
                                  const ChargeCurve& curve, const TxParams& tx);

// Each flow takes its own shortest feasible route given whatever state its
// predecessors left behind; no lookahead.
FlowAssignment sequential_greedy_select(const LinkGraph& graph,
                                        const std::vector<FlowRequest>& flows,
                                        const std::map<NodeId, Battery>& batteries,
                                        const ChargeCurve& curve, const TxParams& tx);

// A routing experiment in a file: node positions with optional initial
// residuals, link range, transmit parameters and the flow list.
struct FlowScenario {
    LinkGraph graph;
    std::map<NodeId, Battery> batteries;
    TxParams tx;
    std::vector<FlowRequest> flows;
};

FlowScenario load_flow_scenario(const std::string& path);
FlowScenario parse_flow_scenario(std::istream& in, const std::string& origin);

struct AliveSample {
    std::int64_t slot = 0;
    NodeId node;
    bool alive = true;
};

struct ConnectivityEvent {
    enum class Kind { Died, Revived };
    std::int64_t slot = 0;
    NodeId node;
    Kind kind = Kind::Died;
};

// Alive-flag transitions from a time-ordered log; the first sample of a
// node sets its baseline and emits nothing.
std::vector<ConnectivityEvent> connectivity_events(const std::vector<AliveSample>& log);

} // namespace ehsn

#endif // EHSN_ROUTING_HPP
