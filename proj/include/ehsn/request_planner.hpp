#ifndef EHSN_REQUEST_PLANNER_HPP
#define EHSN_REQUEST_PLANNER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ehsn/energy_model.hpp"

namespace ehsn {

// Cumulative least-required energy at each slot boundary. Entry 0 is the
// starting boundary and must be 0; entries never decrease.
struct DemandSchedule {
    std::vector<double> least_required_j;

    int slots() const { return static_cast<int>(least_required_j.size()) - 1; }

    static DemandSchedule from_cumulative(std::vector<double> cumulative_j);
    // One cumulative joule value per line, '#' comments.
    static DemandSchedule load(const std::string& path);
    static DemandSchedule parse(std::istream& in, const std::string& origin);
};

// Feasible band for the cumulative-harvested-energy trajectory: below the
// lower bound a transmission would starve, above the upper bound the
// storage overflows. upper = lower + capacity, elementwise.
struct EnergyTunnel {
    std::vector<double> lower_j;
    std::vector<double> upper_j;
    double capacity_j = 0.0;

    int slots() const { return static_cast<int>(lower_j.size()) - 1; }
};

EnergyTunnel build_tunnel(const DemandSchedule& demand, double capacity_j);

// The tunnel discretized on an energy grid of resolution `energy_step_j`.
// Column i holds the grid levels admitted at slot boundary i; bounds are
// rounded inward (lower up, upper down) so every grid vertex is valid.
// A vertical edge of k levels is one charge request and costs
// overhead + k*step/efficiency(soc); a horizontal edge costs nothing.
struct TunnelGraph {
    EnergyTunnel tunnel;
    double energy_step_j = 0.0;
    double overhead_cost = 0.0;
    ChargeCurve curve = ChargeCurve::default_curve();
    std::vector<int> level_min; // per column, inclusive
    std::vector<int> level_max; // per column; min > max marks an empty column

    int columns() const { return static_cast<int>(level_min.size()); }
    double level_energy(int level) const { return level * energy_step_j; }

    // State of charge at a vertex: vertical distance to the lower bound
    // over the storage capacity.
    double soc_at(int column, int level) const;

    // Cost of charging `levels_up` grid levels at (column, level).
    // Returns infinity where the curve gives zero efficiency.
    double jump_cost(int column, int level, int levels_up) const;

    std::int64_t vertical_edge_count() const;
    std::int64_t horizontal_edge_count() const;
    std::int64_t edge_count() const { return vertical_edge_count() + horizontal_edge_count(); }
};

TunnelGraph build_graph(const EnergyTunnel& tunnel, double energy_step_j,
                        double overhead_cost, const ChargeCurve& curve);

struct ChargeRequest {
    int slot = 0;
    double amount_j = 0.0;
    double cost = 0.0;
};

struct ChargePlan {
    std::vector<ChargeRequest> requests;
    double total_cost = 0.0;
    std::vector<double> trajectory_j; // cumulative harvested energy per slot boundary
    int final_level = 0;
};

struct PlanOptions {
    // Force the trajectory to end at this grid level; default: cheapest
    // final-column vertex wins.
    std::optional<int> destination_level;
};

// Minimum-cost monotone trajectory from V(0,0) to the final column, one
// request per slot at most. Slot-major dynamic programming over the DAG.
// Ties prefer fewer requests, then lower final energy. Throws
// InfeasibleError naming the first slot boundary that cannot be reached.
ChargePlan plan_optimal(const TunnelGraph& graph, const PlanOptions& options = {});

// Exhaustive enumeration of all monotone trajectories, same tie-break.
// Refuses instances with slots * levels > 100 (SizeGuardError).
ChargePlan brute_force_plan(const TunnelGraph& graph, const PlanOptions& options = {});

struct PlanViolation {
    enum class Kind { Starvation, Overflow };
    Kind kind;
    int slot;
};

// First slot where the trajectory leaves the tunnel, or nullopt when valid.
std::optional<PlanViolation> validate_plan(const ChargePlan& plan, const EnergyTunnel& tunnel);

} // namespace ehsn

#endif // EHSN_REQUEST_PLANNER_HPP
