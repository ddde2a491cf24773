#include "ehsn/request_planner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace ehsn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGridEps = 1e-9;

int level_ceil(double energy_j, double step_j) {
    return static_cast<int>(std::ceil(energy_j / step_j - kGridEps));
}

int level_floor(double energy_j, double step_j) {
    return static_cast<int>(std::floor(energy_j / step_j + kGridEps));
}

// Path value under the tie-break order: cost, then number of requests.
struct PathValue {
    double cost = kInf;
    long long requests = 0;

    bool reachable() const { return cost < kInf; }
};

bool less_value(const PathValue& a, const PathValue& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.requests < b.requests;
}

void validate_demand(const std::vector<double>& cumulative) {
    if (cumulative.size() < 2) {
        throw DomainError("demand schedule needs at least 2 boundaries (1 slot)");
    }
    if (cumulative.front() != 0.0) {
        throw DomainError("demand schedule must start at 0");
    }
    for (std::size_t i = 0; i < cumulative.size(); ++i) {
        if (!std::isfinite(cumulative[i]) || cumulative[i] < 0.0) {
            throw DomainError("demand value at boundary " + std::to_string(i) +
                              " must be finite and non-negative");
        }
        if (i > 0 && cumulative[i] < cumulative[i - 1]) {
            throw DomainError("demand schedule decreases at boundary " + std::to_string(i));
        }
    }
}

} // namespace

DemandSchedule DemandSchedule::from_cumulative(std::vector<double> cumulative_j) {
    validate_demand(cumulative_j);
    return DemandSchedule{std::move(cumulative_j)};
}

DemandSchedule DemandSchedule::parse(std::istream& in, const std::string& origin) {
    std::vector<double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double v;
        if (!(ls >> v)) continue;
        std::string extra;
        if (ls >> extra) {
            throw ParseError(origin + ": trailing token '" + extra + "'", lineno);
        }
        values.push_back(v);
    }
    return from_cumulative(std::move(values));
}

DemandSchedule DemandSchedule::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open demand file: " + path);
    return parse(in, path);
}

EnergyTunnel build_tunnel(const DemandSchedule& demand, double capacity_j) {
    validate_demand(demand.least_required_j);
    if (!(capacity_j > 0.0) || !std::isfinite(capacity_j)) {
        throw DomainError("storage capacity must be positive");
    }
    EnergyTunnel tunnel;
    tunnel.capacity_j = capacity_j;
    tunnel.lower_j = demand.least_required_j;
    tunnel.upper_j.reserve(tunnel.lower_j.size());
    for (double lo : tunnel.lower_j) tunnel.upper_j.push_back(lo + capacity_j);
    return tunnel;
}

double TunnelGraph::soc_at(int column, int level) const {
    double soc = (level_energy(level) - tunnel.lower_j[column]) / tunnel.capacity_j;
    return std::clamp(soc, 0.0, 1.0);
}

double TunnelGraph::jump_cost(int column, int level, int levels_up) const {
    double eff = curve.efficiency_at(soc_at(column, level));
    if (eff <= 0.0) return kInf;
    return overhead_cost + levels_up * energy_step_j / eff;
}

std::int64_t TunnelGraph::vertical_edge_count() const {
    std::int64_t n = 0;
    for (int i = 0; i < columns(); ++i) {
        for (int j = level_min[i]; j <= level_max[i]; ++j) {
            n += level_max[i] - j;
        }
    }
    return n;
}

std::int64_t TunnelGraph::horizontal_edge_count() const {
    std::int64_t n = 0;
    for (int i = 0; i + 1 < columns(); ++i) {
        int lo = std::max(level_min[i], level_min[i + 1]);
        int hi = std::min(level_max[i], level_max[i + 1]);
        if (hi >= lo) n += hi - lo + 1;
    }
    return n;
}

TunnelGraph build_graph(const EnergyTunnel& tunnel, double energy_step_j,
                        double overhead_cost, const ChargeCurve& curve) {
    if (!(energy_step_j > 0.0)) throw DomainError("energy step must be positive");
    if (energy_step_j > tunnel.capacity_j + kGridEps) {
        throw DomainError("energy step exceeds storage capacity");
    }
    if (overhead_cost < 0.0) throw DomainError("overhead cost must be non-negative");
    if (tunnel.lower_j.size() < 2 || tunnel.lower_j.size() != tunnel.upper_j.size()) {
        throw DomainError("tunnel bounds malformed");
    }

    TunnelGraph g;
    g.tunnel = tunnel;
    g.energy_step_j = energy_step_j;
    g.overhead_cost = overhead_cost;
    g.curve = curve;
    g.level_min.reserve(tunnel.lower_j.size());
    g.level_max.reserve(tunnel.lower_j.size());
    for (std::size_t i = 0; i < tunnel.lower_j.size(); ++i) {
        g.level_min.push_back(level_ceil(tunnel.lower_j[i], energy_step_j));
        g.level_max.push_back(level_floor(tunnel.upper_j[i], energy_step_j));
    }
    return g;
}

namespace {

struct DpColumn {
    std::vector<PathValue> in;    // value on arrival, before any request
    std::vector<PathValue> out;   // value after the optional request
    std::vector<int> jump_from;   // in-level the request started from, -1 = none
};

ChargePlan extract_plan(const TunnelGraph& g, const std::vector<DpColumn>& dp,
                        int final_level) {
    ChargePlan plan;
    int cols = g.columns();
    plan.trajectory_j.assign(cols, 0.0);
    plan.final_level = final_level;
    plan.total_cost = dp[cols - 1].out[final_level].cost;

    int level = final_level;
    for (int i = cols - 1; i >= 0; --i) {
        plan.trajectory_j[i] = g.level_energy(level);
        int from = dp[i].jump_from[level];
        if (from >= 0) {
            ChargeRequest req;
            req.slot = i;
            req.amount_j = (level - from) * g.energy_step_j;
            req.cost = g.jump_cost(i, from, level - from);
            plan.requests.push_back(req);
            level = from;
        }
        // Horizontal edge into column i keeps the level.
    }
    std::reverse(plan.requests.begin(), plan.requests.end());
    return plan;
}

} // namespace

ChargePlan plan_optimal(const TunnelGraph& g, const PlanOptions& options) {
    int cols = g.columns();
    if (cols < 2) throw DomainError("graph needs at least 2 columns");

    int max_level = 0;
    for (int i = 0; i < cols; ++i) max_level = std::max(max_level, g.level_max[i]);

    std::vector<DpColumn> dp(cols);
    for (auto& col : dp) {
        col.in.assign(max_level + 1, PathValue{});
        col.out.assign(max_level + 1, PathValue{});
        col.jump_from.assign(max_level + 1, -1);
    }

    if (g.level_min[0] > 0 || g.level_max[0] < 0) {
        throw InfeasibleError("start vertex V(0,0) is outside the tunnel grid", 0);
    }
    dp[0].in[0] = PathValue{0.0, 0};

    for (int i = 0; i < cols; ++i) {
        if (g.level_min[i] > g.level_max[i]) {
            throw InfeasibleError(
                "tunnel admits no grid level at slot boundary " + std::to_string(i) +
                    " (bounds cross after rounding)",
                i);
        }
        bool any = false;
        auto& col = dp[i];
        // No request: carry the arrival value.
        for (int j = g.level_min[i]; j <= g.level_max[i]; ++j) {
            col.out[j] = col.in[j];
            if (col.in[j].reachable()) any = true;
        }
        if (!any) {
            throw InfeasibleError(
                "no reachable vertex at slot boundary " + std::to_string(i) +
                    " (demand outruns one slot's worth of charging)",
                i);
        }
        // One request: jump from any reachable arrival level below.
        for (int from = g.level_min[i]; from <= g.level_max[i]; ++from) {
            if (!col.in[from].reachable()) continue;
            for (int to = from + 1; to <= g.level_max[i]; ++to) {
                double c = g.jump_cost(i, from, to - from);
                PathValue cand{col.in[from].cost + c, col.in[from].requests + 1};
                if (less_value(cand, col.out[to])) {
                    col.out[to] = cand;
                    col.jump_from[to] = from;
                }
            }
        }
        // Advance to the next boundary; horizontal edges cost nothing.
        if (i + 1 < cols) {
            for (int j = std::max(g.level_min[i], g.level_min[i + 1]);
                 j <= std::min(g.level_max[i], g.level_max[i + 1]); ++j) {
                dp[i + 1].in[j] = col.out[j];
            }
        }
    }

    int last = cols - 1;
    int best_level = -1;
    if (options.destination_level) {
        int dest = *options.destination_level;
        if (dest < g.level_min[last] || dest > g.level_max[last]) {
            throw DomainError("destination level " + std::to_string(dest) +
                              " outside the final column");
        }
        if (!dp[last].out[dest].reachable()) {
            throw InfeasibleError("destination level unreachable", last);
        }
        best_level = dest;
    } else {
        for (int j = g.level_min[last]; j <= g.level_max[last]; ++j) {
            if (!dp[last].out[j].reachable()) continue;
            if (best_level < 0 || less_value(dp[last].out[j], dp[last].out[best_level])) {
                best_level = j;
            }
        }
        if (best_level < 0) {
            throw InfeasibleError("no reachable vertex at the final slot boundary", last);
        }
    }
    return extract_plan(g, dp, best_level);
}

namespace {

struct BruteState {
    const TunnelGraph* g;
    const PlanOptions* options;
    std::vector<int> jumps;      // per column: in-level of this column's request, -1 = none
    std::vector<int> best_jumps;
    std::vector<int> levels;     // out-level per column, for the best path
    std::vector<int> cur_levels;
    PathValue best{};
    int best_final = -1;
    bool found = false;
};

void brute_dfs(BruteState& s, int column, int in_level, PathValue value) {
    const TunnelGraph& g = *s.g;
    // Prune strictly worse prefixes; equal prefixes may still end lower.
    if (s.found && less_value(s.best, value)) return;

    int last = g.columns() - 1;
    auto consider_out = [&](int out_level, PathValue v) {
        s.cur_levels[column] = out_level;
        if (column == last) {
            if (s.options->destination_level && out_level != *s.options->destination_level) {
                return;
            }
            bool better = !s.found || less_value(v, s.best) ||
                          (!less_value(s.best, v) && out_level < s.best_final);
            if (better) {
                s.found = true;
                s.best = v;
                s.best_final = out_level;
                s.best_jumps = s.jumps;
                s.levels = s.cur_levels;
            }
            return;
        }
        if (out_level >= g.level_min[column + 1] && out_level <= g.level_max[column + 1]) {
            brute_dfs(s, column + 1, out_level, v);
        }
    };

    s.jumps[column] = -1;
    consider_out(in_level, value);
    for (int to = in_level + 1; to <= g.level_max[column]; ++to) {
        double c = g.jump_cost(column, in_level, to - in_level);
        if (c == kInf) continue;
        s.jumps[column] = in_level;
        consider_out(to, PathValue{value.cost + c, value.requests + 1});
    }
    s.jumps[column] = -1;
}

} // namespace

ChargePlan brute_force_plan(const TunnelGraph& g, const PlanOptions& options) {
    int cols = g.columns();
    if (cols < 2) throw DomainError("graph needs at least 2 columns");

    int levels = 0;
    for (int i = 0; i < cols; ++i) {
        if (g.level_min[i] > g.level_max[i]) {
            throw InfeasibleError("tunnel admits no grid level at slot boundary " +
                                      std::to_string(i),
                                  i);
        }
        levels = std::max(levels, g.level_max[i] - g.level_min[i] + 1);
    }
    long long size = static_cast<long long>(cols - 1) * levels;
    if (size > 100) {
        throw SizeGuardError("instance too large for exhaustive enumeration: slots*levels = " +
                             std::to_string(size));
    }
    if (g.level_min[0] > 0) {
        throw InfeasibleError("start vertex V(0,0) is outside the tunnel grid", 0);
    }

    BruteState s;
    s.g = &g;
    s.options = &options;
    s.jumps.assign(cols, -1);
    s.cur_levels.assign(cols, 0);
    brute_dfs(s, 0, 0, PathValue{0.0, 0});

    if (!s.found) {
        // Locate the first unreachable boundary by set propagation.
        int max_level = 0;
        for (int i = 0; i < cols; ++i) max_level = std::max(max_level, g.level_max[i]);
        std::vector<char> set(max_level + 1, 0);
        set[0] = 1;
        for (int i = 0; i < cols; ++i) {
            bool any = false;
            // One jump reaches every level above a reachable one.
            int lowest = -1;
            for (int j = g.level_min[i]; j <= g.level_max[i]; ++j) {
                if (set[j]) {
                    any = true;
                    if (lowest < 0) lowest = j;
                }
            }
            if (!any) throw InfeasibleError("no reachable vertex at slot boundary " +
                                                std::to_string(i),
                                            i);
            for (int j = lowest; j <= g.level_max[i]; ++j) set[j] = 1;
            if (i + 1 < cols) {
                for (int j = 0; j <= max_level; ++j) {
                    if (set[j] && (j < g.level_min[i + 1] || j > g.level_max[i + 1])) set[j] = 0;
                }
            }
        }
        throw InfeasibleError("destination level unreachable", cols - 1);
    }

    ChargePlan plan;
    plan.total_cost = s.best.cost;
    plan.final_level = s.best_final;
    plan.trajectory_j.reserve(cols);
    for (int i = 0; i < cols; ++i) plan.trajectory_j.push_back(g.level_energy(s.levels[i]));
    for (int i = 0; i < cols; ++i) {
        if (s.best_jumps[i] >= 0) {
            ChargeRequest req;
            req.slot = i;
            req.amount_j = (s.levels[i] - s.best_jumps[i]) * g.energy_step_j;
            req.cost = g.jump_cost(i, s.best_jumps[i], s.levels[i] - s.best_jumps[i]);
            plan.requests.push_back(req);
        }
    }
    return plan;
}

std::optional<PlanViolation> validate_plan(const ChargePlan& plan, const EnergyTunnel& tunnel) {
    if (plan.trajectory_j.size() != tunnel.lower_j.size()) {
        throw DomainError("trajectory length " + std::to_string(plan.trajectory_j.size()) +
                          " does not match tunnel with " +
                          std::to_string(tunnel.lower_j.size()) + " boundaries");
    }
    for (std::size_t i = 0; i < plan.trajectory_j.size(); ++i) {
        double tol = kGridEps * (1.0 + std::abs(tunnel.upper_j[i]));
        if (plan.trajectory_j[i] < tunnel.lower_j[i] - tol) {
            return PlanViolation{PlanViolation::Kind::Starvation, static_cast<int>(i)};
        }
        if (plan.trajectory_j[i] > tunnel.upper_j[i] + tol) {
            return PlanViolation{PlanViolation::Kind::Overflow, static_cast<int>(i)};
        }
    }
    return std::nullopt;
}

} // namespace ehsn
