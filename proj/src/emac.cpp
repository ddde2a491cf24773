#include "ehsn/emac.hpp"

#include <algorithm>
#include <cmath>

namespace ehsn {

void CyclePolicy::validate() const {
    if (!(min_fraction >= 0.0 && min_fraction <= max_fraction && max_fraction <= 1.0)) {
        throw DomainError("cycle policy bounds must satisfy 0 <= min <= max <= 1");
    }
    if (target_energy_fraction < min_fraction || target_energy_fraction > max_fraction) {
        throw DomainError("target energy fraction outside policy bounds");
    }
    if (adaptation_gain < 0.0) throw DomainError("adaptation gain must be non-negative");
    if (reference_busy < 0.0 || reference_busy > 1.0) {
        throw DomainError("reference busy fraction outside [0,1]");
    }
}

Cycle next_cycle(const NodeLinkState& state, bool channel_busy, const CyclePolicy& policy,
                 RngEngine& rng) {
    bool eligible = state.queue_length > 0 &&
                    state.battery.residual_j >= state.packet_tx_cost_j && !channel_busy;
    if (!eligible) return Cycle::Energy;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return u(rng) < policy.target_energy_fraction ? Cycle::Energy : Cycle::Data;
}

CyclePolicy adapt_ratio(const CyclePolicy& policy, double observed_busy_fraction) {
    if (!(observed_busy_fraction >= 0.0 && observed_busy_fraction <= 1.0)) {
        throw DomainError("observed busy fraction outside [0,1]");
    }
    policy.validate();
    CyclePolicy next = policy;
    double target = policy.target_energy_fraction -
                    policy.adaptation_gain * (observed_busy_fraction - policy.reference_busy);
    next.target_energy_fraction = std::clamp(target, policy.min_fraction, policy.max_fraction);
    return next;
}

ArbitrationOutcome arbitrate_channel(std::vector<std::string> contenders, double persistence,
                                     RngEngine& rng) {
    if (persistence < 0.0 || persistence > 1.0) {
        throw DomainError("persistence probability outside [0,1]");
    }
    std::sort(contenders.begin(), contenders.end());
    ArbitrationOutcome out;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& id : contenders) {
        if (u(rng) < persistence) out.transmitters.push_back(id);
    }
    if (out.transmitters.empty()) {
        out.kind = ArbitrationOutcome::Kind::Idle;
    } else if (out.transmitters.size() == 1) {
        out.kind = ArbitrationOutcome::Kind::Winner;
        out.winner = out.transmitters.front();
    } else {
        out.kind = ArbitrationOutcome::Kind::Collision;
    }
    return out;
}

std::vector<OverheardCredit> overheard_charge(const std::string& tx_id, double tx_power_w,
                                              double duration_s,
                                              const std::vector<NeighborRef>& neighbors,
                                              double sensitivity_floor_w_cm2) {
    std::vector<OverheardCredit> credits;
    credits.reserve(neighbors.size());
    for (const auto& nb : neighbors) {
        if (nb.id == tx_id) continue;
        double density = power_density_at(tx_power_w, nb.distance_m);
        IncidentField field{density, nb.aperture_cm2, tx_id};
        const ChargeCurve& curve = nb.curve ? *nb.curve : ChargeCurve::default_curve();
        HarvestResult res = duration_s > 0.0
                                ? harvest(nb.battery, curve, field, duration_s, duration_s,
                                          sensitivity_floor_w_cm2)
                                : HarvestResult{0.0, nb.battery, false};
        credits.push_back({nb.id, res.harvested_j, res.battery});
    }
    return credits;
}

} // namespace ehsn
