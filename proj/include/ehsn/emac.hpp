#ifndef EHSN_EMAC_HPP
#define EHSN_EMAC_HPP

#include <string>
#include <vector>

#include "ehsn/energy_model.hpp"
#include "ehsn/rng.hpp"

namespace ehsn {

// Duty-cycle policy of a single-antenna node: the fraction of eligible
// slots spent harvesting instead of transmitting, with a linear clamped
// adaptation rule driven by how busy the channel looks.
struct CyclePolicy {
    double target_energy_fraction = 0.8;
    double adaptation_gain = 0.1;
    double min_fraction = 0.05;
    double max_fraction = 0.95;
    double reference_busy = 0.2;

    void validate() const;
};

enum class Cycle { Energy, Data };

struct NodeLinkState {
    int queue_length = 0;
    Battery battery;
    Cycle current_cycle = Cycle::Energy;
    double packet_tx_cost_j = 0.0;
    double packet_tx_power_w = 0.0;
    double slot_length_s = 0.0;
};

// Slot-mode decision. Data is possible only with traffic queued, enough
// energy for one packet, and an idle channel; among such slots the node
// still harvests with probability target_energy_fraction, which yields the
// configured long-run energy:data ratio.
Cycle next_cycle(const NodeLinkState& state, bool channel_busy, const CyclePolicy& policy,
                 RngEngine& rng);

// target' = clamp(target - gain * (observed_busy - reference_busy)).
// A busy channel converts data cycles into forced energy cycles, so the
// planned energy share shrinks to compensate.
CyclePolicy adapt_ratio(const CyclePolicy& policy, double observed_busy_fraction);

struct ArbitrationOutcome {
    enum class Kind { Idle, Winner, Collision };
    Kind kind = Kind::Idle;
    std::string winner;                     // set when kind == Winner
    std::vector<std::string> transmitters;  // everyone who radiated this slot
};

// Slotted p-persistent contention. Two or more simultaneous transmitters
// destroy each other's packets but still radiate harvestable energy.
ArbitrationOutcome arbitrate_channel(std::vector<std::string> contenders, double persistence,
                                     RngEngine& rng);

struct NeighborRef {
    std::string id;
    double distance_m = 0.0;
    Battery battery;
    const ChargeCurve* curve = nullptr;
    double aperture_cm2 = 1.0;
};

struct OverheardCredit {
    std::string id;
    double harvested_j = 0.0;
    Battery battery;
};

// Energy credited to each neighbor by one node's transmission; the
// transmitter itself receives nothing.
std::vector<OverheardCredit> overheard_charge(
    const std::string& tx_id, double tx_power_w, double duration_s,
    const std::vector<NeighborRef>& neighbors,
    double sensitivity_floor_w_cm2 = kDefaultSensitivityFloorWCm2);

} // namespace ehsn

#endif // EHSN_EMAC_HPP
