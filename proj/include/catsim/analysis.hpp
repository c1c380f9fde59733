#pragma once

#include "catsim/protocol_math.hpp"
#include "catsim/protocols.hpp"

#include <vector>

namespace catsim {

// Negativities of the reduced channel states between Alice and each Bob.
// For the balanced channels: N(A:B2) = r/2 (separable exactly at r = 0,
// i.e. for |GHZ>), and N(A:B1) = 0 for both families. Two-qubit NPT is
// reported as the distillability witness.
struct ChannelNegativityReport {
    double negativity_alice_bob2 = 0.0;
    double negativity_alice_bob1 = 0.0;
};

ChannelNegativityReport channel_negativity_report(const ChannelSpec& channel);

// Entanglement carried by the teleportable states alpha |phi 0'> + beta |phi' 1'>
// as |alpha|^2 sweeps a uniform grid over [0, 1].
struct EntanglementRange {
    std::vector<double> alpha2_grid;
    std::vector<double> entropy_curve; // ebits, via schmidt + entanglement_entropy
    double e_max = 0.0;
    double alpha2_at_max = 0.0;
    // H((1+r)/2): the closed form the brute-force curve is checked against.
    double closed_form = 0.0;
};

EntanglementRange teleportable_entanglement_range(const OverlapFrame& frame, int grid_points = 101);

double binary_entropy(double p);

} // namespace catsim
