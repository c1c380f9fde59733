#include "catsim/analysis.hpp"

#include <cmath>

namespace catsim {

double binary_entropy(double p) {
    double e = 0.0;
    if (p > 1e-15) e -= p * std::log2(p);
    if (1.0 - p > 1e-15) e -= (1.0 - p) * std::log2(1.0 - p);
    return e;
}

ChannelNegativityReport channel_negativity_report(const ChannelSpec& channel) {
    if (channel.n_bobs != 2)
        throw domain_error("channel negativity report supports N = 2 channels only");
    const StateVector state = channel.state(); // labels (A, B1, B2)
    ChannelNegativityReport rep;
    rep.negativity_alice_bob2 = negativity(partial_trace(state, {"A", "B2"}));
    rep.negativity_alice_bob1 = negativity(partial_trace(state, {"A", "B1"}));
    return rep;
}

EntanglementRange teleportable_entanglement_range(const OverlapFrame& frame, int grid_points) {
    if (grid_points < 101) throw domain_error("entanglement range needs a grid of at least 101 points");

    const cdouble ph = std::polar(1.0, frame.epsilon);
    const QubitVector phi_prime(ph * frame.phi_second.c0(), ph * frame.phi_second.c1());

    EntanglementRange out;
    out.closed_form = binary_entropy((1.0 + frame.r) / 2.0);
    for (int k = 0; k < grid_points; ++k) {
        const double alpha2 = static_cast<double>(k) / (grid_points - 1);
        double entropy = 0.0;
        if (alpha2 > 0.0 && alpha2 < 1.0) {
            const StateVector chi = product_superposition(std::sqrt(alpha2), {frame.phi, QubitVector::zero()},
                                                          std::sqrt(1.0 - alpha2), {phi_prime, QubitVector::one()},
                                                          {"1", "2"});
            entropy = entanglement_entropy(schmidt(chi, {"1"}));
        }
        out.alpha2_grid.push_back(alpha2);
        out.entropy_curve.push_back(entropy);
        if (entropy > out.e_max) {
            out.e_max = entropy;
            out.alpha2_at_max = alpha2;
        }
    }
    return out;
}

} // namespace catsim
