#pragma once

#include "catsim/locc.hpp"
#include "catsim/protocol_math.hpp"
#include "catsim/qstate.hpp"

#include <string>
#include <vector>

namespace catsim {

enum class ChannelFamily { GHZ, GhzClass, Cat };

const char* channel_family_name(ChannelFamily f);

// The shared channel  a |0 phi_1 ... phi_{N-1} 0> + b |1 phi'_1 ... phi'_{N-1} 1>
// on qubits (A, B1, ..., BN). The GHZ family pins phi = |0>, phi' = |1>;
// balanced weights (a = b = 1/sqrt(2)) give the deterministic channels.
struct ChannelSpec {
    ChannelFamily family = ChannelFamily::GHZ;
    int n_bobs = 2;
    cdouble weight_a;
    cdouble weight_b;
    std::vector<QubitVector> phi;       // size n_bobs - 1
    std::vector<QubitVector> phi_prime; // size n_bobs - 1

    static ChannelSpec ghz();
    static ChannelSpec ghz_class(const QubitVector& phi, const QubitVector& phi_prime);
    static ChannelSpec cat(const std::vector<QubitVector>& phi, const std::vector<QubitVector>& phi_prime);
    ChannelSpec with_weights(cdouble a, cdouble b) const;

    bool balanced() const;
    // Overlap frames of the phi pairs, in order.
    std::vector<OverlapFrame> frames() const;
    // The channel state on labels (A, B1, ..., BN).
    StateVector state() const;
    std::vector<std::string> bob_labels() const;

    void validate() const; // throws configuration_error
};

// The state to be teleported:  alpha (⊗ zero_factors) + beta (⊗ one_factors)
// on qubits (1, ..., N). For the GHZ protocol both positions carry Schmidt
// frames; for the GHZ-class/cat protocols positions 1..N-1 carry the channel's
// phi / phi' vectors and position N an orthonormal frame {|0'>, |1'>}.
struct TeleportInput {
    cdouble alpha;
    cdouble beta;
    std::vector<QubitVector> zero_factors;
    std::vector<QubitVector> one_factors;

    static TeleportInput ghz_input(cdouble alpha, cdouble beta, const SchmidtFrame& first,
                                   const SchmidtFrame& second);
    static TeleportInput class_input(cdouble alpha, cdouble beta, const ChannelSpec& channel,
                                     const SchmidtFrame& last);

    int n_qubits() const { return static_cast<int>(zero_factors.size()); }
    StateVector state(const std::vector<std::string>& labels) const;
    void validate() const;
};

// Builds the 2N+1 qubit joint state |input>_{1..N} ⊗ |channel>_{A,B1..BN} and
// the ownership map. For the GHZ family the source hands both input qubits to
// Alice; otherwise Claire_i owns qubit i and Alice owns qubit N and A.
std::pair<StateVector, std::vector<Party>> build_initial_state(const TeleportInput& input,
                                                               const ChannelSpec& channel);

enum class MeasureOrdering { AliceFirst, ClairesFirst };

ProtocolScript make_ghz_script(const TeleportInput& input, const ChannelSpec& channel);
ProtocolScript make_ghz_class_script(const TeleportInput& input, const ChannelSpec& channel,
                                     MeasureOrdering ordering = MeasureOrdering::AliceFirst);
ProtocolScript make_cat_script(const TeleportInput& input, const ChannelSpec& channel,
                               MeasureOrdering ordering = MeasureOrdering::AliceFirst);
// Local filtering on qubit A followed by the deterministic script for the
// channel family; requires non-degenerate weights.
ProtocolScript make_probabilistic_script(const TeleportInput& input, const ChannelSpec& channel,
                                         MeasureOrdering ordering = MeasureOrdering::AliceFirst);

// Full branch enumerations of the teleportation protocols.
std::vector<Branch> ghz_protocol(const TeleportInput& input, const ChannelSpec& channel);
std::vector<Branch> ghz_class_protocol(const TeleportInput& input, const ChannelSpec& channel);
std::vector<Branch> cat_protocol(const TeleportInput& input, const ChannelSpec& channel);
std::vector<Branch> probabilistic_protocol(const TeleportInput& input, const ChannelSpec& channel);

// Enumerates with Alice-first and Claire(s)-first measurement orderings and
// compares joint distributions and per-outcome conditional states.
OrderInvarianceReport order_permutation_check(const TeleportInput& input, const ChannelSpec& channel);

} // namespace catsim
