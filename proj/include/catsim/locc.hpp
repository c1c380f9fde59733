#pragma once

#include "catsim/protocol_math.hpp"
#include "catsim/qstate.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace catsim {

enum class Role { Alice, Claire, Bob };

struct Party {
    std::string id;
    Role role = Role::Alice;
    std::vector<std::string> qubits;
};

// Checks that the parties partition the given label set (every label owned
// exactly once); throws configuration_error otherwise.
void check_ownership_partition(const std::vector<Party>& parties,
                               const std::vector<std::string>& labels);

// ---- Transcript events ------------------------------------------------------

struct GateEvent {
    std::string party;
    std::vector<std::string> qubits; // single-qubit in every real protocol
    std::string gate_name;
    // Names of the measurements whose outcomes this gate was conditioned on.
    std::vector<std::string> depends_on;
};

struct MeasurementEvent {
    std::string party;
    std::vector<std::string> qubits;
    std::string name;       // measurement identifier, e.g. "bell", "claire1"
    std::string basis_name; // e.g. "bell", "{a,a_bar}", "filter"
    int outcome = 0;
    std::string outcome_name;
    double probability = 0.0; // conditional probability of this outcome
};

struct MessageEvent {
    std::string sender;
    std::vector<std::string> recipients;
    std::string measurement;
    int outcome = 0;
    std::string outcome_name;
    int bit_count = 0; // ceil(log2(reportable outcomes)) of the measurement
};

using TranscriptEvent = std::variant<GateEvent, MeasurementEvent, MessageEvent>;

struct Transcript {
    std::vector<TranscriptEvent> events;
    // Joint state of all qubits at the end of the run (measured qubits
    // collapsed onto their outcome states). Absent for zero-probability paths.
    std::optional<StateVector> final_state;
};

// ---- Protocol scripts (data, not code paths) --------------------------------

using OutcomeMap = std::map<std::string, int>;

struct StepGate {
    std::string party;
    std::string qubit;
    std::string gate_name;
    SingleQubitGate gate;
};

struct StepMeasure {
    std::string party;
    std::vector<std::string> qubits;
    MeasurementBasis basis;
    std::string name;
};

struct StepFilter {
    std::string party;
    std::string qubit;
    std::string name;
    FilterMeasurement filter;
};

struct StepMessage {
    std::string sender;
    std::vector<std::string> recipients;
    std::string measurement;
};

struct StepCorrection {
    std::string party;
    std::string qubit;
    std::vector<std::string> depends_on;
    // outcome map -> (gate, display name)
    std::function<std::pair<SingleQubitGate, std::string>(const OutcomeMap&)> resolve;
};

using Step = std::variant<StepGate, StepMeasure, StepFilter, StepMessage, StepCorrection>;

struct ProtocolScript {
    std::string name;
    std::vector<Party> parties;
    StateVector initial;
    std::vector<Step> steps;
    std::vector<std::string> bob_labels;
    std::optional<StateVector> target; // on bob_labels
};

// ---- Branches ----------------------------------------------------------------

enum class BranchStatus {
    Ok,              // protocol ran to completion
    FilterFailure,   // probabilistic filter failed; protocol stopped
    Complement,      // complement projector clicked (unreachable in theory)
    ZeroProbability, // branch probability below kZeroProb; no post-state
};

const char* branch_status_name(BranchStatus s);

struct Branch {
    OutcomeMap outcomes;
    double probability = 0.0; // joint probability of this leaf
    BranchStatus status = BranchStatus::Ok;
    // Remaining-qubit state at the leaf: the Bob-side state for completed
    // branches, the full post-filter state for filter failures.
    std::optional<StateVector> state;
    std::optional<double> fidelity; // vs the script target, completed branches only
    Transcript transcript;
};

struct EnumerateMode {};
struct SampleMode {
    std::uint64_t seed = 0;
};
using RunMode = std::variant<EnumerateMode, SampleMode>;

// Runs a script. Enumerate mode expands every measurement into all outcomes
// (depth-first, exact conditional renormalization at each node); sample mode
// draws one path reproducibly from the seed. Branch probabilities over an
// enumeration sum to 1.
std::vector<Branch> run_protocol(const ProtocolScript& script, const RunMode& mode);

// ---- Locality validation -----------------------------------------------------

struct Violation {
    std::size_t event_index = 0;
    std::string description;
};

// Confirms that every gate/measurement touches only qubits owned by the acting
// party and that every outcome-dependent gate is causally preceded by messages
// delivering the outcomes it depends on. Reports; does not throw.
std::vector<Violation> validate_locality(const std::vector<Party>& parties,
                                         const Transcript& transcript);

// ---- Order-invariance comparison ----------------------------------------------

struct OrderInvarianceReport {
    double max_probability_defect = 0.0;
    double min_conditional_fidelity = 1.0;
    std::vector<std::string> mismatches;

    bool passed(double prob_tol = 1e-12, double fid_tol = 1e-10) const {
        return mismatches.empty() && max_probability_defect <= prob_tol &&
               min_conditional_fidelity >= 1.0 - fid_tol;
    }
};

// Matches two enumerations leaf-by-leaf on their outcome tuples and compares
// joint probabilities and leaf states (global-phase-insensitive).
OrderInvarianceReport compare_enumerations(const std::vector<Branch>& a,
                                           const std::vector<Branch>& b);

} // namespace catsim
