#pragma once

#include "catsim/qstate.hpp"

#include <string>
#include <utility>
#include <vector>

namespace catsim {

// Orthonormal single-qubit frame {|0'>, |1'>}.
struct SchmidtFrame {
    QubitVector zero;
    QubitVector one;

    SchmidtFrame(const QubitVector& z, const QubitVector& o);
    static SchmidtFrame computational() { return {QubitVector::zero(), QubitVector::one()}; }
};

// Derived quantities of a non-orthogonal pair (|phi>, |phi'>):
//   <phi|phi'> = r e^{i eps},   phi'' = e^{-i eps} phi'   (so <phi|phi''> = r),
//   phi  = cos(theta/2) a + sin(theta/2) a_bar,
//   phi'' = cos(theta/2) a - sin(theta/2) a_bar,           r = cos(theta).
// The basis {a, a_bar} is unique for 0 < r < 1; at r = 1 a_bar is chosen as
// the canonical orthogonal complement of a (first nonzero component real
// positive), and at r = 0 the phase convention is eps = 0.
struct OverlapFrame {
    double r = 0.0;
    double epsilon = 0.0;
    double theta = 0.0;
    QubitVector a;
    QubitVector a_bar;
    QubitVector phi;
    QubitVector phi_second;
};

OverlapFrame overlap_frame(const QubitVector& phi, const QubitVector& phi_prime);

// One single-qubit gate per Bob; strictly local by construction.
struct CorrectionAction {
    std::vector<SingleQubitGate> bob_gates;
    std::vector<std::string> gate_names;
};

// Bell basis on two qubits, fixed order (phi+, phi-, psi+, psi-).
MeasurementBasis bell_basis();

// GHZ basis on three qubits: phi+-, psi+- plus the rank-4 complement projector
// (the outcome that never clicks in the protocol).
MeasurementBasis ghz_basis();

// Claire's projective basis {|a>, |a_bar>}.
MeasurementBasis claire_basis(const OverlapFrame& frame, const std::string& name);

enum class BellOutcome { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };
enum class ClaireOutcome { A = 0, ABar = 1 };

inline bool is_psi(BellOutcome b) { return b == BellOutcome::PsiPlus || b == BellOutcome::PsiMinus; }
inline int sign_bit(BellOutcome b) { return (b == BellOutcome::PhiMinus || b == BellOutcome::PsiMinus) ? 1 : 0; }
const char* bell_outcome_name(BellOutcome b);

// U' for the frame {|0'>,|1'>}: |0'> -> |0>, |1'> -> e^{-i eps} |1>.
SingleQubitGate gauge_to_computational(const SchmidtFrame& frame, double epsilon);
// Alice's phase gate on qubit A: diag(1, e^{-i eps}).
SingleQubitGate alice_phase(double epsilon);
// The (U', alice_phase) pair for a single overlap frame.
std::pair<SingleQubitGate, SingleQubitGate> gauge_unitaries(const OverlapFrame& frame,
                                                            const SchmidtFrame& target_frame);

// U'' = |a><a| - |a_bar><a_bar|: the reflection exchanging phi and phi''.
SingleQubitGate swap_unitary(const OverlapFrame& frame);

// U_i: |0> -> frame.zero, |1> -> frame.one (restores a Schmidt frame).
SingleQubitGate frame_embedding(const SchmidtFrame& frame);
// Exact inverse of gauge_to_computational(frame, epsilon).
SingleQubitGate inverse_gauge(const SchmidtFrame& frame, double epsilon);

// Correction table of the GHZ protocol, outcomes numbered 1..4:
//   1 -> (I, I),  2 -> (sigma_z, I),  3 -> (sigma_x, sigma_x),  4 -> (sigma_x, i sigma_y).
// Outcome 5 (the complement) is an unreachable branch and throws protocol_error.
CorrectionAction ghz_correction(int outcome);

// Correction for the GHZ-class protocol, derived from the Bell ⊗ {a, a_bar}
// expansion of the joint state (not from prose):
//   Bob1 applies U''  iff the Bell outcome is psi+-;
//   Bob2 applies sigma_x iff psi+-, then sigma_z iff sign(Bell) xor (outcome == a_bar).
CorrectionAction ghz_class_correction(BellOutcome bell, ClaireOutcome claire, const OverlapFrame& frame);

// N-party generalization: Bob_i (i < N) applies U''_i iff psi+-; Bob_N applies
// sigma_x iff psi+-, then sigma_z iff sign(Bell) xor parity(#a_bar outcomes).
CorrectionAction cat_correction(BellOutcome bell, const std::vector<ClaireOutcome>& claire_outcomes,
                                const std::vector<OverlapFrame>& frames);

// Local filtering on one qubit that balances an (a, b)-weighted channel:
//   K_s = diag(m/|a|, m/|b|), m = min(|a|, |b|);  K_s† K_s + K_f† K_f = I.
// On the channel a|0...> + b|1...> success has probability 2 min(|a|^2, |b|^2)
// and leaves the balanced state (the residual weight phase arg(b) - arg(a) is
// removed by the gauge phase on the same qubit). a*b = 0 is a degenerate
// channel and throws configuration_error.
struct FilterMeasurement {
    Mat2 success;
    Mat2 failure;
    double predicted_success_probability = 0.0;
};

FilterMeasurement filter_measurement(cdouble a, cdouble b);

} // namespace catsim
