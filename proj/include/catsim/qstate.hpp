#pragma once

#include "catsim/errors.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace catsim {

using cdouble = std::complex<double>;

// Tolerances shared across the library.
inline constexpr double kNormTol = 1e-12;       // norm / unitarity / orthonormality
inline constexpr double kZeroProb = 1e-14;      // below this a measurement branch is "never clicks"
inline constexpr double kDegenerateFrame = 1e-12;

// 2x2 complex matrix, row-major: {m00, m01, m10, m11}. Not necessarily unitary
// (measurement Kraus operators use this directly).
using Mat2 = std::array<cdouble, 4>;

Mat2 mat2_mul(const Mat2& a, const Mat2& b);
Mat2 mat2_adjoint(const Mat2& a);
bool mat2_is_unitary(const Mat2& m, double tol = kNormTol);

// A single-qubit pure state; unit norm enforced at construction.
class QubitVector {
public:
    QubitVector(cdouble c0, cdouble c1);

    static QubitVector zero() { return {1.0, 0.0}; }
    static QubitVector one() { return {0.0, 1.0}; }
    static QubitVector plus();
    static QubitVector minus();

    cdouble c0() const { return c0_; }
    cdouble c1() const { return c1_; }
    cdouble component(int i) const { return i == 0 ? c0_ : c1_; }

private:
    cdouble c0_, c1_;
};

// <u|v>, conjugate-linear in the first argument.
cdouble inner(const QubitVector& u, const QubitVector& v);

// A 2x2 unitary; unitarity enforced at construction (within kNormTol).
class SingleQubitGate {
public:
    explicit SingleQubitGate(const Mat2& m);

    static SingleQubitGate identity();
    static SingleQubitGate sigma_x();
    static SingleQubitGate sigma_y();
    static SingleQubitGate sigma_z();
    static SingleQubitGate i_sigma_y();
    // diag(1, e^{i*delta})
    static SingleQubitGate phase_shift(double delta);
    // Unitary with the given (orthonormal) columns: |0> -> c0, |1> -> c1.
    static SingleQubitGate from_columns(const QubitVector& col0, const QubitVector& col1);

    const Mat2& matrix() const { return m_; }
    cdouble at(int row, int col) const { return m_[static_cast<std::size_t>(row) * 2 + col]; }

    SingleQubitGate adjoint() const;
    // Matrix product: (*this) * rhs, i.e. rhs acts first.
    SingleQubitGate operator*(const SingleQubitGate& rhs) const;

    QubitVector apply(const QubitVector& v) const;

private:
    Mat2 m_;
};

// Dense state vector over n labeled qubits.
//
// Bit order convention (fixed, used by every decomposition and file output):
// labels()[0] is the MOST significant bit of the amplitude index, so for
// labels (q0, q1, ..., q_{n-1}) the amplitude of |b0 b1 ... b_{n-1}> sits at
// index  b0*2^{n-1} + b1*2^{n-2} + ... + b_{n-1}.
class StateVector {
public:
    StateVector(std::vector<std::string> labels, std::vector<cdouble> amplitudes);

    // |index> in the computational basis over the given labels.
    static StateVector computational(std::vector<std::string> labels, std::size_t index);
    // Single labeled qubit in the given state.
    static StateVector single(std::string label, const QubitVector& q);
    // Product of single-qubit states, one per label.
    static StateVector product(std::vector<std::string> labels, const std::vector<QubitVector>& factors);

    int num_qubits() const { return static_cast<int>(labels_.size()); }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<cdouble>& amplitudes() const { return amps_; }
    cdouble amplitude(std::size_t index) const { return amps_[index]; }

    // Position of a label; throws addressing_error if absent.
    int index_of(const std::string& label) const;
    bool has_label(const std::string& label) const;

    double norm() const;

    // Same amplitudes re-laid-out with the labels in the given order
    // (must be a permutation of the current labels).
    StateVector reordered(const std::vector<std::string>& new_order) const;

private:
    std::vector<std::string> labels_;
    std::vector<cdouble> amps_;
};

// α * (⊗ zero_factors) + β * (⊗ one_factors) over the given labels.
// The result must be normalized (the caller guarantees orthogonality of the
// two product vectors somewhere along the chain); otherwise domain_error.
StateVector product_superposition(cdouble alpha, const std::vector<QubitVector>& zero_factors,
                                  cdouble beta, const std::vector<QubitVector>& one_factors,
                                  std::vector<std::string> labels);

// Kronecker product in the documented bit order; labels concatenated.
StateVector tensor(const StateVector& a, const StateVector& b);
StateVector tensor(const std::vector<StateVector>& factors);

StateVector apply_gate(const StateVector& state, const std::string& target, const SingleQubitGate& gate);

// Orthonormal measurement basis on a qubit subset. Each element is a vector of
// length 2^k over the target qubits (targets[0] = most significant bit).
// When `has_complement` is set the basis does not span the subspace and the
// projector I - Σ_i |e_i><e_i| is appended as the final outcome.
struct MeasurementBasis {
    std::string name;
    std::vector<std::string> outcome_names;
    std::vector<std::vector<cdouble>> elements;
    bool has_complement = false;
    std::string complement_name = "complement";

    int target_count() const;
    const std::string& outcome_name(int index) const;
    // Throws basis_error unless the elements are pairwise orthonormal.
    void validate() const;
};

struct MeasurementOutcome {
    int index = 0;
    std::string name;
    double probability = 0.0;
    // Post-measurement state on all qubits, renormalized. Null when the
    // outcome probability is below kZeroProb (never renormalized by ~0).
    std::optional<StateVector> post;
};

// Projective measurement with full branch expansion; probabilities sum to 1.
std::vector<MeasurementOutcome> measure(const StateVector& state,
                                        const std::vector<std::string>& targets,
                                        const MeasurementBasis& basis);

// Partial inner product <element| state over `targets`: the branch probability
// together with the renormalized state of the remaining qubits (targets
// dropped, other labels keep their relative order). Remainder is null when the
// probability is below kZeroProb.
struct Projection {
    double probability = 0.0;
    std::optional<StateVector> remainder;
};
Projection project(const StateVector& state, const std::vector<std::string>& targets,
                   const std::vector<cdouble>& element);

// Generalized (Kraus) measurement on one qubit: outcome i has probability
// ||K_i psi||^2 and post-state K_i psi / sqrt(p). The operators must satisfy
// Σ K_i† K_i = I within kNormTol.
std::vector<MeasurementOutcome> measure_kraus(const StateVector& state, const std::string& target,
                                              const std::vector<Mat2>& operators,
                                              const std::vector<std::string>& names);

// Density matrix over labeled qubits; rows/cols indexed in the same bit order
// as StateVector with labels()[0] most significant.
class DensityMatrix {
public:
    DensityMatrix(std::vector<std::string> labels, Eigen::MatrixXcd matrix);

    int num_qubits() const { return static_cast<int>(labels_.size()); }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }

    // Hermitian within kNormTol, trace 1 within kNormTol, min eigenvalue >= -1e-10.
    void validate() const;

private:
    std::vector<std::string> labels_;
    Eigen::MatrixXcd matrix_;
};

DensityMatrix partial_trace(const StateVector& state, const std::vector<std::string>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

// |<target|state>|^2; label sets must match (states are reordered internally).
double fidelity(const StateVector& state, const StateVector& target);

// Schmidt coefficients (descending, >= 0) across the bipartition
// (left_labels : remaining labels). Squared coefficients sum to 1.
std::vector<double> schmidt(const StateVector& state, const std::vector<std::string>& left_labels);

// -Σ λ_i^2 log2 λ_i^2 in ebits; terms with λ^2 < 1e-15 contribute 0.
double entanglement_entropy(const std::vector<double>& schmidt_coefficients);

// Negativity N(ρ) = (||ρ^{T_B}||_1 - 1)/2 for a two-qubit state, partial
// transpose taken on the second label. Zero (within tolerance) iff PPT.
double negativity(const DensityMatrix& rho);

} // namespace catsim
