#include "catsim/protocol_math.hpp"

#include <cmath>
#include <sstream>

namespace catsim {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Re-phase a unit 2-vector so its first component of non-negligible magnitude
// is real positive.
std::pair<cdouble, cdouble> phase_normalized(cdouble c0, cdouble c1) {
    const cdouble lead = (std::abs(c0) > 1e-9) ? c0 : c1;
    const cdouble ph = std::polar(1.0, -std::arg(lead));
    return {ph * c0, ph * c1};
}

} // namespace

SchmidtFrame::SchmidtFrame(const QubitVector& z, const QubitVector& o) : zero(z), one(o) {
    if (std::abs(inner(zero, one)) > kNormTol)
        throw domain_error("Schmidt frame vectors must be orthonormal");
}

OverlapFrame overlap_frame(const QubitVector& phi, const QubitVector& phi_prime) {
    const cdouble ip = inner(phi, phi_prime);
    const double r = std::min(std::abs(ip), 1.0);
    const double epsilon = (r < kZeroProb) ? 0.0 : std::arg(ip);

    const cdouble gauge = std::polar(1.0, -epsilon);
    QubitVector phi_second(gauge * phi_prime.c0(), gauge * phi_prime.c1());

    const double theta = std::acos(r);

    // a ∝ phi + phi''; norm is 2 cos(theta/2) >= sqrt(2) since r >= 0.
    cdouble s0 = phi.c0() + phi_second.c0();
    cdouble s1 = phi.c1() + phi_second.c1();
    const double sn = std::sqrt(std::norm(s0) + std::norm(s1));
    QubitVector a(s0 / sn, s1 / sn);

    // a_bar ∝ phi - phi'' after removing the (numerically tiny) a-component;
    // degenerates at r = 1 where any unit vector orthogonal to a works.
    cdouble d0 = phi.c0() - phi_second.c0();
    cdouble d1 = phi.c1() - phi_second.c1();
    const cdouble overlap_with_a = std::conj(a.c0()) * d0 + std::conj(a.c1()) * d1;
    d0 -= overlap_with_a * a.c0();
    d1 -= overlap_with_a * a.c1();
    const double dn = std::sqrt(std::norm(d0) + std::norm(d1));
    QubitVector a_bar = QubitVector::one();
    if (dn >= kDegenerateFrame) {
        a_bar = QubitVector(d0 / dn, d1 / dn);
    } else {
        const auto [b0, b1] = phase_normalized(-std::conj(a.c1()), std::conj(a.c0()));
        a_bar = QubitVector(b0, b1);
    }

    OverlapFrame frame{r, epsilon, theta, a, a_bar, phi, phi_second};
    return frame;
}

MeasurementBasis bell_basis() {
    MeasurementBasis b;
    b.name = "bell";
    b.outcome_names = {"phi+", "phi-", "psi+", "psi-"};
    b.elements = {
        {kInvSqrt2, 0, 0, kInvSqrt2},
        {kInvSqrt2, 0, 0, -kInvSqrt2},
        {0, kInvSqrt2, kInvSqrt2, 0},
        {0, kInvSqrt2, -kInvSqrt2, 0},
    };
    return b;
}

MeasurementBasis ghz_basis() {
    MeasurementBasis b;
    b.name = "ghz";
    b.outcome_names = {"phi+", "phi-", "psi+", "psi-"};
    b.elements = {
        {kInvSqrt2, 0, 0, 0, 0, 0, 0, kInvSqrt2},  // (|000> + |111>)/sqrt(2)
        {kInvSqrt2, 0, 0, 0, 0, 0, 0, -kInvSqrt2},
        {0, kInvSqrt2, 0, 0, 0, 0, kInvSqrt2, 0},  // (|001> + |110>)/sqrt(2)
        {0, kInvSqrt2, 0, 0, 0, 0, -kInvSqrt2, 0},
    };
    b.has_complement = true;
    b.complement_name = "P5";
    return b;
}

MeasurementBasis claire_basis(const OverlapFrame& frame, const std::string& name) {
    MeasurementBasis b;
    b.name = name;
    b.outcome_names = {"a", "a_bar"};
    b.elements = {
        {frame.a.c0(), frame.a.c1()},
        {frame.a_bar.c0(), frame.a_bar.c1()},
    };
    return b;
}

const char* bell_outcome_name(BellOutcome b) {
    switch (b) {
        case BellOutcome::PhiPlus: return "phi+";
        case BellOutcome::PhiMinus: return "phi-";
        case BellOutcome::PsiPlus: return "psi+";
        case BellOutcome::PsiMinus: return "psi-";
    }
    return "?";
}

SingleQubitGate gauge_to_computational(const SchmidtFrame& frame, double epsilon) {
    // Rows: <0'| and e^{-i eps} <1'|.
    const cdouble g = std::polar(1.0, -epsilon);
    return SingleQubitGate({std::conj(frame.zero.c0()), std::conj(frame.zero.c1()),
                            g * std::conj(frame.one.c0()), g * std::conj(frame.one.c1())});
}

SingleQubitGate alice_phase(double epsilon) { return SingleQubitGate::phase_shift(-epsilon); }

std::pair<SingleQubitGate, SingleQubitGate> gauge_unitaries(const OverlapFrame& frame,
                                                            const SchmidtFrame& target_frame) {
    return {gauge_to_computational(target_frame, frame.epsilon), alice_phase(frame.epsilon)};
}

SingleQubitGate swap_unitary(const OverlapFrame& frame) {
    const auto& a = frame.a;
    const auto& b = frame.a_bar;
    Mat2 m;
    m[0] = a.c0() * std::conj(a.c0()) - b.c0() * std::conj(b.c0());
    m[1] = a.c0() * std::conj(a.c1()) - b.c0() * std::conj(b.c1());
    m[2] = a.c1() * std::conj(a.c0()) - b.c1() * std::conj(b.c0());
    m[3] = a.c1() * std::conj(a.c1()) - b.c1() * std::conj(b.c1());
    return SingleQubitGate(m);
}

SingleQubitGate frame_embedding(const SchmidtFrame& frame) {
    return SingleQubitGate::from_columns(frame.zero, frame.one);
}

SingleQubitGate inverse_gauge(const SchmidtFrame& frame, double epsilon) {
    return gauge_to_computational(frame, epsilon).adjoint();
}

CorrectionAction ghz_correction(int outcome) {
    CorrectionAction act;
    switch (outcome) {
        case 1:
            act.bob_gates = {SingleQubitGate::identity(), SingleQubitGate::identity()};
            act.gate_names = {"I", "I"};
            break;
        case 2:
            act.bob_gates = {SingleQubitGate::sigma_z(), SingleQubitGate::identity()};
            act.gate_names = {"sigma_z", "I"};
            break;
        case 3:
            act.bob_gates = {SingleQubitGate::sigma_x(), SingleQubitGate::sigma_x()};
            act.gate_names = {"sigma_x", "sigma_x"};
            break;
        case 4:
            act.bob_gates = {SingleQubitGate::sigma_x(), SingleQubitGate::i_sigma_y()};
            act.gate_names = {"sigma_x", "i*sigma_y"};
            break;
        case 5:
            throw protocol_error("the complement outcome never clicks; no correction exists");
        default: {
            std::ostringstream os;
            os << "GHZ correction outcome must be in 1..5, got " << outcome;
            throw domain_error(os.str());
        }
    }
    return act;
}

CorrectionAction ghz_class_correction(BellOutcome bell, ClaireOutcome claire, const OverlapFrame& frame) {
    return cat_correction(bell, {claire}, {frame});
}

CorrectionAction cat_correction(BellOutcome bell, const std::vector<ClaireOutcome>& claire_outcomes,
                                const std::vector<OverlapFrame>& frames) {
    if (claire_outcomes.size() != frames.size())
        throw domain_error("one overlap frame per Claire outcome required");

    CorrectionAction act;
    const bool psi = is_psi(bell);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (psi) {
            act.bob_gates.push_back(swap_unitary(frames[i]));
            act.gate_names.emplace_back("U''");
        } else {
            act.bob_gates.push_back(SingleQubitGate::identity());
            act.gate_names.emplace_back("I");
        }
    }

    int bar_parity = 0;
    for (ClaireOutcome o : claire_outcomes)
        if (o == ClaireOutcome::ABar) bar_parity ^= 1;

    SingleQubitGate last = SingleQubitGate::identity();
    std::string last_name = "I";
    if (psi) {
        last = SingleQubitGate::sigma_x();
        last_name = "sigma_x";
    }
    if ((sign_bit(bell) ^ bar_parity) != 0) {
        last = SingleQubitGate::sigma_z() * last;
        last_name = (last_name == "I") ? "sigma_z" : "sigma_z*" + last_name;
    }
    act.bob_gates.push_back(last);
    act.gate_names.push_back(last_name);
    return act;
}

FilterMeasurement filter_measurement(cdouble a, cdouble b) {
    const double wa = std::abs(a), wb = std::abs(b);
    if (std::abs(wa * wa + wb * wb - 1.0) > kNormTol)
        throw domain_error("channel weights must satisfy |a|^2 + |b|^2 = 1");
    if (wa * wb < kZeroProb)
        throw configuration_error("degenerate channel (a*b = 0): teleportation impossible");

    const double m = std::min(wa, wb);
    FilterMeasurement f;
    f.success = {m / wa, 0, 0, m / wb};
    // 1 - m^2/w^2 is exactly 0 for the smaller weight.
    const double fa = (m == wa) ? 0.0 : std::sqrt(1.0 - (m * m) / (wa * wa));
    const double fb = (m == wb) ? 0.0 : std::sqrt(1.0 - (m * m) / (wb * wb));
    f.failure = {fa, 0, 0, fb};
    f.predicted_success_probability = 2.0 * m * m;
    return f;
}

} // namespace catsim
