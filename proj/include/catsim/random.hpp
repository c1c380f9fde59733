#pragma once

#include "catsim/protocol_math.hpp"
#include "catsim/qstate.hpp"

#include <cmath>
#include <random>

namespace catsim {

// Seeded draw helpers for property tests and verification sweeps. All
// randomness in the project flows through explicitly seeded engines.
using Rng = std::mt19937_64;

inline cdouble random_complex(Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    return {g(rng), g(rng)};
}

inline QubitVector random_qubit(Rng& rng) {
    cdouble c0 = random_complex(rng), c1 = random_complex(rng);
    const double n = std::sqrt(std::norm(c0) + std::norm(c1));
    return {c0 / n, c1 / n};
}

// (alpha, beta) with |alpha|^2 + |beta|^2 = 1 and both nonzero in general.
inline std::pair<cdouble, cdouble> random_amplitudes(Rng& rng) {
    cdouble a = random_complex(rng), b = random_complex(rng);
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
}

inline SchmidtFrame random_schmidt_frame(Rng& rng) {
    const QubitVector zero = random_qubit(rng);
    // Orthogonal partner, randomly phased.
    const cdouble ph = std::polar(1.0, std::uniform_real_distribution<double>(0.0, 2.0 * M_PI)(rng));
    return {zero, QubitVector(ph * -std::conj(zero.c1()), ph * std::conj(zero.c0()))};
}

inline SingleQubitGate random_unitary(Rng& rng) {
    const SchmidtFrame f = random_schmidt_frame(rng);
    return SingleQubitGate::from_columns(f.zero, f.one);
}

inline StateVector random_state(Rng& rng, std::vector<std::string> labels) {
    std::vector<cdouble> amps(std::size_t{1} << labels.size());
    double norm2 = 0.0;
    for (auto& c : amps) {
        c = random_complex(rng);
        norm2 += std::norm(c);
    }
    const double n = std::sqrt(norm2);
    for (auto& c : amps) c /= n;
    return StateVector(std::move(labels), std::move(amps));
}

// phi' with |<phi|phi'>| = r and a uniformly random overlap phase.
inline QubitVector random_partner_with_overlap(Rng& rng, const QubitVector& phi, double r) {
    const QubitVector perp(-std::conj(phi.c1()), std::conj(phi.c0()));
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    const cdouble eps_ph = std::polar(1.0, angle(rng));
    const cdouble perp_ph = std::polar(1.0, angle(rng));
    const double s = std::sqrt(std::max(0.0, 1.0 - r * r));
    return {eps_ph * (r * phi.c0() + s * perp_ph * perp.c0()),
            eps_ph * (r * phi.c1() + s * perp_ph * perp.c1())};
}

// Random non-orthogonal pair with overlap magnitude drawn uniformly from [0, 1].
inline std::pair<QubitVector, QubitVector> random_overlap_pair(Rng& rng) {
    const QubitVector phi = random_qubit(rng);
    const double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return {phi, random_partner_with_overlap(rng, phi, r)};
}

} // namespace catsim
