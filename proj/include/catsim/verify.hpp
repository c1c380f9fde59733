#pragma once

#include "catsim/protocols.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace catsim::verify {

// Deliberate faults the verifier must catch (test hooks for `verify --inject-fault`).
enum class FaultKind { None, WrongCorrection, NonlocalGate, PrematureCorrection };

FaultKind fault_kind_from_name(const std::string& name); // throws configuration_error

struct Options {
    std::uint64_t seed = 42;
    int trials = 200;          // GHZ / GHZ-class random draws
    int cat_trials = 50;       // per N for the cat protocol
    int cat_max_parties = 6;   // check N = 2..cat_max_parties
    int order_trials = 100;    // GHZ-class order-invariance draws
    int order_cat_trials = 20; // cat (N = 3) order-invariance draws
    double fidelity_tol = 1e-10;
    double probability_tol = 1e-12;
    FaultKind fault = FaultKind::None;
};

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail; // key numbers and, on failure, the offending outcome tuple
    double min_fidelity = 1.0;
    double max_probability_defect = 0.0;
    double elapsed_seconds = 0.0;
};

// The individual checks; each is self-contained and seeded from opts.seed.
CheckResult check_ghz_protocol(const Options& opts);
CheckResult check_ghz_class_protocol(const Options& opts);
CheckResult check_cat_protocol(const Options& opts);
CheckResult check_order_invariance(const Options& opts);
CheckResult check_probabilistic(const Options& opts);
CheckResult check_channel_negativity(const Options& opts);
CheckResult check_entanglement_range(const Options& opts);
CheckResult check_locality_and_cost(const Options& opts);
CheckResult check_report_determinism(const Options& opts);

std::vector<CheckResult> run_all_checks(const Options& opts);

// Single protocol family by CLI name ("ghz", "ghz-class", "cat", "probabilistic").
CheckResult run_protocol_check(const std::string& protocol, const Options& opts);

} // namespace catsim::verify
