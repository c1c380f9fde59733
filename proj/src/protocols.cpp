#include "catsim/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace catsim {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
constexpr double kVectorMatchTol = 1e-10;

std::string claire_id(int i) { return "Claire" + std::to_string(i); }
std::string bob_id(int j) { return "Bob" + std::to_string(j); }
std::string bob_label(int j) { return "B" + std::to_string(j); }

bool vectors_match(const QubitVector& u, const QubitVector& v) {
    return std::abs(u.c0() - v.c0()) <= kVectorMatchTol && std::abs(u.c1() - v.c1()) <= kVectorMatchTol;
}

SchmidtFrame frame_or_config_error(const QubitVector& zero, const QubitVector& one, const char* what) {
    try {
        return SchmidtFrame(zero, one);
    } catch (const domain_error&) {
        throw configuration_error(std::string(what) + " must be an orthonormal pair");
    }
}

std::vector<std::string> input_labels(int n) {
    std::vector<std::string> labels;
    for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    return labels;
}

std::vector<std::string> bob_ids(int n) {
    std::vector<std::string> ids;
    for (int j = 1; j <= n; ++j) ids.push_back(bob_id(j));
    return ids;
}

} // namespace

const char* channel_family_name(ChannelFamily f) {
    switch (f) {
        case ChannelFamily::GHZ: return "ghz";
        case ChannelFamily::GhzClass: return "ghz-class";
        case ChannelFamily::Cat: return "cat";
    }
    return "?";
}

ChannelSpec ChannelSpec::ghz() {
    ChannelSpec c;
    c.family = ChannelFamily::GHZ;
    c.n_bobs = 2;
    c.weight_a = c.weight_b = kInvSqrt2;
    c.phi = {QubitVector::zero()};
    c.phi_prime = {QubitVector::one()};
    return c;
}

ChannelSpec ChannelSpec::ghz_class(const QubitVector& phi, const QubitVector& phi_prime) {
    ChannelSpec c;
    c.family = ChannelFamily::GhzClass;
    c.n_bobs = 2;
    c.weight_a = c.weight_b = kInvSqrt2;
    c.phi = {phi};
    c.phi_prime = {phi_prime};
    return c;
}

ChannelSpec ChannelSpec::cat(const std::vector<QubitVector>& phi, const std::vector<QubitVector>& phi_prime) {
    ChannelSpec c;
    c.family = ChannelFamily::Cat;
    c.n_bobs = static_cast<int>(phi.size()) + 1;
    c.weight_a = c.weight_b = kInvSqrt2;
    c.phi = phi;
    c.phi_prime = phi_prime;
    return c;
}

ChannelSpec ChannelSpec::with_weights(cdouble a, cdouble b) const {
    ChannelSpec c = *this;
    c.weight_a = a;
    c.weight_b = b;
    return c;
}

bool ChannelSpec::balanced() const {
    return std::abs(weight_a * std::conj(weight_b) - cdouble(0.5, 0.0)) <= kNormTol;
}

std::vector<OverlapFrame> ChannelSpec::frames() const {
    std::vector<OverlapFrame> out;
    out.reserve(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) out.push_back(overlap_frame(phi[i], phi_prime[i]));
    return out;
}

std::vector<std::string> ChannelSpec::bob_labels() const {
    std::vector<std::string> labels;
    for (int j = 1; j <= n_bobs; ++j) labels.push_back(bob_label(j));
    return labels;
}

StateVector ChannelSpec::state() const {
    validate();
    std::vector<std::string> labels{"A"};
    for (const auto& l : bob_labels()) labels.push_back(l);
    std::vector<QubitVector> zero{QubitVector::zero()};
    std::vector<QubitVector> one{QubitVector::one()};
    for (const auto& v : phi) zero.push_back(v);
    for (const auto& v : phi_prime) one.push_back(v);
    zero.push_back(QubitVector::zero());
    one.push_back(QubitVector::one());
    return product_superposition(weight_a, zero, weight_b, one, std::move(labels));
}

void ChannelSpec::validate() const {
    if (std::abs(std::norm(weight_a) + std::norm(weight_b) - 1.0) > kNormTol)
        throw configuration_error("channel weights must satisfy |a|^2 + |b|^2 = 1");
    const int pairs = static_cast<int>(phi.size());
    if (static_cast<int>(phi_prime.size()) != pairs)
        throw configuration_error("phi and phi' lists must have equal length");
    if (pairs != n_bobs - 1)
        throw configuration_error("channel needs exactly N-1 phi pairs");
    switch (family) {
        case ChannelFamily::GHZ:
        case ChannelFamily::GhzClass:
            if (n_bobs != 2) throw configuration_error("GHZ/GHZ-class channels have exactly two Bobs");
            break;
        case ChannelFamily::Cat:
            if (n_bobs < 2 || n_bobs > 8)
                throw configuration_error("cat channels support 2 <= N <= 8 Bobs");
            break;
    }
    if (family == ChannelFamily::GHZ) {
        if (!vectors_match(phi[0], QubitVector::zero()) || !vectors_match(phi_prime[0], QubitVector::one()))
            throw configuration_error("GHZ channel requires phi = |0>, phi' = |1>");
    }
}

TeleportInput TeleportInput::ghz_input(cdouble alpha, cdouble beta, const SchmidtFrame& first,
                                       const SchmidtFrame& second) {
    TeleportInput in;
    in.alpha = alpha;
    in.beta = beta;
    in.zero_factors = {first.zero, second.zero};
    in.one_factors = {first.one, second.one};
    in.validate();
    return in;
}

TeleportInput TeleportInput::class_input(cdouble alpha, cdouble beta, const ChannelSpec& channel,
                                         const SchmidtFrame& last) {
    TeleportInput in;
    in.alpha = alpha;
    in.beta = beta;
    in.zero_factors = channel.phi;
    in.one_factors = channel.phi_prime;
    in.zero_factors.push_back(last.zero);
    in.one_factors.push_back(last.one);
    in.validate();
    return in;
}

StateVector TeleportInput::state(const std::vector<std::string>& labels) const {
    return product_superposition(alpha, zero_factors, beta, one_factors, labels);
}

void TeleportInput::validate() const {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kNormTol)
        throw configuration_error("input amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
    if (zero_factors.size() != one_factors.size() || zero_factors.empty())
        throw configuration_error("input product vectors must have equal, nonzero length");
}

std::pair<StateVector, std::vector<Party>> build_initial_state(const TeleportInput& input,
                                                               const ChannelSpec& channel) {
    channel.validate();
    input.validate();
    const int n = channel.n_bobs;
    if (input.n_qubits() != n)
        throw configuration_error("input qubit count must match the channel's N");

    StateVector joint = tensor(input.state(input_labels(n)), channel.state());

    std::vector<Party> parties;
    if (channel.family == ChannelFamily::GHZ) {
        // The source delivers both input qubits to Alice.
        parties.push_back({"Alice", Role::Alice, {"1", "2", "A"}});
    } else {
        for (int i = 1; i <= n - 1; ++i) parties.push_back({claire_id(i), Role::Claire, {std::to_string(i)}});
        parties.push_back({"Alice", Role::Alice, {std::to_string(n), "A"}});
    }
    for (int j = 1; j <= n; ++j) parties.push_back({bob_id(j), Role::Bob, {bob_label(j)}});
    check_ownership_partition(parties, joint.labels());
    return {std::move(joint), std::move(parties)};
}

namespace {

void require_deterministic_channel(const ChannelSpec& channel) {
    if (!channel.balanced())
        throw configuration_error("deterministic protocol requires the balanced channel weights "
                                  "a = b = 1/sqrt(2); use the probabilistic protocol instead");
}

void require_input_in_teleportable_set(const TeleportInput& input, const ChannelSpec& channel) {
    const int n = channel.n_bobs;
    for (int i = 0; i < n - 1; ++i) {
        if (!vectors_match(input.zero_factors[static_cast<std::size_t>(i)], channel.phi[static_cast<std::size_t>(i)]) ||
            !vectors_match(input.one_factors[static_cast<std::size_t>(i)], channel.phi_prime[static_cast<std::size_t>(i)])) {
            std::ostringstream os;
            os << "input qubit " << (i + 1) << " is outside the teleportable set: its product vectors "
               << "must equal the channel's phi/phi' pair";
            throw configuration_error(os.str());
        }
    }
}

struct ClassScriptParts {
    std::vector<OverlapFrame> frames;
    SchmidtFrame last_frame;
    double eps_total = 0.0;
};

ClassScriptParts class_parts(const TeleportInput& input, const ChannelSpec& channel) {
    require_input_in_teleportable_set(input, channel);
    const int n = channel.n_bobs;
    ClassScriptParts parts{channel.frames(),
                           frame_or_config_error(input.zero_factors[static_cast<std::size_t>(n - 1)],
                                                 input.one_factors[static_cast<std::size_t>(n - 1)],
                                                 "the input's last product-vector pair {|0'>, |1'>}"),
                           0.0};
    for (const auto& f : parts.frames) parts.eps_total += f.epsilon;
    return parts;
}

void append_ghz_body(ProtocolScript& sc, const TeleportInput& input) {
    const SchmidtFrame f1 = frame_or_config_error(input.zero_factors[0], input.one_factors[0],
                                                  "the input's first Schmidt pair {|0'>, |1'>}");
    const SchmidtFrame f2 = frame_or_config_error(input.zero_factors[1], input.one_factors[1],
                                                  "the input's second Schmidt pair {|0''>, |1''>}");
    const std::vector<std::string> bobs = bob_ids(2);

    sc.steps.push_back(StepGate{"Alice", "1", "U1^-1", frame_embedding(f1).adjoint()});
    sc.steps.push_back(StepGate{"Alice", "2", "U2^-1", frame_embedding(f2).adjoint()});
    sc.steps.push_back(StepMeasure{"Alice", {"1", "2", "A"}, ghz_basis(), "ghz"});
    sc.steps.push_back(StepMessage{"Alice", bobs, "ghz"});
    for (int j = 1; j <= 2; ++j) {
        const std::size_t slot = static_cast<std::size_t>(j - 1);
        sc.steps.push_back(StepCorrection{
            bob_id(j), bob_label(j), {"ghz"}, [slot](const OutcomeMap& m) {
                const CorrectionAction act = ghz_correction(m.at("ghz") + 1);
                return std::make_pair(act.bob_gates[slot], act.gate_names[slot]);
            }});
    }
    sc.steps.push_back(StepGate{bob_id(1), bob_label(1), "U1", frame_embedding(f1)});
    sc.steps.push_back(StepGate{bob_id(2), bob_label(2), "U2", frame_embedding(f2)});
}

// Shared body of the GHZ-class and cat protocols: gauge, Bell measurement on
// (N, A), Claire measurements, product-unitary corrections, local restoration.
// extra_phase is the filtering phase correction folded into Alice's gauge.
void append_class_body(ProtocolScript& sc, const ChannelSpec& channel, const ClassScriptParts& parts,
                       MeasureOrdering ordering, double extra_phase) {
    const int n = channel.n_bobs;
    const std::string qubit_n = std::to_string(n);
    const std::vector<std::string> bobs = bob_ids(n);

    sc.steps.push_back(StepGate{"Alice", qubit_n, "U'", gauge_to_computational(parts.last_frame, parts.eps_total)});
    sc.steps.push_back(StepGate{"Alice", "A", "phase(A)", alice_phase(parts.eps_total + extra_phase)});

    std::vector<Step> alice_block;
    alice_block.push_back(StepMeasure{"Alice", {qubit_n, "A"}, bell_basis(), "bell"});
    alice_block.push_back(StepMessage{"Alice", bobs, "bell"});

    std::vector<Step> claire_block;
    std::vector<std::string> claire_names;
    for (int i = 1; i <= n - 1; ++i) {
        const std::string name = "claire" + std::to_string(i);
        claire_names.push_back(name);
        claire_block.push_back(StepMeasure{claire_id(i), {std::to_string(i)},
                                           claire_basis(parts.frames[static_cast<std::size_t>(i - 1)], "{a,a_bar}"),
                                           name});
        claire_block.push_back(StepMessage{claire_id(i), bobs, name});
    }

    auto append = [&sc](std::vector<Step>& block) {
        for (auto& s : block) sc.steps.push_back(std::move(s));
    };
    if (ordering == MeasureOrdering::AliceFirst) {
        append(alice_block);
        append(claire_block);
    } else {
        append(claire_block);
        append(alice_block);
    }

    std::vector<std::string> deps{"bell"};
    for (const auto& cn : claire_names) deps.push_back(cn);
    const std::vector<OverlapFrame> frames = parts.frames;
    for (int j = 1; j <= n; ++j) {
        const std::size_t slot = static_cast<std::size_t>(j - 1);
        sc.steps.push_back(StepCorrection{
            bob_id(j), bob_label(j), deps, [frames, claire_names, slot](const OutcomeMap& m) {
                const auto bell = static_cast<BellOutcome>(m.at("bell"));
                std::vector<ClaireOutcome> claire;
                for (const auto& cn : claire_names)
                    claire.push_back(static_cast<ClaireOutcome>(m.at(cn)));
                const CorrectionAction act = cat_correction(bell, claire, frames);
                return std::make_pair(act.bob_gates[slot], act.gate_names[slot]);
            }});
    }
    sc.steps.push_back(StepGate{bob_id(n), bob_label(n), "(U')^-1", inverse_gauge(parts.last_frame, parts.eps_total)});
}

ProtocolScript script_skeleton(const TeleportInput& input, const ChannelSpec& channel, const std::string& name) {
    auto [initial, parties] = build_initial_state(input, channel);
    ProtocolScript sc{name, std::move(parties), std::move(initial), {}, channel.bob_labels(), std::nullopt};
    sc.target = input.state(sc.bob_labels);
    return sc;
}

} // namespace

ProtocolScript make_ghz_script(const TeleportInput& input, const ChannelSpec& channel) {
    if (channel.family != ChannelFamily::GHZ)
        throw configuration_error("the GHZ protocol requires the GHZ channel family");
    require_deterministic_channel(channel);
    ProtocolScript sc = script_skeleton(input, channel, "ghz");
    append_ghz_body(sc, input);
    return sc;
}

ProtocolScript make_ghz_class_script(const TeleportInput& input, const ChannelSpec& channel,
                                     MeasureOrdering ordering) {
    if (channel.family != ChannelFamily::GhzClass)
        throw configuration_error("the GHZ-class protocol requires the ghz-class channel family");
    require_deterministic_channel(channel);
    const ClassScriptParts parts = class_parts(input, channel);
    ProtocolScript sc = script_skeleton(input, channel, "ghz-class");
    append_class_body(sc, channel, parts, ordering, 0.0);
    return sc;
}

ProtocolScript make_cat_script(const TeleportInput& input, const ChannelSpec& channel,
                               MeasureOrdering ordering) {
    if (channel.family != ChannelFamily::Cat)
        throw configuration_error("the cat protocol requires the cat channel family");
    require_deterministic_channel(channel);
    const ClassScriptParts parts = class_parts(input, channel);
    ProtocolScript sc = script_skeleton(input, channel, "cat");
    append_class_body(sc, channel, parts, ordering, 0.0);
    return sc;
}

ProtocolScript make_probabilistic_script(const TeleportInput& input, const ChannelSpec& channel,
                                         MeasureOrdering ordering) {
    const FilterMeasurement filter = filter_measurement(channel.weight_a, channel.weight_b);
    const double delta = std::arg(channel.weight_b) - std::arg(channel.weight_a);

    ProtocolScript sc = script_skeleton(input, channel, std::string("probabilistic-") + channel_family_name(channel.family));
    sc.steps.push_back(StepFilter{"Alice", "A", "filter", filter});
    sc.steps.push_back(StepMessage{"Alice", bob_ids(channel.n_bobs), "filter"});

    if (channel.family == ChannelFamily::GHZ) {
        // The GHZ protocol has no gauge step, so the residual filter phase gets
        // its own gate on A.
        sc.steps.push_back(StepGate{"Alice", "A", "phase(A)", alice_phase(delta)});
        append_ghz_body(sc, input);
    } else {
        const ClassScriptParts parts = class_parts(input, channel);
        append_class_body(sc, channel, parts, ordering, delta);
    }
    return sc;
}

std::vector<Branch> ghz_protocol(const TeleportInput& input, const ChannelSpec& channel) {
    return run_protocol(make_ghz_script(input, channel), EnumerateMode{});
}

std::vector<Branch> ghz_class_protocol(const TeleportInput& input, const ChannelSpec& channel) {
    return run_protocol(make_ghz_class_script(input, channel), EnumerateMode{});
}

std::vector<Branch> cat_protocol(const TeleportInput& input, const ChannelSpec& channel) {
    return run_protocol(make_cat_script(input, channel), EnumerateMode{});
}

std::vector<Branch> probabilistic_protocol(const TeleportInput& input, const ChannelSpec& channel) {
    return run_protocol(make_probabilistic_script(input, channel), EnumerateMode{});
}

OrderInvarianceReport order_permutation_check(const TeleportInput& input, const ChannelSpec& channel) {
    std::vector<Branch> alice_first, claires_first;
    if (channel.family == ChannelFamily::GhzClass) {
        alice_first = run_protocol(make_ghz_class_script(input, channel, MeasureOrdering::AliceFirst), EnumerateMode{});
        claires_first = run_protocol(make_ghz_class_script(input, channel, MeasureOrdering::ClairesFirst), EnumerateMode{});
    } else if (channel.family == ChannelFamily::Cat) {
        alice_first = run_protocol(make_cat_script(input, channel, MeasureOrdering::AliceFirst), EnumerateMode{});
        claires_first = run_protocol(make_cat_script(input, channel, MeasureOrdering::ClairesFirst), EnumerateMode{});
    } else {
        throw configuration_error("measurement-order check applies to the ghz-class and cat protocols");
    }
    return compare_enumerations(alice_first, claires_first);
}

} // namespace catsim
