#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catsim/locc.hpp"
#include "catsim/protocols.hpp"
#include "catsim/random.hpp"
#include "catsim/report.hpp"
#include "oracle.hpp"

#include <cmath>
#include <map>

using namespace catsim;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

struct Draw {
    TeleportInput input;
    ChannelSpec channel;
};

Draw random_class_draw(Rng& rng) {
    auto [phi, phi_prime] = random_overlap_pair(rng);
    const ChannelSpec channel = ChannelSpec::ghz_class(phi, phi_prime);
    auto [alpha, beta] = random_amplitudes(rng);
    return {TeleportInput::class_input(alpha, beta, channel, random_schmidt_frame(rng)), channel};
}

} // namespace

TEST_CASE("build_initial_state matches a direct Kronecker construction") {
    Rng rng(211);
    auto [alpha, beta] = random_amplitudes(rng);
    const SchmidtFrame f1 = random_schmidt_frame(rng);
    const SchmidtFrame f2 = random_schmidt_frame(rng);
    const TeleportInput input = TeleportInput::ghz_input(alpha, beta, f1, f2);
    auto [state, parties] = build_initial_state(input, ChannelSpec::ghz());

    CHECK(state.num_qubits() == 5);
    CHECK(state.labels() == std::vector<std::string>{"1", "2", "A", "B1", "B2"});

    const oracle::cvec chi =
        oracle::add(oracle::kron({f1.zero.c0(), f1.zero.c1()}, {f2.zero.c0(), f2.zero.c1()}),
                    oracle::kron({f1.one.c0(), f1.one.c1()}, {f2.one.c0(), f2.one.c1()}), alpha, beta);
    const oracle::cvec ghz = oracle::add(oracle::kron(oracle::kron({1, 0}, {1, 0}), {1, 0}),
                                         oracle::kron(oracle::kron({0, 1}, {0, 1}), {0, 1}),
                                         kInvSqrt2, kInvSqrt2);
    const oracle::cvec want = oracle::kron(chi, ghz);
    for (std::size_t i = 0; i < want.size(); ++i)
        CHECK(std::abs(state.amplitude(i) - want[i]) <= 1e-14);

    // GHZ family: the source hands both input qubits to Alice.
    const auto alice = std::find_if(parties.begin(), parties.end(),
                                    [](const Party& p) { return p.id == "Alice"; });
    REQUIRE(alice != parties.end());
    CHECK(alice->qubits == std::vector<std::string>{"1", "2", "A"});
}

TEST_CASE("build_initial_state: trivial input is a product with the channel") {
    const TeleportInput input =
        TeleportInput::ghz_input(1.0, 0.0, SchmidtFrame::computational(), SchmidtFrame::computational());
    auto [state, parties] = build_initial_state(input, ChannelSpec::ghz());
    // |00> ⊗ |GHZ>: amplitudes at indices 0 and 7 of the channel block.
    CHECK(std::abs(state.amplitude(0) - kInvSqrt2) <= 1e-14);
    CHECK(std::abs(state.amplitude(7) - kInvSqrt2) <= 1e-14);
    double rest = 0.0;
    for (std::size_t i = 1; i < 7; ++i) rest += std::norm(state.amplitude(i));
    CHECK(rest <= 1e-28);
}

TEST_CASE("build_initial_state: N = 3 computational cat channel") {
    const std::vector<QubitVector> zeros{QubitVector::zero(), QubitVector::zero()};
    const ChannelSpec channel = ChannelSpec::cat(zeros, zeros);
    const StateVector chan = channel.state();
    // (|0 00 0> + |1 00 1>)/sqrt(2) on (A,B1,B2,B3): indices 0 and 1001b = 9.
    CHECK(std::abs(chan.amplitude(0) - kInvSqrt2) <= 1e-14);
    CHECK(std::abs(chan.amplitude(9) - kInvSqrt2) <= 1e-14);

    Rng rng(223);
    auto [alpha, beta] = random_amplitudes(rng);
    const TeleportInput input = TeleportInput::class_input(alpha, beta, channel, SchmidtFrame::computational());
    auto [state, parties] = build_initial_state(input, channel);
    CHECK(state.num_qubits() == 7);
    CHECK(parties.size() == 2 + 1 + 3); // Claire1, Claire2, Alice, Bob1..Bob3
    check_ownership_partition(parties, state.labels());
}

TEST_CASE("build_initial_state rejects dimension mismatches") {
    Rng rng(227);
    auto [alpha, beta] = random_amplitudes(rng);
    const std::vector<QubitVector> zeros{QubitVector::zero(), QubitVector::zero()};
    const ChannelSpec cat3 = ChannelSpec::cat(zeros, zeros);
    const TeleportInput two_qubit_input =
        TeleportInput::ghz_input(alpha, beta, SchmidtFrame::computational(), SchmidtFrame::computational());
    CHECK_THROWS_AS(build_initial_state(two_qubit_input, cat3), configuration_error);
}

TEST_CASE("ownership must partition the label set") {
    std::vector<Party> parties{{"Alice", Role::Alice, {"1", "2"}}, {"Bob1", Role::Bob, {"2"}}};
    CHECK_THROWS_AS(check_ownership_partition(parties, {"1", "2"}), configuration_error);
    std::vector<Party> missing{{"Alice", Role::Alice, {"1"}}};
    CHECK_THROWS_AS(check_ownership_partition(missing, {"1", "2"}), configuration_error);
}

TEST_CASE("enumerate expands the ghz-class protocol into 8 branches") {
    Rng rng(229);
    const Draw d = random_class_draw(rng);
    const auto branches = run_protocol(make_ghz_class_script(d.input, d.channel), EnumerateMode{});
    CHECK(branches.size() == 8);
    double sum = 0.0;
    for (const auto& b : branches) sum += b.probability;
    CHECK(std::abs(sum - 1.0) <= 1e-12);
}

TEST_CASE("sampling is reproducible for a fixed seed") {
    Rng rng(233);
    const Draw d = random_class_draw(rng);
    const ProtocolScript script = make_ghz_class_script(d.input, d.channel);
    const auto a = run_protocol(script, SampleMode{12345});
    const auto b = run_protocol(script, SampleMode{12345});
    REQUIRE(a.size() == 1);
    REQUIRE(b.size() == 1);
    CHECK(a.front().outcomes == b.front().outcomes);
    CHECK(a.front().probability == b.front().probability);
    const auto la = transcript_lines(a.front().transcript);
    const auto lb = transcript_lines(b.front().transcript);
    CHECK(la == lb);
}

TEST_CASE("sampled frequencies match enumerated probabilities") {
    Rng rng(239);
    const Draw d = random_class_draw(rng);
    const ProtocolScript script = make_ghz_class_script(d.input, d.channel);
    const auto branches = run_protocol(script, EnumerateMode{});

    std::map<std::string, double> expected;
    for (const auto& b : branches) {
        std::string key;
        for (const auto& [k, v] : b.outcomes) key += k + "=" + std::to_string(v) + ";";
        expected[key] = b.probability;
    }
    const int samples = 100000;
    std::map<std::string, int> counts;
    for (int s = 0; s < samples; ++s) {
        const auto run = run_protocol(script, SampleMode{static_cast<std::uint64_t>(s)});
        std::string key;
        for (const auto& [k, v] : run.front().outcomes) key += k + "=" + std::to_string(v) + ";";
        counts[key] += 1;
    }
    for (const auto& [key, p] : expected) {
        const double freq = counts[key] / static_cast<double>(samples);
        const double sigma = std::sqrt(std::max(p * (1.0 - p) / samples, 1e-12));
        CHECK(std::abs(freq - p) <= 3.0 * sigma);
    }
}

TEST_CASE("locality validation accepts protocol transcripts and flags faults") {
    Rng rng(241);
    const Draw d = random_class_draw(rng);
    const ProtocolScript script = make_ghz_class_script(d.input, d.channel);
    const auto branches = run_protocol(script, EnumerateMode{});
    for (const auto& b : branches)
        CHECK(validate_locality(script.parties, b.transcript).empty());

    // Injected two-qubit gate across B1, B2.
    Transcript bad = branches.front().transcript;
    bad.events.push_back(GateEvent{"Bob1", {"B1", "B2"}, "joint-gate", {}});
    const auto violations = validate_locality(script.parties, bad);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().description.find("B2") != std::string::npos);

    // Correction moved before Alice's message.
    Transcript premature = branches.front().transcript;
    for (std::size_t i = 0; i < premature.events.size(); ++i) {
        const auto* g = std::get_if<GateEvent>(&premature.events[i]);
        if (g && !g->depends_on.empty()) {
            auto ev = premature.events[i];
            premature.events.erase(premature.events.begin() + static_cast<std::ptrdiff_t>(i));
            premature.events.insert(premature.events.begin(), ev);
            break;
        }
    }
    CHECK_FALSE(validate_locality(script.parties, premature).empty());
}

TEST_CASE("order permutation: the (phi+, a) conditional state") {
    // After both measurements (no corrections yet) the Bobs hold
    // alpha |phi 0> + beta |phi'' 1> under either measurement ordering.
    Rng rng(251);
    auto [alpha, beta] = random_amplitudes(rng);
    auto [phi, phi_prime] = random_overlap_pair(rng);
    const OverlapFrame f = overlap_frame(phi, phi_prime);
    const ChannelSpec channel = ChannelSpec::ghz_class(phi, phi_prime);
    const TeleportInput input = TeleportInput::class_input(alpha, beta, channel, random_schmidt_frame(rng));

    const StateVector want = product_superposition(alpha, {f.phi, QubitVector::zero()},
                                                   beta, {f.phi_second, QubitVector::one()}, {"B1", "B2"});

    for (const MeasureOrdering ordering : {MeasureOrdering::AliceFirst, MeasureOrdering::ClairesFirst}) {
        ProtocolScript script = make_ghz_class_script(input, channel, ordering);
        // Truncate after the measurement/message steps: drop corrections and restoration.
        while (!script.steps.empty() &&
               (std::holds_alternative<StepCorrection>(script.steps.back()) ||
                std::holds_alternative<StepGate>(script.steps.back())))
            script.steps.pop_back();
        script.target.reset();
        const auto branches = run_protocol(script, EnumerateMode{});
        const auto leaf = std::find_if(branches.begin(), branches.end(), [](const Branch& b) {
            return b.outcomes.at("bell") == 0 && b.outcomes.at("claire1") == 0;
        });
        REQUIRE(leaf != branches.end());
        REQUIRE(leaf->state.has_value());
        CHECK(fidelity(*leaf->state, want) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("order permutation: r = 0 computational structure and random draws") {
    Rng rng(257);
    {
        const ChannelSpec channel = ChannelSpec::ghz_class(QubitVector::zero(), QubitVector::one());
        auto [alpha, beta] = random_amplitudes(rng);
        const TeleportInput input =
            TeleportInput::class_input(alpha, beta, channel, SchmidtFrame::computational());
        const auto rep = order_permutation_check(input, channel);
        CHECK(rep.passed());
        const auto branches = ghz_class_protocol(input, channel);
        for (const auto& b : branches) CHECK(std::abs(b.probability - 0.125) <= 1e-12);
    }
    for (int trial = 0; trial < 20; ++trial) {
        const Draw d = random_class_draw(rng);
        const auto rep = order_permutation_check(d.input, d.channel);
        CHECK(rep.max_probability_defect < 1e-12);
        CHECK(rep.min_conditional_fidelity >= 1.0 - 1e-10);
        CHECK(rep.mismatches.empty());
    }
}

TEST_CASE("the engine aborts on a nonlocal script step") {
    Rng rng(269);
    const Draw d = random_class_draw(rng);
    ProtocolScript script = make_ghz_class_script(d.input, d.channel);
    // Alice reaching over to Bob1's qubit is not a local operation.
    script.steps.insert(script.steps.begin(),
                        StepGate{"Alice", "B1", "sigma_x", SingleQubitGate::sigma_x()});
    CHECK_THROWS_AS(run_protocol(script, EnumerateMode{}), locality_error);
}

TEST_CASE("order check rejects the single-measurement GHZ protocol") {
    Rng rng(263);
    auto [alpha, beta] = random_amplitudes(rng);
    const TeleportInput input =
        TeleportInput::ghz_input(alpha, beta, SchmidtFrame::computational(), SchmidtFrame::computational());
    CHECK_THROWS_AS(order_permutation_check(input, ChannelSpec::ghz()), configuration_error);
}
