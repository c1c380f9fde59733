#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catsim/protocols.hpp"
#include "catsim/random.hpp"

#include <algorithm>
#include <cmath>

using namespace catsim;

namespace {

struct Draw {
    TeleportInput input;
    ChannelSpec channel;
};

Draw random_class_draw(Rng& rng, double r) {
    const QubitVector phi = random_qubit(rng);
    const QubitVector phi_prime = random_partner_with_overlap(rng, phi, r);
    const ChannelSpec channel = ChannelSpec::ghz_class(phi, phi_prime);
    auto [alpha, beta] = random_amplitudes(rng);
    return {TeleportInput::class_input(alpha, beta, channel, random_schmidt_frame(rng)), channel};
}

Draw random_cat_draw(Rng& rng, int n) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<QubitVector> phis, phips;
    for (int i = 0; i < n - 1; ++i) {
        const QubitVector phi = random_qubit(rng);
        phis.push_back(phi);
        phips.push_back(random_partner_with_overlap(rng, phi, unit(rng)));
    }
    const ChannelSpec channel = ChannelSpec::cat(phis, phips);
    auto [alpha, beta] = random_amplitudes(rng);
    return {TeleportInput::class_input(alpha, beta, channel, random_schmidt_frame(rng)), channel};
}

double reachable_min_fidelity(const std::vector<Branch>& branches) {
    double f = 1.0;
    for (const auto& b : branches)
        if (b.status == BranchStatus::Ok && b.probability >= kZeroProb && b.fidelity)
            f = std::min(f, *b.fidelity);
    return f;
}

} // namespace

TEST_CASE("ghz protocol: trivial input lands in |0'0''>") {
    Rng rng(301);
    const SchmidtFrame f1 = random_schmidt_frame(rng);
    const SchmidtFrame f2 = random_schmidt_frame(rng);
    const TeleportInput input = TeleportInput::ghz_input(1.0, 0.0, f1, f2);
    const auto branches = ghz_protocol(input, ChannelSpec::ghz());
    const StateVector want = StateVector::product({"B1", "B2"}, {f1.zero, f2.zero});
    for (const auto& b : branches) {
        if (b.status != BranchStatus::Ok || b.probability < kZeroProb) continue;
        CHECK(fidelity(*b.state, want) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("ghz protocol: random draws reach |chi> on every reachable branch") {
    Rng rng(307);
    for (int trial = 0; trial < 20; ++trial) {
        auto [alpha, beta] = random_amplitudes(rng);
        const TeleportInput input =
            TeleportInput::ghz_input(alpha, beta, random_schmidt_frame(rng), random_schmidt_frame(rng));
        const auto branches = ghz_protocol(input, ChannelSpec::ghz());
        CHECK(branches.size() == 5);
        CHECK(reachable_min_fidelity(branches) >= 1.0 - 1e-10);
        const auto p5 = std::find_if(branches.begin(), branches.end(), [](const Branch& b) {
            return b.status == BranchStatus::Complement;
        });
        REQUIRE(p5 != branches.end());
        CHECK(p5->probability < 1e-12);
    }
}

TEST_CASE("ghz protocol rejects other channel families") {
    Rng rng(311);
    auto [alpha, beta] = random_amplitudes(rng);
    const TeleportInput input =
        TeleportInput::ghz_input(alpha, beta, SchmidtFrame::computational(), SchmidtFrame::computational());
    const ChannelSpec wrong = ChannelSpec::ghz_class(QubitVector::zero(), QubitVector::plus());
    CHECK_THROWS_AS(ghz_protocol(input, wrong), configuration_error);
}

TEST_CASE("ghz-class protocol: r = 0 computational case behaves like the GHZ protocol") {
    Rng rng(313);
    auto [alpha, beta] = random_amplitudes(rng);
    const ChannelSpec channel = ChannelSpec::ghz_class(QubitVector::zero(), QubitVector::one());
    const TeleportInput input = TeleportInput::class_input(alpha, beta, channel, SchmidtFrame::computational());
    const auto branches = ghz_class_protocol(input, channel);
    CHECK(branches.size() == 8);
    const StateVector want = product_superposition(alpha, {QubitVector::zero(), QubitVector::zero()},
                                                   beta, {QubitVector::one(), QubitVector::one()},
                                                   {"B1", "B2"});
    for (const auto& b : branches) {
        CHECK(std::abs(b.probability - 0.125) <= 1e-12);
        CHECK(fidelity(*b.state, want) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("ghz-class protocol: Claire's conditionals follow (1 +- r)/2") {
    Rng rng(317);
    const Draw d = random_class_draw(rng, 0.5);
    const auto branches = ghz_class_protocol(d.input, d.channel);
    double bell_marginal[4] = {0, 0, 0, 0};
    for (const auto& b : branches) bell_marginal[b.outcomes.at("bell")] += b.probability;
    for (const auto& b : branches) {
        const double conditional = b.probability / bell_marginal[b.outcomes.at("bell")];
        const double want = b.outcomes.at("claire1") == 0 ? 0.75 : 0.25;
        CHECK(std::abs(conditional - want) <= 1e-12);
    }
}

TEST_CASE("ghz-class protocol: random draws reach |chi'>") {
    Rng rng(331);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const Draw d = random_class_draw(rng, unit(rng));
        const auto branches = ghz_class_protocol(d.input, d.channel);
        CHECK(branches.size() == 8);
        CHECK(reachable_min_fidelity(branches) >= 1.0 - 1e-10);
    }
}

TEST_CASE("ghz-class protocol enforces the teleportable set") {
    Rng rng(337);
    const Draw d = random_class_draw(rng, 0.3);
    TeleportInput outside = d.input;
    outside.zero_factors[0] = random_qubit(rng); // no longer the channel's phi
    CHECK_THROWS_AS(ghz_class_protocol(outside, d.channel), configuration_error);

    // Unbalanced weights require the probabilistic protocol.
    const ChannelSpec weighted = d.channel.with_weights(std::sqrt(0.7), std::sqrt(0.3));
    CHECK_THROWS_AS(ghz_class_protocol(d.input, weighted), configuration_error);
}

TEST_CASE("cat protocol: N = 2 equals the ghz-class protocol branch for branch") {
    Rng rng(347);
    const Draw d = random_class_draw(rng, 0.4);
    ChannelSpec as_cat = d.channel;
    as_cat.family = ChannelFamily::Cat;
    const auto class_branches = ghz_class_protocol(d.input, d.channel);
    const auto cat_branches = cat_protocol(d.input, as_cat);
    REQUIRE(class_branches.size() == cat_branches.size());
    for (const auto& cb : cat_branches) {
        const auto match = std::find_if(class_branches.begin(), class_branches.end(), [&](const Branch& b) {
            return b.outcomes == cb.outcomes;
        });
        REQUIRE(match != class_branches.end());
        CHECK(std::abs(cb.probability - match->probability) <= 1e-14);
        if (cb.state && match->state)
            CHECK(fidelity(*cb.state, *match->state) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("cat protocol: N = 3 with orthogonal pairs gives 16 exact branches") {
    Rng rng(349);
    std::vector<QubitVector> phis, phips;
    for (int i = 0; i < 2; ++i) {
        const QubitVector phi = random_qubit(rng);
        phis.push_back(phi);
        phips.push_back(random_partner_with_overlap(rng, phi, 0.0));
    }
    const ChannelSpec channel = ChannelSpec::cat(phis, phips);
    auto [alpha, beta] = random_amplitudes(rng);
    const TeleportInput input = TeleportInput::class_input(alpha, beta, channel, random_schmidt_frame(rng));
    const auto branches = cat_protocol(input, channel);
    CHECK(branches.size() == 16);
    CHECK(reachable_min_fidelity(branches) >= 1.0 - 1e-10);
    for (const auto& b : branches) CHECK(std::abs(b.probability - 1.0 / 16.0) <= 1e-12);
}

TEST_CASE("cat protocol: N = 5 leaf probabilities factor over the Claires") {
    Rng rng(353);
    const Draw d = random_cat_draw(rng, 5);
    const auto branches = cat_protocol(d.input, d.channel);
    CHECK(branches.size() == 64);
    const auto frames = d.channel.frames();
    for (const auto& b : branches) {
        double want = 0.25;
        for (int i = 1; i <= 4; ++i) {
            const double half = frames[static_cast<std::size_t>(i - 1)].theta / 2.0;
            want *= b.outcomes.at("claire" + std::to_string(i)) == 0 ? std::cos(half) * std::cos(half)
                                                                     : std::sin(half) * std::sin(half);
        }
        CHECK(std::abs(b.probability - want) <= 1e-12);
    }
    CHECK(reachable_min_fidelity(branches) >= 1.0 - 1e-10);
}

TEST_CASE("cat protocol rejects out-of-range N") {
    std::vector<QubitVector> phis(8, QubitVector::zero()), phips(8, QubitVector::zero());
    CHECK_THROWS_AS(ChannelSpec::cat(phis, phips).validate(), configuration_error);
}

TEST_CASE("probabilistic protocol: balanced weights reproduce the deterministic branches") {
    Rng rng(359);
    const Draw d = random_class_draw(rng, 0.6);
    const auto prob_branches = probabilistic_protocol(d.input, d.channel); // a = b = 1/sqrt(2)
    const auto det_branches = ghz_class_protocol(d.input, d.channel);
    CHECK(prob_branches.size() == det_branches.size() + 1); // plus the zero-probability failure leaf
    for (const auto& pb : prob_branches) {
        if (pb.status == BranchStatus::FilterFailure) {
            CHECK(pb.probability < kZeroProb);
            continue;
        }
        const auto match = std::find_if(det_branches.begin(), det_branches.end(), [&](const Branch& b) {
            return b.outcomes.at("bell") == pb.outcomes.at("bell") &&
                   b.outcomes.at("claire1") == pb.outcomes.at("claire1");
        });
        REQUIRE(match != det_branches.end());
        CHECK(std::abs(pb.probability - match->probability) <= 1e-12);
        CHECK(fidelity(*pb.state, *match->state) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("probabilistic protocol: success probability and exactness at |a|^2 = 0.8") {
    Rng rng(367);
    const Draw d = random_class_draw(rng, 0.45);
    const ChannelSpec weighted = d.channel.with_weights(std::sqrt(0.8), std::sqrt(0.2));
    const auto branches = probabilistic_protocol(d.input, weighted);
    double success = 0.0, failure = 0.0;
    for (const auto& b : branches) {
        if (b.status == BranchStatus::FilterFailure)
            failure += b.probability;
        else if (b.status == BranchStatus::Ok) {
            success += b.probability;
            CHECK(*b.fidelity >= 1.0 - 1e-10);
        }
    }
    CHECK(success == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(failure == doctest::Approx(0.6).epsilon(1e-12));

    // Failure leaves nothing entangled across the (Alice,Claire) : Bobs cut.
    const auto fail = std::find_if(branches.begin(), branches.end(), [](const Branch& b) {
        return b.status == BranchStatus::FilterFailure;
    });
    REQUIRE(fail != branches.end());
    REQUIRE(fail->state.has_value());
    const auto coeffs = schmidt(*fail->state, {"1", "2", "A"});
    CHECK(entanglement_entropy(coeffs) <= 1e-10);
}

TEST_CASE("probabilistic protocol covers the a|000> + b|111> channel") {
    Rng rng(373);
    auto [alpha, beta] = random_amplitudes(rng);
    const ChannelSpec ghz_prime =
        ChannelSpec::ghz_class(QubitVector::zero(), QubitVector::one()).with_weights(std::sqrt(0.6), std::sqrt(0.4));
    const TeleportInput input = TeleportInput::class_input(alpha, beta, ghz_prime, random_schmidt_frame(rng));
    const auto branches = probabilistic_protocol(input, ghz_prime);
    double success = 0.0;
    for (const auto& b : branches)
        if (b.status == BranchStatus::Ok) {
            success += b.probability;
            CHECK(*b.fidelity >= 1.0 - 1e-10);
        }
    CHECK(success == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("probabilistic cat channel enumerates 16 success branches plus the failure leaf") {
    Rng rng(371);
    const Draw d = random_cat_draw(rng, 3);
    const ChannelSpec weighted = d.channel.with_weights(std::sqrt(0.7), std::sqrt(0.3));
    const auto branches = probabilistic_protocol(d.input, weighted);
    CHECK(branches.size() == 17);
    double success = 0.0;
    for (const auto& b : branches)
        if (b.status == BranchStatus::Ok) success += b.probability;
    CHECK(success == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("probabilistic weights also work for the GHZ-basis protocol") {
    Rng rng(377);
    auto [alpha, beta] = random_amplitudes(rng);
    const TeleportInput input =
        TeleportInput::ghz_input(alpha, beta, random_schmidt_frame(rng), random_schmidt_frame(rng));
    const ChannelSpec weighted = ChannelSpec::ghz().with_weights(std::sqrt(0.6), std::sqrt(0.4));
    const auto branches = probabilistic_protocol(input, weighted);
    double success = 0.0;
    for (const auto& b : branches)
        if (b.status == BranchStatus::Ok && b.probability >= kZeroProb) {
            success += b.probability;
            CHECK(*b.fidelity >= 1.0 - 1e-10);
        }
    CHECK(success == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("probabilistic protocol rejects degenerate weights") {
    Rng rng(379);
    const Draw d = random_class_draw(rng, 0.5);
    const ChannelSpec degenerate = d.channel.with_weights(1.0, 0.0);
    CHECK_THROWS_AS(probabilistic_protocol(d.input, degenerate), configuration_error);
}

TEST_CASE("teleported states never exceed one ebit") {
    Rng rng(383);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const Draw d = random_class_draw(rng, unit(rng));
        for (const auto& b : ghz_class_protocol(d.input, d.channel)) {
            if (b.status != BranchStatus::Ok || b.probability < kZeroProb) continue;
            const double e = entanglement_entropy(schmidt(*b.state, {"B1"}));
            CHECK(e <= 1.0 + 1e-9);
        }
    }
    const Draw d3 = random_cat_draw(rng, 3);
    for (const auto& b : cat_protocol(d3.input, d3.channel)) {
        if (b.status != BranchStatus::Ok || b.probability < kZeroProb) continue;
        const double e = entanglement_entropy(schmidt(*b.state, {"B3"}));
        CHECK(e <= 1.0 + 1e-9);
    }
}

TEST_CASE("deterministic transcripts carry a 2-bit broadcast and 1 bit per Claire") {
    Rng rng(389);
    const Draw d = random_class_draw(rng, 0.7);
    const auto branches = ghz_class_protocol(d.input, d.channel);
    for (const auto& b : branches) {
        if (b.status != BranchStatus::Ok) continue;
        int alice_bits = 0, claire_messages = 0;
        for (const auto& ev : b.transcript.events) {
            if (const auto* msg = std::get_if<MessageEvent>(&ev)) {
                if (msg->sender == "Alice")
                    alice_bits += msg->bit_count;
                else {
                    ++claire_messages;
                    CHECK(msg->bit_count == 1);
                }
            }
        }
        CHECK(alice_bits == 2);
        CHECK(claire_messages == 1);
    }
}
