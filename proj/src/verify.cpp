#include "catsim/verify.hpp"

#include "catsim/analysis.hpp"
#include "catsim/random.hpp"
#include "catsim/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

namespace catsim::verify {

namespace {

using Clock = std::chrono::steady_clock;

class Checker {
public:
    explicit Checker(std::string name) : start_(Clock::now()) { result_.name = std::move(name); }

    void fail(const std::string& what) {
        if (result_.passed) result_.detail = what; // keep the first failure
        result_.passed = false;
    }

    void require(bool ok, const std::function<std::string()>& what) {
        if (!ok) fail(what());
    }

    void note_fidelity(double f) { result_.min_fidelity = std::min(result_.min_fidelity, f); }
    void note_defect(double d) { result_.max_probability_defect = std::max(result_.max_probability_defect, d); }

    CheckResult finish(const std::string& summary) {
        result_.elapsed_seconds =
            std::chrono::duration<double>(Clock::now() - start_).count();
        if (result_.passed) result_.detail = summary;
        return result_;
    }

private:
    CheckResult result_;
    Clock::time_point start_;
};

std::string claire_outcome_display(int idx) { return idx == 0 ? "a" : "a_bar"; }

// "(psi+, a)" style tuple naming for failure messages.
std::string outcome_tuple(const OutcomeMap& outcomes) {
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (const auto& [name, idx] : outcomes) {
        if (!first) os << ", ";
        first = false;
        if (name == "bell")
            os << bell_outcome_name(static_cast<BellOutcome>(idx));
        else if (name == "ghz")
            os << (idx < 4 ? bell_outcome_name(static_cast<BellOutcome>(idx)) : "P5");
        else if (name.rfind("claire", 0) == 0)
            os << claire_outcome_display(idx);
        else
            os << name << '=' << idx;
    }
    os << ')';
    return os.str();
}

double probability_sum(const std::vector<Branch>& branches) {
    double s = 0.0;
    for (const auto& b : branches) s += b.probability;
    return s;
}

struct ClassDraw {
    TeleportInput input;
    ChannelSpec channel;
    double r = 0.0;
};

ClassDraw draw_ghz_class(Rng& rng, double r) {
    const QubitVector phi = random_qubit(rng);
    const QubitVector phi_prime = random_partner_with_overlap(rng, phi, r);
    const ChannelSpec channel = ChannelSpec::ghz_class(phi, phi_prime);
    auto [alpha, beta] = random_amplitudes(rng);
    return {TeleportInput::class_input(alpha, beta, channel, random_schmidt_frame(rng)), channel, r};
}

ClassDraw draw_cat(Rng& rng, int n) {
    std::vector<QubitVector> phis, phips;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < n - 1; ++i) {
        const QubitVector phi = random_qubit(rng);
        phis.push_back(phi);
        phips.push_back(random_partner_with_overlap(rng, phi, unit(rng)));
    }
    const ChannelSpec channel = ChannelSpec::cat(phis, phips);
    auto [alpha, beta] = random_amplitudes(rng);
    return {TeleportInput::class_input(alpha, beta, channel, random_schmidt_frame(rng)), channel, 0.0};
}

void inject_wrong_correction(ProtocolScript& script) {
    for (auto& step : script.steps) {
        if (auto* c = std::get_if<StepCorrection>(&step); c && c->party == "Bob1") {
            auto orig = c->resolve;
            c->resolve = [orig](const OutcomeMap& m) {
                if (m.at("bell") == static_cast<int>(BellOutcome::PsiPlus) &&
                    m.at("claire1") == static_cast<int>(ClaireOutcome::A))
                    return std::make_pair(SingleQubitGate::identity(), std::string("I(injected)"));
                return orig(m);
            };
            return;
        }
    }
}

Transcript with_nonlocal_gate(Transcript t) {
    t.events.push_back(GateEvent{"Bob1", {"B1", "B2"}, "joint-gate(injected)", {}});
    return t;
}

Transcript with_premature_correction(Transcript t) {
    for (std::size_t i = 0; i < t.events.size(); ++i) {
        const auto* g = std::get_if<GateEvent>(&t.events[i]);
        if (g && !g->depends_on.empty()) {
            TranscriptEvent ev = t.events[i];
            t.events.erase(t.events.begin() + static_cast<std::ptrdiff_t>(i));
            t.events.insert(t.events.begin(), std::move(ev));
            break;
        }
    }
    return t;
}

} // namespace

FaultKind fault_kind_from_name(const std::string& name) {
    if (name.empty() || name == "none") return FaultKind::None;
    if (name == "wrong-correction") return FaultKind::WrongCorrection;
    if (name == "nonlocal-gate") return FaultKind::NonlocalGate;
    if (name == "premature-correction") return FaultKind::PrematureCorrection;
    throw configuration_error("unknown fault kind '" + name +
                              "' (expected wrong-correction, nonlocal-gate or premature-correction)");
}

CheckResult check_ghz_protocol(const Options& opts) {
    Checker ck("ghz protocol: all reachable branches exact, P5 never clicks");
    Rng rng(opts.seed);
    double max_p5 = 0.0;
    for (int trial = 0; trial < opts.trials; ++trial) {
        auto [alpha, beta] = random_amplitudes(rng);
        const TeleportInput input =
            TeleportInput::ghz_input(alpha, beta, random_schmidt_frame(rng), random_schmidt_frame(rng));
        const auto branches = ghz_protocol(input, ChannelSpec::ghz());

        ck.require(branches.size() == 5,
                   [&] { return "expected 5 branches, got " + std::to_string(branches.size()); });
        ck.note_defect(std::abs(probability_sum(branches) - 1.0));
        int reachable = 0;
        for (const auto& b : branches) {
            if (b.status == BranchStatus::Complement) {
                max_p5 = std::max(max_p5, b.probability);
                ck.require(b.probability < 1e-12,
                           [&] { return "P5 clicked with probability " + format_number(b.probability); });
                continue;
            }
            ++reachable;
            ck.note_defect(std::abs(b.probability - 0.25));
            ck.require(std::abs(b.probability - 0.25) <= opts.probability_tol,
                       [&] { return "branch probability " + format_number(b.probability) + " != 1/4 at " +
                                    outcome_tuple(b.outcomes); });
            ck.note_fidelity(*b.fidelity);
            ck.require(*b.fidelity >= 1.0 - opts.fidelity_tol,
                       [&] { return "fidelity " + format_number(*b.fidelity) + " at " + outcome_tuple(b.outcomes); });
        }
        ck.require(reachable == 4, [&] { return "expected 4 reachable branches"; });
    }
    std::ostringstream s;
    s << "trials=" << opts.trials << " max_P5=" << format_number(max_p5);
    return ck.finish(s.str());
}

CheckResult check_ghz_class_protocol(const Options& opts) {
    Checker ck("ghz-class protocol: 8 branches exact, Bell 1/4, Claire (1+-r)/2");
    Rng rng(opts.seed + 1);
    const std::vector<double> pinned{0.0, 0.3, 1.0 / std::sqrt(2.0), 0.95, 1.0};
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int trial = 0; trial < opts.trials; ++trial) {
        const double r = trial < static_cast<int>(pinned.size()) * 8
                             ? pinned[static_cast<std::size_t>(trial) % pinned.size()]
                             : unit(rng);
        ClassDraw draw = draw_ghz_class(rng, r);

        ProtocolScript script = make_ghz_class_script(draw.input, draw.channel);
        if (opts.fault == FaultKind::WrongCorrection) inject_wrong_correction(script);
        const auto branches = run_protocol(script, EnumerateMode{});

        ck.require(branches.size() == 8,
                   [&] { return "expected 8 branches, got " + std::to_string(branches.size()); });
        ck.note_defect(std::abs(probability_sum(branches) - 1.0));

        const double frame_r = overlap_frame(draw.channel.phi[0], draw.channel.phi_prime[0]).r;
        double bell_marginal[4] = {0, 0, 0, 0};
        for (const auto& b : branches) bell_marginal[b.outcomes.at("bell")] += b.probability;
        for (int k = 0; k < 4; ++k) {
            ck.note_defect(std::abs(bell_marginal[k] - 0.25));
            ck.require(std::abs(bell_marginal[k] - 0.25) <= opts.probability_tol, [&] {
                return "Bell marginal " + format_number(bell_marginal[k]) + " != 1/4 for outcome " +
                       bell_outcome_name(static_cast<BellOutcome>(k));
            });
        }
        for (const auto& b : branches) {
            const double conditional = b.probability / bell_marginal[b.outcomes.at("bell")];
            const double want = b.outcomes.at("claire1") == 0 ? (1.0 + frame_r) / 2.0 : (1.0 - frame_r) / 2.0;
            ck.note_defect(std::abs(conditional - want));
            ck.require(std::abs(conditional - want) <= opts.probability_tol, [&] {
                return "Claire conditional " + format_number(conditional) + " != " + format_number(want) +
                       " at " + outcome_tuple(b.outcomes);
            });
            if (b.probability >= kZeroProb && b.status == BranchStatus::Ok) {
                ck.note_fidelity(*b.fidelity);
                ck.require(*b.fidelity >= 1.0 - opts.fidelity_tol, [&] {
                    return "fidelity " + format_number(*b.fidelity) + " at " + outcome_tuple(b.outcomes);
                });
            }
        }
    }
    std::ostringstream s;
    s << "trials=" << opts.trials << " r in {0, 0.3, 0.707, 0.95, 1} and random";
    return ck.finish(s.str());
}

CheckResult check_cat_protocol(const Options& opts) {
    Checker ck("cat protocol: N=2..6, branch fidelities and factored leaf probabilities");
    Rng rng(opts.seed + 2);
    int total = 0;
    for (int n = 2; n <= opts.cat_max_parties; ++n) {
        for (int trial = 0; trial < opts.cat_trials; ++trial) {
            ClassDraw draw = draw_cat(rng, n);
            const auto branches = cat_protocol(draw.input, draw.channel);
            ++total;

            const std::size_t expected = std::size_t{4} << (n - 1);
            ck.require(branches.size() == expected, [&] {
                return "expected " + std::to_string(expected) + " branches, got " + std::to_string(branches.size());
            });
            ck.note_defect(std::abs(probability_sum(branches) - 1.0));

            const auto frames = draw.channel.frames();
            for (const auto& b : branches) {
                double want = 0.25;
                for (int i = 1; i <= n - 1; ++i) {
                    const double half = frames[static_cast<std::size_t>(i - 1)].theta / 2.0;
                    const double c = std::cos(half), s = std::sin(half);
                    want *= b.outcomes.at("claire" + std::to_string(i)) == 0 ? c * c : s * s;
                }
                ck.note_defect(std::abs(b.probability - want));
                ck.require(std::abs(b.probability - want) <= opts.probability_tol, [&] {
                    return "leaf probability " + format_number(b.probability) + " != " + format_number(want) +
                           " at " + outcome_tuple(b.outcomes);
                });
                if (b.probability >= kZeroProb && b.status == BranchStatus::Ok) {
                    ck.note_fidelity(*b.fidelity);
                    ck.require(*b.fidelity >= 1.0 - opts.fidelity_tol, [&] {
                        return "N=" + std::to_string(n) + " fidelity " + format_number(*b.fidelity) + " at " +
                               outcome_tuple(b.outcomes);
                    });
                }
            }
        }
    }
    return ck.finish("draws=" + std::to_string(total) + " across N=2.." + std::to_string(opts.cat_max_parties));
}

CheckResult check_order_invariance(const Options& opts) {
    Checker ck("order invariance: Alice-first vs Claire(s)-first enumerations agree");
    Rng rng(opts.seed + 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < opts.order_trials; ++trial) {
        ClassDraw draw = draw_ghz_class(rng, unit(rng));
        const auto rep = order_permutation_check(draw.input, draw.channel);
        ck.note_defect(rep.max_probability_defect);
        ck.note_fidelity(rep.min_conditional_fidelity);
        ck.require(rep.passed(opts.probability_tol, opts.fidelity_tol), [&] {
            return "ghz-class orderings disagree: defect=" + format_number(rep.max_probability_defect) +
                   " min_fid=" + format_number(rep.min_conditional_fidelity) +
                   (rep.mismatches.empty() ? "" : " " + rep.mismatches.front());
        });
    }
    for (int trial = 0; trial < opts.order_cat_trials; ++trial) {
        ClassDraw draw = draw_cat(rng, 3);
        const auto rep = order_permutation_check(draw.input, draw.channel);
        ck.note_defect(rep.max_probability_defect);
        ck.note_fidelity(rep.min_conditional_fidelity);
        ck.require(rep.passed(opts.probability_tol, opts.fidelity_tol), [&] {
            return "cat orderings disagree: defect=" + format_number(rep.max_probability_defect) +
                   " min_fid=" + format_number(rep.min_conditional_fidelity);
        });
    }
    std::ostringstream s;
    s << "draws=" << opts.order_trials << " ghz-class + " << opts.order_cat_trials << " cat(N=3)";
    return ck.finish(s.str());
}

CheckResult check_probabilistic(const Options& opts) {
    Checker ck("probabilistic variants: success probability 2*min(|a|^2,|b|^2), exact success branches");
    Rng rng(opts.seed + 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::vector<double> a2_values{0.5, 0.6, 0.8, 0.99};

    for (double a2 : a2_values) {
        for (int trial = 0; trial < 5; ++trial) {
            ClassDraw draw = draw_ghz_class(rng, unit(rng));
            const ChannelSpec weighted = draw.channel.with_weights(std::sqrt(a2), std::sqrt(1.0 - a2));
            const auto branches = probabilistic_protocol(draw.input, weighted);

            const double want_success = 2.0 * std::min(a2, 1.0 - a2);
            double success = 0.0, failure = 0.0;
            for (const auto& b : branches) {
                if (b.status == BranchStatus::FilterFailure) {
                    failure += b.probability;
                } else if (b.status == BranchStatus::Ok) {
                    success += b.probability;
                    if (b.probability >= kZeroProb) {
                        ck.note_fidelity(*b.fidelity);
                        ck.require(*b.fidelity >= 1.0 - opts.fidelity_tol, [&] {
                            return "success-branch fidelity " + format_number(*b.fidelity) + " at " +
                                   outcome_tuple(b.outcomes);
                        });
                    }
                }
            }
            ck.note_defect(std::abs(success - want_success));
            ck.require(std::abs(success - want_success) <= opts.probability_tol, [&] {
                return "success probability " + format_number(success) + " != " + format_number(want_success) +
                       " for |a|^2=" + format_number(a2);
            });
            ck.note_defect(std::abs(success + failure - 1.0));

            if (a2 == 0.5) {
                // Balanced weights must reproduce the deterministic protocol branch for branch.
                const auto det = ghz_class_protocol(draw.input, draw.channel);
                for (const auto& b : branches) {
                    if (b.status != BranchStatus::Ok) {
                        ck.require(b.probability < kZeroProb,
                                   [&] { return "balanced filter produced a reachable failure branch"; });
                        continue;
                    }
                    const auto match = std::find_if(det.begin(), det.end(), [&](const Branch& d) {
                        return d.outcomes.at("bell") == b.outcomes.at("bell") &&
                               d.outcomes.at("claire1") == b.outcomes.at("claire1");
                    });
                    ck.require(match != det.end(), [&] { return "no deterministic branch matches " +
                                                                outcome_tuple(b.outcomes); });
                    if (match == det.end()) continue;
                    ck.note_defect(std::abs(b.probability - match->probability));
                    if (b.state && match->state && b.probability >= kZeroProb)
                        ck.note_fidelity(fidelity(*b.state, *match->state));
                }
            }
        }
    }

    // The a|000> + b|111> channel is the r = 0 case with computational vectors.
    {
        const ChannelSpec ghz_prime =
            ChannelSpec::ghz_class(QubitVector::zero(), QubitVector::one()).with_weights(std::sqrt(0.8), std::sqrt(0.2));
        auto [alpha, beta] = random_amplitudes(rng);
        const TeleportInput input = TeleportInput::class_input(alpha, beta, ghz_prime, random_schmidt_frame(rng));
        const auto branches = probabilistic_protocol(input, ghz_prime);
        double success = 0.0;
        for (const auto& b : branches)
            if (b.status == BranchStatus::Ok) {
                success += b.probability;
                if (b.probability >= kZeroProb) ck.note_fidelity(*b.fidelity);
            }
        ck.note_defect(std::abs(success - 0.4));
        ck.require(std::abs(success - 0.4) <= opts.probability_tol,
                   [&] { return "|GHZ'> channel success probability " + format_number(success) + " != 0.4"; });
    }

    // N-party weighted channel (|cat'>), N = 3.
    {
        ClassDraw draw = draw_cat(rng, 3);
        const ChannelSpec weighted = draw.channel.with_weights(std::sqrt(0.6), std::sqrt(0.4));
        const auto branches = probabilistic_protocol(draw.input, weighted);
        double success = 0.0;
        for (const auto& b : branches)
            if (b.status == BranchStatus::Ok) {
                success += b.probability;
                if (b.probability >= kZeroProb) {
                    ck.note_fidelity(*b.fidelity);
                    ck.require(*b.fidelity >= 1.0 - opts.fidelity_tol, [&] {
                        return "cat' success fidelity " + format_number(*b.fidelity);
                    });
                }
            }
        ck.note_defect(std::abs(success - 0.8));
        ck.require(std::abs(success - 0.8) <= opts.probability_tol,
                   [&] { return "|cat'> success probability " + format_number(success) + " != 0.8"; });
    }

    return ck.finish("|a|^2 in {0.5, 0.6, 0.8, 0.99} x 5 draws, plus GHZ' and cat' channels");
}

CheckResult check_channel_negativity(const Options& opts) {
    Checker ck("channel negativity: N(A:B2) = r/2, N(A:B1) = 0 for both families");
    for (int k = 0; k <= 10; ++k) {
        const double r = k / 10.0;
        const double s = std::sqrt(std::max(0.0, 1.0 - r * r));
        const auto rep = channel_negativity_report(ChannelSpec::ghz_class(QubitVector::zero(), QubitVector(r, s)));
        ck.note_defect(std::abs(rep.negativity_alice_bob2 - r / 2.0));
        ck.require(std::abs(rep.negativity_alice_bob2 - r / 2.0) <= 1e-10, [&] {
            return "N(A:B2) = " + format_number(rep.negativity_alice_bob2) + " != r/2 at r=" + format_number(r);
        });
        ck.require(std::abs(rep.negativity_alice_bob1) <= 1e-10, [&] {
            return "N(A:B1) = " + format_number(rep.negativity_alice_bob1) + " != 0 at r=" + format_number(r);
        });
    }
    const auto ghz_rep = channel_negativity_report(ChannelSpec::ghz());
    ck.require(std::abs(ghz_rep.negativity_alice_bob2) <= 1e-10 && std::abs(ghz_rep.negativity_alice_bob1) <= 1e-10,
               [&] { return "|GHZ> channel reduced states are not PPT"; });
    // Random overlap phases must not change the negativities.
    Rng rng(opts.seed + 5);
    for (int trial = 0; trial < 10; ++trial) {
        auto [phi, phi_prime] = random_overlap_pair(rng);
        const double r = overlap_frame(phi, phi_prime).r;
        const auto rep = channel_negativity_report(ChannelSpec::ghz_class(phi, phi_prime));
        ck.note_defect(std::abs(rep.negativity_alice_bob2 - r / 2.0));
        ck.require(std::abs(rep.negativity_alice_bob2 - r / 2.0) <= 1e-10,
                   [&] { return "N(A:B2) != r/2 for a random pair"; });
        ck.require(std::abs(rep.negativity_alice_bob1) <= 1e-10,
                   [&] { return "N(A:B1) != 0 for a random pair"; });
    }
    return ck.finish("r grid 0:0.1:1, |GHZ> channel, 10 random pairs");
}

CheckResult check_entanglement_range(const Options& opts) {
    Checker ck("entanglement range: grid-searched e_max matches H((1+r)/2), e_max <= 1");
    (void)opts;
    double prev = 2.0;
    for (int k = 0; k <= 10; ++k) {
        const double r = k / 10.0;
        const double s = std::sqrt(std::max(0.0, 1.0 - r * r));
        const auto frame = overlap_frame(QubitVector::zero(), QubitVector(r, s));
        const auto range = teleportable_entanglement_range(frame, 101);
        ck.note_defect(std::abs(range.e_max - range.closed_form));
        ck.require(std::abs(range.e_max - range.closed_form) <= 1e-6, [&] {
            return "e_max " + format_number(range.e_max) + " vs closed form " + format_number(range.closed_form) +
                   " at r=" + format_number(r);
        });
        ck.require(range.e_max <= 1.0 + 1e-9,
                   [&] { return "e_max " + format_number(range.e_max) + " exceeds one ebit"; });
        ck.require(range.e_max < prev, [&] { return "e_max is not strictly decreasing in r"; });
        if (k == 0)
            ck.require(std::abs(range.e_max - 1.0) <= 1e-9,
                       [&] { return "e_max at r=0 is " + format_number(range.e_max) + " != 1"; });
        else
            ck.require(range.e_max < 1.0 - 1e-6,
                       [&] { return "e_max = 1 away from r=0 (r=" + format_number(r) + ")"; });
        prev = range.e_max;
    }
    return ck.finish("r grid 0:0.1:1, 101-point alpha2 grid, closed form confirmed");
}

CheckResult check_locality_and_cost(const Options& opts) {
    Checker ck("locality & classical cost: local transcripts, 2-bit Alice broadcast, 1 bit per Claire");
    Rng rng(opts.seed + 6);

    auto validate_branches = [&](const ProtocolScript& script, const std::vector<Branch>& branches,
                                 int claires, bool deterministic) {
        for (const auto& b : branches) {
            const auto violations = validate_locality(script.parties, b.transcript);
            ck.require(violations.empty(), [&] {
                return "locality violation in " + script.name + " at " + outcome_tuple(b.outcomes) + ": " +
                       violations.front().description;
            });
            if (!deterministic || b.status != BranchStatus::Ok) continue;
            int alice_broadcasts = 0, claire_messages = 0;
            for (const auto& ev : b.transcript.events) {
                if (const auto* msg = std::get_if<MessageEvent>(&ev)) {
                    if (msg->sender == "Alice") {
                        ++alice_broadcasts;
                        ck.require(msg->bit_count == 2,
                                   [&] { return "Alice's broadcast carries " + std::to_string(msg->bit_count) +
                                                " bits, expected 2"; });
                    } else {
                        ++claire_messages;
                        ck.require(msg->bit_count == 1,
                                   [&] { return "Claire message carries " + std::to_string(msg->bit_count) +
                                                " bits, expected 1"; });
                    }
                }
            }
            ck.require(alice_broadcasts == 1,
                       [&] { return script.name + ": expected exactly one Alice broadcast, saw " +
                                    std::to_string(alice_broadcasts); });
            ck.require(claire_messages == claires,
                       [&] { return script.name + ": expected " + std::to_string(claires) +
                                    " Claire messages, saw " + std::to_string(claire_messages); });
        }
    };

    {
        auto [alpha, beta] = random_amplitudes(rng);
        const TeleportInput input =
            TeleportInput::ghz_input(alpha, beta, random_schmidt_frame(rng), random_schmidt_frame(rng));
        const ProtocolScript script = make_ghz_script(input, ChannelSpec::ghz());
        validate_branches(script, run_protocol(script, EnumerateMode{}), 0, true);
    }
    ProtocolScript class_script = [&] {
        ClassDraw draw = draw_ghz_class(rng, 0.4);
        return make_ghz_class_script(draw.input, draw.channel);
    }();
    const auto class_branches = run_protocol(class_script, EnumerateMode{});
    validate_branches(class_script, class_branches, 1, true);
    {
        ClassDraw draw = draw_cat(rng, 3);
        const ProtocolScript script = make_cat_script(draw.input, draw.channel);
        validate_branches(script, run_protocol(script, EnumerateMode{}), 2, true);
    }
    {
        ClassDraw draw = draw_ghz_class(rng, 0.4);
        const ChannelSpec weighted = draw.channel.with_weights(std::sqrt(0.7), std::sqrt(0.3));
        const ProtocolScript script = make_probabilistic_script(draw.input, weighted);
        validate_branches(script, run_protocol(script, EnumerateMode{}), 1, false);
    }

    // Deliberate faults must be detected.
    const Transcript& good = class_branches.front().transcript;
    {
        const auto violations = validate_locality(class_script.parties, with_nonlocal_gate(good));
        ck.require(!violations.empty(), [] { return std::string("injected nonlocal gate went undetected"); });
        if (opts.fault == FaultKind::NonlocalGate)
            ck.fail("injected nonlocal gate detected: " +
                    (violations.empty() ? std::string("(missed!)") : violations.front().description));
    }
    {
        const auto violations = validate_locality(class_script.parties, with_premature_correction(good));
        ck.require(!violations.empty(), [] { return std::string("premature correction went undetected"); });
        if (opts.fault == FaultKind::PrematureCorrection)
            ck.fail("injected premature correction detected: " +
                    (violations.empty() ? std::string("(missed!)") : violations.front().description));
    }

    return ck.finish("ghz, ghz-class, cat(N=3), probabilistic transcripts all local; faults detected");
}

CheckResult check_report_determinism(const Options& opts) {
    Checker ck("determinism: identical seeds give byte-identical reports");
    Scenario sc;
    sc.protocol = "ghz-class";
    sc.r = 0.5;
    sc.alpha2 = 0.3;
    sc.seed = opts.seed;

    const auto run_once = [&](bool enumerate) {
        Scenario s = sc;
        s.enumerate = enumerate;
        const auto branches = run_protocol(s.script(), enumerate ? RunMode{EnumerateMode{}}
                                                                 : RunMode{SampleMode{s.seed}});
        return render_run_report(s, branches);
    };
    ck.require(run_once(false) == run_once(false),
               [] { return std::string("sampled reports differ for identical seeds"); });
    ck.require(run_once(true) == run_once(true),
               [] { return std::string("enumerated reports differ for identical seeds"); });
    return ck.finish("sample and enumerate reports byte-stable");
}

std::vector<CheckResult> run_all_checks(const Options& opts) {
    return {
        check_ghz_protocol(opts),          check_ghz_class_protocol(opts), check_cat_protocol(opts),
        check_order_invariance(opts),      check_probabilistic(opts),      check_channel_negativity(opts),
        check_entanglement_range(opts),    check_locality_and_cost(opts),  check_report_determinism(opts),
    };
}

CheckResult run_protocol_check(const std::string& protocol, const Options& opts) {
    if (protocol == "ghz") return check_ghz_protocol(opts);
    if (protocol == "ghz-class") return check_ghz_class_protocol(opts);
    if (protocol == "cat") return check_cat_protocol(opts);
    if (protocol == "probabilistic") return check_probabilistic(opts);
    throw configuration_error("unknown protocol '" + protocol +
                              "' (expected ghz, ghz-class, cat or probabilistic)");
}

} // namespace catsim::verify
