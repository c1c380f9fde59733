#include "catsim/locc.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace catsim {

namespace {

int bits_for_outcomes(int reportable) {
    int bits = 0;
    while ((1 << bits) < reportable) ++bits;
    return bits;
}

std::string outcome_key(const OutcomeMap& m) {
    std::ostringstream os;
    for (const auto& [k, v] : m) os << k << '=' << v << ';';
    return os.str();
}

// Per-measurement info the engine tracks along a path.
struct MeasuredRecord {
    std::vector<std::string> qubits;
    std::vector<cdouble> element; // collapsed outcome state over those qubits
};

struct PathState {
    StateVector state;
    OutcomeMap outcomes;
    double probability = 1.0;
    std::vector<TranscriptEvent> events;
    std::vector<MeasuredRecord> measured;
    // reportable outcome count per measurement name (for message bit counts)
    std::map<std::string, int> outcome_counts;
};

class Engine {
public:
    Engine(const ProtocolScript& script, const RunMode& mode) : script_(script) {
        if (const auto* s = std::get_if<SampleMode>(&mode)) {
            sampling_ = true;
            rng_.seed(s->seed);
        }
        check_ownership_partition(script.parties, script.initial.labels());
        for (const auto& p : script.parties)
            for (const auto& q : p.qubits) owner_[q] = p.id;
    }

    std::vector<Branch> run() {
        PathState root{script_.initial, {}, 1.0, {}, {}, {}};
        step(0, std::move(root));
        return std::move(branches_);
    }

private:
    const ProtocolScript& script_;
    bool sampling_ = false;
    std::mt19937_64 rng_;
    std::vector<Branch> branches_;
    std::map<std::string, std::string> owner_;
    std::map<std::string, std::string> outcome_display_;

    // Local operations only: a step acting on a qubit outside its party aborts.
    void require_owned(const std::string& party, const std::vector<std::string>& qubits,
                       const std::string& what) {
        for (const auto& q : qubits) {
            auto it = owner_.find(q);
            if (it == owner_.end() || it->second != party)
                throw locality_error("locality violation: " + what + " by " + party + " touches qubit " + q +
                                     (it == owner_.end() ? " (unowned)" : " owned by " + it->second));
        }
    }

    // Uniform in [0,1) from the top 53 bits; identical across platforms.
    double draw_uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    int sample_index(const std::vector<double>& probs) {
        const double u = draw_uniform();
        double cum = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            cum += probs[i];
            if (u < cum) return static_cast<int>(i);
        }
        return static_cast<int>(probs.size()) - 1;
    }

    void step(std::size_t step_idx, PathState path) {
        if (step_idx == script_.steps.size()) {
            finish(std::move(path));
            return;
        }
        const Step& s = script_.steps[step_idx];
        if (const auto* g = std::get_if<StepGate>(&s)) {
            require_owned(g->party, {g->qubit}, "gate '" + g->gate_name + "'");
            path.state = apply_gate(path.state, g->qubit, g->gate);
            path.events.push_back(GateEvent{g->party, {g->qubit}, g->gate_name, {}});
            step(step_idx + 1, std::move(path));
        } else if (const auto* m = std::get_if<StepMeasure>(&s)) {
            require_owned(m->party, m->qubits, "measurement '" + m->name + "'");
            run_measure(step_idx, std::move(path), *m);
        } else if (const auto* f = std::get_if<StepFilter>(&s)) {
            require_owned(f->party, {f->qubit}, "filter '" + f->name + "'");
            run_filter(step_idx, std::move(path), *f);
        } else if (const auto* msg = std::get_if<StepMessage>(&s)) {
            const int outcome = path.outcomes.at(msg->measurement);
            MessageEvent ev;
            ev.sender = msg->sender;
            ev.recipients = msg->recipients;
            ev.measurement = msg->measurement;
            ev.outcome = outcome;
            ev.outcome_name = outcome_display_.at(msg->measurement + "/" + std::to_string(outcome));
            ev.bit_count = bits_for_outcomes(path.outcome_counts.at(msg->measurement));
            path.events.push_back(std::move(ev));
            step(step_idx + 1, std::move(path));
        } else if (const auto* c = std::get_if<StepCorrection>(&s)) {
            require_owned(c->party, {c->qubit}, "correction");
            auto [gate, name] = c->resolve(path.outcomes);
            path.state = apply_gate(path.state, c->qubit, gate);
            path.events.push_back(GateEvent{c->party, {c->qubit}, name, c->depends_on});
            step(step_idx + 1, std::move(path));
        }
    }

    void record_outcome_name(const std::string& measurement, int outcome, const std::string& name) {
        outcome_display_[measurement + "/" + std::to_string(outcome)] = name;
    }

    void run_measure(std::size_t step_idx, PathState path, const StepMeasure& m) {
        m.basis.validate();
        const int listed = static_cast<int>(m.basis.elements.size());

        std::vector<Projection> projections;
        std::vector<double> probs;
        for (int k = 0; k < listed; ++k) {
            projections.push_back(project(path.state, m.qubits, m.basis.elements[static_cast<std::size_t>(k)]));
            probs.push_back(projections.back().probability);
        }
        double complement_prob = 0.0;
        std::optional<StateVector> complement_state;
        if (m.basis.has_complement) {
            // Residual branch retains all qubits; the protocol cannot continue there.
            auto all = measure(path.state, m.qubits, m.basis);
            complement_prob = all.back().probability;
            complement_state = all.back().post;
            probs.push_back(complement_prob);
        }

        std::vector<int> chosen;
        if (sampling_) {
            chosen.push_back(sample_index(probs));
        } else {
            for (int k = 0; k < static_cast<int>(probs.size()); ++k) chosen.push_back(k);
        }

        for (int k : chosen) {
            PathState next = path;
            const double p = probs[static_cast<std::size_t>(k)];
            next.probability *= p;
            next.outcomes[m.name] = k;
            next.outcome_counts[m.name] = listed; // complement aborts, never reported
            record_outcome_name(m.name, k, m.basis.outcome_name(k));

            MeasurementEvent ev;
            ev.party = m.party;
            ev.qubits = m.qubits;
            ev.name = m.name;
            ev.basis_name = m.basis.name;
            ev.outcome = k;
            ev.outcome_name = m.basis.outcome_name(k);
            ev.probability = p;
            next.events.push_back(std::move(ev));

            const bool complement = m.basis.has_complement && k == listed;
            if (p < kZeroProb) {
                emit_leaf(std::move(next), complement ? BranchStatus::Complement : BranchStatus::ZeroProbability,
                          std::nullopt);
            } else if (complement) {
                emit_leaf(std::move(next), BranchStatus::Complement, complement_state);
            } else {
                next.measured.push_back({m.qubits, m.basis.elements[static_cast<std::size_t>(k)]});
                next.state = *projections[static_cast<std::size_t>(k)].remainder;
                step(step_idx + 1, std::move(next));
            }
        }
    }

    void run_filter(std::size_t step_idx, PathState path, const StepFilter& f) {
        auto outcomes = measure_kraus(path.state, f.qubit, {f.filter.success, f.filter.failure},
                                      {"success", "failure"});
        std::vector<double> probs{outcomes[0].probability, outcomes[1].probability};

        std::vector<int> chosen;
        if (sampling_)
            chosen.push_back(sample_index(probs));
        else
            chosen = {0, 1};

        for (int k : chosen) {
            PathState next = path;
            const auto& o = outcomes[static_cast<std::size_t>(k)];
            next.probability *= o.probability;
            next.outcomes[f.name] = k;
            next.outcome_counts[f.name] = 2;
            record_outcome_name(f.name, k, o.name);

            MeasurementEvent ev;
            ev.party = f.party;
            ev.qubits = {f.qubit};
            ev.name = f.name;
            ev.basis_name = "filter";
            ev.outcome = k;
            ev.outcome_name = o.name;
            ev.probability = o.probability;
            next.events.push_back(std::move(ev));

            if (o.probability < kZeroProb) {
                emit_leaf(std::move(next),
                          k == 1 ? BranchStatus::FilterFailure : BranchStatus::ZeroProbability,
                          std::nullopt);
            } else if (k == 1) {
                emit_leaf(std::move(next), BranchStatus::FilterFailure, o.post);
            } else {
                next.state = *o.post;
                step(step_idx + 1, std::move(next));
            }
        }
    }

    void finish(PathState path) {
        StateVector bob = path.state.reordered(script_.bob_labels); // leaf must be Bob-only
        std::optional<double> fid;
        if (script_.target) fid = fidelity(bob, *script_.target);

        Branch b;
        b.outcomes = std::move(path.outcomes);
        b.probability = path.probability;
        b.status = BranchStatus::Ok;
        b.state = std::move(bob);
        b.fidelity = fid;
        b.transcript.events = std::move(path.events);
        b.transcript.final_state = reconstruct_full(*b.state, path.measured);
        branches_.push_back(std::move(b));
    }

    void emit_leaf(PathState path, BranchStatus status, std::optional<StateVector> state) {
        Branch b;
        b.outcomes = std::move(path.outcomes);
        b.probability = path.probability;
        b.status = status;
        b.transcript.events = std::move(path.events);
        if (state) {
            b.transcript.final_state = reconstruct_full(*state, path.measured);
            b.state = std::move(state);
        }
        branches_.push_back(std::move(b));
    }

    // Rebuilds the full collapsed joint state (measured qubits ⊗ remainder) in
    // the initial label order.
    StateVector reconstruct_full(const StateVector& remainder, const std::vector<MeasuredRecord>& measured) {
        StateVector full = remainder;
        for (const auto& rec : measured)
            full = tensor(full, StateVector(rec.qubits, rec.element));
        return full.reordered(script_.initial.labels());
    }
};

} // namespace

void check_ownership_partition(const std::vector<Party>& parties,
                               const std::vector<std::string>& labels) {
    std::map<std::string, std::string> owner;
    for (const auto& p : parties)
        for (const auto& q : p.qubits) {
            if (owner.count(q))
                throw configuration_error("qubit " + q + " owned by both " + owner[q] + " and " + p.id);
            owner[q] = p.id;
        }
    for (const auto& l : labels)
        if (!owner.count(l)) throw configuration_error("qubit " + l + " has no owner");
    if (owner.size() != labels.size())
        throw configuration_error("ownership map references qubits outside the state");
}

const char* branch_status_name(BranchStatus s) {
    switch (s) {
        case BranchStatus::Ok: return "ok";
        case BranchStatus::FilterFailure: return "filter-failure";
        case BranchStatus::Complement: return "complement";
        case BranchStatus::ZeroProbability: return "zero-probability";
    }
    return "?";
}

std::vector<Branch> run_protocol(const ProtocolScript& script, const RunMode& mode) {
    Engine engine(script, mode);
    return engine.run();
}

std::vector<Violation> validate_locality(const std::vector<Party>& parties,
                                         const Transcript& transcript) {
    std::vector<Violation> violations;
    std::map<std::string, std::string> owner;
    for (const auto& p : parties)
        for (const auto& q : p.qubits) owner[q] = p.id;

    auto check_owned = [&](std::size_t idx, const std::string& party,
                           const std::vector<std::string>& qubits, const char* what) {
        for (const auto& q : qubits) {
            auto it = owner.find(q);
            if (it == owner.end())
                violations.push_back({idx, std::string(what) + " touches unowned qubit " + q});
            else if (it->second != party)
                violations.push_back({idx, std::string(what) + " by " + party + " touches qubit " + q +
                                               " owned by " + it->second});
        }
    };

    // measurement name -> party that performed it
    std::map<std::string, std::string> performed_by;
    // outcomes known to a party (own measurements plus received messages)
    std::map<std::string, std::set<std::string>> known;

    for (std::size_t i = 0; i < transcript.events.size(); ++i) {
        const auto& ev = transcript.events[i];
        if (const auto* g = std::get_if<GateEvent>(&ev)) {
            check_owned(i, g->party, g->qubits, "gate");
            for (const auto& dep : g->depends_on) {
                if (!known[g->party].count(dep))
                    violations.push_back({i, "correction '" + g->gate_name + "' by " + g->party +
                                                 " depends on '" + dep +
                                                 "' before any message delivered that outcome"});
            }
        } else if (const auto* m = std::get_if<MeasurementEvent>(&ev)) {
            check_owned(i, m->party, m->qubits, "measurement");
            performed_by[m->name] = m->party;
            known[m->party].insert(m->name);
        } else if (const auto* msg = std::get_if<MessageEvent>(&ev)) {
            auto it = performed_by.find(msg->measurement);
            if (it == performed_by.end())
                violations.push_back({i, "message reports measurement '" + msg->measurement +
                                             "' that never happened"});
            else if (it->second != msg->sender)
                violations.push_back({i, "message about '" + msg->measurement + "' sent by " +
                                             msg->sender + " but measured by " + it->second});
            for (const auto& r : msg->recipients) known[r].insert(msg->measurement);
        }
    }
    return violations;
}

OrderInvarianceReport compare_enumerations(const std::vector<Branch>& a, const std::vector<Branch>& b) {
    OrderInvarianceReport rep;
    std::map<std::string, const Branch*> bmap;
    for (const auto& br : b) bmap[outcome_key(br.outcomes)] = &br;
    if (a.size() != b.size())
        rep.mismatches.push_back("branch counts differ");

    for (const auto& br : a) {
        const std::string key = outcome_key(br.outcomes);
        auto it = bmap.find(key);
        if (it == bmap.end()) {
            rep.mismatches.push_back("outcome tuple missing from second enumeration: " + key);
            continue;
        }
        const Branch& other = *it->second;
        rep.max_probability_defect =
            std::max(rep.max_probability_defect, std::abs(br.probability - other.probability));
        if (br.state && other.state) {
            rep.min_conditional_fidelity =
                std::min(rep.min_conditional_fidelity, fidelity(*br.state, *other.state));
        } else if (br.state.has_value() != other.state.has_value()) {
            rep.mismatches.push_back("post-state presence differs for tuple: " + key);
        }
    }
    return rep;
}

} // namespace catsim
