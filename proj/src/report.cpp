#include "catsim/report.hpp"

#include "catsim/analysis.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace catsim {

namespace {
using nlohmann::json;
} // namespace

std::string format_number(double x) {
    if (x == 0.0) x = 0.0; // normalize -0
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string format_complex(cdouble z) {
    return "[" + format_number(z.real()) + ", " + format_number(z.imag()) + "]";
}

void JsonWriter::element_prefix() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!need_comma_.empty()) {
        if (need_comma_.back()) out_ += ",";
        need_comma_.back() = true;
        out_ += "\n";
        out_.append(static_cast<std::size_t>(indent_) * 2, ' ');
    }
}

JsonWriter& JsonWriter::begin_object() {
    element_prefix();
    out_ += "{";
    need_comma_.push_back(false);
    ++indent_;
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    const bool had_elements = need_comma_.back();
    need_comma_.pop_back();
    --indent_;
    if (had_elements) {
        out_ += "\n";
        out_.append(static_cast<std::size_t>(indent_) * 2, ' ');
    }
    out_ += "}";
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    element_prefix();
    out_ += "[";
    need_comma_.push_back(false);
    ++indent_;
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    const bool had_elements = need_comma_.back();
    need_comma_.pop_back();
    --indent_;
    if (had_elements) {
        out_ += "\n";
        out_.append(static_cast<std::size_t>(indent_) * 2, ' ');
    }
    out_ += "]";
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
    element_prefix();
    out_ += "\"" + name + "\": ";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& s) {
    element_prefix();
    out_ += json(s).dump(); // escaping
    return *this;
}

JsonWriter& JsonWriter::value(const char* s) { return value(std::string(s)); }

JsonWriter& JsonWriter::value(double x) {
    element_prefix();
    out_ += format_number(x);
    return *this;
}

JsonWriter& JsonWriter::value(int x) {
    element_prefix();
    out_ += std::to_string(x);
    return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t x) {
    element_prefix();
    out_ += std::to_string(x);
    return *this;
}

JsonWriter& JsonWriter::value(bool b) {
    element_prefix();
    out_ += b ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(cdouble z) {
    element_prefix();
    out_ += format_complex(z);
    return *this;
}

std::vector<std::string> transcript_lines(const Transcript& t) {
    std::vector<std::string> lines;
    for (const auto& ev : t.events) {
        std::ostringstream os;
        if (const auto* g = std::get_if<GateEvent>(&ev)) {
            os << "gate     party=" << g->party << " qubit=";
            for (std::size_t i = 0; i < g->qubits.size(); ++i) os << (i ? "," : "") << g->qubits[i];
            os << " gate=" << g->gate_name;
            if (!g->depends_on.empty()) {
                os << " depends_on=";
                for (std::size_t i = 0; i < g->depends_on.size(); ++i) os << (i ? "," : "") << g->depends_on[i];
            }
        } else if (const auto* m = std::get_if<MeasurementEvent>(&ev)) {
            os << "measure  party=" << m->party << " qubits=";
            for (std::size_t i = 0; i < m->qubits.size(); ++i) os << (i ? "," : "") << m->qubits[i];
            os << " basis=" << m->basis_name << " name=" << m->name << " outcome=" << m->outcome_name
               << " p=" << format_number(m->probability);
        } else if (const auto* msg = std::get_if<MessageEvent>(&ev)) {
            os << "message  from=" << msg->sender << " to=";
            for (std::size_t i = 0; i < msg->recipients.size(); ++i) os << (i ? "," : "") << msg->recipients[i];
            os << " measurement=" << msg->measurement << " outcome=" << msg->outcome_name
               << " bits=" << msg->bit_count;
        }
        lines.push_back(os.str());
    }
    return lines;
}

ChannelFamily Scenario::family() const {
    if (protocol == "ghz") return ChannelFamily::GHZ;
    if (protocol == "ghz-class") return ChannelFamily::GhzClass;
    if (protocol == "cat") return ChannelFamily::Cat;
    throw configuration_error("unknown protocol '" + protocol + "' (expected ghz, ghz-class or cat)");
}

bool Scenario::runs_probabilistic() const {
    return probabilistic || std::abs(a2 - 0.5) > kNormTol;
}

ChannelSpec Scenario::channel() const {
    const ChannelFamily fam = family();
    const int pairs = (fam == ChannelFamily::Cat ? n_bobs : 2) - 1;

    std::vector<QubitVector> p = phi, pp = phi_prime;
    if (p.empty()) {
        if (r < 0.0 || r > 1.0) throw configuration_error("overlap r must lie in [0, 1]");
        const double s = std::sqrt(std::max(0.0, 1.0 - r * r));
        const cdouble ph = std::polar(1.0, epsilon);
        for (int i = 0; i < pairs; ++i) {
            p.push_back(QubitVector::zero());
            pp.emplace_back(ph * r, ph * s);
        }
    }
    if (static_cast<int>(p.size()) != pairs || static_cast<int>(pp.size()) != pairs)
        throw configuration_error("scenario needs N-1 phi pairs");

    ChannelSpec ch;
    switch (fam) {
        case ChannelFamily::GHZ:
            if (!phi.empty())
                throw configuration_error("the ghz protocol pins phi = |0>, phi' = |1>; "
                                          "use ghz-class for explicit vectors");
            ch = ChannelSpec::ghz();
            break;
        case ChannelFamily::GhzClass: ch = ChannelSpec::ghz_class(p[0], pp[0]); break;
        case ChannelFamily::Cat: ch = ChannelSpec::cat(p, pp); break;
    }
    if (a2 < 0.0 || a2 > 1.0) throw configuration_error("weight |a|^2 must lie in [0, 1]");
    ch = ch.with_weights(std::sqrt(a2), std::sqrt(1.0 - a2));
    ch.validate();
    return ch;
}

TeleportInput Scenario::input() const {
    cdouble a, b;
    if (alpha && beta) {
        a = *alpha;
        b = *beta;
    } else {
        if (alpha2 < 0.0 || alpha2 > 1.0) throw configuration_error("alpha2 must lie in [0, 1]");
        a = std::sqrt(alpha2);
        b = std::sqrt(1.0 - alpha2);
    }
    if (family() == ChannelFamily::GHZ)
        return TeleportInput::ghz_input(a, b, SchmidtFrame::computational(), SchmidtFrame::computational());
    return TeleportInput::class_input(a, b, channel(), SchmidtFrame::computational());
}

ProtocolScript Scenario::script(MeasureOrdering ordering) const {
    const ChannelSpec ch = channel();
    const TeleportInput in = input();
    if (runs_probabilistic()) return make_probabilistic_script(in, ch, ordering);
    switch (ch.family) {
        case ChannelFamily::GHZ: return make_ghz_script(in, ch);
        case ChannelFamily::GhzClass: return make_ghz_class_script(in, ch, ordering);
        case ChannelFamily::Cat: return make_cat_script(in, ch, ordering);
    }
    throw configuration_error("unreachable channel family");
}

namespace {

QubitVector qubit_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw configuration_error("qubit vectors must be arrays of two [re, im] pairs");
    auto comp = [](const json& c) -> cdouble {
        if (c.is_number()) return {c.get<double>(), 0.0};
        if (c.is_array() && c.size() == 2) return {c[0].get<double>(), c[1].get<double>()};
        throw configuration_error("complex components must be numbers or [re, im] pairs");
    };
    return {comp(j[0]), comp(j[1])};
}

cdouble complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    throw configuration_error("complex values must be numbers or [re, im] pairs");
}

} // namespace

Scenario scenario_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw configuration_error(std::string("scenario is not valid JSON: ") + e.what());
    }
    Scenario sc;
    try {
        if (j.contains("protocol")) sc.protocol = j["protocol"].get<std::string>();
        if (j.contains("n")) sc.n_bobs = j["n"].get<int>();
        if (j.contains("alpha2")) sc.alpha2 = j["alpha2"].get<double>();
        if (j.contains("alpha")) sc.alpha = complex_from_json(j["alpha"]);
        if (j.contains("beta")) sc.beta = complex_from_json(j["beta"]);
        if (j.contains("r")) sc.r = j["r"].get<double>();
        if (j.contains("epsilon")) sc.epsilon = j["epsilon"].get<double>();
        if (j.contains("a2")) sc.a2 = j["a2"].get<double>();
        if (j.contains("probabilistic")) sc.probabilistic = j["probabilistic"].get<bool>();
        if (j.contains("seed")) sc.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("mode")) sc.enumerate = (j["mode"].get<std::string>() == "enumerate");
        if (j.contains("phi"))
            for (const auto& v : j["phi"]) sc.phi.push_back(qubit_from_json(v));
        if (j.contains("phi_prime"))
            for (const auto& v : j["phi_prime"]) sc.phi_prime.push_back(qubit_from_json(v));
    } catch (const json::exception& e) {
        throw configuration_error(std::string("bad scenario field: ") + e.what());
    }
    if (sc.alpha.has_value() != sc.beta.has_value())
        throw configuration_error("scenario must set alpha and beta together");
    return sc;
}

Scenario scenario_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw configuration_error("cannot open scenario file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return scenario_from_json(os.str());
}

namespace {

void write_state(JsonWriter& w, const StateVector& s) {
    w.begin_object();
    w.key("labels").begin_array();
    for (const auto& l : s.labels()) w.value(l);
    w.end_array();
    w.key("amplitudes").begin_array();
    for (std::size_t i = 0; i < s.dim(); ++i) w.value(s.amplitude(i));
    w.end_array();
    w.end_object();
}

void write_branch(JsonWriter& w, const Branch& b, bool with_transcript) {
    w.begin_object();
    w.key("outcomes").begin_object();
    for (const auto& [name, idx] : b.outcomes) w.key(name).value(idx);
    w.end_object();
    w.key("probability").value(b.probability);
    w.key("status").value(branch_status_name(b.status));
    if (b.fidelity) w.key("fidelity").value(*b.fidelity);
    if (b.state) {
        w.key("state");
        write_state(w, *b.state);
    }
    if (with_transcript) {
        w.key("transcript").begin_array();
        for (const auto& line : transcript_lines(b.transcript)) w.value(line);
        w.end_array();
    }
    w.end_object();
}

} // namespace

std::string render_run_report(const Scenario& scenario, const std::vector<Branch>& branches) {
    double prob_sum = 0.0;
    double min_fidelity = 1.0;
    bool any_ok = false;
    int reachable = 0;
    for (const auto& b : branches) {
        prob_sum += b.probability;
        if (b.probability >= kZeroProb) ++reachable;
        if (b.status == BranchStatus::Ok && b.probability >= kZeroProb && b.fidelity) {
            any_ok = true;
            min_fidelity = std::min(min_fidelity, *b.fidelity);
        }
    }

    JsonWriter w;
    w.begin_object();
    w.key("tool").value("catsim");
    w.key("command").value("run");
    w.key("scenario").begin_object();
    w.key("protocol").value(scenario.protocol);
    w.key("n").value(scenario.n_bobs);
    w.key("alpha2").value(scenario.alpha2);
    if (scenario.alpha) w.key("alpha").value(*scenario.alpha);
    if (scenario.beta) w.key("beta").value(*scenario.beta);
    w.key("r").value(scenario.r);
    w.key("epsilon").value(scenario.epsilon);
    w.key("a2").value(scenario.a2);
    w.key("probabilistic").value(scenario.runs_probabilistic());
    w.key("seed").value(scenario.seed);
    w.key("mode").value(scenario.enumerate ? "enumerate" : "sample");
    w.end_object();
    w.key("branches").begin_array();
    for (const auto& b : branches) write_branch(w, b, !scenario.enumerate);
    w.end_array();
    w.key("summary").begin_object();
    w.key("branch_count").value(static_cast<int>(branches.size()));
    w.key("reachable_branch_count").value(reachable);
    w.key("probability_sum").value(prob_sum);
    if (any_ok) w.key("min_fidelity").value(min_fidelity);
    w.key("fidelity_pass").value(any_ok && min_fidelity >= 1.0 - 1e-10);
    w.end_object();
    w.end_object();
    return w.str() + "\n";
}

std::string csv_negativity_curve(const std::vector<double>& r_grid) {
    std::ostringstream os;
    os << "r,negativity_AB2,negativity_AB1\n";
    for (double r : r_grid) {
        if (r < 0.0 || r > 1.0) throw configuration_error("overlap r must lie in [0, 1]");
        const double s = std::sqrt(std::max(0.0, 1.0 - r * r));
        const auto rep = channel_negativity_report(ChannelSpec::ghz_class(QubitVector::zero(), QubitVector(r, s)));
        os << format_number(r) << ',' << format_number(rep.negativity_alice_bob2) << ','
           << format_number(rep.negativity_alice_bob1) << '\n';
    }
    return os.str();
}

std::string csv_e_max_curve(const std::vector<double>& r_grid, int grid_points) {
    std::ostringstream os;
    os << "r,entropy\n";
    for (double r : r_grid) {
        if (r < 0.0 || r > 1.0) throw configuration_error("overlap r must lie in [0, 1]");
        const double s = std::sqrt(std::max(0.0, 1.0 - r * r));
        const auto frame = overlap_frame(QubitVector::zero(), QubitVector(r, s));
        const auto range = teleportable_entanglement_range(frame, grid_points);
        os << format_number(r) << ',' << format_number(range.e_max) << '\n';
    }
    return os.str();
}

std::string csv_entropy_sweep(double r, double epsilon, const std::vector<double>& alpha2_grid) {
    if (r < 0.0 || r > 1.0) throw configuration_error("overlap r must lie in [0, 1]");
    const double s = std::sqrt(std::max(0.0, 1.0 - r * r));
    const cdouble ph = std::polar(1.0, epsilon);
    const QubitVector phi_prime(ph * r, ph * s);
    const auto frame = overlap_frame(QubitVector::zero(), phi_prime);
    const cdouble back = std::polar(1.0, frame.epsilon);
    const QubitVector pp(back * frame.phi_second.c0(), back * frame.phi_second.c1());

    std::ostringstream os;
    os << "r,alpha2,entropy\n";
    for (double alpha2 : alpha2_grid) {
        if (alpha2 < 0.0 || alpha2 > 1.0) throw configuration_error("alpha2 grid must lie in [0, 1]");
        double entropy = 0.0;
        if (alpha2 > 0.0 && alpha2 < 1.0) {
            const StateVector chi = product_superposition(std::sqrt(alpha2), {frame.phi, QubitVector::zero()},
                                                          std::sqrt(1.0 - alpha2), {pp, QubitVector::one()},
                                                          {"1", "2"});
            entropy = entanglement_entropy(schmidt(chi, {"1"}));
        }
        os << format_number(r) << ',' << format_number(alpha2) << ',' << format_number(entropy) << '\n';
    }
    return os.str();
}

} // namespace catsim
