#pragma once

#include "catsim/locc.hpp"
#include "catsim/protocols.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace catsim {

// Every numeric field in reports and CSV output goes through these: %.12g,
// complex values as "[re, im]". Reports are byte-stable for fixed inputs.
std::string format_number(double x);
std::string format_complex(cdouble z);

// Minimal JSON emitter with caller-controlled field order.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& name);
    JsonWriter& value(const std::string& s);
    JsonWriter& value(const char* s);
    JsonWriter& value(double x);
    JsonWriter& value(int x);
    JsonWriter& value(std::uint64_t x);
    JsonWriter& value(bool b);
    JsonWriter& value(cdouble z);

    std::string str() const { return out_; }

private:
    void element_prefix();
    std::string out_;
    std::vector<bool> need_comma_;
    bool pending_key_ = false;
    int indent_ = 0;
};

// One human-readable line per transcript event.
std::vector<std::string> transcript_lines(const Transcript& t);

inline constexpr std::uint64_t kDefaultSeed = 42;

// A runnable experiment: protocol family, channel and input parameters, seed.
// Scenario files carry the same fields as JSON; CLI flags override them.
struct Scenario {
    std::string protocol = "ghz-class"; // "ghz" | "ghz-class" | "cat"
    int n_bobs = 2;
    double alpha2 = 0.5;
    std::optional<cdouble> alpha; // overrides alpha2 when present (with beta)
    std::optional<cdouble> beta;
    double r = 0.5;       // overlap magnitude applied to every phi pair
    double epsilon = 0.0; // overlap phase applied to every phi pair
    std::vector<QubitVector> phi;       // explicit pairs override r/epsilon
    std::vector<QubitVector> phi_prime; //
    double a2 = 0.5;            // channel weight |a|^2
    bool probabilistic = false; // filter first (implied by a2 != 0.5)
    std::uint64_t seed = kDefaultSeed;
    bool enumerate = false;

    ChannelFamily family() const;
    bool runs_probabilistic() const;
    ChannelSpec channel() const;
    TeleportInput input() const;
    ProtocolScript script(MeasureOrdering ordering = MeasureOrdering::AliceFirst) const;
};

Scenario scenario_from_json(const std::string& text);
Scenario scenario_from_file(const std::string& path);

// Structured run report (stable field order, 12-significant-digit numbers).
std::string render_run_report(const Scenario& scenario, const std::vector<Branch>& branches);

// CSV curves. Headers are subsets of "r,alpha2,entropy,negativity_AB2,negativity_AB1";
// non-applicable fields are omitted, never left blank.
std::string csv_negativity_curve(const std::vector<double>& r_grid);
std::string csv_e_max_curve(const std::vector<double>& r_grid, int grid_points = 101);
std::string csv_entropy_sweep(double r, double epsilon, const std::vector<double>& alpha2_grid);

} // namespace catsim
