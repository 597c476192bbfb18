#pragma once

#include <cstdint>
#include <optional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "compplan/channel.hpp"
#include "compplan/planner.hpp"

namespace compplan::cli {

// Bad key, bad value or out-of-range setting. Maps to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Engine { analytic, mc };

// Everything a command needs. Loaded from a flat `key = value` file, then
// patched by command-line flags.
struct RunConfig {
    LinkBudget budget;
    double carrier_ghz = 2.0;  // recorded for provenance; folded into a and b

    int coop_order = 3;
    int users = 3;
    double threshold_t = 1.0;  // b/s/Hz per user
    double target_rcp = 0.7;

    long trials = 100'000;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string output_path;
    Engine engine = Engine::analytic;

    PlannerOptions planner;

    double curve_density_min = 1e-6;
    double curve_density_max = 2e-5;
    int curve_points = 39;
    std::vector<int> curve_antennas{1, 2, 4};

    std::optional<double> contour_spacing_m;  // unset: the planned spacing
    std::optional<double> contour_pitch_m;    // unset: spacing / 100

    // Applies one `key = value` setting; `where` prefixes error messages.
    void set(const std::string& key, const std::string& value, const std::string& where = "");

    // Throws ConfigError naming the offending key.
    void validate() const;

    // Effective settings in a fixed order, as `key = value` pairs. Thread
    // count and output path are excluded because they never change results.
    std::vector<std::pair<std::string, std::string>> entries() const;

    PlanQuery plan_query() const;
};

RunConfig load_config(std::istream& in, const std::string& source_name);
RunConfig load_config_file(const std::string& path);

const char* to_string(Engine engine);

}  // namespace compplan::cli
