#pragma once

// Run configuration: a JSON file (system / feedback / sweep / output blocks)
// plus command-line overrides. Flags win over the file. Angles are degrees
// here and radians everywhere past this layer.

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "feedcool/optimizer.hpp"
#include "feedcool/params.hpp"

namespace feedcool::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { csv, json };
enum class Spacing { log, linear };

// Which theta-mode column groups a sigma / c_q sweep emits.
enum class ModeSelection { both, optimal, phase_quadrature };

struct SweepConfig {
    std::string axis{"sigma"};  // sigma | cq | theta | alpha | omega
    double from{1e1};
    double to{1e7};
    int points{200};
    Spacing spacing{Spacing::log};
    ModeSelection theta_mode{ModeSelection::both};
};

struct OutputConfig {
    Format format{Format::csv};
    std::string path;  // empty: stdout
    int precision{12};
};

struct RunConfig {
    SystemParams system;              // c_cl already resolved from c_q when given
    std::optional<double> c_q_input;  // as supplied, for the record
    FeedbackParams feedback{3e5, 1.5, half_pi};
    bool theta_opt{true};             // theta follows the optimal-angle formula
    SweepConfig sweep;
    OutputConfig output;
    OccupancyPath path{OccupancyPath::automatic};

    // Feedback with theta resolved (formula or fixed angle).
    FeedbackParams resolved_feedback() const;
    FeedbackParams resolved_feedback(double sigma, double alpha) const;
};

// Values given on the command line; unset fields leave the file/default value.
struct Overrides {
    std::optional<std::string> config_path;
    std::optional<std::string> axis;
    std::optional<double> from, to;
    std::optional<int> points;
    std::optional<std::string> spacing;
    std::optional<std::string> theta_mode;
    std::optional<std::string> theta;
    std::optional<std::string> format;
    std::optional<std::string> out;
    std::optional<int> precision;
    std::optional<double> q_m, beta, c_cl, c_q, n_bar, eta;
    std::optional<double> sigma, alpha;
    std::optional<std::string> path;
};

// Parses the JSON document (may be null for defaults) and applies overrides.
// Throws ConfigError naming the offending field.
RunConfig resolve_config(const nlohmann::json& doc, const Overrides& ov = {},
                         const std::string& default_axis = "sigma");

// Reads ov.config_path when set.
RunConfig load_config(const Overrides& ov, const std::string& default_axis = "sigma");

// Fully resolved configuration, recorded in output metadata.
nlohmann::json to_json(const RunConfig& cfg);

std::string to_string(Spacing s);
std::string to_string(ModeSelection m);

std::vector<double> axis_grid(const SweepConfig& sweep);

}  // namespace feedcool::cli
