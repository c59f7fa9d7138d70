#include "feedcool/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "feedcool/errors.hpp"
#include "feedcool/occupancy.hpp"

namespace feedcool::cli {

using nlohmann::json;

namespace {

struct AxisDefaults {
    double from, to;
    int points;
    Spacing spacing;
};

AxisDefaults defaults_for(const std::string& axis) {
    if (axis == "sigma") return {1e1, 1e7, 200, Spacing::log};
    if (axis == "cq") return {1e-2, 1e4, 61, Spacing::log};
    if (axis == "theta") return {1.0, 90.0, 90, Spacing::linear};
    if (axis == "alpha") return {1e-3, 1e3, 200, Spacing::log};
    if (axis == "omega") return {0.0, 5.0, 2001, Spacing::linear};
    throw ConfigError("sweep.axis: expected one of sigma, cq, theta, alpha, omega (got '" + axis + "')");
}

void reject_unknown(const json& block, const std::string& name, std::initializer_list<const char*> allowed) {
    if (!block.is_object()) throw ConfigError(name + ": expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = block.begin(); it != block.end(); ++it)
        if (!ok.count(it.key())) throw ConfigError(name + "." + it.key() + ": unknown field");
}

std::optional<double> number_field(const json& block, const std::string& block_name, const char* key) {
    if (!block.contains(key)) return std::nullopt;
    const json& v = block.at(key);
    if (!v.is_number()) throw ConfigError(block_name + "." + key + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(block_name + "." + key + ": must be finite");
    return d;
}

std::optional<std::string> string_field(const json& block, const std::string& block_name, const char* key) {
    if (!block.contains(key)) return std::nullopt;
    const json& v = block.at(key);
    if (!v.is_string()) throw ConfigError(block_name + "." + key + ": expected a string");
    return v.get<std::string>();
}

std::optional<int> int_field(const json& block, const std::string& block_name, const char* key) {
    if (!block.contains(key)) return std::nullopt;
    const json& v = block.at(key);
    if (!v.is_number_integer()) throw ConfigError(block_name + "." + key + ": expected an integer");
    return v.get<int>();
}

template <typename T>
void take(std::optional<T>& slot, const std::optional<T>& flag) {
    if (flag) slot = flag;
}

Spacing parse_spacing(const std::string& s, const std::string& field) {
    if (s == "log") return Spacing::log;
    if (s == "linear") return Spacing::linear;
    throw ConfigError(field + ": expected log or linear (got '" + s + "')");
}

ModeSelection parse_mode(const std::string& s, const std::string& field) {
    if (s == "both") return ModeSelection::both;
    if (s == "opt") return ModeSelection::optimal;
    if (s == "pi/2") return ModeSelection::phase_quadrature;
    throw ConfigError(field + ": expected both, opt or pi/2 (got '" + s + "')");
}

Format parse_format(const std::string& s, const std::string& field) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw ConfigError(field + ": expected csv or json (got '" + s + "')");
}

OccupancyPath parse_path(const std::string& s, const std::string& field) {
    if (s == "auto") return OccupancyPath::automatic;
    if (s == "bad-cavity") return OccupancyPath::bad_cavity;
    if (s == "exact") return OccupancyPath::exact;
    if (s == "numeric") return OccupancyPath::numeric;
    throw ConfigError(field + ": expected auto, bad-cavity, exact or numeric (got '" + s + "')");
}

// "opt" or degrees, from the file (number or "opt") or the flag ("opt" | "deg:<x>").
std::optional<double> parse_theta_flag(const std::string& s) {
    if (s == "opt") return std::nullopt;
    if (s.rfind("deg:", 0) == 0) {
        const std::string num = s.substr(4);
        std::size_t used = 0;
        double d = 0.0;
        try {
            d = std::stod(num, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != num.size() || !std::isfinite(d))
            throw ConfigError("--theta: expected opt or deg:<x> (got '" + s + "')");
        return d;
    }
    throw ConfigError("--theta: expected opt or deg:<x> (got '" + s + "')");
}

}  // namespace

FeedbackParams RunConfig::resolved_feedback() const { return resolved_feedback(feedback.sigma, feedback.alpha); }

FeedbackParams RunConfig::resolved_feedback(double sigma, double alpha) const {
    FeedbackParams fb{sigma, alpha, feedback.theta};
    if (theta_opt) fb.theta = feedcool::theta_opt(system, sigma, alpha);
    return fb;
}

RunConfig resolve_config(const json& doc, const Overrides& ov, const std::string& default_axis) {
    RunConfig cfg;
    const json empty = json::object();
    const json& root = doc.is_null() ? empty : doc;
    reject_unknown(root, "config", {"system", "feedback", "sweep", "output", "path"});

    // system
    std::optional<double> q_m, beta, c_cl, c_q, n_bar, eta;
    if (root.contains("system")) {
        const json& s = root.at("system");
        reject_unknown(s, "system", {"q_m", "beta", "c_cl", "c_q", "n_bar", "eta"});
        q_m = number_field(s, "system", "q_m");
        beta = number_field(s, "system", "beta");
        c_cl = number_field(s, "system", "c_cl");
        c_q = number_field(s, "system", "c_q");
        n_bar = number_field(s, "system", "n_bar");
        eta = number_field(s, "system", "eta");
        if (c_cl && c_q) throw ConfigError("system.c_q: cannot be combined with system.c_cl; give exactly one");
    }
    if (ov.c_cl && ov.c_q) throw ConfigError("--c-q: cannot be combined with --c-cl; give exactly one");
    if (ov.c_cl) c_q.reset();
    if (ov.c_q) c_cl.reset();
    take(q_m, ov.q_m);
    take(beta, ov.beta);
    take(c_cl, ov.c_cl);
    take(c_q, ov.c_q);
    take(n_bar, ov.n_bar);
    take(eta, ov.eta);
    if (q_m) cfg.system.q_m = *q_m;
    if (beta) cfg.system.beta = *beta;
    if (n_bar) cfg.system.n_bar = *n_bar;
    if (eta) cfg.system.eta = *eta;
    if (c_cl) cfg.system.c_cl = *c_cl;
    if (c_q) {
        if (!(cfg.system.n_bar > 0.0)) throw ConfigError("system.c_q: requires system.n_bar > 0");
        if (!(*c_q >= 0.0)) throw ConfigError("system.c_q: must be >= 0");
        cfg.system.c_cl = *c_q * cfg.system.n_bar;
        cfg.c_q_input = *c_q;
    }
    try {
        cfg.system.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("system: ") + e.what());
    }

    // feedback
    std::optional<double> sigma, alpha, theta_deg;
    bool theta_is_opt = cfg.theta_opt;
    if (root.contains("feedback")) {
        const json& f = root.at("feedback");
        reject_unknown(f, "feedback", {"sigma", "alpha", "theta"});
        sigma = number_field(f, "feedback", "sigma");
        alpha = number_field(f, "feedback", "alpha");
        if (f.contains("theta")) {
            const json& t = f.at("theta");
            if (t.is_string() && t.get<std::string>() == "opt") {
                theta_is_opt = true;
            } else if (t.is_number()) {
                theta_is_opt = false;
                theta_deg = t.get<double>();
            } else {
                throw ConfigError("feedback.theta: expected \"opt\" or an angle in degrees");
            }
        }
    }
    take(sigma, ov.sigma);
    take(alpha, ov.alpha);
    if (ov.theta) {
        theta_deg = parse_theta_flag(*ov.theta);
        theta_is_opt = !theta_deg;
    }
    if (sigma) cfg.feedback.sigma = *sigma;
    if (alpha) cfg.feedback.alpha = *alpha;
    cfg.theta_opt = theta_is_opt;
    if (!theta_is_opt) {
        if (theta_deg) cfg.feedback.theta = degrees_to_radians(*theta_deg);
        if (theta_deg && *theta_deg == 90.0) cfg.feedback.theta = half_pi;
    }
    try {
        cfg.resolved_feedback().validate();
        validate_pair(cfg.system, cfg.resolved_feedback());
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("feedback: ") + e.what());
    }

    // sweep
    std::optional<std::string> axis, spacing, theta_mode;
    std::optional<double> from, to;
    std::optional<int> points;
    if (root.contains("sweep")) {
        const json& s = root.at("sweep");
        reject_unknown(s, "sweep", {"axis", "from", "to", "points", "spacing", "theta_mode"});
        axis = string_field(s, "sweep", "axis");
        from = number_field(s, "sweep", "from");
        to = number_field(s, "sweep", "to");
        points = int_field(s, "sweep", "points");
        spacing = string_field(s, "sweep", "spacing");
        theta_mode = string_field(s, "sweep", "theta_mode");
    }
    take(axis, ov.axis);
    take(from, ov.from);
    take(to, ov.to);
    take(points, ov.points);
    take(spacing, ov.spacing);
    take(theta_mode, ov.theta_mode);
    cfg.sweep.axis = axis.value_or(default_axis);
    const AxisDefaults d = defaults_for(cfg.sweep.axis);
    cfg.sweep.from = from.value_or(d.from);
    cfg.sweep.to = to.value_or(d.to);
    cfg.sweep.points = points.value_or(d.points);
    cfg.sweep.spacing = spacing ? parse_spacing(*spacing, "sweep.spacing") : d.spacing;
    cfg.sweep.theta_mode = theta_mode ? parse_mode(*theta_mode, "sweep.theta_mode") : ModeSelection::both;
    if (cfg.sweep.points < 2) throw ConfigError("sweep.points: must be >= 2");
    if (!(cfg.sweep.to > cfg.sweep.from)) throw ConfigError("sweep.to: must exceed sweep.from");
    if (cfg.sweep.spacing == Spacing::log && !(cfg.sweep.from > 0.0))
        throw ConfigError("sweep.from: log spacing needs a positive lower bound");
    if (cfg.sweep.axis == "theta" && !(cfg.sweep.from > 0.0 && cfg.sweep.to <= 90.0))
        throw ConfigError("sweep.from: theta range must lie in (0, 90] degrees");
    if ((cfg.sweep.axis == "sigma" || cfg.sweep.axis == "cq") && cfg.sweep.from < 0.0)
        throw ConfigError("sweep.from: must be >= 0 on this axis");
    if (cfg.sweep.axis == "alpha" && !(cfg.sweep.from > 0.0))
        throw ConfigError("sweep.from: alpha must be positive");

    // output
    std::optional<std::string> format, out_path;
    std::optional<int> precision;
    if (root.contains("output")) {
        const json& o = root.at("output");
        reject_unknown(o, "output", {"format", "path", "precision"});
        format = string_field(o, "output", "format");
        out_path = string_field(o, "output", "path");
        precision = int_field(o, "output", "precision");
    }
    take(format, ov.format);
    take(out_path, ov.out);
    take(precision, ov.precision);
    cfg.output.format = format ? parse_format(*format, "output.format") : Format::csv;
    cfg.output.path = out_path.value_or("");
    cfg.output.precision = precision.value_or(12);
    if (cfg.output.precision < 1 || cfg.output.precision > 17)
        throw ConfigError("output.precision: must be between 1 and 17");

    std::optional<std::string> path = root.contains("path") ? string_field(root, "config", "path") : std::nullopt;
    take(path, ov.path);
    cfg.path = path ? parse_path(*path, "path") : OccupancyPath::automatic;
    if (cfg.path == OccupancyPath::bad_cavity && cfg.system.beta != 0.0)
        throw ConfigError("path: bad-cavity requires system.beta == 0");
    return cfg;
}

RunConfig load_config(const Overrides& ov, const std::string& default_axis) {
    json doc;
    if (ov.config_path) {
        std::ifstream in(*ov.config_path);
        if (!in) throw ConfigError("--config: cannot read '" + *ov.config_path + "'");
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError("--config: invalid JSON: " + std::string(e.what()));
        }
    }
    return resolve_config(doc, ov, default_axis);
}

std::string to_string(Spacing s) { return s == Spacing::log ? "log" : "linear"; }

std::string to_string(ModeSelection m) {
    switch (m) {
        case ModeSelection::optimal: return "opt";
        case ModeSelection::phase_quadrature: return "pi/2";
        default: return "both";
    }
}

json to_json(const RunConfig& cfg) {
    json sys = {{"q_m", cfg.system.q_m},
                {"beta", cfg.system.beta},
                {"c_cl", cfg.system.c_cl},
                {"n_bar", cfg.system.n_bar},
                {"eta", cfg.system.eta}};
    if (cfg.c_q_input) sys["c_q"] = *cfg.c_q_input;
    json fb = {{"sigma", cfg.feedback.sigma}, {"alpha", cfg.feedback.alpha}};
    if (cfg.theta_opt)
        fb["theta"] = "opt";
    else
        fb["theta"] = radians_to_degrees(cfg.feedback.theta);
    return {{"system", sys},
            {"feedback", fb},
            {"sweep",
             {{"axis", cfg.sweep.axis},
              {"from", cfg.sweep.from},
              {"to", cfg.sweep.to},
              {"points", cfg.sweep.points},
              {"spacing", to_string(cfg.sweep.spacing)},
              {"theta_mode", to_string(cfg.sweep.theta_mode)}}},
            {"output",
             {{"format", cfg.output.format == Format::csv ? "csv" : "json"},
              {"path", cfg.output.path},
              {"precision", cfg.output.precision}}},
            {"path", to_string(cfg.path)}};
}

std::vector<double> axis_grid(const SweepConfig& sweep) {
    return sweep.spacing == Spacing::log ? log_grid(sweep.from, sweep.to, sweep.points)
                                         : linear_grid(sweep.from, sweep.to, sweep.points);
}

}  // namespace feedcool::cli
