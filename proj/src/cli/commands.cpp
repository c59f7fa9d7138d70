#include "feedcool/cli/commands.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "feedcool/errors.hpp"
#include "feedcool/occupancy.hpp"
#include "feedcool/optimizer.hpp"
#include "feedcool/stability.hpp"

namespace feedcool::cli {

namespace {

const std::vector<std::string> breakdown_columns{"n_th", "n_ba", "n_fb", "n_co", "n_v", "n_tot"};

void append_breakdown(std::vector<double>& row, const OccupancyBreakdown& b) {
    row.insert(row.end(), {b.n_th, b.n_ba, b.n_fb, b.n_co, b.n_v, b.n_tot});
}

std::vector<std::string> suffixed(std::vector<std::string> cols, const std::string& suffix) {
    for (auto& c : cols) c += suffix;
    return cols;
}

OptimizerOptions optimizer_options(const RunConfig& cfg) {
    OptimizerOptions o;
    o.path = cfg.path;
    o.threads = default_thread_count();
    return o;
}

// Stability is required on every emitted row so rows never describe a diverging loop.
double checked_margin(const SystemParams& sys, const FeedbackParams& fb) {
    stability::require_stable(sys, fb);
    return stability::routh_hurwitz_margin(sys, fb);
}

Table fixed_point_rows(const RunConfig& cfg, const std::string& axis) {
    Table t;
    t.columns = {axis == "theta" ? "theta_deg" : "alpha"};
    if (axis == "alpha") t.columns.push_back("theta_deg");
    t.columns.insert(t.columns.end(), breakdown_columns.begin(), breakdown_columns.end());
    t.columns.push_back("rh_margin");
    for (double v : axis_grid(cfg.sweep)) {
        FeedbackParams fb;
        if (axis == "theta") {
            fb = {cfg.feedback.sigma, cfg.feedback.alpha, v == 90.0 ? half_pi : degrees_to_radians(v)};
        } else {
            fb = cfg.resolved_feedback(cfg.feedback.sigma, v);
        }
        const double margin = checked_margin(cfg.system, fb);
        std::vector<double> row{v};
        if (axis == "alpha") row.push_back(radians_to_degrees(fb.theta));
        append_breakdown(row, evaluate_occupancy(cfg.system, fb, cfg.path));
        row.push_back(margin);
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table optimized_sweep(const RunConfig& cfg) {
    const bool by_sigma = cfg.sweep.axis == "sigma";
    const auto grid = axis_grid(cfg.sweep);
    const OptimizerOptions opts = optimizer_options(cfg);
    const SweepTable st = by_sigma ? sweep_sigma(cfg.system, grid, opts) : sweep_cq(cfg.system, grid, opts);

    const bool want_opt = cfg.sweep.theta_mode != ModeSelection::phase_quadrature;
    const bool want_pi2 = cfg.sweep.theta_mode != ModeSelection::optimal;
    auto group_columns = [&](const std::string& suffix, bool with_theta) {
        std::vector<std::string> cols;
        if (!by_sigma) cols.push_back("sigma_opt");
        cols.push_back("alpha_opt");
        if (with_theta) cols.push_back("theta_opt_deg");
        cols.insert(cols.end(), breakdown_columns.begin(), breakdown_columns.end());
        cols.push_back("rh_margin");
        return suffixed(cols, suffix);
    };
    auto group_values = [&](std::vector<double>& row, const OptimumRecord& r, bool with_theta) {
        if (!by_sigma) row.push_back(r.fb.sigma);
        row.push_back(r.fb.alpha);
        if (with_theta) row.push_back(radians_to_degrees(r.fb.theta));
        append_breakdown(row, r.breakdown);
        row.push_back(r.rh_margin);
    };

    Table t;
    t.columns = {by_sigma ? "sigma" : "c_q"};
    if (want_opt) {
        auto c = group_columns("", true);
        t.columns.insert(t.columns.end(), c.begin(), c.end());
    }
    if (want_pi2) {
        auto c = group_columns("_pi2", false);
        t.columns.insert(t.columns.end(), c.begin(), c.end());
    }
    for (const auto& r : st.rows) {
        std::vector<double> row{r.axis_value};
        if (want_opt) group_values(row, r.optimized, true);
        if (want_pi2) group_values(row, r.phase_quadrature, false);
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace

Table occupancy_table(const RunConfig& cfg) {
    const FeedbackParams fb = cfg.resolved_feedback();
    const double margin = checked_margin(cfg.system, fb);
    const OccupancyBreakdown b = evaluate_occupancy(cfg.system, fb, cfg.path);
    Table t;
    t.columns = {"sigma", "alpha", "theta_deg"};
    t.columns.insert(t.columns.end(), breakdown_columns.begin(), breakdown_columns.end());
    t.columns.insert(t.columns.end(), {"n_x", "n_p", "rh_margin"});
    std::vector<double> row{fb.sigma, fb.alpha, radians_to_degrees(fb.theta)};
    append_breakdown(row, b);
    row.insert(row.end(), {b.n_x(), b.n_p(), margin});
    t.rows.push_back(std::move(row));
    return t;
}

Table sweep_table(const RunConfig& cfg) {
    const std::string& axis = cfg.sweep.axis;
    if (axis == "sigma" || axis == "cq") return optimized_sweep(cfg);
    if (axis == "omega") return spectra_table(cfg);
    return fixed_point_rows(cfg, axis);
}

Table spectra_table(const RunConfig& cfg) {
    if (cfg.sweep.axis != "omega") throw ConfigError("sweep.axis: spectra needs the omega axis");
    const FeedbackParams fb = cfg.resolved_feedback();
    stability::require_stable(cfg.system, fb);
    Table t;
    t.columns = {"omega", "s_x", "s_p", "s_x_th", "s_x_ba", "s_x_fb", "s_x_co", "s_x_v"};
    for (double w : axis_grid(cfg.sweep)) {
        const SpectrumPoint p = spectra_pointwise(w, cfg.system, fb);
        const auto& s = p.s_x_by_source;
        t.rows.push_back({w, p.s_x, p.s_p, s.s_th, s.s_ba, s.s_fb, s.s_co, s.s_v});
    }
    return t;
}

Table optimize_table(const RunConfig& cfg) {
    ThetaMode mode = ThetaMode::optimal;
    if (!cfg.theta_opt) {
        if (cfg.feedback.theta != half_pi) throw ConfigError("--theta: optimize supports opt or deg:90");
        mode = ThetaMode::phase_quadrature;
    }
    const OptimumRecord r = optimize_joint(cfg.system, mode, optimizer_options(cfg));
    Table t;
    t.columns = {"sigma", "alpha", "theta_deg"};
    t.columns.insert(t.columns.end(), breakdown_columns.begin(), breakdown_columns.end());
    t.columns.insert(t.columns.end(), {"n_x", "n_p", "rh_margin"});
    std::vector<double> row{r.fb.sigma, r.fb.alpha, radians_to_degrees(r.fb.theta)};
    append_breakdown(row, r.breakdown);
    row.insert(row.end(), {r.breakdown.n_x(), r.breakdown.n_p(), r.rh_margin});
    t.rows.push_back(std::move(row));
    return t;
}

void print_selfcheck(const std::vector<CheckResult>& results, std::ostream& out) {
    std::ostringstream s;
    s << std::left << std::setw(30) << "check" << std::setw(6) << "ok" << std::setw(13) << "worst"
      << std::setw(11) << "tolerance" << "detail\n";
    for (const auto& r : results) {
        char worst[32], tol[32];
        std::snprintf(worst, sizeof worst, "%.3e", r.worst);
        std::snprintf(tol, sizeof tol, "%.0e", r.tolerance);
        s << std::setw(30) << r.name << std::setw(6) << (r.passed ? "PASS" : "FAIL") << std::setw(13) << worst
          << std::setw(11) << tol << r.detail << '\n';
    }
    s << (all_passed(results) ? "selfcheck: all checks passed\n" : "selfcheck: FAILED\n");
    out << s.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"feedcool: steady-state occupancy of a feedback-cooled oscillator under variational readout"};
    app.require_subcommand(1);

    Overrides ov;
    std::string mutate = "none";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option_function<std::string>("--config", [&](const std::string& v) { ov.config_path = v; },
                                              "JSON configuration file");
        sub->add_option_function<std::string>("--theta", [&](const std::string& v) { ov.theta = v; },
                                              "opt or deg:<x>");
        sub->add_option_function<std::string>("--format", [&](const std::string& v) { ov.format = v; }, "csv or json");
        sub->add_option_function<std::string>("--out", [&](const std::string& v) { ov.out = v; },
                                              "output file (default stdout)");
        sub->add_option_function<int>("--precision", [&](const int& v) { ov.precision = v; },
                                      "significant digits (default 12)");
        sub->add_option_function<double>("--q-m", [&](const double& v) { ov.q_m = v; }, "mechanical quality factor");
        sub->add_option_function<double>("--beta", [&](const double& v) { ov.beta = v; }, "2 omega_m / kappa");
        sub->add_option_function<double>("--c-cl", [&](const double& v) { ov.c_cl = v; }, "classical cooperativity");
        sub->add_option_function<double>("--c-q", [&](const double& v) { ov.c_q = v; },
                                         "quantum cooperativity (c_cl = c_q * n_bar)");
        sub->add_option_function<double>("--n-bar", [&](const double& v) { ov.n_bar = v; }, "thermal occupancy");
        sub->add_option_function<double>("--eta", [&](const double& v) { ov.eta = v; }, "detection efficiency");
        sub->add_option_function<double>("--sigma", [&](const double& v) { ov.sigma = v; }, "rescaled feedback gain");
        sub->add_option_function<double>("--alpha", [&](const double& v) { ov.alpha = v; },
                                         "filter cutoff / omega_m");
        sub->add_option_function<std::string>("--path", [&](const std::string& v) { ov.path = v; },
                                              "auto, bad-cavity, exact or numeric");
    };
    auto add_range = [&](CLI::App* sub, bool with_axis) {
        if (with_axis)
            sub->add_option_function<std::string>("--axis", [&](const std::string& v) { ov.axis = v; },
                                                  "sigma, cq, theta, alpha or omega");
        sub->add_option_function<double>("--from", [&](const double& v) { ov.from = v; }, "axis start");
        sub->add_option_function<double>("--to", [&](const double& v) { ov.to = v; }, "axis end");
        sub->add_option_function<int>("--points", [&](const int& v) { ov.points = v; }, "number of axis points");
        sub->add_option_function<std::string>("--spacing", [&](const std::string& v) { ov.spacing = v; },
                                              "log or linear");
        sub->add_option_function<std::string>("--theta-mode", [&](const std::string& v) { ov.theta_mode = v; },
                                              "both, opt or pi/2");
    };

    auto* occ = app.add_subcommand("occupancy", "occupancy breakdown at one configuration");
    add_common(occ);
    auto* sweep = app.add_subcommand("sweep", "optimized or direct sweep along one axis");
    add_common(sweep);
    add_range(sweep, true);
    auto* spectra = app.add_subcommand("spectra", "position and momentum spectra on an omega grid");
    add_common(spectra);
    add_range(spectra, false);
    auto* optimize = app.add_subcommand("optimize", "joint (sigma, alpha) optimum");
    add_common(optimize);
    auto* selfcheck = app.add_subcommand("selfcheck", "cross-path agreement suite");
    selfcheck->add_option("--mutate", mutate)->check(CLI::IsMember({"none", "sign-flip", "s-m"}))->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::config;
    }

    try {
        if (selfcheck->parsed()) {
            const Mutation m = mutate == "sign-flip" ? Mutation::sign_flip
                               : mutate == "s-m"     ? Mutation::s_m_shift
                                                     : Mutation::none;
            const auto results = run_selfcheck(make_hooks(m));
            print_selfcheck(results, out);
            return all_passed(results) ? exit_code::ok : exit_code::selfcheck;
        }
        const bool is_spectra = spectra->parsed();
        const RunConfig cfg = load_config(ov, is_spectra ? "omega" : "sigma");
        if (occ->parsed()) emit("occupancy", cfg, occupancy_table(cfg), out);
        if (sweep->parsed()) emit("sweep", cfg, sweep_table(cfg), out);
        if (is_spectra) emit("spectra", cfg, spectra_table(cfg), out);
        if (optimize->parsed()) emit("optimize", cfg, optimize_table(cfg), out);
        return exit_code::ok;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config;
    } catch (const ParameterError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config;
    } catch (const InstabilityError& e) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6e", e.margin());
        err << "unstable: margin = " << buf << ": " << e.what() << '\n';
        return exit_code::instability;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::config;
    }
}

}  // namespace feedcool::cli
