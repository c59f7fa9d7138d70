#include "feedcool/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <thread>

#include "feedcool/errors.hpp"
#include "feedcool/golden_section.hpp"
#include "feedcool/stability.hpp"

namespace feedcool {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double theta_for(ThetaMode mode, const SystemParams& sys, double sigma, double alpha) {
    return mode == ThetaMode::optimal ? theta_opt(sys, sigma, alpha) : half_pi;
}

struct Objective {
    const SystemParams& sys;
    ThetaMode mode;
    OccupancyPath path;  // resolved

    FeedbackParams params(double sigma, double alpha) const {
        return {sigma, alpha, theta_for(mode, sys, sigma, alpha)};
    }

    double operator()(double sigma, double alpha) const {
        const FeedbackParams fb = params(sigma, alpha);
        if (path != OccupancyPath::bad_cavity && !stability::assess(sys, fb).feasible()) return inf;
        const double n = evaluate_occupancy(sys, fb, path).n_tot;
        return std::isfinite(n) ? n : inf;
    }
};

// Grid scan over log(x), then golden section between the neighbours of the
// best grid point. Returns the minimizer in x.
template <typename F>
ScalarMinimum log_minimize(F&& f, const GridSearch& g) {
    if (!(g.lo > 0.0 && g.hi > g.lo && g.points >= 2))
        throw ParameterError("grid search needs 0 < lo < hi and at least two points");
    const double llo = std::log(g.lo);
    const double step = (std::log(g.hi) - llo) / (g.points - 1);
    auto at = [&](int i) { return i == g.points - 1 ? std::log(g.hi) : llo + step * i; };

    int best = -1;
    double best_f = inf;
    for (int i = 0; i < g.points; ++i) {
        const double v = f(std::exp(at(i)));
        if (v < best_f) {
            best_f = v;
            best = i;
        }
    }
    if (best < 0) throw InstabilityError("optimizer: no feasible grid point", 0.0);

    const double lo = at(std::max(best - 1, 0));
    const double hi = at(std::min(best + 1, g.points - 1));
    const ScalarMinimum refined =
        golden_section_minimize([&](double lx) { return f(std::exp(lx)); }, lo, hi, g.rel_tol);
    if (refined.f < best_f) return {std::exp(refined.x), refined.f};
    return {std::exp(at(best)), best_f};
}

OptimumRecord make_record(const SystemParams& sys, const Objective& obj, double sigma, double alpha,
                          bool sigma_free) {
    OptimumRecord rec;
    rec.fb = obj.params(sigma, alpha);
    rec.breakdown = evaluate_occupancy(sys, rec.fb, obj.path);
    rec.n_tot = rec.breakdown.n_tot;
    rec.mode = obj.mode;
    rec.sigma_free = sigma_free;
    rec.rh_margin = stability::routh_hurwitz_margin(sys, rec.fb);
    return rec;
}

// Evaluates fn(i) for i in [0, n) on up to `threads` workers; output in index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, unsigned threads, Fn&& fn) {
    std::vector<T> out(n);
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace

std::string to_string(ThetaMode m) { return m == ThetaMode::optimal ? "opt" : "pi/2"; }

std::string to_string(OccupancyPath p) {
    switch (p) {
        case OccupancyPath::automatic: return "auto";
        case OccupancyPath::bad_cavity: return "bad-cavity";
        case OccupancyPath::exact: return "exact";
        case OccupancyPath::numeric: return "numeric";
    }
    return "auto";
}

OccupancyPath resolve_path(const SystemParams& sys, OccupancyPath p) {
    if (p == OccupancyPath::automatic) return sys.beta == 0.0 ? OccupancyPath::bad_cavity : OccupancyPath::exact;
    if (p == OccupancyPath::bad_cavity && sys.beta != 0.0)
        throw ParameterError("the bad-cavity path requires beta == 0");
    return p;
}

OccupancyBreakdown evaluate_occupancy(const SystemParams& sys, const FeedbackParams& fb, OccupancyPath path) {
    switch (resolve_path(sys, path)) {
        case OccupancyPath::bad_cavity: return occupancy_bad_cavity(sys, fb);
        case OccupancyPath::numeric: return occupancy_numeric(sys, fb);
        default: return occupancy_exact(sys, fb);
    }
}

OptimumRecord optimize_alpha(const SystemParams& sys, double sigma, ThetaMode mode, const OptimizerOptions& opts) {
    if (!(sigma >= 0.0)) throw ParameterError("optimize_alpha: sigma must be >= 0");
    const Objective obj{sys, mode, resolve_path(sys, opts.path)};
    const ScalarMinimum best = log_minimize([&](double alpha) { return obj(sigma, alpha); }, opts.alpha);
    return make_record(sys, obj, sigma, best.x, false);
}

OptimumRecord optimize_joint(const SystemParams& sys, ThetaMode mode, const OptimizerOptions& opts) {
    const Objective obj{sys, mode, resolve_path(sys, opts.path)};
    auto inner = [&](double sigma) {
        return log_minimize([&](double alpha) { return obj(sigma, alpha); }, opts.alpha);
    };
    ScalarMinimum outer = log_minimize([&](double sigma) { return inner(sigma).f; }, opts.sigma);

    // Coarse 2-D pass; if some grid cell beats the nested result, refine from there.
    if (opts.sanity_points >= 2) {
        const auto sg = log_grid(opts.sigma.lo, opts.sigma.hi, opts.sanity_points);
        const auto ag = log_grid(opts.alpha.lo, opts.alpha.hi, opts.sanity_points);
        double coarse_best = inf;
        std::size_t coarse_i = 0;
        for (std::size_t i = 0; i < sg.size(); ++i)
            for (double a : ag) {
                const double v = obj(sg[i], a);
                if (v < coarse_best) {
                    coarse_best = v;
                    coarse_i = i;
                }
            }
        if (coarse_best < outer.f) {
            const double lo = std::log(sg[coarse_i > 0 ? coarse_i - 1 : 0]);
            const double hi = std::log(sg[std::min(coarse_i + 1, sg.size() - 1)]);
            const ScalarMinimum local = golden_section_minimize(
                [&](double ls) { return inner(std::exp(ls)).f; }, lo, hi, opts.sigma.rel_tol);
            if (local.f < outer.f) outer = {std::exp(local.x), local.f};
        }
    }
    return make_record(sys, obj, outer.x, inner(outer.x).x, true);
}

SweepTable sweep_sigma(const SystemParams& sys, const std::vector<double>& sigma_grid, const OptimizerOptions& opts) {
    if (sigma_grid.empty()) throw ParameterError("sweep_sigma: empty grid");
    SweepTable table{"sigma", {}};
    table.rows = parallel_map<SweepRow>(sigma_grid.size(), opts.threads, [&](std::size_t i) {
        const double s = sigma_grid[i];
        return SweepRow{s, optimize_alpha(sys, s, ThetaMode::optimal, opts),
                        optimize_alpha(sys, s, ThetaMode::phase_quadrature, opts)};
    });
    return table;
}

SweepTable sweep_cq(const SystemParams& sys_template, const std::vector<double>& cq_grid,
                    const OptimizerOptions& opts) {
    if (cq_grid.empty()) throw ParameterError("sweep_cq: empty grid");
    SweepTable table{"c_q", {}};
    table.rows = parallel_map<SweepRow>(cq_grid.size(), opts.threads, [&](std::size_t i) {
        SystemParams sys = sys_template;
        sys.c_cl = cq_grid[i] * sys.n_bar;
        sys.validate();
        return SweepRow{cq_grid[i], optimize_joint(sys, ThetaMode::optimal, opts),
                        optimize_joint(sys, ThetaMode::phase_quadrature, opts)};
    });
    return table;
}

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0 && hi >= lo && points >= 1)) throw ParameterError("log_grid: need 0 < lo <= hi");
    if (points == 1) return {lo};
    std::vector<double> g(static_cast<std::size_t>(points));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / (points - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    if (!(hi >= lo && points >= 1)) throw ParameterError("linear_grid: need lo <= hi");
    if (points == 1) return {lo};
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    g.back() = hi;
    return g;
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("FEEDCOOL_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace feedcool
