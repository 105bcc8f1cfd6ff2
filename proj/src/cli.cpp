#include "critcouple/cli.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "critcouple/algebraic.hpp"
#include "critcouple/coupling.hpp"
#include "critcouple/exponents.hpp"
#include "critcouple/gagliardo.hpp"
#include "critcouple/io.hpp"
#include "critcouple/verify.hpp"

namespace critcouple::cli {

namespace {

namespace fs = std::filesystem;
using io::format_real;

/// Raised for problems the user can fix by changing flags or the config file.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flag values as text, keyed by config key, plus which boolean switches were given.
struct FlagSet {
    std::string config_path;
    std::map<std::string, std::string> values;
    bool symmetrize = false;
    bool no_tails = false;
};

void add_common(CLI::App* sub, FlagSet& f) {
    sub->add_option("--config", f.config_path, "key=value config file; flags override its entries");
    const std::pair<const char*, const char*> opts[] = {
        {"params", "exponents as \"N,s,p,alpha\" (beta = p* - alpha)"},
        {"gamma", "coupling strength"},
        {"grid-n", "lattice cells (default 128)"},
        {"half-width", "lattice half width L (default 20)"},
        {"tol", "optimizer relative-decrease tolerance (default 1e-10)"},
        {"max-iter", "optimizer iteration cap (default 20000)"},
        {"seed", "seed for random initial guesses and sampled checks"},
        {"out", "directory for CSV, SVG and JSON outputs"},
        {"mask-radius", "pin lattice cells with |x| >= R to zero"},
        {"eps-shift", "exponent shift epsilon of the perturbed system"},
        {"filter", "verify: comma-separated check or module names"},
        {"gamma-grid", "continue: increasing comma-separated gamma values"},
        {"S", "scalar constant used for the least energy"},
        {"golden", "verify: reference table for the coupling golden check"},
    };
    for (const auto& [name, help] : opts) {
        std::string key = name;
        for (auto& ch : key)
            if (ch == '-') ch = '_';
        sub->add_option(std::string("--") + name, f.values[key], help);
    }
    sub->add_flag("--symmetrize", f.symmetrize, "project iterates onto symmetric nonincreasing profiles");
    sub->add_flag("--no-tails", f.no_tails, "drop the exterior interaction weights");
}

io::RunConfig build_config(const CLI::App* sub, const FlagSet& f) {
    io::RunConfig cfg;
    if (!f.config_path.empty()) cfg = io::load_config(f.config_path);
    for (const auto& [key, value] : f.values) {
        std::string flag = "--" + key;
        for (auto& ch : flag)
            if (ch == '_') ch = '-';
        if (sub->count(flag) > 0) io::apply_setting(cfg, key, value);
    }
    if (f.symmetrize) cfg.symmetrize = true;
    if (f.no_tails) cfg.tails = false;
    return cfg;
}

ParamSet make_params(const io::RunConfig& cfg) {
    if (!cfg.params) throw UsageError("--params \"N,s,p,alpha\" is required");
    const auto& in = *cfg.params;
    // beta is derived from p*; when p* itself is undefined a placeholder keeps the
    // remaining checks meaningful and validate_params still reports N, s, p.
    double beta = 2.0;
    if (in.N - in.s * in.p > 0.0) beta = in.N * in.p / (in.N - in.s * in.p) - in.alpha;
    return validate_params(in.N, in.s, in.p, in.alpha, beta);
}

fs::path prepare_out(const io::RunConfig& cfg) {
    if (cfg.out_dir.empty()) return {};
    fs::create_directories(cfg.out_dir);
    return cfg.out_dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream o(path);
    if (!o) throw std::runtime_error("cannot write " + path.string());
    o << text;
}

void print_params(std::ostream& out, const ParamSet& P) {
    out << "params: N=" << P.N() << " s=" << format_real(P.s()) << " p=" << format_real(P.p())
        << " alpha=" << format_real(P.alpha()) << " beta=" << format_real(P.beta())
        << " p*=" << format_real(P.p_star()) << '\n';
    const Regime r = regime_classify(P);
    out << "regime: " << to_string(r.tau_min_case) << ", " << to_string(r.window) << '\n';
}

gagliardo::Grid1D make_grid(const io::RunConfig& cfg) {
    gagliardo::Grid1D grid(cfg.half_width, cfg.grid_n, cfg.tails);
    if (cfg.mask_radius) grid = grid.with_ball_mask(*cfg.mask_radius);
    return grid;
}

gagliardo::OptimizerOptions make_opts(const io::RunConfig& cfg) {
    gagliardo::OptimizerOptions o;
    o.tol = cfg.tol;
    o.max_iter = cfg.max_iter;
    o.symmetrize = cfg.symmetrize;
    return o;
}

// ---------------------------------------------------------------------------

int cmd_analyze(const io::RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const ParamSet P = make_params(cfg);
    print_params(out, P);
    const auto c = coupling::classify(P);
    out << "case: " << coupling::to_string(c.case_label) << '\n';
    out << "g roots:";
    for (double r : c.g_roots) out << ' ' << format_real(r);
    out << '\n';
    out << "tau_min: " << format_real(c.tau_min) << '\n';
    out << "h(tau_min): " << format_real(c.h_at_tau_min) << '\n';
    out << "h(tau_min) - 1: " << format_real(c.h_minus_one_at_tau_min) << '\n';
    out << "lambda: " << format_real(c.lambda) << '\n';
    out << "mu: " << format_real(c.mu) << '\n';
    if (c.tau_min > 0.0) {
        const auto r = coupling::verify_sync_relations(c, P);
        out << "sync residuals: " << format_real(r.first) << ' ' << format_real(r.second) << '\n';
    }
    for (const auto& w : c.warnings) err << "warning: " << w << '\n';

    const fs::path dir = prepare_out(cfg);
    if (!dir.empty()) {
        std::vector<std::vector<double>> rows;
        io::Series hs{"h", {}, {}}, gs{"g", {}, {}};
        for (int i = 0; i <= 400; ++i) {
            const double tau = std::pow(10.0, -3.0 + 6.0 * i / 400.0);
            const double h = coupling::h_eval(tau, P);
            const double g = coupling::g_eval(tau, P);
            rows.push_back({tau, h, g});
            hs.x.push_back(tau);
            hs.y.push_back(h);
            gs.x.push_back(tau);
            gs.y.push_back(std::tanh(g));
        }
        io::write_csv(dir / "h_g_table.csv", {"tau", "h", "g"}, rows);
        io::write_svg_plot(dir / "h.svg", "h(tau)", {hs}, true);
        io::write_svg_plot(dir / "g.svg", "tanh(g(tau))", {gs}, true);
        nlohmann::json j{{"case", std::string(coupling::to_string(c.case_label))},
                         {"tau_min_case", std::string(to_string(regime_classify(P).tau_min_case))},
                         {"window", std::string(to_string(regime_classify(P).window))},
                         {"g_roots", c.g_roots},
                         {"tau_min", c.tau_min},
                         {"h_at_tau_min", c.h_at_tau_min},
                         {"h_minus_one_at_tau_min", c.h_minus_one_at_tau_min},
                         {"lambda", c.lambda},
                         {"mu", c.mu},
                         {"warnings", c.warnings}};
        write_text(dir / "analyze.json", j.dump(2) + "\n");
    }
    return kSuccess;
}

/// The scalar constant for the least energy: user value, else a lattice estimate when N = 1.
std::optional<double> scalar_constant(const io::RunConfig& cfg, const ParamSet& P, std::ostream& out) {
    if (cfg.S) return cfg.S;
    if (P.N() != 1) return std::nullopt;
    const auto grid = make_grid(cfg);
    const auto r = gagliardo::minimize_scalar(gagliardo::default_init(grid), P, make_opts(cfg));
    out << "S (lattice estimate, n=" << grid.n() << ", L=" << format_real(grid.half_width())
        << "): " << format_real(r.value) << '\n';
    return r.value;
}

int cmd_solve_gamma(const io::RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const ParamSet P = make_params(cfg);
    if (!cfg.gamma) throw UsageError("--gamma is required");
    const double gamma = *cfg.gamma;
    if (!(gamma > 0.0)) throw UsageError("--gamma must be positive");
    print_params(out, P);
    const EnergyWindow w = regime_classify(P).window;
    if (w == EnergyWindow::WindowI) {
        const double t = algebraic::gamma_upper_threshold(P);
        out << "upper threshold: " << format_real(t) << '\n';
        if (gamma > t) err << "warning: gamma " << format_real(gamma) << " exceeds the Window_i threshold\n";
    } else if (w == EnergyWindow::WindowII) {
        const double t = algebraic::gamma_lower_threshold(P);
        out << "lower threshold: " << format_real(t) << '\n';
        if (gamma < t) err << "warning: gamma " << format_real(gamma) << " is below the Window_ii threshold\n";
    } else {
        err << "warning: parameters lie in neither energy window; thresholds do not apply\n";
    }

    std::vector<algebraic::AlgebraicSolution> sols;
    try {
        sols = algebraic::solve_all(algebraic::GammaSystem(P, gamma));
    } catch (const algebraic::SolveError& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    out << "solutions (k, l, F1, F2, flags):\n";
    for (const auto& s : sols) {
        out << "  " << format_real(s.k) << ' ' << format_real(s.l) << ' ' << format_real(s.residual_F1) << ' '
            << format_real(s.residual_F2) << (s.is_k0 ? " k0" : "") << (s.is_l1 ? " l1" : "")
            << (s.in_unit_square ? "" : " outside-unit-square") << '\n';
    }
    const auto& k0 = algebraic::k0_solution(sols);
    out << "(k0, l0): " << format_real(k0.k) << ' ' << format_real(k0.l) << '\n';
    out << "k0 + l0: " << format_real(k0.k + k0.l) << '\n';
    if (const auto S = scalar_constant(cfg, P, out)) {
        out << "least energy A: " << format_real(algebraic::least_energy(k0.k, k0.l, *S, P)) << '\n';
    } else {
        out << "least energy A / S^(N/sp): " << format_real(algebraic::least_energy(k0.k, k0.l, 1.0, P)) << '\n';
    }

    const fs::path dir = prepare_out(cfg);
    if (!dir.empty()) {
        std::vector<std::vector<double>> rows;
        for (const auto& s : sols)
            rows.push_back({s.k, s.l, s.residual_F1, s.residual_F2, s.is_k0 ? 1.0 : 0.0, s.is_l1 ? 1.0 : 0.0});
        io::write_csv(dir / "solutions.csv", {"k", "l", "F1", "F2", "is_k0", "is_l1"}, rows);
    }
    return kSuccess;
}

int cmd_continue(const io::RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const ParamSet P = make_params(cfg);
    if (cfg.gamma_grid.empty()) throw UsageError("--gamma-grid must list at least one value");
    print_params(out, P);
    algebraic::BranchResult br;
    try {
        br = algebraic::continue_branch(P, cfg.gamma_grid);
    } catch (const RegimeError& e) {
        throw UsageError(e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::vector<std::vector<double>> rows;
    out << "gamma k l k+l\n";
    for (const auto& pt : br.points) {
        rows.push_back({pt.gamma, pt.k, pt.l, pt.k + pt.l});
        out << format_real(pt.gamma) << ' ' << format_real(pt.k) << ' ' << format_real(pt.l) << ' '
            << format_real(pt.k + pt.l) << '\n';
    }
    if (br.gamma1) {
        out << "gamma1: " << format_real(*br.gamma1) << '\n';
    } else {
        out << "gamma1: none (k + l <= 1 at the first grid point)\n";
    }
    const fs::path dir = prepare_out(cfg);
    if (!dir.empty()) {
        io::write_csv(dir / "branch.csv", {"gamma", "k", "l", "k_plus_l"}, rows);
        io::Series s{"k+l", {}, {}};
        for (const auto& r : rows) {
            s.x.push_back(r[0]);
            s.y.push_back(r[3]);
        }
        if (!s.x.empty()) io::write_svg_plot(dir / "branch.svg", "k + l along the branch", {s}, s.x.front() > 0.0);
    }
    if (br.failed) {
        err << "error: continuation failed after gamma = " << format_real(br.last_good_gamma) << ": " << br.failure
            << '\n';
        return kFailure;
    }
    return kSuccess;
}

void report_run(std::ostream& out, const std::string& label, const gagliardo::RayleighResult& r) {
    out << label << " value: " << format_real(r.value) << '\n';
    out << label << " iterations: " << r.iterations << '\n';
    out << label << " grad_norm: " << format_real(r.grad_norm) << '\n';
    out << label << " el_residual: " << format_real(r.el_residual) << '\n';
    out << label << " status: " << (r.converged ? "converged" : "not converged") << " (" << r.message << ")\n";
}

int cmd_minimize(const io::RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const ParamSet P = make_params(cfg);
    if (P.N() != 1) throw UsageError("minimize needs N = 1 (lattice in one dimension)");
    print_params(out, P);
    const auto grid = make_grid(cfg);
    const auto opts = make_opts(cfg);
    const bool random = cfg.seed != 0;
    const auto init = random ? gagliardo::random_function(grid, cfg.seed) : gagliardo::default_init(grid);
    out << "grid: n=" << grid.n() << " L=" << format_real(grid.half_width()) << " free=" << grid.free_count()
        << " tails=" << (grid.exterior_tails() ? "on" : "off") << " init=" << (random ? "random" : "bump") << '\n';

    const auto rs = gagliardo::minimize_scalar(init, P, opts);
    report_run(out, "scalar", rs);
    bool ok = rs.converged;

    std::optional<gagliardo::RayleighResult> rv;
    if (cfg.gamma) {
        const auto c = coupling::classify(P);
        const bool identity_setting = *cfg.gamma == 1.0 && cfg.eps_shift == 0.0;
        const auto init_v = random ? gagliardo::random_function(grid, cfg.seed + 1)
                                   : init.scaled(c.tau_min > 0.0 && identity_setting ? c.tau_min : 1.0);
        rv = gagliardo::minimize_vector(init, init_v, *cfg.gamma, cfg.eps_shift, P, opts);
        report_run(out, "vector", *rv);
        ok = ok && rv->converged;
        if (identity_setting) {
            const double gap = std::abs(rv->value - c.h_at_tau_min * rs.value) / rs.value;
            out << "h(tau_min): " << format_real(c.h_at_tau_min) << '\n';
            out << "identity gap |S_ab - h(tau_min) S| / S: " << format_real(gap) << (gap < 1e-3 ? " (< 1e-3)" : " (>= 1e-3)")
                << '\n';
        }
    }

    const fs::path dir = prepare_out(cfg);
    if (!dir.empty()) {
        io::write_function_csv(dir / "minimizer.csv", rs.minimizer);
        std::vector<std::vector<double>> hist;
        for (std::size_t i = 0; i < rs.history.size(); ++i) hist.push_back({static_cast<double>(i), rs.history[i]});
        io::write_csv(dir / "objective.csv", {"iteration", "value"}, hist);
        io::Series su{"u", {}, {}};
        for (int i = 0; i < grid.n(); ++i) {
            su.x.push_back(grid.x(i));
            su.y.push_back(rs.minimizer[i]);
        }
        std::vector<io::Series> series{su};
        if (rv) {
            io::write_function_csv(dir / "minimizer_u.csv", rv->minimizer);
            io::write_function_csv(dir / "minimizer_v.csv", *rv->minimizer_v);
            std::vector<std::vector<double>> vh;
            for (std::size_t i = 0; i < rv->history.size(); ++i) vh.push_back({static_cast<double>(i), rv->history[i]});
            io::write_csv(dir / "objective_vector.csv", {"iteration", "value"}, vh);
        }
        io::write_svg_plot(dir / "minimizer.svg", "scalar minimizer", series);
    }
    if (!ok) {
        err << "error: minimization did not converge\n";
        return kFailure;
    }
    return kSuccess;
}

int cmd_verify(const io::RunConfig& cfg, std::ostream& out, std::ostream&) {
    verify::SuiteOptions so;
    so.filter = cfg.filter;
    so.seed = cfg.seed;
    if (!cfg.golden.empty()) so.golden_path = cfg.golden;
    const auto results = verify::run_suite(so);
    if (results.empty()) throw UsageError("filter '" + cfg.filter + "' selects no checks");
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
        out << (r.passed ? "PASS " : "FAIL ") << r.name << " [" << secs << "]";
        if (!r.detail.empty()) out << " " << r.detail;
        out << '\n';
    }
    out << (all ? "all checks passed" : "some checks failed") << " (" << results.size() << " run)\n";
    const fs::path dir = prepare_out(cfg);
    if (!dir.empty()) write_text(dir / "verify.json", verify::summary_json(results) + "\n");
    return all ? kSuccess : kFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coupling-function, algebraic-system and lattice checks for doubly critical fractional systems",
                 "critcouple"};
    app.require_subcommand(1);
    struct Sub {
        CLI::App* app;
        FlagSet flags;
        int (*fn)(const io::RunConfig&, std::ostream&, std::ostream&);
    };
    auto subs = std::make_unique<std::array<Sub, 5>>();
    (*subs)[0] = {app.add_subcommand("analyze", "classify tau_min and tabulate h and g"), {}, cmd_analyze};
    (*subs)[1] = {app.add_subcommand("solve-gamma", "all roots of the algebraic system at one gamma"), {}, cmd_solve_gamma};
    (*subs)[2] = {app.add_subcommand("continue", "follow the branch from (1, 1) over a gamma grid"), {}, cmd_continue};
    (*subs)[3] = {app.add_subcommand("minimize", "lattice Rayleigh-quotient minimization"), {}, cmd_minimize};
    (*subs)[4] = {app.add_subcommand("verify", "run the property suite"), {}, cmd_verify};
    for (auto& s : *subs) add_common(s.app, s.flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    for (auto& s : *subs) {
        if (!s.app->parsed()) continue;
        try {
            const io::RunConfig cfg = build_config(s.app, s.flags);
            return s.fn(cfg, out, err);
        } catch (const ValidationError& e) {
            err << "error: invalid parameters:\n";
            for (const auto& v : e.violations()) err << "  - " << v << '\n';
            return kUsage;
        } catch (const io::ConfigError& e) {
            err << "error: " << e.what() << '\n';
            return kUsage;
        } catch (const UsageError& e) {
            err << "error: " << e.what() << '\n';
            return kUsage;
        } catch (const DomainError& e) {
            err << "error: " << e.what() << '\n';
            return kUsage;
        } catch (const std::invalid_argument& e) {
            err << "error: " << e.what() << '\n';
            return kUsage;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return kFailure;
        }
    }
    return kUsage;
}

int run(int argc, char** argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace critcouple::cli
