// capdyn command line: production-function evaluation, trajectory simulation,
// regime classification, and the scripted experiments, all driven by a flat
// key = value config that individual flags override.

#include <algorithm>
#include <deque>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capdyn/config.hpp"
#include "capdyn/csv.hpp"
#include "capdyn/experiments.hpp"
#include "capdyn/kinematics.hpp"
#include "capdyn/model.hpp"
#include "capdyn/relatedness.hpp"
#include "capdyn/riccati.hpp"
#include "capdyn/version.hpp"

namespace {

using capdyn::format_double;
using capdyn::RunConfig;
using std::filesystem::path;

// Flag values land here as strings; anything the user actually passed is
// folded into the RunConfig on top of the config file. Storage is a deque so
// CLI11's bound references stay valid as slots are added.
struct FlagSet {
    std::deque<std::string> storage;
    std::vector<std::pair<std::string, std::string*>> bindings;
    std::string config_path;

    std::string* slot(const std::string& key) {
        storage.emplace_back();
        bindings.emplace_back(key, &storage.back());
        return &storage.back();
    }
};

void add_flag(CLI::App* cmd, FlagSet& flags, const std::string& cli_name,
              const std::string& key, const std::string& help) {
    cmd->add_option(cli_name, *flags.slot(key), help);
}

RunConfig resolve_config(const FlagSet& flags) {
    RunConfig cfg;
    if (!flags.config_path.empty()) cfg = RunConfig::from_file(flags.config_path);
    for (const auto& [key, storage] : flags.bindings) {
        if (!storage->empty()) cfg.set(key, *storage);
    }
    return cfg;
}

path require_out(const RunConfig& cfg) {
    const std::string out = cfg.string_or("out", "");
    if (out.empty()) throw std::invalid_argument("an output directory is required (--out)");
    return out;
}

std::size_t count_key(const RunConfig& cfg, const std::string& key, std::int64_t fallback,
                      std::int64_t max = 10'000'000) {
    const std::int64_t v = cfg.integer_or(key, fallback);
    if (v < 1 || v > max)
        throw std::invalid_argument("config key '" + key + "' = " + std::to_string(v) +
                                    " outside [1, " + std::to_string(max) + "]");
    return static_cast<std::size_t>(v);
}

capdyn::ModelParams params_from(const RunConfig& cfg, double default_gamma = 1.0,
                                double default_delta = 0.0) {
    return {cfg.number_or("gamma", default_gamma), cfg.number_or("delta", default_delta)};
}

capdyn::LabeledMatrix to_labeled(const capdyn::Matrix& m, std::string corner,
                                 std::vector<std::string> rows,
                                 std::vector<std::string> cols) {
    return {m, std::move(corner), std::move(rows), std::move(cols)};
}

// ---- eval: outputs and derivatives for given matrices ----------------------

int run_eval(const RunConfig& cfg) {
    const std::string q_path = cfg.string_or("q_path", "");
    const std::string r_path = cfg.string_or("r_path", "");
    if (q_path.empty() || r_path.empty())
        throw std::invalid_argument("eval needs a requirements file (--q) and an endowments file (--r)");
    const capdyn::CapabilityRequirements q = capdyn::load_requirements(q_path);
    const capdyn::Endowments r = capdyn::load_endowments(r_path);
    const path out_dir = require_out(cfg);

    const capdyn::Matrix y = capdyn::output(q, r);
    capdyn::write_file_atomic(
        out_dir / "output.csv",
        capdyn::matrix_to_csv(
            to_labeled(y, "economy", r.economy_labels(), q.activity_labels())));

    if (cfg.flag_or("grads", false)) {
        capdyn::Table grads;
        grads.columns = {"economy", "activity", "capability", "dY_dr", "dY_dq"};
        for (std::size_t c = 0; c < r.economies(); ++c)
            for (std::size_t p = 0; p < q.activities(); ++p)
                for (std::size_t b = 0; b < q.capabilities(); ++b)
                    grads.rows.push_back({r.economy_labels()[c], q.activity_labels()[p],
                                          q.capability_labels()[b],
                                          format_double(capdyn::output_grad_r(q, r, c, p, b)),
                                          format_double(capdyn::output_grad_q(q, r, c, p, b))});
        capdyn::write_file_atomic(out_dir / "grads.csv", capdyn::table_to_csv(grads));
    }

    const std::string dr_path = cfg.string_or("dr_path", "");
    const std::string dq_path = cfg.string_or("dq_path", "");
    if (!dr_path.empty() || !dq_path.empty()) {
        if (dr_path.empty() || dq_path.empty())
            throw std::invalid_argument("output growth needs both --dr and --dq");
        const capdyn::Matrix dr = capdyn::load_labeled_csv(dr_path).values;
        const capdyn::Matrix dq = capdyn::load_labeled_csv(dq_path).values;
        const capdyn::Matrix dy = capdyn::output_growth(q, r, dr, dq);
        capdyn::write_file_atomic(
            out_dir / "output_growth.csv",
            capdyn::matrix_to_csv(
                to_labeled(dy, "economy", r.economy_labels(), q.activity_labels())));
    }
    return 0;
}

// ---- simulate: closed forms and numerical integration ----------------------

int run_simulate(const RunConfig& cfg) {
    const std::string mode = cfg.string_or("mode", "");
    if (mode.empty())
        throw std::invalid_argument(
            "simulate needs a mode: --closed-form, --general, --numeric, or --coupled");
    const double t_end = cfg.number_or("t_end", 50.0);
    const double dt = cfg.number_or("dt", 0.1);
    capdyn::check_range("t_end", t_end, 0.0, 1e9, true);
    const std::vector<double> grid = capdyn::time_grid(t_end, dt);
    const double max_step = cfg.number_or("step", 1e-3);

    capdyn::Trajectory traj;
    if (mode == "coupled") {
        const std::string q_path = cfg.string_or("q_path", "");
        const std::string r_path = cfg.string_or("r_path", "");
        if (q_path.empty() || r_path.empty())
            throw std::invalid_argument("coupled simulation needs --q and --r");
        const capdyn::CapabilityRequirements q = capdyn::load_requirements(q_path);
        const capdyn::Endowments r0 = capdyn::load_endowments(r_path);
        traj = capdyn::integrate_coupled(q, r0, params_from(cfg), grid, max_step);
    } else {
        const double r0 = cfg.number_or("r0", 0.1);
        capdyn::check_range("r0", r0, 0.0, 1.0);
        if (mode == "closed-form") {
            const double q_qe = cfg.number_or("q_bar", 0.9);
            const double rate = cfg.number_or("rate", 0.25);
            traj.times = grid;
            traj.series = {"r"};
            for (double t : grid)
                traj.values.push_back({capdyn::closed_form_weighted(r0, q_qe, rate, t)});
            traj.meta = {{"mode", mode},
                         {"r0", format_double(r0)},
                         {"q_qe", format_double(q_qe)},
                         {"rate", format_double(rate)}};
        } else if (mode == "general" || mode == "numeric") {
            const double q_bar = cfg.number_or("q_bar", 0.9);
            const capdyn::ModelParams params = params_from(cfg);
            const capdyn::RiccatiCoefficients k = capdyn::coefficients_single(q_bar, params);
            if (mode == "numeric") {
                traj = capdyn::integrate_frozen(k, r0, grid, max_step);
            } else {
                traj.times = grid;
                traj.series = {"r"};
                for (double t : grid)
                    traj.values.push_back({capdyn::closed_form_general(r0, k, t)});
                traj.meta = {{"mode", mode},
                             {"r0", format_double(r0)},
                             {"q_bar", format_double(q_bar)}};
            }
        } else {
            throw std::invalid_argument("unknown simulate mode '" + mode + "'");
        }
    }

    const std::string csv = capdyn::trajectory_to_csv(traj);
    const std::string out = cfg.string_or("out", "");
    if (out.empty())
        std::cout << csv;
    else
        capdyn::write_file_atomic(out, csv);
    return 0;
}

// ---- phase: classification and the phase sweep -----------------------------

int run_phase(const RunConfig& cfg) {
    const capdyn::ModelParams params = params_from(cfg);
    if (cfg.flag_or("sweep", false)) {
        capdyn::ExperimentSpec spec;
        spec.name = "phase-sweep";
        spec.params = params;
        spec.q_grid.points = count_key(cfg, "q_grid_n", 99);
        spec.q_grid.lo = cfg.number_or("q_lo", 0.01);
        spec.q_grid.hi = cfg.number_or("q_hi", 0.99);
        spec.ratio_grid.hi = cfg.number_or("ratio_max", 1.5);
        spec.ratio_grid.points = count_key(cfg, "ratio_grid_n", 31);
        spec.output_dir = require_out(cfg);
        capdyn::run_experiment(spec);
        return 0;
    }
    if (!cfg.has("q_bar"))
        throw std::invalid_argument("phase needs --qbar (or --sweep for the full grid)");
    const double q_bar = cfg.number("q_bar");
    capdyn::check_range("q_bar", q_bar, 0.0, 1.0);
    const capdyn::RegimeClassification cls = capdyn::classify_single(q_bar, params);
    std::cout << "regime: " << capdyn::regime_name(cls.regime) << '\n'
              << "r_star: " << format_double(cls.r_star) << '\n'
              << "q_crit: " << (cls.q_crit ? format_double(*cls.q_crit) : "none") << '\n';
    return 0;
}

// ---- experiments ------------------------------------------------------------

capdyn::ExperimentSpec spec_from_config(const RunConfig& cfg, const std::string& name) {
    capdyn::ExperimentSpec spec;
    spec.name = name;
    spec.params = params_from(cfg, 1.0, name == "bifurcation" ? 0.2 : 0.0);
    spec.q_bars = cfg.list_or("q_bars", {});
    if (cfg.has("q_bar")) spec.q_bars = {cfg.number("q_bar")};
    spec.r_grid.points = count_key(cfg, "r_grid_n", 201);
    spec.q_grid.lo = cfg.number_or("q_lo", 0.01);
    spec.q_grid.hi = cfg.number_or("q_hi", 0.99);
    spec.q_grid.points = count_key(cfg, "q_grid_n", cfg.integer_or("points", 99));
    spec.ratio_grid.hi = cfg.number_or("ratio_max", 1.5);
    spec.ratio_grid.points = count_key(cfg, "ratio_grid_n", 31);
    spec.start_panel_q_qe = cfg.number_or("q_qe", spec.start_panel_q_qe);
    spec.start_panel_rate = cfg.number_or("rate", spec.start_panel_rate);
    spec.start_panel_r0 = cfg.list_or("r0s", spec.start_panel_r0);
    spec.rate_panel_r0 = cfg.number_or("r0", spec.rate_panel_r0);
    spec.rate_panel_rates = cfg.list_or("rates", spec.rate_panel_rates);
    spec.t_end = cfg.number_or("t_end", spec.t_end);
    spec.dt = cfg.number_or("dt", spec.dt);
    spec.members = count_key(cfg, "members", 32);
    spec.activities = count_key(cfg, "activities", 5);
    spec.capabilities = count_key(cfg, "capabilities", 3);
    spec.q_lo = cfg.number_or("q_lo", spec.q_lo);
    spec.q_hi = cfg.number_or("q_hi", spec.q_hi);
    spec.r0_lo = cfg.number_or("r0_lo", spec.r0_lo);
    spec.r0_hi = cfg.number_or("r0_hi", spec.r0_hi);
    spec.max_step = cfg.number_or("step", spec.max_step);
    spec.seed = cfg.seed_or_default();
    spec.emit_svg = cfg.flag_or("svg", false);
    spec.output_dir = require_out(cfg);
    return spec;
}

int run_bifurcation_cmd(const RunConfig& cfg) {
    capdyn::ExperimentSpec spec = spec_from_config(cfg, "bifurcation");
    capdyn::run_experiment(spec);
    return 0;
}

int run_figures(const RunConfig& cfg) {
    const std::string name = cfg.string_or("name", "all");
    const std::vector<std::string> figure_names = {"growth-curves", "bifurcation",
                                                   "trajectories", "gap"};
    std::vector<std::string> selected;
    if (name == "all") {
        selected = figure_names;
    } else {
        if (std::find(figure_names.begin(), figure_names.end(), name) == figure_names.end())
            throw std::invalid_argument("unknown figure '" + name +
                                        "' (expected growth-curves, bifurcation, trajectories, "
                                        "gap, or all)");
        selected = {name};
    }
    for (const std::string& fig : selected) capdyn::run_experiment(spec_from_config(cfg, fig));
    return 0;
}

int run_ensemble_cmd(const RunConfig& cfg) {
    capdyn::ExperimentSpec spec = spec_from_config(cfg, "ensemble");
    spec.ensemble_t_end = cfg.number_or("t_end", spec.ensemble_t_end);
    spec.ensemble_dt = cfg.number_or("dt", spec.ensemble_dt);
    capdyn::run_experiment(spec);
    return 0;
}

// ---- relatedness ------------------------------------------------------------

int run_relatedness(const RunConfig& cfg) {
    const std::string q_path = cfg.string_or("q_path", "");
    if (q_path.empty()) throw std::invalid_argument("relatedness needs a requirements file (--q)");
    const capdyn::CapabilityRequirements q = capdyn::load_requirements(q_path);
    const path out_dir = require_out(cfg);

    capdyn::RelatednessWeights weights = capdyn::RelatednessWeights::uniform(q.activities());
    const std::string weights_path = cfg.string_or("weights_path", "");
    if (!weights_path.empty()) {
        const capdyn::LabeledMatrix wm = capdyn::load_labeled_csv(weights_path);
        if (wm.values.cols() != 1 || wm.values.rows() != q.activities())
            throw std::invalid_argument("weights file must have one column and one row per activity");
        std::vector<double> w(q.activities());
        for (std::size_t p = 0; p < q.activities(); ++p) w[p] = wm.values(p, 0);
        weights = capdyn::RelatednessWeights(std::move(w));
    }

    const capdyn::Matrix compl_matrix = capdyn::complementarity_matrix(q, weights);
    capdyn::write_file_atomic(
        out_dir / "complementarity.csv",
        capdyn::matrix_to_csv(to_labeled(compl_matrix, "capability", q.capability_labels(),
                                         q.capability_labels())));

    const std::string r_path = cfg.string_or("r_path", "");
    if (!r_path.empty()) {
        const capdyn::Endowments r = capdyn::load_endowments(r_path);
        const capdyn::ModelParams params = params_from(cfg);
        capdyn::Table coupling;
        coupling.columns = {"economy", "capability", "other_capability", "coupling"};
        for (std::size_t c = 0; c < r.economies(); ++c)
            for (std::size_t b = 0; b < q.capabilities(); ++b)
                for (std::size_t b2 = 0; b2 < q.capabilities(); ++b2) {
                    if (b == b2) continue;
                    coupling.rows.push_back(
                        {r.economy_labels()[c], q.capability_labels()[b],
                         q.capability_labels()[b2],
                         format_double(capdyn::growth_coupling(q, r, params, c, b, b2))});
                }
        capdyn::write_file_atomic(out_dir / "coupling.csv", capdyn::table_to_csv(coupling));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak-link production and capability-accumulation dynamics"};
    app.set_version_flag("--version", capdyn::version_string());
    app.require_subcommand(0, 1);

    struct Command {
        CLI::App* cmd = nullptr;
        FlagSet flags;
        int (*handler)(const RunConfig&) = nullptr;
    };
    std::vector<Command> commands(7);

    auto setup = [&](Command& c, const char* name, const char* help,
                     int (*handler)(const RunConfig&)) {
        c.cmd = app.add_subcommand(name, help);
        c.handler = handler;
        c.cmd->add_option("--config", c.flags.config_path,
                          "key = value config file; flags override it");
    };

    Command& eval = commands[0];
    setup(eval, "eval", "evaluate outputs and derivatives for given matrices", run_eval);
    add_flag(eval.cmd, eval.flags, "--q", "q_path", "requirements CSV");
    add_flag(eval.cmd, eval.flags, "--r", "r_path", "endowments CSV");
    add_flag(eval.cmd, eval.flags, "--out", "out", "output directory");
    add_flag(eval.cmd, eval.flags, "--dr", "dr_path", "endowment velocity CSV");
    add_flag(eval.cmd, eval.flags, "--dq", "dq_path", "requirement velocity CSV");
    eval.cmd->add_flag_callback(
        "--grads", [&flags = eval.flags] { *flags.slot("grads") = "true"; },
        "also write per-cell partial derivatives")
        ->trigger_on_parse();

    Command& simulate = commands[1];
    setup(simulate, "simulate", "closed-form or numeric trajectories", run_simulate);
    auto mode_flag = [&](const char* flag, const char* value, const char* help) {
        simulate.cmd->add_flag_callback(
            flag, [&flags = simulate.flags, value] { *flags.slot("mode") = value; }, help)
            ->trigger_on_parse();
    };
    mode_flag("--closed-form", "closed-form", "gap-weighted closed form (r0, qbar, rate)");
    mode_flag("--general", "general", "root-factorized closed form (gamma, delta, qbar)");
    mode_flag("--numeric", "numeric", "fixed-step integration of the single-capability law");
    mode_flag("--coupled", "coupled", "full coupled system from matrices (--q, --r)");
    add_flag(simulate.cmd, simulate.flags, "--r0", "r0", "initial endowment");
    add_flag(simulate.cmd, simulate.flags, "--qbar", "q_bar", "mean or QE-weighted intensity");
    add_flag(simulate.cmd, simulate.flags, "--rate", "rate", "composite complementarity rate");
    add_flag(simulate.cmd, simulate.flags, "--gamma", "gamma", "investment rate");
    add_flag(simulate.cmd, simulate.flags, "--delta", "delta", "depreciation rate");
    add_flag(simulate.cmd, simulate.flags, "--q", "q_path", "requirements CSV (coupled)");
    add_flag(simulate.cmd, simulate.flags, "--r", "r_path", "endowments CSV (coupled)");
    add_flag(simulate.cmd, simulate.flags, "--t-end", "t_end", "time horizon");
    add_flag(simulate.cmd, simulate.flags, "--dt", "dt", "sampling interval");
    add_flag(simulate.cmd, simulate.flags, "--step", "step", "integrator max step");
    add_flag(simulate.cmd, simulate.flags, "--out", "out", "trajectory CSV path (default stdout)");

    Command& phase = commands[2];
    setup(phase, "phase", "regime classification or the (qbar, delta/gamma) sweep", run_phase);
    add_flag(phase.cmd, phase.flags, "--gamma", "gamma", "investment rate");
    add_flag(phase.cmd, phase.flags, "--delta", "delta", "depreciation rate");
    add_flag(phase.cmd, phase.flags, "--qbar", "q_bar", "mean intensity to classify");
    phase.cmd->add_flag_callback(
        "--sweep", [&flags = phase.flags] { *flags.slot("sweep") = "true"; },
        "tabulate the full phase diagram")
        ->trigger_on_parse();
    add_flag(phase.cmd, phase.flags, "--out", "out", "output directory (sweep)");
    add_flag(phase.cmd, phase.flags, "--q-lo", "q_lo", "sweep q lower bound");
    add_flag(phase.cmd, phase.flags, "--q-hi", "q_hi", "sweep q upper bound");
    add_flag(phase.cmd, phase.flags, "--q-points", "q_grid_n", "sweep q grid size");
    add_flag(phase.cmd, phase.flags, "--ratio-max", "ratio_max", "sweep max delta/gamma");
    add_flag(phase.cmd, phase.flags, "--ratio-points", "ratio_grid_n", "sweep ratio grid size");

    Command& bifurcation = commands[3];
    setup(bifurcation, "bifurcation", "argmax of the growth rate against mean intensity",
          run_bifurcation_cmd);
    add_flag(bifurcation.cmd, bifurcation.flags, "--gamma", "gamma", "investment rate");
    add_flag(bifurcation.cmd, bifurcation.flags, "--delta", "delta", "depreciation rate");
    add_flag(bifurcation.cmd, bifurcation.flags, "--q-lo", "q_lo", "q grid lower bound");
    add_flag(bifurcation.cmd, bifurcation.flags, "--q-hi", "q_hi", "q grid upper bound");
    add_flag(bifurcation.cmd, bifurcation.flags, "--points", "points", "q grid size");
    add_flag(bifurcation.cmd, bifurcation.flags, "--out", "out", "output directory");
    bifurcation.cmd->add_flag_callback(
        "--svg", [&flags = bifurcation.flags] { *flags.slot("svg") = "true"; }, "emit a chart")
        ->trigger_on_parse();

    Command& relatedness = commands[4];
    setup(relatedness, "relatedness", "complementarity matrix and growth coupling",
          run_relatedness);
    add_flag(relatedness.cmd, relatedness.flags, "--q", "q_path", "requirements CSV");
    add_flag(relatedness.cmd, relatedness.flags, "--r", "r_path",
             "endowments CSV (enables coupling table)");
    add_flag(relatedness.cmd, relatedness.flags, "--weights", "weights_path",
             "per-activity weights CSV (default all ones)");
    add_flag(relatedness.cmd, relatedness.flags, "--gamma", "gamma", "investment rate");
    add_flag(relatedness.cmd, relatedness.flags, "--out", "out", "output directory");

    Command& figures = commands[5];
    setup(figures, "figures", "tabulated figure datasets", run_figures);
    add_flag(figures.cmd, figures.flags, "--name", "name",
             "growth-curves | bifurcation | trajectories | gap | all");
    add_flag(figures.cmd, figures.flags, "--gamma", "gamma", "investment rate");
    add_flag(figures.cmd, figures.flags, "--delta", "delta", "depreciation rate");
    add_flag(figures.cmd, figures.flags, "--qbars", "q_bars", "comma list of mean intensities");
    add_flag(figures.cmd, figures.flags, "--t-end", "t_end", "trajectory horizon");
    add_flag(figures.cmd, figures.flags, "--dt", "dt", "trajectory sampling interval");
    add_flag(figures.cmd, figures.flags, "--out", "out", "output directory");
    figures.cmd->add_flag_callback(
        "--svg", [&flags = figures.flags] { *flags.slot("svg") = "true"; }, "emit charts")
        ->trigger_on_parse();

    Command& ensemble = commands[6];
    setup(ensemble, "ensemble", "random-ensemble convergence experiment", run_ensemble_cmd);
    add_flag(ensemble.cmd, ensemble.flags, "--seed", "seed", "RNG seed (CAPDYN_SEED fallback)");
    add_flag(ensemble.cmd, ensemble.flags, "--members", "members", "number of economies");
    add_flag(ensemble.cmd, ensemble.flags, "--activities", "activities", "activity count");
    add_flag(ensemble.cmd, ensemble.flags, "--capabilities", "capabilities", "capability count");
    add_flag(ensemble.cmd, ensemble.flags, "--q-lo", "q_lo", "requirement draw lower bound");
    add_flag(ensemble.cmd, ensemble.flags, "--q-hi", "q_hi", "requirement draw upper bound");
    add_flag(ensemble.cmd, ensemble.flags, "--r0-lo", "r0_lo", "start draw lower bound");
    add_flag(ensemble.cmd, ensemble.flags, "--r0-hi", "r0_hi", "start draw upper bound");
    add_flag(ensemble.cmd, ensemble.flags, "--gamma", "gamma", "investment rate");
    add_flag(ensemble.cmd, ensemble.flags, "--delta", "delta", "depreciation rate");
    add_flag(ensemble.cmd, ensemble.flags, "--t-end", "t_end", "integration horizon");
    add_flag(ensemble.cmd, ensemble.flags, "--dt", "dt", "sampling interval");
    add_flag(ensemble.cmd, ensemble.flags, "--step", "step", "integrator max step");
    add_flag(ensemble.cmd, ensemble.flags, "--out", "out", "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        for (Command& c : commands) {
            if (c.cmd->parsed()) return c.handler(resolve_config(c.flags));
        }
        std::cerr << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "capdyn: error: " << e.what() << '\n';
        return 1;
    }
}
