#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "capdyn/types.hpp"

namespace capdyn {

/// Evenly spaced closed interval with exact endpoints.
struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t points = 2;

    std::vector<double> values() const;
};

/// One scripted experiment: a name selecting the script, model parameters,
/// the grids it tabulates over, a seed for the ensemble draws, and where the
/// tables go. Defaults reproduce the standard parameterizations.
struct ExperimentSpec {
    std::string name;
    ModelParams params{1.0, 0.0};

    // growth-curves: dr/dt over an r grid, one column per mean intensity.
    // Empty q_bars means below / at / above the critical intensity.
    std::vector<double> q_bars;
    GridSpec r_grid{0.0, 1.0, 201};

    // bifurcation and phase-sweep grids.
    GridSpec q_grid{0.01, 0.99, 99};
    GridSpec ratio_grid{0.0, 1.5, 31};  // delta / gamma

    // trajectories: one panel varies the start, the other the composite rate.
    double start_panel_q_qe = 0.9;
    double start_panel_rate = 0.25;
    std::vector<double> start_panel_r0{0.1, 0.3, 0.5};
    double rate_panel_r0 = 0.5;
    double rate_panel_q_qe = 0.7;
    std::vector<double> rate_panel_rates{0.1, 0.5, 0.9};
    double t_end = 60.0;
    double dt = 0.05;

    // ensemble: random requirement and start matrices, coupled integration,
    // rank correlation between initial endowment and early growth.
    std::size_t members = 32;
    std::size_t activities = 5;
    std::size_t capabilities = 3;
    double q_lo = 0.6, q_hi = 0.95;
    double r0_lo = 0.05, r0_hi = 0.6;
    double ensemble_t_end = 150.0;
    double ensemble_dt = 0.5;
    double max_step = 1e-3;
    std::optional<std::uint64_t> seed;

    std::filesystem::path output_dir = ".";
    bool emit_svg = false;
};

/// Run one experiment by name ("growth-curves", "bifurcation", "trajectories",
/// "gap", "phase-sweep", "ensemble") and return the files written. Identical
/// specs produce byte-identical files.
std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec);

}  // namespace capdyn
