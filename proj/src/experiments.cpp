#include "capdyn/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "capdyn/config.hpp"
#include "capdyn/csv.hpp"
#include "capdyn/kinematics.hpp"
#include "capdyn/random.hpp"
#include "capdyn/riccati.hpp"
#include "capdyn/stats.hpp"
#include "capdyn/svg.hpp"

namespace capdyn {

std::vector<double> GridSpec::values() const {
    if (points < 1) throw std::invalid_argument("grid needs at least one point");
    if (!(hi >= lo)) throw std::invalid_argument("grid bounds reversed");
    std::vector<double> out(points);
    if (points == 1) {
        out[0] = lo;
        return out;
    }
    for (std::size_t i = 0; i < points; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    out.back() = hi;
    return out;
}

namespace {

using std::filesystem::path;

path emit(const path& dir, const std::string& name, const std::string& content,
          std::vector<path>& written) {
    const path p = dir / name;
    write_file_atomic(p, content);
    written.push_back(p);
    return p;
}

void emit_chart(const ExperimentSpec& spec, const std::string& name, const std::string& title,
                const std::string& x_label, const std::string& y_label,
                const std::vector<SvgSeries>& series, std::vector<path>& written) {
    if (!spec.emit_svg) return;
    emit(spec.output_dir, name, line_chart_svg(title, x_label, y_label, series), written);
}

std::vector<path> run_growth_curves(const ExperimentSpec& spec) {
    std::vector<double> q_bars = spec.q_bars;
    if (q_bars.empty()) {
        const auto q_crit = critical_intensity(spec.params);
        if (!q_crit || *q_crit >= 1.0)
            throw std::invalid_argument(
                "growth-curves: no feasible critical intensity for these parameters; "
                "pass explicit q_bars");
        q_bars = {0.5 * *q_crit, *q_crit, 0.5 * (1.0 + *q_crit)};
    }
    for (double q : q_bars) check_range("q_bar", q, 0.0, 1.0);
    const std::vector<double> r_values = spec.r_grid.values();
    if (spec.r_grid.lo < 0.0 || spec.r_grid.hi > 1.0)
        throw std::invalid_argument("growth-curves: r grid must stay inside [0, 1]");

    Table table;
    table.columns.push_back("r");
    for (double q : q_bars) table.columns.push_back("drdt[qbar=" + format_double(q) + "]");
    std::vector<std::vector<double>> cols(q_bars.size(),
                                          std::vector<double>(r_values.size()));
#pragma omp parallel for schedule(static) if (r_values.size() >= 64)
    for (std::size_t i = 0; i < r_values.size(); ++i)
        for (std::size_t j = 0; j < q_bars.size(); ++j)
            cols[j][i] = growth_rate_single(r_values[i], q_bars[j], spec.params);

    for (std::size_t i = 0; i < r_values.size(); ++i) {
        std::vector<std::string> row{format_double(r_values[i])};
        for (std::size_t j = 0; j < q_bars.size(); ++j) row.push_back(format_double(cols[j][i]));
        table.rows.push_back(std::move(row));
    }

    std::vector<path> written;
    emit(spec.output_dir, "growth_curves.csv", table_to_csv(table), written);
    std::vector<SvgSeries> series;
    for (std::size_t j = 0; j < q_bars.size(); ++j)
        series.push_back({"qbar=" + format_double(q_bars[j]), r_values, cols[j]});
    emit_chart(spec, "growth_curves.svg", "capability growth rate", "r", "dr/dt", series,
               written);
    return written;
}

std::vector<path> run_bifurcation(const ExperimentSpec& spec) {
    const std::vector<double> q_values = spec.q_grid.values();
    if (spec.q_grid.lo < 0.0 || spec.q_grid.hi > 1.0)
        throw std::invalid_argument("bifurcation: q grid must stay inside [0, 1]");

    std::vector<double> r_star(q_values.size());
#pragma omp parallel for schedule(static) if (q_values.size() >= 64)
    for (std::size_t i = 0; i < q_values.size(); ++i)
        r_star[i] = argmax_growth_single(q_values[i], spec.params);

    Table table;
    table.columns = {"q_bar", "r_star", "regime"};
    for (std::size_t i = 0; i < q_values.size(); ++i) {
        table.rows.push_back({format_double(q_values[i]), format_double(r_star[i]),
                              r_star[i] > 0.0 ? "conditional" : "unconditional"});
    }

    std::vector<path> written;
    emit(spec.output_dir, "bifurcation.csv", table_to_csv(table), written);
    emit_chart(spec, "bifurcation.svg", "location of the maximum growth rate", "qbar",
               "argmax dr/dt", {{"r_star", q_values, r_star}}, written);
    return written;
}

// Closed-form trajectory panels: one varying the start, one varying the rate.
std::vector<path> run_trajectories(const ExperimentSpec& spec, std::vector<path>* gap_out) {
    const std::vector<double> grid = time_grid(spec.t_end, spec.dt);
    check_range("q_qe", spec.start_panel_q_qe, 0.0, 1.0);
    check_range("q_qe", spec.rate_panel_q_qe, 0.0, 1.0);
    if (spec.start_panel_r0.empty() || spec.rate_panel_rates.empty())
        throw std::invalid_argument("trajectories: empty parameter lists");

    std::vector<path> written;

    // Panel 1: same rate, different starts.
    Table start_table;
    start_table.columns.push_back("t");
    std::vector<std::vector<double>> start_cols;
    for (double r0 : spec.start_panel_r0) {
        check_range("r0", r0, 0.0, 1.0);
        start_table.columns.push_back("r0=" + format_double(r0));
        std::vector<double> col(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            col[i] = closed_form_weighted(r0, spec.start_panel_q_qe, spec.start_panel_rate,
                                          grid[i]);
        start_cols.push_back(std::move(col));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<std::string> row{format_double(grid[i])};
        for (const auto& col : start_cols) row.push_back(format_double(col[i]));
        start_table.rows.push_back(std::move(row));
    }

    // Panel 2: same start, different rates.
    Table rate_table;
    rate_table.columns.push_back("t");
    std::vector<std::vector<double>> rate_cols;
    for (double rate : spec.rate_panel_rates) {
        if (!(rate >= 0.0)) throw std::invalid_argument("trajectories: rate must be >= 0");
        rate_table.columns.push_back("E=" + format_double(rate));
        std::vector<double> col(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            col[i] = closed_form_weighted(spec.rate_panel_r0, spec.rate_panel_q_qe, rate,
                                          grid[i]);
        rate_cols.push_back(std::move(col));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<std::string> row{format_double(grid[i])};
        for (const auto& col : rate_cols) row.push_back(format_double(col[i]));
        rate_table.rows.push_back(std::move(row));
    }

    if (!gap_out) {
        emit(spec.output_dir, "trajectories_start.csv", table_to_csv(start_table), written);
        emit(spec.output_dir, "trajectories_rate.csv", table_to_csv(rate_table), written);
        std::vector<SvgSeries> s1, s2;
        for (std::size_t j = 0; j < start_cols.size(); ++j)
            s1.push_back({start_table.columns[j + 1], grid, start_cols[j]});
        for (std::size_t j = 0; j < rate_cols.size(); ++j)
            s2.push_back({rate_table.columns[j + 1], grid, rate_cols[j]});
        emit_chart(spec, "trajectories_start.svg", "kinematics, varying start", "t", "r", s1,
                   written);
        emit_chart(spec, "trajectories_rate.svg", "kinematics, varying complementarity rate",
                   "t", "r", s2, written);
        return written;
    }

    // Gap curves between the start-panel trajectories: every start against the
    // lowest one.
    Table gap_table;
    gap_table.columns.push_back("t");
    std::vector<std::vector<double>> gap_cols;
    for (std::size_t j = start_cols.size(); j-- > 1;) {
        gap_table.columns.push_back("gap[r0=" + format_double(spec.start_panel_r0[j]) +
                                    "-r0=" + format_double(spec.start_panel_r0[0]) + "]");
        std::vector<double> col(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            col[i] = start_cols[j][i] - start_cols[0][i];
        gap_cols.push_back(std::move(col));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<std::string> row{format_double(grid[i])};
        for (const auto& col : gap_cols) row.push_back(format_double(col[i]));
        gap_table.rows.push_back(std::move(row));
    }
    emit(spec.output_dir, "gap.csv", table_to_csv(gap_table), *gap_out);
    std::vector<SvgSeries> series;
    for (std::size_t j = 0; j < gap_cols.size(); ++j)
        series.push_back({gap_table.columns[j + 1], grid, gap_cols[j]});
    emit_chart(spec, "gap.svg", "endowment differences", "t", "gap", series, *gap_out);
    return *gap_out;
}

std::vector<path> run_phase_sweep(const ExperimentSpec& spec) {
    const std::vector<double> q_values = spec.q_grid.values();
    const std::vector<double> ratios = spec.ratio_grid.values();
    if (spec.q_grid.lo < 0.0 || spec.q_grid.hi > 1.0)
        throw std::invalid_argument("phase-sweep: q grid must stay inside [0, 1]");
    if (spec.ratio_grid.lo < 0.0)
        throw std::invalid_argument("phase-sweep: delta/gamma ratio must be >= 0");

    struct Cell {
        double r_star;
        std::optional<double> q_crit;
    };
    std::vector<Cell> cells(q_values.size() * ratios.size());
#pragma omp parallel for collapse(2) schedule(static) if (cells.size() >= 64)
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        for (std::size_t j = 0; j < q_values.size(); ++j) {
            const ModelParams params(spec.params.gamma, spec.params.gamma * ratios[i]);
            cells[i * q_values.size() + j] = {argmax_growth_single(q_values[j], params),
                                              critical_intensity(params)};
        }
    }

    Table table;
    table.columns = {"q_bar", "delta_over_gamma", "regime", "r_star", "q_crit"};
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        for (std::size_t j = 0; j < q_values.size(); ++j) {
            const Cell& cell = cells[i * q_values.size() + j];
            table.rows.push_back({format_double(q_values[j]), format_double(ratios[i]),
                                  cell.r_star > 0.0 ? "conditional" : "unconditional",
                                  format_double(cell.r_star),
                                  cell.q_crit ? format_double(*cell.q_crit) : ""});
        }
    }

    std::vector<path> written;
    emit(spec.output_dir, "phase_sweep.csv", table_to_csv(table), written);
    return written;
}

std::vector<path> run_ensemble(const ExperimentSpec& spec) {
    if (!spec.seed)
        throw std::invalid_argument("ensemble: a seed is required whenever randomness is used");
    if (spec.members < 2) throw std::invalid_argument("ensemble: need at least two members");
    if (spec.activities < 1 || spec.capabilities < 1)
        throw std::invalid_argument("ensemble: matrix dimensions must be positive");
    check_range("q_lo", spec.q_lo, 0.0, 1.0);
    check_range("q_hi", spec.q_hi, spec.q_lo, 1.0);
    check_range("r0_lo", spec.r0_lo, 0.0, 1.0);
    check_range("r0_hi", spec.r0_hi, spec.r0_lo, 1.0);

    // All draws happen here, sequentially, so the tables do not depend on the
    // thread count.
    SplitMix64 rng(*spec.seed);
    Matrix qm(spec.activities, spec.capabilities);
    for (std::size_t p = 0; p < spec.activities; ++p)
        for (std::size_t b = 0; b < spec.capabilities; ++b)
            qm(p, b) = rng.uniform(spec.q_lo, spec.q_hi);
    Matrix r0(spec.members, spec.capabilities);
    for (std::size_t c = 0; c < spec.members; ++c)
        for (std::size_t b = 0; b < spec.capabilities; ++b)
            r0(c, b) = rng.uniform(spec.r0_lo, spec.r0_hi);

    const CapabilityRequirements q(qm);
    const Endowments start(r0);
    const std::vector<double> grid = time_grid(spec.ensemble_t_end, spec.ensemble_dt);
    const Trajectory traj = integrate_coupled(q, start, spec.params, grid, spec.max_step);

    const std::size_t C = spec.members, B = spec.capabilities;
    const double threshold = 0.99;

    // Mean endowment per member over time.
    Trajectory means;
    means.times = traj.times;
    means.series.reserve(C);
    for (std::size_t c = 0; c < C; ++c) means.series.push_back("m" + std::to_string(c));
    means.values.reserve(traj.values.size());
    for (const auto& row : traj.values) {
        std::vector<double> m(C, 0.0);
        for (std::size_t c = 0; c < C; ++c) {
            double sum = 0.0;
            for (std::size_t b = 0; b < B; ++b) sum += row[c * B + b];
            m[c] = sum / static_cast<double>(B);
        }
        means.values.push_back(std::move(m));
    }

    std::vector<double> reach_time(C);
    for (std::size_t c = 0; c < C; ++c)
        reach_time[c] = time_to_threshold(means, c, threshold).value_or(spec.ensemble_t_end);

    // Early growth window: a tenth of the median time to the threshold, but at
    // least one sampling interval.
    const double t_small = std::max(0.1 * median(reach_time), spec.ensemble_dt);
    std::vector<double> initial(C), early_growth(C);
    for (std::size_t c = 0; c < C; ++c) {
        initial[c] = means.values[0][c];
        early_growth[c] = (sample_linear(means, c, t_small) - initial[c]) / t_small;
    }
    const double correlation = spearman(initial, early_growth);

    const double mean_q = [&] {
        double sum = 0.0;
        for (double v : q.column_means()) sum += v;
        return sum / static_cast<double>(B);
    }();
    const auto q_crit = critical_intensity(spec.params);
    const char* regime = (q_crit && mean_q > *q_crit) ? "conditional" : "unconditional";

    Table members_table;
    members_table.columns = {"member", "mean_r0", "early_growth", "time_to_threshold"};
    for (std::size_t c = 0; c < C; ++c) {
        members_table.rows.push_back({std::to_string(c), format_double(initial[c]),
                                      format_double(early_growth[c]),
                                      format_double(reach_time[c])});
    }

    Table summary;
    summary.columns = {"key", "value"};
    summary.rows = {
        {"members", std::to_string(C)},
        {"activities", std::to_string(spec.activities)},
        {"capabilities", std::to_string(B)},
        {"gamma", format_double(spec.params.gamma)},
        {"delta", format_double(spec.params.delta)},
        {"q_lo", format_double(spec.q_lo)},
        {"q_hi", format_double(spec.q_hi)},
        {"r0_lo", format_double(spec.r0_lo)},
        {"r0_hi", format_double(spec.r0_hi)},
        {"seed", std::to_string(*spec.seed)},
        {"mean_q", format_double(mean_q)},
        {"q_crit", q_crit ? format_double(*q_crit) : ""},
        {"regime", regime},
        {"threshold", format_double(threshold)},
        {"median_time_to_threshold", format_double(median(reach_time))},
        {"t_small", format_double(t_small)},
        {"spearman_r0_growth", format_double(correlation)},
    };

    std::vector<path> written;
    emit(spec.output_dir, "ensemble_members.csv", table_to_csv(members_table), written);
    emit(spec.output_dir, "ensemble_summary.csv", table_to_csv(summary), written);
    return written;
}

}  // namespace

std::vector<path> run_experiment(const ExperimentSpec& spec) {
    std::filesystem::create_directories(spec.output_dir);
    if (spec.name == "growth-curves") return run_growth_curves(spec);
    if (spec.name == "bifurcation") return run_bifurcation(spec);
    if (spec.name == "trajectories") return run_trajectories(spec, nullptr);
    if (spec.name == "gap") {
        std::vector<path> written;
        run_trajectories(spec, &written);
        return written;
    }
    if (spec.name == "phase-sweep") return run_phase_sweep(spec);
    if (spec.name == "ensemble") return run_ensemble(spec);
    throw std::invalid_argument("unknown experiment '" + spec.name +
                                "' (expected growth-curves, bifurcation, trajectories, gap, "
                                "phase-sweep, or ensemble)");
}

}  // namespace capdyn
