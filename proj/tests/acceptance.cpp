// Acceptance suite: every release-gating check in one binary, one line of
// output per criterion. Exits nonzero if any criterion fails.

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "capdyn/csv.hpp"
#include "capdyn/kinematics.hpp"
#include "capdyn/model.hpp"
#include "capdyn/random.hpp"
#include "capdyn/relatedness.hpp"
#include "capdyn/riccati.hpp"

using namespace capdyn;
namespace fs = std::filesystem;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw Failure(message);
}

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------------------
// 1. Analytic-numeric equivalence: closed forms against fixed-step
//    fourth-order integration (step 1e-3) over t in [0, 50].
void criterion_equivalence() {
    int combos = 0;
    const std::vector<double> grid = time_grid(50.0, 1.0);
    for (double gamma : {0.5, 1.0}) {
        for (int qi = 1; qi <= 9; ++qi) {
            const double q_bar = qi / 10.0;
            for (double r0 : {0.0, 0.1, 0.5, 0.9}) {
                const LogisticRiccatiParams p{gamma * (1.0 - q_bar), gamma * q_bar};
                const RiccatiCoefficients k =
                    coefficients_single(q_bar, ModelParams(gamma, 0.0));
                const Trajectory traj = integrate_frozen(k, r0, grid, 1e-3);
                double worst = 0.0;
                for (std::size_t i = 0; i < grid.size(); ++i)
                    worst = std::max(worst,
                                     std::fabs(closed_form(r0, p, grid[i]) -
                                               traj.values[i][0]));
                require(worst <= 1e-6, "closed_form deviates by " + fmt(worst) +
                                           " at gamma=" + fmt(gamma) +
                                           " qbar=" + fmt(q_bar) + " r0=" + fmt(r0));
                ++combos;

                for (double delta : {0.1, 0.2}) {
                    const RiccatiCoefficients kd =
                        coefficients_single(q_bar, ModelParams(gamma, delta));
                    const Trajectory td = integrate_frozen(kd, r0, grid, 1e-3);
                    double worst_d = 0.0;
                    for (std::size_t i = 0; i < grid.size(); ++i)
                        worst_d = std::max(worst_d,
                                           std::fabs(closed_form_general(r0, kd, grid[i]) -
                                                     td.values[i][0]));
                    require(worst_d <= 1e-8,
                            "closed_form_general deviates by " + fmt(worst_d) +
                                " at gamma=" + fmt(gamma) + " qbar=" + fmt(q_bar) +
                                " r0=" + fmt(r0) + " delta=" + fmt(delta));
                }
            }
        }
    }
    require(combos >= 50, "only " + std::to_string(combos) + " parameter combinations");
}

// ---------------------------------------------------------------------------
// 2. Threshold formula and order-parameter continuity at the transition.
void criterion_threshold() {
    const ModelParams params(1.0, 0.2);
    const auto q_crit = critical_intensity(params);
    require(q_crit.has_value(), "critical intensity missing for gamma=1, delta=0.2");
    require(std::fabs(*q_crit - 5.0 / 9.0) <= 1e-12,
            "critical intensity " + fmt(*q_crit) + " != 5/9");
    require(argmax_growth_single(*q_crit - 1e-3, params) == 0.0,
            "argmax below the threshold is not 0");
    const double above = argmax_growth_single(*q_crit + 1e-3, params);
    require(above > 0.0 && above < 2e-3,
            "argmax just above the threshold is " + fmt(above) + ", expected < 2e-3");
}

// ---------------------------------------------------------------------------
// 3. Piecewise argmax against a 1e5-point grid search, and the frozen
//    interior value at (0.9, gamma=1, delta=0.2).
void criterion_argmax_oracle() {
    const std::pair<double, double> param_pairs[] = {{1.0, 0.0}, {1.0, 0.2}, {0.5, 0.3}};
    for (const auto& [gamma, delta] : param_pairs) {
        const ModelParams params(gamma, delta);
        for (int i = 1; i <= 99; ++i) {
            const double q_bar = i / 100.0;
            const double formula = argmax_growth_single(q_bar, params);
            double best_r = 0.0, best = growth_rate_single(0.0, q_bar, params);
            for (int g = 1; g < 100000; ++g) {
                const double r = g / 99999.0;
                const double v = growth_rate_single(r, q_bar, params);
                if (v > best) {
                    best = v;
                    best_r = r;
                }
            }
            require(std::fabs(formula - best_r) <= 2e-4,
                    "argmax formula " + fmt(formula) + " vs grid " + fmt(best_r) +
                        " at qbar=" + fmt(q_bar) + " gamma=" + fmt(gamma) +
                        " delta=" + fmt(delta));
        }
    }
    const double interior = argmax_growth_single(0.9, ModelParams(1.0, 0.2));
    require(std::fabs(interior - 31.0 / 90.0) <= 1e-6,
            "interior argmax " + fmt(interior) + " != 31/90");
}

// ---------------------------------------------------------------------------
// 4. Regime semantics on a 1e4-point growth grid.
void criterion_regime_semantics() {
    const ModelParams params(1.0, 0.2);
    const double q_crit = *critical_intensity(params);
    for (int i = 1; i <= 20; ++i) {
        const double q_bar = q_crit * i / 21.0;  // strictly below the threshold
        const double at_zero = growth_rate_single(0.0, q_bar, params);
        for (int g = 1; g <= 10000; ++g) {
            const double r = g / 10000.0;
            require(growth_rate_single(r, q_bar, params) < at_zero,
                    "growth at r=" + fmt(r) + " not dominated by r=0 for qbar=" +
                        fmt(q_bar));
        }
    }
    for (int i = 1; i <= 20; ++i) {
        const double q_bar = q_crit + (1.0 - q_crit) * i / 21.0;
        const double at_zero = growth_rate_single(0.0, q_bar, params);
        bool interior_wins = false;
        for (int g = 1; g <= 10000 && !interior_wins; ++g)
            interior_wins = growth_rate_single(g / 10000.0, q_bar, params) > at_zero;
        require(interior_wins, "no interior point beats r=0 for qbar=" + fmt(q_bar));
    }
}

// ---------------------------------------------------------------------------
// 5. Gradient suite: first partials, the cross-partial, and the growth
//    coupling against central finite differences on 100 random instances.
//    Every function differentiated here is multilinear in the perturbed
//    entry, so the differences carry only roundoff.
void criterion_gradients() {
    SplitMix64 rng(901);
    for (int it = 0; it < 100; ++it) {
        const std::size_t P = 1 + rng.next() % 8;
        const std::size_t B = 2 + rng.next() % 7;
        const std::size_t C = 1 + rng.next() % 3;
        Matrix qm(P, B), rm(C, B);
        for (std::size_t p = 0; p < P; ++p)
            for (std::size_t b = 0; b < B; ++b) qm(p, b) = rng.uniform(0.25, 0.7);
        for (std::size_t c = 0; c < C; ++c)
            for (std::size_t b = 0; b < B; ++b) rm(c, b) = rng.uniform(0.3, 0.9);
        const CapabilityRequirements q(qm);
        const Endowments r(rm);
        const ModelParams params(rng.uniform(0.5, 1.0), rng.uniform(0.0, 0.3));
        const std::size_t c = rng.next() % C;
        const std::size_t p = rng.next() % P;
        const std::size_t b = rng.next() % B;
        std::size_t b2 = rng.next() % B;
        if (b2 == b) b2 = (b + 1) % B;

        const double h1 = 1e-5;
        const auto output_at_r = [&](double v) {
            Matrix m = rm;
            m(c, b) = v;
            return output(q, Endowments(m))(c, p);
        };
        const double fd_r = (output_at_r(rm(c, b) + h1) - output_at_r(rm(c, b) - h1)) /
                            (2.0 * h1);
        const double an_r = output_grad_r(q, r, c, p, b);
        require(std::fabs(fd_r - an_r) / std::fabs(an_r) <= 1e-6,
                "dY/dr mismatch: fd=" + fmt(fd_r) + " analytic=" + fmt(an_r));

        const auto output_at_q = [&](double v) {
            Matrix m = qm;
            m(p, b) = v;
            return output(CapabilityRequirements(m), r)(c, p);
        };
        const double fd_q = (output_at_q(qm(p, b) + h1) - output_at_q(qm(p, b) - h1)) /
                            (2.0 * h1);
        const double an_q = output_grad_q(q, r, c, p, b);
        require(std::fabs(fd_q - an_q) / std::fabs(an_q) <= 1e-6,
                "dY/dq mismatch: fd=" + fmt(fd_q) + " analytic=" + fmt(an_q));

        const double h2 = 1e-4;
        const auto output_at_rr = [&](double u, double v) {
            Matrix m = rm;
            m(c, b) = u;
            m(c, b2) = v;
            return output(q, Endowments(m))(c, p);
        };
        const double x = rm(c, b), y = rm(c, b2);
        const double fd_cross =
            (output_at_rr(x + h2, y + h2) - output_at_rr(x + h2, y - h2) -
             output_at_rr(x - h2, y + h2) + output_at_rr(x - h2, y - h2)) /
            (4.0 * h2 * h2);
        const double an_cross = cross_partial_output(q, r, c, p, b, b2);
        require(std::fabs(fd_cross - an_cross) / std::fabs(an_cross) <= 1e-5,
                "cross partial mismatch: fd=" + fmt(fd_cross) + " analytic=" +
                    fmt(an_cross));

        const double h3 = 0.02;
        const auto growth_at = [&](double v) {
            Matrix m = rm;
            m(c, b2) = v;
            return growth_rate_multi(q, Endowments(m), params)(c, b);
        };
        const double fd_coupling = (growth_at(y + h3) - growth_at(y - h3)) / (2.0 * h3);
        const double an_coupling = growth_coupling(q, r, params, c, b, b2);
        require(std::fabs(fd_coupling - an_coupling) / std::fabs(an_coupling) <= 1e-6,
                "coupling mismatch: fd=" + fmt(fd_coupling) + " analytic=" +
                    fmt(an_coupling));
    }
}

// ---------------------------------------------------------------------------
// 6. Relatedness sign and monotonicity.
void criterion_relatedness() {
    SplitMix64 rng(902);
    for (int it = 0; it < 1000; ++it) {
        const std::size_t P = 1 + rng.next() % 6;
        const std::size_t B = 2 + rng.next() % 5;
        Matrix qm(P, B), rm(1, B);
        for (std::size_t p = 0; p < P; ++p)
            for (std::size_t b = 0; b < B; ++b) qm(p, b) = rng.uniform(0.0, 1.0);
        for (std::size_t b = 0; b < B; ++b) rm(0, b) = rng.uniform(0.0, 1.0);
        const CapabilityRequirements q(qm);
        const Endowments r(rm);
        const ModelParams params(rng.uniform(0.05, 1.0), rng.uniform(0.0, 1.0));
        const std::size_t b = rng.next() % B;
        std::size_t b2 = rng.next() % B;
        if (b2 == b) b2 = (b + 1) % B;
        require(growth_coupling(q, r, params, 0, b, b2) >= 0.0,
                "negative growth coupling encountered");
    }

    for (int it = 0; it < 100; ++it) {
        const std::size_t P = 1 + rng.next() % 6;
        const std::size_t B = 2 + rng.next() % 5;
        Matrix qm(P, B), rm(1, B);
        for (std::size_t p = 0; p < P; ++p)
            for (std::size_t b = 0; b < B; ++b) qm(p, b) = rng.uniform(0.1, 0.9);
        for (std::size_t b = 0; b < B; ++b) rm(0, b) = rng.uniform(0.1, 0.9);
        const CapabilityRequirements q(qm);
        const Endowments r(rm);
        const ModelParams params(1.0, 0.1);
        const std::size_t b = rng.next() % B;
        std::size_t b2 = rng.next() % B;
        if (b2 == b) b2 = (b + 1) % B;
        const double base = growth_coupling(q, r, params, 0, b, b2);

        for (std::size_t p = 0; p < P; ++p) {
            Matrix bumped = qm;
            bumped(p, b2) = qm(p, b2) + 0.05;
            require(growth_coupling(CapabilityRequirements(bumped), r, params, 0, b, b2) >
                        base,
                    "coupling not strictly increasing in a shared intensity");
        }
        for (std::size_t b3 = 0; b3 < B; ++b3) {
            if (b3 == b || b3 == b2) continue;
            Matrix bumped = rm;
            bumped(0, b3) = rm(0, b3) + 0.05;
            require(growth_coupling(q, Endowments(bumped), params, 0, b, b2) >=
                        base - 1e-12,
                    "coupling decreased in a third-capability endowment");
        }
    }
}

// ---------------------------------------------------------------------------
// 7. Trajectory panel, varying start: convergence plus gap geometry
//    (rise from t = 0, one interior peak, decay below 10% of it).
void criterion_start_panel() {
    const double q_qe = 0.9, rate = 0.25;
    const std::vector<double> grid = time_grid(60.0, 0.05);
    const std::vector<double> starts = {0.1, 0.3, 0.5};
    std::vector<std::vector<double>> curves;
    for (double r0 : starts) {
        std::vector<double> curve(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            curve[i] = closed_form_weighted(r0, q_qe, rate, grid[i]);
        require(curve.back() > 0.99,
                "trajectory from r0=" + fmt(r0) + " does not exceed 0.99 in the window");
        curves.push_back(std::move(curve));
    }
    for (std::size_t hi : {std::size_t{2}, std::size_t{1}}) {
        std::vector<double> gap(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) gap[i] = curves[hi][i] - curves[0][i];
        require(gap[1] > gap[0], "gap does not rise from t = 0");
        std::size_t peak = 0;
        for (std::size_t i = 1; i < gap.size(); ++i)
            if (gap[i] > gap[peak]) peak = i;
        require(peak > 0 && peak + 1 < gap.size(), "gap peak is not interior");
        for (std::size_t i = 0; i < peak; ++i)
            require(gap[i + 1] > gap[i], "gap not strictly rising before its peak");
        for (std::size_t i = peak; i + 1 < gap.size(); ++i)
            require(gap[i + 1] < gap[i], "gap not strictly decaying after its peak");
        require(gap.back() < 0.1 * gap[peak],
                "gap ends at " + fmt(gap.back()) + ", above 10% of its peak " +
                    fmt(gap[peak]));
    }
}

// ---------------------------------------------------------------------------
// 8. Trajectory panel, varying rate: time-to-0.99 strictly decreasing in the
//    complementarity rate, and the weakest rate still far from saturation at
//    500 plotted steps of 0.025 model-time units.
void criterion_rate_panel() {
    const double r0 = 0.5, q_qe = 0.7;
    const double plotted_step = 0.025;  // reconciles the quoted step counts
    double previous = 1e300;
    for (double rate : {0.1, 0.5, 0.9}) {
        const double gap0 = 1.0 - r0;
        const double target =
            (gap0 / (1.0 - 0.99) - q_qe * gap0) / (1.0 - q_qe * gap0);
        const double t99 = std::log(target) / rate;
        require(t99 < previous, "time to 0.99 not strictly decreasing in the rate");
        previous = t99;
    }
    const double at_window_end = closed_form_weighted(r0, q_qe, 0.1, 500.0 * plotted_step);
    require(at_window_end < 1.0 - 1e-3,
            "weak-complementarity trajectory reached " + fmt(at_window_end) +
                " before 500 plotted steps");
}

// ---------------------------------------------------------------------------
// 9. Steady-state shift under depreciation.
void criterion_steady_state() {
    double previous = 1.0;
    for (double delta : {0.05, 0.1, 0.2}) {
        const RiccatiCoefficients k = coefficients_single(0.8, ModelParams(1.0, delta));
        const auto states = steady_states(k);
        require(!states.empty(), "no steady state found for delta=" + fmt(delta));
        const SteadyState stable = states.back();
        require(stable.stable, "largest in-range root is not stable");
        const double largest_root =
            (-k.b - std::sqrt(k.b * k.b - 4.0 * k.a * k.c)) / (2.0 * k.a);
        require(std::fabs(stable.location - largest_root) <= 1e-12,
                "stable equilibrium is not the larger quadratic root");
        require(stable.location < 1.0, "equilibrium did not drop below 1");
        require(stable.location < previous, "equilibrium not decreasing in delta");
        previous = stable.location;
    }
}

// ---------------------------------------------------------------------------
// 10. CLI determinism: every experiment-producing command, run twice with the
//     same config and seed, emits byte-identical files.
std::string cli_path() {
    if (const char* env = std::getenv("CAPDYN_CLI")) return env;
    return CAPDYN_CLI_PATH;
}

int run_cli(const std::string& args) {
    const std::string cmd = "'" + cli_path() + "' " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> dir_contents(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(dir))
        if (entry.is_regular_file())
            out[fs::relative(entry.path(), dir).string()] = read_file(entry.path());
    return out;
}

void criterion_cli_determinism() {
    const fs::path root =
        fs::temp_directory_path() / ("capdyn_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);

    const fs::path q_csv = root / "q.csv";
    const fs::path r_csv = root / "r.csv";
    write_file_atomic(q_csv, "activity,b0,b1\np0,0.5,0.8\np1,0.2,0.4\n");
    write_file_atomic(r_csv, "economy,b0,b1\nc0,0.3,0.7\nc1,0.9,0.2\n");
    const fs::path ensemble_cfg = root / "ensemble.cfg";
    write_file_atomic(ensemble_cfg,
                      "members = 10\nactivities = 4\ncapabilities = 3\nseed = 42\n"
                      "t_end = 30\ndt = 1\nstep = 0.01\n");

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"figures_growth", "figures --name growth-curves --gamma 1 --delta 0.2 --svg --out "},
        {"figures_bifurcation", "figures --name bifurcation --gamma 1 --delta 0.2 --out "},
        {"figures_trajectories", "figures --name trajectories --out "},
        {"figures_gap", "figures --name gap --out "},
        {"phase_sweep", "phase --sweep --gamma 1 --q-points 21 --ratio-points 7 --out "},
        {"bifurcation_cmd", "bifurcation --gamma 1 --delta 0.2 --points 51 --svg --out "},
        {"ensemble", "ensemble --config " + ensemble_cfg.string() + " --out "},
        {"eval", "eval --q " + q_csv.string() + " --r " + r_csv.string() + " --grads --out "},
        {"relatedness",
         "relatedness --q " + q_csv.string() + " --r " + r_csv.string() + " --out "},
        {"simulate", "simulate --closed-form --r0 0.2 --qbar 0.8 --rate 0.3 --t-end 5 "
                     "--dt 0.1 --out "},
    };

    for (const auto& [name, prefix] : commands) {
        const fs::path run_a = root / (name + "_a");
        const fs::path run_b = root / (name + "_b");
        std::string arg_a = prefix + run_a.string();
        std::string arg_b = prefix + run_b.string();
        if (name == "simulate") {
            fs::create_directories(run_a);
            fs::create_directories(run_b);
            arg_a = prefix + (run_a / "traj.csv").string();
            arg_b = prefix + (run_b / "traj.csv").string();
        }
        require(run_cli(arg_a) == 0, name + ": first run failed");
        require(run_cli(arg_b) == 0, name + ": second run failed");
        const auto a = dir_contents(run_a);
        const auto b = dir_contents(run_b);
        require(!a.empty(), name + ": no output files written");
        require(a.size() == b.size(), name + ": file sets differ between runs");
        for (const auto& [file, content] : a) {
            const auto it = b.find(file);
            require(it != b.end(), name + ": " + file + " missing from the second run");
            require(it->second == content, name + ": " + file + " differs between runs");
        }
    }
    fs::remove_all(root);
}

struct Criterion {
    int id;
    const char* title;
    std::function<void()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "analytic-numeric equivalence (1e-6 / 1e-8)", criterion_equivalence},
        {2, "critical intensity 5/9 and order-parameter continuity", criterion_threshold},
        {3, "piecewise argmax vs 1e5-point grid search", criterion_argmax_oracle},
        {4, "regime semantics on a dense growth grid", criterion_regime_semantics},
        {5, "gradient suite vs central finite differences", criterion_gradients},
        {6, "growth coupling sign and monotonicity", criterion_relatedness},
        {7, "varying-start trajectories and gap geometry", criterion_start_panel},
        {8, "varying-rate trajectories and the slow-rate bound", criterion_rate_panel},
        {9, "steady-state shift under depreciation", criterion_steady_state},
        {10, "CLI byte-for-byte determinism", criterion_cli_determinism},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        try {
            criterion.run();
            std::printf("PASS  criterion %2d: %s\n", criterion.id, criterion.title);
        } catch (const std::exception& e) {
            std::printf("FAIL  criterion %2d: %s -- %s\n", criterion.id, criterion.title,
                        e.what());
            ++failed;
        }
        std::fflush(stdout);
    }
    if (failed) std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed ? 1 : 0;
}
