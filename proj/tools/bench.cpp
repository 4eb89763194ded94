// Benchmark of the parallel kernels against their serial references. The two
// paths share per-cell arithmetic, so the max-diff column should print 0.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "capdyn/kinematics.hpp"
#include "capdyn/model.hpp"
#include "capdyn/random.hpp"
#include "capdyn/reference.hpp"
#include "capdyn/riccati.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

double max_abs_diff(const capdyn::Matrix& a, const capdyn::Matrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            worst = std::max(worst, std::fabs(a(i, j) - b(i, j)));
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t economies = 96, activities = 192, capabilities = 24, repeat = 5;
    double t_end = 0.2, step = 1e-3;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string key = argv[i];
        const double v = std::atof(argv[i + 1]);
        if (key == "--economies") economies = static_cast<std::size_t>(v);
        else if (key == "--activities") activities = static_cast<std::size_t>(v);
        else if (key == "--capabilities") capabilities = static_cast<std::size_t>(v);
        else if (key == "--repeat") repeat = static_cast<std::size_t>(v);
        else if (key == "--t-end") t_end = v;
        else if (key == "--step") step = v;
        else {
            std::fprintf(stderr, "unknown option %s\n", key.c_str());
            return 2;
        }
    }

    capdyn::SplitMix64 rng(7);
    capdyn::Matrix qm(activities, capabilities), rm(economies, capabilities);
    for (std::size_t p = 0; p < activities; ++p)
        for (std::size_t b = 0; b < capabilities; ++b) qm(p, b) = rng.uniform(0.0, 0.6);
    for (std::size_t c = 0; c < economies; ++c)
        for (std::size_t b = 0; b < capabilities; ++b) rm(c, b) = rng.uniform(0.2, 0.9);
    const capdyn::CapabilityRequirements q(qm);
    const capdyn::Endowments r(rm);
    const capdyn::ModelParams params(1.0, 0.1);

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("size: %zu economies x %zu activities x %zu capabilities, repeat %zu\n\n",
                economies, activities, capabilities, repeat);
    std::printf("%-22s %12s %12s %9s %12s\n", "kernel", "serial ms", "parallel ms", "speedup",
                "max |diff|");

    auto report = [&](const char* name, auto serial_fn, auto parallel_fn) {
        auto t0 = clock_type::now();
        auto serial_result = serial_fn();
        for (std::size_t i = 1; i < repeat; ++i) serial_result = serial_fn();
        const double serial_ms = ms_since(t0) / static_cast<double>(repeat);

        t0 = clock_type::now();
        auto parallel_result = parallel_fn();
        for (std::size_t i = 1; i < repeat; ++i) parallel_result = parallel_fn();
        const double parallel_ms = ms_since(t0) / static_cast<double>(repeat);

        std::printf("%-22s %12.3f %12.3f %8.2fx %12.3g\n", name, serial_ms, parallel_ms,
                    serial_ms / parallel_ms, max_abs_diff(serial_result, parallel_result));
    };

    report(
        "output", [&] { return capdyn::ref::output(q, r); },
        [&] { return capdyn::output(q, r); });
    report(
        "growth_rate_multi", [&] { return capdyn::ref::growth_rate_multi(q, r, params); },
        [&] { return capdyn::growth_rate_multi(q, r, params); });

    const std::vector<double> grid = capdyn::time_grid(t_end, t_end);
    auto integrate_with = [&](auto rhs) {
        // Re-run the coupled integrator with the given rhs; mirrors
        // integrate_coupled but lets the benchmark swap the kernel.
        capdyn::Matrix state = r.r();
        const std::size_t n = state.rows() * state.cols();
        capdyn::Matrix k1 = state, k2 = state, k3 = state, k4 = state, stage = state;
        const auto steps = static_cast<std::size_t>(std::ceil(t_end / step));
        const double h = t_end / static_cast<double>(steps);
        for (std::size_t s = 0; s < steps; ++s) {
            rhs(state, k1);
            for (std::size_t j = 0; j < n; ++j)
                stage.data()[j] = state.data()[j] + 0.5 * h * k1.data()[j];
            rhs(stage, k2);
            for (std::size_t j = 0; j < n; ++j)
                stage.data()[j] = state.data()[j] + 0.5 * h * k2.data()[j];
            rhs(stage, k3);
            for (std::size_t j = 0; j < n; ++j)
                stage.data()[j] = state.data()[j] + h * k3.data()[j];
            rhs(stage, k4);
            for (std::size_t j = 0; j < n; ++j)
                state.data()[j] += h / 6.0 * (k1.data()[j] + 2.0 * k2.data()[j] +
                                              2.0 * k3.data()[j] + k4.data()[j]);
        }
        return state;
    };
    report(
        "coupled integration",
        [&] {
            return integrate_with([&](const capdyn::Matrix& s, capdyn::Matrix& out) {
                capdyn::ref::growth_rhs(q, s, params, out);
            });
        },
        [&] {
            return integrate_with([&](const capdyn::Matrix& s, capdyn::Matrix& out) {
                capdyn::growth_rhs(q, s, params, out);
            });
        });

    return 0;
}
