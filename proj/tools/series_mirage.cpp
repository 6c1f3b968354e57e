// series-mirage: reproduces the series-solution experiments and writes
// manifest.json plus CSV tables into the output directory.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "series_mirage/errors.hpp"
#include "series_mirage/experiment.hpp"

namespace sm = series_mirage;

int main(int argc, char** argv) {
    CLI::App app{"HPM/ADM/Taylor series experiments for linear and cubic Schrodinger equations",
                 "series-mirage"};
    // --h is the operator grid spacing, so help is long-form only.
    app.set_help_flag("--help", "Print this help message and exit");

    sm::ConfigOverrides flags;
    std::string config_path;
    app.add_option("experiment", flags.experiment,
                   "example1|example2|example3|example4|operator|gaussian-free|nls-reference|classify");
    app.add_option("--method", flags.method, "hpm|adm|taylor|all");
    app.add_option("--order", flags.order, "series truncation order N (<= 64)");
    app.add_option("--gamma", flags.gamma, "cubic NLS coupling");
    app.add_option("--grid-n", flags.grid_n, "grid points (power of two)");
    app.add_option("--grid-L", flags.grid_L, "periodic domain length");
    app.add_option("--t0", flags.t0, "first time");
    app.add_option("--t1", flags.t1, "last time");
    app.add_option("--t-steps", flags.t_steps, "number of time intervals between t0 and t1");
    app.add_option("--t", flags.t, "single time (replaces t0/t1/t-steps)");
    app.add_option("--x0", flags.x0, "first x sample");
    app.add_option("--x1", flags.x1, "last x sample");
    app.add_option("--x-steps", flags.x_steps, "number of x intervals");
    app.add_option("--n", flags.n, "operator dimension");
    app.add_option("--h", flags.h, "operator grid spacing");
    app.add_option("--dt", flags.dt, "split-step time step");
    app.add_option("--sigma", flags.sigma, "Gaussian width");
    app.add_option("--alpha", flags.alpha, "plane-wave wavenumber");
    app.add_option("--out", flags.out, "output directory (default $SERIES_MIRAGE_OUT or ./series_mirage_out)");
    app.add_option("--config", config_path, "JSON config file; flags override its values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : sm::kExitConfig;
    }

    sm::ExperimentConfig config;
    try {
        sm::ConfigOverrides given = flags;
        if (!config_path.empty()) given = sm::merge(sm::read_config_file(config_path), flags);
        std::optional<std::string> env_out;
        if (const char* env = std::getenv("SERIES_MIRAGE_OUT")) env_out = env;
        config = sm::resolve_config(given, env_out);
    } catch (const sm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return sm::kExitConfig;
    }

    try {
        const auto result = sm::run(config);
        for (const auto& f : result.files) std::cout << f.string() << '\n';
        for (const auto& check : result.failed_checks)
            std::cerr << "cross-check failed: " << check << '\n';
        return result.status;
    } catch (const sm::OverflowError& e) {
        std::cerr << "numerical overflow: " << e.what() << '\n';
        return sm::kExitNumerical;
    } catch (const sm::DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << '\n';
        return sm::kExitNumerical;
    } catch (const sm::InvalidInputError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return sm::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return sm::kExitConfig;
    }
}
