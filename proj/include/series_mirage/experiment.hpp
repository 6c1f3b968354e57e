#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace series_mirage {

enum class Experiment {
    Example1,      ///< u0 = 1 + 2 cosh 2x, linear equation
    Example2,      ///< u0 = exp(3ix), linear equation
    Example3,      ///< u0 = exp(ix), cubic NLS, gamma = 2
    Example4,      ///< u0 = exp(ix), cubic NLS, gamma = -2
    Operator,      ///< exp(-itA) u0 for the Dirichlet second-difference operator
    GaussianFree,  ///< spectral free propagation of a Gaussian packet
    NlsReference,  ///< split-step NLS against the plane-wave solution
    Classify,      ///< normalizability of the example data
};

enum class MethodChoice { Hpm, Adm, Taylor, All };

std::string to_string(Experiment e);
std::string to_string(MethodChoice m);

/// Bad configuration; the CLI maps it to exit status 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Values given explicitly by flags (or a config file). Unset fields take
/// per-experiment defaults.
struct ConfigOverrides {
    std::optional<std::string> experiment;
    std::optional<std::string> method;
    std::optional<int> order;
    std::optional<double> gamma;
    std::optional<int> grid_n;
    std::optional<double> grid_L;
    std::optional<double> t0;
    std::optional<double> t1;
    std::optional<int> t_steps;
    std::optional<double> t;  ///< single time: sets t0 = t1 = t, t_steps = 0
    std::optional<double> x0;
    std::optional<double> x1;
    std::optional<int> x_steps;
    std::optional<int> n;     ///< operator dimension
    std::optional<double> h;  ///< operator grid spacing
    std::optional<double> dt;
    std::optional<double> sigma;
    std::optional<double> alpha;
    std::optional<std::string> out;
};

/// Reads a JSON config file. Throws ConfigError naming the offending key or
/// the parse position.
ConfigOverrides read_config_file(const std::filesystem::path& path);
ConfigOverrides overrides_from_json(const nlohmann::json& doc, const std::string& origin);

/// Fields of `top` win over `base`.
ConfigOverrides merge(const ConfigOverrides& base, const ConfigOverrides& top);

struct ExperimentConfig {
    Experiment experiment = Experiment::Example1;
    MethodChoice method = MethodChoice::All;
    int order = 20;
    std::optional<double> gamma;
    int grid_n = 64;
    double grid_L = 0.0;
    double t0 = 0.0;
    double t1 = 1.0;
    int t_steps = 10;
    double x0 = -1.0;
    double x1 = 1.0;
    int x_steps = 20;
    int n = 16;
    double h = 1.0;
    double dt = 1e-3;
    double sigma = 0.5;
    double alpha = 1.0;
    std::filesystem::path out;
    /// Names of fields that took default values.
    std::vector<std::string> defaults_applied;

    /// t0 + (t1 - t0) k / t_steps for k = 0..t_steps.
    std::vector<double> times() const;
    std::vector<double> xs() const;
    nlohmann::json to_json() const;
};

/// Applies defaults for the chosen experiment and validates ranges. The env
/// value (SERIES_MIRAGE_OUT) replaces the default output directory.
/// Throws ConfigError on unknown experiments/methods or out-of-range values.
ExperimentConfig resolve_config(const ConfigOverrides& given,
                                const std::optional<std::string>& env_out);

/// Exit statuses of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitCrossCheck = 2;
inline constexpr int kExitNumerical = 3;

struct RunResult {
    int status = kExitOk;
    std::vector<std::filesystem::path> files;
    std::vector<std::string> failed_checks;
};

/// Runs one experiment and writes manifest.json plus the CSV artifacts into
/// config.out. Numerical failures propagate as OverflowError/DivergenceError.
RunResult run(const ExperimentConfig& config);

}  // namespace series_mirage
