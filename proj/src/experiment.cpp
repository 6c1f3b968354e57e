#include "series_mirage/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "series_mirage/diagnostics.hpp"
#include "series_mirage/exact.hpp"
#include "series_mirage/format.hpp"
#include "series_mirage/grid.hpp"
#include "series_mirage/operator_series.hpp"
#include "series_mirage/series.hpp"

namespace series_mirage {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kCrossCheckTolerance = 1e-12;
constexpr double kNormTolerance = 1e-10;
constexpr double kPlaneWaveTolerance = 1e-8;
constexpr const char* kDefaultOut = "series_mirage_out";

const std::map<std::string, Experiment>& experiment_names() {
    static const std::map<std::string, Experiment> names{
        {"example1", Experiment::Example1},         {"example2", Experiment::Example2},
        {"example3", Experiment::Example3},         {"example4", Experiment::Example4},
        {"operator", Experiment::Operator},         {"gaussian-free", Experiment::GaussianFree},
        {"nls-reference", Experiment::NlsReference}, {"classify", Experiment::Classify},
    };
    return names;
}

bool is_series_experiment(Experiment e) {
    return e == Experiment::Example1 || e == Experiment::Example2 || e == Experiment::Example3 ||
           e == Experiment::Example4;
}

// Fields each experiment reads. Anything else given explicitly is rejected.
std::set<std::string> relevant_fields(Experiment e) {
    switch (e) {
        case Experiment::Example1:
        case Experiment::Example2:
            return {"method", "order", "t0", "t1", "t_steps", "x0", "x1", "x_steps", "out"};
        case Experiment::Example3:
        case Experiment::Example4:
            return {"method", "order", "gamma", "t0", "t1", "t_steps", "x0", "x1", "x_steps", "out"};
        case Experiment::Operator:
            return {"order", "n", "h", "t0", "t1", "t_steps", "out"};
        case Experiment::GaussianFree:
            return {"grid_n", "grid_L", "sigma", "t0", "t1", "t_steps", "out"};
        case Experiment::NlsReference:
            return {"gamma", "grid_n", "grid_L", "alpha", "dt", "t0", "t1", "t_steps", "out"};
        case Experiment::Classify:
            return {"out"};
    }
    return {};
}

template <typename T>
std::optional<T> read_field(const json& doc, const std::string& key, const std::string& origin) {
    if (!doc.contains(key)) return std::nullopt;
    const json& v = doc.at(key);
    try {
        if constexpr (std::is_same_v<T, int>) {
            if (!v.is_number_integer()) throw ConfigError("");
        } else if constexpr (std::is_same_v<T, double>) {
            if (!v.is_number()) throw ConfigError("");
        } else {
            if (!v.is_string()) throw ConfigError("");
        }
        return v.get<T>();
    } catch (const std::exception&) {
        throw ConfigError(origin + ": field '" + key + "' has the wrong type (" + v.dump() + ")");
    }
}

void write_terms_csv(std::ostream& out, const std::vector<SeriesSolution>& series) {
    out << "method,equation,term,t_power,re_c,im_c,re_a,im_a\n";
    for (const auto& sol : series) {
        const std::string tag = to_string(sol.method) + ',' + to_string(sol.equation.kind());
        for (int n = 0; n <= sol.order(); ++n) {
            const auto& coeffs = sol.terms[n].coeffs();
            for (std::size_t p = 0; p < coeffs.size(); ++p) {
                for (const auto& term : coeffs[p].terms()) {
                    out << tag << ',' << n << ',' << p << ',' << format_double(term.coeff.real()) << ','
                        << format_double(term.coeff.imag()) << ',' << format_double(term.alpha.real())
                        << ',' << format_double(term.alpha.imag()) << '\n';
                }
            }
        }
    }
}

class OutputDir {
public:
    explicit OutputDir(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    template <typename Writer>
    void write(const std::string& name, Writer&& writer) {
        const fs::path path = dir_ / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
        writer(out);
        if (!out) throw std::runtime_error("failed writing " + path.string());
        files_.push_back(path);
    }

    const std::vector<fs::path>& files() const { return files_; }

private:
    fs::path dir_;
    std::vector<fs::path> files_;
};

struct RunState {
    json checks = json::object();
    json results = json::object();
    std::vector<std::string> failed;

    void check(const std::string& name, double value, double tolerance) {
        checks[name] = {{"value", value}, {"tolerance", tolerance}, {"pass", value <= tolerance}};
        if (!(value <= tolerance)) failed.push_back(name);
    }
};

void run_series_example(const ExperimentConfig& cfg, OutputDir& out, RunState& state) {
    ExpSum u0;
    EquationTag linear_eq = EquationTag::linear();
    std::optional<EquationTag> full_eq;
    std::optional<ExactEvaluator> exact;
    switch (cfg.experiment) {
        case Experiment::Example1:
            u0 = ExpSum::make({{1.0, 0.0}, {1.0, 2.0}, {1.0, -2.0}});
            exact = exact_linear(u0);
            break;
        case Experiment::Example2:
            u0 = ExpSum::single(1.0, cplx{0.0, 3.0});
            exact = exact_linear(u0);
            break;
        default:
            u0 = ExpSum::single(1.0, cplx{0.0, 1.0});
            linear_eq = EquationTag::reduced_nls(*cfg.gamma);
            full_eq = EquationTag::full_nls(*cfg.gamma);
            exact = exact_reduced_nls(1.0, *cfg.gamma);
            break;
    }
    const EquationTag adm_eq = full_eq.value_or(linear_eq);

    std::vector<SeriesSolution> series;
    const bool all = cfg.method == MethodChoice::All;
    if (all || cfg.method == MethodChoice::Hpm) series.push_back(hpm_series(u0, linear_eq, cfg.order));
    if (all || cfg.method == MethodChoice::Adm) series.push_back(adm_series(u0, adm_eq, cfg.order));
    if (all || cfg.method == MethodChoice::Taylor)
        series.push_back(taylor_series(u0, linear_eq, cfg.order));

    if (all) {
        const SeriesSolution& taylor = series[2];
        state.check("hpm_vs_taylor", max_term_distance(series[0], taylor, cfg.order),
                    kCrossCheckTolerance);
        state.check("adm_vs_taylor", max_term_distance(series[1], taylor, cfg.order),
                    kCrossCheckTolerance);
        if (full_eq) {
            const auto reduced = adm_series(u0, linear_eq, cfg.order);
            state.check("adm_full_vs_reduced", max_term_distance(series[1], reduced, cfg.order),
                        kCrossCheckTolerance);
        }
    }

    // Error table from the ADM series when present: it is the one that solves
    // the unreduced equation.
    const SeriesSolution& primary = all ? series[1] : series[0];
    std::vector<int> orders(static_cast<std::size_t>(cfg.order) + 1);
    for (int n = 0; n <= cfg.order; ++n) orders[n] = n;
    const ErrorTable table = truncation_error_table(primary, *exact, orders, cfg.times(), cfg.xs());
    state.results["exact_solution"] = exact->describe();
    state.results["error_table_method"] = to_string(primary.method);
    state.results["initial_condition"] = to_json(u0);
    state.results["normalizability"] = to_string(classify_normalizability(u0));

    out.write("terms.csv", [&](std::ostream& os) { write_terms_csv(os, series); });
    out.write("errors.csv", [&](std::ostream& os) { write_csv(os, table); });
}

StateVector operator_initial_state(int n) {
    // Normalized bump centred on the interval.
    StateVector u0(n);
    const double centre = 0.5 * (n - 1);
    const double width = std::max(1.0, n / 8.0);
    for (int j = 0; j < n; ++j) {
        const double d = (j - centre) / width;
        u0[j] = std::exp(-d * d);
    }
    return u0 / u0.norm();
}

void run_operator(const ExperimentConfig& cfg, OutputDir& out, RunState& state) {
    const OperatorSpec op = laplacian_dirichlet(cfg.n, cfg.h);
    const StateVector u0 = operator_initial_state(cfg.n);
    const double rho = op.spectral_radius();
    const auto times = cfg.times();

    std::vector<StateVector> exact;
    for (double t : times) exact.push_back(exact_evolve(op, u0, t));

    ErrorTable table;
    for (int order = 0; order <= cfg.order; ++order) {
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double err = (series_evolve(op, u0, times[i], order) - exact[i]).norm() / u0.norm();
            table.rows.push_back(
                {order, times[i], err, remainder_closed_form(rho, 1.0, order, std::abs(times[i]))});
        }
    }
    double unitarity = 0.0;
    for (const auto& v : exact) unitarity = std::max(unitarity, std::abs(v.norm() - u0.norm()));
    state.check("exact_evolve_unitarity", unitarity, 1e-12);
    state.results["spectral_radius"] = rho;

    out.write("errors.csv", [&](std::ostream& os) { write_csv(os, table); });
    out.write("state.csv", [&](std::ostream& os) { write_csv(os, exact.back()); });
}

void run_gaussian_free(const ExperimentConfig& cfg, OutputDir& out, RunState& state) {
    const Grid grid(cfg.grid_L, cfg.grid_n);
    const GaussianPacket packet{0.5 * cfg.grid_L, cfg.sigma, true};
    const GridState initial = sample(grid, packet);
    const double norm0 = l2_norm(initial);

    ErrorTable table;
    double drift = 0.0;
    std::optional<GridState> last;
    for (double t : cfg.times()) {
        GridState s = free_propagate_spectral(initial, t);
        const GridState line =
            sample(grid, [&](double x) { return packet.free_solution(x, t); }, t);
        table.rows.push_back({0, t, sup_error(s, line), std::nullopt});
        drift = std::max(drift, std::abs(l2_norm(s) - norm0));
        last = std::move(s);
    }
    state.check("l2_norm_drift", drift, 1e-12);
    state.results["normalizability"] = to_string(classify_normalizability(packet));
    state.results["l2_norm_initial"] = norm0;

    out.write("errors.csv", [&](std::ostream& os) { write_csv(os, table); });
    out.write("state.csv", [&](std::ostream& os) { write_csv(os, *last); });
}

void run_nls_reference(const ExperimentConfig& cfg, OutputDir& out, RunState& state) {
    const Grid grid(cfg.grid_L, cfg.grid_n);
    const double alpha = cfg.alpha;
    const auto exact = exact_reduced_nls(alpha, *cfg.gamma);
    GridState s = sample(grid, [&](double x) { return std::polar(1.0, alpha * x); });
    const double norm0 = l2_norm(s);

    ErrorTable table;
    long done = 0;
    double worst = 0.0;
    double drift = 0.0;
    for (double t : cfg.times()) {
        const long target = std::lround(t / cfg.dt);
        if (target > done) {
            s = split_step_nls(s, *cfg.gamma, cfg.dt, target - done);
            done = target;
        }
        const GridState ref = sample(grid, [&](double x) { return exact(x, t); }, t);
        const double err = sup_error(s, ref);
        worst = std::max(worst, err);
        drift = std::max(drift, std::abs(l2_norm(s) - norm0));
        table.rows.push_back({0, t, err, std::nullopt});
    }
    state.check("plane_wave_sup_error", worst, kPlaneWaveTolerance);
    state.check("l2_norm_drift", drift, kNormTolerance);
    state.results["exact_solution"] = exact.describe();

    out.write("errors.csv", [&](std::ostream& os) { write_csv(os, table); });
    out.write("state.csv", [&](std::ostream& os) { write_csv(os, s); });
}

void run_classify(OutputDir& out) {
    struct Entry {
        std::string name;
        std::string description;
        NormClass cls;
    };
    const ExpSum ex1 = ExpSum::make({{1.0, 0.0}, {1.0, 2.0}, {1.0, -2.0}});
    const ExpSum ex2 = ExpSum::single(1.0, cplx{0.0, 3.0});
    const ExpSum ex34 = ExpSum::single(1.0, cplx{0.0, 1.0});
    const std::vector<Entry> entries{
        {"example1", "1+2cosh(2x)", classify_normalizability(ex1)},
        {"example2", "exp(3ix)", classify_normalizability(ex2)},
        {"example3", "exp(ix)", classify_normalizability(ex34)},
        {"example4", "exp(ix)", classify_normalizability(ex34)},
        {"zero", "0", classify_normalizability(ExpSum{})},
        {"gaussian", "exp(-(x-20)^2/(4*0.25)) normalized",
         classify_normalizability(GaussianPacket{20.0, 0.5, true})},
    };
    out.write("classify.csv", [&](std::ostream& os) {
        os << "input,description,class\n";
        for (const auto& e : entries) os << e.name << ',' << e.description << ',' << to_string(e.cls) << '\n';
    });
}

}  // namespace

std::string to_string(Experiment e) {
    for (const auto& [name, value] : experiment_names())
        if (value == e) return name;
    return "unknown";
}

std::string to_string(MethodChoice m) {
    switch (m) {
        case MethodChoice::Hpm: return "hpm";
        case MethodChoice::Adm: return "adm";
        case MethodChoice::Taylor: return "taylor";
        case MethodChoice::All: return "all";
    }
    return "unknown";
}

ConfigOverrides overrides_from_json(const json& doc, const std::string& origin) {
    static const std::set<std::string> known{"experiment", "method", "order", "gamma", "grid_n",
                                             "grid_L",     "t0",     "t1",    "t_steps", "t",
                                             "x0",         "x1",     "x_steps", "n",   "h",
                                             "dt",         "sigma",  "alpha", "out"};
    if (!doc.is_object()) throw ConfigError(origin + ": top level must be a JSON object");
    for (const auto& [key, value] : doc.items())
        if (!known.contains(key)) throw ConfigError(origin + ": unknown key '" + key + "'");

    ConfigOverrides o;
    o.experiment = read_field<std::string>(doc, "experiment", origin);
    o.method = read_field<std::string>(doc, "method", origin);
    o.order = read_field<int>(doc, "order", origin);
    o.gamma = read_field<double>(doc, "gamma", origin);
    o.grid_n = read_field<int>(doc, "grid_n", origin);
    o.grid_L = read_field<double>(doc, "grid_L", origin);
    o.t0 = read_field<double>(doc, "t0", origin);
    o.t1 = read_field<double>(doc, "t1", origin);
    o.t_steps = read_field<int>(doc, "t_steps", origin);
    o.t = read_field<double>(doc, "t", origin);
    o.x0 = read_field<double>(doc, "x0", origin);
    o.x1 = read_field<double>(doc, "x1", origin);
    o.x_steps = read_field<int>(doc, "x_steps", origin);
    o.n = read_field<int>(doc, "n", origin);
    o.h = read_field<double>(doc, "h", origin);
    o.dt = read_field<double>(doc, "dt", origin);
    o.sigma = read_field<double>(doc, "sigma", origin);
    o.alpha = read_field<double>(doc, "alpha", origin);
    o.out = read_field<std::string>(doc, "out", origin);
    return o;
}

ConfigOverrides read_config_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return overrides_from_json(doc, path.string());
}

ConfigOverrides merge(const ConfigOverrides& base, const ConfigOverrides& top) {
    ConfigOverrides m = base;
    auto take = [](auto& dst, const auto& src) {
        if (src) dst = src;
    };
    take(m.experiment, top.experiment);
    take(m.method, top.method);
    take(m.order, top.order);
    take(m.gamma, top.gamma);
    take(m.grid_n, top.grid_n);
    take(m.grid_L, top.grid_L);
    take(m.t0, top.t0);
    take(m.t1, top.t1);
    take(m.t_steps, top.t_steps);
    take(m.t, top.t);
    take(m.x0, top.x0);
    take(m.x1, top.x1);
    take(m.x_steps, top.x_steps);
    take(m.n, top.n);
    take(m.h, top.h);
    take(m.dt, top.dt);
    take(m.sigma, top.sigma);
    take(m.alpha, top.alpha);
    take(m.out, top.out);
    // A single time from the upper layer replaces a time range from below.
    if (top.t0 || top.t1 || top.t_steps) {
        if (!top.t) m.t.reset();
    }
    if (top.t) {
        if (!top.t0) m.t0.reset();
        if (!top.t1) m.t1.reset();
        if (!top.t_steps) m.t_steps.reset();
    }
    return m;
}

std::vector<double> ExperimentConfig::times() const {
    std::vector<double> ts;
    if (t_steps == 0) return {t0};
    for (int k = 0; k <= t_steps; ++k) ts.push_back(t0 + (t1 - t0) * k / t_steps);
    return ts;
}

std::vector<double> ExperimentConfig::xs() const {
    std::vector<double> out;
    if (x_steps == 0) return {x0};
    for (int k = 0; k <= x_steps; ++k) out.push_back(x0 + (x1 - x0) * k / x_steps);
    return out;
}

json ExperimentConfig::to_json() const {
    json all{{"experiment", series_mirage::to_string(experiment)},
             {"method", series_mirage::to_string(method)},
             {"order", order},
             {"grid_n", grid_n},
             {"grid_L", grid_L},
             {"t0", t0},
             {"t1", t1},
             {"t_steps", t_steps},
             {"x0", x0},
             {"x1", x1},
             {"x_steps", x_steps},
             {"n", n},
             {"h", h},
             {"dt", dt},
             {"sigma", sigma},
             {"alpha", alpha},
             {"out", out.generic_string()}};
    if (gamma) all["gamma"] = *gamma;
    json j = json::object();
    j["experiment"] = all["experiment"];
    for (const auto& field : relevant_fields(experiment))
        if (all.contains(field)) j[field] = all[field];
    return j;
}

ExperimentConfig resolve_config(const ConfigOverrides& given, const std::optional<std::string>& env_out) {
    if (!given.experiment) throw ConfigError("experiment: missing (positional argument or config key)");
    const auto found = experiment_names().find(*given.experiment);
    if (found == experiment_names().end())
        throw ConfigError("experiment: unknown experiment '" + *given.experiment + "'");

    ExperimentConfig cfg;
    cfg.experiment = found->second;
    const auto relevant = relevant_fields(cfg.experiment);

    // Reject explicitly given fields the experiment would silently ignore.
    const std::vector<std::pair<std::string, bool>> present{
        {"method", given.method.has_value()},   {"order", given.order.has_value()},
        {"gamma", given.gamma.has_value()},     {"grid_n", given.grid_n.has_value()},
        {"grid_L", given.grid_L.has_value()},   {"t0", given.t0.has_value() || given.t.has_value()},
        {"t1", given.t1.has_value()},           {"t_steps", given.t_steps.has_value()},
        {"x0", given.x0.has_value()},           {"x1", given.x1.has_value()},
        {"x_steps", given.x_steps.has_value()}, {"n", given.n.has_value()},
        {"h", given.h.has_value()},             {"dt", given.dt.has_value()},
        {"sigma", given.sigma.has_value()},     {"alpha", given.alpha.has_value()},
    };
    for (const auto& [field, is_set] : present)
        if (is_set && !relevant.contains(field))
            throw ConfigError(field + ": does not apply to experiment " + *given.experiment);

    // Per-experiment defaults.
    switch (cfg.experiment) {
        case Experiment::Example1:
            cfg.order = 20;
            cfg.t0 = 0.0, cfg.t1 = 1.0, cfg.t_steps = 10;
            break;
        case Experiment::Example2:
            cfg.order = 25;
            cfg.t0 = 0.0, cfg.t1 = 1.0, cfg.t_steps = 10;
            break;
        case Experiment::Example3:
        case Experiment::Example4:
            cfg.gamma = cfg.experiment == Experiment::Example3 ? 2.0 : -2.0;
            cfg.order = 20;
            cfg.t0 = 0.0, cfg.t1 = 2.0, cfg.t_steps = 20;
            break;
        case Experiment::Operator:
            cfg.order = 40;
            cfg.t0 = 1.0, cfg.t1 = 1.0, cfg.t_steps = 0;
            cfg.n = 16, cfg.h = 1.0;
            break;
        case Experiment::GaussianFree:
            cfg.grid_L = 40.0, cfg.grid_n = 512, cfg.sigma = 0.5;
            cfg.t0 = 0.0, cfg.t1 = 1.0, cfg.t_steps = 10;
            break;
        case Experiment::NlsReference:
            cfg.gamma = 2.0;
            cfg.grid_L = 2.0 * std::numbers::pi, cfg.grid_n = 64;
            cfg.alpha = 1.0, cfg.dt = 1e-3;
            cfg.t0 = 0.0, cfg.t1 = 1.0, cfg.t_steps = 10;
            break;
        case Experiment::Classify:
            break;
    }
    cfg.out = env_out && !env_out->empty() ? fs::path(*env_out) : fs::path(kDefaultOut);

    auto apply = [&](const char* name, auto& dst, const auto& src) {
        if (src)
            dst = *src;
        else if (relevant.contains(name))
            cfg.defaults_applied.emplace_back(name);
    };
    if (given.method) {
        static const std::map<std::string, MethodChoice> methods{
            {"hpm", MethodChoice::Hpm}, {"adm", MethodChoice::Adm},
            {"taylor", MethodChoice::Taylor}, {"all", MethodChoice::All}};
        const auto m = methods.find(*given.method);
        if (m == methods.end()) throw ConfigError("method: unknown method '" + *given.method + "'");
        cfg.method = m->second;
    } else if (relevant.contains("method")) {
        cfg.defaults_applied.emplace_back("method");
    }
    apply("order", cfg.order, given.order);
    if (given.gamma)
        cfg.gamma = *given.gamma;
    else if (relevant.contains("gamma"))
        cfg.defaults_applied.emplace_back("gamma");
    apply("grid_n", cfg.grid_n, given.grid_n);
    apply("grid_L", cfg.grid_L, given.grid_L);
    if (given.t) {
        cfg.t0 = cfg.t1 = *given.t;
        cfg.t_steps = 0;
    } else {
        apply("t0", cfg.t0, given.t0);
        apply("t1", cfg.t1, given.t1);
        apply("t_steps", cfg.t_steps, given.t_steps);
    }
    apply("x0", cfg.x0, given.x0);
    apply("x1", cfg.x1, given.x1);
    apply("x_steps", cfg.x_steps, given.x_steps);
    apply("n", cfg.n, given.n);
    apply("h", cfg.h, given.h);
    apply("dt", cfg.dt, given.dt);
    apply("sigma", cfg.sigma, given.sigma);
    apply("alpha", cfg.alpha, given.alpha);
    if (given.out)
        cfg.out = *given.out;
    else
        cfg.defaults_applied.emplace_back("out");

    // Validation.
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    auto finite = [](double v) { return std::isfinite(v); };
    require(cfg.order >= 0 && cfg.order <= kMaxOrder,
            "order: " + std::to_string(cfg.order) + " outside [0, " + std::to_string(kMaxOrder) + "]");
    require(!cfg.gamma || finite(*cfg.gamma), "gamma: must be finite");
    require(finite(cfg.t0) && finite(cfg.t1), "t0/t1: must be finite");
    require(cfg.t_steps >= 0, "t_steps: must be >= 0");
    require(finite(cfg.x0) && finite(cfg.x1), "x0/x1: must be finite");
    require(cfg.x_steps >= 0, "x_steps: must be >= 0");
    if (relevant.contains("grid_n")) {
        require(cfg.grid_n >= 8 && (cfg.grid_n & (cfg.grid_n - 1)) == 0,
                "grid_n: " + std::to_string(cfg.grid_n) + " must be a power of two >= 8");
        require(cfg.grid_L > 0.0 && finite(cfg.grid_L), "grid_L: must be positive");
    }
    if (cfg.experiment == Experiment::Operator) {
        require(cfg.n >= 2, "n: operator dimension must be >= 2");
        require(cfg.h > 0.0 && finite(cfg.h), "h: must be positive");
    }
    if (cfg.experiment == Experiment::GaussianFree)
        require(cfg.sigma > 0.0 && finite(cfg.sigma), "sigma: must be positive");
    if (cfg.experiment == Experiment::NlsReference) {
        require(cfg.dt > 0.0 && finite(cfg.dt), "dt: must be positive");
        require(finite(cfg.alpha), "alpha: must be finite");
        const double winding = cfg.alpha * cfg.grid_L / (2.0 * std::numbers::pi);
        require(std::abs(winding - std::round(winding)) <= 1e-9,
                "alpha/grid_L: alpha*L/(2 pi) = " + format_double(winding) +
                    " must be an integer for a periodic plane wave");
        for (double t : cfg.times()) {
            require(t >= 0.0, "t0/t1: times must be >= 0");
            const double steps = t / cfg.dt;
            require(std::abs(steps - std::round(steps)) <= 1e-9 * std::max(1.0, steps),
                    "dt: time " + format_double(t) + " is not a multiple of dt");
        }
    }
    return cfg;
}

RunResult run(const ExperimentConfig& cfg) {
    OutputDir out(cfg.out);
    RunState state;

    if (is_series_experiment(cfg.experiment))
        run_series_example(cfg, out, state);
    else if (cfg.experiment == Experiment::Operator)
        run_operator(cfg, out, state);
    else if (cfg.experiment == Experiment::GaussianFree)
        run_gaussian_free(cfg, out, state);
    else if (cfg.experiment == Experiment::NlsReference)
        run_nls_reference(cfg, out, state);
    else
        run_classify(out);

    RunResult result;
    result.failed_checks = state.failed;
    result.status = state.failed.empty() ? kExitOk : kExitCrossCheck;

    json outputs = json::array();
    for (const auto& f : out.files()) outputs.push_back(f.filename().string());
    outputs.push_back("manifest.json");
    json manifest{{"config", cfg.to_json()},
                  {"defaults_applied", cfg.defaults_applied},
                  {"outputs", outputs},
                  {"checks", state.checks},
                  {"results", state.results},
                  {"status", result.status == kExitOk ? "ok" : "cross-check-failed"}};
    out.write("manifest.json", [&](std::ostream& os) { os << manifest.dump(2) << '\n'; });
    result.files = out.files();
    return result;
}

}  // namespace series_mirage
