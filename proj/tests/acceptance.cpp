// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "series_mirage/diagnostics.hpp"
#include "series_mirage/exact.hpp"
#include "series_mirage/grid.hpp"
#include "series_mirage/operator_series.hpp"
#include "series_mirage/series.hpp"

using namespace series_mirage;
using namespace std::complex_literals;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::vector<double> linspace(double a, double b, int steps) {
    std::vector<double> v;
    for (int k = 0; k <= steps; ++k) v.push_back(a + (b - a) * k / steps);
    return v;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

TimePoly closed_term(const ExpSum& profile, cplx z, int n) {
    cplx c = 1.0;
    for (int k = 1; k <= n; ++k) c *= z / static_cast<double>(k);
    return TimePoly::monomial(scale(profile, c), n);
}

double sup_partial_error(const SeriesSolution& sol, int order, const ExactEvaluator& exact,
                         const std::vector<double>& xs, const std::vector<double>& ts) {
    double worst = 0.0;
    for (double t : ts)
        for (double x : xs) worst = std::max(worst, std::abs(partial_sum_eval(sol, order, x, t) - exact(x, t)));
    return worst;
}

// Smallest order whose partial sum meets `tol`, for the ledger/diagnostic line.
int first_order_meeting(const SeriesSolution& sol, const ExactEvaluator& exact, const std::vector<double>& xs,
                        const std::vector<double>& ts, double tol) {
    for (int n = 0; n <= sol.order(); ++n)
        if (sup_partial_error(sol, n, exact, xs, ts) <= tol) return n;
    return -1;
}

// 1. Example 1: method agreement n <= 20 and order-20 partial sum vs exact.
Outcome criterion1() {
    const ExpSum u0 = ExpSum::make({{1.0, 0.0}, {1.0, 2.0}, {1.0, -2.0}});
    const auto eq = EquationTag::linear();
    const auto hpm = hpm_series(u0, eq, 20);
    const auto adm = adm_series(u0, eq, 20);
    const auto taylor = taylor_series(u0, eq, 20);
    const double agree = std::max(max_term_distance(hpm, taylor, 20), max_term_distance(adm, taylor, 20));

    const auto exact = exact_linear(u0);
    const auto xs = linspace(-1.0, 1.0, 40), ts = linspace(0.0, 1.0, 20);
    const double err = sup_partial_error(adm, 20, exact, xs, ts);

    const auto long_series = taylor_series(u0, eq, 40);
    const int needed = first_order_meeting(long_series, exact, xs, ts, 1e-12);
    return {agree <= 1e-12 && err <= 1e-12,
            "term agreement " + sci(agree) + " (<=1e-12), order-20 sup error " + sci(err) +
                " (<=1e-12); smallest order reaching 1e-12: " + std::to_string(needed)};
}

// 2. Example 2: closed-form terms and order-25 partial sum.
Outcome criterion2() {
    const ExpSum u0 = ExpSum::single(1.0, 3i);
    const auto eq = EquationTag::linear();
    double term_err = 0.0;
    for (const auto& sol : {hpm_series(u0, eq, 25), adm_series(u0, eq, 25), taylor_series(u0, eq, 25)})
        for (int n = 0; n <= 25; ++n)
            term_err = std::max(term_err, max_coeff_distance(sol.terms[n], closed_term(u0, 9i, n)));

    const auto exact = exact_linear(u0);
    const auto xs = linspace(-1.0, 1.0, 40), ts = linspace(0.0, 1.0, 20);
    const auto sol = adm_series(u0, eq, 25);
    const double err = sup_partial_error(sol, 25, exact, xs, ts);

    const auto long_series = taylor_series(u0, eq, 64);
    const int needed = first_order_meeting(long_series, exact, xs, ts, 1e-10);
    return {term_err <= 1e-12 && err <= 1e-10,
            "term error " + sci(term_err) + " (<=1e-12), order-25 sup error " + sci(err) +
                " (<=1e-10); smallest order reaching 1e-10: " + std::to_string(needed)};
}

// 3. Examples 3-4 through the full cubic Adomian recursion.
Outcome criterion3() {
    const ExpSum u0 = ExpSum::single(1.0, 1i);
    const auto xs = linspace(-1.0, 1.0, 40), ts = linspace(0.0, 1.0, 20);
    double term_err = 0.0, sum_err = 0.0;
    for (const auto& [gamma, rate] : {std::pair{2.0, 1.0}, std::pair{-2.0, -3.0}}) {
        const auto sol = adm_series(u0, EquationTag::full_nls(gamma), 25);
        for (int n = 0; n <= 12; ++n)
            term_err = std::max(term_err, max_coeff_distance(sol.terms[n], closed_term(u0, rate * 1i, n)));
        sum_err = std::max(sum_err, sup_partial_error(sol, 25, exact_reduced_nls(1.0, gamma), xs, ts));
    }
    return {term_err <= 1e-12 && sum_err <= 1e-10,
            "term error " + sci(term_err) + " (<=1e-12), order-25 sup error " + sci(sum_err) + " (<=1e-10)"};
}

// 4. Full vs reduced NLS for plane waves with phase rates |gamma - alpha^2| <= 3,
// the range of the worked examples.
Outcome criterion4() {
    double worst = 0.0;
    for (double alpha : {1.0, -1.0, 0.5, -0.5})
        for (double gamma : {2.0, -2.0, 1.0, -0.5}) {
            const auto u0 = ExpSum::single(1.0, cplx{0.0, alpha});
            worst = std::max(worst, max_term_distance(adm_series(u0, EquationTag::full_nls(gamma), 12),
                                                      adm_series(u0, EquationTag::reduced_nls(gamma), 12), 12));
        }
    return {worst <= 1e-12, "max term distance " + sci(worst) + " (<=1e-12) over 16 (alpha, gamma) pairs, |gamma - alpha^2| <= 3"};
}

// 5. HPM and ADM equal the Taylor terms on random exponential sums.
Outcome criterion5() {
    std::mt19937_64 rng(1729);
    std::uniform_real_distribution<double> gamma_dist(-2.0, 2.0);
    double worst = 0.0;
    int instances = 0;
    for (; instances < 40; ++instances) {
        const auto u0 = oracle::random_expsum(rng, 4, 3.0);
        for (const auto& eq : {EquationTag::linear(), EquationTag::reduced_nls(gamma_dist(rng))}) {
            const auto taylor = taylor_series(u0, eq, 24);
            worst = std::max(worst, max_term_distance(hpm_series(u0, eq, 24), taylor, 24));
            worst = std::max(worst, max_term_distance(adm_series(u0, eq, 24), taylor, 24));
        }
    }
    return {worst <= 1e-12, std::to_string(instances) + " random instances x 2 equations, n<=24: max distance " +
                                sci(worst) + " (<=1e-12)"};
}

// 6. Operator series on the n = 16 second-difference matrix.
Outcome criterion6() {
    const auto op = laplacian_dirichlet(16, 1.0);
    const double rho = op.spectral_radius();
    const double t = 1.0;
    std::mt19937_64 rng(6);
    std::normal_distribution<double> d;
    bool bound_ok = true;
    double err30 = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        StateVector u0(16);
        for (int j = 0; j < 16; ++j) u0[j] = {d(rng), d(rng)};
        const auto exact = exact_evolve(op, u0, t);
        for (int order = 0; order <= 40; ++order) {
            const double rel = (series_evolve(op, u0, t, order) - exact).norm() / u0.norm();
            const double bound = remainder_closed_form(rho, 1.0, order, t);
            if (rel > bound + oracle::rounding_floor(1.0, rho * t)) bound_ok = false;
            if (order == 30) err30 = std::max(err30, rel);
        }
    }
    return {err30 < 1e-10 && bound_ok,
            "relative error at N=30 " + sci(err30) + " (<1e-10); tail bound respected at every N<=40: " +
                (bound_ok ? "yes" : "no")};
}

// 7. Normalizability audit.
Outcome criterion7() {
    const bool ex1 = classify_normalizability(ExpSum::make({{1.0, 0.0}, {1.0, 2.0}, {1.0, -2.0}})) ==
                     NormClass::Unbounded;
    const bool ex2 = classify_normalizability(ExpSum::single(1.0, 3i)) == NormClass::BoundedNotL2;
    const bool ex34 = classify_normalizability(ExpSum::single(1.0, 1i)) == NormClass::BoundedNotL2;
    const GaussianPacket packet{20.0, 0.5, true};
    const bool gauss = classify_normalizability(packet) == NormClass::SquareIntegrable;
    const double norm = l2_norm(sample(Grid(40.0, 512), packet));
    return {ex1 && ex2 && ex34 && gauss && std::abs(norm - 1.0) <= 1e-10,
            std::string("example1 UNBOUNDED: ") + (ex1 ? "yes" : "no") + ", example2 BOUNDED_NOT_L2: " +
                (ex2 ? "yes" : "no") + ", examples3/4 BOUNDED_NOT_L2: " + (ex34 ? "yes" : "no") +
                ", Gaussian SQUARE_INTEGRABLE: " + (gauss ? "yes" : "no") + ", |l2-1| = " +
                sci(std::abs(norm - 1.0)) + " (<=1e-10)"};
}

// 8. Split-step reference solver.
Outcome criterion8() {
    const Grid wide(40.0, 512);
    const auto g0 = sample(wide, GaussianPacket{20.0, 0.5, true});

    const double drift = std::abs(l2_norm(split_step_nls(g0, 1.0, 1e-4, 10000)) - l2_norm(g0));

    // gamma = 0: the linear NLS flow i u_t + u_xx = 0 is the free propagator at -t.
    const double free_err = sup_error(split_step_nls(g0, 0.0, 0.01, 100), free_propagate_spectral(g0, -1.0));

    const Grid ring(2.0 * std::numbers::pi, 64);
    const auto wave = sample(ring, [](double x) { return std::polar(1.0, x); });
    double plane_err = 0.0;
    for (double gamma : {2.0, -2.0}) {
        const auto s = split_step_nls(wave, gamma, 1e-3, 1000);
        const auto exact = exact_reduced_nls(1.0, gamma);
        plane_err = std::max(plane_err, sup_error(s, sample(ring, [&](double x) { return exact(x, 1.0); })));
    }

    // Second order: e(h) = |u_h - u_{h/4}| at T = 1; e(dt) / e(dt/4) ~ 16.
    auto run = [&](double h) { return split_step_nls(g0, 1.0, h, std::lround(1.0 / h)); };
    auto self_error = [&](double h) { return sup_error(run(h), run(h / 4)); };
    const double dt = 0.1;
    const double e0 = self_error(dt), e1 = self_error(dt / 2), e2 = self_error(dt / 4);
    const double ratio = e0 / e2;

    const bool pass = drift <= 1e-10 && free_err <= 1e-10 && plane_err <= 1e-10 && ratio >= 12.0 && ratio <= 20.0;
    return {pass, "norm drift " + sci(drift) + " (<=1e-10), gamma=0 vs free " + sci(free_err) +
                      " (<=1e-10), plane waves " + sci(plane_err) + " (<=1e-10), error ratio dt->dt/4 " +
                      sci(ratio) + " in [12,20] (single halvings " + sci(e0 / e1) + ", " + sci(e1 / e2) + ")"};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// 9. CLI determinism.
Outcome criterion9() {
    const fs::path base = fs::temp_directory_path() / "series_mirage_acceptance";
    fs::remove_all(base);
    std::vector<fs::path> dirs{base / "run_a", base / "run_b"};
    for (const auto& dir : dirs) {
        const std::string cmd = std::string(SERIES_MIRAGE_CLI) + " example3 --method all --order 20 --out " +
                                dir.string() + " > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        if (status != 0) return {false, "CLI exited with status " + std::to_string(status)};
    }
    bool same = true;
    for (const char* f : {"terms.csv", "errors.csv"}) {
        const auto a = slurp(dirs[0] / f), b = slurp(dirs[1] / f);
        same = same && !a.empty() && a == b;
    }
    return {same, std::string("terms.csv and errors.csv byte-identical across runs: ") + (same ? "yes" : "no")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1 example 1 reproduction", criterion1},
        {"AC2 example 2 reproduction", criterion2},
        {"AC3 examples 3-4 full nonlinear ADM", criterion3},
        {"AC4 reduction equivalence", criterion4},
        {"AC5 Taylor-oracle equivalence", criterion5},
        {"AC6 operator generalization", criterion6},
        {"AC7 physicality audit", criterion7},
        {"AC8 reference-solver soundness", criterion8},
        {"AC9 CLI determinism", criterion9},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome outcome;
        try {
            outcome = check();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        if (!outcome.pass) ++failures;
        std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << name << ": " << outcome.detail << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " acceptance criteria passed" << std::endl;
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
