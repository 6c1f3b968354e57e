#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "series_mirage/errors.hpp"
#include "series_mirage/exact.hpp"
#include "series_mirage/grid.hpp"
#include "series_mirage/series.hpp"

using namespace series_mirage;
using namespace std::complex_literals;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

GridState plane_wave(const Grid& g, double k) {
    return sample(g, [k](double x) { return std::polar(1.0, k * x); });
}

}  // namespace

TEST_CASE("Grid validation") {
    CHECK_NOTHROW(Grid(1.0, 8));
    CHECK_THROWS_AS(Grid(1.0, 4), InvalidInputError);
    CHECK_THROWS_AS(Grid(1.0, 48), InvalidInputError);
    CHECK_THROWS_AS(Grid(0.0, 64), InvalidInputError);
    CHECK_THROWS_AS(Grid(-1.0, 64), InvalidInputError);
}

TEST_CASE("sample") {
    const Grid g(kTwoPi, 64);
    const auto ones = sample(g, [](double) { return cplx{1.0}; });
    for (const auto& v : ones.values()) CHECK(v == cplx{1.0});
    CHECK(ones.time() == 0.0);

    const auto wave = plane_wave(g, 1.0);
    for (int j = 0; j < g.size(); ++j) CHECK(wave.values()[j] == std::polar(1.0, g.x(j)));

    const Grid wide(40.0, 512);
    const auto gauss = sample(wide, GaussianPacket{20.0, 0.5, false});
    CHECK(std::abs(gauss.values()[0]) < 1e-15);

    try {
        sample(g, [](double x) { return x > 1.0 ? cplx{NAN} : cplx{1.0}; });
        FAIL("expected InvalidInputError");
    } catch (const InvalidInputError& e) {
        CHECK(std::string(e.what()).find("grid point 11") != std::string::npos);
    }
}

TEST_CASE("spectral_dxx") {
    const Grid g(kTwoPi, 64);
    const auto d1 = spectral_dxx(plane_wave(g, 1.0));
    const auto d3 = spectral_dxx(plane_wave(g, 3.0));
    for (int j = 0; j < g.size(); ++j) {
        CHECK(std::abs(d1.values()[j] + std::polar(1.0, g.x(j))) < 1e-12);
        CHECK(std::abs(d3.values()[j] + 9.0 * std::polar(1.0, 3.0 * g.x(j))) < 9.0 * 1e-12);
    }
    const auto flat = spectral_dxx(sample(g, [](double) { return cplx{2.5}; }));
    for (const auto& v : flat.values()) CHECK(std::abs(v) < 1e-13);
}

TEST_CASE("free_propagate_spectral") {
    const Grid g(kTwoPi, 64);
    for (double t : {0.1, 1.0, 3.7}) {
        const auto s = free_propagate_spectral(plane_wave(g, 3.0), t);
        CHECK(s.time() == t);
        for (int j = 0; j < g.size(); ++j)
            CHECK(std::abs(s.values()[j] - std::exp(1i * (3.0 * g.x(j) + 9.0 * t))) < 1e-12);
    }
    const auto s0 = plane_wave(g, 2.0);
    CHECK(sup_error(free_propagate_spectral(s0, 0.0), s0) == 0.0);

    // Gaussian: unitary and in agreement with the closed-form packet on the line.
    const Grid wide(40.0, 512);
    const GaussianPacket packet{20.0, 0.5, true};
    const auto g0 = sample(wide, packet);
    for (double t = 0.0; t <= 10.0; t += 1.25)
        CHECK(std::abs(l2_norm(free_propagate_spectral(g0, t)) - l2_norm(g0)) <= 1e-12);
    // Kept short enough that the spreading tails do not reach the periodic boundary.
    for (double t : {0.25, 0.5}) {
        const auto line = sample(wide, [&](double x) { return packet.free_solution(x, t); });
        CHECK(sup_error(free_propagate_spectral(g0, t), line) <= 1e-12);
    }
}

TEST_CASE("semi-discrete consistency with exact_linear") {
    const Grid g(kTwoPi, 64);
    const auto u0 = ExpSum::make({{1.0, 2i}, {0.5 - 0.25i, -5i}, {0.3, 0.0}});
    const auto exact = exact_linear(u0);
    const auto s0 = sample(g, [&](double x) { return eval(u0, x); });
    for (double t : {0.3, 1.1}) {
        const auto ref = sample(g, [&](double x) { return exact(x, t); });
        CHECK(sup_error(free_propagate_spectral(s0, t), ref) <= 1e-12);
    }
}

TEST_CASE("split_step_nls plane waves are exact") {
    const Grid g(kTwoPi, 64);
    for (double gamma : {2.0, -2.0}) {
        const auto exact = exact_reduced_nls(1.0, gamma);
        for (double dt : {0.1, 0.01}) {
            const long steps = std::lround(1.0 / dt);
            const auto s = split_step_nls(plane_wave(g, 1.0), gamma, dt, steps);
            const auto ref = sample(g, [&](double x) { return exact(x, s.time()); });
            CHECK(sup_error(s, ref) <= 1e-10);
        }
    }
}

TEST_CASE("split_step_nls with gamma = 0 is free propagation of the NLS linear part") {
    const Grid wide(40.0, 512);
    const auto g0 = sample(wide, GaussianPacket{20.0, 0.5, true});
    const auto split = split_step_nls(g0, 0.0, 0.01, 100);
    CHECK(sup_error(split, free_propagate_spectral(g0, -1.0)) <= 1e-10);
}

TEST_CASE("split_step_nls argument checks and divergence") {
    const Grid g(kTwoPi, 16);
    const auto s = plane_wave(g, 1.0);
    CHECK_THROWS_AS(split_step_nls(s, 1.0, 0.0, 1), InvalidInputError);
    CHECK_THROWS_AS(split_step_nls(s, 1.0, 0.1, 0), InvalidInputError);
    const auto huge = sample(g, [](double) { return cplx{1e200}; });
    CHECK_THROWS_AS(split_step_nls(huge, 1.0, 0.1, 3), DivergenceError);
}

TEST_CASE("l2_norm and sup_error") {
    const Grid g(kTwoPi, 64);
    CHECK(l2_norm(sample(g, [](double) { return cplx{1.0}; })) == doctest::Approx(std::sqrt(kTwoPi)).epsilon(1e-14));
    CHECK(l2_norm(plane_wave(g, 1.0)) == doctest::Approx(std::sqrt(kTwoPi)).epsilon(1e-14));
    CHECK(std::abs(l2_norm(sample(Grid(40.0, 512), GaussianPacket{20.0, 0.5, true})) - 1.0) <= 1e-10);

    const auto a = plane_wave(g, 2.0);
    CHECK(sup_error(a, a) == 0.0);
    std::vector<cplx> shifted = a.values();
    for (auto& v : shifted) v += 1e-3;
    CHECK(sup_error(a, GridState(g, shifted, 0.0)) == doctest::Approx(1e-3).epsilon(1e-10));
    CHECK_THROWS_AS(sup_error(a, plane_wave(Grid(kTwoPi, 32), 2.0)), InvalidInputError);

    // Example-3 partial sum of order 8 against the exact plane wave at t = 1.
    const auto sol = adm_series(ExpSum::single(1.0, 1i), EquationTag::full_nls(2.0), 8);
    const auto partial = sample(g, [&](double x) { return partial_sum_eval(sol, 8, x, 1.0); }, 1.0);
    const auto exact = sample(g, [&](double x) { return std::exp(1i * (x + 1.0)); }, 1.0);
    CHECK(sup_error(partial, exact) <= remainder_closed_form(1.0, 1.0, 8, 1.0));
    CHECK(remainder_closed_form(1.0, 1.0, 8, 1.0) == doctest::Approx(7.5e-6).epsilon(0.01));
}

TEST_CASE("split_step_nls conserves the norm") {
    const Grid wide(40.0, 512);
    const auto g0 = sample(wide, GaussianPacket{20.0, 0.5, true});
    const auto s = split_step_nls(g0, 1.0, 1e-4, 10000);
    CHECK(std::abs(l2_norm(s) - l2_norm(g0)) <= 1e-10);
}

TEST_CASE("GridState CSV export") {
    const Grid g(kTwoPi, 8);
    std::ostringstream out;
    write_csv(out, GridState(g, std::vector<cplx>(8, cplx{0.5, -0.5}), 0.25));
    const std::string text = out.str();
    CHECK(text.rfind("# grid_L=6.283185307179586,grid_n=8,time=0.25\nx,re_u,im_u,abs_u\n0,0.5,-0.5,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 10);
}
