#include "series_mirage/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

#include "series_mirage/errors.hpp"
#include "series_mirage/format.hpp"

namespace series_mirage {
namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Out-of-place forward/backward transform pair for one grid size.
class Fft {
public:
    explicit Fft(int n) : n_(n), in_(n), out_(n) {
        std::lock_guard lock(planner_mutex());
        auto* in = reinterpret_cast<fftw_complex*>(in_.data());
        auto* out = reinterpret_cast<fftw_complex*>(out_.data());
        forward_ = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        backward_ = fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Fft() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(backward_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    std::vector<cplx>& input() { return in_; }
    const std::vector<cplx>& output() const { return out_; }

    void forward() { fftw_execute(forward_); }
    /// Unnormalized; callers divide by n.
    void backward() { fftw_execute(backward_); }

private:
    int n_;
    std::vector<cplx> in_;
    std::vector<cplx> out_;
    fftw_plan forward_;
    fftw_plan backward_;
};

// Multiplies each Fourier mode of `values` by multiplier[j] in place.
void apply_fourier_multiplier(Fft& fft, std::vector<cplx>& values,
                              const std::vector<cplx>& multiplier) {
    const auto n = values.size();
    fft.input() = values;
    fft.forward();
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) fft.input()[j] = fft.output()[j] * multiplier[j] * inv_n;
    fft.backward();
    values = fft.output();
}

std::vector<cplx> free_phase(const Grid& grid, double t) {
    std::vector<cplx> m(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
        const double k = grid.wavenumber(j);
        m[j] = std::polar(1.0, k * k * t);
    }
    return m;
}

}  // namespace

Grid::Grid(double length, int n) : length_(length), n_(n) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw InvalidInputError("Grid: length must be positive and finite");
    if (n < 8 || (n & (n - 1)) != 0)
        throw InvalidInputError("Grid: n = " + std::to_string(n) + " must be a power of two >= 8");
}

double Grid::wavenumber(int j) const noexcept {
    const int signed_index = j < n_ / 2 ? j : j - n_;
    return 2.0 * std::numbers::pi / length_ * signed_index;
}

GridState::GridState(Grid grid, std::vector<cplx> values, double time)
    : grid_(grid), values_(std::move(values)), time_(time) {
    if (static_cast<int>(values_.size()) != grid_.size())
        throw InvalidInputError("GridState: " + std::to_string(values_.size()) +
                                " samples for a grid of " + std::to_string(grid_.size()));
    for (std::size_t j = 0; j < values_.size(); ++j)
        if (!finite(values_[j]))
            throw InvalidInputError("GridState: non-finite value at index " + std::to_string(j));
}

GridState sample(const Grid& grid, const std::function<cplx(double)>& f, double time) {
    std::vector<cplx> values(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
        values[j] = f(grid.x(j));
        if (!finite(values[j])) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "sample: non-finite value at grid point " << j << " (x=" << grid.x(j) << ")";
            throw InvalidInputError(msg.str());
        }
    }
    return GridState(grid, std::move(values), time);
}

cplx GaussianPacket::operator()(double x) const {
    const double d = x - center;
    const double norm = normalized ? std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25) : 1.0;
    return norm * std::exp(-d * d / (4.0 * sigma * sigma));
}

cplx GaussianPacket::free_solution(double x, double t) const {
    // Heat kernel with diffusivity -i: sigma^2 -> sigma^2 - i t.
    const double d = x - center;
    const double norm = normalized ? std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25) : 1.0;
    const cplx s2 = cplx{sigma * sigma, -t};
    return norm * std::sqrt(sigma * sigma / s2) * std::exp(-d * d / (4.0 * s2));
}

GridState spectral_dxx(const GridState& s) {
    const Grid& grid = s.grid();
    std::vector<cplx> m(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
        const double k = grid.wavenumber(j);
        m[j] = -k * k;
    }
    Fft fft(grid.size());
    auto values = s.values();
    apply_fourier_multiplier(fft, values, m);
    return GridState(grid, std::move(values), s.time());
}

GridState free_propagate_spectral(const GridState& s, double t) {
    if (t == 0.0) return s;
    Fft fft(s.grid().size());
    auto values = s.values();
    apply_fourier_multiplier(fft, values, free_phase(s.grid(), t));
    return GridState(s.grid(), std::move(values), s.time() + t);
}

GridState split_step_nls(const GridState& s, double gamma, double dt, long steps) {
    if (!(dt > 0.0)) throw InvalidInputError("split_step_nls: dt must be positive");
    if (steps < 1) throw InvalidInputError("split_step_nls: steps must be >= 1");

    // The linear flow of i u_t + u_xx = 0 is the free propagator run backwards.
    const auto linear = free_phase(s.grid(), -dt);
    Fft fft(s.grid().size());
    auto values = s.values();
    const double half = 0.5 * gamma * dt;

    auto nonlinear_half = [&] {
        for (auto& u : values) u *= std::polar(1.0, half * std::norm(u));
    };
    for (long step = 0; step < steps; ++step) {
        nonlinear_half();
        apply_fourier_multiplier(fft, values, linear);
        nonlinear_half();
        for (const auto& u : values)
            if (!finite(u))
                throw DivergenceError("split_step_nls: non-finite state at step " +
                                          std::to_string(step + 1),
                                      step + 1);
    }
    return GridState(s.grid(), std::move(values), s.time() + static_cast<double>(steps) * dt);
}

double l2_norm(const GridState& s) {
    double sum = 0.0;
    for (const auto& u : s.values()) sum += std::norm(u);
    return std::sqrt(sum * s.grid().spacing());
}

double sup_error(const GridState& a, const GridState& b) {
    if (!(a.grid() == b.grid())) throw InvalidInputError("sup_error: grids differ");
    double worst = 0.0;
    for (std::size_t j = 0; j < a.values().size(); ++j)
        worst = std::max(worst, std::abs(a.values()[j] - b.values()[j]));
    return worst;
}

void write_csv(std::ostream& out, const GridState& s) {
    out << "# grid_L=" << format_double(s.grid().length()) << ",grid_n=" << s.grid().size()
        << ",time=" << format_double(s.time()) << '\n';
    out << "x,re_u,im_u,abs_u\n";
    for (int j = 0; j < s.grid().size(); ++j) {
        const cplx u = s.values()[j];
        out << format_double(s.grid().x(j)) << ',' << format_double(u.real()) << ','
            << format_double(u.imag()) << ',' << format_double(std::abs(u)) << '\n';
    }
}

}  // namespace series_mirage
