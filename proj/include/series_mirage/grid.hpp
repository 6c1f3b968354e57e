#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "series_mirage/expsum.hpp"

namespace series_mirage {

/// Uniform periodic grid x_j = j L / n on [0, L).
class Grid {
public:
    /// Throws InvalidInputError unless L > 0 and n >= 8 is a power of two.
    Grid(double length, int n);

    double length() const noexcept { return length_; }
    int size() const noexcept { return n_; }
    double spacing() const noexcept { return length_ / n_; }
    double x(int j) const noexcept { return j * length_ / n_; }
    /// Signed angular wavenumber of FFT bin j.
    double wavenumber(int j) const noexcept;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    double length_;
    int n_;
};

/// Samples of u on a grid at a fixed time.
class GridState {
public:
    /// Throws InvalidInputError on size mismatch or non-finite values.
    GridState(Grid grid, std::vector<cplx> values, double time);

    const Grid& grid() const noexcept { return grid_; }
    const std::vector<cplx>& values() const noexcept { return values_; }
    double time() const noexcept { return time_; }

private:
    Grid grid_;
    std::vector<cplx> values_;
    double time_;
};

/// Pointwise samples; throws InvalidInputError naming the first non-finite grid point.
GridState sample(const Grid& grid, const std::function<cplx(double)>& f, double time = 0.0);

/// Gaussian wave packet exp(-(x - center)^2 / (4 sigma^2)), optionally scaled to unit L2 norm on
/// the line. This is the square-integrable initial data the exponential family cannot express.
struct GaussianPacket {
    double center;
    double sigma;
    bool normalized = true;

    cplx operator()(double x) const;
    /// Closed-form solution of u_t + i u_xx = 0 on the real line starting from this packet.
    cplx free_solution(double x, double t) const;
};

/// Second derivative by multiplying Fourier mode k by -k^2.
GridState spectral_dxx(const GridState& s);

/// Exact semi-discrete evolution of u_t + i u_xx = 0: mode k gains exp(+i k^2 t).
GridState free_propagate_spectral(const GridState& s, double t);

/// Strang splitting for i u_t + u_xx + gamma |u|^2 u = 0:
/// half nonlinear phase, full linear step, half nonlinear phase.
/// Throws DivergenceError reporting the step index on non-finite values.
GridState split_step_nls(const GridState& s, double gamma, double dt, long steps);

/// sqrt(sum |u_j|^2 L/n)
double l2_norm(const GridState& s);

/// max_j |a_j - b_j|; throws InvalidInputError when the grids differ.
double sup_error(const GridState& a, const GridState& b);

/// CSV export: '# grid_L=...,grid_n=...,time=...' line, then x,re_u,im_u,abs_u rows.
void write_csv(std::ostream& out, const GridState& s);

}  // namespace series_mirage
