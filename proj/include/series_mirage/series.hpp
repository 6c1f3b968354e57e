#pragma once

#include <optional>
#include <string>
#include <vector>

#include "series_mirage/expsum.hpp"

namespace series_mirage {

enum class EquationKind {
    Linear,      ///< u_t + i u_xx = 0
    ReducedNls,  ///< i u_t + u_xx + gamma u = 0   (cubic NLS with |u| = 1 substituted)
    FullNls,     ///< i u_t + u_xx + gamma |u|^2 u = 0
};

/// Which PDE a series solves. Linear carries no gamma.
class EquationTag {
public:
    static EquationTag linear() { return EquationTag(EquationKind::Linear, std::nullopt); }
    static EquationTag reduced_nls(double gamma);
    static EquationTag full_nls(double gamma);

    EquationKind kind() const noexcept { return kind_; }
    /// 0 for Linear.
    double gamma() const noexcept { return gamma_.value_or(0.0); }
    bool has_gamma() const noexcept { return gamma_.has_value(); }

    friend bool operator==(const EquationTag&, const EquationTag&) = default;

private:
    EquationTag(EquationKind kind, std::optional<double> gamma) : kind_(kind), gamma_(gamma) {}

    EquationKind kind_;
    std::optional<double> gamma_;
};

enum class Method { Hpm, Adm, Taylor };

std::string to_string(EquationKind kind);
std::string to_string(Method method);

/// Truncated decomposition series u_0 + u_1 + ... + u_N.
struct SeriesSolution {
    std::vector<TimePoly> terms;
    EquationTag equation = EquationTag::linear();
    Method method = Method::Taylor;

    int order() const noexcept { return static_cast<int>(terms.size()) - 1; }
};

/// Homotopy perturbation with L = d/dt and initial guess u(x,0):
///   Linear:     v_{n+1} = -i int_0^t v_n,xx dt'
///   ReducedNls: v_{n+1} =  i int_0^t (v_n,xx + gamma v_n) dt'
/// Throws UnsupportedEquationError for FullNls.
SeriesSolution hpm_series(const ExpSum& u0, const EquationTag& eq, int order);

/// Adomian decomposition u_{n+1} = i int_0^t (u_n,xx + gamma A_n) dt' (with the
/// linear-equation analogue for Linear). For FullNls the A_n are the cubic
/// Adomian polynomials of u^2 conj(u); for ReducedNls the nonlinearity is u.
SeriesSolution adm_series(const ExpSum& u0, const EquationTag& eq, int order);

/// A_n = sum_{i+j+k=n} u_i u_j conj(u_k) for n = terms.size() - 1.
TimePoly adomian_cubic(const std::vector<TimePoly>& terms);

/// Direct Taylor expansion u = sum_j t^j/j! d^j u/dt^j |_{t=0}, with the time
/// derivatives eliminated through the PDE term by term on each exponential.
/// Throws UnsupportedEquationError for FullNls.
SeriesSolution taylor_series(const ExpSum& u0, const EquationTag& eq, int order);

/// sum_{n <= order} terms[n](x, t)
cplx partial_sum_eval(const SeriesSolution& sol, int order, double x, double t);

/// Exact PDE residual of the partial sum S_order:
///   Linear:     S_t + i S_xx
///   ReducedNls: i S_t + S_xx + gamma S
/// Throws UnsupportedEquationError for FullNls.
TimePoly series_residual(const SeriesSolution& sol, int order);

/// Largest coefficientwise distance between terms[n] of two series for n <= upto.
double max_term_distance(const SeriesSolution& a, const SeriesSolution& b, int upto);

}  // namespace series_mirage
