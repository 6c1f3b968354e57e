#include "series_mirage/series.hpp"

#include <algorithm>
#include <cmath>

#include "series_mirage/errors.hpp"

namespace series_mirage {
namespace {

constexpr cplx kI{0.0, 1.0};

void check_order(int order, const char* who) {
    if (order < 0 || order > kMaxOrder)
        throw InvalidInputError(std::string(who) + ": order " + std::to_string(order) +
                                " outside [0, " + std::to_string(kMaxOrder) + "]");
}

void reject_full_nls(const EquationTag& eq, const char* who) {
    if (eq.kind() == EquationKind::FullNls)
        throw UnsupportedEquationError(std::string(who) +
                                       ": full cubic NLS is only available through adm_series");
}

// Spatial part of u_t = R u for the linear kinds.
TimePoly linear_rhs(const TimePoly& v, const EquationTag& eq) {
    if (eq.kind() == EquationKind::Linear) return scale(dx(v, 2), -kI);
    return combine(dx(v, 2), kI, v, kI * eq.gamma());
}

}  // namespace

EquationTag EquationTag::reduced_nls(double gamma) {
    if (!std::isfinite(gamma)) throw InvalidInputError("EquationTag: gamma must be finite");
    return EquationTag(EquationKind::ReducedNls, gamma);
}

EquationTag EquationTag::full_nls(double gamma) {
    if (!std::isfinite(gamma)) throw InvalidInputError("EquationTag: gamma must be finite");
    return EquationTag(EquationKind::FullNls, gamma);
}

std::string to_string(EquationKind kind) {
    switch (kind) {
        case EquationKind::Linear: return "linear";
        case EquationKind::ReducedNls: return "reduced-nls";
        case EquationKind::FullNls: return "full-nls";
    }
    return "unknown";
}

std::string to_string(Method method) {
    switch (method) {
        case Method::Hpm: return "hpm";
        case Method::Adm: return "adm";
        case Method::Taylor: return "taylor";
    }
    return "unknown";
}

SeriesSolution hpm_series(const ExpSum& u0, const EquationTag& eq, int order) {
    check_order(order, "hpm_series");
    reject_full_nls(eq, "hpm_series");

    // Convex homotopy (1-p)(L v - L u0) + p(L v - R v) = 0 with L = d/dt.
    // Matching p^{n+1} gives L v_{n+1} = R v_n, v_{n+1}(x, 0) = 0.
    SeriesSolution sol{{TimePoly::monomial(u0, 0)}, eq, Method::Hpm};
    for (int n = 0; n < order; ++n) sol.terms.push_back(integrate_t(linear_rhs(sol.terms.back(), eq)));
    return sol;
}

TimePoly adomian_cubic(const std::vector<TimePoly>& terms) {
    if (terms.empty()) throw InvalidInputError("adomian_cubic: empty term list");
    const int n = static_cast<int>(terms.size()) - 1;

    std::vector<TimePoly> conjugated;
    conjugated.reserve(terms.size());
    for (const auto& u : terms) conjugated.push_back(conj(u));

    // A_n = sum_m P_m conj(u_{n-m}),  P_m = sum_{i+j=m} u_i u_j.
    TimePoly result;
    for (int m = 0; m <= n; ++m) {
        if (conjugated[n - m].is_zero()) continue;
        TimePoly pair;
        for (int i = 0; i <= m; ++i) pair = pair + terms[i] * terms[m - i];
        result = result + pair * conjugated[n - m];
    }
    return result;
}

SeriesSolution adm_series(const ExpSum& u0, const EquationTag& eq, int order) {
    check_order(order, "adm_series");

    // u = u(x,0) + L^{-1}(R u + N u), L^{-1} = int_0^t.
    SeriesSolution sol{{TimePoly::monomial(u0, 0)}, eq, Method::Adm};
    for (int n = 0; n < order; ++n) {
        const TimePoly& un = sol.terms.back();
        TimePoly rhs;
        switch (eq.kind()) {
            case EquationKind::Linear:
                rhs = scale(dx(un, 2), -kI);
                break;
            case EquationKind::ReducedNls:
                // N(u) = u: its Adomian polynomial is u_n itself.
                rhs = combine(dx(un, 2), kI, un, kI * eq.gamma());
                break;
            case EquationKind::FullNls:
                rhs = combine(dx(un, 2), kI, adomian_cubic(sol.terms), kI * eq.gamma());
                break;
        }
        sol.terms.push_back(integrate_t(rhs));
    }
    return sol;
}

SeriesSolution taylor_series(const ExpSum& u0, const EquationTag& eq, int order) {
    check_order(order, "taylor_series");
    reject_full_nls(eq, "taylor_series");

    SeriesSolution sol{{}, eq, Method::Taylor};
    double inv_factorial = 1.0;
    for (int j = 0; j <= order; ++j) {
        if (j > 0) inv_factorial /= static_cast<double>(j);
        ExpSum derivative;  // d^j u / dt^j at t = 0
        if (eq.kind() == EquationKind::Linear) {
            cplx phase = 1.0;
            for (int k = 0; k < j; ++k) phase *= -kI;
            derivative = scale(dx(u0, 2 * j), phase);
        } else {
            std::vector<ExpTerm> raw;
            raw.reserve(u0.size());
            for (const auto& term : u0.terms()) {
                const cplx rate = kI * (term.alpha * term.alpha + eq.gamma());
                cplx factor = 1.0;
                for (int k = 0; k < j; ++k) factor *= rate;
                raw.push_back({term.coeff * factor, term.alpha});
            }
            derivative = ExpSum::make(raw);
        }
        sol.terms.push_back(TimePoly::monomial(scale(derivative, inv_factorial), j));
    }
    return sol;
}

cplx partial_sum_eval(const SeriesSolution& sol, int order, double x, double t) {
    if (order < 0 || order > sol.order())
        throw InvalidInputError("partial_sum_eval: order " + std::to_string(order) +
                                " outside [0, " + std::to_string(sol.order()) + "]");
    cplx sum = 0.0;
    for (int n = 0; n <= order; ++n) sum += eval(sol.terms[n], x, t);
    return sum;
}

TimePoly series_residual(const SeriesSolution& sol, int order) {
    reject_full_nls(sol.equation, "series_residual");
    if (order < 1 || order > sol.order())
        throw InvalidInputError("series_residual: order " + std::to_string(order) +
                                " outside [1, " + std::to_string(sol.order()) + "]");
    TimePoly partial;
    for (int n = 0; n <= order; ++n) partial = partial + sol.terms[n];

    if (sol.equation.kind() == EquationKind::Linear)
        return combine(derivative_t(partial), 1.0, dx(partial, 2), kI);
    return combine(derivative_t(partial), kI, dx(partial, 2), 1.0) +
           scale(partial, sol.equation.gamma());
}

double max_term_distance(const SeriesSolution& a, const SeriesSolution& b, int upto) {
    if (upto > a.order() || upto > b.order())
        throw InvalidInputError("max_term_distance: series shorter than requested order");
    double worst = 0.0;
    for (int n = 0; n <= upto; ++n) worst = std::max(worst, max_coeff_distance(a.terms[n], b.terms[n]));
    return worst;
}

}  // namespace series_mirage
