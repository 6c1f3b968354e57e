#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "series_mirage/expsum.hpp"
#include "series_mirage/series.hpp"

namespace series_mirage {

enum class ExactFamily {
    LinearExpSum,  ///< sum_j c_j exp(alpha_j x - i alpha_j^2 t)
    PlaneWaveNls,  ///< exp(i alpha x) exp(i (gamma - alpha^2) t)
};

/// profile(x) * exp(i rate t)
struct FrequencyComponent {
    double rate;
    ExpSum profile;
};

/// Closed-form solution u(x, t).
class ExactEvaluator {
public:
    ExactEvaluator(ExactFamily family, std::vector<double> parameters,
                   std::vector<EquationKind> valid_for, std::function<cplx(double, double)> fn,
                   std::optional<std::vector<FrequencyComponent>> components)
        : family_(family),
          parameters_(std::move(parameters)),
          valid_for_(std::move(valid_for)),
          fn_(std::move(fn)),
          components_(std::move(components)) {}

    cplx operator()(double x, double t) const { return fn_(x, t); }
    cplx eval(double x, double t) const { return fn_(x, t); }

    ExactFamily family() const noexcept { return family_; }
    const std::vector<double>& parameters() const noexcept { return parameters_; }
    const std::vector<EquationKind>& valid_for() const noexcept { return valid_for_; }
    bool solves(EquationKind kind) const;
    std::string describe() const;

    /// Decomposition into real-frequency time harmonics, when one exists.
    const std::optional<std::vector<FrequencyComponent>>& components() const noexcept {
        return components_;
    }

private:
    ExactFamily family_;
    std::vector<double> parameters_;
    std::vector<EquationKind> valid_for_;
    std::function<cplx(double, double)> fn_;
    std::optional<std::vector<FrequencyComponent>> components_;
};

/// Solution of u_t + i u_xx = 0 for exponential-sum data.
ExactEvaluator exact_linear(const ExpSum& u0);

/// Unit-modulus plane wave; solves both the reduced and the full cubic NLS.
ExactEvaluator exact_reduced_nls(double alpha, double gamma);

/// amplitude * |b t|^{N+1} / (N+1)! * exp(|b t|): bound on the tail of the
/// degree-N Taylor polynomial of amplitude * exp(i b t).
double remainder_closed_form(double b, double amplitude, int order, double t);

/// Evaluates sum_k |profile_k(x)| * remainder_closed_form(rate_k, 1, N, t).
double remainder_bound(const std::vector<FrequencyComponent>& components, int order, double x,
                       double t);

}  // namespace series_mirage
