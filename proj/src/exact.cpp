#include "series_mirage/exact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "series_mirage/errors.hpp"

namespace series_mirage {

bool ExactEvaluator::solves(EquationKind kind) const {
    return std::find(valid_for_.begin(), valid_for_.end(), kind) != valid_for_.end();
}

std::string ExactEvaluator::describe() const {
    std::ostringstream out;
    out.precision(17);
    switch (family_) {
        case ExactFamily::LinearExpSum:
            out << "linear-expsum(terms=" << parameters_.size() / 4 << ")";
            break;
        case ExactFamily::PlaneWaveNls:
            out << "plane-wave-nls(alpha=" << parameters_.at(0) << ", gamma=" << parameters_.at(1)
                << ")";
            break;
    }
    return out.str();
}

ExactEvaluator exact_linear(const ExpSum& u0) {
    std::vector<double> params;
    for (const auto& term : u0.terms()) {
        params.insert(params.end(), {term.coeff.real(), term.coeff.imag(), term.alpha.real(),
                                     term.alpha.imag()});
    }

    // Every term evolves as exp(-i alpha^2 t); that is a pure phase exp(i b t)
    // when alpha^2 is real.
    std::optional<std::vector<FrequencyComponent>> components{std::in_place};
    for (const auto& term : u0.terms()) {
        const cplx a2 = term.alpha * term.alpha;
        if (std::abs(a2.imag()) > kAlphaTolerance * std::max(1.0, std::abs(a2))) {
            components.reset();
            break;
        }
        const double rate = -a2.real();
        auto it = std::find_if(components->begin(), components->end(), [&](const auto& c) {
            return std::abs(c.rate - rate) <= kAlphaTolerance * std::max(1.0, std::abs(rate));
        });
        const ExpSum piece = ExpSum::single(term.coeff, term.alpha);
        if (it == components->end())
            components->push_back({rate, piece});
        else
            it->profile = it->profile + piece;
    }

    auto fn = [u0](double x, double t) {
        cplx sum = 0.0;
        for (const auto& term : u0.terms()) {
            const cplx exponent = term.alpha * x - cplx{0.0, 1.0} * term.alpha * term.alpha * t;
            sum += term.coeff * std::exp(exponent);
        }
        if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag()))
            throw OverflowError("exact_linear: overflow at x=" + std::to_string(x) +
                                ", t=" + std::to_string(t));
        return sum;
    };
    return ExactEvaluator(ExactFamily::LinearExpSum, std::move(params), {EquationKind::Linear},
                          std::move(fn), std::move(components));
}

ExactEvaluator exact_reduced_nls(double alpha, double gamma) {
    if (!std::isfinite(alpha) || !std::isfinite(gamma))
        throw InvalidInputError("exact_reduced_nls: parameters must be finite");
    const double rate = gamma - alpha * alpha;
    auto fn = [alpha, rate](double x, double t) {
        return std::polar(1.0, alpha * x + rate * t);
    };
    std::vector<FrequencyComponent> components{{rate, ExpSum::single(1.0, cplx{0.0, alpha})}};
    return ExactEvaluator(ExactFamily::PlaneWaveNls, {alpha, gamma},
                          {EquationKind::ReducedNls, EquationKind::FullNls}, std::move(fn),
                          std::move(components));
}

double remainder_closed_form(double b, double amplitude, int order, double t) {
    if (order < 0) throw InvalidInputError("remainder_closed_form: negative order");
    if (t < 0.0) throw InvalidInputError("remainder_closed_form: negative time");
    const double z = std::abs(b * t);
    if (z == 0.0) return 0.0;
    double tail = amplitude;
    for (int k = 1; k <= order + 1; ++k) tail *= z / static_cast<double>(k);
    return tail * std::exp(z);
}

double remainder_bound(const std::vector<FrequencyComponent>& components, int order, double x,
                       double t) {
    double bound = 0.0;
    for (const auto& c : components)
        bound += remainder_closed_form(c.rate, std::abs(eval(c.profile, x)), order, t);
    return bound;
}

}  // namespace series_mirage
