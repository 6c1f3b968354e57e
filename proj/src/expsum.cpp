#include "series_mirage/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "series_mirage/errors.hpp"

namespace series_mirage {
namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool alpha_less(cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

bool alpha_close(cplx a, cplx b) {
    return std::abs(a.real() - b.real()) <= kAlphaTolerance &&
           std::abs(a.imag() - b.imag()) <= kAlphaTolerance;
}

// Canonicalizes terms that are already known to be finite.
std::vector<ExpTerm> canonicalize(std::vector<ExpTerm> raw) {
    std::stable_sort(raw.begin(), raw.end(),
                     [](const ExpTerm& a, const ExpTerm& b) { return alpha_less(a.alpha, b.alpha); });

    // Group by the first (smallest) exponent of each cluster. Terms sharing a
    // cluster lie within kAlphaTolerance in Re, so the forward scan can stop there.
    std::vector<ExpTerm> merged;
    std::vector<bool> used(raw.size(), false);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (used[i]) continue;
        ExpTerm group = raw[i];
        for (std::size_t j = i + 1; j < raw.size(); ++j) {
            if (raw[j].alpha.real() - raw[i].alpha.real() > kAlphaTolerance) break;
            if (!used[j] && alpha_close(raw[i].alpha, raw[j].alpha)) {
                group.coeff += raw[j].coeff;
                used[j] = true;
            }
        }
        merged.push_back(group);
    }

    double cmax = 0.0;
    for (const auto& term : merged) cmax = std::max(cmax, std::abs(term.coeff));
    const double cutoff = kRelativeDropThreshold * cmax;
    std::erase_if(merged, [&](const ExpTerm& term) {
        const double mag = std::abs(term.coeff);
        return mag == 0.0 || mag < cutoff;
    });
    std::sort(merged.begin(), merged.end(),
              [](const ExpTerm& a, const ExpTerm& b) { return alpha_less(a.alpha, b.alpha); });
    return merged;
}

}  // namespace

ExpSum ExpSum::make(std::span<const ExpTerm> raw) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!finite(raw[i].coeff) || !finite(raw[i].alpha)) {
            std::ostringstream msg;
            msg << "ExpSum term " << i << " is not finite (coeff=" << raw[i].coeff
                << ", alpha=" << raw[i].alpha << ")";
            throw InvalidInputError(msg.str());
        }
    }
    ExpSum out;
    out.terms_ = canonicalize(std::vector<ExpTerm>(raw.begin(), raw.end()));
    return out;
}

ExpSum combine(const ExpSum& a, cplx ca, const ExpSum& b, cplx cb) {
    std::vector<ExpTerm> raw;
    raw.reserve(a.size() + b.size());
    for (const auto& term : a.terms()) raw.push_back({ca * term.coeff, term.alpha});
    for (const auto& term : b.terms()) raw.push_back({cb * term.coeff, term.alpha});
    return ExpSum::make(raw);
}

ExpSum scale(const ExpSum& a, cplx c) { return combine(a, c, ExpSum{}, 0.0); }
ExpSum operator+(const ExpSum& a, const ExpSum& b) { return combine(a, 1.0, b, 1.0); }
ExpSum operator-(const ExpSum& a, const ExpSum& b) { return combine(a, 1.0, b, -1.0); }

ExpSum operator*(const ExpSum& a, const ExpSum& b) {
    std::vector<ExpTerm> raw;
    raw.reserve(a.size() * b.size());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) raw.push_back({ta.coeff * tb.coeff, ta.alpha + tb.alpha});
    return ExpSum::make(raw);
}

ExpSum conj(const ExpSum& a) {
    std::vector<ExpTerm> raw;
    raw.reserve(a.size());
    for (const auto& term : a.terms()) raw.push_back({std::conj(term.coeff), std::conj(term.alpha)});
    return ExpSum::make(raw);
}

ExpSum dx(const ExpSum& a, int order) {
    if (order < 0) throw InvalidInputError("dx: negative derivative order " + std::to_string(order));
    std::vector<ExpTerm> raw;
    raw.reserve(a.size());
    for (const auto& term : a.terms()) {
        cplx factor = 1.0;
        for (int k = 0; k < order; ++k) factor *= term.alpha;
        raw.push_back({term.coeff * factor, term.alpha});
    }
    return ExpSum::make(raw);
}

cplx eval(const ExpSum& a, double x) {
    if (!std::isfinite(x)) throw InvalidInputError("eval: non-finite x");
    cplx sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const auto& term = a.terms()[j];
        const cplx e = std::exp(term.alpha * x);
        if (!finite(e)) {
            std::ostringstream msg;
            msg << "eval: exp(alpha*x) overflows for term " << j << " (alpha=" << term.alpha
                << ", x=" << x << ")";
            throw OverflowError(msg.str());
        }
        sum += term.coeff * e;
    }
    if (!finite(sum)) throw OverflowError("eval: exponential sum overflows at x=" + std::to_string(x));
    return sum;
}

double max_abs_coeff(const ExpSum& a) {
    double m = 0.0;
    for (const auto& term : a.terms()) m = std::max(m, std::abs(term.coeff));
    return m;
}

double max_coeff_distance(const ExpSum& a, const ExpSum& b) {
    double worst = 0.0;
    std::vector<bool> matched(b.size(), false);
    for (const auto& ta : a.terms()) {
        cplx other = 0.0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!matched[j] && alpha_close(ta.alpha, b.terms()[j].alpha)) {
                other = b.terms()[j].coeff;
                matched[j] = true;
                break;
            }
        }
        worst = std::max(worst, std::abs(ta.coeff - other));
    }
    for (std::size_t j = 0; j < b.size(); ++j)
        if (!matched[j]) worst = std::max(worst, std::abs(b.terms()[j].coeff));
    return worst;
}

// ---------------------------------------------------------------------------
// TimePoly

TimePoly::TimePoly(std::vector<ExpSum> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back().empty()) coeffs_.pop_back();
    if (degree() > kMaxOrder)
        throw InvalidInputError("TimePoly degree " + std::to_string(degree()) + " exceeds cap " +
                                std::to_string(kMaxOrder));
}

TimePoly TimePoly::monomial(ExpSum s, int power) {
    if (power < 0) throw InvalidInputError("TimePoly::monomial: negative power");
    if (power > kMaxOrder)
        throw InvalidInputError("TimePoly::monomial: power " + std::to_string(power) +
                                " exceeds cap");
    std::vector<ExpSum> coeffs(static_cast<std::size_t>(power) + 1);
    coeffs.back() = std::move(s);
    return TimePoly(std::move(coeffs));
}

ExpSum TimePoly::coeff(int power) const {
    if (power < 0 || power > degree()) return {};
    return coeffs_[static_cast<std::size_t>(power)];
}

int TimePoly::lowest_power() const noexcept {
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
        if (!coeffs_[n].empty()) return static_cast<int>(n);
    return -1;
}

TimePoly combine(const TimePoly& a, cplx ca, const TimePoly& b, cplx cb) {
    const int deg = std::max(a.degree(), b.degree());
    std::vector<ExpSum> out;
    out.reserve(static_cast<std::size_t>(deg + 1));
    for (int n = 0; n <= deg; ++n) out.push_back(combine(a.coeff(n), ca, b.coeff(n), cb));
    return TimePoly(std::move(out));
}

TimePoly scale(const TimePoly& a, cplx c) { return combine(a, c, TimePoly{}, 0.0); }
TimePoly operator+(const TimePoly& a, const TimePoly& b) { return combine(a, 1.0, b, 1.0); }
TimePoly operator-(const TimePoly& a, const TimePoly& b) { return combine(a, 1.0, b, -1.0); }

TimePoly operator*(const TimePoly& a, const TimePoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const int deg = a.degree() + b.degree();
    if (deg > kMaxOrder)
        throw InvalidInputError("TimePoly product degree " + std::to_string(deg) + " exceeds cap");
    std::vector<std::vector<ExpTerm>> raw(static_cast<std::size_t>(deg + 1));
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j)
            for (const auto& ta : a.coeffs()[i].terms())
                for (const auto& tb : b.coeffs()[j].terms())
                    raw[i + j].push_back({ta.coeff * tb.coeff, ta.alpha + tb.alpha});
    std::vector<ExpSum> out;
    out.reserve(raw.size());
    for (const auto& r : raw) out.push_back(ExpSum::make(r));
    return TimePoly(std::move(out));
}

TimePoly conj(const TimePoly& p) {
    std::vector<ExpSum> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(conj(c));
    return TimePoly(std::move(out));
}

TimePoly dx(const TimePoly& p, int order) {
    std::vector<ExpSum> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(dx(c, order));
    return TimePoly(std::move(out));
}

TimePoly integrate_t(const TimePoly& p) {
    if (p.is_zero()) return {};
    std::vector<ExpSum> out(p.coeffs().size() + 1);
    for (std::size_t n = 0; n < p.coeffs().size(); ++n)
        out[n + 1] = scale(p.coeffs()[n], 1.0 / static_cast<double>(n + 1));
    return TimePoly(std::move(out));
}

TimePoly derivative_t(const TimePoly& p) {
    if (p.degree() < 1) return {};
    std::vector<ExpSum> out(p.coeffs().size() - 1);
    for (std::size_t n = 1; n < p.coeffs().size(); ++n)
        out[n - 1] = scale(p.coeffs()[n], static_cast<double>(n));
    return TimePoly(std::move(out));
}

cplx eval(const TimePoly& p, double x, double t) {
    if (!std::isfinite(t)) throw InvalidInputError("eval: non-finite t");
    cplx acc = 0.0;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * t + eval(*it, x);
    if (!finite(acc)) throw OverflowError("eval: time polynomial overflows at t=" + std::to_string(t));
    return acc;
}

double max_coeff_distance(const TimePoly& a, const TimePoly& b) {
    double worst = 0.0;
    const int deg = std::max(a.degree(), b.degree());
    for (int n = 0; n <= deg; ++n) worst = std::max(worst, max_coeff_distance(a.coeff(n), b.coeff(n)));
    return worst;
}

}  // namespace series_mirage
