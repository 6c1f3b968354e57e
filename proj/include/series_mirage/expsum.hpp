#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace series_mirage {

using cplx = std::complex<double>;

/// Two exponents closer than this (per component) denote the same exponential.
inline constexpr double kAlphaTolerance = 1e-12;
/// Coefficients below this fraction of the largest coefficient are dropped.
inline constexpr double kRelativeDropThreshold = 1e-15;
/// Cap on TimePoly degree and on series order.
inline constexpr int kMaxOrder = 64;

/// One term coeff * exp(alpha * x).
struct ExpTerm {
    cplx coeff;
    cplx alpha;

    friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

/// Finite sum of complex exponentials  sum_j c_j exp(alpha_j x).
///
/// Always held in canonical form: exponents are pairwise distinct (to
/// kAlphaTolerance), no zero coefficients, and terms are ordered by
/// (Re alpha, Im alpha). The empty sum is the zero function.
class ExpSum {
public:
    ExpSum() = default;

    /// Canonicalizes raw terms. Throws InvalidInputError on non-finite entries.
    static ExpSum make(std::span<const ExpTerm> raw);
    static ExpSum make(std::initializer_list<ExpTerm> raw) {
        return make(std::span<const ExpTerm>(raw.begin(), raw.size()));
    }
    /// c * exp(alpha x)
    static ExpSum single(cplx coeff, cplx alpha) { return make({ExpTerm{coeff, alpha}}); }
    static ExpSum constant(cplx c) { return single(c, 0.0); }

    const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }

    friend bool operator==(const ExpSum&, const ExpSum&) = default;

private:
    std::vector<ExpTerm> terms_;
};

/// ca * a + cb * b
ExpSum combine(const ExpSum& a, cplx ca, const ExpSum& b, cplx cb);
ExpSum scale(const ExpSum& a, cplx c);
ExpSum operator+(const ExpSum& a, const ExpSum& b);
ExpSum operator-(const ExpSum& a, const ExpSum& b);
ExpSum operator*(const ExpSum& a, const ExpSum& b);
ExpSum conj(const ExpSum& a);
/// d^order/dx^order. Throws InvalidInputError for negative order.
ExpSum dx(const ExpSum& a, int order);
/// Direct summation. Throws OverflowError naming the term whose exponential overflows.
cplx eval(const ExpSum& a, double x);

/// Largest coefficient difference after matching exponents (unmatched terms
/// count with their full magnitude).
double max_coeff_distance(const ExpSum& a, const ExpSum& b);
double max_abs_coeff(const ExpSum& a);

/// Polynomial in real t whose coefficients are exponential sums:
///   p(x, t) = sum_n coeffs[n](x) t^n.
/// Degree is tight: the trailing coefficient is nonzero unless p == 0, in
/// which case coeffs() is empty.
class TimePoly {
public:
    TimePoly() = default;
    /// Throws InvalidInputError if the tight degree exceeds kMaxOrder.
    explicit TimePoly(std::vector<ExpSum> coeffs);
    /// s * t^power
    static TimePoly monomial(ExpSum s, int power);

    const std::vector<ExpSum>& coeffs() const noexcept { return coeffs_; }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Coefficient of t^power (empty ExpSum when beyond the degree).
    ExpSum coeff(int power) const;
    /// Lowest power with a nonzero coefficient; -1 for the zero polynomial.
    int lowest_power() const noexcept;

    friend bool operator==(const TimePoly&, const TimePoly&) = default;

private:
    std::vector<ExpSum> coeffs_;
};

TimePoly combine(const TimePoly& a, cplx ca, const TimePoly& b, cplx cb);
TimePoly scale(const TimePoly& a, cplx c);
TimePoly operator+(const TimePoly& a, const TimePoly& b);
TimePoly operator-(const TimePoly& a, const TimePoly& b);
TimePoly operator*(const TimePoly& a, const TimePoly& b);
/// Conjugates the ExpSum coefficients; t is treated as real.
TimePoly conj(const TimePoly& p);
TimePoly dx(const TimePoly& p, int order);
/// Antiderivative in t vanishing at t = 0.
TimePoly integrate_t(const TimePoly& p);
TimePoly derivative_t(const TimePoly& p);
/// Horner evaluation in t.
cplx eval(const TimePoly& p, double x, double t);

double max_coeff_distance(const TimePoly& a, const TimePoly& b);

}  // namespace series_mirage
