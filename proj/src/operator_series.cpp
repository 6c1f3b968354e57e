#include "series_mirage/operator_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "series_mirage/errors.hpp"
#include "series_mirage/format.hpp"

namespace series_mirage {
namespace {

constexpr double kEigenTolerance = 1e-10;

void check_dim(const OperatorSpec& op, const StateVector& v, const char* who) {
    if (v.size() != op.dim())
        throw InvalidInputError(std::string(who) + ": vector of size " + std::to_string(v.size()) +
                                " for operator of dimension " + std::to_string(op.dim()));
    if (!v.allFinite()) throw InvalidInputError(std::string(who) + ": non-finite state component");
}

void require_full_basis(const OperatorSpec& op, const char* who) {
    if (!op.has_full_eigenbasis())
        throw InvalidInputError(std::string(who) + ": operator lacks a full eigenbasis");
}

}  // namespace

OperatorSpec::OperatorSpec(int dim, Action apply, std::vector<Eigenpair> eigenpairs)
    : dim_(dim), apply_(std::move(apply)), eigenpairs_(std::move(eigenpairs)) {
    if (dim_ < 1) throw InvalidInputError("OperatorSpec: dimension must be positive");
    for (std::size_t k = 0; k < eigenpairs_.size(); ++k) {
        const auto& [a, f] = eigenpairs_[k];
        if (f.size() != dim_)
            throw InvalidInputError("OperatorSpec: eigenvector " + std::to_string(k) +
                                    " has wrong dimension");
        const StateVector fc = f.cast<cplx>();
        if ((apply_(fc) - a * fc).norm() > kEigenTolerance)
            throw InvalidInputError("OperatorSpec: pair " + std::to_string(k) +
                                    " is not an eigenpair");
        for (std::size_t l = 0; l <= k; ++l) {
            const double expected = (l == k) ? 1.0 : 0.0;
            if (std::abs(eigenpairs_[l].vector.dot(f) - expected) > kEigenTolerance)
                throw InvalidInputError("OperatorSpec: eigenvectors " + std::to_string(l) + ", " +
                                        std::to_string(k) + " are not orthonormal");
        }
    }
}

StateVector OperatorSpec::apply(const StateVector& v) const {
    if (v.size() != dim_) throw InvalidInputError("OperatorSpec::apply: dimension mismatch");
    return apply_(v);
}

double OperatorSpec::spectral_radius() const noexcept {
    double r = 0.0;
    for (const auto& p : eigenpairs_) r = std::max(r, std::abs(p.value));
    return r;
}

OperatorSpec laplacian_dirichlet(int n, double h) {
    if (n < 2) throw InvalidInputError("laplacian_dirichlet: n must be >= 2");
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidInputError("laplacian_dirichlet: h must be > 0");

    const double inv_h2 = 1.0 / (h * h);
    auto apply = [n, inv_h2](const StateVector& v) {
        StateVector out(n);
        for (int j = 0; j < n; ++j) {
            cplx acc = -2.0 * v[j];
            if (j > 0) acc += v[j - 1];
            if (j + 1 < n) acc += v[j + 1];
            out[j] = acc * inv_h2;
        }
        return out;
    };

    std::vector<Eigenpair> pairs;
    pairs.reserve(n);
    const double theta = std::numbers::pi / (n + 1);
    const double norm = std::sqrt(2.0 / (n + 1));
    for (int k = 1; k <= n; ++k) {
        Eigen::VectorXd f(n);
        for (int j = 1; j <= n; ++j) f[j - 1] = norm * std::sin(j * k * theta);
        pairs.push_back({-(2.0 - 2.0 * std::cos(k * theta)) * inv_h2, std::move(f)});
    }
    return OperatorSpec(n, std::move(apply), std::move(pairs));
}

OperatorSpec diagonal_operator(const std::vector<double>& values) {
    const int n = static_cast<int>(values.size());
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidInputError("diagonal_operator: non-finite entry");
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(values.data(), n);
    auto apply = [diag](const StateVector& v) -> StateVector {
        return diag.cast<cplx>().cwiseProduct(v);
    };
    std::vector<Eigenpair> pairs;
    for (int k = 0; k < n; ++k) pairs.push_back({values[k], Eigen::VectorXd::Unit(n, k)});
    return OperatorSpec(n, std::move(apply), std::move(pairs));
}

StateVector series_evolve(const OperatorSpec& op, const StateVector& u0, double t, int order) {
    check_dim(op, u0, "series_evolve");
    if (order < 0 || order > kMaxOrder)
        throw InvalidInputError("series_evolve: order " + std::to_string(order) + " outside [0, " +
                                std::to_string(kMaxOrder) + "]");

    // term_m = (-i t)^m / m! A^m u0, built incrementally.
    StateVector term = u0;
    StateVector sum = u0;
    const cplx step{0.0, -t};
    for (int m = 1; m <= order; ++m) {
        term = op.apply(term) * (step / static_cast<double>(m));
        sum += term;
        if (!sum.allFinite())
            throw OverflowError("series_evolve: non-finite partial sum at order " + std::to_string(m));
    }
    return sum;
}

std::vector<cplx> eigen_project(const OperatorSpec& op, const StateVector& u0) {
    check_dim(op, u0, "eigen_project");
    require_full_basis(op, "eigen_project");
    std::vector<cplx> c;
    c.reserve(op.eigenpairs().size());
    // Eigenvectors are real, so <f_k, u0> needs no conjugation.
    for (const auto& p : op.eigenpairs()) c.push_back(p.vector.cast<cplx>().dot(u0));
    return c;
}

StateVector exact_evolve(const OperatorSpec& op, const StateVector& u0, double t) {
    const auto c = eigen_project(op, u0);
    StateVector out = StateVector::Zero(op.dim());
    for (std::size_t k = 0; k < c.size(); ++k) {
        const auto& p = op.eigenpairs()[k];
        out += (c[k] * std::polar(1.0, -t * p.value)) * p.vector.cast<cplx>();
    }
    return out;
}

void write_csv(std::ostream& out, const StateVector& v) {
    out << "index,re,im\n";
    for (Eigen::Index j = 0; j < v.size(); ++j)
        out << j << ',' << format_double(v[j].real()) << ',' << format_double(v[j].imag()) << '\n';
}

}  // namespace series_mirage
