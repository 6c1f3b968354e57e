#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "series_mirage/expsum.hpp"

namespace series_mirage {

using StateVector = Eigen::VectorXcd;

struct Eigenpair {
    double value;
    Eigen::VectorXd vector;  ///< unit norm
};

/// Finite-dimensional Hermitian operator with a known orthonormal eigenbasis.
class OperatorSpec {
public:
    using Action = std::function<StateVector(const StateVector&)>;

    /// Validates apply(f_k) = a_k f_k and orthonormality to 1e-10;
    /// throws InvalidInputError otherwise.
    OperatorSpec(int dim, Action apply, std::vector<Eigenpair> eigenpairs);

    int dim() const noexcept { return dim_; }
    StateVector apply(const StateVector& v) const;
    const std::vector<Eigenpair>& eigenpairs() const noexcept { return eigenpairs_; }
    bool has_full_eigenbasis() const noexcept { return static_cast<int>(eigenpairs_.size()) == dim_; }
    /// max_k |a_k|
    double spectral_radius() const noexcept;

private:
    int dim_;
    Action apply_;
    std::vector<Eigenpair> eigenpairs_;
};

/// Second-difference matrix tridiag(1, -2, 1) / h^2 with Dirichlet ends and
/// its analytic eigenpairs a_k = -(2 - 2 cos(k pi / (n+1))) / h^2,
/// f_k(j) = sqrt(2/(n+1)) sin(j k pi / (n+1)), j, k = 1..n.
OperatorSpec laplacian_dirichlet(int n, double h);

/// diag(values) with the standard basis as eigenvectors.
OperatorSpec diagonal_operator(const std::vector<double>& values);

/// sum_{m=0}^{N} (-i t)^m / m! A^m u0 by iterated application.
/// Throws OverflowError reporting the order reached when values stop being finite.
StateVector series_evolve(const OperatorSpec& op, const StateVector& u0, double t, int order);

/// c_k = <f_k, u0>
std::vector<cplx> eigen_project(const OperatorSpec& op, const StateVector& u0);

/// sum_k c_k exp(-i t a_k) f_k
StateVector exact_evolve(const OperatorSpec& op, const StateVector& u0, double t);

/// CSV export with columns index,re,im.
void write_csv(std::ostream& out, const StateVector& v);

}  // namespace series_mirage
