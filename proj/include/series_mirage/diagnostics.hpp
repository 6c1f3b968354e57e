#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "series_mirage/exact.hpp"
#include "series_mirage/expsum.hpp"
#include "series_mirage/grid.hpp"
#include "series_mirage/series.hpp"

namespace series_mirage {

/// Square-integrability on the real line.
enum class NormClass { SquareIntegrable, BoundedNotL2, Unbounded, Zero };

std::string to_string(NormClass c);

/// Classifies exponential-sum data by its exponents. Any nonzero finite
/// exponential sum fails to be square-integrable on the line: real exponent
/// parts make it unbounded, purely imaginary ones leave |u|^2 non-decaying.
NormClass classify_normalizability(const ExpSum& u0);
/// Gaussian packets decay and are always square-integrable.
NormClass classify_normalizability(const GaussianPacket& packet);

struct ErrorRow {
    int order;
    double time;
    double sup_error;
    std::optional<double> bound;
};

/// Rows sorted by (order, time).
struct ErrorTable {
    std::vector<ErrorRow> rows;
};

/// max over x_samples of |partial sum - exact| for every (order, time). The
/// bound column is set when the exact solution splits into real-frequency
/// harmonics; it is the max over x_samples of remainder_bound.
ErrorTable truncation_error_table(const SeriesSolution& sol, const ExactEvaluator& exact,
                                  const std::vector<int>& orders, const std::vector<double>& times,
                                  const std::vector<double>& x_samples);

/// max | |u(x,t)| - 1 | over samples.
double unit_modulus_deviation(const std::function<cplx(double, double)>& u,
                              const std::vector<std::pair<double, double>>& samples);

/// CSV with columns order,time,sup_error,bound (bound empty when undefined).
void write_csv(std::ostream& out, const ErrorTable& table);

}  // namespace series_mirage
