#include "series_mirage/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "series_mirage/errors.hpp"
#include "series_mirage/format.hpp"

namespace series_mirage {

std::string to_string(NormClass c) {
    switch (c) {
        case NormClass::SquareIntegrable: return "SQUARE_INTEGRABLE";
        case NormClass::BoundedNotL2: return "BOUNDED_NOT_L2";
        case NormClass::Unbounded: return "UNBOUNDED";
        case NormClass::Zero: return "ZERO";
    }
    return "UNKNOWN";
}

NormClass classify_normalizability(const ExpSum& u0) {
    if (u0.empty()) return NormClass::Zero;
    for (const auto& term : u0.terms())
        if (std::abs(term.alpha.real()) > kAlphaTolerance) return NormClass::Unbounded;
    return NormClass::BoundedNotL2;
}

NormClass classify_normalizability(const GaussianPacket&) { return NormClass::SquareIntegrable; }

ErrorTable truncation_error_table(const SeriesSolution& sol, const ExactEvaluator& exact,
                                  const std::vector<int>& orders, const std::vector<double>& times,
                                  const std::vector<double>& x_samples) {
    if (x_samples.empty()) throw InvalidInputError("truncation_error_table: no x samples");
    for (int n : orders)
        if (n < 0 || n > sol.order())
            throw InvalidInputError("truncation_error_table: order " + std::to_string(n) +
                                    " outside series range [0, " + std::to_string(sol.order()) + "]");

    ErrorTable table;
    for (int n : orders) {
        for (double t : times) {
            ErrorRow row{n, t, 0.0, std::nullopt};
            try {
                for (double x : x_samples)
                    row.sup_error =
                        std::max(row.sup_error, std::abs(partial_sum_eval(sol, n, x, t) - exact(x, t)));
                if (exact.components() && t >= 0.0) {
                    double bound = 0.0;
                    for (double x : x_samples)
                        bound = std::max(bound, remainder_bound(*exact.components(), n, x, t));
                    row.bound = bound;
                }
            } catch (const OverflowError& e) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "truncation_error_table row (order=" << n << ", t=" << t << "): " << e.what();
                throw OverflowError(msg.str());
            }
            table.rows.push_back(row);
        }
    }
    std::stable_sort(table.rows.begin(), table.rows.end(), [](const ErrorRow& a, const ErrorRow& b) {
        return a.order != b.order ? a.order < b.order : a.time < b.time;
    });
    return table;
}

double unit_modulus_deviation(const std::function<cplx(double, double)>& u,
                              const std::vector<std::pair<double, double>>& samples) {
    if (samples.empty()) throw InvalidInputError("unit_modulus_deviation: no samples");
    double worst = 0.0;
    for (const auto& [x, t] : samples) worst = std::max(worst, std::abs(std::abs(u(x, t)) - 1.0));
    return worst;
}

void write_csv(std::ostream& out, const ErrorTable& table) {
    out << "order,time,sup_error,bound\n";
    for (const auto& row : table.rows) {
        out << row.order << ',' << format_double(row.time) << ',' << format_double(row.sup_error)
            << ',';
        if (row.bound) out << format_double(*row.bound);
        out << '\n';
    }
}

}  // namespace series_mirage
