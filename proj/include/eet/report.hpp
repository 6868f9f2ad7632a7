#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace eet {

/// Deviation-vs-N table with a fitted log-log decay slope. Deviations at or
/// below the floating-point floor (1e-13) are excluded from the fit; if fewer
/// than two rows survive, the slope is absent (exact convergence).
struct ConvergenceReport {
    struct Row {
        std::int64_t n;
        double deviation;
    };

    std::vector<Row> rows;
    std::optional<double> fitted_slope;
    int probe_count = 0;

    static constexpr double kExactFloor = 1e-13;

    /// Least-squares slope of log(deviation) vs log(N); call after filling rows.
    void fit_slope();

    double max_deviation() const;

    /// CSV: header "N,deviation", 17-significant-digit rows, trailing
    /// "# slope=<value>" (or "# slope=exact" when no slope was fitted).
    void write_csv(std::ostream& os) const;
};

} // namespace eet
