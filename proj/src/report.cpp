#include "eet/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace eet {

void ConvergenceReport::fit_slope() {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& r : rows) {
        if (r.deviation <= kExactFloor) continue;
        const double x = std::log(double(r.n));
        const double y = std::log(r.deviation);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) {
        fitted_slope.reset();
        return;
    }
    const double denom = double(n) * sxx - sx * sx;
    if (denom == 0.0) {
        fitted_slope.reset();
        return;
    }
    fitted_slope = (double(n) * sxy - sx * sy) / denom;
}

double ConvergenceReport::max_deviation() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.deviation);
    return m;
}

void ConvergenceReport::write_csv(std::ostream& os) const {
    os << "N,deviation\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%lld,%.17g\n",
                      static_cast<long long>(r.n), r.deviation);
        os << buf;
    }
    if (fitted_slope) {
        std::snprintf(buf, sizeof(buf), "# slope=%.17g\n", *fitted_slope);
        os << buf;
    } else {
        os << "# slope=exact\n";
    }
}

} // namespace eet
