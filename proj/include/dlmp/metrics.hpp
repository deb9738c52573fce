#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "dlmp/errors.hpp"

namespace dlmp {

/// Floor applied when the mean-square deviation underflows to exactly zero.
constexpr double kMsdFloorDb = -320.0;

/// Network mean-square deviation in dB:
///   10*log10( (1/N) * sum_k ||w_o - omega_k||^2 ),
/// floored at kMsdFloorDb when the deviation is exactly zero.
inline double network_msd(const std::vector<std::vector<double>>& estimates,
                          const std::vector<double>& w_o) {
    if (estimates.empty())
        throw dimension_error("network_msd: no estimates");
    double total = 0.0;
    for (const auto& est : estimates) {
        if (est.size() != w_o.size())
            throw dimension_error("network_msd: estimate length mismatch");
        for (std::size_t i = 0; i < w_o.size(); ++i) {
            const double d = w_o[i] - est[i];
            total += d * d;
        }
    }
    const double mean = total / static_cast<double>(estimates.size());
    if (mean <= 0.0)
        return kMsdFloorDb;
    return 10.0 * std::log10(mean);
}

/// Averaged MSD learning curve plus its trailing-window steady-state summary.
struct MsdCurve {
    std::vector<double> per_iteration_db;
    double steady_state_db = 0.0;
    double window_fraction = 0.1;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) {
    return lin <= 0.0 ? kMsdFloorDb : 10.0 * std::log10(lin);
}

/// Steady state: mean of the final ceil(window_fraction * length) dB entries.
inline double trailing_window_db(const std::vector<double>& per_iteration_db,
                                 double window_fraction) {
    const std::size_t len = per_iteration_db.size();
    const std::size_t window = static_cast<std::size_t>(
        std::ceil(window_fraction * static_cast<double>(len)));
    double acc = 0.0;
    for (std::size_t i = len - window; i < len; ++i)
        acc += per_iteration_db[i];
    return acc / static_cast<double>(window);
}

/// Average per-trial dB curves in the linear MSD domain, then convert back.
inline MsdCurve average_curves(const std::vector<std::vector<double>>& curves_db,
                               double window_fraction = 0.1) {
    if (curves_db.empty())
        throw dimension_error("average_curves: no trials");
    const std::size_t len = curves_db[0].size();
    for (const auto& c : curves_db)
        if (c.size() != len)
            throw dimension_error("average_curves: ragged trial lengths");
    if (!(window_fraction > 0.0) || !(window_fraction <= 1.0))
        throw domain_error("average_curves: window fraction must be in (0, 1]");

    MsdCurve out;
    out.window_fraction = window_fraction;
    if (curves_db.size() == 1) {
        out.per_iteration_db = curves_db[0];
        out.steady_state_db = trailing_window_db(out.per_iteration_db, window_fraction);
        return out;
    }
    out.per_iteration_db.resize(len);
    for (std::size_t n = 0; n < len; ++n) {
        double acc = 0.0;
        for (const auto& c : curves_db)
            acc += db_to_linear(c[n]);
        out.per_iteration_db[n] = linear_to_db(acc / static_cast<double>(curves_db.size()));
    }
    out.steady_state_db = trailing_window_db(out.per_iteration_db, window_fraction);
    return out;
}

} // namespace dlmp
