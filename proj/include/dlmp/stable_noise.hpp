#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "dlmp/errors.hpp"
#include "dlmp/rng.hpp"

namespace dlmp {

/// Parameters of an alpha-stable law in the (alpha, beta, gamma, delta)
/// dispersion form: the characteristic function is
///   f(t) = exp{ j*delta*t - gamma*|t|^alpha * [1 + j*beta*sgn(t)*S(t,alpha)] }
/// with S(t,alpha) = tan(alpha*pi/2) for alpha != 1 and (2/pi)*log|t| for
/// alpha = 1. gamma plays the role the variance plays for a Gaussian;
/// alpha = 2 is Gaussian with variance 2*gamma, alpha = 1 (beta = 0) is Cauchy.
struct StableParams {
    double alpha = 2.0; ///< characteristic exponent, (0, 2]
    double beta = 0.0;  ///< symmetry, [-1, 1]
    double gamma = 1.0; ///< dispersion, > 0
    double delta = 0.0; ///< location

    void validate() const {
        if (!(alpha > 0.0) || !(alpha <= 2.0))
            throw domain_error("StableParams: alpha must be in (0, 2]");
        if (!(beta >= -1.0) || !(beta <= 1.0))
            throw domain_error("StableParams: beta must be in [-1, 1]");
        if (!(gamma > 0.0))
            throw domain_error("StableParams: gamma must be positive");
        if (!std::isfinite(delta))
            throw domain_error("StableParams: delta must be finite");
    }
};

/// Symmetric alpha-stable law with unit dispersion by default.
inline StableParams sas(double alpha, double gamma = 1.0) {
    return StableParams{alpha, 0.0, gamma, 0.0};
}

/// Exact characteristic function E[exp(j t X)].
/// At t = 0 the alpha = 1 log|t| term is taken as 0 (sgn(0) = 0), so f(0) = 1.
inline std::complex<double> characteristic_fn(const StableParams& params, double t) {
    params.validate();
    if (t == 0.0)
        return {1.0, 0.0};
    const double sgn_t = (t > 0.0) ? 1.0 : -1.0;
    const double abs_t = std::abs(t);
    const double skew_shape = (params.alpha == 1.0)
        ? (2.0 / std::numbers::pi) * std::log(abs_t)
        : std::tan(params.alpha * std::numbers::pi / 2.0);
    const std::complex<double> exponent(
        -params.gamma * std::pow(abs_t, params.alpha),
        params.delta * t
            - params.gamma * std::pow(abs_t, params.alpha) * params.beta * sgn_t * skew_shape);
    return std::exp(exponent);
}

namespace detail {

/// Chambers-Mallows-Stuck draw from the standard (scale 1, location 0) stable
/// law in the Samorodnitsky-Taqqu parameterization, whose characteristic
/// function carries [1 - j*beta*sgn(t)*tan(alpha*pi/2)] for alpha != 1 and
/// [1 + j*beta*(2/pi)*sgn(t)*log|t|] for alpha = 1.
inline double cms_standard(double alpha, double beta, Rng& rng) {
    std::uniform_real_distribution<double> uniform_angle(-std::numbers::pi / 2.0,
                                                         std::numbers::pi / 2.0);
    std::exponential_distribution<double> unit_exp(1.0);
    const double u = uniform_angle(rng);
    const double w = unit_exp(rng);

    if (alpha == 1.0) {
        const double half_pi = std::numbers::pi / 2.0;
        const double a = half_pi + beta * u;
        return (1.0 / half_pi)
            * (a * std::tan(u) - beta * std::log((half_pi * w * std::cos(u)) / a));
    }

    if (beta == 0.0) {
        // symmetric fast path
        const double x = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha);
        return x * std::pow(std::cos(u - alpha * u) / w, (1.0 - alpha) / alpha);
    }

    const double zeta = beta * std::tan(alpha * std::numbers::pi / 2.0);
    const double shift = std::atan(zeta) / alpha;
    const double scale = std::pow(1.0 + zeta * zeta, 1.0 / (2.0 * alpha));
    const double x = scale * std::sin(alpha * (u + shift))
        / std::pow(std::cos(u), 1.0 / alpha);
    return x * std::pow(std::cos(u - alpha * (u + shift)) / w, (1.0 - alpha) / alpha);
}

} // namespace detail

/// One draw from the law of characteristic_fn(params, .).
/// Exact transform: one uniform angle on (-pi/2, pi/2) plus one unit
/// exponential per draw, then dispersion/location rescaling.
inline double sample_stable(const StableParams& params, Rng& rng) {
    params.validate();
    if (params.alpha == 1.0) {
        const double x0 = detail::cms_standard(1.0, params.beta, rng);
        // scaling a standard alpha=1 draw by gamma shifts location by
        // (2/pi)*beta*gamma*log(gamma); compensate so delta stays the location
        return params.gamma * x0
            + (2.0 / std::numbers::pi) * params.beta * params.gamma * std::log(params.gamma)
            + params.delta;
    }
    // the dispersion-form sign convention for the tan term is opposite to
    // the Samorodnitsky-Taqqu one the CMS formulas target, hence -beta
    const double x0 = detail::cms_standard(params.alpha, -params.beta, rng);
    return std::pow(params.gamma, 1.0 / params.alpha) * x0 + params.delta;
}

/// Dispersion gamma that realizes a target generalized SNR:
/// GSNR(dB) = 10*log10(signal_power / gamma).
inline double dispersion_for_gsnr(double signal_power, double gsnr_db) {
    if (!(signal_power > 0.0))
        throw domain_error("dispersion_for_gsnr: signal power must be positive");
    return signal_power / std::pow(10.0, gsnr_db / 10.0);
}

} // namespace dlmp
