#pragma once

#include <cstddef>
#include <vector>

#include "dlmp/errors.hpp"
#include "dlmp/rng.hpp"
#include "dlmp/stable_noise.hpp"

namespace dlmp {

/// The unknown parameter vector all nodes estimate.
struct GroundTruth {
    std::vector<double> w_o;

    std::size_t filter_len() const { return w_o.size(); }
};

/// Per-node measurement stream for the model d_n = w_o^T u_n + v_n.
/// Regressors are a tapped delay line over a white input: u_n[i] holds the
/// input sample at time n-i, zero before time 0, so u_n[i] = u_{n-1}[i-1].
struct NodeStream {
    std::vector<std::vector<double>> regressors; ///< u_{k,n}, length M each
    std::vector<double> desired;                 ///< d_{k,n}
    std::vector<double> noise;                   ///< v_{k,n}
    double signal_power = 0.0; ///< mean of (w_o^T u_n)^2 over this stream
};

inline GroundTruth draw_ground_truth(std::size_t filter_len, Rng& rng) {
    if (filter_len < 1)
        throw domain_error("draw_ground_truth: filter length must be >= 1");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    GroundTruth truth;
    truth.w_o.resize(filter_len);
    for (auto& w : truth.w_o)
        w = unit(rng);
    return truth;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

namespace detail {

inline NodeStream generate_one_stream(const GroundTruth& truth, std::size_t n_iters,
                                      const StableParams& noise_params, Rng& rng) {
    const std::size_t m = truth.filter_len();
    std::normal_distribution<double> std_normal(0.0, 1.0);
    NodeStream stream;
    stream.regressors.assign(n_iters, std::vector<double>(m, 0.0));
    stream.desired.resize(n_iters);
    stream.noise.resize(n_iters);
    std::vector<double> window(m, 0.0);
    double power = 0.0;
    for (std::size_t n = 0; n < n_iters; ++n) {
        for (std::size_t i = m; i-- > 1;)
            window[i] = window[i - 1];
        window[0] = std_normal(rng);
        stream.regressors[n] = window;
        const double signal = dot(truth.w_o, window);
        stream.noise[n] = sample_stable(noise_params, rng);
        stream.desired[n] = signal + stream.noise[n];
        power += signal * signal;
    }
    stream.signal_power = power / static_cast<double>(n_iters);
    return stream;
}

} // namespace detail

/// One stream per node, all driven by substreams split off the given source
/// so node streams are mutually independent.
inline std::vector<NodeStream> generate_streams(const GroundTruth& truth,
                                                std::size_t n_nodes, std::size_t n_iters,
                                                const StableParams& noise_params, Rng& rng) {
    if (n_nodes < 1 || n_iters < 1)
        throw domain_error("generate_streams: counts must be >= 1");
    noise_params.validate();
    std::vector<NodeStream> streams;
    streams.reserve(n_nodes);
    for (std::size_t k = 0; k < n_nodes; ++k) {
        Rng node_rng = make_rng(derive_seed(rng(), k));
        streams.push_back(detail::generate_one_stream(truth, n_iters, noise_params, node_rng));
    }
    return streams;
}

/// Network-wide signal power: mean of (w_o^T u_{k,n})^2 over nodes and times.
inline double network_signal_power(const std::vector<NodeStream>& streams) {
    double total = 0.0;
    for (const auto& s : streams)
        total += s.signal_power;
    return total / static_cast<double>(streams.size());
}

/// Generate streams whose noise dispersion realizes the requested GSNR:
/// unit-dispersion noise is drawn first, the empirical signal power fixes
/// gamma, and noise is rescaled by gamma^(1/alpha) (the exact stable scaling).
/// Returns the realized gamma through out_gamma when non-null.
inline std::vector<NodeStream> generate_streams_for_gsnr(
    const GroundTruth& truth, std::size_t n_nodes, std::size_t n_iters,
    double alpha, double gsnr_db, Rng& rng, double* out_gamma = nullptr) {
    auto streams = generate_streams(truth, n_nodes, n_iters, sas(alpha), rng);
    const double gamma = dispersion_for_gsnr(network_signal_power(streams), gsnr_db);
    const double scale = std::pow(gamma, 1.0 / alpha);
    for (auto& s : streams) {
        for (std::size_t n = 0; n < s.noise.size(); ++n) {
            s.noise[n] *= scale;
            s.desired[n] = dot(truth.w_o, s.regressors[n]) + s.noise[n];
        }
    }
    if (out_gamma)
        *out_gamma = gamma;
    return streams;
}

} // namespace dlmp
