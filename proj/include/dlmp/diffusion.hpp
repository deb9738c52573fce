#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "dlmp/data_gen.hpp"
#include "dlmp/errors.hpp"
#include "dlmp/topology.hpp"

namespace dlmp {

/// LMP configuration: power order p in (0, 2] and per-node step-sizes.
struct LmpConfig {
    double p = 2.0;
    std::vector<double> mu; ///< one entry per node, or a single shared value

    void validate() const {
        if (!(p > 0.0) || !(p <= 2.0))
            throw domain_error("LmpConfig: p must be in (0, 2]");
        if (mu.empty())
            throw domain_error("LmpConfig: at least one step-size required");
        for (double m : mu)
            if (!(m > 0.0))
                throw domain_error("LmpConfig: step-sizes must be positive");
    }

    double step_size(std::size_t k) const { return mu.size() == 1 ? mu[0] : mu[k]; }
};

inline LmpConfig lmp_config(double p, double mu) { return {p, {mu}}; }

/// Error gain of the p-power cost: sign(e)*|e|^(p-1), the factor multiplying
/// the regressor in the stochastic gradient. Reduces to e itself at p = 2
/// (LMS) and to sign(e) at p = 1. Defined as 0 at e = 0 for every p, which
/// removes the |0|^(p-2)*0 singularity of the raw gradient form.
inline double lmp_gain(double e, double p) {
    if (!(p > 0.0) || !(p <= 2.0))
        throw domain_error("lmp_gain: p must be in (0, 2]");
    if (e == 0.0)
        return 0.0;
    const double sign = (e > 0.0) ? 1.0 : -1.0;
    return sign * std::pow(std::abs(e), p - 1.0);
}

/// Per-node estimates plus the intermediate vectors of one diffusion round.
/// All vectors start at zero (iteration -1).
struct NetworkState {
    std::vector<std::vector<double>> estimates;         ///< omega_{k,n}
    std::vector<std::vector<double>> intermediates_phi; ///< phi_{k,n-1}
    std::vector<std::vector<double>> intermediates_psi; ///< psi_{k,n}
    long iteration = -1;

    static NetworkState zeros(std::size_t n_nodes, std::size_t filter_len) {
        NetworkState st;
        st.estimates.assign(n_nodes, std::vector<double>(filter_len, 0.0));
        st.intermediates_phi = st.estimates;
        st.intermediates_psi = st.estimates;
        st.iteration = -1;
        return st;
    }
};

/// Per-node inputs of one time instant.
struct RoundInputs {
    const std::vector<NodeStream>* streams = nullptr;
    std::size_t n = 0;

    const std::vector<double>& regressor(std::size_t k) const {
        return (*streams)[k].regressors[n];
    }
    double desired(std::size_t k) const { return (*streams)[k].desired[n]; }
};

namespace detail {

inline void check_dimensions(const NetworkState& state, const RoundInputs& in,
                             const CombinationWeights& weights) {
    const std::size_t n_nodes = state.estimates.size();
    if (in.streams->size() != n_nodes || weights.a1.size() != n_nodes
        || weights.a2.size() != n_nodes || weights.c.size() != n_nodes)
        throw dimension_error("diffusion step: node count mismatch");
    const std::size_t m = state.estimates[0].size();
    for (std::size_t k = 0; k < n_nodes; ++k)
        if (in.regressor(k).size() != m || state.estimates[k].size() != m)
            throw dimension_error("diffusion step: filter length mismatch at node "
                                  + std::to_string(k));
}

} // namespace detail

/// One synchronous diffusion LMP round. Three phases, each completed for all
/// nodes before the next begins:
///   phi_k = sum_l a1[l][k] * omega_l            (first combination)
///   psi_k = phi_k + mu_k * sum_l c[l][k] * g(d_l - phi_k^T u_l) * u_l
///   omega_k = sum_l a2[l][k] * psi_l            (second combination)
/// where g is lmp_gain and sums run over the closed neighborhood of k.
inline NetworkState diffusion_lmp_step(const NetworkState& state, const RoundInputs& in,
                                       const CombinationWeights& weights,
                                       const LmpConfig& cfg,
                                       const Network& net) {
    cfg.validate();
    detail::check_dimensions(state, in, weights);
    const std::size_t n_nodes = state.estimates.size();
    const std::size_t m = state.estimates[0].size();

    NetworkState next = state;
    next.iteration = state.iteration + 1;

    for (std::size_t k = 0; k < n_nodes; ++k) {
        auto& phi = next.intermediates_phi[k];
        phi.assign(m, 0.0);
        for (std::size_t l : net.neighborhoods[k]) {
            const double w = weights.a1[l][k];
            if (w == 0.0)
                continue;
            for (std::size_t i = 0; i < m; ++i)
                phi[i] += w * state.estimates[l][i];
        }
    }

    for (std::size_t k = 0; k < n_nodes; ++k) {
        const auto& phi = next.intermediates_phi[k];
        auto& psi = next.intermediates_psi[k];
        psi = phi;
        const double mu_k = cfg.step_size(k);
        for (std::size_t l : net.neighborhoods[k]) {
            const double w = weights.c[l][k];
            if (w == 0.0)
                continue;
            const auto& u = in.regressor(l);
            const double e = in.desired(l) - dot(phi, u);
            const double g = mu_k * w * lmp_gain(e, cfg.p);
            for (std::size_t i = 0; i < m; ++i)
                psi[i] += g * u[i];
        }
    }

    for (std::size_t k = 0; k < n_nodes; ++k) {
        auto& omega = next.estimates[k];
        omega.assign(m, 0.0);
        for (std::size_t l : net.neighborhoods[k]) {
            const double w = weights.a2[l][k];
            if (w == 0.0)
                continue;
            for (std::size_t i = 0; i < m; ++i)
                omega[i] += w * next.intermediates_psi[l][i];
        }
    }

    return next;
}

/// One step of the centralized steepest-descent recursion:
///   omega_n = omega_{n-1} + sum_k mu_k * g(d_k - omega_{n-1}^T u_k) * u_k.
inline std::vector<double> global_lmp_step(const std::vector<double>& w,
                                           const RoundInputs& in, const LmpConfig& cfg) {
    cfg.validate();
    const std::size_t n_nodes = in.streams->size();
    std::vector<double> next = w;
    for (std::size_t k = 0; k < n_nodes; ++k) {
        const auto& u = in.regressor(k);
        if (u.size() != w.size())
            throw dimension_error("global_lmp_step: filter length mismatch at node "
                                  + std::to_string(k));
        const double e = in.desired(k) - dot(w, u);
        const double g = cfg.step_size(k) * lmp_gain(e, cfg.p);
        for (std::size_t i = 0; i < w.size(); ++i)
            next[i] += g * u[i];
    }
    return next;
}

} // namespace dlmp
