#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dlmp/data_gen.hpp"
#include "dlmp/diffusion.hpp"
#include "dlmp/errors.hpp"
#include "dlmp/metrics.hpp"
#include "dlmp/topology.hpp"

namespace dlmp {

enum class Algorithm { diffusion, global, noncooperative };

inline std::string to_string(WeightRule rule) {
    switch (rule) {
    case WeightRule::identity: return "identity";
    case WeightRule::uniform: return "uniform";
    case WeightRule::metropolis: return "metropolis";
    }
    return "?";
}

inline std::string to_string(Algorithm alg) {
    switch (alg) {
    case Algorithm::diffusion: return "diffusion";
    case Algorithm::global: return "global";
    case Algorithm::noncooperative: return "noncooperative";
    }
    return "?";
}

inline WeightRule parse_weight_rule(const std::string& s) {
    if (s == "identity") return WeightRule::identity;
    if (s == "uniform") return WeightRule::uniform;
    if (s == "metropolis") return WeightRule::metropolis;
    throw domain_error("unknown weight rule: " + s);
}

inline Algorithm parse_algorithm(const std::string& s) {
    if (s == "diffusion") return Algorithm::diffusion;
    if (s == "global") return Algorithm::global;
    if (s == "noncooperative") return Algorithm::noncooperative;
    throw domain_error("unknown algorithm: " + s);
}

/// Full description of one Monte Carlo experiment. Defaults follow the
/// reference setup: 20 nodes, range 0.5, step-size 0.005, 10 trials,
/// GSNR 20 dB.
struct ExperimentConfig {
    std::size_t n_nodes = 20;
    double radius = 0.5;
    std::size_t filter_len = 4;
    std::size_t n_iters = 5000;
    std::size_t n_trials = 10;
    double mu = 0.005;
    double gsnr_db = 20.0;
    std::vector<double> alpha_list = {1.2};
    std::vector<double> p_list = {1.0, 1.2, 1.4, 1.6, 1.8, 2.0};
    WeightRule rule_a1 = WeightRule::identity;
    WeightRule rule_a2 = WeightRule::uniform;
    WeightRule rule_c = WeightRule::identity;
    Algorithm algorithm = Algorithm::diffusion;
    std::uint64_t seed = 1;
    double window_fraction = 0.1;
    std::size_t n_threads = 1; ///< worker threads for trials/cells

    /// Human-readable list of invalid fields; empty when the config is valid.
    std::vector<std::string> validation_errors() const {
        std::vector<std::string> errs;
        if (n_nodes < 1) errs.push_back("n_nodes: must be >= 1");
        if (!(radius > 0.0) || !(radius <= std::sqrt(2.0)))
            errs.push_back("radius: must be in (0, sqrt(2)]");
        if (filter_len < 1) errs.push_back("filter_len: must be >= 1");
        if (n_iters < 1) errs.push_back("n_iters: must be >= 1");
        if (n_trials < 1) errs.push_back("n_trials: must be >= 1");
        if (!(mu > 0.0)) errs.push_back("mu: must be positive");
        if (!std::isfinite(gsnr_db)) errs.push_back("gsnr_db: must be finite");
        if (alpha_list.empty()) errs.push_back("alpha_list: must be non-empty");
        for (double a : alpha_list)
            if (!(a > 0.0) || !(a <= 2.0)) {
                errs.push_back("alpha_list: every alpha must be in (0, 2]");
                break;
            }
        if (p_list.empty()) errs.push_back("p_list: must be non-empty");
        for (double p : p_list)
            if (!(p > 0.0) || !(p <= 2.0)) {
                errs.push_back("p_list: every p must be in (0, 2]");
                break;
            }
        if (!(window_fraction > 0.0) || !(window_fraction <= 1.0))
            errs.push_back("window_fraction: must be in (0, 1]");
        if (n_threads < 1) errs.push_back("n_threads: must be >= 1");
        return errs;
    }

    void validate() const {
        auto errs = validation_errors();
        if (!errs.empty()) {
            std::string msg = "invalid config:";
            for (const auto& e : errs)
                msg += "\n  " + e;
            throw domain_error(msg);
        }
    }
};

namespace detail {

// stream-id tags for substream derivation
constexpr std::uint64_t kTagNetwork = 0x6e6574; // "net"
constexpr std::uint64_t kTagTruth = 0x747275;   // "tru"
constexpr std::uint64_t kTagStreams = 0x647461; // "dta"

inline std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

} // namespace detail

/// The single network realization used by every trial of an experiment.
/// Depends only on (seed, n_nodes, radius).
inline Network experiment_network(const ExperimentConfig& cfg) {
    Rng rng = make_rng(derive_seed(cfg.seed, detail::kTagNetwork));
    return generate_rgg(cfg.n_nodes, cfg.radius, rng);
}

/// One Monte Carlo trial: fresh ground truth and streams, fixed topology.
/// Returns the per-iteration network MSD curve in dB. Deterministic in
/// (cfg.seed, alpha, trial); independent of p so a p-sweep reuses the data.
inline std::vector<double> run_trial(const ExperimentConfig& cfg, const Network& net,
                                     const CombinationWeights& weights, double p,
                                     double alpha, std::size_t trial) {
    Rng truth_rng = make_rng(derive_seed(cfg.seed, detail::kTagTruth, trial));
    const GroundTruth truth = draw_ground_truth(cfg.filter_len, truth_rng);

    Rng stream_rng =
        make_rng(derive_seed(cfg.seed, detail::kTagStreams, trial, detail::bits(alpha)));
    const auto streams =
        generate_streams_for_gsnr(truth, cfg.n_nodes, cfg.n_iters, alpha, cfg.gsnr_db,
                                  stream_rng);

    const LmpConfig lmp = lmp_config(p, cfg.mu);
    std::vector<double> curve(cfg.n_iters);

    if (cfg.algorithm == Algorithm::global) {
        std::vector<double> w(cfg.filter_len, 0.0);
        for (std::size_t n = 0; n < cfg.n_iters; ++n) {
            w = global_lmp_step(w, RoundInputs{&streams, n}, lmp);
            curve[n] = network_msd({w}, truth.w_o);
        }
        return curve;
    }

    const CombinationWeights* active = &weights;
    CombinationWeights solo;
    if (cfg.algorithm == Algorithm::noncooperative) {
        auto eye = identity_matrix(cfg.n_nodes);
        solo = CombinationWeights{eye, eye, eye};
        active = &solo;
    }

    NetworkState state = NetworkState::zeros(cfg.n_nodes, cfg.filter_len);
    for (std::size_t n = 0; n < cfg.n_iters; ++n) {
        state = diffusion_lmp_step(state, RoundInputs{&streams, n}, *active, lmp, net);
        curve[n] = network_msd(state.estimates, truth.w_o);
    }
    return curve;
}

namespace detail {

/// Run `jobs` closures indexed 0..count-1 on cfg.n_threads workers.
/// Each job writes to its own output slot, so results are order-independent.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t n_threads, Fn&& job) {
    if (n_threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            job(i);
        }
    };
    std::vector<std::thread> pool;
    const std::size_t n = std::min(n_threads, count);
    pool.reserve(n);
    for (std::size_t t = 0; t < n; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
}

} // namespace detail

/// Averaged learning curve for one (p, alpha) cell.
inline MsdCurve run_cell(const ExperimentConfig& cfg, const Network& net,
                         const CombinationWeights& weights, double p, double alpha) {
    std::vector<std::vector<double>> per_trial(cfg.n_trials);
    detail::parallel_for(cfg.n_trials, cfg.n_threads, [&](std::size_t t) {
        per_trial[t] = run_trial(cfg, net, weights, p, alpha, t);
    });
    return average_curves(per_trial, cfg.window_fraction);
}

/// Transient experiment (one alpha, several p): one averaged curve per p.
inline std::map<double, MsdCurve> run_transient_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.alpha_list.size() != 1)
        throw domain_error("invalid config:\n  alpha_list: transient mode needs exactly one alpha");
    const Network net = experiment_network(cfg);
    const CombinationWeights weights =
        make_weights(net, cfg.rule_a1, cfg.rule_a2, cfg.rule_c);
    const double alpha = cfg.alpha_list[0];

    // flatten (p, trial) into one job list so all work shares the pool
    std::vector<std::vector<std::vector<double>>> per_trial(
        cfg.p_list.size(), std::vector<std::vector<double>>(cfg.n_trials));
    detail::parallel_for(cfg.p_list.size() * cfg.n_trials, cfg.n_threads,
                         [&](std::size_t job) {
                             const std::size_t i = job / cfg.n_trials;
                             const std::size_t t = job % cfg.n_trials;
                             per_trial[i][t] =
                                 run_trial(cfg, net, weights, cfg.p_list[i], alpha, t);
                         });
    std::vector<MsdCurve> curves(cfg.p_list.size());
    for (std::size_t i = 0; i < cfg.p_list.size(); ++i)
        curves[i] = average_curves(per_trial[i], cfg.window_fraction);

    std::map<double, MsdCurve> out;
    for (std::size_t i = 0; i < cfg.p_list.size(); ++i)
        out[cfg.p_list[i]] = std::move(curves[i]);
    return out;
}

struct SteadyRow {
    double alpha = 0.0;
    double p = 0.0;
    double steady_db = 0.0;
};

/// Steady-state sweep over the full alpha_list x p_list cross product.
inline std::vector<SteadyRow> run_steady_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const Network net = experiment_network(cfg);
    const CombinationWeights weights =
        make_weights(net, cfg.rule_a1, cfg.rule_a2, cfg.rule_c);

    const std::size_t n_cells = cfg.alpha_list.size() * cfg.p_list.size();
    std::vector<SteadyRow> rows(n_cells);
    detail::parallel_for(n_cells, cfg.n_threads, [&](std::size_t cell) {
        const double alpha = cfg.alpha_list[cell / cfg.p_list.size()];
        const double p = cfg.p_list[cell % cfg.p_list.size()];
        ExperimentConfig inner = cfg;
        inner.n_threads = 1; // parallelism already spent at cell level
        const MsdCurve curve = run_cell(inner, net, weights, p, alpha);
        rows[cell] = SteadyRow{alpha, p, curve.steady_state_db};
    });
    return rows;
}

// ---------------------------------------------------------------------------
// delimited-text output (round-trippable: doubles printed with %.17g)

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string config_header(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "# generator: dlmp-sim\n";
    os << "# n_nodes=" << cfg.n_nodes << " radius=" << format_double(cfg.radius)
       << " filter_len=" << cfg.filter_len << "\n";
    os << "# n_iters=" << cfg.n_iters << " n_trials=" << cfg.n_trials
       << " mu=" << format_double(cfg.mu) << " gsnr_db=" << format_double(cfg.gsnr_db)
       << "\n";
    os << "# weights: a1=" << to_string(cfg.rule_a1) << " a2=" << to_string(cfg.rule_a2)
       << " c=" << to_string(cfg.rule_c) << " algorithm=" << to_string(cfg.algorithm)
       << "\n";
    os << "# seed=" << cfg.seed
       << " window_fraction=" << format_double(cfg.window_fraction) << "\n";
    return os.str();
}

inline void write_curve_csv(std::ostream& os, const ExperimentConfig& cfg, double p,
                            double alpha, const MsdCurve& curve) {
    os << config_header(cfg);
    os << "# p=" << format_double(p) << " alpha=" << format_double(alpha)
       << " steady_db=" << format_double(curve.steady_state_db) << "\n";
    os << "iteration,msd_db\n";
    for (std::size_t n = 0; n < curve.per_iteration_db.size(); ++n)
        os << n << "," << format_double(curve.per_iteration_db[n]) << "\n";
}

inline void write_steady_csv(std::ostream& os, const ExperimentConfig& cfg,
                             const std::vector<SteadyRow>& rows) {
    os << config_header(cfg);
    os << "alpha,p,steady_db\n";
    for (const auto& r : rows)
        os << format_double(r.alpha) << "," << format_double(r.p) << ","
           << format_double(r.steady_db) << "\n";
}

/// Positions then edges, Fig-1 style export.
inline void write_network_csv(std::ostream& os, const Network& net) {
    os << "# dlmp network export\n";
    os << "# n_nodes=" << net.n_nodes << " radius=" << format_double(net.radius) << "\n";
    os << "record,id_or_src,x_or_dst,y\n";
    for (std::size_t k = 0; k < net.n_nodes; ++k)
        os << "node," << k << "," << format_double(net.positions[k].x) << ","
           << format_double(net.positions[k].y) << "\n";
    for (std::size_t k = 0; k < net.n_nodes; ++k)
        for (std::size_t l = k + 1; l < net.n_nodes; ++l)
            if (net.adjacency[k][l])
                os << "edge," << k << "," << l << ",\n";
}

/// Parse a curve file written by write_curve_csv back to (iteration, msd_db)
/// pairs. Skips '#' metadata and the column header.
inline std::vector<double> read_curve_csv(std::istream& is) {
    std::vector<double> values;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("iteration", 0) == 0)
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw generation_error("read_curve_csv: malformed row: " + line);
        values.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
    }
    return values;
}

} // namespace dlmp
