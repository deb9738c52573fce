// dlmp-sim: Monte Carlo driver for diffusion LMP experiments.
//
// Subcommands:
//   transient    learning curves vs p at one alpha -> <name>_curve_p<val>.csv
//   steady-sweep steady MSD over alpha x p         -> <name>_steady.csv
//   gen-network  export the network realization    -> <name>_network.csv
//
// Exit codes: 0 success, 2 config validation error, 3 generation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dlmp/experiment.hpp"

namespace {

struct CliOptions {
    dlmp::ExperimentConfig cfg;
    std::string a1 = "identity";
    std::string a2 = "uniform";
    std::string c = "identity";
    std::string algorithm = "diffusion";
    std::string output = "dlmp";
};

void add_config_options(CLI::App& app, CliOptions& opt) {
    app.add_option("--n_nodes", opt.cfg.n_nodes, "number of nodes N")
        ->capture_default_str();
    app.add_option("--radius", opt.cfg.radius, "communication range r")
        ->capture_default_str();
    app.add_option("--filter_len", opt.cfg.filter_len, "unknown parameter length M")
        ->capture_default_str();
    app.add_option("--n_iters", opt.cfg.n_iters, "iterations per trial")
        ->capture_default_str();
    app.add_option("--n_trials", opt.cfg.n_trials, "Monte Carlo trials")
        ->capture_default_str();
    app.add_option("--mu", opt.cfg.mu, "step-size")->capture_default_str();
    app.add_option("--gsnr_db", opt.cfg.gsnr_db, "generalized SNR in dB")
        ->capture_default_str();
    app.add_option("--alpha_list", opt.cfg.alpha_list, "stability indices")
        ->capture_default_str();
    app.add_option("--p_list", opt.cfg.p_list, "power orders")->capture_default_str();
    app.add_option("--a1", opt.a1, "first combination rule (identity|uniform|metropolis)")
        ->capture_default_str();
    app.add_option("--a2", opt.a2, "second combination rule")->capture_default_str();
    app.add_option("--c", opt.c, "measurement sharing rule")->capture_default_str();
    app.add_option("--algorithm", opt.algorithm,
                   "diffusion | global | noncooperative")
        ->capture_default_str();
    app.add_option("--seed", opt.cfg.seed, "master seed")->capture_default_str();
    app.add_option("--window_fraction", opt.cfg.window_fraction,
                   "steady-state trailing window")
        ->capture_default_str();
    app.add_option("--n_threads", opt.cfg.n_threads, "worker threads")
        ->capture_default_str();
    app.add_option("--output,-o", opt.output, "output file prefix")
        ->capture_default_str();
}

// enum fields arrive as strings; resolve and validate everything at once
int finalize_config(CliOptions& opt) {
    std::vector<std::string> errs;
    try {
        opt.cfg.rule_a1 = dlmp::parse_weight_rule(opt.a1);
    } catch (const dlmp::domain_error& e) {
        errs.push_back(std::string("a1: ") + e.what());
    }
    try {
        opt.cfg.rule_a2 = dlmp::parse_weight_rule(opt.a2);
    } catch (const dlmp::domain_error& e) {
        errs.push_back(std::string("a2: ") + e.what());
    }
    try {
        opt.cfg.rule_c = dlmp::parse_weight_rule(opt.c);
    } catch (const dlmp::domain_error& e) {
        errs.push_back(std::string("c: ") + e.what());
    }
    try {
        opt.cfg.algorithm = dlmp::parse_algorithm(opt.algorithm);
    } catch (const dlmp::domain_error& e) {
        errs.push_back(std::string("algorithm: ") + e.what());
    }
    for (const auto& e : opt.cfg.validation_errors())
        errs.push_back(e);
    if (!errs.empty()) {
        std::cerr << "config validation failed:\n";
        for (const auto& e : errs)
            std::cerr << "  " << e << "\n";
        return 2;
    }
    return 0;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw dlmp::generation_error("cannot open output file: " + path);
    os << body;
}

std::string short_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

int run_transient(CliOptions& opt) {
    if (int rc = finalize_config(opt); rc != 0)
        return rc;
    if (opt.cfg.alpha_list.size() != 1) {
        std::cerr << "config validation failed:\n"
                  << "  alpha_list: transient mode needs exactly one alpha\n";
        return 2;
    }
    const auto curves = dlmp::run_transient_experiment(opt.cfg);
    for (const auto& [p, curve] : curves) {
        std::ostringstream body;
        dlmp::write_curve_csv(body, opt.cfg, p, opt.cfg.alpha_list[0], curve);
        const std::string path = opt.output + "_curve_p" + short_double(p) + ".csv";
        write_file(path, body.str());
        std::cout << path << "  steady_db=" << dlmp::format_double(curve.steady_state_db)
                  << "\n";
    }
    return 0;
}

int run_steady(CliOptions& opt) {
    if (int rc = finalize_config(opt); rc != 0)
        return rc;
    const auto rows = dlmp::run_steady_sweep(opt.cfg);
    std::ostringstream body;
    dlmp::write_steady_csv(body, opt.cfg, rows);
    const std::string path = opt.output + "_steady.csv";
    write_file(path, body.str());
    std::cout << path << "  (" << rows.size() << " cells)\n";
    return 0;
}

int run_gen_network(CliOptions& opt) {
    if (int rc = finalize_config(opt); rc != 0)
        return rc;
    const dlmp::Network net = dlmp::experiment_network(opt.cfg);
    std::ostringstream body;
    dlmp::write_network_csv(body, net);
    const std::string path = opt.output + "_network.csv";
    write_file(path, body.str());
    std::cout << path << "  (" << net.n_nodes << " nodes)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"diffusion least mean p-power network simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "config file (INI/TOML, keys match the flags)");
    app.fallthrough();

    CliOptions opt;
    add_config_options(app, opt);

    auto* transient = app.add_subcommand("transient", "learning curves vs p");
    auto* steady = app.add_subcommand("steady-sweep", "steady MSD over alpha x p");
    auto* gen_net = app.add_subcommand("gen-network", "export the network realization");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (transient->parsed())
            return run_transient(opt);
        if (steady->parsed())
            return run_steady(opt);
        if (gen_net->parsed())
            return run_gen_network(opt);
    } catch (const dlmp::domain_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const dlmp::generation_error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
    return 0;
}
