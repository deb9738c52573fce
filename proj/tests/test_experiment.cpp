#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "dlmp/experiment.hpp"

using namespace dlmp;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.n_nodes = 6;
    cfg.n_iters = 200;
    cfg.n_trials = 3;
    cfg.p_list = {1.2, 2.0};
    cfg.alpha_list = {1.2};
    cfg.seed = 99;
    return cfg;
}

} // namespace

TEST_CASE("config validation names the offending fields") {
    ExperimentConfig cfg;
    CHECK(cfg.validation_errors().empty());

    cfg.p_list = {2.5};
    cfg.mu = -1.0;
    const auto errs = cfg.validation_errors();
    REQUIRE(errs.size() == 2);
    CHECK(errs[0].rfind("mu:", 0) == 0);
    CHECK(errs[1].rfind("p_list:", 0) == 0);

    cfg.p_list.clear();
    cfg.mu = 0.005;
    CHECK_THROWS_AS(run_steady_sweep(cfg), domain_error);
}

TEST_CASE("transient mode needs exactly one alpha") {
    ExperimentConfig cfg = small_config();
    cfg.alpha_list = {1.0, 1.5};
    CHECK_THROWS_AS(run_transient_experiment(cfg), domain_error);
}

TEST_CASE("degenerate run: one trial, one iteration") {
    ExperimentConfig cfg = small_config();
    cfg.n_trials = 1;
    cfg.n_iters = 1;
    cfg.p_list = {2.0};
    const auto curves = run_transient_experiment(cfg);
    REQUIRE(curves.size() == 1);
    CHECK(curves.at(2.0).per_iteration_db.size() == 1);
}

TEST_CASE("identical seed gives byte-identical curve files, any thread count") {
    ExperimentConfig cfg = small_config();

    auto render = [&](std::size_t threads) {
        ExperimentConfig c = cfg;
        c.n_threads = threads;
        const auto curves = run_transient_experiment(c);
        std::ostringstream os;
        for (const auto& [p, curve] : curves)
            write_curve_csv(os, cfg, p, cfg.alpha_list[0], curve);
        return os.str();
    };

    const std::string serial = render(1);
    CHECK(serial == render(1));
    CHECK(serial == render(8));
}

TEST_CASE("a curve file round-trips exactly") {
    ExperimentConfig cfg = small_config();
    cfg.p_list = {1.2};
    const auto curves = run_transient_experiment(cfg);
    const MsdCurve& curve = curves.at(1.2);

    std::ostringstream os;
    write_curve_csv(os, cfg, 1.2, 1.2, curve);
    std::istringstream is(os.str());
    const auto values = read_curve_csv(is);
    REQUIRE(values.size() == curve.per_iteration_db.size());
    for (std::size_t n = 0; n < values.size(); ++n)
        CHECK(values[n] == curve.per_iteration_db[n]);
}

TEST_CASE("steady sweep covers the full cross product") {
    ExperimentConfig cfg = small_config();
    cfg.alpha_list = {1.0, 1.5};
    cfg.n_iters = 100;
    const auto rows = run_steady_sweep(cfg);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].alpha == 1.0);
    CHECK(rows[0].p == 1.2);
    CHECK(rows[3].alpha == 1.5);
    CHECK(rows[3].p == 2.0);

    std::ostringstream os;
    write_steady_csv(os, cfg, rows);
    CHECK(os.str().find("alpha,p,steady_db") != std::string::npos);
}

TEST_CASE("the network realization is fixed by the seed alone") {
    ExperimentConfig cfg = small_config();
    const Network a = experiment_network(cfg);
    cfg.mu = 0.5; // unrelated fields do not perturb the topology
    cfg.n_trials = 7;
    const Network b = experiment_network(cfg);
    for (std::size_t k = 0; k < a.n_nodes; ++k) {
        CHECK(a.positions[k].x == b.positions[k].x);
        CHECK(a.positions[k].y == b.positions[k].y);
    }

    std::ostringstream os;
    write_network_csv(os, a);
    const std::string text = os.str();
    CHECK(text.find("node,0,") != std::string::npos);
    CHECK(text.find("edge,") != std::string::npos);
}

TEST_CASE("enum parsing") {
    CHECK(parse_weight_rule("metropolis") == WeightRule::metropolis);
    CHECK(parse_algorithm("noncooperative") == Algorithm::noncooperative);
    CHECK_THROWS_AS(parse_weight_rule("nope"), domain_error);
    CHECK_THROWS_AS(parse_algorithm("nope"), domain_error);
}

TEST_CASE("global and noncooperative algorithms run end to end") {
    ExperimentConfig cfg = small_config();
    cfg.p_list = {2.0};
    cfg.alpha_list = {2.0};
    cfg.n_iters = 400;

    cfg.algorithm = Algorithm::global;
    const auto global_curves = run_transient_experiment(cfg);
    cfg.algorithm = Algorithm::noncooperative;
    const auto solo_curves = run_transient_experiment(cfg);

    // both modes converge under Gaussian noise at p=2
    CHECK(global_curves.at(2.0).steady_state_db < -10.0);
    CHECK(solo_curves.at(2.0).steady_state_db < -10.0);
}
