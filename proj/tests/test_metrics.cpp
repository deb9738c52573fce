#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dlmp/metrics.hpp"
#include "dlmp/rng.hpp"

using namespace dlmp;

TEST_CASE("network_msd hand values") {
    const std::vector<double> w_o = {0.6, 0.8}; // unit norm

    // exact recovery hits the floor
    CHECK(network_msd({w_o, w_o}, w_o) == kMsdFloorDb);

    // single zero estimate against a unit-norm target: 0 dB
    CHECK(network_msd({{0.0, 0.0}}, w_o) == Catch::Approx(0.0).margin(1e-12));

    // deviations with squared norms 1 and 3 average to 2
    const std::vector<double> dev1 = {w_o[0] - 1.0, w_o[1]};       // ||.||^2 = 1
    const std::vector<double> dev3 = {w_o[0] - std::sqrt(3.0), w_o[1]}; // ||.||^2 = 3
    CHECK(network_msd({dev1, dev3}, w_o) == Catch::Approx(10.0 * std::log10(2.0)));
}

TEST_CASE("network_msd properties") {
    Rng rng = make_rng(31);
    std::uniform_real_distribution<double> draw(-1.0, 1.0);
    const std::vector<double> w_o = {draw(rng), draw(rng), draw(rng)};
    std::vector<std::vector<double>> est(4, std::vector<double>(3));
    for (auto& e : est)
        for (auto& x : e)
            x = draw(rng);

    // node permutation invariance
    auto shuffled = est;
    std::swap(shuffled[0], shuffled[3]);
    std::swap(shuffled[1], shuffled[2]);
    CHECK(network_msd(est, w_o) == Catch::Approx(network_msd(shuffled, w_o)));

    // scaling every deviation by c adds 20*log10(c)
    const double c = 3.7;
    auto scaled = est;
    for (std::size_t k = 0; k < est.size(); ++k)
        for (std::size_t i = 0; i < 3; ++i)
            scaled[k][i] = w_o[i] - c * (w_o[i] - est[k][i]);
    CHECK(network_msd(scaled, w_o)
          == Catch::Approx(network_msd(est, w_o) + 20.0 * std::log10(c)));

    CHECK_THROWS_AS(network_msd({{1.0, 2.0}}, w_o), dimension_error);
    CHECK_THROWS_AS(network_msd({}, w_o), dimension_error);
}

TEST_CASE("average_curves") {
    // single trial: identity
    const std::vector<double> curve = {3.0, 1.0, -2.0, -2.0};
    const MsdCurve one = average_curves({curve}, 0.5);
    CHECK(one.per_iteration_db == curve);
    CHECK(one.steady_state_db == Catch::Approx(-2.0));

    // two constant trials with linear MSD 1 and 3 -> 10*log10(2)
    const std::vector<double> a(10, 0.0);                       // 1 in linear
    const std::vector<double> b(10, 10.0 * std::log10(3.0));    // 3 in linear
    const MsdCurve avg = average_curves({a, b}, 0.1);
    for (double v : avg.per_iteration_db)
        CHECK(v == Catch::Approx(10.0 * std::log10(2.0)));
    CHECK(avg.steady_state_db == Catch::Approx(10.0 * std::log10(2.0)));

    // trial order does not matter
    const MsdCurve flipped = average_curves({b, a}, 0.1);
    CHECK(flipped.per_iteration_db[0] == Catch::Approx(avg.per_iteration_db[0]));

    CHECK_THROWS_AS(average_curves({}), dimension_error);
    CHECK_THROWS_AS(average_curves({{1.0, 2.0}, {1.0}}), dimension_error);
    CHECK_THROWS_AS(average_curves({{1.0}}, 0.0), domain_error);
}

TEST_CASE("steady window covers ceil(fraction * length) entries") {
    // final 10% of 5 entries -> 1 entry
    const MsdCurve tail = average_curves({{9.0, 9.0, 9.0, 9.0, -4.0}}, 0.1);
    CHECK(tail.steady_state_db == Catch::Approx(-4.0));
    // fraction 0.5 of 5 entries -> ceil(2.5) = 3 entries
    const MsdCurve half = average_curves({{9.0, 9.0, 3.0, 3.0, 3.0}}, 0.5);
    CHECK(half.steady_state_db == Catch::Approx(3.0));
}
