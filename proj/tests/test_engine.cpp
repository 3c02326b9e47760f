#include "urnvote/engine.hpp"

#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <cstdlib>
#include <string>

using namespace urnvote;

TEST_CASE("wilson interval endpoints") {
    auto [lo, hi] = wilson_interval(0, 100);
    CHECK(lo == 0.0);
    CHECK(hi == doctest::Approx(0.036995).epsilon(1e-3));
    auto [lo2, hi2] = wilson_interval(100, 100);
    CHECK(lo2 == doctest::Approx(1.0 - 0.036995).epsilon(1e-3));
    CHECK(hi2 <= 1.0);
    auto [lo3, hi3] = wilson_interval(50, 100);
    CHECK(lo3 < 0.5);
    CHECK(hi3 > 0.5);
    CHECK_THROWS(wilson_interval(0, 0));
}

TEST_CASE("multinomial draws sum to m and respect degenerate rows") {
    SplitRng rng(11, 0);
    std::vector<double> probs = {0.1, 0.2, 0.3, 0.4};
    for (int rep = 0; rep < 20; ++rep) {
        auto counts = multinomial_draw(probs, 1000, rng);
        long long total = 0;
        for (long long c : counts) {
            CHECK(c >= 0);
            total += c;
        }
        CHECK(total == 1000);
    }
    auto point = multinomial_draw({1.0, 0.0, 0.0}, 50, rng);
    CHECK(point == std::vector<long long>{50, 0, 0});
    auto last = multinomial_draw({0.0, 0.0, 1.0}, 50, rng);
    CHECK(last == std::vector<long long>{0, 0, 50});
}

TEST_CASE("multinomial goodness of fit") {
    SplitRng rng(2024, 7);
    std::vector<double> probs = {0.1, 0.2, 0.3, 0.4};
    const long long m = 40000;
    auto counts = multinomial_draw(probs, m, rng);
    double chi2 = 0.0;
    for (size_t j = 0; j < probs.size(); ++j) {
        double expect = m * probs[j];
        double d = counts[j] - expect;
        chi2 += d * d / expect;
    }
    boost::math::chi_squared dist(3);
    CHECK(chi2 < boost::math::quantile(dist, 0.9999));
}

TEST_CASE("plurality trial honors the accept set") {
    SplitRng rng(5, 0);
    auto win = run_trial_plurality({1.0, 0.0}, 1, {1}, 9, rng);
    CHECK(win.winner == 1);
    CHECK(win.success);
    auto miss = run_trial_plurality({1.0, 0.0}, 2, {2}, 9, rng);
    CHECK(miss.winner == 1);
    CHECK_FALSE(miss.success);
}

TEST_CASE("identical kernel rows are interchangeable winners") {
    std::vector<std::vector<Rat>> kernel = {{Rat(1, 2), Rat(1, 2)}, {Rat(1, 2), Rat(1, 2)}};
    auto stats = simulate_kernel_plurality("tie-pool", kernel, 9, 200, 3);
    CHECK(stats.failures == 0);  // odd m, both urns accepted
    CHECK(stats.rate == 0.0);
}

TEST_CASE("exact vote ties elect nobody") {
    CumulativeScheme flat{{Rat(1, 2), Rat(1, 2)}, {Rat(1, 2), Rat(1, 2)}};
    SplitRng rng(1, 0);
    auto out = run_trial_cumulative(flat, 0.5, 1, 100, rng);
    CHECK(out.winner == -1);
    CHECK_FALSE(out.success);
}

TEST_CASE("condorcet with two urns and odd m always produces a winner") {
    auto inst = make_bichromatic({Rat(1, 5), Rat(3, 10)});
    auto scheme = build_condorcet_scheme(inst);
    for (int t = 0; t < 50; ++t) {
        SplitRng rng(9, t);
        auto out = run_trial_condorcet(scheme, 0.3, 2, 21, rng);
        CHECK(out.winner >= 1);
        CHECK(out.winner <= 2);
    }
}

TEST_CASE("worst urn is the one with the most failures") {
    auto fails = [](int true_urn, SplitRng&) { return true_urn == 2; };
    auto stats = estimate_failure("probe", fails, {1, 2, 3}, 10, 50, 42);
    CHECK(stats.worst_urn == 2);
    CHECK(stats.failures == 50);
    CHECK(stats.rate == 1.0);
    CHECK_THROWS(estimate_failure("probe", fails, {}, 10, 50, 42));
    CHECK_THROWS(estimate_failure("probe", fails, {1}, 10, 0, 42));
}

TEST_CASE("small electorates fail; larger ones recover") {
    auto inst = lower_bound_instance(5, Rat(1, 5));
    auto s = build_plurality_scheme(inst);
    std::vector<std::vector<Rat>> kernel;
    for (int i = 1; i <= 5; ++i) kernel.push_back(expected_shares(s, inst, i));
    auto tiny = simulate_kernel_plurality("plurality", kernel, 50, 400, 12);
    auto large = simulate_kernel_plurality("plurality", kernel, 20000, 400, 12);
    CHECK(tiny.rate > 0.05);
    CHECK(large.rate < tiny.rate);
}

TEST_CASE("results are independent of the worker count") {
    auto inst = make_bichromatic({Rat(1, 4), Rat(1, 2), Rat(3, 4)});
    setenv("URNVOTE_THREADS", "1", 1);
    CHECK(engine_thread_count() == 1);
    auto one = trial_stats_to_json(simulate_cumulative(inst, 500, 200, 77));
    setenv("URNVOTE_THREADS", "4", 1);
    CHECK(engine_thread_count() == 4);
    auto four = trial_stats_to_json(simulate_cumulative(inst, 500, 200, 77));
    unsetenv("URNVOTE_THREADS");
    CHECK(one == four);
    CHECK(engine_thread_count() >= 1);
}

TEST_CASE("stats serialize with a stable schema") {
    auto inst = make_bichromatic({Rat(1, 5), Rat(4, 5)});
    auto stats = simulate_condorcet(inst, 11, 20, 5);
    auto repeat = simulate_condorcet(inst, 11, 20, 5);
    CHECK(trial_stats_to_json(stats) == trial_stats_to_json(repeat));
    auto j = trial_stats_to_json(stats);
    CHECK(j.find("\"schema\": 1") != std::string::npos);
    CHECK(j.find("\"system\": \"condorcet\"") != std::string::npos);
    CHECK(j.find("\"worst_urn\"") != std::string::npos);
    CHECK(stats.m == 11);
    CHECK(stats.trials == 20);
}
