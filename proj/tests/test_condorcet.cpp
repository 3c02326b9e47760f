#include "urnvote/condorcet.hpp"

#include <doctest.h>

#include <cmath>

using namespace urnvote;

TEST_CASE("c coefficients by hand") {
    CHECK(coeff_c(0, 0) == 0);
    CHECK(coeff_c(1, 0) == -1);
    CHECK(coeff_c(2, 0) == Rat(1, 2));
    CHECK_THROWS(coeff_c(-1, 0));
}

TEST_CASE("exact b and a tables match the reference values") {
    CoeffTable t(5, 5);
    CHECK(t.b(0, 0) == 1);
    CHECK(t.b(0, 3) == -4);
    CHECK(t.b(1, 0) == 2);
    CHECK(t.b(1, 2) == 0);
    CHECK(t.b(2, 3) == -36);
    CHECK(t.b(3, 0) == Rat(20, 3));
    CHECK(t.b(4, 4) == Rat(880, 3));
    CHECK(t.b(5, 1) == Rat(-844, 15));
    CHECK(t.b(5, 5) == Rat(-558, 5));
    CHECK(t.a(0, 0) == 1);
    CHECK(t.a(1, 1) == 4);
    CHECK(t.a(3, 2) == Rat(40, 3));
    CHECK(t.a(5, 1) == Rat(1214, 15));
    CHECK(t.a(5, 5) == Rat(46, 3));
    CHECK_THROWS(t.b(6, 0));
    CHECK_THROWS(t.a(0, 6));
}

TEST_CASE("signed catalan closed form and the diagonal identity") {
    CHECK(catalan_rhs(0) == 0);
    CHECK(catalan_rhs(1) == 1);
    CHECK(catalan_rhs(2) == -1);
    CHECK(catalan_rhs(3) == 3);
    CHECK(catalan_rhs(4) == -5);
    CHECK(catalan_rhs(5) == 11);
    CoeffTable t(10, 10);
    for (int n = 0; n <= 10; ++n) {
        Rat sum = 0;
        for (int k = 0; k <= n; ++k) sum += t.b(k, n - k) / Rat(k + 1);
        CHECK(sum == Rat(catalan_rhs(n + 1)));
    }
}

TEST_CASE("float table tracks the exact one") {
    CoeffTable exact(8, 8);
    SeriesTableF64 f(8);
    for (int k = 0; k <= 8; ++k) {
        for (int l = 0; l <= 8; ++l) {
            CHECK(f.b(k, l) == doctest::Approx(to_double(exact.b(k, l))).epsilon(1e-9));
        }
    }
    CHECK(shared_series_table().terms() == 200);
    CHECK_THROWS(SeriesTableF64(0));
}

TEST_CASE("conjecture scan: positive density, near-zero mass residual") {
    auto rows = conjecture_scan({0.6, 0.75, 0.9}, 2001, 200);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r.min_beta > 0.0);
        CHECK(r.mass_residual < 1e-6);
        CHECK(r.tail_at_k < 1e-6);
    }
    auto csv = conjecture_scan_csv(rows);
    CHECK(csv.rfind("p,min_beta,mass_residual,tail_at_k\n", 0) == 0);
    CHECK_THROWS(conjecture_scan({0.4}, 2001, 200));
    CHECK_THROWS(conjecture_scan({0.75}, 1, 200));
    CHECK_THROWS(conjecture_scan({0.75}, 2001, 10));
}

TEST_CASE("sampler masses and support") {
    const auto& table = shared_series_table();
    XpSampler low(0.3, table);
    CHECK(low.point_mass() == 1.0);
    SplitRng rng(1);
    for (int i = 0; i < 10; ++i) CHECK(low.sample(rng) == 0.3);

    XpSampler s(0.75, table);
    CHECK(s.point_mass() == doctest::Approx(std::sqrt(1.0 / 3.0)));
    CHECK(s.alpha_mass() == doctest::Approx(0.2));
    CHECK(s.point_mass() + s.alpha_mass() + s.beta_mass() == doctest::Approx(1.0));
    int at_point = 0, below_half = 0, middle = 0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        double x = s.sample(rng);
        CHECK(x >= 0.25);
        CHECK(x <= 0.75);
        if (x == 0.75) ++at_point;
        else if (x <= 0.5) ++below_half;
        else ++middle;
    }
    // each branch frequency sits within ~4 sigma of its mass
    CHECK(std::fabs(at_point / double(draws) - s.point_mass()) < 0.015);
    CHECK(std::fabs(below_half / double(draws) - s.alpha_mass()) < 0.015);
    CHECK(std::fabs(middle / double(draws) - s.beta_mass()) < 0.015);
    CHECK_THROWS(XpSampler(1.5, table));
}

TEST_CASE("pairwise marginals match min(1, 1/(p_i+p_j))") {
    const auto& table = shared_series_table();
    SplitRng rng(77);
    {
        std::vector<XpSampler> ss = {XpSampler(0.55, table), XpSampler(0.7, table)};
        int wins = 0;
        const int draws = 20000;
        for (int i = 0; i < draws; ++i) {
            if (sample_permutation(ss, rng).beats(1, 0)) ++wins;
        }
        CHECK(std::fabs(wins / double(draws) - 0.8) < 0.01);
    }
    {
        std::vector<XpSampler> ss = {XpSampler(0.2, table), XpSampler(0.9, table)};
        int wins = 0;
        const int draws = 20000;
        for (int i = 0; i < draws; ++i) {
            if (sample_permutation(ss, rng).beats(1, 0)) ++wins;
        }
        CHECK(std::fabs(wins / double(draws) - 10.0 / 11.0) < 0.01);
    }
}

TEST_CASE("scheme ballots: blue side is deterministic for small p") {
    auto inst = make_bichromatic({Rat(1, 5), Rat(3, 10)});
    auto scheme = build_condorcet_scheme(inst);
    CHECK(scheme.red[0].p() == doctest::Approx(0.8));
    CHECK(scheme.red[1].p() == doctest::Approx(0.7));
    SplitRng rng(3);
    for (int i = 0; i < 20; ++i) {
        auto ballot = condorcet_ballot(scheme, true, rng);
        CHECK(ballot.beats(1, 0));  // constants 0.3 > 0.2, always ranked above
        CHECK_FALSE(ballot.beats(0, 1));
    }
    CHECK_THROWS(build_condorcet_scheme(make_bichromatic({Rat(1, 2), Rat(1, 2)})));
}

TEST_CASE("budget values") {
    CHECK(condorcet_budget(lower_bound_instance(4, rat_from_double(0.15)), 0.1) == 22675);
    CHECK(condorcet_budget(lower_bound_instance(5, Rat(1, 5)), 0.1) == 12755);
    CHECK_THROWS(condorcet_budget(lower_bound_instance(4, Rat(1, 10)), 1.0));
}
