#include "urnvote/plurality2.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace urnvote;

TEST_CASE("three-urn reference scheme") {
    auto inst = make_bichromatic({Rat(1, 4), Rat(1, 2), Rat(3, 4)});
    auto s = build_plurality_scheme(inst);
    CHECK(s.b_weights == std::vector<Rat>{Rat(0), Rat(5), Rat(8)});
    CHECK(s.r_weights == std::vector<Rat>{Rat(8), Rat(5), Rat(0)});
    CHECK(s.m_norm == 13);
    CHECK(s.blue_votes == std::vector<Rat>{Rat(0), Rat(5, 13), Rat(8, 13)});
    CHECK(s.red_votes == std::vector<Rat>{Rat(8, 13), Rat(5, 13), Rat(0)});
}

TEST_CASE("two-urn scheme degenerates to the indicator ballots") {
    auto inst = make_bichromatic({Rat(1, 3), Rat(2, 3)});
    auto s = build_plurality_scheme(inst);
    CHECK(s.blue_votes == std::vector<Rat>{Rat(0), Rat(1)});
    CHECK(s.red_votes == std::vector<Rat>{Rat(1), Rat(0)});
    CHECK(s.m_norm == 3);
}

TEST_CASE("expected shares are distributions and favor the true urn") {
    auto inst = make_bichromatic({Rat(1, 10), Rat(2, 5), Rat(7, 10), Rat(9, 10)});
    auto s = build_plurality_scheme(inst);
    for (int i = 1; i <= inst.size(); ++i) {
        auto shares = expected_shares(s, inst, i);
        Rat total = 0;
        for (const auto& v : shares) {
            CHECK(v >= 0);
            total += v;
        }
        CHECK(total == 1);
        for (int j = 1; j <= inst.size(); ++j) {
            if (j != i) CHECK(shares[i - 1] > shares[j - 1]);
        }
    }
}

TEST_CASE("margin law and normalizer bound on random instances") {
    std::mt19937 gen(2024);
    for (int rep = 0; rep < 100; ++rep) {
        int n = 2 + static_cast<int>(gen() % 7);
        int den = 40 + static_cast<int>(gen() % 300);
        std::vector<Rat> probs;
        std::vector<int> nums;
        while (static_cast<int>(nums.size()) < n) {
            int v = static_cast<int>(gen() % (den + 1));
            bool dup = false;
            for (int u : nums) dup = dup || (u == v);
            if (!dup) nums.push_back(v);
        }
        for (int v : nums) probs.push_back(Rat(v, den));
        auto inst = make_bichromatic(probs);
        auto s = build_plurality_scheme(inst);
        CHECK(s.m_norm <= Rat(2 * n * (n - 1)) / inst.eps);
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                if (i == j) continue;
                CHECK(margin(s, inst, i, j) >= Rat(std::abs(i - j)) / s.m_norm);
            }
        }
    }
}

TEST_CASE("hard instance I(5, 1/5) normalizer and theorem budget") {
    auto inst = lower_bound_instance(5, Rat(1, 5));
    auto s = build_plurality_scheme(inst);
    CHECK(s.m_norm == 60);
    auto b = plurality_budget(inst, 0.1);
    // ceil(108 * 60 * 4 / 0.2 * ln 40)
    CHECK(b.voters == 478079);
    CHECK(b.cap == 432000);  // ceil(216 * 16 * 5 / 0.04)
    auto scaled = plurality_budget(inst, 0.1, 1e-3);
    CHECK(scaled.voters == 479);
    // halving eta only adds a log factor
    auto tighter = plurality_budget(inst, 0.05);
    CHECK(tighter.voters > b.voters);
    CHECK(tighter.voters < 2 * b.voters);
}

TEST_CASE("non-strict instances are rejected") {
    auto dup = make_bichromatic({Rat(1, 2), Rat(1, 2)});
    CHECK_THROWS(build_plurality_scheme(dup));
    auto single = make_bichromatic({Rat(1, 2)});
    CHECK_THROWS(build_plurality_scheme(single));
    auto inst = make_bichromatic({Rat(1, 3), Rat(2, 3)});
    CHECK_THROWS(plurality_budget(inst, 0.0));
    CHECK_THROWS(margin(build_plurality_scheme(inst), inst, 1, 1));
}
