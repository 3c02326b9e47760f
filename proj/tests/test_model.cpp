#include "urnvote/model.hpp"

#include <doctest.h>

#include <algorithm>

using namespace urnvote;

TEST_CASE("bichromatic construction sorts and computes the separation") {
    auto inst = make_bichromatic({Rat(3, 4), Rat(1, 4), Rat(1, 2)});
    CHECK(inst.size() == 3);
    CHECK(inst.p(1) == Rat(1, 4));
    CHECK(inst.p(3) == Rat(3, 4));
    CHECK(inst.eps == Rat(1, 4));
    CHECK(inst.strict);

    auto dup = make_bichromatic({Rat(1, 2), Rat(1, 2), Rat(3, 4)});
    CHECK_FALSE(dup.strict);
    CHECK(dup.eps == 0);

    CHECK_THROWS(make_bichromatic({Rat(5, 4)}));
    CHECK_THROWS(make_bichromatic({}));
}

TEST_CASE("construction is idempotent under re-sorting") {
    auto inst = make_bichromatic({Rat(9, 10), Rat(1, 10), Rat(2, 5)});
    auto again = make_bichromatic(inst.probs);
    CHECK(again.probs == inst.probs);
    CHECK(again.eps == inst.eps);
}

TEST_CASE("lower bound family is symmetric with exact separation") {
    for (int n : {2, 3, 5, 8}) {
        Rat eps(1, 2 * n);
        auto inst = lower_bound_instance(n, eps);
        CHECK(inst.eps == eps);
        for (int i = 1; i <= n; ++i) {
            CHECK(inst.p(i) + inst.p(n + 1 - i) == 1);
        }
    }
    // p_i = (1 - eps(n-1))/2 + (i-1) eps
    auto inst = lower_bound_instance(5, Rat(1, 5));
    CHECK(inst.p(1) == Rat(1, 10));
    CHECK(inst.p(3) == Rat(1, 2));
    CHECK(inst.p(5) == Rat(9, 10));

    CHECK_THROWS(lower_bound_instance(1, Rat(1, 10)));
    CHECK_THROWS(lower_bound_instance(5, Rat(1, 2)));  // eps > 1/(n-1)
    CHECK_THROWS(lower_bound_instance(5, Rat(0)));
}

TEST_CASE("multicolor validation") {
    auto inst = make_multicolor({{Rat(1, 2), Rat(1, 2)}, {Rat(1, 4), Rat(3, 4)}});
    CHECK(inst.size() == 2);
    CHECK(inst.colors() == 2);
    CHECK(inst.eps_l1 == Rat(1, 2));

    CHECK_THROWS(make_multicolor({{Rat(1, 2), Rat(1, 4)}, {Rat(1, 4), Rat(3, 4)}}));  // bad sum
    CHECK_THROWS(make_multicolor({{Rat(1, 2), Rat(1, 2)}, {Rat(1)}}));                // ragged
    CHECK_THROWS(make_multicolor({{Rat(1, 2), Rat(1, 2)}, {Rat(1, 2), Rat(1, 2)}}));  // dup rows
    CHECK_THROWS(make_multicolor({{Rat(1, 2), Rat(1, 2)}}));                          // one urn
}

TEST_CASE("json round trips") {
    auto inst = make_bichromatic({Rat(1, 3), Rat(2, 3)});
    auto parsed = load_bichromatic_json(bichromatic_to_json(inst));
    CHECK(parsed.probs == inst.probs);

    auto probs = load_bichromatic_json(R"({"probs": [0.25, "1/2", 1]})");
    CHECK(probs.p(1) == Rat(1, 4));
    CHECK(probs.p(2) == Rat(1, 2));
    CHECK(probs.p(3) == Rat(1));

    auto mc = make_multicolor({{Rat(1, 3), Rat(2, 3)}, {Rat(2, 3), Rat(1, 3)}});
    auto mc2 = load_multicolor_json(multicolor_to_json(mc));
    CHECK(mc2.rows == mc.rows);
    CHECK(mc2.eps_l1 == mc.eps_l1);

    CHECK_THROWS(load_bichromatic_json(R"({"rows": []})"));
}

TEST_CASE("near-rational float rows pass the stochasticity tolerance") {
    // 0.1 + 0.2 + 0.7 in binary is not exactly 1 but well inside 1e-12
    auto inst = make_multicolor({{rat_from_double(0.1), rat_from_double(0.2), rat_from_double(0.7)},
                                 {rat_from_double(0.3), rat_from_double(0.3),
                                  rat_from_double(0.4)}});
    CHECK(inst.colors() == 3);
}
