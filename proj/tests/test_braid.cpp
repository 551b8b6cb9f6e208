#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qlink/braid.hpp"
#include "qlink/quandle.hpp"

using namespace qlink;

TEST_CASE("parser handles the grammar") {
    auto w = parse_braid("B2: s1^-3");
    CHECK(w.strands == 2);
    CHECK(w.letters == std::vector<int>{-1, -1, -1});

    auto f8 = parse_braid("B3: s1 s2^-1 s1 s2^-1");
    CHECK(f8.strands == 3);
    CHECK(f8.letters == std::vector<int>{1, -2, 1, -2});

    auto bare = parse_braid("1 -2 1 -2");
    CHECK(bare.strands == 3);
    CHECK(bare.letters == f8.letters);

    auto id = parse_braid("B4:");
    CHECK(id.strands == 4);
    CHECK(id.letters.empty());

    CHECK_THROWS_AS(parse_braid("B2: s2"), input_error);    // index out of range
    CHECK_THROWS_AS(parse_braid("B2: s0"), input_error);    // zero letter
    CHECK_THROWS_AS(parse_braid("B2: x1"), input_error);    // malformed token
    CHECK_THROWS_AS(parse_braid("B2: s1^"), input_error);   // missing exponent
    CHECK_THROWS_AS(parse_braid("0"), input_error);
}

TEST_CASE("printer round trips") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> strands(1, 5);
        BraidWord w;
        w.strands = strands(rng);
        if (w.strands > 1) {
            std::uniform_int_distribution<int> len(0, 10);
            std::uniform_int_distribution<int> gen(1, w.strands - 1);
            std::uniform_int_distribution<int> sign(0, 1);
            int L = len(rng);
            for (int i = 0; i < L; ++i) w.letters.push_back(sign(rng) ? gen(rng) : -gen(rng));
        }
        auto back = parse_braid(print_braid(w));
        CHECK(back == w);
    }
    CHECK(print_braid(parse_braid("B2: s1 s1 s1")) == "B2: s1^3");
    CHECK(print_braid(parse_braid("B3:")) == "B3:");
}

TEST_CASE("generator action on pairs") {
    auto d5 = dihedral_quandle(5);
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            auto out = act(parse_braid("B2: s1"), std::vector<int>{a, b}, d5);
            CHECK(out[0] == b);
            CHECK(out[1] == d5.op(a, b));

            // s1^3 (a,b) = (b*(a*b), (a*b)*(b*(a*b)))
            auto cube = act(parse_braid("B2: s1^3"), std::vector<int>{a, b}, d5);
            int ab = d5.op(a, b);
            int bab = d5.op(b, ab);
            CHECK(cube[0] == bab);
            CHECK(cube[1] == d5.op(ab, bab));

            // inverse generator: s1^-1 (a,b) = (b invop a, a)
            auto inv = act(parse_braid("B2: s1^-1"), std::vector<int>{a, b}, d5);
            CHECK(inv[0] == d5.inv_op(b, a));
            CHECK(inv[1] == a);
        }

    // worked instance over dihedral 3
    auto d3 = dihedral_quandle(3);
    auto inv01 = act(parse_braid("B2: s1^-1"), std::vector<int>{0, 1}, d3);
    CHECK(inv01 == std::vector<int>{2, 0});
    CHECK(act(parse_braid("B2: s1"), inv01, d3) == std::vector<int>{0, 1});

    // diagonal is fixed by every letter
    for (int a = 0; a < 3; ++a) {
        CHECK(act(parse_braid("B2: s1^-1"), std::vector<int>{a, a}, d3) ==
              std::vector<int>{a, a});
    }
}

TEST_CASE("inverse letters undo, exhaustively over dihedral 5") {
    auto d5 = dihedral_quandle(5);
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            std::vector<int> x{a, b};
            auto y = act(parse_braid("B2: s1^-1 s1"), x, d5);
            CHECK(y == x);
            auto z = act(parse_braid("B2: s1 s1^-1"), x, d5);
            CHECK(z == x);
        }
}

TEST_CASE("empty word acts as the identity") {
    auto d3 = dihedral_quandle(3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            std::vector<int> x{a, b};
            CHECK(act(BraidWord(2, {}), x, d3) == x);
        }
    CHECK_THROWS_AS(act(BraidWord(3, {}), std::vector<int>{0, 1}, d3), input_error);
}

TEST_CASE("braid relations hold as maps") {
    auto quandles = {dihedral_quandle(4), alexander_quandle(7, 3),
                     conjugation_quandle(symmetric_group(3))};
    for (const auto& q : quandles) {
        // s1 s2 s1 = s2 s1 s2 on Q^3, exhaustively
        auto lhs = parse_braid("B3: s1 s2 s1");
        auto rhs = parse_braid("B3: s2 s1 s2");
        for (int a = 0; a < q.size(); ++a)
            for (int b = 0; b < q.size(); ++b)
                for (int c = 0; c < q.size(); ++c) {
                    std::vector<int> x{a, b, c};
                    CHECK(act(lhs, x, q) == act(rhs, x, q));
                }
    }
    // far commutation s1 s3 = s3 s1 on Q^4
    auto d3 = dihedral_quandle(3);
    auto l = parse_braid("B4: s1 s3");
    auto r = parse_braid("B4: s3 s1");
    for (int v = 0; v < 81; ++v) {
        std::vector<int> x{v % 3, (v / 3) % 3, (v / 9) % 3, (v / 27) % 3};
        CHECK(act(l, x, d3) == act(r, x, d3));
    }
}

TEST_CASE("words compose as a right action") {
    auto q = conjugation_quandle(symmetric_group(3));
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> gen(1, 3);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_int_distribution<int> elem(0, q.size() - 1);
    for (int trial = 0; trial < 100; ++trial) {
        BraidWord v(4, {}), w(4, {});
        for (int i = 0; i < 4; ++i) {
            v.letters.push_back(sign(rng) ? gen(rng) : -gen(rng));
            w.letters.push_back(sign(rng) ? gen(rng) : -gen(rng));
        }
        BraidWord vw = v;
        vw.letters.insert(vw.letters.end(), w.letters.begin(), w.letters.end());
        std::vector<int> x{elem(rng), elem(rng), elem(rng), elem(rng)};
        CHECK(act(vw, x, q) == act(w, act(v, x, q), q));

        // reversed-negated letters invert the action
        CHECK(act(v.inverse(), act(v, x, q), q) == x);
    }
}

TEST_CASE("Markov moves produce the expected words") {
    auto w = parse_braid("B2: s1^-3");
    CHECK(print_braid(stabilize(w, +1)) == "B3: s1^-3 s2");
    CHECK(print_braid(stabilize(w, -1)) == "B3: s1^-3 s2^-1");
    CHECK_THROWS_AS(stabilize(w, 2), input_error);

    auto same = conjugate(w, BraidWord(2, {}));
    CHECK(same == w);
    auto c = conjugate(parse_braid("B2: s1"), parse_braid("B2: s1"));
    CHECK(c.letters == std::vector<int>{-1, 1, 1});  // not freely reduced
    CHECK_THROWS_AS(conjugate(w, parse_braid("B3: s1")), input_error);
}

TEST_CASE("disjoint sums shift the second word") {
    auto t = parse_braid("B2: s1^-3");
    auto h = parse_braid("B2: s1^2");
    auto sum = disjoint_sum_word(t, h);
    CHECK(sum.strands == 4);
    CHECK(sum.letters == std::vector<int>{-1, -1, -1, 3, 3});
}

TEST_CASE("closure component counts") {
    CHECK(closure_component_count(parse_braid("B2: s1^-3")) == 1);  // trefoil
    CHECK(closure_component_count(parse_braid("B2: s1^2")) == 2);   // Hopf link
    CHECK(closure_component_count(BraidWord(5, {})) == 5);          // trivial link
    CHECK(closure_component_count(parse_braid("B3: s1 s2^-1 s1 s2^-1")) == 1);
}

TEST_CASE("componentwise action commutes with the braid action") {
    auto q = dihedral_quandle(5);
    auto w = parse_braid("B3: s1 s2^-1 s1");
    for (int v = 0; v < 125; ++v) {
        std::vector<int> x{v % 5, (v / 5) % 5, (v / 25) % 5};
        for (int a = 0; a < 5; ++a)
            CHECK(act(w, q_action(x, a, q), q) == q_action(act(w, x, q), a, q));
    }
}
