#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "qlink/finite.hpp"

using namespace qlink;

namespace {

// Independent brute-force count: enumerate tuples and push them through
// the word with freshly written op logic (no shared enumeration code).
std::size_t oracle_count(const BraidWord& w, const QuandleTable& q) {
    std::size_t n = w.strands;
    std::vector<int> x(n, 0);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= q.size();
    std::size_t count = 0;
    for (std::size_t it = 0; it < total; ++it) {
        std::vector<int> y = x;
        for (int e : w.letters) {
            int i = std::abs(e) - 1;
            if (e > 0) {
                int top = q.op(y[i], y[i + 1]);
                y[i] = y[i + 1];
                y[i + 1] = top;
            } else {
                int low = q.inv_op(y[i + 1], y[i]);
                y[i + 1] = y[i];
                y[i] = low;
            }
        }
        if (y == x) ++count;
        for (int pos = static_cast<int>(n) - 1; pos >= 0; --pos) {
            if (++x[pos] < q.size()) break;
            x[pos] = 0;
        }
    }
    return count;
}

}  // namespace

TEST_CASE("fixed point counts for the standard links") {
    auto d3 = dihedral_quandle(3);
    auto d5 = dihedral_quandle(5);
    auto trefoil = parse_braid("B2: s1^-3");
    auto fig8 = parse_braid("B3: s1 s2^-1 s1 s2^-1");
    auto hopf = parse_braid("B2: s1^2");

    CHECK(fixed_points(trefoil, d3).count() == 9);
    CHECK(fixed_points(fig8, d3).count() == 3);
    CHECK(fixed_points(fig8, d5).count() == 25);
    CHECK(fixed_points(hopf, d3).count() == 3);

    // empty word in B_2: every pair is fixed
    CHECK(fixed_points(BraidWord(2, {}), d5).count() == 25);

    // unknot as empty B_1 over assorted quandles
    for (const auto& q : {d3, d5, conjugation_quandle(symmetric_group(3))})
        CHECK(fixed_points(BraidWord(1, {}), q).count() ==
              static_cast<std::size_t>(q.size()));
}

TEST_CASE("enumeration agrees with the independent oracle") {
    std::mt19937_64 rng(41);
    auto quandles = {dihedral_quandle(3), dihedral_quandle(4), alexander_quandle(5, 2),
                     conjugation_quandle(symmetric_group(3))};
    std::uniform_int_distribution<int> strands(2, 3);
    std::uniform_int_distribution<int> len(0, 6);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        BraidWord w;
        w.strands = strands(rng);
        std::uniform_int_distribution<int> gen(1, w.strands - 1);
        int L = len(rng);
        for (int i = 0; i < L; ++i) w.letters.push_back(sign(rng) ? gen(rng) : -gen(rng));
        for (const auto& q : quandles)
            CHECK(fixed_points(w, q).count() == oracle_count(w, q));
    }
}

TEST_CASE("fixed points are sorted, unique, and genuinely fixed") {
    auto d5 = dihedral_quandle(5);
    auto w = parse_braid("B3: s1 s2^-1 s1 s2^-1");
    auto fps = fixed_points(w, d5);
    for (std::size_t i = 0; i + 1 < fps.points.size(); ++i)
        CHECK(fps.points[i] < fps.points[i + 1]);
    for (const auto& p : fps.points) CHECK(act(w, p, d5) == p);
}

TEST_CASE("budget violations are reported with the requirement") {
    auto d5 = dihedral_quandle(5);
    try {
        fixed_points(parse_braid("B4: s1"), d5, 100);
        FAIL("expected budget_error");
    } catch (const budget_error& e) {
        CHECK(e.required == 625);
    }
}

TEST_CASE("Q-action maps the fixed set into itself") {
    auto d3 = dihedral_quandle(3);
    auto fps = fixed_points(parse_braid("B2: s1^-3"), d3);
    std::set<std::vector<int>> set(fps.points.begin(), fps.points.end());
    for (const auto& p : fps.points)
        for (int a = 0; a < 3; ++a) CHECK(set.count(q_action(p, a, d3)) == 1);

    // trivial quandle: the action is trivial
    auto triv = alexander_quandle(4, 1);
    CHECK(q_action(std::vector<int>{0, 1, 2}, 3, triv) == std::vector<int>{0, 1, 2});
}

TEST_CASE("diagonal tuples are fixed points of every word") {
    auto q = conjugation_quandle(symmetric_group(3));
    auto w = parse_braid("B3: s1 s2^-1 s2^-1 s1");
    for (int a = 0; a < q.size(); ++a) {
        std::vector<int> diag{a, a, a};
        CHECK(act(w, diag, q) == diag);
    }
}

TEST_CASE("disjoint sums multiply counts") {
    auto d3 = dihedral_quandle(3);
    auto trefoil = parse_braid("B2: s1^-3");
    auto hopf = parse_braid("B2: s1^2");
    auto unknot = BraidWord(1, {});

    CHECK(fixed_points(disjoint_sum_word(trefoil, trefoil), d3).count() == 81);
    CHECK(fixed_points(disjoint_sum_word(hopf, unknot), d3).count() == 9);
    CHECK(fixed_points(disjoint_sum_word(trefoil, unknot), d3).count() == 27);
}

TEST_CASE("group homomorphism counts match the braid-relation oracle") {
    auto trefoil = parse_braid("B2: s1^-3");
    for (int letters : {3, 4}) {
        auto g = symmetric_group(letters);
        std::size_t pairs = 0;
        for (int x = 0; x < g.size(); ++x)
            for (int y = 0; y < g.size(); ++y)
                if (g.mul(g.mul(x, y), x) == g.mul(g.mul(y, x), y)) ++pairs;
        CHECK(group_hom_count(trefoil, g) == pairs);
    }
    // unknot: every element of G gives a homomorphism of Z
    auto s3 = symmetric_group(3);
    CHECK(group_hom_count(BraidWord(1, {}), s3) == 6);
    // abelian G: only diagonal pairs survive the trefoil word
    CHECK(group_hom_count(trefoil, cyclic_group(7)) == 7);
}

TEST_CASE("closed braid diagrams") {
    auto tref = braid_closure_diagram(parse_braid("B2: s1^-3"));
    CHECK(tref.arcs == 3);
    CHECK(tref.crossings.size() == 3);

    auto unknot = braid_closure_diagram(BraidWord(1, {}));
    CHECK(unknot.arcs == 1);
    CHECK(unknot.crossings.empty());

    auto hopf = braid_closure_diagram(parse_braid("B2: s1^2"));
    CHECK(hopf.arcs == 2);
    CHECK(hopf.crossings.size() == 2);
}

TEST_CASE("diagram colourings match fixed point counts") {
    std::mt19937_64 rng(17);
    auto quandles = {dihedral_quandle(3), dihedral_quandle(5), alexander_quandle(5, 2),
                     conjugation_quandle(symmetric_group(3))};
    std::uniform_int_distribution<int> strands(2, 4);
    std::uniform_int_distribution<int> len(0, 7);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int trial = 0; trial < 15; ++trial) {
        BraidWord w;
        w.strands = strands(rng);
        std::uniform_int_distribution<int> gen(1, w.strands - 1);
        int L = len(rng);
        for (int i = 0; i < L; ++i) w.letters.push_back(sign(rng) ? gen(rng) : -gen(rng));
        auto code = braid_closure_diagram(w);
        for (const auto& q : quandles)
            CHECK(diagram_colourings(code, q).count == fixed_points(w, q).count());
    }
}

TEST_CASE("hand-entered diagrams") {
    // standard 2-arc Hopf diagram: b*a = b and a*b = a
    DiagramCode hopf;
    hopf.arcs = 2;
    hopf.crossings = {{0, 1, 1}, {1, 0, 0}};
    auto d3 = dihedral_quandle(3);
    CHECK(diagram_colourings(hopf, d3).count == 3);

    // single-arc unknot diagram: no relations
    DiagramCode unknot;
    unknot.arcs = 1;
    for (const auto& q : {dihedral_quandle(3), dihedral_quandle(7)})
        CHECK(diagram_colourings(unknot, q).count == static_cast<std::size_t>(q.size()));

    DiagramCode bad;
    bad.arcs = 2;
    bad.crossings = {{0, 1, 2}};
    CHECK_THROWS_AS(bad.validate(), input_error);
}

TEST_CASE("orientation reversal preserves counts on keis") {
    auto d3 = dihedral_quandle(3);
    auto d5 = dihedral_quandle(5);
    auto tref = braid_closure_diagram(parse_braid("B2: s1^-3"));
    auto fig8 = braid_closure_diagram(parse_braid("B3: s1 s2^-1 s1 s2^-1"));

    CHECK(diagram_colourings(tref, d3, kDefaultBudget, true).count == 9);
    CHECK(diagram_colourings(fig8, d5, kDefaultBudget, true).count == 25);

    // Trivial quandle: the crossing relation degenerates to right = left,
    // merging arcs along each component, so counts match the fixed-point
    // picture (|Q| per component) in both orientations.
    auto triv = alexander_quandle(3, 1);
    CHECK(diagram_colourings(tref, triv).count == 3);
    CHECK(diagram_colourings(tref, triv, kDefaultBudget, true).count == 3);
    auto hopf2 = braid_closure_diagram(parse_braid("B2: s1^2"));
    CHECK(diagram_colourings(hopf2, triv).count == 9);
    CHECK(diagram_colourings(hopf2, triv, kDefaultBudget, true).count == 9);
}

TEST_CASE("colouring listings are sorted assignments") {
    auto d3 = dihedral_quandle(3);
    auto tref = braid_closure_diagram(parse_braid("B2: s1^-3"));
    auto res = diagram_colourings(tref, d3, kDefaultBudget, false, true);
    REQUIRE(res.colourings.size() == 9);
    for (std::size_t i = 0; i + 1 < res.colourings.size(); ++i)
        CHECK(res.colourings[i] < res.colourings[i + 1]);
    for (const auto& col : res.colourings)
        for (const auto& c : tref.crossings)
            CHECK(col[c.right] == d3.op(col[c.left], col[c.over]));
}

TEST_CASE("Markov moves preserve counts and the stabilization bijection") {
    std::mt19937_64 rng(23);
    auto d5 = dihedral_quandle(5);
    std::uniform_int_distribution<int> len(0, 6);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int trial = 0; trial < 10; ++trial) {
        BraidWord w;
        w.strands = 3;
        std::uniform_int_distribution<int> gen(1, 2);
        int L = len(rng);
        for (int i = 0; i < L; ++i) w.letters.push_back(sign(rng) ? gen(rng) : -gen(rng));
        auto base = fixed_points(w, d5);

        BraidWord by;
        by.strands = 3;
        for (int i = 0; i < 3; ++i) by.letters.push_back(sign(rng) ? gen(rng) : -gen(rng));
        CHECK(fixed_points(conjugate(w, by), d5).count() == base.count());

        for (int s : {+1, -1}) {
            auto stab = fixed_points(stabilize(w, s), d5);
            CHECK(stab.count() == base.count());
            std::set<std::vector<int>> originals(base.points.begin(), base.points.end());
            for (const auto& p : stab.points) {
                CHECK(p[3] == p[2]);  // the new coordinate repeats the last
                std::vector<int> trunc(p.begin(), p.end() - 1);
                CHECK(originals.count(trunc) == 1);
            }
        }
    }
}

TEST_CASE("finite report shape") {
    auto d3 = dihedral_quandle(3);
    auto w = parse_braid("B2: s1^-3");
    auto fps = fixed_points(w, d3);
    auto j = finite_report(w, d3, fps, true);
    CHECK(j["count"] == 9);
    CHECK(j["orbit_sizes"] == json::array({3, 6}));
    CHECK(j["points"].size() == 9);
    CHECK(j["word"] == "B2: s1^-3");
}
