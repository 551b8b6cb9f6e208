#pragma once

// Exact computation of the colouring invariant for finite quandles:
// fixed-point enumeration over Q^n, diagram colourings, and the
// structural operations used by the test suites.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qlink/braid.hpp"
#include "qlink/parallel.hpp"
#include "qlink/quandle.hpp"

namespace qlink {

/// Exact enumeration of the tuples fixed by a braid word acting on Q^n.
/// Points are lexicographically sorted and duplicate-free.
struct FixedPointSet {
    BraidWord word;
    std::string quandle;
    std::vector<std::vector<int>> points;

    std::size_t count() const { return points.size(); }
};

inline constexpr std::uint64_t kDefaultBudget = 100000000ull;  // candidate tuples

namespace detail {

// Saturates near the uint64 range; any such value exceeds every budget.
inline std::uint64_t checked_pow(std::uint64_t base, int exp) {
    const std::uint64_t cap = 1000000000000000000ull;
    std::uint64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && v > cap / base) return cap;
        v *= base;
    }
    return v;
}

}  // namespace detail

/// Enumerates {x in Q^n : word(x) = x}. Throws budget_error when |Q|^n
/// exceeds the candidate budget; the exception carries the required size.
inline FixedPointSet fixed_points(const BraidWord& word, const QuandleTable& q,
                                  std::uint64_t budget = kDefaultBudget) {
    const int n = word.strands;
    const int m = q.size();
    std::uint64_t total = detail::checked_pow(static_cast<std::uint64_t>(m), n);
    if (total > budget)
        throw budget_error("fixed_points: |Q|^n exceeds budget", total);

    FixedPointSet out;
    out.word = word;
    out.quandle = q.name();

    // Partitioned by first coordinate; blocks are concatenated in order,
    // which keeps the global list in lexicographic order.
    std::vector<std::vector<std::vector<int>>> blocks(m);
    std::uint64_t per_block = total / m;
    unsigned threads = per_block >= 100000 ? default_thread_count() : 1;
    parallel_for(
        static_cast<std::size_t>(m),
        [&](std::size_t first) {
            std::vector<int> x(n, 0);
            std::vector<int> y(n);
            x[0] = static_cast<int>(first);
            auto& found = blocks[first];
            for (std::uint64_t it = 0; it < per_block; ++it) {
                y = x;
                for (int e : word.letters) apply_letter(e, y, q);
                if (y == x) found.push_back(x);
                for (int pos = n - 1; pos >= 1; --pos) {
                    if (++x[pos] < m) break;
                    x[pos] = 0;
                }
            }
        },
        threads);
    for (auto& b : blocks)
        for (auto& p : b) out.points.push_back(std::move(p));
    return out;
}

/// Sizes of the orbits of the componentwise Q-action on the fixed set,
/// ascending. The action maps the set into itself; a lookup miss means
/// the input set was not closed and is reported as a logic error.
inline std::vector<std::size_t> orbit_sizes(const FixedPointSet& fps, const QuandleTable& q) {
    const auto& pts = fps.points;
    std::vector<std::size_t> parent(pts.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    auto locate = [&](const std::vector<int>& p) {
        auto it = std::lower_bound(pts.begin(), pts.end(), p);
        if (it == pts.end() || *it != p)
            throw std::logic_error("Q-action left the fixed-point set");
        return static_cast<std::size_t>(it - pts.begin());
    };
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (int a = 0; a < q.size(); ++a) {
            std::size_t j = locate(q_action(pts[i], a, q));
            std::size_t ri = find(i), rj = find(j);
            if (ri != rj) parent[ri] = rj;
        }
    std::map<std::size_t, std::size_t> sizes;
    for (std::size_t i = 0; i < pts.size(); ++i) ++sizes[find(i)];
    std::vector<std::size_t> out;
    for (auto& [root, sz] : sizes) out.push_back(sz);
    std::sort(out.begin(), out.end());
    return out;
}

/// Number of homomorphisms of the link group into G, computed as the
/// fixed-point count over the conjugation quandle of G.
inline std::size_t group_hom_count(const BraidWord& word, const GroupTable& g,
                                   std::uint64_t budget = kDefaultBudget) {
    return fixed_points(word, conjugation_quandle(g), budget).count();
}

// ---------------------------------------------------------------------------
// Link diagrams: arcs and crossing relations.
// ---------------------------------------------------------------------------

/// One crossing, identified by the roles of its three arcs: the directed
/// over-arc, the arc on its left, and the arc on its right. A colouring
/// must satisfy right = left * over.
///
/// Mapping from signed PD-style crossings (braids read bottom to top,
/// strands ordered left to right): at a positive elementary braid the
/// right strand passes over moving up-left, so `over` is the incoming
/// right arc, `left` the incoming left arc and `right` the outgoing
/// upper-right arc. At a negative crossing the left strand passes over
/// moving up-right; `over` is the incoming left arc, `right` the incoming
/// right arc and `left` the outgoing upper-left arc.
struct Crossing {
    int over = 0;
    int left = 0;
    int right = 0;
};

struct DiagramCode {
    int arcs = 0;
    std::vector<Crossing> crossings;

    void validate() const {
        if (arcs <= 0) throw input_error("diagram needs at least one arc");
        for (const auto& c : crossings)
            if (c.over < 0 || c.over >= arcs || c.left < 0 || c.left >= arcs ||
                c.right < 0 || c.right >= arcs)
                throw input_error("crossing arc id out of range");
    }

    json to_json() const {
        json j;
        j["arcs"] = arcs;
        json cs = json::array();
        for (const auto& c : crossings)
            cs.push_back(json{{"over", c.over}, {"left", c.left}, {"right", c.right}});
        j["crossings"] = std::move(cs);
        return j;
    }

    static DiagramCode from_json(const json& j) {
        DiagramCode d;
        if (!j.contains("arcs") || !j.contains("crossings"))
            throw input_error("diagram file needs \"arcs\" and \"crossings\"");
        d.arcs = j.at("arcs").get<int>();
        for (const auto& c : j.at("crossings"))
            d.crossings.push_back(Crossing{c.at("over").get<int>(), c.at("left").get<int>(),
                                           c.at("right").get<int>()});
        d.validate();
        return d;
    }
};

/// Closed-braid diagram of a word: one arc per strand start, one fresh
/// arc per crossing under-strand, top ends identified with bottom ends
/// by the closure.
inline DiagramCode braid_closure_diagram(const BraidWord& word) {
    int next_id = word.strands;
    std::vector<int> at(word.strands);
    for (int i = 0; i < word.strands; ++i) at[i] = i;
    struct RawCrossing {
        int over, left, right;
    };
    std::vector<RawCrossing> raw;
    for (int e : word.letters) {
        int i = std::abs(e) - 1;
        int fresh = next_id++;
        if (e > 0) {
            // right strand over: relation fresh = at[i] * at[i+1]
            raw.push_back({at[i + 1], at[i], fresh});
            at[i] = at[i + 1];
            at[i + 1] = fresh;
        } else {
            // left strand over: relation at[i+1] = fresh * at[i]
            raw.push_back({at[i], fresh, at[i + 1]});
            at[i + 1] = at[i];
            at[i] = fresh;
        }
    }
    // Closure: the top arc of strand j is the bottom arc j.
    std::vector<int> parent(next_id);
    for (int i = 0; i < next_id; ++i) parent[i] = i;
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int j = 0; j < word.strands; ++j) {
        int a = find(at[j]), b = find(j);
        if (a != b) parent[a] = b;
    }
    std::vector<int> compact(next_id, -1);
    int arcs = 0;
    for (int i = 0; i < next_id; ++i) {
        int r = find(i);
        if (compact[r] < 0) compact[r] = arcs++;
    }
    DiagramCode d;
    d.arcs = arcs;
    for (const auto& rc : raw)
        d.crossings.push_back(
            Crossing{compact[find(rc.over)], compact[find(rc.left)], compact[find(rc.right)]});
    d.validate();
    return d;
}

/// All colourings of a diagram by a finite quandle: assignments of arcs
/// to elements with right = left * over at every crossing (or the
/// orientation-reversed relation left = right * over when `reversed`).
struct ColouringSet {
    std::size_t count = 0;
    std::vector<std::vector<int>> colourings;  // filled only when requested
};

inline ColouringSet diagram_colourings(const DiagramCode& code, const QuandleTable& q,
                                       std::uint64_t budget = kDefaultBudget,
                                       bool reversed = false, bool keep = false) {
    code.validate();
    std::uint64_t worst = detail::checked_pow(static_cast<std::uint64_t>(q.size()), code.arcs);

    std::vector<std::vector<int>> incident(code.arcs);
    for (std::size_t ci = 0; ci < code.crossings.size(); ++ci) {
        const auto& c = code.crossings[ci];
        for (int arc : {c.over, c.left, c.right}) {
            auto& v = incident[arc];
            if (v.empty() || v.back() != static_cast<int>(ci)) v.push_back(static_cast<int>(ci));
        }
    }

    std::vector<int> value(code.arcs, -1);
    std::vector<int> trail;
    std::uint64_t nodes = 0;
    ColouringSet out;

    // The "determined" role is `right` in normal orientation and `left`
    // in the reversed one; the other under-arc is recovered via inv_op.
    auto src = [&](const Crossing& c) { return reversed ? c.right : c.left; };
    auto dst = [&](const Crossing& c) { return reversed ? c.left : c.right; };

    std::vector<int> queue;
    auto assign = [&](int arc, int v) {
        value[arc] = v;
        trail.push_back(arc);
        for (int ci : incident[arc]) queue.push_back(ci);
    };
    auto propagate = [&]() -> bool {
        while (!queue.empty()) {
            int ci = queue.back();
            queue.pop_back();
            const auto& c = code.crossings[ci];
            int o = value[c.over];
            if (o < 0) continue;
            int s = value[src(c)], d = value[dst(c)];
            if (s >= 0) {
                int want = q.op(s, o);
                if (d < 0)
                    assign(dst(c), want);
                else if (d != want)
                    return false;
            } else if (d >= 0) {
                assign(src(c), q.inv_op(d, o));
            }
        }
        return true;
    };

    auto record = [&]() {
        ++out.count;
        if (keep) out.colourings.push_back(value);
    };

    // Iterative DFS over the first unassigned arc.
    struct Frame {
        int arc;
        int next_value;
        std::size_t trail_mark;
    };
    std::vector<Frame> stack;
    auto first_unassigned = [&]() {
        for (int a = 0; a < code.arcs; ++a)
            if (value[a] < 0) return a;
        return -1;
    };

    int a0 = first_unassigned();
    if (a0 < 0) {
        record();
        return out;
    }
    stack.push_back({a0, 0, trail.size()});
    while (!stack.empty()) {
        Frame& f = stack.back();
        while (trail.size() > f.trail_mark) {
            value[trail.back()] = -1;
            trail.pop_back();
        }
        queue.clear();
        if (f.next_value >= q.size()) {
            stack.pop_back();
            continue;
        }
        int v = f.next_value++;
        if (++nodes > budget)
            throw budget_error("diagram_colourings: search exceeds budget", worst);
        assign(f.arc, v);
        if (propagate()) {
            int arc = first_unassigned();
            if (arc < 0)
                record();
            else
                stack.push_back({arc, 0, trail.size()});
        }
    }
    return out;
}

/// JSON report for an exact finite computation.
inline json finite_report(const BraidWord& word, const QuandleTable& q,
                          const FixedPointSet& fps, bool include_points) {
    json j;
    j["word"] = print_braid(word);
    j["quandle"] = q.name();
    j["count"] = fps.count();
    j["orbit_sizes"] = orbit_sizes(fps, q);
    if (include_points) j["points"] = fps.points;
    return j;
}

}  // namespace qlink
