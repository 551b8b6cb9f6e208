#pragma once

// Finite quandles as Cayley tables, plus the classical constructions
// (dihedral, Alexander, conjugation, anti-Alexander) and axiom checking.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qlink {

using json = nlohmann::ordered_json;

/// Thrown on malformed input (bad grammar, precondition violations).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an enumeration would exceed its candidate budget.
struct budget_error : std::runtime_error {
    std::uint64_t required;
    budget_error(const std::string& msg, std::uint64_t required_)
        : std::runtime_error(msg), required(required_) {}
};

enum class QuandleAxiom { idempotence, right_bijectivity, self_distributivity };

inline const char* axiom_name(QuandleAxiom a) {
    switch (a) {
        case QuandleAxiom::idempotence: return "idempotence";
        case QuandleAxiom::right_bijectivity: return "right_bijectivity";
        default: return "self_distributivity";
    }
}

/// Result of an axiom check. `witness` holds the first counterexample
/// (a,b) or (a,b,c); `sampled` is set when the check was not exhaustive.
struct AxiomReport {
    bool pass = true;
    bool sampled = false;
    std::optional<QuandleAxiom> failed_axiom;
    int witness[3] = {-1, -1, -1};

    json to_json() const {
        json j;
        j["pass"] = pass;
        j["sampled"] = sampled;
        if (failed_axiom) {
            j["failed_axiom"] = axiom_name(*failed_axiom);
            j["witness"] = json::array();
            for (int w : witness)
                if (w >= 0) j["witness"].push_back(w);
        }
        return j;
    }
};

/// A finite quandle given by its Cayley table. op(a,b) encodes a*b and
/// inv_op(c,b) the unique a with a*b = c. Immutable after construction;
/// safe to share across threads.
class QuandleTable {
  public:
    using element = int;

    QuandleTable() = default;

    /// Builds from a row-major size x size table; verifies the quandle
    /// axioms and precomputes the inverse translations.
    QuandleTable(int size, std::vector<int> op, std::string name = "table")
        : n_(size), op_(std::move(op)), name_(std::move(name)) {
        if (n_ <= 0) throw input_error("quandle size must be positive");
        if (op_.size() != static_cast<std::size_t>(n_) * n_)
            throw input_error("quandle table has wrong shape");
        for (int v : op_)
            if (v < 0 || v >= n_) throw input_error("quandle table entry out of range");
        report_ = check_axioms();
        if (!report_.pass)
            throw input_error("table is not a quandle: " +
                              std::string(axiom_name(*report_.failed_axiom)) + " fails");
        build_inverse();
    }

    int size() const { return n_; }
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    int op(int a, int b) const { return op_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv_op(int c, int b) const { return inv_[static_cast<std::size_t>(c) * n_ + b]; }

    /// Axiom report captured at construction time.
    const AxiomReport& axiom_report() const { return report_; }

    json to_json() const {
        json j;
        j["size"] = n_;
        json rows = json::array();
        for (int a = 0; a < n_; ++a) {
            json row = json::array();
            for (int b = 0; b < n_; ++b) row.push_back(op(a, b));
            rows.push_back(std::move(row));
        }
        j["op"] = std::move(rows);
        return j;
    }

    static QuandleTable from_json(const json& j, std::string name = "table") {
        if (!j.contains("size") || !j.contains("op"))
            throw input_error("quandle file needs \"size\" and \"op\"");
        int n = j.at("size").get<int>();
        const auto& rows = j.at("op");
        if (!rows.is_array() || static_cast<int>(rows.size()) != n)
            throw input_error("quandle \"op\" must be a size x size array");
        std::vector<int> flat;
        flat.reserve(static_cast<std::size_t>(n) * n);
        for (const auto& row : rows) {
            if (!row.is_array() || static_cast<int>(row.size()) != n)
                throw input_error("quandle \"op\" must be a size x size array");
            for (const auto& v : row) flat.push_back(v.get<int>());
        }
        return QuandleTable(n, std::move(flat), std::move(name));
    }

  private:
    // Exhaustive up to size 256; sampled (1e6 random triples) above, with
    // the sampled flag set so reports can surface the weaker guarantee.
    static constexpr int kExhaustiveLimit = 256;

    AxiomReport check_axioms() const {
        AxiomReport rep;
        for (int a = 0; a < n_; ++a) {
            if (op(a, a) != a) {
                rep.pass = false;
                rep.failed_axiom = QuandleAxiom::idempotence;
                rep.witness[0] = a;
                return rep;
            }
        }
        std::vector<char> seen(n_);
        for (int b = 0; b < n_; ++b) {
            std::fill(seen.begin(), seen.end(), 0);
            for (int a = 0; a < n_; ++a) {
                int c = op(a, b);
                if (seen[c]) {
                    rep.pass = false;
                    rep.failed_axiom = QuandleAxiom::right_bijectivity;
                    rep.witness[0] = a;
                    rep.witness[1] = b;
                    return rep;
                }
                seen[c] = 1;
            }
        }
        auto distributive = [&](int a, int b, int c) {
            return op(op(a, b), c) == op(op(a, c), op(b, c));
        };
        if (n_ <= kExhaustiveLimit) {
            for (int a = 0; a < n_; ++a)
                for (int b = 0; b < n_; ++b)
                    for (int c = 0; c < n_; ++c)
                        if (!distributive(a, b, c)) {
                            rep.pass = false;
                            rep.failed_axiom = QuandleAxiom::self_distributivity;
                            rep.witness[0] = a;
                            rep.witness[1] = b;
                            rep.witness[2] = c;
                            return rep;
                        }
        } else {
            rep.sampled = true;
            std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
            std::uniform_int_distribution<int> pick(0, n_ - 1);
            for (int i = 0; i < 1000000; ++i) {
                int a = pick(rng), b = pick(rng), c = pick(rng);
                if (!distributive(a, b, c)) {
                    rep.pass = false;
                    rep.failed_axiom = QuandleAxiom::self_distributivity;
                    rep.witness[0] = a;
                    rep.witness[1] = b;
                    rep.witness[2] = c;
                    return rep;
                }
            }
        }
        return rep;
    }

    void build_inverse() {
        inv_.assign(static_cast<std::size_t>(n_) * n_, 0);
        for (int b = 0; b < n_; ++b)
            for (int a = 0; a < n_; ++a)
                inv_[static_cast<std::size_t>(op(a, b)) * n_ + b] = a;
    }

    int n_ = 0;
    std::vector<int> op_;
    std::vector<int> inv_;
    std::string name_;
    AxiomReport report_;
};

/// Re-checks the axioms of an already-built table (the constructor has
/// done it once; this is the public entry point for loaded data).
inline AxiomReport verify_axioms(const QuandleTable& q) { return q.axiom_report(); }

/// True iff every right translation is an involution: (b*a)*a = b.
inline bool is_kei(const QuandleTable& q) {
    for (int a = 0; a < q.size(); ++a)
        for (int b = 0; b < q.size(); ++b)
            if (q.op(q.op(b, a), a) != b) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Finite groups (Cayley tables), used to build conjugation-type quandles.
// ---------------------------------------------------------------------------

/// A finite group as a multiplication table. Group axioms are checked
/// exhaustively at construction. Immutable afterwards.
class GroupTable {
  public:
    GroupTable(int size, std::vector<int> mul, std::string name = "group")
        : n_(size), mul_(std::move(mul)), name_(std::move(name)) {
        if (n_ <= 0) throw input_error("group size must be positive");
        if (mul_.size() != static_cast<std::size_t>(n_) * n_)
            throw input_error("group table has wrong shape");
        for (int v : mul_)
            if (v < 0 || v >= n_) throw input_error("group table entry out of range");
        check_axioms();
    }

    int size() const { return n_; }
    const std::string& name() const { return name_; }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * n_ + b]; }
    int inverse(int a) const { return inv_[a]; }
    int identity() const { return id_; }

    /// Indices of the conjugacy class containing `g`, ascending.
    std::vector<int> conjugacy_class(int g) const {
        if (g < 0 || g >= n_) throw input_error("element index out of range");
        std::vector<char> in(n_, 0);
        for (int h = 0; h < n_; ++h) in[conj(g, h)] = 1;
        std::vector<int> cls;
        for (int x = 0; x < n_; ++x)
            if (in[x]) cls.push_back(x);
        return cls;
    }

    /// g conjugated by h: h^-1 g h.
    int conj(int g, int h) const { return mul(mul(inverse(h), g), h); }

    json to_json() const {
        json j;
        j["size"] = n_;
        json rows = json::array();
        for (int a = 0; a < n_; ++a) {
            json row = json::array();
            for (int b = 0; b < n_; ++b) row.push_back(mul(a, b));
            rows.push_back(std::move(row));
        }
        j["mul"] = std::move(rows);
        j["inverse"] = inv_;
        j["identity"] = id_;
        return j;
    }

    static GroupTable from_json(const json& j, std::string name = "group") {
        if (!j.contains("mul")) throw input_error("group file needs \"mul\"");
        const auto& rows = j.at("mul");
        int n = j.contains("size") ? j.at("size").get<int>() : static_cast<int>(rows.size());
        if (!rows.is_array() || static_cast<int>(rows.size()) != n)
            throw input_error("group \"mul\" must be a size x size array");
        std::vector<int> flat;
        flat.reserve(static_cast<std::size_t>(n) * n);
        for (const auto& row : rows) {
            if (!row.is_array() || static_cast<int>(row.size()) != n)
                throw input_error("group \"mul\" must be a size x size array");
            for (const auto& v : row) flat.push_back(v.get<int>());
        }
        GroupTable g(n, std::move(flat), std::move(name));
        // "inverse" and "identity" are recomputed; if present they are checked.
        if (j.contains("identity") && j.at("identity").get<int>() != g.identity())
            throw input_error("group file identity disagrees with the table");
        if (j.contains("inverse")) {
            auto inv = j.at("inverse").get<std::vector<int>>();
            if (inv != g.inv_) throw input_error("group file inverses disagree with the table");
        }
        return g;
    }

  private:
    void check_axioms() {
        id_ = -1;
        for (int e = 0; e < n_; ++e) {
            bool ok = true;
            for (int a = 0; a < n_; ++a)
                if (mul(e, a) != a || mul(a, e) != a) {
                    ok = false;
                    break;
                }
            if (ok) {
                id_ = e;
                break;
            }
        }
        if (id_ < 0) throw input_error("group table has no identity");
        inv_.assign(n_, -1);
        for (int a = 0; a < n_; ++a) {
            for (int b = 0; b < n_; ++b)
                if (mul(a, b) == id_ && mul(b, a) == id_) {
                    inv_[a] = b;
                    break;
                }
            if (inv_[a] < 0) throw input_error("group table element without inverse");
        }
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                for (int c = 0; c < n_; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw input_error("group table is not associative");
    }

    int n_ = 0;
    std::vector<int> mul_;
    std::vector<int> inv_;
    int id_ = 0;
    std::string name_;
};

/// Z/n with addition. Elements are residues 0..n-1.
inline GroupTable cyclic_group(int n) {
    if (n <= 0) throw input_error("cyclic group order must be positive");
    std::vector<int> mul(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mul[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
    return GroupTable(n, std::move(mul), "cyclic:" + std::to_string(n));
}

namespace detail {

inline std::vector<std::vector<int>> all_permutations(int k) {
    std::vector<int> p(k);
    for (int i = 0; i < k; ++i) p[i] = i;
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace detail

/// Symmetric group on k letters. Elements are permutations in lexicographic
/// order of their one-line notation, composed left-to-right:
/// (p*q)(i) = q(p(i)).
inline GroupTable symmetric_group(int k) {
    if (k <= 0 || k > 6) throw input_error("symmetric_group supports 1..6 letters");
    auto perms = detail::all_permutations(k);
    int n = static_cast<int>(perms.size());
    auto index_of = [&](const std::vector<int>& p) {
        return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), p) - perms.begin());
    };
    std::vector<int> mul(static_cast<std::size_t>(n) * n);
    std::vector<int> comp(k);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            for (int i = 0; i < k; ++i) comp[i] = perms[b][perms[a][i]];
            mul[static_cast<std::size_t>(a) * n + b] = index_of(comp);
        }
    return GroupTable(n, std::move(mul), "sym:" + std::to_string(k));
}

/// Dihedral group of order 2n: elements 0..n-1 are rotations r^i,
/// n..2n-1 are reflections s r^i.
inline GroupTable dihedral_group(int n) {
    if (n <= 0) throw input_error("dihedral group parameter must be positive");
    int sz = 2 * n;
    auto enc = [&](bool flip, int rot) { return (flip ? n : 0) + rot; };
    std::vector<int> mul(static_cast<std::size_t>(sz) * sz);
    for (int a = 0; a < sz; ++a)
        for (int b = 0; b < sz; ++b) {
            bool fa = a >= n, fb = b >= n;
            int ra = a % n, rb = b % n;
            // (s^fa r^ra)(s^fb r^rb) = s^(fa+fb) r^(rb +/- ra)
            int rot = fb ? ((rb - ra) % n + n) % n : (ra + rb) % n;
            mul[static_cast<std::size_t>(a) * sz + b] = enc(fa != fb, rot);
        }
    return GroupTable(sz, std::move(mul), "dihedralgrp:" + std::to_string(n));
}

// ---------------------------------------------------------------------------
// Quandle constructors.
// ---------------------------------------------------------------------------

/// Z/n with a*b = 2b - a (the n-colouring quandle).
inline QuandleTable dihedral_quandle(int n) {
    if (n <= 0) throw input_error("dihedral quandle needs n >= 1");
    std::vector<int> op(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            op[static_cast<std::size_t>(a) * n + b] = ((2 * b - a) % n + n) % n;
    return QuandleTable(n, std::move(op), "dihedral:" + std::to_string(n));
}

/// Z/n with h*g = t*h + (1-t)*g for a unit t mod n.
inline QuandleTable alexander_quandle(int n, int t) {
    if (n <= 0) throw input_error("alexander quandle needs n >= 1");
    t = ((t % n) + n) % n;
    if (std::gcd(t, n) != 1) throw input_error("alexander parameter t must be a unit mod n");
    std::vector<int> op(static_cast<std::size_t>(n) * n);
    for (int h = 0; h < n; ++h)
        for (int g = 0; g < n; ++g)
            op[static_cast<std::size_t>(h) * n + g] = ((t * h + (1 - t) * g) % n + n) % n;
    return QuandleTable(n, std::move(op), "alexander:" + std::to_string(n) + ":" + std::to_string(t));
}

/// Conjugation quandle h*g = g^-1 h g, over the whole group or over a
/// conjugation-closed subset (a union of conjugacy classes). Subset
/// elements keep their ascending parent order.
inline QuandleTable conjugation_quandle(const GroupTable& g,
                                        std::optional<std::vector<int>> subset = std::nullopt,
                                        std::string name = "") {
    std::vector<int> elems;
    if (subset) {
        elems = *subset;
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        if (elems.empty()) throw input_error("conjugation subset is empty");
        for (int x : elems)
            if (x < 0 || x >= g.size()) throw input_error("subset element out of range");
        std::vector<char> in(g.size(), 0);
        for (int x : elems) in[x] = 1;
        for (int x : elems)
            for (int h = 0; h < g.size(); ++h)
                if (!in[g.conj(x, h)])
                    throw input_error("subset is not closed under conjugation");
    } else {
        elems.resize(g.size());
        for (int i = 0; i < g.size(); ++i) elems[i] = i;
    }
    std::vector<int> pos(g.size(), -1);
    for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);
    int n = static_cast<int>(elems.size());
    std::vector<int> op(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            op[static_cast<std::size_t>(a) * n + b] = pos[g.conj(elems[a], elems[b])];
    if (name.empty()) name = "conj:" + g.name() + (subset ? ":subset" : "");
    return QuandleTable(n, std::move(op), std::move(name));
}

/// Anti-Alexander quandle h*g = tau(g) tau(h)^-1 g for an anti-automorphism
/// tau (checked exhaustively: tau(xy) = tau(y)tau(x) and tau bijective).
inline QuandleTable anti_alexander_quandle(const GroupTable& g, const std::vector<int>& tau) {
    if (static_cast<int>(tau.size()) != g.size())
        throw input_error("tau must be defined on every group element");
    std::vector<char> seen(g.size(), 0);
    for (int v : tau) {
        if (v < 0 || v >= g.size() || seen[v]) throw input_error("tau is not a bijection");
        seen[v] = 1;
    }
    for (int x = 0; x < g.size(); ++x)
        for (int y = 0; y < g.size(); ++y)
            if (tau[g.mul(x, y)] != g.mul(tau[y], tau[x]))
                throw input_error("tau is not an anti-automorphism");
    int n = g.size();
    std::vector<int> op(static_cast<std::size_t>(n) * n);
    for (int h = 0; h < n; ++h)
        for (int gg = 0; gg < n; ++gg)
            op[static_cast<std::size_t>(h) * n + gg] =
                g.mul(g.mul(tau[gg], g.inverse(tau[h])), gg);
    return QuandleTable(n, std::move(op), "anti_alexander:" + g.name());
}

}  // namespace qlink
