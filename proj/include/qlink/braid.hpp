#pragma once

// Braid words in B_n and their right action on n-tuples of quandle
// elements. Letter +i is the elementary braid s_i, -i its inverse;
// words act left-to-right.

#include <cctype>
#include <concepts>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "qlink/quandle.hpp"

namespace qlink {

/// Anything that exposes a binary quandle operation and the inverse of
/// its right translations. Tables do it by lookup, geometric quandles
/// by closed-form isometries.
template <class Q>
concept QuandleOps = requires(const Q& q, const typename Q::element& a,
                              const typename Q::element& b) {
    { q.op(a, b) } -> std::convertible_to<typename Q::element>;
    { q.inv_op(a, b) } -> std::convertible_to<typename Q::element>;
};

/// A word in B_n. The empty letter list is the identity braid i_n;
/// the strand count is part of the value.
struct BraidWord {
    int strands = 1;
    std::vector<int> letters;

    BraidWord() = default;
    BraidWord(int strands_, std::vector<int> letters_)
        : strands(strands_), letters(std::move(letters_)) {
        validate();
    }

    void validate() const {
        if (strands < 1) throw input_error("braid needs at least one strand");
        for (int e : letters) {
            if (e == 0) throw input_error("braid letter 0 is not a generator");
            if (std::abs(e) > strands - 1)
                throw input_error("letter s" + std::to_string(std::abs(e)) +
                                  " out of range for B" + std::to_string(strands));
        }
    }

    bool operator==(const BraidWord&) const = default;

    /// Reversed word with negated letters (the group inverse).
    BraidWord inverse() const {
        BraidWord w;
        w.strands = strands;
        w.letters.assign(letters.rbegin(), letters.rend());
        for (int& e : w.letters) e = -e;
        return w;
    }
};

/// Parses "B3: s1 s2^-1 s1 s2^-1" (or bare signed integers like "1 -2").
/// Without a header the strand count is inferred as max|letter| + 1.
inline BraidWord parse_braid(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));

    auto parse_int = [](const std::string& s, const char* what) {
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(s, &pos);
        } catch (const std::exception&) {
            throw input_error(std::string("malformed ") + what + ": \"" + s + "\"");
        }
        if (pos != s.size())
            throw input_error(std::string("malformed ") + what + ": \"" + s + "\"");
        return static_cast<int>(v);
    };

    int explicit_strands = -1;
    std::size_t first = 0;
    if (!tokens.empty() && tokens[0].size() >= 2 && tokens[0][0] == 'B' &&
        tokens[0].back() == ':') {
        explicit_strands = parse_int(tokens[0].substr(1, tokens[0].size() - 2), "strand count");
        if (explicit_strands < 1) throw input_error("strand count must be positive");
        first = 1;
    }

    std::vector<int> letters;
    for (std::size_t i = first; i < tokens.size(); ++i) {
        const std::string& t = tokens[i];
        int index = 0, power = 1;
        if (t[0] == 's') {
            auto caret = t.find('^');
            if (caret == std::string::npos) {
                index = parse_int(t.substr(1), "generator index");
            } else {
                index = parse_int(t.substr(1, caret - 1), "generator index");
                power = parse_int(t.substr(caret + 1), "exponent");
            }
            if (index <= 0) throw input_error("generator index must be positive: \"" + t + "\"");
        } else {
            index = parse_int(t, "letter");
            if (index == 0) throw input_error("braid letter 0 is not a generator");
            if (index < 0) {
                index = -index;
                power = -1;
            }
        }
        int letter = power >= 0 ? index : -index;
        for (int k = 0; k < std::abs(power); ++k) letters.push_back(letter);
    }

    int strands = explicit_strands;
    if (strands < 0) {
        strands = 1;
        for (int e : letters) strands = std::max(strands, std::abs(e) + 1);
    }
    return BraidWord(strands, std::move(letters));
}

/// Prints in the header form with runs of equal letters collapsed into
/// exponents; round-trips through parse_braid.
inline std::string print_braid(const BraidWord& w) {
    std::string out = "B" + std::to_string(w.strands) + ":";
    std::size_t i = 0;
    while (i < w.letters.size()) {
        std::size_t j = i;
        while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
        int e = w.letters[i];
        long run = static_cast<long>(j - i);
        long power = (e > 0 ? run : -run);
        out += " s" + std::to_string(std::abs(e));
        if (power != 1) out += "^" + std::to_string(power);
        i = j;
    }
    return out;
}

/// Applies one generator in place: s_i sends (x_i, x_{i+1}) to
/// (x_{i+1}, x_i * x_{i+1}); s_i^-1 sends (y_i, y_{i+1}) to
/// (y_{i+1} invop y_i, y_i). Indices are 1-based.
template <QuandleOps Q>
void apply_letter(int letter, std::vector<typename Q::element>& x, const Q& q) {
    int i = std::abs(letter) - 1;
    if (letter > 0) {
        auto next = q.op(x[i], x[i + 1]);
        x[i] = std::move(x[i + 1]);
        x[i + 1] = std::move(next);
    } else {
        auto prev = q.inv_op(x[i + 1], x[i]);
        x[i + 1] = std::move(x[i]);
        x[i] = std::move(prev);
    }
}

/// The right action of a word on a tuple, letters applied left-to-right:
/// act(v.w, x) = act(w, act(v, x)).
template <QuandleOps Q>
std::vector<typename Q::element> act(const BraidWord& w,
                                     std::vector<typename Q::element> x, const Q& q) {
    if (static_cast<int>(x.size()) != w.strands)
        throw input_error("tuple length does not match strand count");
    for (int e : w.letters) apply_letter(e, x, q);
    return x;
}

/// Componentwise right translation (x_1,...,x_n)*a; commutes with the
/// braid action, so it maps fixed sets into themselves.
template <QuandleOps Q>
std::vector<typename Q::element> q_action(std::vector<typename Q::element> x,
                                          const typename Q::element& a, const Q& q) {
    for (auto& v : x) v = q.op(v, a);
    return x;
}

/// by^-1 . word . by, as plain letter concatenation (no free reduction).
inline BraidWord conjugate(const BraidWord& word, const BraidWord& by) {
    if (word.strands != by.strands)
        throw input_error("conjugation requires matching strand counts");
    BraidWord out;
    out.strands = word.strands;
    BraidWord byinv = by.inverse();
    out.letters = byinv.letters;
    out.letters.insert(out.letters.end(), word.letters.begin(), word.letters.end());
    out.letters.insert(out.letters.end(), by.letters.begin(), by.letters.end());
    return out;
}

/// Markov stabilization: embeds the word in B_{n+1} and appends s_n^(+-1).
inline BraidWord stabilize(const BraidWord& word, int sign) {
    if (sign != 1 && sign != -1) throw input_error("stabilization sign must be +-1");
    BraidWord out;
    out.strands = word.strands + 1;
    out.letters = word.letters;
    out.letters.push_back(sign * word.strands);
    return out;
}

/// Puts w2 on fresh strands after w1; the closure is the disjoint sum
/// of the two closures.
inline BraidWord disjoint_sum_word(const BraidWord& w1, const BraidWord& w2) {
    BraidWord out;
    out.strands = w1.strands + w2.strands;
    out.letters = w1.letters;
    for (int e : w2.letters)
        out.letters.push_back(e > 0 ? e + w1.strands : e - w1.strands);
    return out;
}

/// Number of components of the closed braid: cycles of the underlying
/// permutation of the word.
inline int closure_component_count(const BraidWord& w) {
    std::vector<int> perm(w.strands);
    std::iota(perm.begin(), perm.end(), 0);
    for (int e : w.letters) {
        int i = std::abs(e) - 1;
        std::swap(perm[i], perm[i + 1]);
    }
    std::vector<char> seen(w.strands, 0);
    int cycles = 0;
    for (int s = 0; s < w.strands; ++s) {
        if (seen[s]) continue;
        ++cycles;
        for (int t = s; !seen[t]; t = perm[t]) seen[t] = 1;
    }
    return cycles;
}

}  // namespace qlink
