#pragma once

// Quandle selector strings, shared by the CLI and the test drivers:
//   dihedral:n | alexander:n:t | conj:<group>[:class=i] | table:<file>
//   sphere:d | csphere:m:q=<phase> | proj:m:q=<phase>
//   grass:m:k:q=<phase> | sl2[:radius]
// <group> is a builtin (s2..s6, cyclic:n, dihedralgrp:n) or a JSON file;
// <phase> is radians, with "pi" forms accepted ("pi/2", "2pi/3", "-pi").

#include <fstream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qlink/geom.hpp"
#include "qlink/quandle.hpp"

namespace qlink {

inline double parse_phase(const std::string& text) {
    std::string s = text;
    if (s.rfind("q=", 0) == 0) s = s.substr(2);
    if (s.empty()) throw input_error("empty phase");
    auto to_double = [](const std::string& t) {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(t, &pos);
        } catch (const std::exception&) {
            throw input_error("malformed phase: \"" + t + "\"");
        }
        if (pos != t.size()) throw input_error("malformed phase: \"" + t + "\"");
        return v;
    };
    auto pi_pos = s.find("pi");
    if (pi_pos == std::string::npos) return to_double(s);
    std::string pre = s.substr(0, pi_pos);
    std::string post = s.substr(pi_pos + 2);
    double factor = 1.0;
    if (pre == "-")
        factor = -1.0;
    else if (!pre.empty())
        factor = to_double(pre);
    double divisor = 1.0;
    if (!post.empty()) {
        if (post[0] != '/') throw input_error("malformed phase: \"" + text + "\"");
        divisor = to_double(post.substr(1));
        if (divisor == 0) throw input_error("phase divisor must be nonzero");
    }
    return factor * M_PI / divisor;
}

using AnyQuandle = std::variant<QuandleTable, SphereQuandle, CSphereQuandle, ProjQuandle,
                                GrassQuandle, SL2Quandle>;

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline int to_int(const std::string& s, const char* what) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw input_error(std::string("malformed ") + what + ": \"" + s + "\"");
    }
    if (pos != s.size()) throw input_error(std::string("malformed ") + what + ": \"" + s + "\"");
    return static_cast<int>(v);
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw input_error("cannot parse JSON in " + path + ": " + e.what());
    }
    return j;
}

inline GroupTable group_from_spec(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.size() == 1) {
        const std::string& g = parts[0];
        if (g.size() == 2 && g[0] == 's' && g[1] >= '2' && g[1] <= '6')
            return symmetric_group(g[1] - '0');
        return GroupTable::from_json(load_json_file(g), "group:" + g);
    }
    if (parts.size() == 2 && parts[0] == "cyclic") return cyclic_group(to_int(parts[1], "order"));
    if (parts.size() == 2 && parts[0] == "dihedralgrp")
        return dihedral_group(to_int(parts[1], "order"));
    throw input_error("unknown group spec: \"" + spec + "\"");
}

}  // namespace detail

inline AnyQuandle parse_quandle_selector(const std::string& selector) {
    auto parts = detail::split(selector, ':');
    const std::string& kind = parts[0];
    auto arity = [&](std::size_t lo, std::size_t hi) {
        if (parts.size() < lo + 1 || parts.size() > hi + 1)
            throw input_error("selector \"" + selector + "\" has the wrong number of fields");
    };
    if (kind == "dihedral") {
        arity(1, 1);
        return dihedral_quandle(detail::to_int(parts[1], "modulus"));
    }
    if (kind == "alexander") {
        arity(2, 2);
        return alexander_quandle(detail::to_int(parts[1], "modulus"),
                                 detail::to_int(parts[2], "parameter"));
    }
    if (kind == "conj") {
        if (parts.size() < 2) throw input_error("conj selector needs a group");
        std::optional<int> class_of;
        std::size_t end = parts.size();
        if (parts.back().rfind("class=", 0) == 0) {
            class_of = detail::to_int(parts.back().substr(6), "class element");
            --end;
        }
        std::string spec;
        for (std::size_t i = 1; i < end; ++i) {
            if (i > 1) spec += ':';
            spec += parts[i];
        }
        GroupTable g = detail::group_from_spec(spec);
        std::optional<std::vector<int>> subset;
        if (class_of) subset = g.conjugacy_class(*class_of);
        auto q = conjugation_quandle(g, subset);
        q.set_name("conj:" + spec + (class_of ? ":class=" + std::to_string(*class_of) : ""));
        return q;
    }
    if (kind == "table") {
        arity(1, 1);
        return QuandleTable::from_json(detail::load_json_file(parts[1]), selector);
    }
    if (kind == "sphere") {
        arity(1, 1);
        return SphereQuandle(detail::to_int(parts[1], "dimension"));
    }
    if (kind == "csphere") {
        arity(2, 2);
        return CSphereQuandle(detail::to_int(parts[1], "dimension"), parse_phase(parts[2]));
    }
    if (kind == "proj") {
        arity(2, 2);
        return ProjQuandle(detail::to_int(parts[1], "dimension"), parse_phase(parts[2]));
    }
    if (kind == "grass") {
        arity(3, 3);
        return GrassQuandle(detail::to_int(parts[1], "dimension"),
                            detail::to_int(parts[2], "subspace dimension"),
                            parse_phase(parts[3]));
    }
    if (kind == "sl2") {
        arity(0, 1);
        double radius = parts.size() == 2 ? std::stod(parts[1]) : 3.0;
        return SL2Quandle(radius);
    }
    throw input_error("unknown quandle selector: \"" + selector + "\"");
}

}  // namespace qlink
