#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scott/perm_group.hpp"

namespace scott {

inline constexpr uint32_t kMaxGroupDegree = 10000;

struct ParsedGroup {
    PermGroup group;
    std::optional<std::string> parent;  // header naming the ambient group, if any
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::invalid_argument at_line(size_t n, const std::string& msg) {
    return std::invalid_argument("line " + std::to_string(n) + ": " + msg);
}

inline uint64_t parse_uint(const std::string& s, size_t lineno, const char* what) {
    if (s.empty()) throw at_line(lineno, std::string(what) + " expects a number");
    uint64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw at_line(lineno, std::string(what) + " is not a number: '" + s + "'");
        v = v * 10 + static_cast<uint64_t>(c - '0');
        if (v > kMaxGroupDegree) break;  // cap check below reports it
    }
    return v;
}

}  // namespace detail

// Text format, one group per file:
//   parent <name>        optional, marks a subgroup file
//   degree <N>           required, before any gen line
//   gen <cycles>         zero or more; identity is written ()
// Blank lines and lines starting with # are skipped.
inline ParsedGroup parse_group_text(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    size_t lineno = 0;
    std::optional<std::string> parent;
    std::optional<uint32_t> degree;
    std::vector<Perm> gens;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        size_t sp = line.find_first_of(" \t");
        std::string key = line.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : detail::trim(line.substr(sp));
        if (key == "parent") {
            if (degree || !gens.empty())
                throw detail::at_line(lineno, "parent must come first");
            if (rest.empty()) throw detail::at_line(lineno, "parent needs a name");
            parent = rest;
        } else if (key == "degree") {
            if (degree) throw detail::at_line(lineno, "duplicate degree line");
            uint64_t n = detail::parse_uint(rest, lineno, "degree");
            if (n == 0) throw detail::at_line(lineno, "degree must be positive");
            if (n > kMaxGroupDegree)
                throw detail::at_line(lineno, "degree exceeds the cap of " +
                                                  std::to_string(kMaxGroupDegree));
            degree = static_cast<uint32_t>(n);
        } else if (key == "gen") {
            if (!degree) throw detail::at_line(lineno, "gen before the degree line");
            try {
                gens.push_back(Perm::parse_cycles(rest, *degree));
            } catch (const std::invalid_argument& e) {
                throw detail::at_line(lineno, e.what());
            }
        } else {
            throw detail::at_line(lineno, "unknown directive '" + key + "'");
        }
    }
    if (!degree) throw std::invalid_argument("missing degree line");
    return {PermGroup::make(*degree, std::move(gens)), std::move(parent)};
}

inline PermGroup parse_group(const std::string& text) {
    return parse_group_text(text).group;
}

inline std::string serialize_group(const PermGroup& g,
                                   const std::optional<std::string>& parent = {}) {
    std::string out;
    if (parent) out += "parent " + *parent + "\n";
    out += "degree " + std::to_string(g.degree()) + "\n";
    for (const Perm& x : g.generators()) out += "gen " + x.to_cycles() + "\n";
    return out;
}

inline ParsedGroup load_group_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open group file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_group_text(buf.str());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

}  // namespace scott
