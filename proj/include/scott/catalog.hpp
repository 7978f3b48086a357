#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "scott/group_io.hpp"
#include "scott/group_ops.hpp"

namespace scott {

inline bool is_small_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace detail {

// Right translations x -> x * g of an abstract multiplication on {0..n-1}.
// With left-to-right composition, g -> rho_g is a homomorphism, and the
// realization is the regular one.
template <class Mul>
PermGroup regular_from(uint32_t n, const std::vector<uint32_t>& gens, Mul&& mul) {
    std::vector<Perm> ps;
    ps.reserve(gens.size());
    for (uint32_t g : gens) {
        std::vector<uint32_t> img(n);
        for (uint32_t x = 0; x < n; ++x) img[x] = mul(x, g);
        ps.emplace_back(std::move(img));
    }
    return PermGroup::make(n, std::move(ps));
}

inline void check_order(const PermGroup& g, const BigInt& expect, const char* name) {
    if (g.order() != expect)
        throw std::logic_error(std::string("catalog: order self-check failed for ") + name);
}

inline uint64_t checked_pow(uint64_t base, uint32_t exp, const char* name) {
    uint64_t v = 1;
    for (uint32_t i = 0; i < exp; ++i) {
        v *= base;
        if (v > kMaxGroupDegree)
            throw std::invalid_argument(std::string(name) + ": order exceeds the degree cap");
    }
    return v;
}

inline BigInt factorial(uint64_t n) {
    BigInt f = 1;
    for (uint64_t i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace detail

inline PermGroup cyclic_group(uint64_t n) {
    if (n == 0 || n > kMaxGroupDegree)
        throw std::invalid_argument("cyclic: parameter out of range");
    uint32_t m = static_cast<uint32_t>(n);
    std::vector<uint32_t> img(m);
    for (uint32_t i = 0; i < m; ++i) img[i] = (i + 1) % m;
    PermGroup g = PermGroup::make(m, {Perm(std::move(img))});
    detail::check_order(g, n, "cyclic");
    return g;
}

// The parameter is the group order 2n; the action is on the n polygon
// vertices.
inline PermGroup dihedral_group(uint64_t order) {
    if (order % 2 != 0 || order < 6 || order > 2 * uint64_t(kMaxGroupDegree))
        throw std::invalid_argument("dihedral: order must be even and at least 6");
    uint32_t n = static_cast<uint32_t>(order / 2);
    std::vector<uint32_t> rot(n), rev(n);
    for (uint32_t i = 0; i < n; ++i) {
        rot[i] = (i + 1) % n;
        rev[i] = n - 1 - i;
    }
    PermGroup g = PermGroup::make(n, {Perm(std::move(rot)), Perm(std::move(rev))});
    detail::check_order(g, order, "dihedral");
    return g;
}

inline PermGroup symmetric_group(uint64_t n) {
    if (n == 0 || n > kMaxGroupDegree)
        throw std::invalid_argument("symmetric: parameter out of range");
    uint32_t m = static_cast<uint32_t>(n);
    std::vector<Perm> gens;
    if (m >= 2) {
        std::vector<uint32_t> cyc(m), swp(m);
        std::iota(swp.begin(), swp.end(), 0u);
        for (uint32_t i = 0; i < m; ++i) cyc[i] = (i + 1) % m;
        swp[0] = 1;
        swp[1] = 0;
        gens.emplace_back(std::move(cyc));
        if (m > 2) gens.emplace_back(std::move(swp));
    }
    PermGroup g = PermGroup::make(m, std::move(gens));
    detail::check_order(g, detail::factorial(n), "symmetric");
    return g;
}

inline PermGroup alternating_group(uint64_t n) {
    if (n < 3 || n > kMaxGroupDegree)
        throw std::invalid_argument("alternating: parameter must be at least 3");
    uint32_t m = static_cast<uint32_t>(n);
    std::vector<uint32_t> tri(m);
    std::iota(tri.begin(), tri.end(), 0u);
    tri[0] = 1;
    tri[1] = 2;
    tri[2] = 0;
    std::vector<Perm> gens{Perm(std::move(tri))};
    if (m > 3) {
        std::vector<uint32_t> cyc(m);
        if (m % 2 == 1) {
            for (uint32_t i = 0; i < m; ++i) cyc[i] = (i + 1) % m;
        } else {
            // an (m-1)-cycle on the points past the first, which is even
            cyc[0] = 0;
            for (uint32_t i = 1; i < m; ++i) cyc[i] = i == m - 1 ? 1 : i + 1;
        }
        gens.emplace_back(std::move(cyc));
    }
    PermGroup g = PermGroup::make(m, std::move(gens));
    detail::check_order(g, detail::factorial(n) / 2, "alternating");
    return g;
}

inline PermGroup elemabelian_group(uint64_t p, uint32_t k) {
    if (!is_small_prime(p) || k == 0)
        throw std::invalid_argument("elemabelian: needs a prime and a positive rank");
    uint64_t n = detail::checked_pow(p, k, "elemabelian");
    std::vector<uint32_t> gens(k);
    uint64_t pw = 1;
    for (uint32_t i = 0; i < k; ++i, pw *= p) gens[i] = static_cast<uint32_t>(pw);
    // digitwise addition base p
    auto mul = [p, k](uint32_t x, uint32_t y) {
        uint32_t out = 0, pw2 = 1;
        for (uint32_t i = 0; i < k; ++i, pw2 *= static_cast<uint32_t>(p)) {
            uint32_t dx = (x / pw2) % static_cast<uint32_t>(p);
            uint32_t dy = (y / pw2) % static_cast<uint32_t>(p);
            out += ((dx + dy) % static_cast<uint32_t>(p)) * pw2;
        }
        return out;
    };
    PermGroup g = detail::regular_from(static_cast<uint32_t>(n), gens, mul);
    detail::check_order(g, n, "elemabelian");
    return g;
}

// Order p^3, exponent p for odd p: triples with an upper-triangular product.
inline PermGroup heisenberg_group(uint64_t p) {
    if (!is_small_prime(p) || p == 2)
        throw std::invalid_argument("heisenberg: needs an odd prime");
    uint64_t n = detail::checked_pow(p, 3, "heisenberg");
    uint32_t up = static_cast<uint32_t>(p);
    auto mul = [up](uint32_t x, uint32_t y) {
        uint32_t ax = x % up, bx = (x / up) % up, cx = x / (up * up);
        uint32_t ay = y % up, by = (y / up) % up, cy = y / (up * up);
        uint32_t a = (ax + ay) % up;
        uint32_t b = (bx + by) % up;
        uint32_t c = (cx + cy + ax * by) % up;
        return a + up * b + up * up * c;
    };
    PermGroup g = detail::regular_from(static_cast<uint32_t>(n), {1u, up}, mul);
    detail::check_order(g, n, "heisenberg");
    return g;
}

// C_{p^n} extended by the order-p automorphism a -> a^{1+p^{n-1}}; order
// p^{n+1}.
inline PermGroup modular_group(uint64_t p, uint32_t n) {
    if (!is_small_prime(p) || n < 2)
        throw std::invalid_argument("modular: needs a prime and an exponent of at least 2");
    uint64_t total = detail::checked_pow(p, n + 1, "modular");
    uint32_t pn = static_cast<uint32_t>(total / p);
    uint32_t up = static_cast<uint32_t>(p);
    uint32_t t = 1 + pn / up;  // 1 + p^{n-1}
    std::vector<uint32_t> tpow(up);
    tpow[0] = 1;
    for (uint32_t j = 1; j < up; ++j)
        tpow[j] = static_cast<uint32_t>((uint64_t(tpow[j - 1]) * t) % pn);
    auto mul = [up, pn, &tpow](uint32_t x, uint32_t y) {
        uint32_t ix = x % pn, jx = x / pn;
        uint32_t iy = y % pn, jy = y / pn;
        uint32_t i = static_cast<uint32_t>((ix + uint64_t(iy) * tpow[jx]) % pn);
        uint32_t j = (jx + jy) % up;
        return i + pn * j;
    };
    PermGroup g = detail::regular_from(static_cast<uint32_t>(total), {1u, pn}, mul);
    detail::check_order(g, total, "modular");
    return g;
}

// The order-8 group with a unique involution, in normal form a^k b^s with
// a^4 = 1, b^2 = a^2, b a b^-1 = a^-1.
inline PermGroup quaternion_group() {
    auto mul = [](uint32_t x, uint32_t y) {
        uint32_t kx = x % 4, sx = x / 4;
        uint32_t ky = y % 4, sy = y / 4;
        if (sx == 0) return (kx + ky) % 4 + 4 * sy;
        if (sy == 0) return (kx + 4 - ky % 4) % 4 + 4u;
        return (kx + 4 - ky % 4 + 2) % 4;
    };
    PermGroup g = detail::regular_from(8, {1u, 4u}, mul);
    detail::check_order(g, 8, "quaternion");
    return g;
}

// Order p^3; "minus" has exponent p^2 (for p = 2 it is the quaternion
// group), "plus" exponent p (dihedral for p = 2).
inline PermGroup extraspecial_group(uint64_t p, bool minus) {
    if (!is_small_prime(p))
        throw std::invalid_argument("extraspecial: needs a prime");
    if (p == 2) return minus ? quaternion_group() : modular_group(2, 2);
    return minus ? modular_group(p, 2) : heisenberg_group(p);
}

namespace detail {

inline Perm block_part(const Perm& w, uint32_t off, uint32_t deg) {
    std::vector<uint32_t> img(deg);
    for (uint32_t i = 0; i < deg; ++i) img[i] = w(off + i) - off;
    return Perm(std::move(img));
}

// Regular realization of the extension of P by an automorphism of order d,
// given as an index map over P.elements(). Points are d blocks of regular
// P-points; the extra generator steps cyclically through the blocks.
inline PermGroup extension_by_automorphism(const PermGroup& P,
                                           const std::vector<uint32_t>& sigma,
                                           uint32_t d, const char* name) {
    std::vector<Perm> els = P.elements();
    uint32_t m = static_cast<uint32_t>(els.size());
    if (uint64_t(m) * d > kMaxGroupDegree)
        throw std::invalid_argument(std::string(name) + ": extension exceeds the degree cap");
    std::unordered_map<Perm, uint32_t, PermHash> idx;
    for (uint32_t i = 0; i < m; ++i) idx.emplace(els[i], i);
    std::vector<std::vector<uint32_t>> sig(d, std::vector<uint32_t>(m));
    std::iota(sig[0].begin(), sig[0].end(), 0u);
    for (uint32_t e = 1; e < d; ++e)
        for (uint32_t i = 0; i < m; ++i) sig[e][i] = sigma[sig[e - 1][i]];
    std::vector<Perm> gens;
    for (const Perm& g : P.generators()) {
        uint32_t gi = idx.at(g);
        std::vector<uint32_t> img(uint64_t(m) * d);
        for (uint32_t e = 0; e < d; ++e) {
            uint32_t ge = sig[e][gi];
            for (uint32_t ui = 0; ui < m; ++ui)
                img[uint64_t(e) * m + ui] = e * m + idx.at(els[ui] * els[ge]);
        }
        gens.emplace_back(std::move(img));
    }
    if (d > 1) {
        std::vector<uint32_t> img(uint64_t(m) * d);
        for (uint32_t e = 0; e < d; ++e)
            for (uint32_t ui = 0; ui < m; ++ui)
                img[uint64_t(e) * m + ui] = ((e + 1) % d) * m + ui;
        gens.emplace_back(std::move(img));
    }
    PermGroup out = PermGroup::make(m * d, std::move(gens));
    check_order(out, BigInt(m) * d, name);
    return out;
}

}  // namespace detail

// Extension of P by the conjugation map of a normalizing permutation; the
// automorphism order sets the size of the cyclic top.
inline PermGroup semidirect_by_conjugation(const PermGroup& P, const Perm& alpha) {
    if (alpha.degree() != P.degree())
        throw std::invalid_argument("semidirect: map degree differs from the group degree");
    for (const Perm& g : P.generators())
        if (!P.contains(conj(alpha, g)))
            throw std::invalid_argument("semidirect: the map is not an automorphism of the group");
    auto centralizes = [&](const Perm& x) {
        for (const Perm& g : P.generators())
            if (!(conj(x, g) == g)) return false;
        return true;
    };
    uint32_t d = 1;
    Perm pw = alpha;
    while (!centralizes(pw)) {
        pw = pw * alpha;
        ++d;
    }
    std::vector<Perm> els = P.elements();
    uint32_t m = static_cast<uint32_t>(els.size());
    std::unordered_map<Perm, uint32_t, PermHash> idx;
    for (uint32_t i = 0; i < m; ++i) idx.emplace(els[i], i);
    std::vector<uint32_t> sigma(m);
    for (uint32_t i = 0; i < m; ++i) sigma[i] = idx.at(conj(alpha, els[i]));
    return detail::extension_by_automorphism(P, sigma, d, "semidirect");
}

// Backtracking search for an order-2 automorphism of an odd p-group P, by
// order-matched images of the generating set; the graph-subgroup order test
// certifies that an image tuple extends to a homomorphism. Returns the
// first extension found in element order, or nothing.
inline std::optional<PermGroup> find_involutory_extension(const PermGroup& P) {
    BigInt big = P.order();
    if (big > 100000)
        throw std::invalid_argument("find_involutory_extension: group too large");
    uint64_t m64 = big.convert_to<uint64_t>();
    if (m64 % 2 == 0 || m64 < 3)
        throw std::invalid_argument("find_involutory_extension: needs an odd p-group");
    uint64_t p = 3;
    while (m64 % p != 0) p += 2;
    for (uint64_t r = m64; r > 1; r /= p)
        if (r % p != 0)
            throw std::invalid_argument("find_involutory_extension: needs an odd p-group");
    std::vector<Perm> els = P.elements();
    uint32_t m = static_cast<uint32_t>(els.size());
    uint32_t deg = P.degree();
    std::unordered_map<Perm, uint32_t, PermHash> idx;
    for (uint32_t i = 0; i < m; ++i) idx.emplace(els[i], i);
    const std::vector<Perm>& gens = P.generators();
    size_t k = gens.size();
    std::vector<std::vector<uint32_t>> cand(k);
    for (size_t gi = 0; gi < k; ++gi)
        for (uint32_t ei = 0; ei < m; ++ei)
            if (els[ei].order() == gens[gi].order()) cand[gi].push_back(ei);
    std::vector<size_t> pos(k, 0);
    while (true) {
        std::vector<Perm> himgs;
        himgs.reserve(k);
        for (size_t gi = 0; gi < k; ++gi) himgs.push_back(els[cand[gi][pos[gi]]]);
        if (PermGroup::make(deg, himgs).order() == big) {
            std::vector<Perm> pair_gens;
            for (size_t gi = 0; gi < k; ++gi)
                pair_gens.push_back(embed_first(gens[gi], deg) *
                                    embed_second(himgs[gi], deg));
            PermGroup graph = PermGroup::make(2 * deg, pair_gens);
            if (graph.order() == big) {
                std::vector<uint32_t> sigma(m, UINT32_MAX);
                for (const Perm& w : graph.elements()) {
                    Perm u = detail::block_part(w, 0, deg);
                    Perm v = detail::block_part(w, deg, deg);
                    sigma[idx.at(u)] = idx.at(v);
                }
                bool involutory = true, trivial_map = true;
                for (uint32_t i = 0; i < m && involutory; ++i) {
                    if (sigma[i] == UINT32_MAX || sigma[sigma[i]] != i) involutory = false;
                    if (sigma[i] != i) trivial_map = false;
                }
                if (involutory && !trivial_map)
                    return detail::extension_by_automorphism(P, sigma, 2,
                                                             "involutory extension");
            }
        }
        size_t gi = 0;
        while (gi < k && ++pos[gi] == cand[gi].size()) pos[gi++] = 0;
        if (gi == k) break;
    }
    return std::nullopt;
}

// Names: symmetric:n, alternating:n, cyclic:n, dihedral:2n (the order),
// elemabelian:p:k, extraspecial:p:plus|minus, modular:p:n, and
// semidirect:<groupfile>:<permfile> where the second file holds one
// normalizing permutation.
inline PermGroup named_group(const std::string& name) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t c = name.find(':', start);
        if (c == std::string::npos) {
            parts.push_back(name.substr(start));
            break;
        }
        parts.push_back(name.substr(start, c - start));
        start = c + 1;
    }
    auto need = [&](size_t n) {
        if (parts.size() != n)
            throw std::invalid_argument("named_group: wrong parameter count in '" + name + "'");
    };
    auto num = [&](size_t i) -> uint64_t {
        const std::string& s = parts[i];
        if (s.empty()) throw std::invalid_argument("named_group: empty parameter in '" + name + "'");
        uint64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9')
                throw std::invalid_argument("named_group: non-numeric parameter in '" + name + "'");
            v = v * 10 + static_cast<uint64_t>(c - '0');
            if (v > 1000000) throw std::invalid_argument("named_group: parameter too large");
        }
        return v;
    };
    const std::string& kind = parts[0];
    if (kind == "cyclic") {
        need(2);
        return cyclic_group(num(1));
    }
    if (kind == "dihedral") {
        need(2);
        return dihedral_group(num(1));
    }
    if (kind == "symmetric") {
        need(2);
        return symmetric_group(num(1));
    }
    if (kind == "alternating") {
        need(2);
        return alternating_group(num(1));
    }
    if (kind == "elemabelian") {
        need(3);
        return elemabelian_group(num(1), static_cast<uint32_t>(num(2)));
    }
    if (kind == "extraspecial") {
        need(3);
        if (parts[2] != "plus" && parts[2] != "minus")
            throw std::invalid_argument("named_group: extraspecial variant must be plus or minus");
        return extraspecial_group(num(1), parts[2] == "minus");
    }
    if (kind == "modular") {
        need(3);
        return modular_group(num(1), static_cast<uint32_t>(num(2)));
    }
    if (kind == "semidirect") {
        need(3);
        ParsedGroup pg = load_group_file(parts[1]);
        ParsedGroup ag = load_group_file(parts[2]);
        if (ag.group.generators().size() != 1)
            throw std::invalid_argument(
                "named_group: the automorphism file must hold exactly one gen line");
        return semidirect_by_conjugation(pg.group, ag.group.generators()[0]);
    }
    throw std::invalid_argument("named_group: unknown name '" + name + "'");
}

}  // namespace scott
