#pragma once

#include <algorithm>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scott/gf.hpp"

namespace scott {

// Dense polynomial over a GField, coefficient index = degree, no trailing
// zeros; the zero polynomial is the empty vector.
using Poly = std::vector<GField::Elt>;

inline void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline bool poly_is_zero(const Poly& a) { return a.empty(); }

inline int32_t poly_deg(const Poly& a) { return static_cast<int32_t>(a.size()) - 1; }

inline Poly poly_one(const GField& f) { return {f.one()}; }

inline Poly poly_x(const GField& f) { return {f.zero(), f.one()}; }

inline Poly poly_add(const GField& f, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        GField::Elt x = i < a.size() ? a[i] : 0;
        GField::Elt y = i < b.size() ? b[i] : 0;
        r[i] = f.add(x, y);
    }
    poly_trim(r);
    return r;
}

inline Poly poly_sub(const GField& f, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        GField::Elt x = i < a.size() ? a[i] : 0;
        GField::Elt y = i < b.size() ? b[i] : 0;
        r[i] = f.sub(x, y);
    }
    poly_trim(r);
    return r;
}

inline Poly poly_mul(const GField& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    poly_trim(r);
    return r;
}

inline Poly poly_scale(const GField& f, const Poly& a, GField::Elt c) {
    Poly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = f.mul(a[i], c);
    poly_trim(r);
    return r;
}

inline Poly poly_monic(const GField& f, const Poly& a) {
    if (a.empty()) return a;
    return poly_scale(f, a, f.inv(a.back()));
}

inline std::pair<Poly, Poly> poly_divmod(const GField& f, Poly a, const Poly& b) {
    if (b.empty()) throw std::invalid_argument("poly_divmod: division by zero");
    poly_trim(a);
    if (a.size() < b.size()) return {{}, std::move(a)};
    Poly q(a.size() - b.size() + 1, 0);
    GField::Elt li = f.inv(b.back());
    for (size_t sh = a.size() - b.size() + 1; sh-- > 0;) {
        GField::Elt c = f.mul(a[sh + b.size() - 1], li);
        if (c != 0) {
            q[sh] = c;
            for (size_t j = 0; j < b.size(); ++j)
                a[sh + j] = f.sub(a[sh + j], f.mul(c, b[j]));
        }
    }
    poly_trim(a);
    poly_trim(q);
    return {std::move(q), std::move(a)};
}

inline Poly poly_mod(const GField& f, Poly a, const Poly& b) {
    return poly_divmod(f, std::move(a), b).second;
}

inline Poly poly_div(const GField& f, Poly a, const Poly& b) {
    return poly_divmod(f, std::move(a), b).first;
}

inline Poly poly_gcd(const GField& f, Poly a, Poly b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(f, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(f, a);
}

// Extended euclid: (u, v) with u a + v b = gcd(a, b), gcd monic.
inline std::pair<Poly, Poly> poly_bezout(const GField& f, const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    Poly u0 = poly_one(f), u1 = {};
    Poly v0 = {}, v1 = poly_one(f);
    while (!poly_is_zero(r1)) {
        auto [q, r2] = poly_divmod(f, r0, r1);
        Poly u2 = poly_sub(f, u0, poly_mul(f, q, u1));
        Poly v2 = poly_sub(f, v0, poly_mul(f, q, v1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    GField::Elt lead = r0.back();
    return {poly_scale(f, u0, f.inv(lead)), poly_scale(f, v0, f.inv(lead))};
}

inline Poly poly_pow(const GField& f, const Poly& base, uint32_t e) {
    Poly acc = poly_one(f);
    for (uint32_t i = 0; i < e; ++i) acc = poly_mul(f, acc, base);
    return acc;
}

inline GField::Elt poly_eval(const GField& f, const Poly& a, GField::Elt x) {
    GField::Elt r = 0;
    for (size_t i = a.size(); i-- > 0;) r = f.add(f.mul(r, x), a[i]);
    return r;
}

inline Poly poly_derivative(const GField& f, const Poly& a) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1, 0);
    for (size_t i = 1; i < a.size(); ++i) {
        GField::Elt c = 0;
        for (uint32_t k = 0; k < i % f.p(); ++k) c = f.add(c, a[i]);
        r[i - 1] = c;
    }
    poly_trim(r);
    return r;
}

inline Poly poly_powmod(const GField& f, Poly base, uint64_t e, const Poly& mod) {
    Poly acc = poly_one(f);
    base = poly_mod(f, std::move(base), mod);
    while (e > 0) {
        if (e & 1) acc = poly_mod(f, poly_mul(f, acc, base), mod);
        base = poly_mod(f, poly_mul(f, base, base), mod);
        e >>= 1;
    }
    return acc;
}

// Exponent given by its bits, most significant first; used where q^d
// overflows 64 bits.
inline Poly poly_powmod_bits(const GField& f, const Poly& base, const std::vector<bool>& bits,
                             const Poly& mod) {
    Poly acc = poly_one(f);
    for (bool b : bits) {
        acc = poly_mod(f, poly_mul(f, acc, acc), mod);
        if (b) acc = poly_mod(f, poly_mul(f, acc, base), mod);
    }
    return acc;
}

// All roots in the base field by scanning; q is table-sized so this is cheap
// and fully deterministic.
inline std::vector<GField::Elt> poly_roots(const GField& f, const Poly& a) {
    std::vector<GField::Elt> out;
    for (uint32_t x = 0; x < f.q(); ++x)
        if (poly_eval(f, a, static_cast<GField::Elt>(x)) == 0)
            out.push_back(static_cast<GField::Elt>(x));
    return out;
}

namespace detail {

// p-th root of a polynomial whose derivative vanishes: a(x) = b(x^p) with
// p-th-root coefficients.
inline Poly poly_pth_root(const GField& f, const Poly& a) {
    uint32_t p = f.p();
    Poly b((a.size() + p - 1) / p, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        if (i % p != 0) throw std::logic_error("poly_pth_root: not a p-th power");
        // Inverse Frobenius of each coefficient is its p-th root.
        b[i / p] = f.inv_frobenius(a[i]);
    }
    poly_trim(b);
    return b;
}

inline void squarefree_decompose(const GField& f, Poly a, uint32_t outer_mult,
                                 std::vector<std::pair<Poly, uint32_t>>& out) {
    a = poly_monic(f, a);
    if (poly_deg(a) <= 0) return;
    Poly d = poly_derivative(f, a);
    if (poly_is_zero(d)) {
        squarefree_decompose(f, poly_pth_root(f, a), outer_mult * f.p(), out);
        return;
    }
    Poly g = poly_gcd(f, a, d);
    Poly w = poly_div(f, a, g);
    uint32_t i = 1;
    while (poly_deg(w) > 0) {
        Poly y = poly_gcd(f, w, g);
        Poly z = poly_div(f, w, y);
        if (poly_deg(z) > 0) out.emplace_back(poly_monic(f, z), i * outer_mult);
        w = std::move(y);
        g = poly_div(f, g, w);
        ++i;
    }
    if (poly_deg(g) > 0) squarefree_decompose(f, g, outer_mult, out);
}

inline std::vector<bool> big_exponent_bits(const GField& f, uint32_t d, bool halve) {
    // Bits of q^d - 1, optionally divided by 2, most significant first.
    // Stored as base-2 digits of the number computed in a small bignum.
    std::vector<uint32_t> num{1};  // little-endian base 2^16 digits
    auto mul_small = [&](uint32_t c) {
        uint64_t carry = 0;
        for (uint32_t& digit : num) {
            uint64_t v = static_cast<uint64_t>(digit) * c + carry;
            digit = static_cast<uint32_t>(v & 0xFFFF);
            carry = v >> 16;
        }
        while (carry) {
            num.push_back(static_cast<uint32_t>(carry & 0xFFFF));
            carry >>= 16;
        }
    };
    for (uint32_t i = 0; i < d; ++i) mul_small(f.q());
    // Subtract 1.
    for (size_t i = 0; i < num.size(); ++i) {
        if (num[i] > 0) {
            --num[i];
            break;
        }
        num[i] = 0xFFFF;
    }
    if (halve) {
        uint32_t rem = 0;
        for (size_t i = num.size(); i-- > 0;) {
            uint32_t v = (rem << 16) | num[i];
            num[i] = v >> 1;
            rem = v & 1;
        }
    }
    std::vector<bool> bits;
    bool started = false;
    for (size_t i = num.size(); i-- > 0;)
        for (int b = 15; b >= 0; --b) {
            bool bit = (num[i] >> b) & 1;
            if (bit) started = true;
            if (started) bits.push_back(bit);
        }
    if (bits.empty()) bits.push_back(false);
    return bits;
}

inline Poly random_poly(const GField& f, uint32_t deg_below, std::mt19937_64& rng) {
    std::uniform_int_distribution<uint32_t> dist(0, f.q() - 1);
    Poly r(deg_below, 0);
    for (auto& c : r) c = static_cast<GField::Elt>(dist(rng));
    poly_trim(r);
    return r;
}

// Equal-degree splitting: a is squarefree, every irreducible factor has
// degree d. Splitting elements are drawn from a seeded generator, so the
// factorization is reproducible.
inline void equal_degree_factor(const GField& f, const Poly& a, uint32_t d,
                                std::mt19937_64& rng, std::vector<Poly>& out) {
    uint32_t deg = static_cast<uint32_t>(poly_deg(a));
    if (deg == d) {
        out.push_back(a);
        return;
    }
    Poly split;
    for (uint32_t tries = 0; poly_is_zero(split); ++tries) {
        if (tries > 1000) throw std::logic_error("equal_degree_factor: no split found");
        Poly r = random_poly(f, deg, rng);
        if (poly_deg(r) < 1) continue;
        Poly g = poly_gcd(f, a, r);
        if (poly_deg(g) > 0 && poly_deg(g) < poly_deg(a)) {
            split = g;
            break;
        }
        if (f.p() == 2) {
            // Trace map over GF(2^m): r + r^2 + r^4 + ... splits the algebra.
            Poly t = r;
            Poly acc = r;
            uint32_t steps = f.m() * d;
            for (uint32_t i = 1; i < steps; ++i) {
                t = poly_powmod(f, t, 2, a);
                acc = poly_add(f, acc, t);
            }
            Poly g2 = poly_gcd(f, a, acc);
            if (poly_deg(g2) > 0 && poly_deg(g2) < poly_deg(a)) split = g2;
        } else {
            auto bits = big_exponent_bits(f, d, true);  // (q^d - 1) / 2
            Poly b = poly_powmod_bits(f, r, bits, a);
            Poly g2 = poly_gcd(f, a, poly_sub(f, b, poly_one(f)));
            if (poly_deg(g2) > 0 && poly_deg(g2) < poly_deg(a)) split = g2;
        }
    }
    equal_degree_factor(f, poly_monic(f, split), d, rng, out);
    equal_degree_factor(f, poly_monic(f, poly_div(f, a, split)), d, rng, out);
}

}  // namespace detail

// Full factorization into monic irreducibles with multiplicities, sorted by
// degree then coefficient sequence. The randomized splitting stage runs on a
// fixed seed, so output is reproducible.
inline std::vector<std::pair<Poly, uint32_t>> poly_factor(const GField& f, const Poly& a,
                                                          uint64_t seed = 0x5C077) {
    if (poly_deg(a) < 1) throw std::invalid_argument("poly_factor: constant polynomial");
    std::vector<std::pair<Poly, uint32_t>> sqf;
    detail::squarefree_decompose(f, a, 1, sqf);
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Poly, uint32_t>> factors;
    for (const auto& [part, mult] : sqf) {
        // Distinct-degree stage: x^(q^k) - x collects the factors of degree
        // dividing k; on a squarefree input with smaller degrees stripped,
        // the gcd is exactly the degree-k part.
        Poly g = part;
        Poly h = poly_x(f);
        uint32_t k = 0;
        while (poly_deg(g) >= 1 && 2 * (k + 1) <= static_cast<uint32_t>(poly_deg(g))) {
            ++k;
            h = poly_powmod(f, h, f.q(), g);
            Poly dk = poly_gcd(f, g, poly_sub(f, h, poly_x(f)));
            if (poly_deg(dk) > 0) {
                std::vector<Poly> eq;
                detail::equal_degree_factor(f, dk, k, rng, eq);
                for (const Poly& irr : eq) factors.emplace_back(irr, mult);
                g = poly_div(f, g, dk);
                h = poly_mod(f, h, g);
            }
        }
        // Whatever remains has all factors of degree above deg/2: irreducible.
        if (poly_deg(g) >= 1) factors.emplace_back(poly_monic(f, g), mult);
    }
    std::sort(factors.begin(), factors.end(), [](const auto& x, const auto& y) {
        if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
    });
    // Merge repeated irreducibles from different squarefree parts.
    std::vector<std::pair<Poly, uint32_t>> merged;
    for (auto& fm : factors) {
        if (!merged.empty() && merged.back().first == fm.first)
            merged.back().second += fm.second;
        else
            merged.push_back(std::move(fm));
    }
    return merged;
}

inline bool poly_is_irreducible(const GField& f, const Poly& a) {
    if (poly_deg(a) < 1) return false;
    auto fac = poly_factor(f, a);
    return fac.size() == 1 && fac[0].second == 1;
}

}  // namespace scott
