#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace scott {

// GF(p^m) with full arithmetic tables; q = p^m is capped so the tables stay
// small. Elements are indices 0..q-1 encoding polynomials over GF(p) in base
// p: the index sum a_i p^i stands for sum a_i x^i. Index 0 is zero, index 1
// is one, and indices 0..p-1 form the prime subfield.
//
// The modulus is the monic irreducible x^m + sum a_i x^i whose coefficient
// index sum a_i p^i is smallest. That pins one polynomial per (p, m), so two
// fields with the same parameters have identical element arithmetic.
class GField {
public:
    using Elt = uint16_t;
    static constexpr uint32_t MAX_Q = 512;

    GField(uint32_t p, uint32_t m) : p_(p), m_(m) {
        if (m == 0) throw std::invalid_argument("GField: extension degree must be positive");
        if (!is_prime(p)) throw std::invalid_argument("GField: characteristic must be prime");
        uint64_t q = 1;
        for (uint32_t i = 0; i < m; ++i) {
            q *= p;
            if (q > MAX_Q) throw std::invalid_argument("GField: p^m exceeds table cap");
        }
        q_ = static_cast<uint32_t>(q);
        find_modulus();
        build_tables();
    }

    uint32_t p() const { return p_; }
    uint32_t m() const { return m_; }
    uint32_t q() const { return q_; }

    Elt zero() const { return 0; }
    Elt one() const { return 1; }

    Elt add(Elt a, Elt b) const { return add_[a * q_ + b]; }
    Elt sub(Elt a, Elt b) const { return add_[a * q_ + neg_[b]]; }
    Elt neg(Elt a) const { return neg_[a]; }
    Elt mul(Elt a, Elt b) const { return mul_[a * q_ + b]; }

    Elt inv(Elt a) const {
        if (a == 0) throw std::invalid_argument("GField: inverse of zero");
        return inv_[a];
    }

    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }

    Elt pow(Elt a, int64_t e) const {
        if (a == 0) {
            if (e < 0) throw std::invalid_argument("GField: inverse of zero");
            return e == 0 ? one() : zero();
        }
        int64_t n = static_cast<int64_t>(q_) - 1;
        int64_t r = e % n;
        if (r < 0) r += n;
        Elt acc = one(), base = a;
        for (uint64_t k = static_cast<uint64_t>(r); k > 0; k >>= 1) {
            if (k & 1) acc = mul(acc, base);
            base = mul(base, base);
        }
        return acc;
    }

    // x -> x^p, a field automorphism generating Gal(GF(q)/GF(p)).
    Elt frobenius(Elt a) const { return frob_[a]; }

    Elt frobenius_iter(Elt a, uint32_t k) const {
        for (uint32_t i = 0; i < k % m_; ++i) a = frob_[a];
        return a;
    }

    // Inverse of frobenius: x -> x^(p^(m-1)).
    Elt inv_frobenius(Elt a) const { return frobenius_iter(a, m_ - 1); }

    // Prime-subfield embedding of an integer.
    Elt from_int(uint64_t n) const { return static_cast<Elt>(n % p_); }

    // Modulus coefficients a_0..a_m with a_m = 1.
    const std::vector<uint32_t>& modulus() const { return modulus_; }

private:
    uint32_t p_, m_, q_ = 0;
    std::vector<uint32_t> modulus_;
    std::vector<Elt> add_, mul_, neg_, inv_, frob_;

    static bool is_prime(uint32_t n) {
        if (n < 2) return false;
        for (uint32_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    // Dense polynomials over GF(p), coefficient index = degree, trimmed.
    using PPoly = std::vector<uint32_t>;

    static void ptrim(PPoly& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }

    PPoly pmul(const PPoly& a, const PPoly& b) const {
        if (a.empty() || b.empty()) return {};
        PPoly r(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j)
                r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
        ptrim(r);
        return r;
    }

    PPoly pmod(PPoly a, const PPoly& f) const {
        ptrim(a);
        uint32_t lead_inv = mod_inverse(f.back());
        while (a.size() >= f.size()) {
            uint32_t c = (a.back() * lead_inv) % p_;
            size_t shift = a.size() - f.size();
            for (size_t i = 0; i < f.size(); ++i)
                a[shift + i] = (a[shift + i] + p_ - c * f[i] % p_) % p_;
            ptrim(a);
        }
        return a;
    }

    PPoly pgcd(PPoly a, PPoly b) const {
        ptrim(a);
        ptrim(b);
        while (!b.empty()) {
            PPoly r = pmod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.empty() && a.back() != 1) {
            uint32_t li = mod_inverse(a.back());
            for (uint32_t& c : a) c = c * li % p_;
        }
        return a;
    }

    uint32_t mod_inverse(uint32_t a) const {
        // p is tiny; scan.
        for (uint32_t b = 1; b < p_; ++b)
            if (a * b % p_ == 1) return b;
        throw std::logic_error("GField: no inverse mod p");
    }

    PPoly x_powmod(uint64_t e, const PPoly& f) const {
        PPoly acc{1}, base{0, 1};
        base = pmod(base, f);
        while (e > 0) {
            if (e & 1) acc = pmod(pmul(acc, base), f);
            base = pmod(pmul(base, base), f);
            e >>= 1;
        }
        return acc;
    }

    bool is_irreducible(const PPoly& f) const {
        // f has no irreducible factor of degree k iff gcd(f, x^(p^k) - x) = 1;
        // checking k up to deg(f)/2 decides irreducibility.
        uint32_t deg = static_cast<uint32_t>(f.size()) - 1;
        for (uint32_t k = 1; 2 * k <= deg; ++k) {
            uint64_t e = 1;
            for (uint32_t i = 0; i < k; ++i) e *= p_;
            PPoly g = x_powmod(e, f);  // x^(p^k) mod f
            // g - x
            if (g.size() < 2) g.resize(2, 0);
            g[1] = (g[1] + p_ - 1) % p_;
            ptrim(g);
            if (pgcd(f, g).size() > 1) return false;
        }
        return true;
    }

    void find_modulus() {
        uint64_t pm = 1;
        for (uint32_t i = 0; i < m_; ++i) pm *= p_;
        for (uint64_t c = 0; c < pm; ++c) {
            PPoly f(m_ + 1, 0);
            uint64_t t = c;
            for (uint32_t i = 0; i < m_; ++i) {
                f[i] = static_cast<uint32_t>(t % p_);
                t /= p_;
            }
            f[m_] = 1;
            if (is_irreducible(f)) {
                modulus_.assign(f.begin(), f.end());
                return;
            }
        }
        throw std::logic_error("GField: no irreducible modulus found");
    }

    std::vector<uint32_t> digits(uint32_t idx) const {
        std::vector<uint32_t> d(m_, 0);
        for (uint32_t i = 0; i < m_; ++i) {
            d[i] = idx % p_;
            idx /= p_;
        }
        return d;
    }

    uint32_t undigits(const std::vector<uint32_t>& d) const {
        uint32_t idx = 0;
        for (uint32_t i = m_; i-- > 0;) idx = idx * p_ + (i < d.size() ? d[i] % p_ : 0);
        return idx;
    }

    void build_tables() {
        add_.assign(static_cast<size_t>(q_) * q_, 0);
        mul_.assign(static_cast<size_t>(q_) * q_, 0);
        neg_.assign(q_, 0);
        inv_.assign(q_, 0);
        frob_.assign(q_, 0);
        PPoly f(modulus_.begin(), modulus_.end());
        for (uint32_t a = 0; a < q_; ++a) {
            auto da = digits(a);
            for (uint32_t b = 0; b < q_; ++b) {
                auto db = digits(b);
                std::vector<uint32_t> ds(m_);
                for (uint32_t i = 0; i < m_; ++i) ds[i] = (da[i] + db[i]) % p_;
                add_[static_cast<size_t>(a) * q_ + b] = static_cast<Elt>(undigits(ds));
                PPoly pa(da.begin(), da.end()), pb(db.begin(), db.end());
                ptrim(pa);
                ptrim(pb);
                PPoly pr = pmod(pmul(pa, pb), f);
                pr.resize(m_, 0);
                mul_[static_cast<size_t>(a) * q_ + b] =
                    static_cast<Elt>(undigits(std::vector<uint32_t>(pr.begin(), pr.end())));
            }
        }
        for (uint32_t a = 0; a < q_; ++a) {
            for (uint32_t b = 0; b < q_; ++b) {
                if (add_[static_cast<size_t>(a) * q_ + b] == 0) neg_[a] = static_cast<Elt>(b);
                if (a != 0 && mul_[static_cast<size_t>(a) * q_ + b] == 1)
                    inv_[a] = static_cast<Elt>(b);
            }
        }
        for (uint32_t a = 0; a < q_; ++a) {
            Elt r = 1;
            for (uint32_t i = 0; i < p_; ++i) r = mul(r, static_cast<Elt>(a));
            frob_[a] = r;
        }
    }
};

using FieldPtr = std::shared_ptr<const GField>;

// Cached field lookup; all callers sharing (p, m) get one table set.
inline FieldPtr field(uint32_t p, uint32_t m = 1) {
    static std::map<std::pair<uint32_t, uint32_t>, FieldPtr> cache;
    auto key = std::make_pair(p, m);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_shared<const GField>(p, m)).first;
    return it->second;
}

inline bool same_field(const GField& a, const GField& b) {
    return a.p() == b.p() && a.m() == b.m();
}

}  // namespace scott
