#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace scott {

// Permutation of {0, ..., degree-1}, stored as the image array.
// Composition is left-to-right: (a * b)(x) = b(a(x)).
// The text format is 1-based cycle notation, e.g. "(1 2 3)(4 5)".
class Perm {
public:
    Perm() = default;

    explicit Perm(std::vector<uint32_t> images) : img_(std::move(images)) {
        std::vector<bool> seen(img_.size(), false);
        for (uint32_t y : img_) {
            if (y >= img_.size() || seen[y])
                throw std::invalid_argument("Perm: image array is not a bijection");
            seen[y] = true;
        }
    }

    static Perm identity(uint32_t degree) {
        std::vector<uint32_t> v(degree);
        std::iota(v.begin(), v.end(), 0u);
        Perm p;
        p.img_ = std::move(v);
        return p;
    }

    uint32_t degree() const { return static_cast<uint32_t>(img_.size()); }
    uint32_t operator()(uint32_t x) const { return img_[x]; }
    const std::vector<uint32_t>& images() const { return img_; }

    bool is_identity() const {
        for (uint32_t i = 0; i < img_.size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    Perm operator*(const Perm& b) const {
        if (degree() != b.degree())
            throw std::invalid_argument("Perm: degree mismatch in composition");
        Perm r;
        r.img_.resize(img_.size());
        for (uint32_t i = 0; i < img_.size(); ++i) r.img_[i] = b.img_[img_[i]];
        return r;
    }

    Perm inverse() const {
        Perm r;
        r.img_.resize(img_.size());
        for (uint32_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = i;
        return r;
    }

    // g * q * g^-1; the induced map q -> conj(g, q) is the conjugation morphism.
    friend Perm conj(const Perm& g, const Perm& q) { return g * q * g.inverse(); }

    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator!=(const Perm& o) const { return img_ != o.img_; }
    bool operator<(const Perm& o) const { return img_ < o.img_; }

    // Smallest moved point, or degree() if identity.
    uint32_t first_moved() const {
        for (uint32_t i = 0; i < img_.size(); ++i)
            if (img_[i] != i) return i;
        return degree();
    }

    uint64_t order() const {
        std::vector<bool> seen(img_.size(), false);
        uint64_t ord = 1;
        for (uint32_t i = 0; i < img_.size(); ++i) {
            if (seen[i]) continue;
            uint64_t len = 0;
            for (uint32_t j = i; !seen[j]; j = img_[j]) {
                seen[j] = true;
                ++len;
            }
            ord = std::lcm(ord, len);
        }
        return ord;
    }

    Perm power(int64_t e) const {
        uint64_t n = order();
        int64_t r = e % static_cast<int64_t>(n);
        if (r < 0) r += static_cast<int64_t>(n);
        Perm acc = identity(degree());
        Perm base = *this;
        for (uint64_t k = static_cast<uint64_t>(r); k > 0; k >>= 1) {
            if (k & 1) acc = acc * base;
            if (k > 1) base = base * base;
        }
        return acc;
    }

    std::string to_cycles() const {
        std::string out;
        std::vector<bool> seen(img_.size(), false);
        for (uint32_t i = 0; i < img_.size(); ++i) {
            if (seen[i] || img_[i] == i) {
                seen[i] = true;
                continue;
            }
            out += '(';
            for (uint32_t j = i; !seen[j]; j = img_[j]) {
                seen[j] = true;
                if (j != i) out += ' ';
                out += std::to_string(j + 1);
            }
            out += ')';
        }
        if (out.empty()) out = "()";
        return out;
    }

    // Parses 1-based cycle notation. Throws std::invalid_argument on malformed
    // input, out-of-range points, or repeated points.
    static Perm parse_cycles(const std::string& text, uint32_t degree) {
        std::vector<uint32_t> img(degree);
        std::iota(img.begin(), img.end(), 0u);
        std::vector<bool> used(degree, false);
        size_t i = 0;
        auto skip_ws = [&] {
            while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
        };
        skip_ws();
        bool any = false;
        while (i < text.size()) {
            if (text[i] != '(')
                throw std::invalid_argument("Perm: expected '(' in cycle notation");
            ++i;
            std::vector<uint32_t> cyc;
            skip_ws();
            while (i < text.size() && text[i] != ')') {
                if (!isdigit(static_cast<unsigned char>(text[i])))
                    throw std::invalid_argument("Perm: expected point number in cycle");
                uint64_t v = 0;
                while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) {
                    v = v * 10 + static_cast<uint64_t>(text[i] - '0');
                    if (v > degree) throw std::invalid_argument("Perm: point out of range");
                    ++i;
                }
                if (v == 0) throw std::invalid_argument("Perm: points are 1-based");
                uint32_t pt = static_cast<uint32_t>(v - 1);
                if (used[pt]) throw std::invalid_argument("Perm: repeated point in cycles");
                used[pt] = true;
                cyc.push_back(pt);
                skip_ws();
                if (i < text.size() && text[i] == ',') {
                    ++i;
                    skip_ws();
                }
            }
            if (i >= text.size())
                throw std::invalid_argument("Perm: unterminated cycle");
            ++i;  // ')'
            for (size_t k = 0; k + 1 < cyc.size(); ++k) img[cyc[k]] = cyc[k + 1];
            if (cyc.size() > 1) img[cyc.back()] = cyc.front();
            any = true;
            skip_ws();
        }
        if (!any) throw std::invalid_argument("Perm: empty permutation text");
        return Perm(std::move(img));
    }

private:
    std::vector<uint32_t> img_;
};

struct PermHash {
    size_t operator()(const Perm& p) const {
        size_t h = 1469598103934665603ull;
        for (uint32_t v : p.images()) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace scott
