#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "scott/perm.hpp"

namespace scott {

using BigInt = boost::multiprecision::cpp_int;

// Word over the original generator alphabet: letter j >= 0 is gens[j],
// letter -j-1 is gens[j]^-1.
using Word = std::vector<int32_t>;

inline Word word_inverse(const Word& w) {
    Word r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it - 1);
    return r;
}

inline void word_append(Word& w, const Word& tail) {
    for (int32_t letter : tail) {
        // Free reduction keeps sift words from growing without bound.
        if (!w.empty() && w.back() == -letter - 1)
            w.pop_back();
        else
            w.push_back(letter);
    }
}

// Deterministic Schreier-Sims stabilizer chain. Every strong generator
// carries a word in the original generators, so sifting can return words;
// restriction of modules depends on that.
class StabChain {
public:
    struct Level {
        uint32_t base = 0;
        std::vector<uint32_t> orbit;            // discovery (BFS) order
        std::vector<uint32_t> orbit_pos;        // point -> index in orbit, or NPOS
        std::vector<int32_t> tree_gen;          // point -> strong gen index, -1 at root
        std::vector<uint32_t> tree_prev;        // point -> previous point on tree path
        std::vector<Perm> transversal;          // point -> t with t(base) = point
    };
    static constexpr uint32_t NPOS = UINT32_MAX;

    StabChain() = default;

    StabChain(uint32_t degree, const std::vector<Perm>& gens) : degree_(degree) {
        for (const Perm& g : gens) {
            if (g.degree() != degree)
                throw std::invalid_argument("StabChain: generator degree mismatch");
        }
        for (size_t j = 0; j < gens.size(); ++j) {
            if (!gens[j].is_identity())
                sgens_.push_back({gens[j], Word{static_cast<int32_t>(j)}});
        }
        if (sgens_.empty()) return;
        uint32_t b = degree_;
        for (const auto& sg : sgens_) b = std::min(b, sg.g.first_moved());
        levels_.push_back(Level{});
        levels_[0].base = b;
        level_gens_.push_back({});
        for (size_t j = 0; j < sgens_.size(); ++j)
            level_gens_[0].push_back(static_cast<uint32_t>(j));
        build();
    }

    uint32_t degree() const { return degree_; }
    size_t depth() const { return levels_.size(); }
    const Level& level(size_t i) const { return levels_[i]; }
    uint32_t base_point(size_t i) const { return levels_[i].base; }

    BigInt order() const {
        BigInt n = 1;
        for (const auto& lv : levels_) n *= static_cast<unsigned>(lv.orbit.size());
        return n;
    }

    bool contains(const Perm& p) const {
        Perm r = p;
        return strip(r, 0) == levels_.size() && r.is_identity();
    }

    // Word of p in the original generators, if p is a member.
    std::optional<Word> sift_word(const Perm& p) const {
        Perm r = p;
        Word w;
        std::vector<std::pair<size_t, uint32_t>> path;  // (level, orbit point)
        for (size_t i = 0; i < levels_.size(); ++i) {
            uint32_t gamma = r(levels_[i].base);
            if (levels_[i].orbit_pos[gamma] == NPOS) return std::nullopt;
            path.emplace_back(i, gamma);
            r = r * levels_[i].transversal[gamma].inverse();
        }
        if (!r.is_identity()) return std::nullopt;
        // p = t_k * ... * t_1 with t_i from level i (deepest first).
        for (auto it = path.rbegin(); it != path.rend(); ++it)
            word_append(w, transversal_word(it->first, it->second));
        return w;
    }

    Perm evaluate_word(const Word& w, const std::vector<Perm>& gens) const {
        Perm r = Perm::identity(degree_);
        for (int32_t letter : w)
            r = r * (letter >= 0 ? gens[letter] : gens[-letter - 1].inverse());
        return r;
    }

    // All elements in a deterministic order; throws if the order exceeds limit.
    std::vector<Perm> elements(size_t limit = (size_t{1} << 22)) const {
        if (order() > BigInt(static_cast<uint64_t>(limit)))
            throw std::runtime_error("StabChain: element enumeration over limit");
        std::vector<Perm> out;
        out.reserve(static_cast<size_t>(static_cast<uint64_t>(order())));
        Perm id = Perm::identity(degree_);
        enumerate(levels_.empty() ? -1 : static_cast<int>(levels_.size()) - 1, id, out);
        return out;
    }

private:
    struct StrongGen {
        Perm g;
        Word w;
    };

    uint32_t degree_ = 0;
    std::vector<StrongGen> sgens_;
    std::vector<Level> levels_;
    std::vector<std::vector<uint32_t>> level_gens_;  // indices into sgens_

    void enumerate(int i, const Perm& acc, std::vector<Perm>& out) const {
        if (i < 0) {
            out.push_back(acc);
            return;
        }
        for (uint32_t pt : levels_[i].orbit)
            enumerate(i - 1, acc * levels_[i].transversal[pt], out);
    }

    Word transversal_word(size_t i, uint32_t pt) const {
        Word w;
        std::vector<int32_t> gens_on_path;
        uint32_t cur = pt;
        while (levels_[i].tree_gen[cur] >= 0) {
            gens_on_path.push_back(levels_[i].tree_gen[cur]);
            cur = levels_[i].tree_prev[cur];
        }
        // t_pt = t_prev * s at each tree edge, so words concatenate root-first.
        for (auto it = gens_on_path.rbegin(); it != gens_on_path.rend(); ++it)
            word_append(w, sgens_[level_gens_[i][*it]].w);
        return w;
    }

    // Strips r in place through levels >= from; returns the level index where
    // the base image left the orbit, or levels_.size() on full descent.
    size_t strip(Perm& r, size_t from) const {
        for (size_t i = from; i < levels_.size(); ++i) {
            uint32_t gamma = r(levels_[i].base);
            if (levels_[i].orbit_pos[gamma] == NPOS) return i;
            r = r * levels_[i].transversal[gamma].inverse();
        }
        return levels_.size();
    }

    void recompute_orbit(size_t i) {
        Level& lv = levels_[i];
        lv.orbit.clear();
        lv.orbit_pos.assign(degree_, NPOS);
        lv.tree_gen.assign(degree_, -1);
        lv.tree_prev.assign(degree_, 0);
        lv.transversal.assign(degree_, Perm());
        lv.orbit.push_back(lv.base);
        lv.orbit_pos[lv.base] = 0;
        lv.transversal[lv.base] = Perm::identity(degree_);
        for (size_t qi = 0; qi < lv.orbit.size(); ++qi) {
            uint32_t x = lv.orbit[qi];
            for (size_t si = 0; si < level_gens_[i].size(); ++si) {
                const Perm& s = sgens_[level_gens_[i][si]].g;
                uint32_t y = s(x);
                if (lv.orbit_pos[y] == NPOS) {
                    lv.orbit_pos[y] = static_cast<uint32_t>(lv.orbit.size());
                    lv.orbit.push_back(y);
                    lv.tree_gen[y] = static_cast<int32_t>(si);
                    lv.tree_prev[y] = x;
                    lv.transversal[y] = lv.transversal[x] * s;
                }
            }
        }
    }

    void build() {
        recompute_orbit(0);
        int i = static_cast<int>(levels_.size()) - 1;
        while (i >= 0) {
            bool complete = true;
            const size_t orbit_n = levels_[i].orbit.size();
            const size_t gens_n = level_gens_[i].size();
            for (size_t oi = 0; oi < orbit_n && complete; ++oi) {
                uint32_t delta = levels_[i].orbit[oi];
                for (size_t si = 0; si < gens_n && complete; ++si) {
                    const StrongGen& s = sgens_[level_gens_[i][si]];
                    uint32_t gamma = s.g(delta);
                    Perm u = levels_[i].transversal[delta] * s.g *
                             levels_[i].transversal[gamma].inverse();
                    if (u.is_identity()) continue;
                    Perm residue = u;
                    size_t j = strip(residue, static_cast<size_t>(i) + 1);
                    if (residue.is_identity()) continue;
                    Word w = transversal_word(i, delta);
                    word_append(w, s.w);
                    word_append(w, word_inverse(transversal_word(i, gamma)));
                    // w is the word of u; extend with inverses of the strip
                    // transversals to get the residue word.
                    {
                        Perm r2 = u;
                        for (size_t l = static_cast<size_t>(i) + 1; l < j; ++l) {
                            uint32_t g2 = r2(levels_[l].base);
                            word_append(w, word_inverse(transversal_word(l, g2)));
                            r2 = r2 * levels_[l].transversal[g2].inverse();
                        }
                    }
                    if (j == levels_.size()) {
                        levels_.push_back(Level{});
                        levels_.back().base = residue.first_moved();
                        level_gens_.push_back({});
                    }
                    sgens_.push_back({residue, std::move(w)});
                    for (size_t l = static_cast<size_t>(i) + 1; l <= j; ++l) {
                        level_gens_[l].push_back(static_cast<uint32_t>(sgens_.size() - 1));
                        recompute_orbit(l);
                    }
                    i = static_cast<int>(j);
                    complete = false;
                }
            }
            if (complete) --i;
        }
    }
};

// Finite permutation group, immutable and cheap to copy. Subgroups are the
// same type acting on the same domain; operations taking a (group, subgroup)
// pair validate containment where it matters.
class PermGroup {
public:
    PermGroup() : d_(std::make_shared<const Data>()) {}

    static PermGroup make(uint32_t degree, std::vector<Perm> gens) {
        auto d = std::make_shared<Data>();
        d->degree = degree;
        d->gens = std::move(gens);
        d->chain = StabChain(degree, d->gens);
        d->order = d->chain.order();
        PermGroup g;
        g.d_ = std::move(d);
        return g;
    }

    static PermGroup trivial(uint32_t degree) { return make(degree, {}); }

    uint32_t degree() const { return d_->degree; }
    const std::vector<Perm>& generators() const { return d_->gens; }
    const StabChain& chain() const { return d_->chain; }
    const BigInt& order() const { return d_->order; }
    bool is_trivial() const { return d_->order == 1; }

    bool contains(const Perm& p) const {
        if (p.degree() != d_->degree) return false;
        return d_->chain.contains(p);
    }

    std::optional<Word> sift_word(const Perm& p) const {
        if (p.degree() != d_->degree) return std::nullopt;
        return d_->chain.sift_word(p);
    }

    Perm evaluate_word(const Word& w) const {
        return d_->chain.evaluate_word(w, d_->gens);
    }

    std::vector<Perm> elements(size_t limit = (size_t{1} << 22)) const {
        if (d_->order == 1) return {Perm::identity(d_->degree)};
        return d_->chain.elements(limit);
    }

    bool same_group_as(const PermGroup& o) const {
        if (d_ == o.d_) return true;
        if (d_->degree != o.d_->degree || d_->order != o.d_->order) return false;
        for (const Perm& g : o.generators())
            if (!contains(g)) return false;
        return true;
    }

private:
    struct Data {
        uint32_t degree = 0;
        std::vector<Perm> gens;
        StabChain chain;
        BigInt order = 1;
    };
    std::shared_ptr<const Data> d_;
};

// Subgroups act on the parent's domain; the alias keeps signatures readable.
using Subgroup = PermGroup;

inline bool is_subgroup_of(const PermGroup& g, const PermGroup& h) {
    for (const Perm& x : h.generators())
        if (!g.contains(x)) return false;
    return true;
}

inline uint32_t p_multiplicity(BigInt n, uint32_t p) {
    uint32_t k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

inline BigInt p_part(const BigInt& n, uint32_t p) {
    BigInt r = 1, m = n;
    while (m % p == 0) {
        m /= p;
        r *= p;
    }
    return r;
}

inline bool is_p_power(BigInt n, uint32_t p) {
    while (n % p == 0) n /= p;
    return n == 1;
}

}  // namespace scott
