#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <unordered_set>

#include "scott/perm_group.hpp"

namespace scott {

namespace detail {

// Base-image depth-first search over the stabilizer chain of G. At level i
// the coset element built so far is c = t_{i-1} * ... * t_1; candidate images
// of base_i are c(delta) for delta in the fundamental orbit. `assign` prunes
// on a partial image (returns false to cut), `leaf` accepts the element.
struct BaseImageSearch {
    const PermGroup& G;
    uint64_t nodes = 0;
    static constexpr uint64_t NODE_CAP = 200000000ull;

    explicit BaseImageSearch(const PermGroup& g) : G(g) {}

    template <typename State, typename Assign, typename Leaf>
    void run(State state, Assign assign, Leaf leaf) {
        if (G.chain().depth() == 0) {
            leaf(Perm::identity(G.degree()));
            return;
        }
        descend(0, Perm::identity(G.degree()), state, assign, leaf);
    }

private:
    template <typename State, typename Assign, typename Leaf>
    void descend(size_t i, const Perm& c, const State& state, const Assign& assign,
                 const Leaf& leaf) {
        if (++nodes > NODE_CAP)
            throw std::runtime_error("backtrack search: node cap exceeded");
        const auto& lv = G.chain().level(i);
        for (uint32_t delta : lv.orbit) {
            uint32_t gamma = c(delta);
            State next = state;
            if (!assign(next, lv.base, gamma)) continue;
            Perm c2 = lv.transversal[delta] * c;
            if (i + 1 == G.chain().depth())
                leaf(c2);
            else
                descend(i + 1, c2, next, assign, leaf);
        }
    }
};

struct PartialMap {
    std::vector<uint32_t> img;   // NPOS = unknown
    std::vector<bool> used;
    static constexpr uint32_t NPOS = UINT32_MAX;

    explicit PartialMap(uint32_t degree) : img(degree, NPOS), used(degree, false) {}

    bool set(uint32_t x, uint32_t y) {
        if (img[x] != NPOS) return img[x] == y;
        if (used[y]) return false;
        img[x] = y;
        used[y] = true;
        return true;
    }
};

inline std::string elements_key(std::vector<Perm> elems) {
    std::sort(elems.begin(), elems.end());
    std::string key;
    key.reserve(elems.size() * elems[0].degree() * 2);
    for (const Perm& e : elems)
        for (uint32_t v : e.images()) {
            key.push_back(static_cast<char>(v & 0xff));
            key.push_back(static_cast<char>((v >> 8) & 0xff));
        }
    return key;
}

}  // namespace detail

inline PermGroup join(const PermGroup& a, const PermGroup& b) {
    if (a.degree() != b.degree())
        throw std::invalid_argument("join: degree mismatch");
    std::vector<Perm> gens = a.generators();
    for (const Perm& g : b.generators()) gens.push_back(g);
    return PermGroup::make(a.degree(), gens);
}

inline PermGroup generated_by(const PermGroup& a, const Perm& x) {
    std::vector<Perm> gens = a.generators();
    gens.push_back(x);
    return PermGroup::make(a.degree(), gens);
}

inline Subgroup conjugate_subgroup(const Perm& g, const Subgroup& h) {
    std::vector<Perm> gens;
    gens.reserve(h.generators().size());
    for (const Perm& x : h.generators()) gens.push_back(conj(g, x));
    return PermGroup::make(h.degree(), gens);
}

// C_G(H) = {g in G : gh = hg for all h in H}. Pruning: a known image pair
// x -> y forces h(x) -> h(y) for every generator h of H.
inline Subgroup centralizer(const PermGroup& G, const Subgroup& H) {
    std::vector<Perm> hgens;
    for (const Perm& h : H.generators())
        if (!h.is_identity()) hgens.push_back(h);
    if (hgens.empty()) return G;

    std::vector<Perm> found;
    PermGroup sofar = PermGroup::trivial(G.degree());
    detail::BaseImageSearch search(G);
    auto assign = [&](detail::PartialMap& pm, uint32_t x, uint32_t y) {
        std::vector<std::pair<uint32_t, uint32_t>> work{{x, y}};
        while (!work.empty()) {
            auto [a, b] = work.back();
            work.pop_back();
            uint32_t before = pm.img[a];
            if (!pm.set(a, b)) return false;
            if (before != detail::PartialMap::NPOS) continue;
            for (const Perm& h : hgens) work.emplace_back(h(a), h(b));
        }
        return true;
    };
    auto leaf = [&](const Perm& g) {
        for (const Perm& h : hgens)
            if (!(g * h == h * g)) return;
        if (!sofar.contains(g)) {
            found.push_back(g);
            sofar = PermGroup::make(G.degree(), found);
        }
    };
    search.run(detail::PartialMap(G.degree()), assign, leaf);
    return sofar;
}

// N_G(H). Pruning: g maps H-orbits to H-orbits of the same size.
inline Subgroup normalizer(const PermGroup& G, const Subgroup& H) {
    bool trivial_h = true;
    for (const Perm& h : H.generators())
        if (!h.is_identity()) trivial_h = false;
    if (trivial_h) return G;

    std::vector<uint32_t> orbit_size(G.degree(), 0);
    {
        std::vector<uint32_t> orbit_id(G.degree(), UINT32_MAX);
        for (uint32_t s = 0; s < G.degree(); ++s) {
            if (orbit_id[s] != UINT32_MAX) continue;
            std::vector<uint32_t> orb{s};
            orbit_id[s] = s;
            for (size_t i = 0; i < orb.size(); ++i)
                for (const Perm& h : H.generators()) {
                    uint32_t y = h(orb[i]);
                    if (orbit_id[y] == UINT32_MAX) {
                        orbit_id[y] = s;
                        orb.push_back(y);
                    }
                }
            for (uint32_t x : orb) orbit_size[x] = static_cast<uint32_t>(orb.size());
        }
    }

    std::vector<Perm> found;
    PermGroup sofar = PermGroup::trivial(G.degree());
    detail::BaseImageSearch search(G);
    auto assign = [&](detail::PartialMap& pm, uint32_t x, uint32_t y) {
        if (orbit_size[x] != orbit_size[y]) return false;
        return pm.set(x, y);
    };
    auto leaf = [&](const Perm& g) {
        for (const Perm& h : H.generators())
            if (!H.contains(conj(g, h))) return;
        if (!sofar.contains(g)) {
            found.push_back(g);
            sofar = PermGroup::make(G.degree(), found);
        }
    };
    search.run(detail::PartialMap(G.degree()), assign, leaf);
    return sofar;
}

// All g in G with g Q g^-1 <= P (the transporter set, not reduced).
inline std::vector<Perm> transporter_all(const PermGroup& G, const Subgroup& Q,
                                         const Subgroup& P) {
    std::vector<Perm> qgens;
    for (const Perm& q : Q.generators())
        if (!q.is_identity()) qgens.push_back(q);
    if (qgens.empty()) return G.elements();

    std::vector<uint32_t> q_orbit_size(G.degree(), 0), p_orbit_size(G.degree(), 0);
    auto fill_sizes = [&](const std::vector<Perm>& gens, std::vector<uint32_t>& out) {
        std::vector<uint32_t> seen(G.degree(), UINT32_MAX);
        for (uint32_t s = 0; s < G.degree(); ++s) {
            if (seen[s] != UINT32_MAX) continue;
            std::vector<uint32_t> orb{s};
            seen[s] = s;
            for (size_t i = 0; i < orb.size(); ++i)
                for (const Perm& h : gens) {
                    uint32_t y = h(orb[i]);
                    if (seen[y] == UINT32_MAX) {
                        seen[y] = s;
                        orb.push_back(y);
                    }
                }
            for (uint32_t x : orb) out[x] = static_cast<uint32_t>(orb.size());
        }
    };
    fill_sizes(qgens, q_orbit_size);
    fill_sizes(P.generators(), p_orbit_size);

    std::vector<Perm> out;
    detail::BaseImageSearch search(G);
    auto assign = [&](detail::PartialMap& pm, uint32_t x, uint32_t y) {
        if (q_orbit_size[x] > p_orbit_size[y]) return false;
        return pm.set(x, y);
    };
    auto leaf = [&](const Perm& g) {
        for (const Perm& q : qgens)
            if (!P.contains(conj(g, q))) return;
        out.push_back(g);
    };
    search.run(detail::PartialMap(G.degree()), assign, leaf);
    return out;
}

// Representatives of the transporter {g : g Q g^-1 <= P} modulo C_G(Q), one
// per induced homomorphism Q -> P, each the lex-least element inducing its
// map. Returned in lex order.
inline std::vector<Perm> transporter_cosets(const PermGroup& G, const Subgroup& Q,
                                            const Subgroup& P) {
    std::vector<Perm> all = transporter_all(G, Q, P);
    std::map<std::string, Perm> by_map;
    for (const Perm& g : all) {
        std::string key;
        for (const Perm& q : Q.generators()) {
            const Perm c = conj(g, q);
            for (uint32_t v : c.images()) {
                key.push_back(static_cast<char>(v & 0xff));
                key.push_back(static_cast<char>((v >> 8) & 0xff));
            }
        }
        auto it = by_map.find(key);
        if (it == by_map.end() || g.images() < it->second.images())
            by_map.insert_or_assign(key, g);
    }
    std::vector<Perm> reps;
    reps.reserve(by_map.size());
    for (auto& [k, g] : by_map) reps.push_back(g);
    std::sort(reps.begin(), reps.end());
    return reps;
}

// Deterministic Sylow p-subgroup: grow a p-subgroup S by the first p-element
// of N_G(S) outside S, in the canonical element order.
inline Subgroup sylow(const PermGroup& G, uint32_t p) {
    uint32_t target = p_multiplicity(G.order(), p);
    PermGroup S = PermGroup::trivial(G.degree());
    uint32_t have = 0;
    while (have < target) {
        PermGroup N = S.is_trivial() ? G : normalizer(G, S);
        bool grown = false;
        for (const Perm& x : N.elements()) {
            uint64_t ord = x.order();
            uint64_t pprime = ord;
            while (pprime % p == 0) pprime /= p;
            if (pprime == ord) continue;  // no p-part
            Perm y = x.power(static_cast<int64_t>(pprime));
            if (y.is_identity() || S.contains(y)) continue;
            S = generated_by(S, y);
            if (!is_p_power(S.order(), p))
                throw std::logic_error("sylow: non-p-power intermediate subgroup");
            have = p_multiplicity(S.order(), p);
            grown = true;
            break;
        }
        if (!grown)
            throw std::logic_error("sylow: could not extend p-subgroup");
    }
    return S;
}

// All subgroups of the p-group P, built layer by layer: each subgroup of
// order p^(k+1) arises as <H, x> for a layer-k subgroup H normal in it and
// x in N_P(H). Canonical order: by order, then by sorted element list.
inline std::vector<Subgroup> subgroups_of_pgroup(const Subgroup& P, uint32_t p) {
    if (!is_p_power(P.order(), p))
        throw std::invalid_argument("subgroups_of_pgroup: group order is not a p-power");
    std::vector<Perm> elems = P.elements(1u << 14);

    struct Entry {
        PermGroup grp;
        std::vector<Perm> elements;
    };
    auto key_of = [](const std::vector<Perm>& es) { return detail::elements_key(es); };

    std::vector<std::vector<Entry>> layers;
    layers.push_back({{PermGroup::trivial(P.degree()), {Perm::identity(P.degree())}}});
    std::unordered_set<std::string> seen{key_of(layers[0][0].elements)};

    while (true) {
        const auto& prev = layers.back();
        std::map<std::string, Entry> next;
        for (const Entry& e : prev) {
            std::unordered_set<Perm, PermHash> hset(e.elements.begin(), e.elements.end());
            for (const Perm& x : elems) {
                if (hset.count(x)) continue;
                bool normalizes = true;
                for (const Perm& hg : e.grp.generators())
                    if (!hset.count(conj(x, hg))) {
                        normalizes = false;
                        break;
                    }
                if (!normalizes) continue;
                PermGroup K = generated_by(e.grp, x);
                if (K.order() != e.grp.order() * p) continue;
                std::vector<Perm> kelems = K.elements();
                std::string key = key_of(kelems);
                if (seen.count(key) || next.count(key)) continue;
                next.emplace(key, Entry{K, std::move(kelems)});
            }
        }
        if (next.empty()) break;
        layers.push_back({});
        for (auto& [key, entry] : next) {
            seen.insert(key);
            layers.back().push_back(std::move(entry));
        }
    }

    std::vector<Subgroup> out;
    for (const auto& layer : layers)
        for (const auto& e : layer) out.push_back(e.grp);
    return out;
}

// Frobenius criterion: G is p-nilpotent iff N_G(Q)/C_G(Q) is a p-group for
// every subgroup Q of a Sylow p-subgroup.
inline bool is_p_nilpotent(const PermGroup& G, uint32_t p) {
    if (is_p_power(G.order(), p)) return true;
    if (G.order() % p != 0) return true;
    Subgroup S = sylow(G, p);
    for (const Subgroup& Q : subgroups_of_pgroup(S, p)) {
        if (Q.is_trivial()) continue;
        BigInt n = normalizer(G, Q).order();
        BigInt c = centralizer(G, Q).order();
        if (n % c != 0)
            throw std::logic_error("is_p_nilpotent: |C| does not divide |N|");
        if (!is_p_power(n / c, p)) return false;
    }
    return true;
}

inline Perm extend_perm(const Perm& p, uint32_t degree) {
    if (p.degree() > degree)
        throw std::invalid_argument("extend_perm: target degree too small");
    std::vector<uint32_t> img(degree);
    for (uint32_t i = 0; i < degree; ++i) img[i] = i < p.degree() ? p(i) : i;
    return Perm(std::move(img));
}

inline Perm embed_first(const Perm& p, uint32_t deg2) {
    return extend_perm(p, p.degree() + deg2);
}

inline Perm embed_second(const Perm& p, uint32_t deg1) {
    std::vector<uint32_t> img(deg1 + p.degree());
    for (uint32_t i = 0; i < deg1; ++i) img[i] = i;
    for (uint32_t i = 0; i < p.degree(); ++i) img[deg1 + i] = deg1 + p(i);
    return Perm(std::move(img));
}

struct ProductGroup {
    PermGroup group;
    uint32_t deg1 = 0, deg2 = 0;

    Perm embed1(const Perm& p) const {
        if (p.degree() != deg1) throw std::invalid_argument("embed1: degree mismatch");
        return embed_first(p, deg2);
    }
    Perm embed2(const Perm& p) const {
        if (p.degree() != deg2) throw std::invalid_argument("embed2: degree mismatch");
        return embed_second(p, deg1);
    }
};

// G x H on the disjoint union of the two domains.
inline ProductGroup product_group(const PermGroup& G, const PermGroup& H) {
    ProductGroup pr;
    pr.deg1 = G.degree();
    pr.deg2 = H.degree();
    std::vector<Perm> gens;
    for (const Perm& g : G.generators()) gens.push_back(embed_first(g, pr.deg2));
    for (const Perm& h : H.generators()) gens.push_back(embed_second(h, pr.deg1));
    pr.group = PermGroup::make(pr.deg1 + pr.deg2, gens);
    return pr;
}

// Delta(P) = {(u, u)} inside a product whose factors both contain P.
inline Subgroup diagonal_subgroup(const Subgroup& P, const ProductGroup& pr) {
    std::vector<Perm> gens;
    for (const Perm& u : P.generators())
        gens.push_back(pr.embed1(extend_perm(u, pr.deg1)) *
                       pr.embed2(extend_perm(u, pr.deg2)));
    return PermGroup::make(pr.deg1 + pr.deg2, gens);
}

}  // namespace scott
