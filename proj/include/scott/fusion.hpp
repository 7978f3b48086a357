#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "scott/group_ops.hpp"

namespace scott {

inline uint32_t smallest_prime_factor(const BigInt& n) {
    if (n <= 1) return 0;
    for (uint32_t d = 2;; ++d) {
        if (BigInt(d) * d > n) return static_cast<uint32_t>(n);
        if (n % d == 0) return d;
    }
}

// Conjugation fusion on the subgroups of a fixed p-subgroup P of G. Objects
// are all subgroups of P, ordered by ascending order (canonical within each
// order); morphisms Q -> R are the conjugation maps induced by elements g
// with g Q g^-1 <= R, one transporter representative per distinct map.
struct FusionSystem {
    PermGroup group;
    Subgroup p_subgroup;
    uint32_t prime = 0;
    std::vector<Subgroup> objects;
    size_t p_index = 0;
    // morphisms[a][b]: lex-least representatives, lex order
    std::vector<std::vector<std::vector<Perm>>> morphisms;

    size_t object_index(const Subgroup& q) const {
        for (size_t i = 0; i < objects.size(); ++i)
            if (objects[i].same_group_as(q)) return i;
        throw std::invalid_argument("FusionSystem: subgroup is not an object");
    }

    const std::vector<Perm>& hom(size_t a, size_t b) const { return morphisms[a][b]; }

    size_t morphism_count() const {
        size_t n = 0;
        for (const auto& row : morphisms)
            for (const auto& maps : row) n += maps.size();
        return n;
    }

    // Indices of the objects F-isomorphic to objects[a], ascending (a included).
    std::vector<size_t> conjugates_of(size_t a) const {
        std::vector<size_t> out;
        for (size_t b = 0; b < objects.size(); ++b) {
            if (objects[b].order() != objects[a].order()) continue;
            for (const Perm& g : morphisms[a][b])
                if (conjugate_subgroup(g, objects[a]).same_group_as(objects[b])) {
                    out.push_back(b);
                    break;
                }
        }
        return out;
    }
};

inline FusionSystem build_fusion(const PermGroup& g, const Subgroup& p) {
    for (const Perm& u : p.generators())
        if (!g.contains(u))
            throw std::invalid_argument("build_fusion: subgroup not contained in the group");
    FusionSystem f;
    f.group = g;
    f.p_subgroup = p;
    f.prime = smallest_prime_factor(p.order());
    if (f.prime == 0) {
        f.objects = {p};
    } else {
        f.objects = subgroups_of_pgroup(p, f.prime);
        std::stable_sort(f.objects.begin(), f.objects.end(),
                         [](const Subgroup& a, const Subgroup& b) {
                             return a.order() < b.order();
                         });
    }
    f.p_index = f.objects.size() - 1;
    size_t n = f.objects.size();
    f.morphisms.assign(n, std::vector<std::vector<Perm>>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            if (f.objects[a].order() > f.objects[b].order()) continue;
            f.morphisms[a][b] = transporter_cosets(g, f.objects[a], f.objects[b]);
        }
#ifdef SCOTT_SELFCHECK
    for (size_t a = 0; a < n; ++a) {
        bool has_id = false;
        for (const Perm& u : f.morphisms[a][a])
            if (u.is_identity()) has_id = true;
        if (!has_id) throw std::logic_error("build_fusion: identity morphism missing");
        for (size_t b = 0; b < n; ++b)
            for (const Perm& u : f.morphisms[a][b])
                for (const Perm& q : f.objects[a].generators())
                    if (!f.objects[b].contains(conj(u, q)))
                        throw std::logic_error("build_fusion: image leaves the target");
    }
#endif
    return f;
}

struct ControlResult {
    bool controlled = true;
    std::optional<Subgroup> witness_object;  // Q whose fusion leaves N_G(P)
    std::optional<Perm> witness_rep;         // g with g Q g^-1 <= P, g outside N*C_G(Q)
};

// True iff every conjugation map between subgroups of P is already induced
// by the normalizer: for all Q <= P and transporter reps g into P, some
// n in N_G(P) has n^-1 g centralizing Q.
inline ControlResult is_controlled_by_normalizer(const FusionSystem& f) {
    Subgroup ng = normalizer(f.group, f.p_subgroup);
    std::vector<Perm> nelems = ng.elements();
    for (size_t a = 0; a < f.objects.size(); ++a) {
        const Subgroup& q = f.objects[a];
        if (q.is_trivial()) continue;
        for (const Perm& g : f.hom(a, f.p_index)) {
            bool reachable = false;
            for (const Perm& u : nelems) {
                Perm c = u.inverse() * g;
                bool central = true;
                for (const Perm& x : q.generators())
                    if (conj(c, x) != x) {
                        central = false;
                        break;
                    }
                if (central) {
                    reachable = true;
                    break;
                }
            }
            if (!reachable) return {false, q, g};
        }
    }
    return {};
}

// Under control, saturation reduces to N_G(P)/(P C_G(P)) having order prime
// to p; refuses to answer when control fails.
inline bool is_saturated_given_control(const FusionSystem& f) {
    if (!is_controlled_by_normalizer(f).controlled)
        throw std::invalid_argument(
            "is_saturated_given_control: valid only when the normalizer controls fusion");
    if (f.prime == 0) return true;
    Subgroup ng = normalizer(f.group, f.p_subgroup);
    Subgroup pc = join(f.p_subgroup, centralizer(f.group, f.p_subgroup));
    BigInt quotient = ng.order() / pc.order();
    return quotient % f.prime != 0;
}

// Q is fully normalized when its normalizer in P is as large as that of any
// F-conjugate.
inline bool is_fully_normalized(const FusionSystem& f, size_t a) {
    BigInt mine = normalizer(f.p_subgroup, f.objects[a]).order();
    for (size_t b : f.conjugates_of(a))
        if (normalizer(f.p_subgroup, f.objects[b]).order() > mine) return false;
    return true;
}

inline bool is_fully_normalized(const FusionSystem& f, const Subgroup& q) {
    return is_fully_normalized(f, f.object_index(q));
}

}  // namespace scott
