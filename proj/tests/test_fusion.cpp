#include <catch_amalgamated.hpp>

#include <set>

#include "oracles.hpp"
#include "scott/fusion.hpp"

using namespace scott;

namespace {

PermGroup S3() {
    return PermGroup::make(3, {Perm::parse_cycles("(1 2 3)", 3),
                               Perm::parse_cycles("(1 2)", 3)});
}
PermGroup S4() {
    return PermGroup::make(4, {Perm::parse_cycles("(1 2 3 4)", 4),
                               Perm::parse_cycles("(1 2)", 4)});
}
PermGroup A4() {
    return PermGroup::make(4, {Perm::parse_cycles("(1 2 3)", 4),
                               Perm::parse_cycles("(2 3 4)", 4)});
}
PermGroup D8() {
    return PermGroup::make(4, {Perm::parse_cycles("(1 2 3 4)", 4),
                               Perm::parse_cycles("(1 3)", 4)});
}
PermGroup V4() {
    return PermGroup::make(4, {Perm::parse_cycles("(1 2)(3 4)", 4),
                               Perm::parse_cycles("(1 3)(2 4)", 4)});
}

// order-27 group on 9 points: translations and a shear on a 3x3 grid; the
// normal 9-element subgroup is its own centralizer
PermGroup heis() {
    return PermGroup::make(9, {Perm::parse_cycles("(1 4 7)(2 5 8)(3 6 9)", 9),
                               Perm::parse_cycles("(4 5 6)(7 9 8)", 9)});
}
PermGroup heis_base() {
    return PermGroup::make(9, {Perm::parse_cycles("(4 5 6)(7 9 8)", 9),
                               Perm::parse_cycles("(1 2 3)(4 5 6)(7 8 9)", 9)});
}

std::vector<Perm> map_images(const Perm& g, const Subgroup& q) {
    std::vector<Perm> v;
    for (const Perm& x : q.generators()) v.push_back(conj(g, x));
    return v;
}

// distinct conjugation maps Q -> R induced by a full element scan
std::set<std::vector<Perm>> map_scan(const std::vector<Perm>& elems, const Subgroup& q,
                                     const Subgroup& r) {
    std::set<std::vector<Perm>> maps;
    for (const Perm& g : elems) {
        bool into = true;
        for (const Perm& x : q.generators())
            if (!r.contains(conj(g, x))) {
                into = false;
                break;
            }
        if (into) maps.insert(map_images(g, q));
    }
    return maps;
}

bool control_scan(const PermGroup& g, const Subgroup& p) {
    uint32_t prime = smallest_prime_factor(p.order());
    Subgroup n = normalizer(g, p);
    std::vector<Perm> nelems = n.elements();
    for (const Subgroup& q : subgroups_of_pgroup(p, prime)) {
        if (q.is_trivial()) continue;
        for (const Perm& x : g.elements()) {
            bool into = true;
            for (const Perm& u : q.generators())
                if (!p.contains(conj(x, u))) {
                    into = false;
                    break;
                }
            if (!into) continue;
            bool reachable = false;
            for (const Perm& nn : nelems) {
                Perm c = nn.inverse() * x;
                bool central = true;
                for (const Perm& u : q.generators())
                    if (conj(c, u) != u) {
                        central = false;
                        break;
                    }
                if (central) {
                    reachable = true;
                    break;
                }
            }
            if (!reachable) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("fusion objects: all subgroups of D8, ascending order") {
    FusionSystem f = build_fusion(S4(), D8());
    REQUIRE(f.objects.size() == 10);
    CHECK(f.prime == 2);
    for (size_t i = 0; i + 1 < f.objects.size(); ++i)
        CHECK(f.objects[i].order() <= f.objects[i + 1].order());
    CHECK(f.objects[f.p_index].same_group_as(D8()));
    // identity morphisms present everywhere
    for (size_t a = 0; a < f.objects.size(); ++a) {
        bool has_id = false;
        for (const Perm& u : f.hom(a, a))
            if (u.is_identity()) has_id = true;
        CHECK(has_id);
    }
}

TEST_CASE("morphism sets match a full element scan") {
    PermGroup g = S4();
    FusionSystem f = build_fusion(g, D8());
    std::vector<Perm> elems = g.elements();
    for (size_t a = 0; a < f.objects.size(); ++a)
        for (size_t b = 0; b < f.objects.size(); ++b) {
            auto oracle_maps = map_scan(elems, f.objects[a], f.objects[b]);
            REQUIRE(f.hom(a, b).size() == oracle_maps.size());
            for (const Perm& rep : f.hom(a, b))
                CHECK(oracle_maps.count(map_images(rep, f.objects[a])) == 1);
        }
}

TEST_CASE("inner fusion of D8 matches the element scan") {
    PermGroup p = D8();
    FusionSystem f = build_fusion(p, p);
    std::vector<Perm> elems = p.elements();
    for (size_t a = 0; a < f.objects.size(); ++a)
        for (size_t b = 0; b < f.objects.size(); ++b)
            CHECK(f.hom(a, b).size() == map_scan(elems, f.objects[a], f.objects[b]).size());
    CHECK(is_controlled_by_normalizer(f).controlled);
    CHECK(is_saturated_given_control(f));
}

TEST_CASE("composition of sampled morphisms stays in the system") {
    FusionSystem f = build_fusion(S4(), D8());
    for (size_t a = 0; a < f.objects.size(); a += 2)
        for (size_t b = 0; b < f.objects.size(); b += 3)
            for (size_t c = 0; c < f.objects.size(); c += 2) {
                for (const Perm& g : f.hom(a, b))
                    for (const Perm& h : f.hom(b, c)) {
                        auto composite = map_images(h * g, f.objects[a]);
                        bool found = false;
                        for (const Perm& r : f.hom(a, c))
                            if (map_images(r, f.objects[a]) == composite) found = true;
                        CHECK(found);
                    }
            }
}

TEST_CASE("A4 with its Sylow-3: trivial automorphisms, controlled, saturated") {
    PermGroup g = A4();
    Subgroup p = sylow(g, 3);
    FusionSystem f = build_fusion(g, p);
    REQUIRE(f.objects.size() == 2);
    CHECK(f.hom(1, 1).size() == 1);
    CHECK(is_controlled_by_normalizer(f).controlled);
    CHECK(is_saturated_given_control(f));
}

TEST_CASE("S4 with D8: fusion escapes the normalizer at an order-2 subgroup") {
    FusionSystem f = build_fusion(S4(), D8());
    ControlResult r = is_controlled_by_normalizer(f);
    REQUIRE_FALSE(r.controlled);
    REQUIRE(r.witness_object.has_value());
    CHECK(r.witness_object->order() == 2);
    // the witness map really lands inside P
    for (const Perm& u : r.witness_object->generators())
        CHECK(D8().contains(conj(*r.witness_rep, u)));
    CHECK_THROWS_AS(is_saturated_given_control(f), std::invalid_argument);
}

TEST_CASE("control check agrees with the exhaustive scan") {
    struct Case {
        PermGroup g;
        Subgroup p;
    };
    std::vector<Case> cases = {
        {S4(), D8()},
        {S4(), V4()},
        {A4(), sylow(A4(), 3)},
        {A4(), V4()},
        {S3(), sylow(S3(), 2)},
        {heis(), heis_base()},
    };
    for (const auto& c : cases) {
        FusionSystem f = build_fusion(c.g, c.p);
        CHECK(is_controlled_by_normalizer(f).controlled == control_scan(c.g, c.p));
    }
}

TEST_CASE("normal base of the order-27 group: controlled but not saturated") {
    PermGroup g = heis();
    Subgroup p = heis_base();
    REQUIRE(g.order() == 27);
    REQUIRE(p.order() == 9);
    for (const Perm& t : g.generators()) CHECK(conjugate_subgroup(t, p).same_group_as(p));
    CHECK(centralizer(g, p).order() == 9);
    FusionSystem f = build_fusion(g, p);
    CHECK(is_controlled_by_normalizer(f).controlled);
    CHECK_FALSE(is_saturated_given_control(f));
}

TEST_CASE("fully normalized: central subgroup beats its conjugates") {
    FusionSystem f = build_fusion(S4(), D8());
    Subgroup moved = PermGroup::make(4, {Perm::parse_cycles("(1 2)(3 4)", 4)});
    Subgroup central = PermGroup::make(4, {Perm::parse_cycles("(1 3)(2 4)", 4)});
    CHECK_FALSE(is_fully_normalized(f, moved));
    CHECK(is_fully_normalized(f, central));
    CHECK(is_fully_normalized(f, f.p_index));
    CHECK(is_fully_normalized(f, size_t{0}));
}

TEST_CASE("under control every object is fully normalized") {
    struct Case {
        PermGroup g;
        Subgroup p;
    };
    std::vector<Case> cases = {
        {A4(), sylow(A4(), 3)},
        {A4(), V4()},
        {S3(), sylow(S3(), 2)},
        {heis(), heis_base()},
        {D8(), D8()},
    };
    for (const auto& c : cases) {
        FusionSystem f = build_fusion(c.g, c.p);
        REQUIRE(is_controlled_by_normalizer(f).controlled);
        for (size_t a = 0; a < f.objects.size(); ++a) CHECK(is_fully_normalized(f, a));
    }
}

TEST_CASE("frozen morphism counts in the S4-on-D8 system") {
    FusionSystem f = build_fusion(S4(), D8());
    size_t transposition = f.object_index(
        PermGroup::make(4, {Perm::parse_cycles("(1 3)", 4)}));
    CHECK(f.hom(transposition, f.p_index).size() == 2);
    CHECK(f.hom(f.p_index, f.p_index).size() == 4);
    CHECK(f.hom(0, f.p_index).size() == 1);
    size_t center = f.object_index(
        PermGroup::make(4, {Perm::parse_cycles("(1 3)(2 4)", 4)}));
    CHECK(f.hom(center, center).size() == 1);
}
