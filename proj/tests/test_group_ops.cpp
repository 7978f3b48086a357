#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "scott/group_ops.hpp"

using namespace scott;

namespace {

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
PermGroup S3_in_4() {
    return PermGroup::make(4, {Perm::parse_cycles("(1 2 3)", 4),
                               Perm::parse_cycles("(1 2)", 4)});
}

void check_same(const PermGroup& got, const std::vector<Perm>& oracle_elems) {
    REQUIRE(got.order() == oracle_elems.size());
    for (const Perm& e : oracle_elems) CHECK(got.contains(e));
}

}  // namespace

TEST_CASE("centralizer: C_S4(<(1 2)>) has order 4, matches scan") {
    PermGroup g = S4();
    PermGroup h = PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4)});
    Subgroup c = centralizer(g, h);
    CHECK(c.order() == 4);
    check_same(c, oracle::centralizer_scan(g, h));
}

TEST_CASE("centralizer against scans on several pairs") {
    auto pairs = std::vector<std::pair<PermGroup, PermGroup>>{
        {S4(), D8()},
        {S4(), PermGroup::make(4, {Perm::parse_cycles("(1 2)(3 4)", 4)})},
        {A4(), PermGroup::make(4, {Perm::parse_cycles("(1 2 3)", 4)})},
        {S4(), PermGroup::trivial(4)},
    };
    for (const auto& [g, h] : pairs)
        check_same(centralizer(g, h), oracle::centralizer_scan(g, h));
}

TEST_CASE("normalizer: N_A4(Sylow-3) order 3, N_S4(D8) order 8") {
    PermGroup a4 = A4();
    Subgroup syl3 = sylow(a4, 3);
    CHECK(syl3.order() == 3);
    CHECK(normalizer(a4, syl3).order() == 3);
    CHECK(normalizer(S4(), D8()).order() == 8);
}

TEST_CASE("normalizer against scans") {
    auto pairs = std::vector<std::pair<PermGroup, PermGroup>>{
        {S4(), PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4)})},
        {S4(), PermGroup::make(4, {Perm::parse_cycles("(1 2 3)", 4)})},
        {A4(), PermGroup::make(4, {Perm::parse_cycles("(1 2)(3 4)", 4)})},
    };
    for (const auto& [g, h] : pairs)
        check_same(normalizer(g, h), oracle::normalizer_scan(g, h));
}

TEST_CASE("sylow subgroups of S4") {
    PermGroup g = S4();
    CHECK(sylow(g, 2).order() == 8);
    CHECK(sylow(g, 3).order() == 3);
    CHECK(sylow(g, 5).order() == 1);
    CHECK(is_p_power(sylow(g, 2).order(), 2));
    // Deterministic: two runs agree elementwise.
    CHECK(sylow(g, 2).elements() == sylow(g, 2).elements());
}

TEST_CASE("conjugate subgroup") {
    PermGroup g = S4();
    Subgroup h = PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4)});
    Perm x = Perm::parse_cycles("(2 3)", 4);
    Subgroup hc = conjugate_subgroup(x, h);
    CHECK(hc.order() == 2);
    CHECK(hc.contains(Perm::parse_cycles("(1 3)", 4)));
}

TEST_CASE("transporter cosets: count times |C_G(Q)| equals transporter size") {
    PermGroup g = S4();
    Subgroup p = D8();
    auto subs = std::vector<PermGroup>{
        PermGroup::make(4, {Perm::parse_cycles("(1 2)(3 4)", 4)}),
        PermGroup::make(4, {Perm::parse_cycles("(1 3)", 4)}),
        PermGroup::make(4, {Perm::parse_cycles("(1 2 3 4)", 4)}),
        PermGroup::trivial(4),
    };
    for (const auto& q : subs) {
        auto reps = transporter_cosets(g, q, p);
        auto all = oracle::transporter_scan(g, q, p);
        BigInt c = centralizer(g, q).order();
        CHECK(BigInt(reps.size()) * c == BigInt(all.size()));
        for (const Perm& r : reps)
            for (const Perm& qg : q.generators()) CHECK(p.contains(conj(r, qg)));
        // Representatives induce pairwise distinct maps.
        for (size_t i = 0; i < reps.size(); ++i)
            for (size_t j = i + 1; j < reps.size(); ++j)
                CHECK(!centralizer(g, q).contains(reps[i].inverse() * reps[j]));
    }
}

TEST_CASE("subgroup lattice of small p-groups") {
    PermGroup c2 = PermGroup::make(2, {Perm::parse_cycles("(1 2)", 2)});
    CHECK(subgroups_of_pgroup(c2, 2).size() == 2);
    PermGroup v4 = PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4),
                                       Perm::parse_cycles("(3 4)", 4)});
    CHECK(subgroups_of_pgroup(v4, 2).size() == 5);
    CHECK(subgroups_of_pgroup(D8(), 2).size() == 10);
    PermGroup c3 = PermGroup::make(3, {Perm::parse_cycles("(1 2 3)", 3)});
    CHECK(subgroups_of_pgroup(c3, 3).size() == 2);
    CHECK_THROWS_AS(subgroups_of_pgroup(S3_in_4(), 2), std::invalid_argument);
}

TEST_CASE("subgroup lattice matches closure-growth scan") {
    for (const PermGroup& p : {D8(), PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4),
                                                         Perm::parse_cycles("(3 4)", 4)})}) {
        auto subs = subgroups_of_pgroup(p, 2);
        auto brute = oracle::all_subgroups_scan(p);
        CHECK(subs.size() == brute.size());
    }
}

TEST_CASE("subgroup lattice canonical order is stable and sorted by order") {
    auto a = subgroups_of_pgroup(D8(), 2);
    auto b = subgroups_of_pgroup(D8(), 2);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].same_group_as(b[i]));
        if (i + 1 < a.size()) CHECK(a[i].order() <= a[i + 1].order());
    }
}

TEST_CASE("p-nilpotency: S3 is 2-nilpotent but not 3-nilpotent") {
    PermGroup s3 = PermGroup::make(3, {Perm::parse_cycles("(1 2 3)", 3),
                                       Perm::parse_cycles("(1 2)", 3)});
    CHECK(is_p_nilpotent(s3, 2));
    CHECK(!is_p_nilpotent(s3, 3));
    CHECK(is_p_nilpotent(s3, 2) == oracle::p_nilpotent_scan(s3, 2));
    CHECK(is_p_nilpotent(s3, 3) == oracle::p_nilpotent_scan(s3, 3));
}

TEST_CASE("p-nilpotency agrees with the normal-complement scan") {
    auto cases = std::vector<std::pair<PermGroup, uint32_t>>{
        {S4(), 2}, {S4(), 3}, {A4(), 2}, {A4(), 3}, {D8(), 2},
    };
    for (const auto& [g, p] : cases)
        CHECK(is_p_nilpotent(g, p) == oracle::p_nilpotent_scan(g, p));
}

TEST_CASE("product group and diagonal subgroup") {
    PermGroup s3 = PermGroup::make(3, {Perm::parse_cycles("(1 2 3)", 3),
                                       Perm::parse_cycles("(1 2)", 3)});
    ProductGroup pr = product_group(s3, s3);
    CHECK(pr.group.order() == 36);
    CHECK(pr.group.degree() == 6);
    CHECK(pr.group.contains(pr.embed1(Perm::parse_cycles("(1 2)", 3))));
    CHECK(pr.group.contains(pr.embed2(Perm::parse_cycles("(1 2 3)", 3))));
    // Embeddings commute elementwise.
    Perm a = pr.embed1(Perm::parse_cycles("(1 2)", 3));
    Perm b = pr.embed2(Perm::parse_cycles("(1 2 3)", 3));
    CHECK(a * b == b * a);

    Subgroup c3 = PermGroup::make(3, {Perm::parse_cycles("(1 2 3)", 3)});
    Subgroup diag = diagonal_subgroup(c3, pr);
    CHECK(diag.order() == 3);
    CHECK(pr.group.contains(diag.generators()[0]));
    CHECK(diag.generators()[0].to_cycles() == "(1 2 3)(4 5 6)");
}

TEST_CASE("join multiplies orders only on compatible parts") {
    PermGroup a = PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4)});
    PermGroup b = PermGroup::make(4, {Perm::parse_cycles("(3 4)", 4)});
    CHECK(join(a, b).order() == 4);
}
