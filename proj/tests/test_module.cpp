#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "scott/module.hpp"

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
PermGroup C4() {
    return PermGroup::make(4, {Perm::parse_cycles("(1 2 3 4)", 4)});
}
PermGroup V4() {
    return PermGroup::make(4, {Perm::parse_cycles("(1 2)(3 4)", 4),
                               Perm::parse_cycles("(1 3)(2 4)", 4)});
}

std::multiset<uint32_t> dims_of(const std::vector<GModule>& parts) {
    std::multiset<uint32_t> d;
    for (const GModule& m : parts) d.insert(m.dim());
    return d;
}

GModule regular_module(const PermGroup& g, const FieldPtr& f) {
    auto x = std::make_shared<const GSet>(GSet::cosets(g, PermGroup::trivial(g.degree())));
    return GModule::perm_module(f, x);
}

GModule coset_module(const PermGroup& g, const Subgroup& h, const FieldPtr& f) {
    auto x = std::make_shared<const GSet>(GSet::cosets(g, h));
    return GModule::perm_module(f, x);
}

GModule trivial_module(const PermGroup& g, const FieldPtr& f) {
    std::vector<Mat> acts(g.generators().size(), Mat::identity(f, 1));
    return GModule::plain(f, g, 1, std::move(acts));
}

}  // namespace

TEST_CASE("coset action: points, transitivity, homomorphism") {
    PermGroup g = S4();
    Subgroup h = PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4)});
    GSet x = GSet::cosets(g, h);
    REQUIRE(x.size() == 12);
    REQUIRE(x.coset_reps().size() == 12);
    // canonical reps are sorted and pairwise in distinct cosets
    for (size_t i = 0; i + 1 < x.coset_reps().size(); ++i)
        CHECK(x.coset_reps()[i] < x.coset_reps()[i + 1]);
    std::vector<Perm> elems = g.elements();
    for (size_t i = 0; i < elems.size(); i += 5)
        for (size_t j = 0; j < elems.size(); j += 7)
            CHECK(x.act(elems[i] * elems[j]) == x.act(elems[i]) * x.act(elems[j]));
    CHECK_THROWS(x.act(Perm::parse_cycles("(1 2 3 4 5)", 5)));
}

TEST_CASE("coset action: fixed points match a direct coset scan") {
    PermGroup g = S4();
    Subgroup h = PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4)});
    Subgroup q = PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4)});
    GSet x = GSet::cosets(g, h);
    // Ht is fixed by q iff t q t^-1 lies in H, for every q in Q
    size_t direct = 0;
    for (const Perm& t : x.coset_reps()) {
        bool fixed = true;
        for (const Perm& u : q.elements())
            if (!h.contains(t * u * t.inverse())) fixed = false;
        if (fixed) ++direct;
    }
    CHECK(x.fixed_points(q).size() == direct);
    CHECK(x.fixed_points(PermGroup::trivial(4)).size() == 12);
}

TEST_CASE("right coset representatives cover the group") {
    PermGroup g = S4();
    Subgroup r = PermGroup::make(4, {Perm::parse_cycles("(1 2 3)", 4)});
    auto reps = right_coset_reps(r, g);
    REQUIRE(reps.size() == 8);
    std::set<Perm> seen;
    for (const Perm& t : reps)
        for (const Perm& u : r.elements()) seen.insert(u * t);
    CHECK(seen.size() == 24);
}

TEST_CASE("pair orbit count equals the double coset count") {
    auto f2 = field(2);
    struct Case {
        PermGroup g;
        Subgroup h;
    };
    std::vector<Case> cases = {
        {S4(), PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4)})},
        {S4(), PermGroup::make(4, {Perm::parse_cycles("(1 2 3)", 4)})},
        {A4(), PermGroup::make(4, {Perm::parse_cycles("(1 2 3)", 4)})},
        {S3(), PermGroup::make(3, {Perm::parse_cycles("(1 2)", 3)})},
    };
    for (const auto& c : cases) {
        GSet x = GSet::cosets(c.g, c.h);
        uint32_t cnt = 0;
        x.pair_orbit_labels(&cnt);
        CHECK(cnt == oracle::double_coset_count(c.g, c.h));
        CHECK(coset_module(c.g, c.h, f2).endo_algebra().dim() == cnt);
    }
}

TEST_CASE("permutation module action matrices are the point permutations") {
    auto f3 = field(3);
    PermGroup g = S3();
    GModule m = regular_module(g, f3);
    REQUIRE(m.dim() == 6);
    for (const Perm& u : g.elements()) {
        Mat a = m.act(u);
        // permutation matrix: each row has a single 1
        for (uint32_t i = 0; i < a.rows(); ++i) {
            uint32_t ones = 0;
            for (uint32_t j = 0; j < a.cols(); ++j)
                if (a.at(i, j) != 0) {
                    CHECK(a.at(i, j) == f3->one());
                    ++ones;
                }
            CHECK(ones == 1);
        }
    }
    for (const Perm& u : g.elements())
        for (const Perm& v : g.generators()) CHECK(m.act(u * v) == m.act(u) * m.act(v));
}

TEST_CASE("fixed rows of a transitive permutation module are the all-ones line") {
    auto f2 = field(2);
    GModule m = coset_module(S4(), PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4)}), f2);
    Mat fx = m.fixed_rows(S4());
    REQUIRE(fx.rows() == 1);
    for (uint32_t j = 0; j < fx.cols(); ++j) CHECK(fx.at(0, j) == f2->one());
}

TEST_CASE("relative trace on the regular C4 module over GF(2)") {
    auto f2 = field(2);
    PermGroup g = C4();
    GModule m = regular_module(g, f2);
    Subgroup c2 = PermGroup::make(4, {Perm::parse_cycles("(1 3)(2 4)", 4)});
    CHECK(m.fixed_rows(c2).rows() == 2);
    CHECK(m.fixed_rows(g).rows() == 1);
    CHECK(m.relative_trace_image(c2, g).rows() == 1);
    CHECK(m.relative_trace_image(PermGroup::trivial(4), c2).rows() == 2);
    // free module: the quotient dies at every nontrivial p-subgroup
    CHECK(m.brauer_dim(c2) == 0);
    CHECK(m.brauer_dim(g) == 0);
    CHECK(m.brauer_dim(PermGroup::trivial(4)) == 4);
}

TEST_CASE("quotient of a permutation module counts fixed points, both paths") {
    auto f2 = field(2);
    PermGroup g = S4();
    Subgroup h = PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4)});
    GModule m = coset_module(g, h, f2);
    std::vector<Subgroup> qs = {
        PermGroup::trivial(4),
        PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4)}),
        PermGroup::make(4, {Perm::parse_cycles("(1 2)(3 4)", 4)}),
        PermGroup::make(4, {Perm::parse_cycles("(1 2 3 4)", 4)}),
        V4(),
    };
    for (const Subgroup& q : qs) {
        std::vector<uint32_t> fp = m.provenance()->gset->fixed_points(q);
        Subgroup l = join(q, centralizer(g, q));
        GModule fast = m.brauer_quotient(q, l);
        GModule gen = m.brauer_general(q, l);
        CHECK(fast.dim() == fp.size());
        CHECK(gen.dim() == fp.size());
        CHECK(m.brauer_dim(q) == fp.size());
    }
}

TEST_CASE("quotient rejects bad arguments") {
    auto f2 = field(2);
    GModule m = coset_module(S4(), PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4)}), f2);
    Subgroup c3 = PermGroup::make(4, {Perm::parse_cycles("(1 2 3)", 4)});
    CHECK_THROWS_AS(m.brauer_quotient(c3, S4()), std::invalid_argument);
    Subgroup q = PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4)});
    // S4 does not normalize <(1 2)>
    CHECK_THROWS_AS(m.brauer_quotient(q, S4()), std::invalid_argument);
}

TEST_CASE("endomorphism algebra: orbit-pair span equals the solved commutant") {
    struct Case {
        PermGroup g;
        Subgroup h;
        FieldPtr f;
    };
    std::vector<Case> cases = {
        {S3(), PermGroup::make(3, {Perm::parse_cycles("(1 2)", 3)}), field(2)},
        {S4(), PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4)}), field(2)},
        {S4(), PermGroup::make(4, {Perm::parse_cycles("(1 2 3)", 4)}), field(3)},
        {A4(), PermGroup::make(4, {Perm::parse_cycles("(1 2 3)", 4)}), field(2)},
        {C4(), PermGroup::trivial(4), field(2)},
    };
    for (const auto& c : cases) {
        GModule m = coset_module(c.g, c.h, c.f);
        MatAlgebra orb = m.endo_algebra();
        Mat direct = solve_commutant(m.gen_actions(), m.dim(), c.f);
        CHECK(orb.basis_rows() == direct);
        // constraining over every element changes nothing
        std::vector<Mat> all;
        for (const Perm& u : c.g.elements()) all.push_back(m.act(u));
        CHECK(solve_commutant(all, m.dim(), c.f) == direct);
    }
}

TEST_CASE("decompose: natural S3 over GF(2) splits 1 + 2") {
    auto f2 = field(2);
    GModule m = coset_module(S3(), PermGroup::make(3, {Perm::parse_cycles("(1 2)", 3)}), f2);
    auto parts = m.decompose();
    CHECK(dims_of(parts) == std::multiset<uint32_t>{1, 2});
    // dimensions add up and each summand is certified indecomposable
    for (const GModule& p : parts) CHECK(p.endo_algebra().local_summary().local);
}

TEST_CASE("decompose: regular S3 over GF(3) gives two blocks of dimension 3") {
    auto f3 = field(3);
    GModule m = regular_module(S3(), f3);
    auto parts = m.decompose();
    CHECK(dims_of(parts) == std::multiset<uint32_t>{3, 3});
}

TEST_CASE("decompose: regular C3 over GF(2) and over GF(4)") {
    PermGroup c3 = PermGroup::make(3, {Perm::parse_cycles("(1 2 3)", 3)});
    CHECK(dims_of(regular_module(c3, field(2)).decompose()) ==
          std::multiset<uint32_t>{1, 2});
    // the quadratic part picks up cube roots of unity over GF(4)
    CHECK(dims_of(regular_module(c3, field(2, 2)).decompose()) ==
          std::multiset<uint32_t>{1, 1, 1});
}

TEST_CASE("decompose: local cases stay whole") {
    CHECK(regular_module(C4(), field(2)).decompose().size() == 1);
    CHECK(regular_module(V4(), field(2)).decompose().size() == 1);
    PermGroup c2 = PermGroup::make(2, {Perm::parse_cycles("(1 2)", 2)});
    CHECK(regular_module(c2, field(2, 2)).decompose().size() == 1);
}

TEST_CASE("decompose: trivial double splits into two lines") {
    auto f2 = field(2);
    PermGroup g = S3();
    std::vector<Mat> acts(g.generators().size(), Mat::identity(f2, 2));
    GModule m = GModule::plain(f2, g, 2, std::move(acts));
    auto parts = m.decompose();
    CHECK(dims_of(parts) == std::multiset<uint32_t>{1, 1});
}

TEST_CASE("decompose is stable across seeds and runs") {
    auto f2 = field(2);
    GModule m = coset_module(S4(), PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4)}), f2);
    auto base = dims_of(m.decompose(0));
    uint32_t total = 0;
    for (uint32_t d : base) total += d;
    CHECK(total == 12);
    for (uint64_t seed : {1ull, 2ull, 3ull, 4ull}) CHECK(dims_of(m.decompose(seed)) == base);
    // identical seeds give identical embeddings
    auto a = m.decompose(7);
    auto b = m.decompose(7);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].embedding() == b[i].embedding());
}

TEST_CASE("distinguished summand: S3 at p = 2 is the all-ones line") {
    auto f2 = field(2);
    ScottData sd = scott_module(S3(), PermGroup::make(3, {Perm::parse_cycles("(1 2)", 3)}), f2);
    REQUIRE(sd.module().dim() == 1);
    const Mat& emb = sd.module().embedding();
    for (uint32_t j = 0; j < 3; ++j) CHECK(emb.at(0, j) == f2->one());
}

TEST_CASE("distinguished summand: regular S3 at p = 3 has dimension 3, trivial vertex") {
    auto f3 = field(3);
    ScottData sd = scott_module(S3(), PermGroup::trivial(3), f3);
    CHECK(sd.module().dim() == 3);
    CHECK(vertex(sd.module()).is_trivial());
}

TEST_CASE("distinguished summand: A4 on the cosets of its Sylow-3 is projective") {
    auto f2 = field(2);
    Subgroup c3 = PermGroup::make(4, {Perm::parse_cycles("(1 2 3)", 4)});
    ScottData sd = scott_module(A4(), c3, f2);
    // induced from a 2'-subgroup and indecomposable, so the whole module
    CHECK(sd.summands.size() == 1);
    CHECK(sd.module().dim() == 4);
    CHECK(vertex(sd.module()).is_trivial());
    CHECK(sd.module().brauer_dim(V4()) == 0);
}

TEST_CASE("distinguished summand: A4 over its Klein four subgroup") {
    auto f2 = field(2);
    ScottData sd = scott_module(A4(), V4(), f2);
    CHECK(sd.module().dim() == 1);
    Subgroup vx = vertex(sd.module());
    CHECK(vx.order() == 4);
    CHECK(vx.same_group_as(V4()));
}

TEST_CASE("distinguished summand: S4 on the cosets of S3, vertex of order 2") {
    auto f2 = field(2);
    Subgroup s3 = PermGroup::make(4, {Perm::parse_cycles("(1 2 3)", 4),
                                      Perm::parse_cycles("(1 2)", 4)});
    ScottData sd = scott_module(S4(), s3, f2);
    CHECK(sd.summands.size() == 1);
    CHECK(sd.module().dim() == 4);
    CHECK(vertex(sd.module()).order() == 2);
}

TEST_CASE("restriction: keeps dimensions, provenance path agrees with plain") {
    auto f2 = field(2);
    PermGroup g = S3();
    Subgroup c3 = PermGroup::make(3, {Perm::parse_cycles("(1 2 3)", 3)});
    GModule m = coset_module(g, PermGroup::make(3, {Perm::parse_cycles("(1 2)", 3)}), f2);
    GModule r = m.restrict_to(c3);
    CHECK(r.dim() == 3);
    CHECK(dims_of(r.decompose()) == std::multiset<uint32_t>{1, 2});
    for (const Perm& u : c3.elements()) CHECK(r.act(u) == m.act(u));
}

TEST_CASE("restricting the distinguished summand to a vertex keeps it alive") {
    auto f2 = field(2);
    ScottData sd = scott_module(A4(), V4(), f2);
    GModule r = sd.module().restrict_to(V4());
    CHECK(r.dim() == 1);
    CHECK(r.brauer_dim(V4()) == 1);
}

TEST_CASE("hom space dimensions via frobenius reciprocity") {
    auto f2 = field(2);
    PermGroup g = S4();
    Subgroup s3 = PermGroup::make(4, {Perm::parse_cycles("(1 2 3)", 4),
                                      Perm::parse_cycles("(1 2)", 4)});
    GModule m = coset_module(g, s3, f2);
    GModule triv = trivial_module(g, f2);
    CHECK(hom_space(m, triv).rows() == 1);
    CHECK(hom_space(triv, m).rows() == 1);
    CHECK(hom_space(m, m).rows() == 2);
}

TEST_CASE("hom space between distinct simple summands is zero") {
    auto f2 = field(2);
    GModule m = coset_module(S3(), PermGroup::make(3, {Perm::parse_cycles("(1 2)", 3)}), f2);
    auto parts = m.decompose();
    REQUIRE(parts.size() == 2);
    const GModule& a = parts[0].dim() == 1 ? parts[0] : parts[1];
    const GModule& b = parts[0].dim() == 1 ? parts[1] : parts[0];
    CHECK(hom_space(a, b).rows() == 0);
    CHECK(hom_space(b, a).rows() == 0);
}

TEST_CASE("quotient of a summand transports the idempotent") {
    auto f2 = field(2);
    PermGroup g = S4();
    Subgroup h = PermGroup::make(4, {Perm::parse_cycles("(1 2)", 4)});
    GModule m = coset_module(g, h, f2);
    auto parts = m.decompose();
    Subgroup q = PermGroup::make(4, {Perm::parse_cycles("(1 2)(3 4)", 4)});
    Subgroup l = join(q, centralizer(g, q));
    uint32_t total = 0;
    for (const GModule& p : parts) {
        GModule bq = p.brauer_quotient(q, l);
        GModule direct = p.brauer_general(q, l);
        REQUIRE(bq.dim() == direct.dim());
        total += bq.dim();
    }
    // quotients of the summands tile the quotient of the whole module
    CHECK(total == m.brauer_dim(q));
}

TEST_CASE("indecomposability probe matches the summand count") {
    auto f2 = field(2);
    GModule m = coset_module(S3(), PermGroup::make(3, {Perm::parse_cycles("(1 2)", 3)}), f2);
    CHECK_FALSE(m.is_indecomposable());
    CHECK(regular_module(C4(), f2).is_indecomposable());
    CHECK_FALSE(GModule().is_indecomposable());
}
