#include <catch_amalgamated.hpp>

#include "scott/perm_group.hpp"

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

}  // namespace

TEST_CASE("orders of standard groups") {
    CHECK(S4().order() == 24);
    CHECK(A4().order() == 12);
    CHECK(PermGroup::trivial(5).order() == 1);
    CHECK(PermGroup::make(4, {Perm::identity(4)}).order() == 1);
}

TEST_CASE("membership by sifting") {
    PermGroup g = A4();
    CHECK(g.contains(Perm::parse_cycles("(1 2)(3 4)", 4)));
    CHECK(!g.contains(Perm::parse_cycles("(1 2)", 4)));
    CHECK(g.contains(Perm::identity(4)));
}

TEST_CASE("element enumeration matches order and has no repeats") {
    PermGroup g = S4();
    std::vector<Perm> elems = g.elements();
    CHECK(elems.size() == 24);
    std::sort(elems.begin(), elems.end());
    CHECK(std::adjacent_find(elems.begin(), elems.end()) == elems.end());
    for (const Perm& e : elems) CHECK(g.contains(e));
}

TEST_CASE("sift words evaluate back to the element") {
    PermGroup g = S4();
    for (const Perm& e : g.elements()) {
        auto w = g.sift_word(e);
        REQUIRE(w.has_value());
        CHECK(g.evaluate_word(*w) == e);
    }
    CHECK(!g.sift_word(Perm::parse_cycles("(1 2)", 5)).has_value());
    PermGroup a = A4();
    CHECK(!a.sift_word(Perm::parse_cycles("(1 2)", 4)).has_value());
}

TEST_CASE("chain is deterministic") {
    PermGroup g1 = S4(), g2 = S4();
    REQUIRE(g1.chain().depth() == g2.chain().depth());
    for (size_t i = 0; i < g1.chain().depth(); ++i) {
        CHECK(g1.chain().base_point(i) == g2.chain().base_point(i));
        CHECK(g1.chain().level(i).orbit == g2.chain().level(i).orbit);
    }
    CHECK(g1.elements() == g2.elements());
}

TEST_CASE("same_group_as compares by mutual membership") {
    PermGroup a = PermGroup::make(3, {Perm::parse_cycles("(1 2 3)", 3)});
    PermGroup b = PermGroup::make(3, {Perm::parse_cycles("(1 3 2)", 3)});
    CHECK(a.same_group_as(b));
    CHECK(!a.same_group_as(PermGroup::trivial(3)));
}

TEST_CASE("large cyclic group order stays exact") {
    // 30 disjoint cycles of pairwise coprime-ish lengths would overflow naive
    // counters; the chain multiplies orbit sizes as big integers.
    std::vector<uint32_t> img(100);
    for (uint32_t i = 0; i < 100; ++i) img[i] = (i % 10 == 9) ? i - 9 : i + 1;
    PermGroup g = PermGroup::make(100, {Perm(img)});
    CHECK(g.order() == 10);
}
