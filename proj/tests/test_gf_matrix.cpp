#include <catch_amalgamated.hpp>
#include <random>

#include "scott/matrix.hpp"

using namespace scott;
using Elt = GField::Elt;

namespace {

Mat random_mat(const FieldPtr& f, uint32_t n, std::mt19937& rng) {
    Mat m(f, n, n);
    std::uniform_int_distribution<uint32_t> dist(0, f->q() - 1);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) m.at(i, j) = static_cast<Elt>(dist(rng));
    return m;
}

Mat cyclic_shift(const FieldPtr& f, uint32_t n) {
    Mat m(f, n, n);
    for (uint32_t i = 0; i < n; ++i) m.at(i, (i + 1) % n) = f->one();
    return m;
}

}  // namespace

TEST_CASE("field axioms hold exhaustively for small q") {
    for (auto [p, m] : {std::pair<uint32_t, uint32_t>{2, 1}, {3, 1}, {2, 2},
                        {2, 3}, {3, 2}, {5, 1}, {2, 4}}) {
        FieldPtr f = field(p, m);
        uint32_t q = f->q();
        for (uint32_t a = 0; a < q; ++a) {
            CHECK(f->add(static_cast<Elt>(a), 0) == a);
            CHECK(f->mul(static_cast<Elt>(a), 1) == a);
            CHECK(f->add(static_cast<Elt>(a), f->neg(static_cast<Elt>(a))) == 0);
            if (a != 0) CHECK(f->mul(static_cast<Elt>(a), f->inv(static_cast<Elt>(a))) == 1);
            for (uint32_t b = 0; b < q; ++b) {
                CHECK(f->add(static_cast<Elt>(a), static_cast<Elt>(b)) ==
                      f->add(static_cast<Elt>(b), static_cast<Elt>(a)));
                CHECK(f->mul(static_cast<Elt>(a), static_cast<Elt>(b)) ==
                      f->mul(static_cast<Elt>(b), static_cast<Elt>(a)));
                for (uint32_t c = 0; c < q; ++c) {
                    Elt ea = static_cast<Elt>(a), eb = static_cast<Elt>(b),
                        ec = static_cast<Elt>(c);
                    CHECK(f->mul(f->mul(ea, eb), ec) == f->mul(ea, f->mul(eb, ec)));
                    CHECK(f->mul(ea, f->add(eb, ec)) ==
                          f->add(f->mul(ea, eb), f->mul(ea, ec)));
                }
            }
        }
    }
}

TEST_CASE("modulus polynomials are the frozen minimal choices") {
    CHECK(field(2, 2)->modulus() == std::vector<uint32_t>{1, 1, 1});
    CHECK(field(2, 3)->modulus() == std::vector<uint32_t>{1, 1, 0, 1});
    CHECK(field(3, 2)->modulus() == std::vector<uint32_t>{1, 0, 1});
    CHECK(field(2, 1)->modulus() == std::vector<uint32_t>{0, 1});
}

TEST_CASE("frobenius is a field automorphism fixing the prime subfield") {
    for (auto [p, m] : {std::pair<uint32_t, uint32_t>{2, 2}, {3, 2}, {2, 3}}) {
        FieldPtr f = field(p, m);
        for (uint32_t a = 0; a < f->q(); ++a) {
            Elt ea = static_cast<Elt>(a);
            CHECK(f->frobenius(ea) == f->pow(ea, p));
            CHECK(f->frobenius(f->inv_frobenius(ea)) == ea);
            CHECK(f->frobenius_iter(ea, m) == ea);  // x^(p^m) = x
            for (uint32_t b = 0; b < f->q(); ++b) {
                Elt eb = static_cast<Elt>(b);
                CHECK(f->frobenius(f->add(ea, eb)) ==
                      f->add(f->frobenius(ea), f->frobenius(eb)));
                CHECK(f->frobenius(f->mul(ea, eb)) ==
                      f->mul(f->frobenius(ea), f->frobenius(eb)));
            }
        }
        for (uint32_t c = 0; c < p; ++c) CHECK(f->frobenius(static_cast<Elt>(c)) == c);
    }
}

TEST_CASE("field construction rejects bad parameters") {
    CHECK_THROWS_AS(GField(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(GField(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(GField(2, 10), std::invalid_argument);  // over the cap
    CHECK_THROWS_AS(field(2)->inv(0), std::invalid_argument);
}

TEST_CASE("echelon form invariants") {
    std::mt19937 rng(7);
    for (auto [p, m] : {std::pair<uint32_t, uint32_t>{2, 1}, {3, 1}, {2, 2}}) {
        FieldPtr f = field(p, m);
        for (int t = 0; t < 20; ++t) {
            Mat a = random_mat(f, 5, rng);
            Echelon e = echelon(a);
            // Pivot structure.
            for (uint32_t i = 0; i < e.rank(); ++i) {
                CHECK(e.basis.at(i, e.pivots[i]) == 1);
                for (uint32_t r = 0; r < e.rank(); ++r)
                    if (r != i) CHECK(e.basis.at(r, e.pivots[i]) == 0);
                if (i + 1 < e.rank()) CHECK(e.pivots[i] < e.pivots[i + 1]);
            }
            // Same row space, and echelon is idempotent.
            for (uint32_t i = 0; i < a.rows(); ++i) CHECK(e.contains_row(a.row(i)));
            CHECK(echelon(e.basis).basis == e.basis);
            // Coordinates round-trip.
            for (uint32_t i = 0; i < a.rows(); ++i) {
                auto c = e.coords(a.row(i));
                REQUIRE(c.has_value());
                CHECK(*c * e.basis == a.row(i));
            }
        }
    }
}

TEST_CASE("kernel basis annihilates and has complementary dimension") {
    std::mt19937 rng(11);
    FieldPtr f = field(3);
    for (int t = 0; t < 25; ++t) {
        Mat a = random_mat(f, 6, rng);
        Mat k = kernel_basis(a);
        CHECK(k.rows() + rank(a) == 6);
        CHECK((k.rows() == 0 || (k * a).is_zero()));
        CHECK(row_space_basis(k) == k);
    }
}

TEST_CASE("matrix inverse") {
    std::mt19937 rng(13);
    FieldPtr f = field(5);
    int found = 0;
    for (int t = 0; t < 40 && found < 10; ++t) {
        Mat a = random_mat(f, 4, rng);
        if (determinant(a) == 0) {
            CHECK_THROWS_AS(inverse(a), std::invalid_argument);
            continue;
        }
        ++found;
        CHECK(a * inverse(a) == Mat::identity(f, 4));
        CHECK(inverse(a) * a == Mat::identity(f, 4));
    }
    CHECK(found >= 10);
}

TEST_CASE("char poly: companion matrices and Cayley-Hamilton") {
    FieldPtr f2 = field(2);
    // Companion matrix of x^3 + x + 1 acting on rows: e_i -> e_{i+1},
    // e_2 -> coefficient row.
    Mat c(f2, 3, 3);
    c.at(0, 1) = 1;
    c.at(1, 2) = 1;
    c.at(2, 0) = 1;
    c.at(2, 1) = 1;
    auto cp = char_poly(c);
    CHECK(cp == std::vector<Elt>{1, 1, 0, 1});

    std::mt19937 rng(17);
    for (auto [p, m] : {std::pair<uint32_t, uint32_t>{2, 1}, {3, 1}, {3, 2}}) {
        FieldPtr f = field(p, m);
        for (int t = 0; t < 10; ++t) {
            Mat a = random_mat(f, 5, rng);
            auto poly = char_poly(a);
            REQUIRE(poly.size() == 6);
            CHECK(poly[5] == 1);
            // Constant term is (-1)^n det.
            Elt sign = (5 % 2 == 0) ? f->one() : f->neg(f->one());
            CHECK(poly[0] == f->mul(sign, determinant(a)));
            // Cayley-Hamilton: evaluate at the matrix.
            Mat acc(f, 5, 5);
            for (size_t d = poly.size(); d-- > 0;) {
                acc = acc * a;
                Mat term = Mat::identity(f, 5).scaled(poly[d]);
                acc = acc + term;
            }
            CHECK(acc.is_zero());
        }
    }
}

TEST_CASE("char poly of triangular matrix reads off the diagonal") {
    FieldPtr f = field(7);
    Mat a(f, 3, 3);
    a.at(0, 0) = 2;
    a.at(1, 1) = 3;
    a.at(2, 2) = 2;
    a.at(0, 2) = 5;
    auto poly = char_poly(a);
    // (x-2)^2 (x-3) = x^3 - 7x^2 + 16x - 12 = x^3 + 2x + 2 mod 7.
    CHECK(poly == std::vector<Elt>{2, 2, 0, 1});
}

TEST_CASE("spin closes a subspace under the action") {
    FieldPtr f = field(2);
    Mat shift = cyclic_shift(f, 4);
    Mat e0(f, 1, 4);
    e0.at(0, 0) = 1;
    CHECK(spin(e0, {shift}).rows() == 4);
    Mat ones(f, 1, 4);
    for (uint32_t j = 0; j < 4; ++j) ones.at(0, j) = 1;
    Mat s = spin(ones, {shift});
    CHECK(s.rows() == 1);
    CHECK(s == row_space_basis(ones));
    // Spin output is action-stable.
    Echelon e = echelon(spin(e0, {shift}));
    for (uint32_t i = 0; i < e.rank(); ++i) CHECK(e.contains_row(e.basis.row(i) * shift));
}

TEST_CASE("commutant: known dimensions and brute-force agreement") {
    FieldPtr f2 = field(2);
    // Companion matrix of the irreducible x^2 + x + 1: commutant is GF(4),
    // dimension 2 over GF(2).
    Mat c(f2, 2, 2);
    c.at(0, 1) = 1;
    c.at(1, 0) = 1;
    c.at(1, 1) = 1;
    Mat basis = solve_commutant({c}, 2, f2);
    CHECK(basis.rows() == 2);

    // Brute force over all 2x2 matrices.
    uint32_t count = 0;
    for (uint32_t bits = 0; bits < 16; ++bits) {
        Mat x(f2, 2, 2);
        for (uint32_t k = 0; k < 4; ++k) x.at(k / 2, k % 2) = (bits >> k) & 1;
        if (c * x == x * c) {
            ++count;
            CHECK(echelon(basis).contains_row(flatten(x)));
        }
    }
    CHECK(count == 4);  // q^dim

    // Cyclic shift on GF(3)^3: commutant is the polynomial algebra in the
    // shift, dimension 3.
    FieldPtr f3 = field(3);
    Mat sh = cyclic_shift(f3, 3);
    CHECK(solve_commutant({sh}, 3, f3).rows() == 3);

    // No generators: everything commutes.
    CHECK(solve_commutant({}, 2, f2).rows() == 4);
}

TEST_CASE("joint kernel of permutation displacement matrices counts orbits") {
    FieldPtr f = field(3);
    // S_3 natural action: fixed vectors = span of all-ones, one orbit.
    Mat g1(f, 3, 3), g2(f, 3, 3);
    // (1 2 3) and (1 2) as row-action matrices rho(g)_{x, g(x)} = 1.
    g1.at(0, 1) = 1;
    g1.at(1, 2) = 1;
    g1.at(2, 0) = 1;
    g2.at(0, 1) = 1;
    g2.at(1, 0) = 1;
    g2.at(2, 2) = 1;
    Mat id = Mat::identity(f, 3);
    Mat fixed = kernel_of_all({g1 - id, g2 - id});
    CHECK(fixed.rows() == 1);
    for (uint32_t j = 0; j < 3; ++j) CHECK(fixed.at(0, j) == 1);
}
