#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "scott/matrix.hpp"
#include "scott/poly.hpp"

namespace scott {

// Associative unital algebra given by a spanning set of matrices in some
// faithful representation. The stored basis is the canonical echelon of the
// flattened span, so two routes to the same algebra produce identical
// objects. Elements are handled as coordinate rows of length dim().
//
// The unit need not be the identity matrix: corner algebras e A e carry
// their idempotent as unit.
class MatAlgebra {
public:
    MatAlgebra() = default;

    // Span is taken as given (must be multiplicatively closed); checked
    // when SCOTT_SELFCHECK is on.
    static MatAlgebra from_span(FieldPtr f, uint32_t rep_dim, const std::vector<Mat>& span,
                                const Mat& unit) {
        MatAlgebra a;
        a.f_ = std::move(f);
        a.n_ = rep_dim;
        Mat rows(a.f_, static_cast<uint32_t>(span.size()), rep_dim * rep_dim);
        for (uint32_t i = 0; i < span.size(); ++i) rows.set_row(i, flatten(span[i]));
        a.init_from_rows(rows, unit);
#ifdef SCOTT_SELFCHECK
        a.check_closed();
#endif
        return a;
    }

    // Multiplicative closure of the generators plus the unit.
    static MatAlgebra from_generators(FieldPtr f, uint32_t rep_dim,
                                      const std::vector<Mat>& gens, const Mat& unit) {
        Echelon ech = echelon(flatten(unit));
        std::vector<Mat> basis{unit};
        std::vector<Mat> fresh{unit};
        auto add = [&](const Mat& m) {
            if (ech.contains_row(flatten(m))) return false;
            basis.push_back(m);
            fresh.push_back(m);
            Mat rows(f, static_cast<uint32_t>(basis.size()), rep_dim * rep_dim);
            for (uint32_t i = 0; i < basis.size(); ++i) rows.set_row(i, flatten(basis[i]));
            ech = echelon(rows);
            return true;
        };
        for (const Mat& g : gens) add(g);
        while (!fresh.empty()) {
            std::vector<Mat> batch = std::move(fresh);
            fresh.clear();
            for (const Mat& x : batch)
                for (const Mat& g : gens) {
                    add(x * g);
                    add(g * x);
                }
        }
        return from_span(f, rep_dim, basis, unit);
    }

    const FieldPtr& field() const { return f_; }
    uint32_t dim() const { return static_cast<uint32_t>(basis_.size()); }
    uint32_t rep_dim() const { return n_; }
    const std::vector<Mat>& basis() const { return basis_; }
    const Mat& basis_rows() const { return ech_.basis; }
    const Mat& unit_coords() const { return unit_coords_; }

    // Sum of coords[i] * basis[i] as a representation matrix.
    Mat rep(const Mat& coords) const {
        Mat m(f_, n_, n_);
        for (uint32_t t = 0; t < dim(); ++t) {
            GField::Elt c = coords.at(0, t);
            if (c == 0) continue;
            m = m + basis_[t].scaled(c);
        }
        return m;
    }

    std::optional<Mat> coords_of(const Mat& m) const { return ech_.coords(flatten(m)); }

    Mat coords_of_checked(const Mat& m) const {
        auto c = coords_of(m);
        if (!c) throw std::invalid_argument("MatAlgebra: matrix outside the algebra");
        return *c;
    }

    bool contains(const Mat& m) const { return ech_.contains_row(flatten(m)); }

    Mat mul(const Mat& ca, const Mat& cb) const {
        return coords_of_checked(rep(ca) * rep(cb));
    }

    Mat unit_rep() const { return rep(unit_coords_); }

    Mat coord_row(uint32_t t) const {
        Mat r(f_, 1, dim());
        r.at(0, t) = f_->one();
        return r;
    }

    // Minimal polynomial of an element relative to the algebra unit, monic;
    // optionally exposes the coords of unit, x, x^2, ... so callers can
    // evaluate polynomials at x without recomputing powers.
    Poly min_poly(const Mat& coords, std::vector<Mat>* powers_out = nullptr) const {
        return min_poly_rel(coords, unit_coords_, powers_out);
    }

    Mat eval_poly(const Poly& g, const std::vector<Mat>& powers) const {
        Mat acc(f_, 1, dim());
        for (size_t d = 0; d < g.size(); ++d) {
            if (g[d] == 0) continue;
            if (d >= powers.size()) throw std::logic_error("MatAlgebra: missing power");
            acc = acc + powers[d].scaled(g[d]);
        }
        return acc;
    }

    bool is_commutative() const {
        for (uint32_t s = 0; s < dim(); ++s)
            for (uint32_t t = s + 1; t < dim(); ++t)
                if (basis_[s] * basis_[t] != basis_[t] * basis_[s]) return false;
        return true;
    }

    // Rows are coords of a basis of the center, canonical.
    Mat center() const {
        std::vector<Mat> blocks;
        for (uint32_t t = 0; t < dim(); ++t) {
            Mat ct(f_, dim(), dim());
            for (uint32_t u = 0; u < dim(); ++u) {
                Mat comm = basis_[u] * basis_[t] - basis_[t] * basis_[u];
                Mat c = coords_of_checked(comm);
                ct.set_row(u, c);
            }
            blocks.push_back(std::move(ct));
        }
        return kernel_of_all(blocks);
    }

    // Jacobson radical as coordinate rows. Descending chain of subspaces:
    // step i keeps the x with vanishing coefficient number p^i of the
    // characteristic polynomial of x*y for all y in the current space. The
    // step-i condition is p^i-semilinear in x, handled by substituting
    // z = x^(p^i) and pulling the kernel back through the inverse power of
    // the Frobenius.
    Mat radical() const {
        const GField& f = *f_;
        uint32_t p = f.p();
        Mat space = Mat::identity(f_, dim());  // coords rows of current space
        uint64_t pi = 1;
        uint32_t i = 0;
        while (pi <= n_) {
            uint32_t d = space.rows();
            if (d == 0) break;
            std::vector<Mat> mats;
            for (uint32_t t = 0; t < d; ++t) mats.push_back(rep(space.row(t)));
            Mat system(f_, d, d);
            bool any = false;
            for (uint32_t j = 0; j < d; ++j)
                for (uint32_t k = 0; k < d; ++k) {
                    auto cp = char_poly(mats[j] * mats[k]);
                    GField::Elt c = cp[n_ - static_cast<uint32_t>(pi)];
                    system.at(j, k) = c;
                    if (c != 0) any = true;
                }
            if (any) {
                Mat ker = kernel_basis(system);  // solutions in z = x^(p^i)
                Mat ker_x = ker.map_entries([&](GField::Elt e) {
                    GField::Elt v = e;
                    for (uint32_t s = 0; s < i % f.m(); ++s) v = f.inv_frobenius(v);
                    return v;
                });
                space = row_space_basis(ker_x * space);
            }
            pi *= p;
            ++i;
        }
#ifdef SCOTT_SELFCHECK
        check_radical(space);
#endif
        return space;
    }

    struct Quotient;

    Quotient semisimple_quotient(const Mat& rad) const;

    // All primitive idempotents as coordinate rows: pairwise orthogonal,
    // summing to the unit. Deterministic given the seed.
    std::vector<Mat> primitive_idempotents(uint64_t seed = 0) const;

    struct LocalSummary {
        bool local = false;
        uint32_t top_dim = 0;      // dim of the semisimple quotient
        uint32_t radical_dim = 0;
        uint32_t components = 0;   // simple components of the quotient
    };

    LocalSummary local_summary() const;

    // Number of simple components: dimension of the subalgebra of the center
    // fixed by the q-power Frobenius.
    uint32_t count_components() const {
        Mat z = center();
        return frobenius_fixed_in(z).rows();
    }

    // For a semisimple algebra: complete set of primitive idempotents.
    std::vector<Mat> semisimple_primitives(uint64_t seed) const {
        std::vector<Mat> cells = central_primitives();
        std::vector<Mat> out;
        for (const Mat& eps : cells) {
            MatAlgebra blk = corner(eps);
            uint32_t dc = blk.center().rows();
            split_semisimple_block(blk, dc, seed, out);
        }
        return out;
    }

    MatAlgebra corner(const Mat& e_coords) const {
        Mat em = rep(e_coords);
        std::vector<Mat> span;
        for (uint32_t t = 0; t < dim(); ++t) span.push_back(em * basis_[t] * em);
        return from_span(f_, n_, span, em);
    }

private:
    FieldPtr f_;
    uint32_t n_ = 0;
    std::vector<Mat> basis_;
    Echelon ech_;
    Mat unit_coords_;

    void init_from_rows(const Mat& rows, const Mat& unit) {
        ech_ = echelon(rows);
        basis_.clear();
        for (uint32_t t = 0; t < ech_.rank(); ++t)
            basis_.push_back(unflatten(ech_.basis.row(t), n_));
        auto uc = ech_.coords(flatten(unit));
        if (!uc) throw std::invalid_argument("MatAlgebra: unit outside span");
        unit_coords_ = *uc;
    }

    void check_closed() const {
        for (uint32_t s = 0; s < dim(); ++s)
            for (uint32_t t = 0; t < dim(); ++t)
                if (!contains(basis_[s] * basis_[t]))
                    throw std::logic_error("MatAlgebra: span not closed under product");
        Mat u = unit_rep();
        for (uint32_t t = 0; t < dim(); ++t)
            if (u * basis_[t] != basis_[t] || basis_[t] * u != basis_[t])
                throw std::logic_error("MatAlgebra: unit does not act as identity");
    }

    void check_radical(const Mat& rad) const {
        // The radical is a nilpotent two-sided ideal.
        Echelon re = echelon(rad);
        for (uint32_t t = 0; t < rad.rows(); ++t)
            for (uint32_t u = 0; u < dim(); ++u) {
                Mat left = coords_of_checked(basis_[u] * rep(rad.row(t)));
                Mat right = coords_of_checked(rep(rad.row(t)) * basis_[u]);
                if (!re.contains_row(left) || !re.contains_row(right))
                    throw std::logic_error("MatAlgebra: radical is not an ideal");
            }
        Mat power = rad;
        for (uint32_t it = 0; it <= dim() && power.rows() > 0; ++it) {
            std::vector<Mat> prods;
            Mat rows(f_, power.rows() * rad.rows(), dim());
            uint32_t idx = 0;
            for (uint32_t a = 0; a < power.rows(); ++a)
                for (uint32_t b = 0; b < rad.rows(); ++b)
                    rows.set_row(idx++, coords_of_checked(rep(power.row(a)) * rep(rad.row(b))));
            Mat next = row_space_basis(rows);
            if (next.rows() >= power.rows() && next.rows() > 0 && next == power)
                throw std::logic_error("MatAlgebra: radical candidate not nilpotent");
            power = next;
        }
        if (power.rows() > 0) throw std::logic_error("MatAlgebra: radical candidate not nilpotent");
    }

    // Frobenius-fixed subspace of a subspace given by coordinate rows
    // (assumed closed under the q-power map, true for the center).
    Mat frobenius_fixed_in(const Mat& sub) const {
        const GField& f = *f_;
        uint32_t r = sub.rows();
        if (r == 0) return sub;
        Echelon se = echelon(sub);
        Mat fr(f_, r, r);
        for (uint32_t t = 0; t < r; ++t) {
            Mat x = sub.row(t);
            Mat xq = power_coords(x, f.q());
            auto c = se.coords(xq);
            if (!c) throw std::logic_error("MatAlgebra: subspace not Frobenius stable");
            fr.set_row(t, *c);
        }
        Mat ker = kernel_basis(fr - Mat::identity(f_, r));
        return row_space_basis(ker * sub);
    }

    Mat power_coords(const Mat& coords, uint64_t e) const {
        Mat acc = unit_coords_;
        Mat base = coords;
        while (e > 0) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    // Central primitive idempotents via the Frobenius-fixed part of the
    // center: a product of copies of the ground field, split by root scans
    // of elementwise minimal polynomials. Fully deterministic.
    std::vector<Mat> central_primitives() const {
        const GField& f = *f_;
        Mat z = center();
        Mat b = frobenius_fixed_in(z);
        std::vector<Mat> cells{unit_coords_};
        for (uint32_t t = 0; t < b.rows(); ++t) {
            std::vector<Mat> refined;
            for (const Mat& e : cells) {
                Mat y = mul(e, b.row(t));
                std::vector<Mat> powers;
                Poly mp = min_poly_rel(y, e, &powers);
                auto roots = poly_roots(f, mp);
                if (roots.size() <= 1) {
                    refined.push_back(e);
                    continue;
                }
                // y is fixed by the q-power map, so its min poly over the
                // cell is squarefree and split; Lagrange projectors at the
                // roots refine the cell.
                for (GField::Elt lam : roots) {
                    Mat proj = e;
                    for (GField::Elt mu : roots) {
                        if (mu == lam) continue;
                        Mat term = y + e.scaled(f.neg(mu));
                        proj = mul(proj, term.scaled(f.inv(f.sub(lam, mu))));
                    }
                    if (!proj.is_zero()) refined.push_back(proj);
                }
            }
            cells = std::move(refined);
        }
        return cells;
    }

    // Minimal polynomial relative to an idempotent unit0 (powers start at
    // unit0, so for a corner element this is its min poly over the corner).
    // A relation must appear by degree dim() since the powers live in a
    // dim()-dimensional space.
    Poly min_poly_rel(const Mat& x, const Mat& unit0,
                      std::vector<Mat>* powers_out = nullptr) const {
        const GField& f = *f_;
        uint32_t width = 2 * dim() + 2;
        std::vector<Mat> powers{unit0};
        Mat rows(f_, 1, width);
        for (uint32_t j = 0; j < dim(); ++j) rows.at(0, j) = unit0.at(0, j);
        rows.at(0, dim()) = f.one();
        Echelon ech = echelon(rows);
        Mat xm = rep(x);
        Mat cur = unit0;
        for (uint32_t d = 1; d <= dim(); ++d) {
            cur = coords_of_checked(rep(cur) * xm);
            powers.push_back(cur);
            Mat row(f_, 1, width);
            for (uint32_t j = 0; j < dim(); ++j) row.at(0, j) = cur.at(0, j);
            row.at(0, dim() + d) = f.one();
            // Reduce only the element part; the tail collects the relation.
            Mat probe = row;
            for (uint32_t r = 0; r < ech.rank() && ech.pivots[r] < dim(); ++r) {
                GField::Elt c = probe.at(0, ech.pivots[r]);
                if (c == 0) continue;
                for (uint32_t j = 0; j < probe.cols(); ++j)
                    probe.at(0, j) = f.sub(probe.at(0, j), f.mul(c, ech.basis.at(r, j)));
            }
            bool dependent = true;
            for (uint32_t j = 0; j < dim(); ++j)
                if (probe.at(0, j) != 0) {
                    dependent = false;
                    break;
                }
            if (dependent) {
                Poly mp(d + 1, 0);
                for (uint32_t e = 0; e <= d; ++e) mp[e] = probe.at(0, dim() + e);
                poly_trim(mp);
                if (powers_out) *powers_out = std::move(powers);
                return poly_monic(f, mp);
            }
            rows = vstack(rows, row);
            ech = echelon(rows);
        }
        throw std::logic_error("MatAlgebra: min poly search exceeded dimension");
    }

    // Splits a semisimple block (matrix algebra over a field) into primitive
    // idempotents; dc is the dimension a primitive corner must reach.
    void split_semisimple_block(const MatAlgebra& blk, uint32_t dc, uint64_t seed,
                                std::vector<Mat>& out) const {
        if (blk.dim() == dc) {
            out.push_back(coords_of_checked(blk.unit_rep()));
            return;
        }
        const GField& f = *f_;
        std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ull * (blk.dim() + 1)));
        for (uint32_t attempt = 0; attempt < 200 + blk.dim(); ++attempt) {
            Mat x(f_, 1, blk.dim());
            if (attempt < blk.dim()) {
                x = blk.coord_row(attempt);
            } else {
                std::uniform_int_distribution<uint32_t> dist(0, f.q() - 1);
                for (uint32_t j = 0; j < blk.dim(); ++j)
                    x.at(0, j) = static_cast<GField::Elt>(dist(rng));
            }
            std::vector<Mat> powers;
            Poly mp = blk.min_poly(x, &powers);
            auto fac = poly_factor(f, mp, seed ^ 0xFACull);
            if (fac.size() < 2) continue;
            // CRT idempotent for the first primary component.
            Poly g1 = fac[0].first;
            for (uint32_t rpt = 1; rpt < fac[0].second; ++rpt)
                g1 = poly_mul(f, g1, fac[0].first);
            Poly g2 = poly_div(f, mp, g1);
            auto [u, v] = poly_bezout(f, g1, g2);
            (void)u;
            Poly h = poly_mul(f, v, g2);  // h = 1 mod g1, 0 mod g2
            Mat e1 = blk.eval_poly(poly_mod(f, h, mp), powers);
            if (e1.is_zero() || e1 == blk.unit_coords()) continue;
            Mat e2 = blk.unit_coords() - e1;
            MatAlgebra c1 = blk.corner(e1);
            MatAlgebra c2 = blk.corner(e2);
            split_semisimple_block(c1, dc, seed, out);
            split_semisimple_block(c2, dc, seed, out);
            return;
        }
        throw std::logic_error("MatAlgebra: block splitting found no separating element");
    }

    std::vector<Mat> lift_idempotents(const std::vector<Mat>& prim_s, const Quotient& q) const;
};

struct MatAlgebra::Quotient {
    MatAlgebra s;  // semisimple quotient in its right regular representation
    Mat proj;      // dim() x s.dim(): coords in A -> coords in S
    Mat sect;      // s.dim() x dim(): section, lex-first echelon complement
};

inline MatAlgebra::Quotient MatAlgebra::semisimple_quotient(const Mat& rad) const {
    const GField& f = *f_;
    uint32_t d = dim();
    Echelon rech = echelon(rad);
    std::vector<bool> is_piv(d, false);
    for (uint32_t c : rech.pivots) is_piv[c] = true;
    std::vector<uint32_t> comp;
    for (uint32_t c = 0; c < d; ++c)
        if (!is_piv[c]) comp.push_back(c);
    uint32_t s = static_cast<uint32_t>(comp.size());
    Mat sect(f_, s, d);
    for (uint32_t t = 0; t < s; ++t) sect.at(t, comp[t]) = f.one();
    Mat proj(f_, d, s);
    for (uint32_t u = 0; u < d; ++u) {
        Mat v(f_, 1, d);
        v.at(0, u) = f.one();
        rech.reduce(v);
        for (uint32_t t = 0; t < s; ++t) proj.at(u, t) = v.at(0, comp[t]);
    }
    // Right regular representation of the quotient: R_x maps y to y*x.
    std::vector<Mat> regs;
    for (uint32_t t = 0; t < s; ++t) {
        Mat rx(f_, s, s);
        for (uint32_t u = 0; u < s; ++u) {
            Mat prod = mul(sect.row(u), sect.row(t));
            rx.set_row(u, prod * proj);
        }
        regs.push_back(std::move(rx));
    }
    // The class of 1 acts as the identity in the regular representation.
    Quotient q;
    q.s = from_span(f_, s, regs, Mat::identity(f_, s));
    // from_span re-echelons; rebuild proj into the canonical coords.
    // regs[t] is the image of complement vector t, so the map from
    // complement coords to canonical coords comes from coords_of.
    Mat fix(f_, s, s);
    for (uint32_t t = 0; t < s; ++t) fix.set_row(t, q.s.coords_of_checked(regs[t]));
    q.proj = proj * fix;
    q.sect = inverse(fix) * sect;
    return q;
}

inline std::vector<Mat> MatAlgebra::primitive_idempotents(uint64_t seed) const {
    Mat rad = radical();
    Quotient q = semisimple_quotient(rad);
    std::vector<Mat> prim_s = q.s.semisimple_primitives(seed);
    return lift_idempotents(prim_s, q);
}

inline MatAlgebra::LocalSummary MatAlgebra::local_summary() const {
    Mat rad = radical();
    Quotient q = semisimple_quotient(rad);
    LocalSummary out;
    out.radical_dim = rad.rows();
    out.top_dim = q.s.dim();
    out.components = q.s.count_components();
    // A finite division ring is a field, so local means one component that
    // is commutative.
    out.local = (out.components == 1) && q.s.is_commutative();
    return out;
}

inline std::vector<Mat> MatAlgebra::lift_idempotents(const std::vector<Mat>& prim_s,
                                                     const Quotient& q) const {
    std::vector<Mat> out;
    Mat partial(f_, 1, dim());  // sum of lifted idempotents so far
    for (size_t j = 0; j < prim_s.size(); ++j) {
        if (j + 1 == prim_s.size()) {
            out.push_back(unit_coords_ - partial);
            break;
        }
        Mat cand = prim_s[j] * q.sect;
        Mat co_rim = unit_coords_ - partial;
        cand = mul(mul(co_rim, cand), co_rim);
        // Newton iteration e <- 3e^2 - 2e^3 squares the defect each step.
        for (uint32_t it = 0;; ++it) {
            Mat sq = mul(cand, cand);
            if (sq == cand) break;
            if (it >= 64) throw std::logic_error("MatAlgebra: idempotent lift diverged");
            Mat cube = mul(sq, cand);
            cand = sq.scaled(f_->from_int(3)) - cube.scaled(f_->from_int(2));
        }
        out.push_back(cand);
        partial = partial + cand;
    }
    if (prim_s.empty()) out.push_back(unit_coords_);
#ifdef SCOTT_SELFCHECK
    Mat total(f_, 1, dim());
    for (const Mat& e : out) {
        if (mul(e, e) != e) throw std::logic_error("MatAlgebra: lifted element not idempotent");
        total = total + e;
    }
    if (total != unit_coords_)
        throw std::logic_error("MatAlgebra: lifted idempotents do not sum to the unit");
    for (size_t a = 0; a < out.size(); ++a)
        for (size_t b = 0; b < out.size(); ++b)
            if (a != b && !mul(out[a], out[b]).is_zero())
                throw std::logic_error("MatAlgebra: lifted idempotents not orthogonal");
#endif
    return out;
}

}  // namespace scott
