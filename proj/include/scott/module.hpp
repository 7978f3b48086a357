#pragma once

#include <algorithm>
#include <deque>
#include <memory>
#include <random>
#include <vector>

#include "scott/algebra.hpp"
#include "scott/gset.hpp"

namespace scott {

// Row convention throughout: module elements are row vectors, the group acts
// on the right, and rho(g)_{x, g(x)} = 1 for a G-set action.
inline Mat perm_matrix(const FieldPtr& f, const Perm& s) {
    Mat m(f, s.degree(), s.degree());
    for (uint32_t x = 0; x < s.degree(); ++x) m.at(x, s(x)) = f->one();
    return m;
}

// A module remembered as a cut-down of a permutation module: U is the image
// of the idempotent `idem` in End(k[X]), with `embed` the canonical echelon
// basis of U inside k[X]. Keeping this around makes endomorphism algebras
// (orbit-pair spans) and Brauer constructions (corner cut-downs) cheap.
struct Provenance {
    std::shared_ptr<const GSet> gset;
    Mat idem;   // |X| x |X| idempotent commuting with the action
    Mat embed;  // dim x |X| echelon basis of the image of idem
};

class GModule {
public:
    GModule() = default;

    static GModule perm_module(const FieldPtr& f, std::shared_ptr<const GSet> x) {
        uint32_t n = x->size();
        Provenance pv{std::move(x), Mat::identity(f, n), Mat::identity(f, n)};
        return from_provenance(f, std::move(pv));
    }

    static GModule from_provenance(const FieldPtr& f, Provenance pv) {
        GModule m;
        m.f_ = f;
        m.group_ = pv.gset->group();
        uint32_t n = pv.gset->size();
        if (pv.idem.rows() != n || pv.idem.cols() != n || pv.embed.cols() != n)
            throw std::invalid_argument("GModule: provenance shape mismatch");
        m.dim_ = pv.embed.rows();
        m.prov_ = std::move(pv);
        m.emb_ech_ = echelon(m.prov_->embed);
        if (m.emb_ech_.basis != m.prov_->embed)
            throw std::invalid_argument("GModule: embedding must be an echelon basis");
        m.idem_is_id_ = (m.prov_->idem == Mat::identity(f, n));
#ifdef SCOTT_SELFCHECK
        if (m.prov_->idem * m.prov_->idem != m.prov_->idem)
            throw std::logic_error("GModule: provenance idempotent fails e^2 = e");
        if (!same_row_space(m.prov_->embed, m.prov_->idem))
            throw std::logic_error("GModule: embedding does not match the idempotent image");
#endif
        for (const Perm& t : m.group_.generators()) m.gen_act_.push_back(m.act_via_gset(t));
        m.fill_inverses();
        return m;
    }

    // Abstract matrix module: one action matrix per group generator.
    static GModule plain(const FieldPtr& f, PermGroup g, uint32_t dim,
                         std::vector<Mat> gen_act) {
        if (gen_act.size() != g.generators().size())
            throw std::invalid_argument("GModule: one action matrix per generator");
        for (const Mat& a : gen_act)
            if (a.rows() != dim || a.cols() != dim)
                throw std::invalid_argument("GModule: action matrix shape mismatch");
        GModule m;
        m.f_ = f;
        m.group_ = std::move(g);
        m.dim_ = dim;
        m.gen_act_ = std::move(gen_act);
        m.fill_inverses();
        return m;
    }

    const FieldPtr& field() const { return f_; }
    const PermGroup& group() const { return group_; }
    uint32_t dim() const { return dim_; }
    const std::optional<Provenance>& provenance() const { return prov_; }
    const std::vector<Mat>& gen_actions() const { return gen_act_; }

    // Basis of the module inside the ambient permutation module, when known.
    const Mat& embedding() const {
        if (!prov_) throw std::logic_error("GModule: no ambient embedding");
        return emb_ech_.basis;
    }

    // Action matrix of an arbitrary group element, in module coordinates.
    Mat act(const Perm& u) const {
        if (prov_) return act_via_gset(u);
        auto w = group_.sift_word(u);
        if (!w) throw std::invalid_argument("GModule::act: element outside the group");
        Mat r = Mat::identity(f_, dim_);
        for (int32_t letter : *w)
            r = r * (letter >= 0 ? gen_act_[letter] : inv_act_[-letter - 1]);
        return r;
    }

    // Same space viewed as a module for a subgroup.
    GModule restrict_to(const PermGroup& l) const {
        if (prov_) {
            auto sub = std::make_shared<const GSet>(prov_->gset->restricted(l));
            return from_provenance(f_, Provenance{sub, prov_->idem, emb_ech_.basis});
        }
        std::vector<Mat> acts;
        for (const Perm& t : l.generators()) acts.push_back(act(t));
        return plain(f_, l, dim_, std::move(acts));
    }

    // Echelon basis of the subspace fixed by every element of q.
    Mat fixed_rows(const Subgroup& q) const {
        if (q.generators().empty()) return Mat::identity(f_, dim_);
        std::vector<Mat> walls;
        for (const Perm& t : q.generators())
            walls.push_back(act(t) - Mat::identity(f_, dim_));
        return kernel_of_all(walls);
    }

    // Image of the relative trace from r-fixed to q-fixed vectors: the span
    // of { sum over coset reps u of R\Q of m * rho(u) : m fixed by r }.
    Mat relative_trace_image(const Subgroup& r, const Subgroup& q) const {
        std::vector<Perm> reps = right_coset_reps(r, q);
        Mat t(f_, dim_, dim_);
        for (const Perm& u : reps) t = t + act(u);
        return row_space_basis(fixed_rows(r) * t);
    }

    // Fixed points modulo the images of the relative traces from the maximal
    // subgroups, as a module for l (which must normalize q). q must be a
    // p-group for the field characteristic.
    GModule brauer_quotient(const Subgroup& q, const PermGroup& l) const {
        require_p_subgroup(q);
        require_normalizes(l, q);
        if (!prov_) return brauer_general(q, l);
        std::vector<uint32_t> fp = prov_->gset->fixed_points(q);
        Mat br = submatrix(prov_->idem, fp, fp);
        if (br * br != br)
            throw std::logic_error("GModule: cut-down of the idempotent is not idempotent");
        auto sub = std::make_shared<const GSet>(prov_->gset->sub_action(l, fp));
        GModule out = from_provenance(f_, Provenance{sub, br, row_space_basis(br)});
#ifdef SCOTT_SELFCHECK
        if (out.dim() != brauer_general(q, l).dim())
            throw std::logic_error("GModule: quotient paths disagree on dimension");
#endif
        return out;
    }

    // Subquotient construction that never looks at provenance; the oracle for
    // the cut-down path.
    GModule brauer_general(const Subgroup& q, const PermGroup& l) const {
        require_p_subgroup(q);
        Mat v = fixed_rows(q);
        Echelon vech = echelon(v);
        Echelon wech = trace_sum_in_fixed(q, vech);
        std::vector<uint32_t> comp;
        {
            std::vector<bool> is_piv(vech.rank(), false);
            for (uint32_t c : wech.pivots) is_piv[c] = true;
            for (uint32_t c = 0; c < vech.rank(); ++c)
                if (!is_piv[c]) comp.push_back(c);
        }
        uint32_t ud = static_cast<uint32_t>(comp.size());
        std::vector<Mat> acts;
        for (const Perm& t : l.generators()) {
            Mat a = act(t);
            Mat av(f_, vech.rank(), vech.rank());
            for (uint32_t i = 0; i < vech.rank(); ++i) {
                auto c = vech.coords(v.row(i) * a);
                if (!c) throw std::logic_error("GModule: fixed space not invariant");
                av.set_row(i, *c);
            }
            Mat b(f_, ud, ud);
            for (uint32_t i = 0; i < ud; ++i) {
                Mat row = av.row(comp[i]);
                wech.reduce(row);
                for (uint32_t j = 0; j < ud; ++j) b.at(i, j) = row.at(0, comp[j]);
            }
            acts.push_back(std::move(b));
        }
        return plain(f_, l, ud, std::move(acts));
    }

    // Dimension of the quotient at q; cheap enough to scan over subgroups.
    uint32_t brauer_dim(const Subgroup& q) const {
        require_p_subgroup(q);
        if (prov_) {
            std::vector<uint32_t> fp = prov_->gset->fixed_points(q);
            return rank(submatrix(prov_->idem, fp, fp));
        }
        Mat v = fixed_rows(q);
        Echelon vech = echelon(v);
        return vech.rank() - trace_sum_in_fixed(q, vech).rank();
    }

    // Endomorphism algebra in module coordinates. With provenance this is the
    // cut-down e * End(k[X]) * e spanned by orbit-pair matrices; without it
    // the commutant is solved directly.
    MatAlgebra endo_algebra() const {
        if (dim_ == 0) throw std::logic_error("GModule: zero module has no unit");
        std::vector<Mat> span;
        if (prov_) {
            uint32_t n = prov_->gset->size();
            uint32_t cnt = 0;
            const std::vector<uint32_t>& lab = prov_->gset->pair_orbit_labels(&cnt);
            const Mat& b = emb_ech_.basis;
            std::vector<Mat> s(cnt, Mat(f_, dim_, n));
            for (uint32_t x = 0; x < n; ++x)
                for (uint32_t y = 0; y < n; ++y) {
                    uint32_t o = lab[static_cast<size_t>(x) * n + y];
                    for (uint32_t r = 0; r < dim_; ++r) {
                        GField::Elt e = b.at(r, x);
                        if (e != 0) s[o].at(r, y) = f_->add(s[o].at(r, y), e);
                    }
                }
            for (uint32_t o = 0; o < cnt; ++o) {
                if (idem_is_id_) {
                    span.push_back(std::move(s[o]));
                    continue;
                }
                Mat se = s[o] * prov_->idem;
                Mat c(f_, dim_, dim_);
                for (uint32_t r = 0; r < dim_; ++r) {
                    auto cc = emb_ech_.coords(se.row(r));
                    if (!cc) throw std::logic_error("GModule: orbit span left the summand");
                    c.set_row(r, *cc);
                }
                span.push_back(std::move(c));
            }
#ifdef SCOTT_SELFCHECK
            if (dim_ <= 16) {
                Mat direct = solve_commutant(gen_act_, dim_, f_);
                Mat rows(f_, static_cast<uint32_t>(span.size()), dim_ * dim_);
                for (uint32_t i = 0; i < span.size(); ++i) rows.set_row(i, flatten(span[i]));
                if (row_space_basis(rows) != direct)
                    throw std::logic_error("GModule: endomorphism paths disagree");
            }
#endif
        } else {
            Mat rows = solve_commutant(gen_act_, dim_, f_);
            for (uint32_t i = 0; i < rows.rows(); ++i)
                span.push_back(unflatten(rows.row(i), dim_));
        }
        return MatAlgebra::from_span(f_, dim_, span, Mat::identity(f_, dim_));
    }

    // Direct summand cut out by an idempotent of the endomorphism algebra
    // (given as a dim x dim matrix in module coordinates).
    GModule summand(const Mat& c) const {
        if (prov_) {
            const Mat& b = emb_ech_.basis;
            uint32_t n = prov_->gset->size();
            Mat k(f_, n, dim_);
            for (uint32_t r = 0; r < dim_; ++r) k.at(emb_ech_.pivots[r], r) = f_->one();
            Mat cb = c * b;
            Mat e2 = idem_is_id_ ? k * cb : prov_->idem * (k * cb);
#ifdef SCOTT_SELFCHECK
            if (e2 * e2 != e2)
                throw std::logic_error("GModule: transported idempotent fails e^2 = e");
#endif
            return from_provenance(f_, Provenance{prov_->gset, std::move(e2),
                                                  row_space_basis(cb)});
        }
        Mat emb = row_space_basis(c);
        Echelon ech = echelon(emb);
        std::vector<Mat> acts;
        for (const Mat& a : gen_act_) {
            Mat m(f_, emb.rows(), emb.rows());
            for (uint32_t i = 0; i < emb.rows(); ++i) {
                auto cc = ech.coords(emb.row(i) * a);
                if (!cc) throw std::logic_error("GModule: summand not invariant");
                m.set_row(i, *cc);
            }
            acts.push_back(std::move(m));
        }
        return plain(f_, group_, emb.rows(), std::move(acts));
    }

    // Full decomposition into indecomposable summands. Splitting idempotents
    // come from coprime factors of minimal polynomials of endomorphisms; when
    // the seeded search runs dry the endomorphism algebra decides locality,
    // and its primitive idempotents finish off any remaining split.
    std::vector<GModule> decompose(uint64_t seed = 0) const {
        std::vector<GModule> out;
        std::deque<GModule> work;
        if (dim_ > 0) work.push_back(*this);
        while (!work.empty()) {
            GModule m = std::move(work.front());
            work.pop_front();
            if (m.dim() == 1) {
                out.push_back(std::move(m));
                continue;
            }
            MatAlgebra e = m.endo_algebra();
            if (e.dim() == 1) {
                out.push_back(std::move(m));
                continue;
            }
            if (auto c = find_split_idempotent(e, seed)) {
                work.push_back(m.summand(e.rep(*c)));
                work.push_back(m.summand(e.rep(e.unit_coords() - *c)));
                continue;
            }
            if (e.local_summary().local) {
                out.push_back(std::move(m));
                continue;
            }
            // Primitive idempotents cut directly to indecomposables.
            for (const Mat& pc : e.primitive_idempotents(seed))
                out.push_back(m.summand(e.rep(pc)));
        }
        return out;
    }

    bool is_indecomposable(uint64_t seed = 0) const {
        if (dim_ == 0) return false;
        return decompose(seed).size() == 1;
    }

private:
    FieldPtr f_;
    PermGroup group_;
    uint32_t dim_ = 0;
    std::vector<Mat> gen_act_;
    std::vector<Mat> inv_act_;
    std::optional<Provenance> prov_;
    Echelon emb_ech_;
    bool idem_is_id_ = false;

    void fill_inverses() {
        for (const Mat& a : gen_act_) inv_act_.push_back(inverse(a));
    }

    Mat act_via_gset(const Perm& u) const {
        Perm s = prov_->gset->act(u);
        const Mat& b = emb_ech_.basis;
        Mat bp(f_, dim_, b.cols());
        for (uint32_t r = 0; r < dim_; ++r)
            for (uint32_t x = 0; x < b.cols(); ++x) bp.at(r, s(x)) = b.at(r, x);
        Mat a(f_, dim_, dim_);
        for (uint32_t r = 0; r < dim_; ++r) {
            auto c = emb_ech_.coords(bp.row(r));
            if (!c) throw std::logic_error("GModule: embedded space not invariant");
            a.set_row(r, *c);
        }
        return a;
    }

    void require_p_subgroup(const Subgroup& q) const {
        BigInt n = q.order();
        uint32_t p = f_->p();
        while (n % p == 0) n /= p;
        if (n != 1)
            throw std::invalid_argument(
                "GModule: expected a p-subgroup for the field characteristic");
    }

    static void require_normalizes(const PermGroup& l, const Subgroup& q) {
        for (const Perm& a : l.generators())
            if (!conjugate_subgroup(a, q).same_group_as(q))
                throw std::invalid_argument("GModule: acting group must normalize q");
    }

    // Echelon (in fixed-space coordinates) of the sum of relative trace
    // images from the maximal subgroups of q.
    Echelon trace_sum_in_fixed(const Subgroup& q, const Echelon& vech) const {
        uint32_t p = f_->p();
        std::vector<Mat> rows;
        if (q.order() > 1)
            for (const Subgroup& r : subgroups_of_pgroup(q, p)) {
                if (r.order() * p != q.order()) continue;
                Mat tr = relative_trace_image(r, q);
                for (uint32_t i = 0; i < tr.rows(); ++i) {
                    auto c = vech.coords(tr.row(i));
                    if (!c) throw std::logic_error("GModule: trace image left the fixed space");
                    rows.push_back(*c);
                }
            }
        Mat w(f_, static_cast<uint32_t>(rows.size()), vech.rank());
        for (uint32_t i = 0; i < rows.size(); ++i) w.set_row(i, rows[i]);
        return echelon(w);
    }

    // A non-unit idempotent of e, if a seeded search turns one up. Any
    // element whose minimal polynomial has two coprime parts yields one
    // exactly, by the usual bezout splitting.
    static std::optional<Mat> find_split_idempotent(const MatAlgebra& e, uint64_t seed) {
        const GField& f = *e.field();
        auto attempt = [&](const Mat& x) -> std::optional<Mat> {
            std::vector<Mat> powers;
            Poly mp = e.min_poly(x, &powers);
            auto fac = poly_factor(f, mp, seed ^ 0xB0A);
            if (fac.size() < 2) return std::nullopt;
            Poly g1 = poly_pow(f, fac[0].first, fac[0].second);
            Poly g2 = poly_div(f, mp, g1);
            auto [bu, bv] = poly_bezout(f, g1, g2);
            (void)bu;
            Mat c = e.eval_poly(poly_mod(f, poly_mul(f, bv, g2), mp), powers);
            if (c.is_zero() || c == e.unit_coords() || e.mul(c, c) != c)
                throw std::logic_error("GModule: bezout idempotent failed");
            return c;
        };
        std::mt19937_64 rng(seed ^ (0x5C077ull * (e.dim() + 1)));
        std::uniform_int_distribution<uint32_t> pick(0, f.q() - 1);
        uint32_t attempts = 12 + e.dim() / 4;
        for (uint32_t a = 0; a < attempts; ++a) {
            Mat x(e.field(), 1, e.dim());
            for (uint32_t j = 0; j < e.dim(); ++j)
                x.at(0, j) = static_cast<GField::Elt>(pick(rng));
            if (x.is_zero()) continue;
            if (auto c = attempt(x)) return c;
        }
        return std::nullopt;
    }
};

// The permutation module on H\G decomposed, with the summand that maps onto
// the trivial module singled out. Exactly one summand admits a nonzero
// G-map onto the trivial module (the coordinate-sum functional); by
// self-duality it is also the one containing the all-ones fixed vector.
struct ScottData {
    std::shared_ptr<const GSet> gset;
    std::vector<GModule> summands;
    size_t index = 0;
    const GModule& module() const { return summands[index]; }
};

inline ScottData scott_module(const PermGroup& g, const Subgroup& h, const FieldPtr& f,
                              uint64_t seed = 0) {
    ScottData sd;
    sd.gset = std::make_shared<const GSet>(GSet::cosets(g, h));
    GModule m = GModule::perm_module(f, sd.gset);
    sd.summands = m.decompose(seed);
    size_t hits = 0;
    for (size_t i = 0; i < sd.summands.size(); ++i) {
        const Mat& emb = sd.summands[i].embedding();
        bool onto_trivial = false;
        for (uint32_t r = 0; r < emb.rows() && !onto_trivial; ++r) {
            GField::Elt s = 0;
            for (uint32_t j = 0; j < emb.cols(); ++j) s = f->add(s, emb.at(r, j));
            onto_trivial = (s != 0);
        }
        if (onto_trivial) {
            sd.index = i;
            ++hits;
        }
    }
    if (hits != 1)
        throw std::logic_error("scott_module: trivial quotient did not land in one summand");
#ifdef SCOTT_SELFCHECK
    {
        // The all-ones vector must sit in the same summand.
        uint32_t n = sd.gset->size();
        Mat ones(f, 1, n);
        for (uint32_t j = 0; j < n; ++j) ones.at(0, j) = f->one();
        size_t fhits = 0, fidx = 0;
        for (size_t i = 0; i < sd.summands.size(); ++i)
            if (!(ones * sd.summands[i].provenance()->idem).is_zero()) {
                fidx = i;
                ++fhits;
            }
        if (fhits != 1 || fidx != sd.index)
            throw std::logic_error("scott_module: fixed-vector check disagrees");
    }
#endif
    return sd;
}

// Largest subgroup of a Sylow p-subgroup with nonzero Brauer quotient. For
// an indecomposable p-permutation module this is a vertex.
inline Subgroup vertex(const GModule& m) {
    if (m.dim() == 0) throw std::invalid_argument("vertex: zero module");
    uint32_t p = m.field()->p();
    Subgroup s = sylow(m.group(), p);
    std::vector<Subgroup> subs = subgroups_of_pgroup(s, p);
    std::stable_sort(subs.begin(), subs.end(),
                     [](const Subgroup& a, const Subgroup& b) { return a.order() > b.order(); });
    for (const Subgroup& q : subs)
        if (m.brauer_dim(q) > 0) return q;
    return PermGroup::trivial(m.group().degree());
}

// Basis of the G-maps between two modules over the same group, rows being
// flattened dim(a) x dim(b) matrices.
inline Mat hom_space(const GModule& a, const GModule& b) {
    if (!same_field(*a.field(), *b.field()))
        throw std::invalid_argument("hom_space: field mismatch");
    if (!a.group().same_group_as(b.group()) ||
        a.group().generators() != b.group().generators())
        throw std::invalid_argument("hom_space: modules over different groups");
    return solve_intertwiner(a.gen_actions(), b.gen_actions(), a.dim(), b.dim(), a.field());
}

}  // namespace scott
