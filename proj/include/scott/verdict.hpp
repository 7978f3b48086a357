#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scott/fusion.hpp"
#include "scott/module.hpp"

namespace scott {

enum class Tri { yes, no, zero };

inline const char* tri_label(Tri t) {
    switch (t) {
        case Tri::yes: return "true";
        case Tri::no: return "false";
        default: return "zero";
    }
}

// The endomorphism ring is local with residue field k, so no field
// extension can split the module.
inline bool is_absolutely_indecomposable(const GModule& m) {
    if (m.dim() == 0) return false;
    if (m.dim() == 1) return true;
    MatAlgebra e = m.endo_algebra();
    if (e.dim() == 1) return true;
    MatAlgebra::LocalSummary ls = e.local_summary();
    return ls.local && ls.top_dim == 1;
}

// N_P(Q) = Q C_P(Q), compared by order since the join always sits inside
// the normalizer.
inline bool check_condition_a(const Subgroup& p, const Subgroup& q) {
    Subgroup n = normalizer(p, q);
    Subgroup qc = join(q, centralizer(p, q));
    if (n.order() % qc.order() != 0)
        throw std::logic_error("check_condition_a: join escapes the normalizer");
    return n.order() == qc.order();
}

inline bool check_condition_b(const PermGroup& g, const Subgroup& q, uint32_t prime) {
    return is_p_nilpotent(centralizer(g, q), prime);
}

struct SubgroupRow {
    Subgroup q;
    BigInt order = 0;
    bool cond_a = false;
    bool cond_b = false;
    Subgroup r;  // N_P(Q)
    Subgroup l;  // N_P(Q) C_G(Q)
    std::optional<uint32_t> local_scott_dim;
    std::optional<Tri> res_centralizer_indec;
    std::optional<uint32_t> brauer_dim;
    std::optional<Tri> brute_indec;
};

inline SubgroupRow condition_row(const PermGroup& g, const Subgroup& p, const Subgroup& q,
                                 uint32_t prime, Subgroup* centralizer_out = nullptr) {
    SubgroupRow row;
    row.q = q;
    row.order = q.order();
    row.r = normalizer(p, q);
    Subgroup cg = centralizer(g, q);
    row.l = join(row.r, cg);
    // R normalizes C_G(Q), so the join is the set product and has its size
    if (row.l.order() * centralizer(row.r, q).order() != row.r.order() * cg.order())
        throw std::logic_error("condition_row: product set is smaller than the join");
    row.cond_a = check_condition_a(p, q);
    row.cond_b = check_condition_b(g, q, prime);
    if (centralizer_out) *centralizer_out = std::move(cg);
    return row;
}

struct Theorem12Result {
    bool applicable = false;
    bool control = false;
    std::optional<bool> saturated;  // unset: not determined, control failed
    bool conditions_hold = false;
    std::vector<SubgroupRow> rows;
    std::optional<ControlResult> control_detail;
};

// Sufficient conditions: fusion controlled by the normalizer, saturated,
// and every subgroup passes (a) or (b).
inline Theorem12Result theorem12_verdict(const PermGroup& g, const Subgroup& p,
                                         uint32_t prime, const FusionSystem& fs) {
    if (!is_p_power(p.order(), prime))
        throw std::invalid_argument("theorem12_verdict: subgroup order is not a p-power");
    Theorem12Result out;
    ControlResult cr = is_controlled_by_normalizer(fs);
    out.control = cr.controlled;
    if (out.control) out.saturated = is_saturated_given_control(fs);
    out.control_detail = std::move(cr);
    out.conditions_hold = true;
    for (const Subgroup& q : fs.objects) {
        SubgroupRow row = condition_row(g, p, q, prime);
        if (!(row.cond_a || row.cond_b)) out.conditions_hold = false;
        out.rows.push_back(std::move(row));
    }
    out.applicable = out.control && out.saturated.value_or(false) && out.conditions_hold;
    return out;
}

inline Theorem12Result theorem12_verdict(const PermGroup& g, const Subgroup& p,
                                         uint32_t prime) {
    if (!is_p_power(p.order(), prime))
        throw std::invalid_argument("theorem12_verdict: subgroup order is not a p-power");
    return theorem12_verdict(g, p, prime, build_fusion(g, p));
}

struct Theorem11Result {
    bool holds = true;
    std::vector<SubgroupRow> rows;
};

// Local criterion: for every Q <= P the Scott module of (N_P(Q) C_G(Q),
// N_P(Q)) must stay indecomposable when restricted to C_G(Q). Licensed
// only under the fusion hypotheses.
inline Theorem11Result theorem11_criterion(const PermGroup& g, const Subgroup& p,
                                           const FieldPtr& f, uint64_t seed,
                                           const FusionSystem& fs) {
    if (!is_p_power(p.order(), f->p()))
        throw std::invalid_argument("theorem11_criterion: subgroup order is not a p-power");
    if (!is_controlled_by_normalizer(fs).controlled || !is_saturated_given_control(fs))
        throw std::invalid_argument(
            "criterion not licensed: normalizer control or saturation fails");
    Theorem11Result out;
    for (const Subgroup& q : fs.objects) {
        Subgroup cg;
        SubgroupRow row = condition_row(g, p, q, f->p(), &cg);
        ScottData local = scott_module(row.l, row.r, f, seed);
        row.local_scott_dim = local.module().dim();
        bool ok = is_absolutely_indecomposable(local.module().restrict_to(cg));
        row.res_centralizer_indec = ok ? Tri::yes : Tri::no;
        if (!ok) out.holds = false;
        out.rows.push_back(std::move(row));
    }
    return out;
}

inline Theorem11Result theorem11_criterion(const PermGroup& g, const Subgroup& p,
                                           const FieldPtr& f, uint64_t seed = 0) {
    return theorem11_criterion(g, p, f, seed, build_fusion(g, p));
}

// Earliest canonical representative of each G-conjugacy class.
inline std::vector<Subgroup> conjugacy_class_reps(const PermGroup& g,
                                                  const std::vector<Subgroup>& subs) {
    std::vector<Subgroup> reps;
    for (const Subgroup& q : subs) {
        bool seen = false;
        for (const Subgroup& r : reps) {
            if (r.order() != q.order()) continue;
            if (!transporter_cosets(g, q, r).empty()) {
                seen = true;
                break;
            }
        }
        if (!seen) reps.push_back(q);
    }
    return reps;
}

struct BruteForceResult {
    bool result = true;
    uint32_t scott_dim = 0;
    std::vector<SubgroupRow> rows;
};

// Direct check: every Brauer quotient of the Scott module, restricted to
// the centralizer, is indecomposable or zero. Subgroups of G that are not
// conjugate into P have zero quotient, so scanning subgroups of P is
// exhaustive; conjugation invariance allows class representatives only.
inline BruteForceResult brute_force_brauer_indecomposable(const PermGroup& g,
                                                          const Subgroup& p,
                                                          const FieldPtr& f,
                                                          uint64_t seed = 0,
                                                          bool classes_only = false) {
    if (!is_p_power(p.order(), f->p()))
        throw std::invalid_argument("brute force: subgroup order is not a p-power");
    BruteForceResult out;
    ScottData sd = scott_module(g, p, f, seed);
    const GModule& m = sd.module();
    out.scott_dim = m.dim();
    std::vector<Subgroup> subs = subgroups_of_pgroup(p, f->p());
    if (classes_only) subs = conjugacy_class_reps(g, subs);
    for (const Subgroup& q : subs) {
        Subgroup cg;
        SubgroupRow row = condition_row(g, p, q, f->p(), &cg);
        GModule bq = m.brauer_quotient(q, normalizer(g, q));
        row.brauer_dim = bq.dim();
        if (bq.dim() == 0) {
            row.brute_indec = Tri::zero;
        } else {
            bool ok = is_absolutely_indecomposable(bq.restrict_to(cg));
            row.brute_indec = ok ? Tri::yes : Tri::no;
            if (!ok) out.result = false;
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

struct Verdict {
    uint32_t prime = 0;
    uint64_t seed = 0;
    bool control = false;
    std::optional<bool> saturated;    // unset: not determined, control failed
    std::optional<ControlResult> control_detail;
    bool conditions_hold = false;
    bool thm12_applicable = false;
    std::optional<bool> thm11_holds;  // unset: skipped, hypotheses fail
    bool brute_force_result = true;
    uint32_t scott_dim = 0;
    std::vector<SubgroupRow> rows;
    std::map<std::string, double> timings_ms;
};

// One shared pass: fusion hypotheses, both theorem checks, and the direct
// check, with the consistency between them enforced.
inline Verdict run_verdict(const PermGroup& g, const Subgroup& p, const FieldPtr& f,
                           uint64_t seed = 0, FusionSystem* fusion_out = nullptr) {
    using Clock = std::chrono::steady_clock;
    auto ms_since = [](Clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    };
    if (!is_p_power(p.order(), f->p()))
        throw std::invalid_argument("run_verdict: subgroup order is not a p-power");
    Verdict v;
    v.prime = f->p();
    v.seed = seed;

    auto t0 = Clock::now();
    FusionSystem fs = build_fusion(g, p);
    ControlResult cr = is_controlled_by_normalizer(fs);
    v.control = cr.controlled;
    if (v.control) v.saturated = is_saturated_given_control(fs);
    v.control_detail = std::move(cr);
    v.timings_ms["fusion"] = ms_since(t0);

    t0 = Clock::now();
    ScottData sd = scott_module(g, p, f, seed);
    const GModule& m = sd.module();
    v.scott_dim = m.dim();
    v.timings_ms["scott"] = ms_since(t0);

    bool licensed = v.control && v.saturated.value_or(false);
    v.conditions_hold = true;
    bool criterion = true;
    t0 = Clock::now();
    for (const Subgroup& q : fs.objects) {
        Subgroup cg;
        SubgroupRow row = condition_row(g, p, q, v.prime, &cg);
        if (!(row.cond_a || row.cond_b)) v.conditions_hold = false;
        if (licensed) {
            ScottData local = scott_module(row.l, row.r, f, seed);
            row.local_scott_dim = local.module().dim();
            bool ok = is_absolutely_indecomposable(local.module().restrict_to(cg));
            row.res_centralizer_indec = ok ? Tri::yes : Tri::no;
            if (!ok) criterion = false;
        }
        GModule bq = m.brauer_quotient(q, normalizer(g, q));
        row.brauer_dim = bq.dim();
        if (bq.dim() == 0) {
            row.brute_indec = Tri::zero;
        } else {
            bool ok = is_absolutely_indecomposable(bq.restrict_to(cg));
            row.brute_indec = ok ? Tri::yes : Tri::no;
            if (!ok) v.brute_force_result = false;
        }
        v.rows.push_back(std::move(row));
    }
    v.timings_ms["rows"] = ms_since(t0);

    v.thm12_applicable = licensed && v.conditions_hold;
    if (licensed) {
        v.thm11_holds = criterion;
        if (criterion != v.brute_force_result)
            throw std::logic_error("run_verdict: local criterion disagrees with direct check");
    }
    if (v.thm12_applicable && !v.brute_force_result)
        throw std::logic_error("run_verdict: conditions held but direct check failed");
    if (fusion_out) *fusion_out = std::move(fs);
    return v;
}

struct Corollary13Result {
    Subgroup p_sylow;   // Sylow subgroup of G
    Subgroup h;         // N_G(P), inside G
    ProductGroup product;
    Subgroup delta_p;
    bool g_conditions_hold = true;
    std::vector<SubgroupRow> g_rows;
    bool centralizers_factor = true;
    Verdict verdict;
};

// Diagonal setup: conditions (a)/(b) are checked inside G, the verdict is
// run on (G x N_G(P), Delta P), and the centralizer factorization
// C(Delta Q) = C_G(Q) x C_H(Q) is confirmed along the way.
inline Corollary13Result corollary13_run(const PermGroup& g, const FieldPtr& f,
                                         uint64_t seed = 0,
                                         FusionSystem* fusion_out = nullptr) {
    uint32_t prime = f->p();
    Corollary13Result out;
    out.p_sylow = sylow(g, prime);
    out.h = normalizer(g, out.p_sylow);
    out.product = product_group(g, out.h);
    out.delta_p = diagonal_subgroup(out.p_sylow, out.product);
    for (const Subgroup& q : subgroups_of_pgroup(out.p_sylow, prime)) {
        SubgroupRow row = condition_row(g, out.p_sylow, q, prime);
        if (!(row.cond_a || row.cond_b)) out.g_conditions_hold = false;
        Subgroup dq = diagonal_subgroup(q, out.product);
        std::vector<Perm> gens;
        Subgroup cg = centralizer(g, q);
        for (const Perm& x : cg.generators()) gens.push_back(out.product.embed1(x));
        Subgroup ch = centralizer(out.h, q);
        for (const Perm& x : ch.generators()) gens.push_back(out.product.embed2(x));
        Subgroup split = PermGroup::make(out.product.group.degree(), gens);
        if (!centralizer(out.product.group, dq).same_group_as(split))
            out.centralizers_factor = false;
        out.g_rows.push_back(std::move(row));
    }
    if (!out.centralizers_factor)
        throw std::logic_error("corollary13_run: product centralizer does not factor");
    out.verdict = run_verdict(out.product.group, out.delta_p, f, seed, fusion_out);
    return out;
}

// Isomorphism fingerprint: dimension plus the Brauer dimensions at a fixed
// probe list.
using Fingerprint = std::pair<uint32_t, std::vector<uint32_t>>;

inline Fingerprint summand_fingerprint(const GModule& m,
                                       const std::vector<Subgroup>& probes) {
    std::vector<uint32_t> dims;
    dims.reserve(probes.size());
    for (const Subgroup& q : probes) dims.push_back(m.brauer_dim(q));
    return {m.dim(), std::move(dims)};
}

// A pair of maps whose composite is invertible makes a a retract of b;
// with equal dimensions that is an isomorphism. Basis pairs are tried
// first, then seeded random combinations.
inline bool split_pair_isomorphic(const GModule& a, const GModule& b,
                                  uint64_t seed = 0) {
    if (a.dim() == 0 || a.dim() != b.dim()) return false;
    Mat hab = hom_space(a, b);
    if (hab.rows() == 0) return false;
    Mat hba = hom_space(b, a);
    if (hba.rows() == 0) return false;
    const FieldPtr& f = a.field();
    uint32_t n = a.dim();
    auto invertible = [&](const Mat& x, const Mat& y) {
        return echelon(x * y).rank() == n;
    };
    std::vector<Mat> fwd, bwd;
    for (uint32_t i = 0; i < hab.rows(); ++i)
        fwd.push_back(unflatten(hab.row(i), n, b.dim()));
    for (uint32_t i = 0; i < hba.rows(); ++i)
        bwd.push_back(unflatten(hba.row(i), b.dim(), n));
    for (const Mat& x : fwd)
        for (const Mat& y : bwd)
            if (invertible(x, y)) return true;
    std::mt19937_64 rng(seed ^ 0x15031A7ull);
    std::uniform_int_distribution<uint32_t> pick(0, f->q() - 1);
    auto combo = [&](const std::vector<Mat>& basis, uint32_t rows, uint32_t cols) {
        Mat m(f, rows, cols);
        for (const Mat& e : basis) {
            auto c = static_cast<GField::Elt>(pick(rng));
            if (c == 0) continue;
            for (uint32_t i = 0; i < rows; ++i)
                for (uint32_t j = 0; j < cols; ++j)
                    m.at(i, j) = f->add(m.at(i, j), f->mul(c, e.at(i, j)));
        }
        return m;
    };
    for (int t = 0; t < 40; ++t)
        if (invertible(combo(fwd, n, b.dim()), combo(bwd, b.dim(), n))) return true;
    return false;
}

struct SummandMatch {
    bool found = false;
    bool collision = false;  // a fingerprint class mixes non-isomorphic parts
};

// Does s match one of the parts? Fingerprints at the given probes decide
// when they are injective on the part list. Ties are refined with Brauer
// dimensions over a full Sylow p-subgroup of the acting group; a class
// that still ties is fine if its members are pairwise isomorphic (repeated
// summands), and only a mixed class counts as a collision, with the match
// then confirmed by an explicit split pair.
inline SummandMatch summand_by_fingerprint(const GModule& s,
                                           const std::vector<GModule>& parts,
                                           const std::vector<Subgroup>& probes,
                                           uint64_t seed = 0) {
    SummandMatch out;
    Fingerprint target = summand_fingerprint(s, probes);
    std::vector<Fingerprint> fps;
    fps.reserve(parts.size());
    for (const GModule& m : parts) fps.push_back(summand_fingerprint(m, probes));
    bool tied = false;
    for (size_t i = 0; i < fps.size() && !tied; ++i)
        for (size_t j = i + 1; j < fps.size(); ++j)
            if (fps[i] == fps[j]) {
                tied = true;
                break;
            }
    if (!tied) {
        for (const Fingerprint& fp : fps)
            if (fp == target) {
                out.found = true;
                break;
            }
        return out;
    }
    uint32_t prime = s.field()->p();
    std::vector<Subgroup> wide = subgroups_of_pgroup(sylow(s.group(), prime), prime);
    target = summand_fingerprint(s, wide);
    for (size_t i = 0; i < parts.size(); ++i) fps[i] = summand_fingerprint(parts[i], wide);
    std::vector<size_t> leader(parts.size());
    for (size_t i = 0; i < parts.size(); ++i) {
        leader[i] = i;
        for (size_t j = 0; j < i; ++j)
            if (fps[j] == fps[i]) {
                leader[i] = leader[j];
                break;
            }
        if (leader[i] != i && !split_pair_isomorphic(parts[leader[i]], parts[i], seed))
            out.collision = true;
    }
    for (size_t i = 0; i < parts.size(); ++i)
        if (fps[i] == target && (!out.collision || split_pair_isomorphic(s, parts[i], seed))) {
            out.found = true;
            break;
        }
    return out;
}

struct LemmaRow {
    Subgroup q;
    BigInt order = 0;
    bool fully_normalized = false;
    bool applicable = false;        // hypotheses hold, or Q fully normalized
    bool restriction_pass = false;  // local Scott matches a summand of the restriction
    bool brauer_pass = false;       // and of the Brauer quotient
    bool collision = false;
    uint32_t scott_local_dim = 0;
};

struct LemmaChecks {
    bool licensed = false;
    bool all_pass = true;  // over applicable rows
    std::vector<LemmaRow> rows;
    // largest Q whose restricted Brauer quotient splits, if any; at that Q
    // the restriction to N_P(Q) C_G(Q) is compared with the local Scott
    // module
    bool decomposable_case_found = false;
    std::optional<BigInt> max_decomposable_order;
    std::optional<bool> lemma31_pass;
};

// Summand facts behind the theorems: Sc(N_G(Q), N_P(Q)) must show up in
// both the restriction of the Scott module to N_G(Q) and its Brauer
// quotient at Q. Applicable to every Q under the fusion hypotheses, and to
// fully normalized Q unconditionally.
inline LemmaChecks lemma_checks(const PermGroup& g, const Subgroup& p, const FieldPtr& f,
                                uint64_t seed = 0, FusionSystem* fusion_out = nullptr) {
    if (!is_p_power(p.order(), f->p()))
        throw std::invalid_argument("lemma_checks: subgroup order is not a p-power");
    LemmaChecks out;
    FusionSystem fs = build_fusion(g, p);
    out.licensed =
        is_controlled_by_normalizer(fs).controlled && is_saturated_given_control(fs);
    ScottData sd = scott_module(g, p, f, seed);
    const GModule& m = sd.module();
    size_t best = fs.objects.size();
    BigInt best_order = 0;
    for (size_t i = 0; i < fs.objects.size(); ++i) {
        const Subgroup& q = fs.objects[i];
        LemmaRow row;
        row.q = q;
        row.order = q.order();
        row.fully_normalized = is_fully_normalized(fs, q);
        row.applicable = out.licensed || row.fully_normalized;
        Subgroup h = normalizer(g, q);
        GModule bq = m.brauer_quotient(q, h);
        if (bq.dim() > 0 &&
            !is_absolutely_indecomposable(bq.restrict_to(centralizer(g, q)))) {
            out.decomposable_case_found = true;
            if (q.order() > best_order) {
                best_order = q.order();
                best = i;
            }
        }
        if (row.applicable) {
            Subgroup r = normalizer(p, q);
            ScottData local = scott_module(h, r, f, seed);
            row.scott_local_dim = local.module().dim();
            std::vector<Subgroup> probes = subgroups_of_pgroup(r, f->p());
            SummandMatch res = summand_by_fingerprint(
                local.module(), m.restrict_to(h).decompose(seed), probes, seed);
            SummandMatch bra =
                summand_by_fingerprint(local.module(), bq.decompose(seed), probes, seed);
            row.restriction_pass = res.found;
            row.brauer_pass = bra.found;
            row.collision = res.collision || bra.collision;
            if (!(res.found && bra.found)) out.all_pass = false;
        }
        out.rows.push_back(std::move(row));
    }
    if (out.decomposable_case_found) {
        const Subgroup& q = fs.objects[best];
        out.max_decomposable_order = q.order();
        Subgroup r = normalizer(p, q);
        Subgroup l = join(r, centralizer(g, q));
        GModule t = m.brauer_quotient(q, normalizer(g, q)).restrict_to(l);
        ScottData local = scott_module(l, r, f, seed);
        out.lemma31_pass = split_pair_isomorphic(local.module(), t, seed);
    }
    if (fusion_out) *fusion_out = std::move(fs);
    return out;
}

}  // namespace scott
