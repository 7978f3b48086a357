#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "scott/catalog.hpp"
#include "scott/verdict.hpp"

namespace scott {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

// Exit codes: 0 all licensed checks pass, 1 input error, 2 a licensed
// check failed (an internal contradiction), 3 hypotheses not satisfied.
enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 1,
    kExitContradiction = 2,
    kExitUnlicensed = 3,
};

struct JobSpec {
    std::string group_file;  // exactly one of group_file / named is set
    std::string named;
    uint32_t prime = 0;
    std::string psubgroup = "sylow";  // "sylow" or a subgroup file path
    std::string mode = "both";        // criteria | brute | both | corollary13 | lemmas
    uint32_t field_degree = 0;        // 0 = auto, meaning degree 1
    uint64_t seed = 0;
    std::string out_path;
    bool timings = false;  // off keeps reports byte-identical across runs
};

struct ReportResult {
    ordered_json report;
    int exit_code = kExitOk;
};

inline void validate_job(const JobSpec& job) {
    if (job.group_file.empty() == job.named.empty())
        throw std::invalid_argument("exactly one of --group and --named is required");
    if (!is_small_prime(job.prime))
        throw std::invalid_argument("--prime must be a prime number");
    const char* modes[] = {"criteria", "brute", "both", "corollary13", "lemmas"};
    bool ok = false;
    for (const char* m : modes) ok = ok || job.mode == m;
    if (!ok)
        throw std::invalid_argument("--mode must be criteria, brute, both, corollary13 or lemmas");
    if (job.mode == "corollary13" && job.psubgroup != "sylow")
        throw std::invalid_argument("corollary13 uses the Sylow subgroup; drop --psubgroup");
    if (job.field_degree > 6)
        throw std::invalid_argument("--field-degree larger than 6 is not supported");
    if (job.out_path.empty()) throw std::invalid_argument("--out is required");
}

struct LoadedJob {
    PermGroup group;
    Subgroup p_subgroup;
    FieldPtr gf;
    std::string group_label;
    std::string psub_label;
};

inline LoadedJob load_job(const JobSpec& job) {
    LoadedJob lj;
    if (job.named.empty()) {
        lj.group = load_group_file(job.group_file).group;
        lj.group_label = "file:" + job.group_file;
    } else {
        lj.group = named_group(job.named);
        lj.group_label = "named:" + job.named;
    }
    lj.gf = field(job.prime, job.field_degree ? job.field_degree : 1);
    if (job.psubgroup == "sylow") {
        lj.p_subgroup = sylow(lj.group, job.prime);
        lj.psub_label = "sylow";
    } else {
        ParsedGroup pp = load_group_file(job.psubgroup);
        if (pp.group.degree() != lj.group.degree())
            throw std::invalid_argument("subgroup degree differs from the group degree");
        for (const Perm& x : pp.group.generators())
            if (!lj.group.contains(x))
                throw std::invalid_argument("subgroup file is not contained in the group");
        if (!is_p_power(pp.group.order(), job.prime))
            throw std::invalid_argument("subgroup order is not a power of the prime");
        lj.p_subgroup = pp.group;
        lj.psub_label = "file:" + job.psubgroup;
    }
    return lj;
}

namespace detail {

enum RowMask : unsigned {
    kRowConds = 1,
    kRowLocal = 2,
    kRowBrute = 4,
};

inline ordered_json gens_json(const Subgroup& q) {
    ordered_json a = ordered_json::array();
    for (const Perm& x : q.generators()) a.push_back(x.to_cycles());
    return a;
}

inline ordered_json row_json(const SubgroupRow& r, unsigned mask) {
    ordered_json j;
    j["Q_order"] = r.order.str();
    j["Q_gens"] = gens_json(r.q);
    if (mask & kRowConds) {
        j["cond_a"] = r.cond_a;
        j["cond_b"] = r.cond_b;
        j["R_order"] = r.r.order().str();
        j["L_order"] = r.l.order().str();
    } else {
        j["cond_a"] = nullptr;
        j["cond_b"] = nullptr;
        j["R_order"] = nullptr;
        j["L_order"] = nullptr;
    }
    if ((mask & kRowLocal) && r.local_scott_dim)
        j["local_scott_dim"] = *r.local_scott_dim;
    else
        j["local_scott_dim"] = nullptr;
    if ((mask & kRowLocal) && r.res_centralizer_indec)
        j["res_indec"] = tri_label(*r.res_centralizer_indec);
    else
        j["res_indec"] = nullptr;
    if ((mask & kRowBrute) && r.brauer_dim)
        j["brauer_dim"] = *r.brauer_dim;
    else
        j["brauer_dim"] = nullptr;
    if ((mask & kRowBrute) && r.brute_indec)
        j["brute_indec"] = tri_label(*r.brute_indec);
    else
        j["brute_indec"] = nullptr;
    return j;
}

inline ordered_json rows_json(const std::vector<SubgroupRow>& rows, unsigned mask) {
    ordered_json a = ordered_json::array();
    for (const SubgroupRow& r : rows) a.push_back(row_json(r, mask));
    return a;
}

inline ordered_json fusion_json(const FusionSystem& fs, const ControlResult& cr,
                                const std::optional<bool>& saturated) {
    ordered_json j;
    j["objects"] = fs.objects.size();
    std::map<std::pair<BigInt, BigInt>, uint64_t> counts;
    for (size_t a = 0; a < fs.objects.size(); ++a)
        for (size_t b = 0; b < fs.objects.size(); ++b) {
            size_t c = fs.hom(a, b).size();
            if (c) counts[{fs.objects[a].order(), fs.objects[b].order()}] += c;
        }
    ordered_json mj = ordered_json::object();
    for (const auto& [key, v] : counts) mj[key.first.str() + "->" + key.second.str()] = v;
    j["morphisms"] = mj;
    j["control"] = cr.controlled;
    if (cr.controlled) {
        j["control_witness"] = nullptr;
    } else {
        ordered_json w;
        w["Q_gens"] = gens_json(*cr.witness_object);
        w["g"] = cr.witness_rep->to_cycles();
        j["control_witness"] = w;
    }
    // saturation is only decided under control; see the fusion layer
    if (saturated)
        j["saturated"] = *saturated;
    else
        j["saturated"] = "not determined";
    return j;
}

inline ordered_json empty_thm12() {
    ordered_json j;
    j["applicable"] = nullptr;
    j["rows"] = ordered_json::array();
    return j;
}

inline ordered_json empty_thm11() {
    ordered_json j;
    j["licensed"] = nullptr;
    j["holds"] = nullptr;
    j["rows"] = ordered_json::array();
    return j;
}

inline ordered_json empty_brute() {
    ordered_json j;
    j["result"] = nullptr;
    j["label"] = nullptr;
    j["scott_dim"] = nullptr;
    j["rows"] = ordered_json::array();
    return j;
}

inline ordered_json lemma_rows_json(const LemmaChecks& lc) {
    ordered_json a = ordered_json::array();
    for (const LemmaRow& r : lc.rows) {
        ordered_json j;
        j["Q_order"] = r.order.str();
        j["Q_gens"] = gens_json(r.q);
        j["fully_normalized"] = r.fully_normalized;
        j["applicable"] = r.applicable;
        if (r.applicable) {
            j["restriction_pass"] = r.restriction_pass;
            j["brauer_pass"] = r.brauer_pass;
            j["collision"] = r.collision;
            j["scott_local_dim"] = r.scott_local_dim;
        } else {
            j["restriction_pass"] = nullptr;
            j["brauer_pass"] = nullptr;
            j["collision"] = nullptr;
            j["scott_local_dim"] = nullptr;
        }
        a.push_back(j);
    }
    return a;
}

}  // namespace detail

inline ReportResult run_job(const JobSpec& job) {
    using Clock = std::chrono::steady_clock;
    auto t_start = Clock::now();
    validate_job(job);
    LoadedJob lj = load_job(job);

    ordered_json rep;
    rep["schema"] = kSchemaVersion;
    rep["version"] = kToolVersion;
    {
        ordered_json jj;
        jj["group"] = lj.group_label;
        jj["prime"] = job.prime;
        jj["psubgroup"] = lj.psub_label;
        jj["mode"] = job.mode;
        jj["field_degree"] = job.field_degree ? job.field_degree : 1;
        jj["seed"] = job.seed;
        jj["out"] = job.out_path;
        rep["job"] = jj;
    }
    {
        ordered_json gj;
        gj["order"] = lj.group.order().str();
        gj["degree"] = lj.group.degree();
        rep["group"] = gj;
    }
    rep["p"] = job.prime;
    {
        ordered_json pj;
        pj["order"] = lj.p_subgroup.order().str();
        rep["P"] = pj;
    }

    ordered_json fusion_j, t12_j = detail::empty_thm12(), t11_j = detail::empty_thm11(),
                          brute_j = detail::empty_brute(),
                          lemmas_j = ordered_json::object();
    std::optional<ordered_json> cor_j;
    std::map<std::string, double> times;
    int code = kExitOk;
    using detail::kRowBrute;
    using detail::kRowConds;
    using detail::kRowLocal;

    if (job.mode == "both" || job.mode == "corollary13") {
        FusionSystem fs;
        std::optional<Corollary13Result> cres;
        const Verdict* vp = nullptr;
        Verdict v;
        if (job.mode == "both") {
            v = run_verdict(lj.group, lj.p_subgroup, lj.gf, job.seed, &fs);
            vp = &v;
        } else {
            cres = corollary13_run(lj.group, lj.gf, job.seed, &fs);
            vp = &cres->verdict;
        }
        bool licensed = vp->control && vp->saturated.value_or(false);
        fusion_j = detail::fusion_json(fs, *vp->control_detail, vp->saturated);
        t12_j["applicable"] = vp->thm12_applicable;
        t12_j["rows"] = detail::rows_json(vp->rows, kRowConds);
        t11_j["licensed"] = licensed;
        if (vp->thm11_holds)
            t11_j["holds"] = *vp->thm11_holds;
        else
            t11_j["holds"] = nullptr;
        t11_j["rows"] = licensed ? detail::rows_json(vp->rows, kRowConds | kRowLocal)
                                 : ordered_json::array();
        brute_j["result"] = vp->brute_force_result;
        brute_j["label"] = licensed ? "theorem check" : "unlicensed observation";
        brute_j["scott_dim"] = vp->scott_dim;
        brute_j["rows"] = detail::rows_json(vp->rows, kRowConds | kRowBrute);
        times = vp->timings_ms;
        if (job.mode == "both") {
            code = licensed ? kExitOk : kExitUnlicensed;
        } else {
            ordered_json cj;
            cj["h_order"] = cres->h.order().str();
            cj["product_order"] = cres->product.group.order().str();
            cj["product_degree"] = cres->product.group.degree();
            cj["delta_p_order"] = cres->delta_p.order().str();
            cj["g_conditions_hold"] = cres->g_conditions_hold;
            cj["centralizers_factor"] = cres->centralizers_factor;
            cj["g_rows"] = detail::rows_json(cres->g_rows, kRowConds);
            cor_j = std::move(cj);
            if (!cres->g_conditions_hold)
                code = kExitUnlicensed;
            else if (vp->thm12_applicable && vp->brute_force_result)
                code = kExitOk;
            else
                code = kExitContradiction;
        }
    } else if (job.mode == "criteria") {
        FusionSystem fs = build_fusion(lj.group, lj.p_subgroup);
        ControlResult cr = is_controlled_by_normalizer(fs);
        std::optional<bool> sat;
        if (cr.controlled) sat = is_saturated_given_control(fs);
        bool licensed = cr.controlled && sat.value_or(false);
        Theorem12Result t12 = theorem12_verdict(lj.group, lj.p_subgroup, job.prime, fs);
        fusion_j = detail::fusion_json(fs, cr, sat);
        t12_j["applicable"] = t12.applicable;
        t12_j["rows"] = detail::rows_json(t12.rows, kRowConds);
        std::optional<Theorem11Result> t11;
        if (licensed)
            t11 = theorem11_criterion(lj.group, lj.p_subgroup, lj.gf, job.seed, fs);
        t11_j["licensed"] = licensed;
        if (t11)
            t11_j["holds"] = t11->holds;
        else
            t11_j["holds"] = nullptr;
        t11_j["rows"] = t11 ? detail::rows_json(t11->rows, kRowConds | kRowLocal)
                            : ordered_json::array();
        if (!licensed)
            code = kExitUnlicensed;
        else if (t12.applicable && !t11->holds)
            code = kExitContradiction;  // sufficient conditions contradicted
    } else if (job.mode == "brute") {
        FusionSystem fs = build_fusion(lj.group, lj.p_subgroup);
        ControlResult cr = is_controlled_by_normalizer(fs);
        std::optional<bool> sat;
        if (cr.controlled) sat = is_saturated_given_control(fs);
        bool licensed = cr.controlled && sat.value_or(false);
        fusion_j = detail::fusion_json(fs, cr, sat);
        BruteForceResult bf =
            brute_force_brauer_indecomposable(lj.group, lj.p_subgroup, lj.gf, job.seed);
        brute_j["result"] = bf.result;
        brute_j["label"] = licensed ? "theorem check" : "unlicensed observation";
        brute_j["scott_dim"] = bf.scott_dim;
        brute_j["rows"] = detail::rows_json(bf.rows, kRowConds | kRowBrute);
        code = kExitOk;
    } else {  // lemmas
        FusionSystem fs;
        LemmaChecks lc = lemma_checks(lj.group, lj.p_subgroup, lj.gf, job.seed, &fs);
        ControlResult cr = is_controlled_by_normalizer(fs);
        std::optional<bool> sat;
        if (cr.controlled) sat = is_saturated_given_control(fs);
        fusion_j = detail::fusion_json(fs, cr, sat);
        lemmas_j["licensed"] = lc.licensed;
        lemmas_j["all_pass"] = lc.all_pass;
        lemmas_j["rows"] = detail::lemma_rows_json(lc);
        lemmas_j["decomposable_case_found"] = lc.decomposable_case_found;
        if (lc.max_decomposable_order)
            lemmas_j["max_decomposable_order"] = lc.max_decomposable_order->str();
        else
            lemmas_j["max_decomposable_order"] = nullptr;
        if (lc.lemma31_pass) {
            lemmas_j["lemma31_pass"] = *lc.lemma31_pass;
            lemmas_j["lemma31_note"] = "checked at the largest subgroup with a "
                                       "decomposable restricted quotient";
        } else {
            lemmas_j["lemma31_pass"] = nullptr;
            lemmas_j["lemma31_note"] =
                "vacuous: no subgroup has a decomposable restricted quotient";
        }
        bool row_failure = false;
        for (const LemmaRow& r : lc.rows)
            if (r.applicable && !(r.restriction_pass && r.brauer_pass)) row_failure = true;
        if (row_failure || lc.lemma31_pass == false)
            code = kExitContradiction;
        else
            code = lc.licensed ? kExitOk : kExitUnlicensed;
    }

    rep["fusion"] = fusion_j;
    rep["thm12"] = t12_j;
    rep["thm11"] = t11_j;
    rep["brute"] = brute_j;
    rep["lemmas"] = lemmas_j;
    if (cor_j) rep["corollary13"] = *cor_j;
    rep["seed"] = job.seed;
    if (job.timings) {
        times["total"] =
            std::chrono::duration<double, std::milli>(Clock::now() - t_start).count();
        ordered_json tj = ordered_json::object();
        for (const auto& [k, v2] : times) tj[k] = v2;
        rep["timings"] = tj;
    } else {
        rep["timings"] = ordered_json::object();
    }
    return {std::move(rep), code};
}

}  // namespace scott
