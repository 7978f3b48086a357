#pragma once

#include <algorithm>
#include <memory>
#include <queue>
#include <unordered_map>
#include <vector>

#include "scott/group_ops.hpp"

namespace scott {

// Lexicographically least element of the right coset H*t, H given by its
// element list.
inline Perm coset_canonical(const std::vector<Perm>& h_elems, const Perm& t) {
    Perm best = h_elems[0] * t;
    for (size_t i = 1; i < h_elems.size(); ++i) {
        Perm c = h_elems[i] * t;
        if (c < best) best = c;
    }
    return best;
}

// Canonical representatives of the right cosets R\Q, sorted. Both groups are
// enumerated, so this is for the small subgroups that show up in traces.
inline std::vector<Perm> right_coset_reps(const Subgroup& r, const Subgroup& q,
                                          size_t limit = (size_t{1} << 20)) {
    std::vector<Perm> relems = r.elements(limit);
    std::vector<Perm> out;
    std::unordered_map<Perm, bool, PermHash> seen;
    for (const Perm& u : q.elements(limit)) {
        Perm c = coset_canonical(relems, u);
        if (seen.emplace(c, true).second) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Finite G-set with a fixed point order. The action of an arbitrary group
// element is evaluated through its generator word from the stabilizer chain,
// so the same code serves the natural action, coset actions and restrictions.
class GSet {
public:
    GSet() = default;

    // G acting on its own domain.
    static GSet natural(PermGroup g) {
        GSet x;
        x.n_ = g.degree();
        x.gen_act_ = g.generators();
        x.g_ = std::move(g);
        x.natural_ = true;
        return x;
    }

    // Right cosets H\G with right translation action. Points are ordered by
    // their canonical (lexicographically least) representatives.
    static GSet cosets(const PermGroup& g, const Subgroup& h,
                       size_t limit = (size_t{1} << 20)) {
        if (h.degree() != g.degree())
            throw std::invalid_argument("GSet::cosets: degree mismatch");
        for (const Perm& u : h.generators())
            if (!g.contains(u))
                throw std::invalid_argument("GSet::cosets: subgroup not contained");
        std::vector<Perm> helems = h.elements(limit);
        std::unordered_map<Perm, uint32_t, PermHash> index;
        std::vector<Perm> reps;
        std::queue<Perm> bfs;
        Perm r0 = coset_canonical(helems, Perm::identity(g.degree()));
        index.emplace(r0, 0);
        reps.push_back(r0);
        bfs.push(r0);
        while (!bfs.empty()) {
            Perm r = bfs.front();
            bfs.pop();
            for (const Perm& t : g.generators()) {
                Perm c = coset_canonical(helems, r * t);
                if (index.emplace(c, static_cast<uint32_t>(reps.size())).second) {
                    if (reps.size() >= limit)
                        throw std::runtime_error("GSet::cosets: too many cosets");
                    reps.push_back(c);
                    bfs.push(c);
                }
            }
        }
        std::sort(reps.begin(), reps.end());
        index.clear();
        for (uint32_t i = 0; i < reps.size(); ++i) index.emplace(reps[i], i);

        GSet x;
        x.g_ = g;
        x.n_ = static_cast<uint32_t>(reps.size());
        for (const Perm& t : g.generators()) {
            std::vector<uint32_t> img(x.n_);
            for (uint32_t i = 0; i < x.n_; ++i)
                img[i] = index.at(coset_canonical(helems, reps[i] * t));
            x.gen_act_.emplace_back(std::move(img));
        }
        x.reps_ = std::move(reps);
        return x;
    }

    // Same points, action restricted to a subgroup of the acting group.
    GSet restricted(const PermGroup& l) const {
        GSet x;
        x.n_ = n_;
        x.natural_ = natural_;
        x.reps_ = reps_;
        for (const Perm& t : l.generators()) x.gen_act_.push_back(act(t));
        x.g_ = l;
        return x;
    }

    // Action of a subgroup on an invariant subset of points (ascending
    // indices); throws if the subset is not invariant.
    GSet sub_action(const PermGroup& l, const std::vector<uint32_t>& pts) const {
        std::vector<uint32_t> local(n_, n_);
        for (uint32_t i = 0; i < pts.size(); ++i) local[pts[i]] = i;
        GSet x;
        x.n_ = static_cast<uint32_t>(pts.size());
        for (const Perm& t : l.generators()) {
            Perm s = act(t);
            std::vector<uint32_t> img(pts.size());
            for (uint32_t i = 0; i < pts.size(); ++i) {
                uint32_t y = local[s(pts[i])];
                if (y == n_)
                    throw std::logic_error("GSet::sub_action: subset not invariant");
                img[i] = y;
            }
            x.gen_act_.emplace_back(std::move(img));
        }
        x.g_ = l;
        if (!reps_.empty())
            for (uint32_t p : pts) x.reps_.push_back(reps_[p]);
        return x;
    }

    uint32_t size() const { return n_; }
    const PermGroup& group() const { return g_; }
    const std::vector<Perm>& gen_actions() const { return gen_act_; }
    const std::vector<Perm>& coset_reps() const { return reps_; }

    // Induced permutation of the point set.
    Perm act(const Perm& u) const {
        if (natural_) {
            if (!g_.contains(u))
                throw std::invalid_argument("GSet::act: element outside the group");
            return u;
        }
        auto w = g_.sift_word(u);
        if (!w) throw std::invalid_argument("GSet::act: element outside the group");
        Perm r = Perm::identity(n_);
        for (int32_t letter : *w)
            r = r * (letter >= 0 ? gen_act_[letter] : gen_act_[-letter - 1].inverse());
        return r;
    }

    uint32_t apply(uint32_t x, const Perm& u) const { return act(u)(x); }

    // Points fixed by every generator, hence by the whole subgroup.
    std::vector<uint32_t> fixed_points(const Subgroup& q) const {
        std::vector<bool> fixed(n_, true);
        for (const Perm& t : q.generators()) {
            Perm s = act(t);
            for (uint32_t i = 0; i < n_; ++i)
                if (s(i) != i) fixed[i] = false;
        }
        std::vector<uint32_t> out;
        for (uint32_t i = 0; i < n_; ++i)
            if (fixed[i]) out.push_back(i);
        return out;
    }

    // Orbit label of every pair under the diagonal action, row-major array of
    // size n^2. Labels are assigned in first-visit order over the row-major
    // scan, so the numbering is canonical. Computed once and cached.
    const std::vector<uint32_t>& pair_orbit_labels(uint32_t* count_out = nullptr) const {
        if (pair_cache_) {
            if (count_out) *count_out = pair_count_;
            return *pair_cache_;
        }
        const uint32_t unset = ~0u;
        std::vector<uint32_t> label(static_cast<size_t>(n_) * n_, unset);
        uint32_t next = 0;
        std::vector<size_t> stack;
        for (size_t start = 0; start < label.size(); ++start) {
            if (label[start] != unset) continue;
            label[start] = next;
            stack.assign(1, start);
            while (!stack.empty()) {
                size_t cur = stack.back();
                stack.pop_back();
                uint32_t i = static_cast<uint32_t>(cur / n_);
                uint32_t j = static_cast<uint32_t>(cur % n_);
                for (const Perm& s : gen_act_) {
                    size_t nxt = static_cast<size_t>(s(i)) * n_ + s(j);
                    if (label[nxt] == unset) {
                        label[nxt] = next;
                        stack.push_back(nxt);
                    }
                }
            }
            ++next;
        }
        pair_cache_ = std::make_shared<std::vector<uint32_t>>(std::move(label));
        pair_count_ = next;
        if (count_out) *count_out = next;
        return *pair_cache_;
    }

private:
    PermGroup g_;
    uint32_t n_ = 0;
    std::vector<Perm> gen_act_;  // one per generator of g_
    std::vector<Perm> reps_;     // coset representatives when built from cosets
    bool natural_ = false;
    mutable std::shared_ptr<std::vector<uint32_t>> pair_cache_;
    mutable uint32_t pair_count_ = 0;
};

}  // namespace scott
