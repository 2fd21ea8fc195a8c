#pragma once

#include "sphereforge/rep.hpp"

#include <map>
#include <vector>

namespace sphereforge {

/// Normal form of an object of the bounded derived category: a finite
/// direct sum of shifted modules, sorted by shift with zero summands
/// dropped. Valid because hereditary derived categories are formal.
class DObject {
public:
    struct Term {
        int shift;
        Rep rep;
    };

    DObject(CtxPtr ctx, std::vector<Term> terms) : ctx_(std::move(ctx)) {
        std::map<int, std::vector<Rep>> by_shift;
        for (Term& t : terms) {
            check_same_ctx(ctx_, t.rep.ctx());
            if (!t.rep.is_zero()) by_shift[t.shift].push_back(std::move(t.rep));
        }
        for (auto& [s, reps] : by_shift)
            terms_.push_back(Term{s, reps.size() == 1 ? std::move(reps[0])
                                                      : direct_sum(ctx_, reps)});
    }

    static DObject zero(const CtxPtr& ctx) { return DObject(ctx, {}); }

    static DObject module(const Rep& m, int shift = 0) {
        return DObject(m.ctx(), {Term{shift, m}});
    }

    const CtxPtr& ctx() const { return ctx_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    DObject shifted(int n) const {
        std::vector<Term> ts = terms_;
        for (Term& t : ts) t.shift += n;
        return DObject(ctx_, std::move(ts));
    }

    DObject sum(const DObject& other) const {
        std::vector<Term> ts = terms_;
        ts.insert(ts.end(), other.terms_.begin(), other.terms_.end());
        return DObject(ctx_, std::move(ts));
    }

    /// Vertex dimensions of the summand at a given shift (zeros if absent).
    std::vector<int> dims_at(int shift) const {
        for (const Term& t : terms_)
            if (t.shift == shift) return t.rep.dims();
        return std::vector<int>(ctx_->quiver.vertex_count(), 0);
    }

    std::vector<int> shifts() const {
        std::vector<int> s;
        for (const Term& t : terms_) s.push_back(t.shift);
        return s;
    }

    /// Alternating-sign dimension vector: sum over terms of (-1)^shift dims.
    std::vector<long> signed_dimvec() const {
        std::vector<long> d(ctx_->quiver.vertex_count(), 0);
        for (const Term& t : terms_) {
            const long sign = (t.shift % 2 == 0) ? 1 : -1;
            for (int v = 0; v < ctx_->quiver.vertex_count(); ++v)
                d[v] += sign * t.rep.dim(v);
        }
        return d;
    }

    int total_dim() const {
        int n = 0;
        for (const Term& t : terms_) n += t.rep.total_dim();
        return n;
    }

private:
    CtxPtr ctx_;
    std::vector<Term> terms_;
};

inline DObject dsum(const CtxPtr& ctx, const std::vector<DObject>& xs) {
    DObject acc = DObject::zero(ctx);
    for (const DObject& x : xs) acc = acc.sum(x);
    return acc;
}

}  // namespace sphereforge
