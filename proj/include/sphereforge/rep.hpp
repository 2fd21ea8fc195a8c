#pragma once

#include "sphereforge/matrix.hpp"
#include "sphereforge/quiver.hpp"

#include <numeric>
#include <vector>

namespace sphereforge {

/// Quiver representation: a vector space dimension per vertex and an exact
/// matrix per arrow, of shape dims[tgt] x dims[src]. The zero representation
/// (all dims 0) is legal.
class Rep {
public:
    Rep(CtxPtr ctx, std::vector<int> dims, std::vector<Matrix> mats)
        : ctx_(std::move(ctx)), dims_(std::move(dims)), mats_(std::move(mats)) {
        const Quiver& q = ctx_->quiver;
        if (static_cast<int>(dims_.size()) != q.vertex_count())
            throw Error("rep: wrong number of vertex dimensions");
        if (static_cast<int>(mats_.size()) != q.arrow_count())
            throw Error("rep: wrong number of arrow matrices");
        for (int a = 0; a < q.arrow_count(); ++a) {
            const Arrow& ar = q.arrow(a);
            if (static_cast<int>(mats_[a].rows()) != dims_[ar.tgt] ||
                static_cast<int>(mats_[a].cols()) != dims_[ar.src])
                throw Error("rep: matrix shape mismatch on arrow '" + ar.name + "'");
        }
    }

    static Rep zero(const CtxPtr& ctx) {
        const Quiver& q = ctx->quiver;
        std::vector<int> dims(q.vertex_count(), 0);
        std::vector<Matrix> mats;
        for (int a = 0; a < q.arrow_count(); ++a) mats.emplace_back(0, 0);
        return Rep(ctx, std::move(dims), std::move(mats));
    }

    const CtxPtr& ctx() const { return ctx_; }
    const std::vector<int>& dims() const { return dims_; }
    int dim(int v) const { return dims_[v]; }
    const Matrix& mat(int a) const { return mats_[a]; }

    int total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), 0); }
    bool is_zero() const { return total_dim() == 0; }

    bool operator==(const Rep& o) const {
        return ctx_.get() == o.ctx_.get() && dims_ == o.dims_ && mats_ == o.mats_;
    }

    /// Composite action along a path (identity for trivial paths).
    Matrix path_action(const Path& p) const {
        Matrix m = Matrix::identity(dims_[p.src]);
        for (int a : p.arrows) m = mats_[a] * m;
        return m;
    }

private:
    CtxPtr ctx_;
    std::vector<int> dims_;
    std::vector<Matrix> mats_;
};

/// Morphism of representations: one matrix per vertex, intertwining the
/// arrow actions exactly.
class RepMap {
public:
    RepMap(Rep source, Rep target, std::vector<Matrix> comps, bool validate = true)
        : src_(std::move(source)), tgt_(std::move(target)), comps_(std::move(comps)) {
        check_same_ctx(src_.ctx(), tgt_.ctx());
        const Quiver& q = src_.ctx()->quiver;
        if (static_cast<int>(comps_.size()) != q.vertex_count())
            throw Error("repmap: wrong number of components");
        for (int v = 0; v < q.vertex_count(); ++v)
            if (static_cast<int>(comps_[v].rows()) != tgt_.dim(v) ||
                static_cast<int>(comps_[v].cols()) != src_.dim(v))
                throw Error("repmap: component shape mismatch at vertex " + q.vertex_name(v));
        if (validate && !intertwines())
            throw Error("repmap: components do not intertwine the arrow actions");
    }

    static RepMap zero(const Rep& source, const Rep& target) {
        std::vector<Matrix> comps;
        const Quiver& q = source.ctx()->quiver;
        for (int v = 0; v < q.vertex_count(); ++v)
            comps.emplace_back(target.dim(v), source.dim(v));
        return RepMap(source, target, std::move(comps), false);
    }

    static RepMap id(const Rep& m) {
        std::vector<Matrix> comps;
        for (int v = 0; v < m.ctx()->quiver.vertex_count(); ++v)
            comps.push_back(Matrix::identity(m.dim(v)));
        return RepMap(m, m, std::move(comps), false);
    }

    const Rep& source() const { return src_; }
    const Rep& target() const { return tgt_; }
    const Matrix& comp(int v) const { return comps_[v]; }

    bool intertwines() const {
        const Quiver& q = src_.ctx()->quiver;
        for (int a = 0; a < q.arrow_count(); ++a) {
            const Arrow& ar = q.arrow(a);
            if (!(comps_[ar.tgt] * src_.mat(a) == tgt_.mat(a) * comps_[ar.src])) return false;
        }
        return true;
    }

    bool is_zero() const {
        for (const Matrix& c : comps_)
            if (!c.is_zero()) return false;
        return true;
    }

    RepMap compose_after(const RepMap& inner) const {  // this o inner
        std::vector<Matrix> comps;
        for (std::size_t v = 0; v < comps_.size(); ++v)
            comps.push_back(comps_[v] * inner.comps_[v]);
        return RepMap(inner.src_, tgt_, std::move(comps), false);
    }

    RepMap operator+(const RepMap& o) const {
        std::vector<Matrix> comps;
        for (std::size_t v = 0; v < comps_.size(); ++v) comps.push_back(comps_[v] + o.comps_[v]);
        return RepMap(src_, tgt_, std::move(comps), false);
    }

    RepMap scaled(const Rational& c) const {
        std::vector<Matrix> comps;
        for (const Matrix& m : comps_) comps.push_back(m.scaled(c));
        return RepMap(src_, tgt_, std::move(comps), false);
    }

    /// All vertex components invertible (an isomorphism certificate).
    bool invertible() const {
        for (std::size_t v = 0; v < comps_.size(); ++v) {
            if (comps_[v].rows() != comps_[v].cols()) return false;
            if (rank(comps_[v]) != comps_[v].rows()) return false;
        }
        return true;
    }

private:
    Rep src_, tgt_;
    std::vector<Matrix> comps_;
};

/// Indecomposable projective P(v): basis at w = paths v -> w, arrows acting
/// by path composition.
inline Rep projective(const CtxPtr& ctx, int v) {
    const Quiver& q = ctx->quiver;
    const PathTable& pt = ctx->paths;
    std::vector<int> dims(q.vertex_count());
    for (int w = 0; w < q.vertex_count(); ++w) dims[w] = pt.count(v, w);
    std::vector<Matrix> mats;
    for (int a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        Matrix m(dims[ar.tgt], dims[ar.src]);
        const auto& from = pt.paths(v, ar.src);
        for (std::size_t j = 0; j < from.size(); ++j) {
            Path ext = from[j];
            ext.arrows.push_back(a);
            ext.tgt = ar.tgt;
            m.at(pt.index_of(ext), j) = 1;
        }
        mats.push_back(std::move(m));
    }
    return Rep(ctx, std::move(dims), std::move(mats));
}

/// Indecomposable injective I(v): basis at w dual to paths w -> v; an arrow
/// a: w -> w' acts by the transpose of precomposition with a.
inline Rep injective(const CtxPtr& ctx, int v) {
    const Quiver& q = ctx->quiver;
    const PathTable& pt = ctx->paths;
    std::vector<int> dims(q.vertex_count());
    for (int w = 0; w < q.vertex_count(); ++w) dims[w] = pt.count(w, v);
    std::vector<Matrix> mats;
    for (int a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        Matrix m(dims[ar.tgt], dims[ar.src]);
        // entry[x][p] = 1 iff p = x after a
        const auto& rows = pt.paths(ar.tgt, v);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Path pre{ar.src, ar.tgt, {a}};
            Path p = PathTable::compose(pre, rows[i]);
            m.at(i, pt.index_of(p)) = 1;
        }
        mats.push_back(std::move(m));
    }
    return Rep(ctx, std::move(dims), std::move(mats));
}

/// Simple S(v): one-dimensional at v, zero arrows.
inline Rep simple(const CtxPtr& ctx, int v) {
    const Quiver& q = ctx->quiver;
    std::vector<int> dims(q.vertex_count(), 0);
    dims[v] = 1;
    std::vector<Matrix> mats;
    for (int a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        mats.emplace_back(dims[ar.tgt], dims[ar.src]);
    }
    return Rep(ctx, std::move(dims), std::move(mats));
}

/// Block-diagonal direct sum; the empty sum is the zero representation.
inline Rep direct_sum(const CtxPtr& ctx, const std::vector<Rep>& ms) {
    const Quiver& q = ctx->quiver;
    std::vector<int> dims(q.vertex_count(), 0);
    for (const Rep& m : ms) {
        check_same_ctx(ctx, m.ctx());
        for (int v = 0; v < q.vertex_count(); ++v) dims[v] += m.dim(v);
    }
    std::vector<Matrix> mats;
    for (int a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        Matrix blk(dims[ar.tgt], dims[ar.src]);
        int ro = 0, co = 0;
        for (const Rep& m : ms) {
            const Matrix& b = m.mat(a);
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j) blk.at(ro + i, co + j) = b.at(i, j);
            ro += m.dim(ar.tgt);
            co += m.dim(ar.src);
        }
        mats.push_back(std::move(blk));
    }
    return Rep(ctx, std::move(dims), std::move(mats));
}

}  // namespace sphereforge
