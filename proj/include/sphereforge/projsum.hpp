#pragma once

#include "sphereforge/rep.hpp"

#include <vector>

namespace sphereforge {

namespace detail {

/// Column offset of summand block `i` at vertex `u`, where summand k
/// contributes `count(k,u)` basis vectors.
template <class CountFn>
int block_offset(const std::vector<int>& verts, int i, int u, CountFn count) {
    int off = 0;
    for (int k = 0; k < i; ++k) off += count(verts[k], u);
    return off;
}

}  // namespace detail

/// Formal direct sum of indecomposable projectives, with the decomposition
/// tracked. The realized basis at vertex u lists, summand by summand, the
/// paths verts[i] -> u in table order.
struct ProjSum {
    CtxPtr ctx;
    std::vector<int> verts;

    int summands() const { return static_cast<int>(verts.size()); }

    Rep realize() const {
        std::vector<Rep> parts;
        parts.reserve(verts.size());
        for (int v : verts) parts.push_back(projective(ctx, v));
        return direct_sum(ctx, parts);
    }

    int offset(int i, int u) const {
        return detail::block_offset(verts, i, u,
                                    [&](int v, int w) { return ctx->paths.count(v, w); });
    }
};

/// Formal direct sum of indecomposable injectives; realized basis at u is
/// dual to paths u -> verts[i].
struct InjSum {
    CtxPtr ctx;
    std::vector<int> verts;

    int summands() const { return static_cast<int>(verts.size()); }

    Rep realize() const {
        std::vector<Rep> parts;
        parts.reserve(verts.size());
        for (int v : verts) parts.push_back(injective(ctx, v));
        return direct_sum(ctx, parts);
    }

    int offset(int i, int u) const {
        return detail::block_offset(verts, i, u,
                                    [&](int v, int w) { return ctx->paths.count(w, v); });
    }
};

/// Map between tracked sums of projectives (or their Nakayama images), as a
/// block matrix of path coefficients: block (j,i) is a combination of the
/// paths tgt[j] -> src[i], i.e. an element of Hom(P(src[i]), P(tgt[j])).
struct PathMat {
    CtxPtr ctx;
    std::vector<int> src;
    std::vector<int> tgt;
    // blocks[j][i][p] = coefficient of the p-th path tgt[j] -> src[i]
    std::vector<std::vector<std::vector<Rational>>> blocks;

    static PathMat zero(const CtxPtr& ctx, std::vector<int> src, std::vector<int> tgt) {
        PathMat m{ctx, std::move(src), std::move(tgt), {}};
        m.blocks.resize(m.tgt.size());
        for (std::size_t j = 0; j < m.tgt.size(); ++j) {
            m.blocks[j].resize(m.src.size());
            for (std::size_t i = 0; i < m.src.size(); ++i)
                m.blocks[j][i].assign(ctx->paths.count(m.tgt[j], m.src[i]), Rational(0));
        }
        return m;
    }

    bool is_zero() const {
        for (const auto& row : blocks)
            for (const auto& blk : row)
                for (const Rational& c : blk)
                    if (c != 0) return false;
        return true;
    }

    PathMat operator+(const PathMat& o) const {
        PathMat r = *this;
        for (std::size_t j = 0; j < blocks.size(); ++j)
            for (std::size_t i = 0; i < blocks[j].size(); ++i)
                for (std::size_t p = 0; p < blocks[j][i].size(); ++p)
                    r.blocks[j][i][p] += o.blocks[j][i][p];
        return r;
    }

    PathMat scaled(const Rational& c) const {
        PathMat r = *this;
        for (auto& row : r.blocks)
            for (auto& blk : row)
                for (Rational& x : blk) x *= c;
        return r;
    }

    PathMat operator-() const { return scaled(Rational(-1)); }

    /// Composition this o inner; path words multiply by concatenation.
    PathMat compose_after(const PathMat& inner) const {
        PathMat r = PathMat::zero(ctx, inner.src, tgt);
        const PathTable& pt = ctx->paths;
        for (std::size_t k = 0; k < tgt.size(); ++k)
            for (std::size_t j = 0; j < src.size(); ++j) {
                const auto& outer_blk = blocks[k][j];
                const auto& qpaths = pt.paths(tgt[k], src[j]);
                for (std::size_t qi = 0; qi < outer_blk.size(); ++qi) {
                    if (outer_blk[qi] == 0) continue;
                    for (std::size_t i = 0; i < inner.src.size(); ++i) {
                        const auto& inner_blk = inner.blocks[j][i];
                        const auto& ppaths = pt.paths(src[j], inner.src[i]);
                        for (std::size_t pix = 0; pix < inner_blk.size(); ++pix) {
                            if (inner_blk[pix] == 0) continue;
                            Path comp = PathTable::compose(qpaths[qi], ppaths[pix]);
                            r.blocks[k][i][pt.index_of(comp)] += outer_blk[qi] * inner_blk[pix];
                        }
                    }
                }
            }
        return r;
    }
};

/// Realizes a path matrix as the module map between realized projective
/// sums: each path acts by right multiplication, r -> p o r on basis paths.
inline RepMap realize_proj_map(const ProjSum& src, const ProjSum& tgt, const PathMat& pm) {
    const Quiver& q = src.ctx->quiver;
    const PathTable& pt = src.ctx->paths;
    Rep rs = src.realize(), rt = tgt.realize();
    std::vector<Matrix> comps;
    for (int u = 0; u < q.vertex_count(); ++u) comps.emplace_back(rt.dim(u), rs.dim(u));
    for (std::size_t j = 0; j < pm.tgt.size(); ++j)
        for (std::size_t i = 0; i < pm.src.size(); ++i) {
            const auto& blk = pm.blocks[j][i];
            const auto& conn = pt.paths(pm.tgt[j], pm.src[i]);
            for (std::size_t pi = 0; pi < blk.size(); ++pi) {
                if (blk[pi] == 0) continue;
                const Path& p = conn[pi];
                for (int u = 0; u < q.vertex_count(); ++u) {
                    const auto& cols = pt.paths(pm.src[i], u);
                    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
                        Path comp = PathTable::compose(p, cols[ci]);
                        int row = tgt.offset(static_cast<int>(j), u) + pt.index_of(comp);
                        int col = src.offset(static_cast<int>(i), u) + static_cast<int>(ci);
                        comps[u].at(row, col) += blk[pi];
                    }
                }
            }
        }
    return RepMap(rs, rt, std::move(comps), false);
}

/// Realizes a path matrix on the injective side (the Nakayama image of the
/// corresponding projective map): the path acts by the transpose of left
/// multiplication on dual path bases.
inline RepMap realize_inj_map(const InjSum& src, const InjSum& tgt, const PathMat& pm) {
    const Quiver& q = src.ctx->quiver;
    const PathTable& pt = src.ctx->paths;
    Rep rs = src.realize(), rt = tgt.realize();
    std::vector<Matrix> comps;
    for (int u = 0; u < q.vertex_count(); ++u) comps.emplace_back(rt.dim(u), rs.dim(u));
    for (std::size_t j = 0; j < pm.tgt.size(); ++j)
        for (std::size_t i = 0; i < pm.src.size(); ++i) {
            const auto& blk = pm.blocks[j][i];
            const auto& conn = pt.paths(pm.tgt[j], pm.src[i]);
            for (std::size_t pi = 0; pi < blk.size(); ++pi) {
                if (blk[pi] == 0) continue;
                const Path& p = conn[pi];
                for (int u = 0; u < q.vertex_count(); ++u) {
                    const auto& rows = pt.paths(u, pm.tgt[j]);
                    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
                        Path comp = PathTable::compose(rows[ri], p);
                        int row = tgt.offset(static_cast<int>(j), u) + static_cast<int>(ri);
                        int col = src.offset(static_cast<int>(i), u) + pt.index_of(comp);
                        comps[u].at(row, col) += blk[pi];
                    }
                }
            }
        }
    return RepMap(rs, rt, std::move(comps), false);
}

/// Recovers the path coefficients of a module map between realized
/// projective sums by reading the images of the summand generators.
/// Throws if the map fails to reconstruct (not a map of the tracked sums).
inline PathMat extract_proj_map(const ProjSum& src, const ProjSum& tgt, const RepMap& f) {
    const PathTable& pt = src.ctx->paths;
    PathMat pm = PathMat::zero(src.ctx, src.verts, tgt.verts);
    for (std::size_t i = 0; i < src.verts.size(); ++i) {
        const int v = src.verts[i];
        const int gen_col = src.offset(static_cast<int>(i), v);  // trivial path e_v
        for (std::size_t j = 0; j < tgt.verts.size(); ++j) {
            const int n = pt.count(tgt.verts[j], v);
            const int off = tgt.offset(static_cast<int>(j), v);
            for (int p = 0; p < n; ++p) pm.blocks[j][i][p] = f.comp(v).at(off + p, gen_col);
        }
    }
    RepMap back = realize_proj_map(src, tgt, pm);
    for (int u = 0; u < src.ctx->quiver.vertex_count(); ++u)
        if (!(back.comp(u) == f.comp(u)))
            throw Error("map is not a morphism of the tracked projective sums");
    return pm;
}

/// Recovers path coefficients of a map between realized injective sums by
/// reading the top coordinates at the target socle vertices.
inline PathMat extract_inj_map(const InjSum& src, const InjSum& tgt, const RepMap& g) {
    const PathTable& pt = src.ctx->paths;
    PathMat pm = PathMat::zero(src.ctx, src.verts, tgt.verts);
    for (std::size_t j = 0; j < tgt.verts.size(); ++j) {
        const int w = tgt.verts[j];
        const int row = tgt.offset(static_cast<int>(j), w);  // dual of e_w
        for (std::size_t i = 0; i < src.verts.size(); ++i) {
            const int n = pt.count(w, src.verts[i]);
            const int off = src.offset(static_cast<int>(i), w);
            for (int p = 0; p < n; ++p) pm.blocks[j][i][p] = g.comp(w).at(row, off + p);
        }
    }
    RepMap back = realize_inj_map(src, tgt, pm);
    for (int u = 0; u < src.ctx->quiver.vertex_count(); ++u)
        if (!(back.comp(u) == g.comp(u)))
            throw Error("map is not a morphism of the tracked injective sums");
    return pm;
}

/// Nakayama functor on tracked projectives: P(v) -> I(v) summand-wise.
inline InjSum nakayama(const ProjSum& p) { return InjSum{p.ctx, p.verts}; }

/// Nakayama on morphisms: extract the path matrix of f and reinterpret it
/// on the injective side. Exact and functorial.
inline RepMap nakayama_map(const ProjSum& src, const ProjSum& tgt, const RepMap& f) {
    PathMat pm = extract_proj_map(src, tgt, f);
    return realize_inj_map(nakayama(src), nakayama(tgt), pm);
}

/// Inverse Nakayama on morphisms between tracked injectives.
inline RepMap nakayama_inverse_map(const InjSum& src, const InjSum& tgt, const RepMap& g) {
    PathMat pm = extract_inj_map(src, tgt, g);
    return realize_proj_map(ProjSum{src.ctx, src.verts}, ProjSum{tgt.ctx, tgt.verts}, pm);
}

}  // namespace sphereforge
