#pragma once

#include "sphereforge/dobject.hpp"
#include "sphereforge/homalg.hpp"
#include "sphereforge/projsum.hpp"

#include <map>
#include <vector>

namespace sphereforge {

/// Bounded cochain complex of representations; diffs[n] maps degree n to
/// degree n+1 and d o d = 0 exactly.
struct RepComplex {
    CtxPtr ctx;
    std::map<int, Rep> comps;
    std::map<int, RepMap> diffs;

    void validate() const {
        for (const auto& [n, d] : diffs) {
            if (!comps.count(n) || !comps.count(n + 1))
                throw Error("complex: differential without endpoints at degree " +
                            std::to_string(n));
            if (!(d.source() == comps.at(n)) || !(d.target() == comps.at(n + 1)))
                throw Error("complex: differential endpoints mismatch");
            auto next = diffs.find(n + 1);
            if (next != diffs.end() && !next->second.compose_after(d).is_zero())
                throw Error("complex: d o d != 0 at degree " + std::to_string(n));
        }
    }

    /// Degreewise homology, as a normalized derived object. Subquotients
    /// pick deterministic complements against standard bases.
    DObject homology() const {
        const Quiver& q = ctx->quiver;
        std::vector<DObject::Term> terms;
        for (const auto& [n, rep] : comps) {
            std::vector<Matrix> zc, bc, hc;
            for (int v = 0; v < q.vertex_count(); ++v) {
                Matrix z = diffs.count(n) ? kernel_basis(diffs.at(n).comp(v))
                                          : Matrix::identity(rep.dim(v));
                Matrix b = diffs.count(n - 1) ? image_basis(diffs.at(n - 1).comp(v))
                                              : Matrix(rep.dim(v), 0);
                Matrix h = extend_basis_from(b, z);
                zc.push_back(std::move(z));
                bc.push_back(std::move(b));
                hc.push_back(std::move(h));
            }
            std::vector<int> dims;
            for (int v = 0; v < q.vertex_count(); ++v)
                dims.push_back(static_cast<int>(hc[v].cols()));
            bool allzero = true;
            for (int d : dims) allzero = allzero && d == 0;
            if (allzero) continue;
            std::vector<Matrix> mats;
            for (int a = 0; a < q.arrow_count(); ++a) {
                const Arrow& ar = q.arrow(a);
                Matrix im = rep.mat(a) * hc[ar.src];
                Matrix basis = hstack(bc[ar.tgt], hc[ar.tgt]);
                auto coords = solve(basis, im);
                if (!coords)
                    throw CertificationError("homology: cycle image left the cycle space");
                Matrix red(dims[ar.tgt], dims[ar.src]);
                for (int i = 0; i < dims[ar.tgt]; ++i)
                    for (int j = 0; j < dims[ar.src]; ++j)
                        red.at(i, j) = coords->at(bc[ar.tgt].cols() + i, j);
                mats.push_back(std::move(red));
            }
            terms.push_back(DObject::Term{-n, Rep(ctx, std::move(dims), std::move(mats))});
        }
        return DObject(ctx, std::move(terms));
    }
};

/// Bounded complex of tracked projective sums with path-matrix
/// differentials. The computational realization for cones and graded Homs.
struct ProjComplex {
    CtxPtr ctx;
    std::map<int, ProjSum> terms;
    std::map<int, PathMat> diffs;

    bool empty() const {
        for (const auto& [n, t] : terms)
            if (t.summands() > 0) return true;
        return terms.empty() ? true : false;
    }

    int lo() const { return terms.empty() ? 0 : terms.begin()->first; }
    int hi() const { return terms.empty() ? 0 : terms.rbegin()->first; }

    const ProjSum* term(int n) const {
        auto it = terms.find(n);
        return it == terms.end() ? nullptr : &it->second;
    }

    const PathMat* diff(int n) const {
        auto it = diffs.find(n);
        return it == diffs.end() ? nullptr : &it->second;
    }

    ProjComplex shifted(int k) const {
        ProjComplex out{ctx, {}, {}};
        for (const auto& [n, t] : terms) out.terms.emplace(n - k, t);
        for (const auto& [n, d] : diffs)
            out.diffs.emplace(n - k, (k % 2 == 0) ? d : -d);
        return out;
    }

    void validate() const {
        for (const auto& [n, d] : diffs) {
            if (!terms.count(n) || !terms.count(n + 1))
                throw Error("proj complex: dangling differential");
            auto next = diffs.find(n + 1);
            if (next != diffs.end() && !next->second.compose_after(d).is_zero())
                throw Error("proj complex: d o d != 0 at degree " + std::to_string(n));
        }
    }

    RepComplex realize() const {
        RepComplex rc{ctx, {}, {}};
        for (const auto& [n, t] : terms) rc.comps.emplace(n, t.realize());
        for (const auto& [n, d] : diffs)
            rc.diffs.emplace(n, realize_proj_map(terms.at(n), terms.at(n + 1), d));
        return rc;
    }

    DObject homology() const { return realize().homology(); }
};

/// Same data on the injective side (Nakayama image of a ProjComplex, or an
/// injective coresolution).
struct InjComplex {
    CtxPtr ctx;
    std::map<int, InjSum> terms;
    std::map<int, PathMat> diffs;

    RepComplex realize() const {
        RepComplex rc{ctx, {}, {}};
        for (const auto& [n, t] : terms) rc.comps.emplace(n, t.realize());
        for (const auto& [n, d] : diffs)
            rc.diffs.emplace(n, realize_inj_map(terms.at(n), terms.at(n + 1), d));
        return rc;
    }

    DObject homology() const { return realize().homology(); }
};

/// Degree-d map of projective complexes: comps[i] : X^i -> Y^{i+d} with
/// d_Y o f = (-1)^d f o d_X, i.e. a chain map X -> Y[d].
struct ChainMap {
    // source/target kept by value; complexes in this artifact stay small
    ProjComplex src;
    ProjComplex tgt;
    int degree = 0;
    std::map<int, PathMat> comps;

    const PathMat* comp(int i) const {
        auto it = comps.find(i);
        return it == comps.end() ? nullptr : &it->second;
    }

    static ChainMap identity(const ProjComplex& x) {
        ChainMap f{x, x, 0, {}};
        for (const auto& [n, t] : x.terms) {
            PathMat id = PathMat::zero(x.ctx, t.verts, t.verts);
            for (int i = 0; i < t.summands(); ++i) {
                Path triv{t.verts[i], t.verts[i], {}};
                id.blocks[i][i][x.ctx->paths.index_of(triv)] = 1;
            }
            f.comps.emplace(n, std::move(id));
        }
        return f;
    }

    void validate() const {
        const int sgn = (degree % 2 == 0) ? 1 : -1;
        for (const auto& [i, fi] : comps) {
            const PathMat* dx = src.diff(i);
            const PathMat* dy = tgt.diff(i + degree);
            const PathMat* fnext = comp(i + 1);
            PathMat lhs = dy ? dy->compose_after(fi)
                             : PathMat::zero(src.ctx, fi.src, {});
            PathMat rhs = (fnext && dx)
                              ? fnext->compose_after(*dx).scaled(Rational(sgn))
                              : PathMat::zero(src.ctx, fi.src, {});
            if (dy && fnext && dx) {
                if (!(lhs + rhs.scaled(Rational(-1))).is_zero())
                    throw Error("chain map fails to commute at degree " + std::to_string(i));
            } else if (dy && !lhs.is_zero()) {
                throw Error("chain map fails to commute at degree " + std::to_string(i));
            } else if (fnext && dx && !rhs.is_zero()) {
                throw Error("chain map fails to commute at degree " + std::to_string(i));
            }
        }
    }

    /// this o inner; degrees add.
    ChainMap compose_after(const ChainMap& inner) const {
        ChainMap out{inner.src, tgt, degree + inner.degree, {}};
        for (const auto& [i, gi] : inner.comps) {
            const PathMat* fo = comp(i + inner.degree);
            if (!fo) continue;
            out.comps.emplace(i, fo->compose_after(gi));
        }
        return out;
    }
};

namespace detail {

inline std::vector<int> concat_verts(const std::vector<const ProjSum*>& parts) {
    std::vector<int> verts;
    for (const ProjSum* p : parts)
        if (p) verts.insert(verts.end(), p->verts.begin(), p->verts.end());
    return verts;
}

/// Copies a block of path coefficients into a larger PathMat at the given
/// summand offsets.
inline void paste_block(PathMat& into, const PathMat& blk, int row_off, int col_off) {
    for (std::size_t j = 0; j < blk.tgt.size(); ++j)
        for (std::size_t i = 0; i < blk.src.size(); ++i)
            into.blocks[row_off + j][col_off + i] = blk.blocks[j][i];
}

}  // namespace detail

/// Direct sum of projective complexes (block diagonal differentials).
inline ProjComplex direct_sum_cx(const CtxPtr& ctx, const std::vector<ProjComplex>& parts) {
    ProjComplex out{ctx, {}, {}};
    std::map<int, std::vector<const ProjSum*>> slots;
    int lo = 0, hi = -1;
    bool any = false;
    for (const ProjComplex& p : parts) {
        if (p.terms.empty()) continue;
        if (!any || p.lo() < lo) lo = p.lo();
        if (!any || p.hi() > hi) hi = p.hi();
        any = true;
    }
    if (!any) return out;
    for (int n = lo; n <= hi; ++n) {
        std::vector<int> verts;
        for (const ProjComplex& p : parts) {
            const ProjSum* t = p.term(n);
            if (t) verts.insert(verts.end(), t->verts.begin(), t->verts.end());
        }
        out.terms.emplace(n, ProjSum{ctx, std::move(verts)});
    }
    for (int n = lo; n < hi; ++n) {
        PathMat d = PathMat::zero(ctx, out.terms.at(n).verts, out.terms.at(n + 1).verts);
        int co = 0, ro = 0;
        bool nonzero = false;
        for (const ProjComplex& p : parts) {
            const ProjSum* s = p.term(n);
            const ProjSum* t = p.term(n + 1);
            const PathMat* pd = p.diff(n);
            if (pd) {
                detail::paste_block(d, *pd, ro, co);
                nonzero = true;
            }
            co += s ? s->summands() : 0;
            ro += t ? t->summands() : 0;
        }
        if (nonzero) out.diffs.emplace(n, std::move(d));
    }
    // drop empty boundary terms for tidiness
    for (auto it = out.terms.begin(); it != out.terms.end();) {
        if (it->second.summands() == 0 && !out.diffs.count(it->first) &&
            !out.diffs.count(it->first - 1))
            it = out.terms.erase(it);
        else
            ++it;
    }
    return out;
}

/// Mapping cone of a degree-0 chain map f : X -> Y, with the canonical
/// inclusion Y -> cone and projection cone -> X[1].
struct ConeData {
    ProjComplex cx;
    ChainMap incl;  // Y -> cone
    ChainMap proj;  // cone -> X[1]
};

inline ConeData cone(const ChainMap& f) {
    if (f.degree != 0) throw Error("cone: chain map must have degree 0");
    const CtxPtr& ctx = f.src.ctx;
    ProjComplex out{ctx, {}, {}};
    int lo = std::min(f.src.lo() - 1, f.tgt.lo());
    int hi = std::max(f.src.hi() - 1, f.tgt.hi());
    auto xs = [&](int n) { return f.src.term(n + 1); };
    auto ys = [&](int n) { return f.tgt.term(n); };
    for (int n = lo; n <= hi; ++n) {
        std::vector<int> verts = detail::concat_verts({xs(n), ys(n)});
        out.terms.emplace(n, ProjSum{ctx, std::move(verts)});
    }
    for (int n = lo; n < hi; ++n) {
        PathMat d = PathMat::zero(ctx, out.terms.at(n).verts, out.terms.at(n + 1).verts);
        const int xrows = xs(n + 1) ? xs(n + 1)->summands() : 0;
        const int xcols = xs(n) ? xs(n)->summands() : 0;
        bool nonzero = false;
        if (const PathMat* dx = f.src.diff(n + 1)) {
            detail::paste_block(d, dx->scaled(Rational(-1)), 0, 0);
            nonzero = true;
        }
        if (const PathMat* fc = f.comp(n + 1)) {
            detail::paste_block(d, *fc, xrows, 0);
            nonzero = true;
        }
        if (const PathMat* dy = f.tgt.diff(n)) {
            detail::paste_block(d, *dy, xrows, xcols);
            nonzero = true;
        }
        if (nonzero) out.diffs.emplace(n, std::move(d));
    }
    for (auto it = out.terms.begin(); it != out.terms.end();) {
        if (it->second.summands() == 0)
            it = out.terms.erase(it);
        else
            ++it;
    }
    for (auto it = out.diffs.begin(); it != out.diffs.end();) {
        if (!out.terms.count(it->first) || !out.terms.count(it->first + 1))
            it = out.diffs.erase(it);
        else
            ++it;
    }

    ChainMap incl{f.tgt, out, 0, {}};
    for (const auto& [n, t] : f.tgt.terms) {
        if (!out.terms.count(n)) continue;
        PathMat m = PathMat::zero(ctx, t.verts, out.terms.at(n).verts);
        const int xrows = xs(n) ? xs(n)->summands() : 0;
        for (int i = 0; i < t.summands(); ++i) {
            Path triv{t.verts[i], t.verts[i], {}};
            m.blocks[xrows + i][i][ctx->paths.index_of(triv)] = 1;
        }
        incl.comps.emplace(n, std::move(m));
    }
    ChainMap proj{out, f.src.shifted(1), 0, {}};
    for (const auto& [n, t] : out.terms) {
        const ProjSum* xn = xs(n);
        if (!xn || xn->summands() == 0) continue;
        PathMat m = PathMat::zero(ctx, t.verts, xn->verts);
        for (int i = 0; i < xn->summands(); ++i) {
            Path triv{xn->verts[i], xn->verts[i], {}};
            m.blocks[i][i][ctx->paths.index_of(triv)] = 1;
        }
        proj.comps.emplace(n, std::move(m));
    }
    return ConeData{std::move(out), std::move(incl), std::move(proj)};
}

/// Cocone of f : X -> Y, i.e. cone(f)[-1], with the canonical projection
/// onto X. Completes the triangle cocone -> X -> Y.
struct CoconeData {
    ProjComplex cx;
    ChainMap proj;  // cocone -> X
};

inline CoconeData cocone(const ChainMap& f) {
    ConeData c = cone(f);
    ProjComplex sh = c.cx.shifted(-1);
    ChainMap proj{sh, f.src, 0, {}};
    const CtxPtr& ctx = f.src.ctx;
    for (const auto& [n, t] : sh.terms) {
        const ProjSum* xn = f.src.term(n);
        if (!xn || xn->summands() == 0) continue;
        PathMat m = PathMat::zero(ctx, t.verts, xn->verts);
        for (int i = 0; i < xn->summands(); ++i) {
            Path triv{xn->verts[i], xn->verts[i], {}};
            m.blocks[i][i][ctx->paths.index_of(triv)] = 1;
        }
        proj.comps.emplace(n, std::move(m));
    }
    return CoconeData{std::move(sh), std::move(proj)};
}

}  // namespace sphereforge
