#pragma once

#include "sphereforge/derived.hpp"

#include <string>
#include <vector>

namespace sphereforge {

/// Exceptional sequence inside the ambient derived category, standing for
/// the inclusion of the admissible subcategory it generates (an exceptional
/// functor). Projective realizations of the terms are cached.
struct ExcEmbedding {
    CtxPtr ctx;
    std::vector<DObject> seq;
    std::vector<ProjComplex> seq_cx;
    bool validated = false;

    int size() const { return static_cast<int>(seq.size()); }
};

/// Checks exceptionality of each term and semiorthogonality (no backward
/// graded Homs). Reports the first failing Hom space with its dimensions.
inline ExcEmbedding validate_exc_sequence(const CtxPtr& ctx, const std::vector<DObject>& seq) {
    ExcEmbedding emb{ctx, seq, {}, false};
    for (const DObject& e : seq) emb.seq_cx.push_back(to_proj(e));
    auto dims_str = [](const std::map<int, int>& d) {
        std::string s = "{";
        for (auto& [n, k] : d) s += std::to_string(n) + ":" + std::to_string(k) + ",";
        if (s.size() > 1) s.pop_back();
        return s + "}";
    };
    for (int i = 0; i < emb.size(); ++i) {
        auto d = hom_graded_cx(emb.seq_cx[i], emb.seq_cx[i]).dims();
        if (!(d.size() == 1 && d.count(0) && d.at(0) == 1))
            throw Error("sequence entry " + std::to_string(i + 1) +
                        " is not exceptional: self Hom dims " + dims_str(d));
    }
    for (int j = 0; j < emb.size(); ++j)
        for (int i = 0; i < j; ++i) {
            auto d = hom_graded_cx(emb.seq_cx[j], emb.seq_cx[i]).dims();
            if (!d.empty())
                throw Error("backward Hom from entry " + std::to_string(j + 1) + " to entry " +
                            std::to_string(i + 1) + " is nonzero: dims " + dims_str(d));
        }
    emb.validated = true;
    return emb;
}

namespace detail {

/// Cone of the evaluation map Hom^*(e, x) (x) e -> x, with the inclusion
/// of x into the cone. Computes the left mutation through e chain-level.
struct LeftStep {
    ProjComplex out;
    ChainMap incl;  // x -> out
};

inline LeftStep left_step(const ProjComplex& e_cx, const ProjComplex& x_cx) {
    GradedHom gh = hom_graded_cx(e_cx, x_cx);
    std::vector<ProjComplex> pieces;
    std::vector<ChainMap> reps;
    for (const auto& [n, d] : gh.dims())
        for (int k = 0; k < d; ++k) {
            pieces.push_back(e_cx.shifted(-n));
            reps.push_back(gh.rep(n, k));
        }
    ProjComplex w = direct_sum_cx(e_cx.ctx, pieces);
    ChainMap ev{w, x_cx, 0, {}};
    for (const auto& [i, wt] : w.terms) {
        const ProjSum* xt = x_cx.term(i);
        if (!xt || wt.summands() == 0) continue;
        PathMat m = PathMat::zero(e_cx.ctx, wt.verts, xt->verts);
        int col = 0;
        bool nonzero = false;
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            const ProjSum* pt = pieces[p].term(i);
            if (!pt) continue;
            // piece p at degree i is e_cx at degree i - n_p; its map into x
            // is the representative's component there
            if (const PathMat* fc = reps[p].comp(i - reps[p].degree)) {
                paste_block(m, *fc, 0, col);
                nonzero = true;
            }
            col += pt->summands();
        }
        if (nonzero) ev.comps.emplace(i, std::move(m));
    }
    ConeData c = cone(ev);
    return LeftStep{std::move(c.cx), std::move(c.incl)};
}

/// Cocone of the coevaluation x -> Hom^*(x, e)^dual (x) e, with the
/// projection onto x. The right mutation through e chain-level.
struct RightStep {
    ProjComplex out;
    ChainMap proj;  // out -> x
};

inline RightStep right_step(const ProjComplex& e_cx, const ProjComplex& x_cx) {
    GradedHom gh = hom_graded_cx(x_cx, e_cx);
    std::vector<ProjComplex> pieces;
    std::vector<ChainMap> reps;
    for (const auto& [m, d] : gh.dims())
        for (int k = 0; k < d; ++k) {
            pieces.push_back(e_cx.shifted(m));
            reps.push_back(gh.rep(m, k));
        }
    ProjComplex w = direct_sum_cx(e_cx.ctx, pieces);
    ChainMap coev{x_cx, w, 0, {}};
    for (const auto& [i, xt] : x_cx.terms) {
        const ProjSum* wt = w.term(i);
        if (!wt || xt.summands() == 0 || wt->summands() == 0) continue;
        PathMat m = PathMat::zero(e_cx.ctx, xt.verts, wt->verts);
        int row = 0;
        bool nonzero = false;
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            const ProjSum* pt = pieces[p].term(i);
            if (!pt) continue;
            if (const PathMat* fc = reps[p].comp(i)) {
                paste_block(m, *fc, row, 0);
                nonzero = true;
            }
            row += pt->summands();
        }
        if (nonzero) coev.comps.emplace(i, std::move(m));
    }
    CoconeData c = cocone(coev);
    return RightStep{std::move(c.cx), std::move(c.proj)};
}

}  // namespace detail

/// Twist of the object-induced functor F_a at x: cone of the evaluation
/// Hom^*(a, x) (x) a -> x.
inline DObject twist_object(const DObject& a, const DObject& x) {
    check_same_ctx(a.ctx(), x.ctx());
    return detail::left_step(to_proj(a), to_proj(x)).out.homology();
}

inline bool is_exceptional_object(const DObject& e) {
    auto d = hom_graded(e, e).dims();
    return d.size() == 1 && d.count(0) && d.at(0) == 1;
}

/// Left mutation through an exceptional object: cone of evaluation.
inline DObject left_mutation(const DObject& e, const DObject& x) {
    if (!is_exceptional_object(e)) throw Error("left_mutation: object is not exceptional");
    return twist_object(e, x);
}

/// Right mutation through an exceptional object: cocone of coevaluation.
inline DObject right_mutation(const DObject& e, const DObject& x) {
    if (!is_exceptional_object(e)) throw Error("right_mutation: object is not exceptional");
    return detail::right_step(to_proj(e), to_proj(x)).out.homology();
}

namespace detail {

struct FrSide {
    ProjComplex t_cx;    // T b, unreduced
    ChainMap kappa;      // b_cx -> t_cx
    ProjComplex frb_cx;  // cocone(kappa) = F R b
};

/// Twist side: T = L_{E_1} o ... o L_{E_r} applied innermost-first, with
/// the composite inclusion tracked so that F R b = cocone(b -> T b).
inline FrSide fr_side(const ExcEmbedding& emb, const ProjComplex& b_cx) {
    ProjComplex cur = b_cx;
    ChainMap kappa = ChainMap::identity(b_cx);
    for (int i = emb.size() - 1; i >= 0; --i) {
        LeftStep step = left_step(emb.seq_cx[i], cur);
        kappa = step.incl.compose_after(kappa);
        cur = step.out;
    }
    CoconeData cc = cocone(kappa);
    return FrSide{std::move(cur), std::move(kappa), std::move(cc.cx)};
}

struct FlSide {
    ProjComplex tp_cx;  // T' b, unreduced
    ChainMap kappa;     // tp_cx -> b_cx
    ProjComplex fl_cx;  // cone(kappa) = F L b
};

/// Dual twist side: T' = R_{E_r} o ... o R_{E_1} applied innermost-first,
/// with the composite projection tracked so that F L b = cone(T' b -> b).
inline FlSide fl_side(const ExcEmbedding& emb, const ProjComplex& b_cx) {
    ProjComplex cur = b_cx;
    ChainMap kappa = ChainMap::identity(b_cx);
    for (int i = 0; i < emb.size(); ++i) {
        RightStep step = right_step(emb.seq_cx[i], cur);
        kappa = kappa.compose_after(step.proj);
        cur = step.out;
    }
    ConeData c = cone(kappa);
    return FlSide{std::move(cur), std::move(kappa), std::move(c.cx)};
}

}  // namespace detail

/// The two projection triangles of the semiorthogonal decompositions
/// <ker R, im F> and <im F, ker L>:  F R b -> b -> T b  and
/// T' b -> b -> F L b, with the kernel memberships certified.
struct SodTriangles {
    DObject frb;     // F R b, in the image
    DObject tb;      // T b, right orthogonal to the image
    DObject tpb;     // T' b, left orthogonal to the image
    DObject flb;     // F L b, in the image
};

inline SodTriangles sod_project(const ExcEmbedding& emb, const DObject& b) {
    if (!emb.validated) throw Error("sod_project: embedding not validated");
    ProjComplex b_cx = to_proj(b);
    detail::FrSide fr = detail::fr_side(emb, b_cx);
    detail::FlSide fl = detail::fl_side(emb, b_cx);
    SodTriangles out{fr.frb_cx.homology(), fr.t_cx.homology(), fl.tp_cx.homology(),
                     fl.fl_cx.homology()};
    for (int i = 0; i < emb.size(); ++i) {
        if (!hom_graded(emb.seq[i], out.tb).vanishes())
            throw CertificationError("sod_project: T b admits Homs from sequence entry " +
                                     std::to_string(i + 1));
        if (!hom_graded(out.tpb, emb.seq[i]).vanishes())
            throw CertificationError("sod_project: T' b admits Homs to sequence entry " +
                                     std::to_string(i + 1));
    }
    return out;
}

/// Image-realized right adjoint value F R x.
inline DObject fr_project(const ExcEmbedding& emb, const DObject& x) {
    return detail::fr_side(emb, to_proj(x)).frb_cx.homology();
}

/// Image-realized left adjoint value F L x.
inline DObject fl_project(const ExcEmbedding& emb, const DObject& x) {
    return detail::fl_side(emb, to_proj(x)).fl_cx.homology();
}

/// Dual twist value T' x.
inline DObject tprime_object(const ExcEmbedding& emb, const DObject& x) {
    return detail::fl_side(emb, to_proj(x)).tp_cx.homology();
}

/// Twist value T x.
inline DObject t_object(const ExcEmbedding& emb, const DObject& x) {
    return detail::fr_side(emb, to_proj(x)).t_cx.homology();
}

/// Membership of b in the image subcategory: T b = 0.
inline bool in_image(const ExcEmbedding& emb, const DObject& b) {
    return t_object(emb, b).is_zero();
}

/// The comparison operator P = R T' evaluated at b, image-realized as
/// F R T' b. Vanishes exactly on the Frobenius codomain.
inline DObject p_operator(const ExcEmbedding& emb, const DObject& b) {
    DObject tpb = tprime_object(emb, b);
    return fr_project(emb, tpb);
}

/// Serre functor of the admissible subcategory, image-realized:
/// F S_A a = F R (S_B a) for a in the image.
inline DObject serre_sub(const ExcEmbedding& emb, const DObject& a_img) {
    if (!in_image(emb, a_img)) throw Error("serre_sub: object is not in the image");
    return fr_project(emb, serre(a_img));
}

/// Inverse Serre functor of the subcategory: F S_A^{-1} a = F L (S_B^{-1} a).
inline DObject serre_sub_inverse(const ExcEmbedding& emb, const DObject& a_img) {
    if (!in_image(emb, a_img)) throw Error("serre_sub_inverse: object is not in the image");
    return fl_project(emb, serre_inverse(a_img));
}

}  // namespace sphereforge
