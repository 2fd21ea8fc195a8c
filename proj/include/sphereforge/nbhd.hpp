#pragma once

#include "sphereforge/sodtwist.hpp"

#include <algorithm>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace sphereforge {

/// Classification of an object by its graded self-Homs, with the
/// Calabi-Yau degree recorded when a certified Serre-shift iso exists.
struct SpherelikeProfile {
    enum class Kind { exceptional, spherelike, neither } kind = Kind::neither;
    int degree = 0;  // spherelike degree d (deg t in k[t]/t^2)
    std::optional<int> cy_degree;

    bool spherical() const {
        return kind == Kind::spherelike && cy_degree && *cy_degree == degree;
    }
};

inline SpherelikeProfile detect(const DObject& a, std::uint64_t seed = 1) {
    SpherelikeProfile prof;
    if (a.is_zero()) return prof;
    auto d = hom_dims(a, a);
    if (d.size() == 1 && d.count(0) && d.at(0) == 1) {
        prof.kind = SpherelikeProfile::Kind::exceptional;
    } else if (d.size() == 2 && d.count(0) && d.at(0) == 1) {
        for (auto& [n, k] : d)
            if (n != 0 && k == 1) {
                prof.kind = SpherelikeProfile::Kind::spherelike;
                prof.degree = n;
            }
        if (prof.kind != SpherelikeProfile::Kind::spherelike) return prof;
    } else {
        return prof;
    }
    DObject s = serre(a);
    if (s.terms().size() == a.terms().size() && !a.terms().empty()) {
        const int off = s.terms()[0].shift - a.terms()[0].shift;
        bool uniform = true;
        for (std::size_t i = 0; i < a.terms().size(); ++i)
            uniform = uniform && (s.terms()[i].shift - a.terms()[i].shift == off);
        if (uniform && is_iso(s, a.shifted(off), seed).is_yes()) prof.cy_degree = off;
    }
    return prof;
}

/// The asphericity triangle a -> S a[-d] -> Q_a of a d-spherelike object;
/// Q_a vanishes exactly when a is d-Calabi-Yau (hence d-spherical).
struct AsphericityData {
    DObject object;
    int degree;
    DObject serre_shifted;  // S a [-d]
    DObject q;
    Triangle tri;
};

inline AsphericityData asphericity(const DObject& a, int d, std::uint64_t seed = 1) {
    SpherelikeProfile prof = detect(a, seed);
    if (prof.kind != SpherelikeProfile::Kind::spherelike || prof.degree != d)
        throw Error("asphericity: object is not " + std::to_string(d) +
                    "-spherelike, so the canonical map is not defined");
    DObject target = serre(a).shifted(-d);
    GradedHom g = hom_graded(a, target);
    if (g.dim(0) != 1)
        throw CertificationError("asphericity: canonical Hom space is not one-dimensional");
    ChainMap w = g.rep(0, 0);
    Triangle tri = cone_triangle(w);
    DObject q = tri.z;
    return AsphericityData{a, d, std::move(target), std::move(q), std::move(tri)};
}

/// Membership of b in the spherical subcategory ^perp(Q_a).
inline bool sph_subcat_member(const DObject& b, const AsphericityData& asp) {
    return hom_graded(b, asp.q).vanishes();
}

/// Frobenius neighbourhood membership, adjunction route:
/// Hom^*(A, R T' B) = Hom^*(F A, T' B) = 0.
inline bool frbO_member(const ExcEmbedding& emb, const DObject& a_img, const DObject& b,
                        bool check_image = true) {
    if (check_image && !in_image(emb, a_img))
        throw Error("frbO_member: source object is not certified in the image");
    return hom_graded(a_img, tprime_object(emb, b)).vanishes();
}

/// Frobenius neighbourhood membership, Serre route: b in ^perp(T S_B F A).
inline bool frbO_member_serre(const ExcEmbedding& emb, const DObject& a_img, const DObject& b,
                              bool check_image = true) {
    if (check_image && !in_image(emb, a_img))
        throw Error("frbO_member: source object is not certified in the image");
    return hom_graded(b, t_object(emb, serre(a_img))).vanishes();
}

/// Dual Frobenius neighbourhood: FrbOd F A = FrbO F (S_A^{-1} A), with the
/// subcategory Serre inverse computed through the image-realized adjoints.
inline bool frbOd_member(const ExcEmbedding& emb, const DObject& a_img, const DObject& b) {
    if (a_img.is_zero()) return true;
    DObject src = serre_sub_inverse(emb, a_img);
    return frbO_member(emb, src, b, false);
}

/// Frobenius codomain membership: P b = R T' b vanishes (tested through
/// the image realization F R T' b, legitimate since F is faithful).
inline bool frb_codomain_member(const ExcEmbedding& emb, const DObject& b) {
    return p_operator(emb, b).is_zero();
}

/// Decomposition of a Frobenius-codomain member as (image part, orthogonal
/// part) along the dual twist triangle T' b -> b -> F L b. The orthogonal
/// part is certified to lie in ker R and ker L.
inline std::pair<DObject, DObject> frb_decompose(const ExcEmbedding& emb, const DObject& b) {
    if (!frb_codomain_member(emb, b))
        throw Error("frb_decompose: object is not in the Frobenius codomain");
    SodTriangles sod = sod_project(emb, b);
    for (int i = 0; i < emb.size(); ++i)
        if (!hom_graded(emb.seq[i], sod.tpb).vanishes())
            throw CertificationError(
                "frb_decompose: orthogonal part is not right-orthogonal to the image");
    return {sod.flb, sod.tpb};
}

/// Spherical neighbourhood membership for the composed spherelike functor
/// F = (embedding) o F_a with a spherical in the subcategory. Delegates to
/// the Frobenius neighbourhood of the embedding.
inline bool sphO_member(const ExcEmbedding& emb, const DObject& a_img, const DObject& b,
                        bool v_nonzero = true, std::uint64_t seed = 1) {
    if (!v_nonzero || a_img.is_zero()) return true;
    if (!in_image(emb, a_img)) throw Error("sphO_member: source object is not in the image");
    auto d = hom_dims(a_img, a_img);
    bool spherelike = d.size() == 2 && d.count(0) && d.at(0) == 1;
    int deg = 0;
    for (auto& [n, k] : d)
        if (n != 0) deg = (k == 1) ? n : 0;
    if (!spherelike || deg == 0)
        throw Error("sphO_member: source object is not spherelike in the subcategory");
    if (!is_iso(serre_sub(emb, a_img), a_img.shifted(deg), seed).is_yes())
        throw Error("sphO_member: source object is not Calabi-Yau in the subcategory, "
                    "so the composed functor is not spherical over it");
    return frbO_member(emb, a_img, b, false);
}

enum class Flavor { frbO, frbOd, sphO, sph_subcat, frb_codomain, sph_codomain };

/// Spherical codomain membership for the composed spherelike functor built
/// from a spherical-in-subcategory source object. The source category is
/// the derived category of the base field, whose generator is a weak
/// generator, so the codomain coincides with the neighbourhood of the
/// source object.
inline bool sph_codomain_member(const ExcEmbedding& emb, const DObject& a_img, const DObject& b,
                                std::uint64_t seed = 1) {
    return sphO_member(emb, a_img, b, true, seed);
}

/// Membership oracle for one flavor and its defining data, with a
/// write-once evaluation cache keyed by probe id. Preconditions (image
/// certification, sphericality) are checked once at construction; member()
/// itself is pure and safe to call concurrently.
class NbhdOracle {
public:
    static NbhdOracle frbO(const ExcEmbedding& emb, const DObject& source) {
        if (!in_image(emb, source))
            throw Error("NbhdOracle: source object is not certified in the image");
        return NbhdOracle(Flavor::frbO, emb, source);
    }

    static NbhdOracle frbOd(const ExcEmbedding& emb, const DObject& source) {
        if (!in_image(emb, source))
            throw Error("NbhdOracle: source object is not certified in the image");
        NbhdOracle o(Flavor::frbOd, emb, source);
        if (!source.is_zero()) o.effective_ = serre_sub_inverse(emb, source);
        return o;
    }

    static NbhdOracle sphO(const ExcEmbedding& emb, const DObject& source, bool v_nonzero,
                           std::uint64_t seed = 1) {
        NbhdOracle o(Flavor::sphO, emb, source);
        o.all_true_ = !v_nonzero || source.is_zero();
        if (!o.all_true_) {
            // validate the precondition once; throws on bad sources
            sphO_member(emb, source, DObject::zero(emb.ctx), true, seed);
        }
        return o;
    }

    static NbhdOracle sph_codomain(const ExcEmbedding& emb, const DObject& source,
                                   std::uint64_t seed = 1) {
        NbhdOracle o = sphO(emb, source, true, seed);
        o.flavor_ = Flavor::sph_codomain;
        return o;
    }

    static NbhdOracle sph_subcat(const AsphericityData& asp) {
        NbhdOracle o(Flavor::sph_subcat, asp);
        return o;
    }

    static NbhdOracle frb_codomain(const ExcEmbedding& emb) {
        return NbhdOracle(Flavor::frb_codomain, emb, std::nullopt);
    }

    Flavor flavor() const { return flavor_; }

    /// Uncached evaluation.
    bool member(const DObject& b) const {
        switch (flavor_) {
            case Flavor::frbO:
                return frbO_member(*emb_, *source_, b, false);
            case Flavor::frbOd:
                return source_->is_zero() ? true : frbO_member(*emb_, *effective_, b, false);
            case Flavor::sphO:
            case Flavor::sph_codomain:
                return all_true_ ? true : frbO_member(*emb_, *source_, b, false);
            case Flavor::sph_subcat:
                return sph_subcat_member(b, *asp_);
            case Flavor::frb_codomain:
                return frb_codomain_member(*emb_, b);
        }
        return false;
    }

    /// Memoized evaluation; the cache entry for a key is written once.
    bool member(const std::string& key, const DObject& b) const {
        {
            std::lock_guard<std::mutex> lock(box_->mu);
            auto it = box_->cache.find(key);
            if (it != box_->cache.end()) return it->second;
        }
        bool result = member(b);
        std::lock_guard<std::mutex> lock(box_->mu);
        return box_->cache.emplace(key, result).first->second;
    }

private:
    struct CacheBox {
        std::mutex mu;
        std::map<std::string, bool> cache;
    };

    NbhdOracle(Flavor f, const ExcEmbedding& emb, std::optional<DObject> src)
        : flavor_(f), emb_(emb), source_(std::move(src)) {}
    NbhdOracle(Flavor f, AsphericityData asp) : flavor_(f), asp_(std::move(asp)) {}

    Flavor flavor_;
    std::optional<ExcEmbedding> emb_;
    std::optional<DObject> source_;
    std::optional<DObject> effective_;  // S_A^{-1}(source) for the dual flavor
    std::optional<AsphericityData> asp_;
    bool all_true_ = false;
    std::shared_ptr<CacheBox> box_ = std::make_shared<CacheBox>();
};

inline Flavor parse_flavor(const std::string& s) {
    if (s == "frbO") return Flavor::frbO;
    if (s == "frbOd") return Flavor::frbOd;
    if (s == "sphO") return Flavor::sphO;
    if (s == "sph-subcat") return Flavor::sph_subcat;
    if (s == "frb-codomain") return Flavor::frb_codomain;
    if (s == "sph-codomain") return Flavor::sph_codomain;
    throw ParseError("unknown flavor '" + s +
                     "' (expected frbO|frbOd|sphO|sph-subcat|frb-codomain|sph-codomain)");
}

inline std::string flavor_name(Flavor f) {
    switch (f) {
        case Flavor::frbO: return "frbO";
        case Flavor::frbOd: return "frbOd";
        case Flavor::sphO: return "sphO";
        case Flavor::sph_subcat: return "sph-subcat";
        case Flavor::frb_codomain: return "frb-codomain";
        case Flavor::sph_codomain: return "sph-codomain";
    }
    return "?";
}

struct NamedObject {
    std::string name;
    DObject obj;
};

/// Poset of neighbourhoods over a finite probe set. Columns are membership
/// vectors; the order is probe-wise inclusion of columns, exact for the
/// families the probes classify.
struct NbhdPoset {
    struct Node {
        std::vector<int> roster_idx;   // roster entries sharing this column
        std::vector<bool> column;
    };
    struct LatticeElem {
        std::string name;
        std::vector<bool> column;
        bool synthesized = false;  // closure element not realized by a roster object
    };

    std::vector<std::string> roster;
    std::vector<std::string> probes;
    std::vector<std::vector<bool>> matrix;  // [roster][probe]
    std::vector<Node> nodes;
    std::vector<std::pair<int, int>> hasse;  // (lower, upper) node indices
    std::vector<LatticeElem> lattice;
};

namespace detail {

inline bool col_subset(const std::vector<bool>& a, const std::vector<bool>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}

}  // namespace detail

/// Builds the membership matrix, the Hasse diagram of the inclusion order,
/// and the meet/join lattice closure at probe level. Meets are realized by
/// direct sums of roster entries (the intersection law is re-verified);
/// joins are probe-level unions, an under-approximation of thick closure.
inline NbhdPoset poset_build(const ExcEmbedding& emb, std::vector<NamedObject> roster,
                             const std::vector<NamedObject>& probes, Flavor flavor) {
    if (probes.empty()) throw Error("poset_build: empty probe set");
    if (flavor != Flavor::frbO && flavor != Flavor::frbOd)
        throw Error("poset_build: poset flavors are frbO and frbOd");
    for (const NamedObject& r : roster)
        if (!in_image(emb, r.obj))
            throw Error("poset_build: roster entry '" + r.name + "' is not in the image");

    auto eval_column = [&](const DObject& a) {
        std::vector<bool> col(probes.size());
        for (std::size_t p = 0; p < probes.size(); ++p)
            col[p] = (flavor == Flavor::frbO) ? frbO_member(emb, a, probes[p].obj, false)
                                              : frbOd_member(emb, a, probes[p].obj);
        return col;
    };

    NbhdPoset out;
    for (const NamedObject& p : probes) out.probes.push_back(p.name);

    // evaluate roster columns in parallel; oracles are pure
    std::vector<std::future<std::vector<bool>>> jobs;
    for (const NamedObject& r : roster)
        jobs.push_back(std::async(std::launch::async, eval_column, r.obj));
    for (std::size_t i = 0; i < roster.size(); ++i) {
        out.roster.push_back(roster[i].name);
        out.matrix.push_back(jobs[i].get());
    }

    // close under meets; the intersection law makes column(A + A') = AND
    const std::size_t base = roster.size();
    for (std::size_t i = 0; i < base; ++i)
        for (std::size_t j = i + 1; j < base; ++j) {
            std::vector<bool> meet(probes.size());
            for (std::size_t p = 0; p < probes.size(); ++p)
                meet[p] = out.matrix[i][p] && out.matrix[j][p];
            if (std::find(out.matrix.begin(), out.matrix.end(), meet) != out.matrix.end())
                continue;
            DObject sum = roster[i].obj.sum(roster[j].obj);
            std::vector<bool> col = eval_column(sum);
            if (col != meet)
                throw CertificationError("poset_build: direct-sum column violates the "
                                         "intersection law");
            std::string nm = roster[i].name + "+" + roster[j].name;
            roster.push_back(NamedObject{nm, sum});
            out.roster.push_back(nm);
            out.matrix.push_back(col);
        }

    // nodes: distinct columns
    for (std::size_t i = 0; i < out.matrix.size(); ++i) {
        bool found = false;
        for (NbhdPoset::Node& n : out.nodes)
            if (n.column == out.matrix[i]) {
                n.roster_idx.push_back(static_cast<int>(i));
                found = true;
            }
        if (!found) out.nodes.push_back({{static_cast<int>(i)}, out.matrix[i]});
    }
    // Hasse edges: covering pairs of the inclusion order
    const std::size_t n = out.nodes.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (!detail::col_subset(out.nodes[i].column, out.nodes[j].column)) continue;
            bool covering = true;
            for (std::size_t k = 0; k < n && covering; ++k) {
                if (k == i || k == j) continue;
                if (detail::col_subset(out.nodes[i].column, out.nodes[k].column) &&
                    detail::col_subset(out.nodes[k].column, out.nodes[j].column))
                    covering = false;
            }
            if (covering) out.hasse.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }

    // lattice closure: meets and joins on probe-indexed sets
    for (std::size_t i = 0; i < out.matrix.size(); ++i)
        out.lattice.push_back({out.roster[i], out.matrix[i], false});
    bool grew = true;
    while (grew) {
        grew = false;
        const std::size_t cur = out.lattice.size();
        for (std::size_t i = 0; i < cur && out.lattice.size() < 512; ++i)
            for (std::size_t j = i + 1; j < cur; ++j) {
                for (bool join : {false, true}) {
                    std::vector<bool> c(probes.size());
                    for (std::size_t p = 0; p < probes.size(); ++p)
                        c[p] = join ? (out.lattice[i].column[p] || out.lattice[j].column[p])
                                    : (out.lattice[i].column[p] && out.lattice[j].column[p]);
                    bool present = false;
                    for (const auto& e : out.lattice) present = present || e.column == c;
                    if (!present) {
                        const char* op = join ? "|" : "&";
                        out.lattice.push_back({"(" + out.lattice[i].name + op +
                                                   out.lattice[j].name + ")",
                                               c, true});
                        grew = true;
                    }
                }
            }
    }
    return out;
}

}  // namespace sphereforge
