#pragma once

#include "sphereforge/workspace.hpp"

#include <string>
#include <vector>

namespace sphereforge {

/// One assertion of a verification suite.
struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;

    int passed() const {
        int n = 0;
        for (const Check& c : checks) n += c.pass ? 1 : 0;
        return n;
    }
    int failed() const { return static_cast<int>(checks.size()) - passed(); }
    bool ok() const { return failed() == 0; }

    void add(const std::string& name, bool pass, const std::string& detail = "") {
        checks.push_back({name, pass, detail});
    }

    Json to_json() const {
        Json jchecks = Json::array();
        for (const Check& c : checks) {
            Json jc{{"name", c.name}, {"pass", c.pass}};
            if (!c.detail.empty()) jc["detail"] = c.detail;
            jchecks.push_back(std::move(jc));
        }
        return Json{{"suite", suite},
                    {"checks", std::move(jchecks)},
                    {"passed", passed()},
                    {"failed", failed()},
                    {"ok", ok()}};
    }
};

namespace suites {

inline std::map<int, int> flip_degrees(const std::map<int, int>& m) {
    std::map<int, int> out;
    for (auto& [n, d] : m) out[-n] = d;
    return out;
}

/// dim Hom^i(x,y) = dim Hom^{-i}(y, S x) for all pairs, all degrees.
inline SuiteReport serre_duality(const Workspace& ws) {
    SuiteReport rep{"serre-duality", {}};
    std::map<std::string, DObject> serres;
    for (auto& [name, obj] : ws.objects) serres.emplace(name, serre(obj));
    for (auto& [nx, x] : ws.objects)
        for (auto& [ny, y] : ws.objects) {
            auto lhs = hom_dims(x, y);
            auto rhs = flip_degrees(hom_dims(y, serres.at(nx)));
            rep.add(nx + "," + ny, lhs == rhs);
        }
    return rep;
}

/// Long-exact-sequence rank conditions and Euler additivity on seeded
/// random cones between workspace objects.
inline SuiteReport triangle_les(const Workspace& ws, int count = 12) {
    SuiteReport rep{"triangle-les", {}};
    std::vector<std::string> names;
    for (auto& [name, obj] : ws.objects)
        if (!obj.is_zero()) names.push_back(name);
    if (names.size() < 2) {
        rep.add("setup", false, "need at least two nonzero objects");
        return rep;
    }
    Rng rng(ws.seed);
    int made = 0, guard = 0;
    while (made < count && guard < count * 20) {
        ++guard;
        const std::string& nx = names[rng.integer(0, static_cast<long>(names.size()) - 1)];
        const std::string& ny = names[rng.integer(0, static_cast<long>(names.size()) - 1)];
        ProjComplex xc = to_proj(ws.object(nx));
        ProjComplex yc = to_proj(ws.object(ny));
        GradedHom gh = hom_graded_cx(xc, yc);
        if (gh.dims().empty()) continue;
        // pick a degree and a representative mix
        auto it = gh.dims().begin();
        std::advance(it, rng.integer(0, static_cast<long>(gh.dims().size()) - 1));
        const int deg = it->first;
        ChainMap f = gh.rep(deg, static_cast<int>(rng.integer(0, it->second - 1)));
        if (deg != 0) {
            // turn a degree-d class into a degree-0 map onto the shifted target
            ProjComplex ysh = yc.shifted(deg);
            ChainMap g{xc, ysh, 0, {}};
            for (auto& [i, pm] : f.comps) g.comps.emplace(i, pm);
            g.validate();
            Triangle t = cone_triangle(g);
            const std::string& nw = names[rng.integer(0, static_cast<long>(names.size()) - 1)];
            const DObject& w = ws.object(nw);
            bool les = triangle_les_ok(w, t);
            bool eul = euler_pairing(w, t.y) ==
                       euler_pairing(w, t.x) + euler_pairing(w, t.z);
            rep.add("cone(" + nx + "->" + ny + "[" + std::to_string(deg) + "]) vs " + nw,
                    les && eul, les ? (eul ? "" : "euler additivity failed")
                                    : "rank conditions failed");
        } else {
            Triangle t = cone_triangle(f);
            const std::string& nw = names[rng.integer(0, static_cast<long>(names.size()) - 1)];
            const DObject& w = ws.object(nw);
            bool les = triangle_les_ok(w, t);
            bool eul = euler_pairing(w, t.y) ==
                       euler_pairing(w, t.x) + euler_pairing(w, t.z);
            rep.add("cone(" + nx + "->" + ny + ") vs " + nw, les && eul,
                    les ? (eul ? "" : "euler additivity failed") : "rank conditions failed");
        }
        ++made;
    }
    if (made < count) rep.add("setup", false, "could not generate enough nonzero maps");
    return rep;
}

/// Mutation round trips on the mutually inverse domains: R(L(x)) = x when
/// Hom^*(x,e) = 0, L(R(x)) = x when Hom^*(e,x) = 0.
inline SuiteReport mutation_roundtrip(const Workspace& ws) {
    SuiteReport rep{"mutation-roundtrip", {}};
    std::vector<std::string> excs;
    for (auto& [name, obj] : ws.objects)
        if (detect(obj, ws.seed).kind == SpherelikeProfile::Kind::exceptional)
            excs.push_back(name);
    for (const std::string& ne : excs) {
        const DObject& e = ws.object(ne);
        for (auto& [nx, x] : ws.objects) {
            if (hom_graded(x, e).vanishes())
                rep.add("R(L(" + nx + ")) through " + ne,
                        is_iso(right_mutation(e, left_mutation(e, x)), x, ws.seed).is_yes());
            if (hom_graded(e, x).vanishes())
                rep.add("L(R(" + nx + ")) through " + ne,
                        is_iso(left_mutation(e, right_mutation(e, x)), x, ws.seed).is_yes());
        }
    }
    if (rep.checks.empty()) rep.add("setup", false, "no applicable (e, x) pairs");
    return rep;
}

/// T b lands in ker R, T' b in ker L, and both projections are idempotent.
inline SuiteReport sod_orthogonality(const Workspace& ws) {
    SuiteReport rep{"sod-orthogonality", {}};
    for (auto& [ename, emb] : ws.embeddings)
        for (auto& [bname, b] : ws.objects) {
            SodTriangles sod = sod_project(emb, b);
            bool orth = true;
            for (int i = 0; i < emb.size(); ++i) {
                orth = orth && hom_graded(emb.seq[i], sod.tb).vanishes();
                orth = orth && hom_graded(sod.tpb, emb.seq[i]).vanishes();
            }
            rep.add(ename + ": orthogonality of T/T' at " + bname, orth);
            rep.add(ename + ": FR idempotent at " + bname,
                    is_iso(fr_project(emb, sod.frb), sod.frb, ws.seed).is_yes());
            rep.add(ename + ": T idempotent at " + bname,
                    is_iso(t_object(emb, sod.tb), sod.tb, ws.seed).is_yes());
        }
    if (rep.checks.empty()) rep.add("setup", false, "workspace has no embeddings");
    return rep;
}

/// Adjunction route vs Serre route for Frobenius neighbourhood membership.
inline SuiteReport route_equivalence(const Workspace& ws) {
    SuiteReport rep{"route-equivalence", {}};
    for (auto& [ename, emb] : ws.embeddings) {
        std::vector<std::string> roster;
        for (auto& [name, obj] : ws.objects)
            if (in_image(emb, obj)) roster.push_back(name);
        for (const std::string& na : roster) {
            const DObject& a = ws.object(na);
            for (auto& [nb, b] : ws.objects) {
                bool adj = frbO_member(emb, a, b, false);
                bool ser = frbO_member_serre(emb, a, b, false);
                rep.add(ename + ": " + na + " vs " + nb, adj == ser);
            }
        }
    }
    if (rep.checks.empty()) rep.add("setup", false, "workspace has no embeddings");
    return rep;
}

/// Membership matches the direct P-vanishing test; members decompose as
/// image (+) two-sided orthogonal summands; non-members refuse.
inline SuiteReport frobenius_decomposition(const Workspace& ws) {
    SuiteReport rep{"frobenius-decomposition", {}};
    for (auto& [ename, emb] : ws.embeddings)
        for (auto& [bname, b] : ws.objects) {
            bool member = frb_codomain_member(emb, b);
            bool direct = p_operator(emb, b).is_zero();
            rep.add(ename + ": membership route agreement at " + bname, member == direct);
            if (member) {
                auto [img, orth] = frb_decompose(emb, b);
                bool sides = true;
                for (int i = 0; i < emb.size(); ++i)
                    sides = sides && hom_graded(emb.seq[i], orth).vanishes() &&
                            hom_graded(orth, emb.seq[i]).vanishes();
                bool recombine = is_iso(img.sum(orth), b, ws.seed).is_yes();
                rep.add(ename + ": decomposition of " + bname, sides && recombine,
                        sides ? (recombine ? "" : "summands do not recombine")
                              : "orthogonal part not two-sided orthogonal");
            } else {
                bool threw = false;
                try {
                    frb_decompose(emb, b);
                } catch (const Error&) {
                    threw = true;
                }
                rep.add(ename + ": non-member rejected at " + bname, threw);
            }
        }
    if (rep.checks.empty()) rep.add("setup", false, "workspace has no embeddings");
    return rep;
}

/// detect() output is consistent with the raw graded dims and the Serre
/// comparison it claims.
inline SuiteReport spherelike_detection(const Workspace& ws) {
    SuiteReport rep{"spherelike-detection", {}};
    for (auto& [name, obj] : ws.objects) {
        SpherelikeProfile p = detect(obj, ws.seed);
        auto d = hom_dims(obj, obj);
        bool consistent = true;
        switch (p.kind) {
            case SpherelikeProfile::Kind::exceptional:
                consistent = d.size() == 1 && d.count(0) && d.at(0) == 1;
                break;
            case SpherelikeProfile::Kind::spherelike:
                consistent = d.size() == 2 && d.count(0) && d.at(0) == 1 &&
                             d.count(p.degree) && d.at(p.degree) == 1 && p.degree != 0;
                break;
            case SpherelikeProfile::Kind::neither:
                consistent = obj.is_zero() ||
                             !(d.size() == 1 && d.count(0) && d.at(0) == 1) ||
                             d.size() > 2;
                break;
        }
        rep.add("profile of " + name, consistent);
        if (p.cy_degree)
            rep.add("cy certificate of " + name,
                    is_iso(serre(obj), obj.shifted(*p.cy_degree), ws.seed).is_yes());
        if (p.kind == SpherelikeProfile::Kind::spherelike) {
            AsphericityData asp = asphericity(obj, p.degree, ws.seed);
            rep.add("asphericity cone vs CY for " + name,
                    asp.q.is_zero() == (p.cy_degree && *p.cy_degree == p.degree));
        }
    }
    return rep;
}

/// The asphericity triangle passes LES probe checks; the object lies in
/// its own spherical subcategory; a vanishing cone admits everything.
inline SuiteReport asphericity_consistency(const Workspace& ws) {
    SuiteReport rep{"asphericity-consistency", {}};
    for (auto& [name, obj] : ws.objects) {
        SpherelikeProfile p = detect(obj, ws.seed);
        if (p.kind != SpherelikeProfile::Kind::spherelike) continue;
        AsphericityData asp = asphericity(obj, p.degree, ws.seed);
        rep.add(name + " in own subcategory", sph_subcat_member(obj, asp));
        for (auto& [nw, w] : ws.objects) {
            rep.add("LES of asphericity(" + name + ") vs " + nw,
                    triangle_les_ok(w, asp.tri));
            if (asp.q.is_zero())
                rep.add("vacuous membership of " + nw + " for " + name,
                        sph_subcat_member(w, asp));
        }
    }
    if (rep.checks.empty()) rep.add("setup", true, "vacuously true: workspace has no spherelike objects");
    return rep;
}

/// SphO = FrbO = spherical-subcategory membership for composed spherelike
/// functors built from spherical-in-subcategory sources.
inline SuiteReport composition_theorem(const Workspace& ws) {
    SuiteReport rep{"composition-theorem", {}};
    for (auto& [ename, emb] : ws.embeddings)
        for (auto& [na, a] : ws.objects) {
            if (a.is_zero() || !in_image(emb, a)) continue;
            auto d = hom_dims(a, a);
            if (!(d.size() == 2 && d.count(0) && d.at(0) == 1)) continue;
            int deg = 0;
            for (auto& [n, k] : d)
                if (n != 0 && k == 1) deg = n;
            if (deg == 0) continue;
            if (!is_iso(serre_sub(emb, a), a.shifted(deg), ws.seed).is_yes()) continue;
            // a is spherical in the subcategory
            SpherelikeProfile amb = detect(a, ws.seed);
            if (amb.kind != SpherelikeProfile::Kind::spherelike) continue;
            AsphericityData asp = asphericity(a, amb.degree, ws.seed);
            for (auto& [nb, b] : ws.objects) {
                bool sph = sphO_member(emb, a, b, true, ws.seed);
                bool frb = frbO_member(emb, a, b, false);
                bool sub = sph_subcat_member(b, asp);
                rep.add(ename + ": three-way agreement for " + na + " at " + nb,
                        sph == frb && frb == sub);
            }
            // cotwist profile: the composed functor inherits the source shift
            rep.add(ename + ": cotwist profile of " + na,
                    d.count(deg) == 1 && d.at(0) == 1);
        }
    if (rep.checks.empty())
        rep.add("setup", true, "vacuously true: no spherical-in-subcategory sources in workspace");
    return rep;
}

/// Maximal element at the zero source, the meet law for direct sums, and
/// antisymmetry of the computed order.
inline SuiteReport poset_laws(const Workspace& ws) {
    SuiteReport rep{"poset-laws", {}};
    for (auto& [ename, emb] : ws.embeddings) {
        std::vector<NamedObject> roster{{"0", DObject::zero(ws.ctx)}};
        for (auto& [name, obj] : ws.objects)
            if (!obj.is_zero() && in_image(emb, obj) && roster.size() < 6)
                roster.push_back({name, obj});
        std::vector<NamedObject> probes;
        for (auto& [name, obj] : ws.objects) probes.push_back({name, obj});
        if (probes.empty()) continue;
        NbhdPoset poset = poset_build(emb, roster, probes, Flavor::frbO);
        bool maximal = true;
        for (bool m : poset.matrix[0]) maximal = maximal && m;
        rep.add(ename + ": zero column is all-true", maximal);
        for (std::size_t i = 1; i < poset.matrix.size(); ++i)
            rep.add(ename + ": " + poset.roster[i] + " below maximum",
                    detail::col_subset(poset.matrix[i], poset.matrix[0]));
        if (roster.size() >= 3) {
            std::vector<bool> meet(probes.size());
            DObject sum = roster[1].obj.sum(roster[2].obj);
            for (std::size_t p = 0; p < probes.size(); ++p) {
                meet[p] = poset.matrix[1][p] && poset.matrix[2][p];
            }
            std::vector<bool> col(probes.size());
            for (std::size_t p = 0; p < probes.size(); ++p)
                col[p] = frbO_member(emb, sum, probes[p].obj, false);
            rep.add(ename + ": meet law for " + roster[1].name + "+" + roster[2].name,
                    col == meet);
        }
        bool antisym = true;
        for (const auto& n1 : poset.nodes)
            for (const auto& n2 : poset.nodes)
                if (detail::col_subset(n1.column, n2.column) &&
                    detail::col_subset(n2.column, n1.column) && !(n1.column == n2.column))
                    antisym = false;
        rep.add(ename + ": antisymmetry", antisym);
    }
    if (rep.checks.empty()) rep.add("setup", false, "workspace has no embeddings");
    return rep;
}

}  // namespace suites

inline SuiteReport run_suite(const std::string& name, const Workspace& ws) {
    if (name == "serre-duality") return suites::serre_duality(ws);
    if (name == "triangle-les") return suites::triangle_les(ws);
    if (name == "mutation-roundtrip") return suites::mutation_roundtrip(ws);
    if (name == "sod-orthogonality") return suites::sod_orthogonality(ws);
    if (name == "route-equivalence") return suites::route_equivalence(ws);
    if (name == "frobenius-decomposition") return suites::frobenius_decomposition(ws);
    if (name == "spherelike-detection") return suites::spherelike_detection(ws);
    if (name == "asphericity-consistency") return suites::asphericity_consistency(ws);
    if (name == "composition-theorem") return suites::composition_theorem(ws);
    if (name == "poset-laws") return suites::poset_laws(ws);
    throw ParseError("unknown verify suite '" + name + "'");
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "serre-duality",       "triangle-les",         "mutation-roundtrip",
        "sod-orthogonality",   "route-equivalence",    "frobenius-decomposition",
        "spherelike-detection", "asphericity-consistency", "composition-theorem",
        "poset-laws"};
    return names;
}

}  // namespace sphereforge
