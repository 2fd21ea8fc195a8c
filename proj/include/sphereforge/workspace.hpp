#pragma once

#include "sphereforge/json_io.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace sphereforge {

/// A loaded workspace: the quiver, named derived objects and exceptional
/// embeddings, and the seed for randomized certificates. Loading is
/// deterministic given the file bytes.
struct Workspace {
    CtxPtr ctx;
    std::map<std::string, DObject> objects;
    std::map<std::string, ExcEmbedding> embeddings;
    std::uint64_t seed = 1;

    const DObject& object(const std::string& name) const {
        auto it = objects.find(name);
        if (it == objects.end()) throw ParseError("unknown object '" + name + "'");
        return it->second;
    }

    const ExcEmbedding& embedding(const std::string& name) const {
        auto it = embeddings.find(name);
        if (it == embeddings.end()) throw ParseError("unknown embedding '" + name + "'");
        return it->second;
    }
};

namespace detail {

inline Rational json_rational(const Json& j, const std::string& where) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw ParseError(where + ": matrix entries must be strings \"p/q\" or integers");
}

inline Rep parse_rep(const CtxPtr& ctx, const Json& j, const std::string& where) {
    const Quiver& q = ctx->quiver;
    if (!j.contains("dims") || !j.at("dims").is_object())
        throw ParseError(where + "/dims: missing or not an object");
    std::vector<int> dims(q.vertex_count(), 0);
    for (auto& [vname, dim] : j.at("dims").items()) {
        if (!dim.is_number_integer() || dim.get<int>() < 0)
            throw ParseError(where + "/dims/" + vname + ": must be a nonnegative integer");
        dims[q.vertex_index(vname)] = dim.get<int>();
    }
    std::vector<Matrix> mats;
    const Json empty = Json::object();
    const Json& jmats = j.contains("mats") ? j.at("mats") : empty;
    for (int a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        const std::string mwhere = where + "/mats/" + ar.name;
        Matrix m(dims[ar.tgt], dims[ar.src]);
        if (jmats.contains(ar.name)) {
            const Json& rows = jmats.at(ar.name);
            if (!rows.is_array() || rows.size() != static_cast<std::size_t>(dims[ar.tgt]))
                throw ParseError(mwhere + ": wrong shape for arrow '" + ar.name + "' (want " +
                                 std::to_string(dims[ar.tgt]) + "x" +
                                 std::to_string(dims[ar.src]) + ")");
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const Json& row = rows[i];
                if (!row.is_array() || row.size() != static_cast<std::size_t>(dims[ar.src]))
                    throw ParseError(mwhere + ": wrong shape for arrow '" + ar.name + "' (want " +
                                     std::to_string(dims[ar.tgt]) + "x" +
                                     std::to_string(dims[ar.src]) + ")");
                for (std::size_t c = 0; c < row.size(); ++c)
                    m.at(i, c) = json_rational(row[c], mwhere);
            }
        } else if (dims[ar.tgt] > 0 && dims[ar.src] > 0) {
            throw ParseError(mwhere + ": missing matrix for arrow '" + ar.name + "'");
        }
        mats.push_back(std::move(m));
    }
    for (auto& [aname, mat] : jmats.items()) (void)q.arrow_index(aname);
    return Rep(ctx, std::move(dims), std::move(mats));
}

/// The unique parallel arrow pair of the quiver, name-sorted.
inline std::pair<int, int> kronecker_arrows(const CtxPtr& ctx, const std::string& where) {
    const Quiver& q = ctx->quiver;
    for (int a = 0; a < q.arrow_count(); ++a)
        for (int b = a + 1; b < q.arrow_count(); ++b)
            if (q.arrow(a).src == q.arrow(b).src && q.arrow(a).tgt == q.arrow(b).tgt)
                return q.arrow(a).name <= q.arrow(b).name ? std::make_pair(a, b)
                                                          : std::make_pair(b, a);
    throw ParseError(where + ": kronecker-regular needs a parallel arrow pair in the quiver");
}

}  // namespace detail

/// Loads and fully validates a workspace file. Constructors supported per
/// object: projective/injective/simple (vertex name), kronecker-regular
/// (rational lambda or "inf"), sum (object names), shift (object name +
/// "by"), zero, or an inline list of terms with dims and "p/q" matrices.
inline Workspace load_workspace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open workspace file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("workspace JSON parse error: " + std::string(e.what()));
    }

    Workspace ws;
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
            throw ParseError("/seed: must be an integer");
        ws.seed = j.at("seed").get<std::uint64_t>();
    }

    if (!j.contains("quiver") || !j.at("quiver").is_object())
        throw ParseError("/quiver: missing or not an object");
    const Json& jq = j.at("quiver");
    if (!jq.contains("vertices") || !jq.at("vertices").is_array())
        throw ParseError("/quiver/vertices: missing or not an array");
    std::vector<std::string> verts;
    for (const Json& v : jq.at("vertices")) {
        if (!v.is_string()) throw ParseError("/quiver/vertices: entries must be strings");
        verts.push_back(v.get<std::string>());
    }
    std::vector<Arrow> arrows;
    std::map<std::string, int> vidx;
    for (std::size_t i = 0; i < verts.size(); ++i) vidx[verts[i]] = static_cast<int>(i);
    if (jq.contains("arrows")) {
        if (!jq.at("arrows").is_array()) throw ParseError("/quiver/arrows: not an array");
        for (std::size_t i = 0; i < jq.at("arrows").size(); ++i) {
            const Json& ja = jq.at("arrows")[i];
            const std::string where = "/quiver/arrows/" + std::to_string(i);
            for (const char* key : {"name", "from", "to"})
                if (!ja.contains(key) || !ja.at(key).is_string())
                    throw ParseError(where + "/" + key + ": missing or not a string");
            auto fit = vidx.find(ja.at("from").get<std::string>());
            auto tit = vidx.find(ja.at("to").get<std::string>());
            if (fit == vidx.end()) throw ParseError(where + "/from: unknown vertex");
            if (tit == vidx.end()) throw ParseError(where + "/to: unknown vertex");
            arrows.push_back(Arrow{ja.at("name").get<std::string>(), fit->second, tit->second});
        }
    }
    ws.ctx = make_context(std::move(verts), std::move(arrows));

    const Json empty = Json::object();
    const Json& jobjs = j.contains("objects") ? j.at("objects") : empty;
    if (!jobjs.is_object()) throw ParseError("/objects: not an object");

    // resolve with memoized recursion; sums and shifts may reference names
    std::set<std::string> in_progress;
    std::function<const DObject&(const std::string&)> resolve =
        [&](const std::string& name) -> const DObject& {
        auto done = ws.objects.find(name);
        if (done != ws.objects.end()) return done->second;
        if (!jobjs.contains(name)) throw ParseError("unknown object name '" + name + "'");
        if (!in_progress.insert(name).second)
            throw ParseError("/objects/" + name + ": cyclic object definition");
        const Json& jo = jobjs.at(name);
        const std::string where = "/objects/" + name;
        if (!jo.is_object()) throw ParseError(where + ": not an object");
        DObject obj = DObject::zero(ws.ctx);
        if (jo.contains("projective")) {
            obj = DObject::module(
                projective(ws.ctx, ws.ctx->quiver.vertex_index(jo.at("projective"))));
        } else if (jo.contains("injective")) {
            obj = DObject::module(
                injective(ws.ctx, ws.ctx->quiver.vertex_index(jo.at("injective"))));
        } else if (jo.contains("simple")) {
            obj = DObject::module(simple(ws.ctx, ws.ctx->quiver.vertex_index(jo.at("simple"))));
        } else if (jo.contains("kronecker-regular")) {
            auto [a, b] = detail::kronecker_arrows(ws.ctx, where);
            const Json& lam = jo.at("kronecker-regular");
            bool inf = lam.is_string() && lam.get<std::string>() == "inf";
            Rational l = inf ? Rational(0) : detail::json_rational(lam, where);
            const Quiver& q = ws.ctx->quiver;
            std::vector<int> dims(q.vertex_count(), 0);
            dims[q.arrow(a).src] = 1;
            dims[q.arrow(a).tgt] = 1;
            std::vector<Matrix> mats;
            for (int ar = 0; ar < q.arrow_count(); ++ar) {
                Matrix m(dims[q.arrow(ar).tgt], dims[q.arrow(ar).src]);
                if (ar == a && m.rows() == 1 && m.cols() == 1) m.at(0, 0) = inf ? 0 : 1;
                if (ar == b && m.rows() == 1 && m.cols() == 1) m.at(0, 0) = inf ? 1 : l;
                mats.push_back(std::move(m));
            }
            obj = DObject::module(Rep(ws.ctx, std::move(dims), std::move(mats)));
        } else if (jo.contains("sum")) {
            if (!jo.at("sum").is_array()) throw ParseError(where + "/sum: not an array");
            for (const Json& part : jo.at("sum")) {
                if (!part.is_string()) throw ParseError(where + "/sum: entries must be names");
                obj = obj.sum(resolve(part.get<std::string>()));
            }
        } else if (jo.contains("shift")) {
            if (!jo.at("shift").is_string())
                throw ParseError(where + "/shift: must name an object");
            if (!jo.contains("by") || !jo.at("by").is_number_integer())
                throw ParseError(where + "/by: missing shift amount");
            obj = resolve(jo.at("shift").get<std::string>()).shifted(jo.at("by").get<int>());
        } else if (jo.contains("zero")) {
            obj = DObject::zero(ws.ctx);
        } else if (jo.contains("terms")) {
            if (!jo.at("terms").is_array()) throw ParseError(where + "/terms: not an array");
            std::vector<DObject::Term> terms;
            for (std::size_t i = 0; i < jo.at("terms").size(); ++i) {
                const Json& jt = jo.at("terms")[i];
                const std::string twhere = where + "/terms/" + std::to_string(i);
                int shift = 0;
                if (jt.contains("shift")) {
                    if (!jt.at("shift").is_number_integer())
                        throw ParseError(twhere + "/shift: must be an integer");
                    shift = jt.at("shift").get<int>();
                }
                terms.push_back(DObject::Term{shift, detail::parse_rep(ws.ctx, jt, twhere)});
            }
            obj = DObject(ws.ctx, std::move(terms));
        } else {
            throw ParseError(where + ": no recognized constructor (projective, injective, "
                                     "simple, kronecker-regular, sum, shift, zero, terms)");
        }
        in_progress.erase(name);
        return ws.objects.emplace(name, std::move(obj)).first->second;
    };
    try {
        for (auto& [name, def] : jobjs.items()) resolve(name);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("/objects: ") + e.what());
    }

    if (j.contains("embeddings")) {
        if (!j.at("embeddings").is_object()) throw ParseError("/embeddings: not an object");
        for (auto& [name, seq] : j.at("embeddings").items()) {
            const std::string where = "/embeddings/" + name;
            if (!seq.is_array() || seq.empty())
                throw ParseError(where + ": must be a nonempty array of object names");
            std::vector<DObject> objs;
            for (const Json& nm : seq) {
                if (!nm.is_string()) throw ParseError(where + ": entries must be names");
                objs.push_back(ws.object(nm.get<std::string>()));
            }
            try {
                ws.embeddings.emplace(name, validate_exc_sequence(ws.ctx, objs));
            } catch (const Error& e) {
                throw ParseError(where + ": " + e.what());
            }
        }
    }
    return ws;
}

}  // namespace sphereforge
