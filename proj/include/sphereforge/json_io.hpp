#pragma once

#include "sphereforge/nbhd.hpp"

#include <json.hpp>

#include <string>

namespace sphereforge {

using Json = nlohmann::ordered_json;

inline Json matrix_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_str(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json rep_json(const Rep& r) {
    const Quiver& q = r.ctx()->quiver;
    Json dims = Json::object();
    for (int v = 0; v < q.vertex_count(); ++v) dims[q.vertex_name(v)] = r.dim(v);
    Json mats = Json::object();
    for (int a = 0; a < q.arrow_count(); ++a) mats[q.arrow(a).name] = matrix_json(r.mat(a));
    return Json{{"dims", std::move(dims)}, {"mats", std::move(mats)}};
}

inline Json dobject_json(const DObject& x) {
    Json terms = Json::array();
    for (const DObject::Term& t : x.terms()) {
        Json term = rep_json(t.rep);
        term["shift"] = t.shift;
        terms.push_back(std::move(term));
    }
    return Json{{"zero", x.is_zero()}, {"terms", std::move(terms)}};
}

inline Json dims_json(const std::map<int, int>& dims) {
    Json out = Json::object();
    for (auto& [n, d] : dims) out[std::to_string(n)] = d;
    return out;
}

inline Json poset_json(const NbhdPoset& p, Flavor flavor) {
    Json out;
    out["flavor"] = flavor_name(flavor);
    out["roster"] = p.roster;
    out["probes"] = p.probes;
    Json matrix = Json::array();
    for (const auto& row : p.matrix) {
        Json r = Json::array();
        for (bool b : row) r.push_back(b);
        matrix.push_back(std::move(r));
    }
    out["membership"] = std::move(matrix);
    Json nodes = Json::array();
    for (const auto& n : p.nodes) {
        Json names = Json::array();
        for (int i : n.roster_idx) names.push_back(p.roster[i]);
        nodes.push_back(std::move(names));
    }
    out["nodes"] = std::move(nodes);
    Json hasse = Json::array();
    for (auto [lo, hi] : p.hasse)
        hasse.push_back(Json::array({p.roster[p.nodes[lo].roster_idx[0]],
                                     p.roster[p.nodes[hi].roster_idx[0]]}));
    out["hasse"] = std::move(hasse);
    Json lattice = Json::array();
    for (const auto& e : p.lattice) {
        Json col = Json::array();
        for (bool b : e.column) col.push_back(b);
        lattice.push_back(Json{{"name", e.name},
                               {"synthesized", e.synthesized},
                               {"column", std::move(col)}});
    }
    out["lattice"] = std::move(lattice);
    return out;
}

/// Hasse diagram as a DOT digraph: one node per roster entry, edges only
/// for covering relations; entries with equal columns are tied to their
/// representative by an undirected dotted edge. The probe-set fingerprint
/// rides along in a comment so two outputs are comparable.
inline std::string poset_dot(const NbhdPoset& p) {
    std::string fp;
    for (const auto& name : p.probes) fp += (fp.empty() ? "" : ",") + name;
    std::string out = "digraph nbhd_poset {\n";
    out += "  // probes: " + fp + "\n";
    out += "  rankdir=BT;\n";
    for (const auto& name : p.roster) out += "  \"" + name + "\";\n";
    for (auto [lo, hi] : p.hasse)
        out += "  \"" + p.roster[p.nodes[lo].roster_idx[0]] + "\" -> \"" +
               p.roster[p.nodes[hi].roster_idx[0]] + "\";\n";
    for (const auto& n : p.nodes)
        for (std::size_t k = 1; k < n.roster_idx.size(); ++k)
            out += "  \"" + p.roster[n.roster_idx[k]] + "\" -> \"" +
                   p.roster[n.roster_idx[0]] + "\" [dir=none, style=dotted];\n";
    out += "}\n";
    return out;
}

}  // namespace sphereforge
