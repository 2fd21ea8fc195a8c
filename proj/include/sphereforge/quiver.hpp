#pragma once

#include "sphereforge/rational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace sphereforge {

struct Arrow {
    std::string name;
    int src = 0;
    int tgt = 0;
};

/// Finite quiver without directed cycles. Vertex and arrow names are unique;
/// acyclicity makes the path algebra finite-dimensional and hereditary.
class Quiver {
public:
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
        : verts_(std::move(vertices)), arrows_(std::move(arrows)) {
        for (int v = 0; v < vertex_count(); ++v)
            if (!vname_.emplace(verts_[v], v).second)
                throw ParseError("duplicate vertex name '" + verts_[v] + "'");
        for (int a = 0; a < arrow_count(); ++a) {
            const Arrow& ar = arrows_[a];
            if (ar.src < 0 || ar.src >= vertex_count() || ar.tgt < 0 || ar.tgt >= vertex_count())
                throw ParseError("arrow '" + ar.name + "' references unknown vertex");
            if (!aname_.emplace(ar.name, a).second)
                throw ParseError("duplicate arrow name '" + ar.name + "'");
        }
        topo_check();
    }

    int vertex_count() const { return static_cast<int>(verts_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const std::string& vertex_name(int v) const { return verts_[v]; }
    const Arrow& arrow(int a) const { return arrows_[a]; }

    int vertex_index(const std::string& name) const {
        auto it = vname_.find(name);
        if (it == vname_.end()) throw ParseError("unknown vertex '" + name + "'");
        return it->second;
    }

    int arrow_index(const std::string& name) const {
        auto it = aname_.find(name);
        if (it == aname_.end()) throw ParseError("unknown arrow '" + name + "'");
        return it->second;
    }

    bool same_as(const Quiver& o) const { return this == &o; }

private:
    void topo_check() const {
        std::vector<int> indeg(vertex_count(), 0);
        for (const Arrow& a : arrows_) ++indeg[a.tgt];
        std::vector<int> queue;
        for (int v = 0; v < vertex_count(); ++v)
            if (indeg[v] == 0) queue.push_back(v);
        int seen = 0;
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            ++seen;
            for (const Arrow& a : arrows_)
                if (a.src == v && --indeg[a.tgt] == 0) queue.push_back(a.tgt);
        }
        if (seen != vertex_count()) throw ParseError("quiver has a directed cycle");
    }

    std::vector<std::string> verts_;
    std::vector<Arrow> arrows_;
    std::map<std::string, int> vname_;
    std::map<std::string, int> aname_;
};

/// A path: arrows listed in traversal order (first-traversed first). When a
/// path is written as a word, the leftmost arrow acts last, so the word of
/// {a, then c} is "ca". Trivial paths have an empty arrow list.
struct Path {
    int src = 0;
    int tgt = 0;
    std::vector<int> arrows;

    bool trivial() const { return arrows.empty(); }

    bool operator==(const Path& o) const {
        return src == o.src && tgt == o.tgt && arrows == o.arrows;
    }
    bool operator<(const Path& o) const {
        if (arrows.size() != o.arrows.size()) return arrows.size() < o.arrows.size();
        if (src != o.src) return src < o.src;
        return arrows < o.arrows;
    }
};

/// Enumeration of all paths of an acyclic quiver, grouped by endpoints and
/// ordered by length then lexicographically by arrow indices. The order is
/// part of the file format: bases of projectives refer to it.
class PathTable {
public:
    explicit PathTable(const Quiver& q) : q_(&q) {
        paths_.resize(q.vertex_count());
        for (auto& row : paths_) row.resize(q.vertex_count());
        // breadth-first by length; the frontier is kept sorted
        std::vector<Path> frontier;
        for (int v = 0; v < q.vertex_count(); ++v) frontier.push_back(Path{v, v, {}});
        while (!frontier.empty()) {
            std::sort(frontier.begin(), frontier.end());
            std::vector<Path> next;
            for (const Path& p : frontier) {
                paths_[p.src][p.tgt].push_back(p);
                for (int a = 0; a < q.arrow_count(); ++a) {
                    if (q.arrow(a).src != p.tgt) continue;
                    Path ext = p;
                    ext.arrows.push_back(a);
                    ext.tgt = q.arrow(a).tgt;
                    next.push_back(std::move(ext));
                }
            }
            frontier = std::move(next);
        }
        for (int u = 0; u < q.vertex_count(); ++u)
            for (int v = 0; v < q.vertex_count(); ++v)
                for (std::size_t i = 0; i < paths_[u][v].size(); ++i)
                    index_[paths_[u][v][i]] = static_cast<int>(i);
    }

    const std::vector<Path>& paths(int from, int to) const { return paths_[from][to]; }

    int count(int from, int to) const { return static_cast<int>(paths_[from][to].size()); }

    int index_of(const Path& p) const {
        auto it = index_.find(p);
        if (it == index_.end()) throw Error("path not in table");
        return it->second;
    }

    /// Composite "second after first"; requires first.tgt == second.src.
    static Path compose(const Path& first, const Path& second) {
        if (first.tgt != second.src) throw Error("non-composable paths");
        Path r{first.src, second.tgt, first.arrows};
        r.arrows.insert(r.arrows.end(), second.arrows.begin(), second.arrows.end());
        return r;
    }

    /// All paths of the quiver, trivial paths first per vertex block order.
    std::vector<Path> all_paths() const {
        std::vector<Path> out;
        for (int u = 0; u < q_->vertex_count(); ++u)
            for (int v = 0; v < q_->vertex_count(); ++v)
                out.insert(out.end(), paths_[u][v].begin(), paths_[u][v].end());
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Word form, leftmost arrow acting last ("e_v" for trivial paths).
    std::string word(const Path& p) const {
        if (p.trivial()) return "e_" + q_->vertex_name(p.src);
        std::string w;
        for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) w += q_->arrow(*it).name;
        return w;
    }

private:
    const Quiver* q_;
    std::vector<std::vector<std::vector<Path>>> paths_;  // [from][to]
    std::map<Path, int> index_;
};

/// Shared quiver context: the quiver plus its path enumeration. Every value
/// type below keeps a handle to the context it was built over.
struct Context {
    Quiver quiver;
    PathTable paths;

    explicit Context(Quiver q) : quiver(std::move(q)), paths(quiver) {}
};

using CtxPtr = std::shared_ptr<const Context>;

inline CtxPtr make_context(std::vector<std::string> vertices, std::vector<Arrow> arrows) {
    return std::make_shared<Context>(Quiver(std::move(vertices), std::move(arrows)));
}

inline void check_same_ctx(const CtxPtr& a, const CtxPtr& b) {
    if (a.get() != b.get()) throw Error("quiver mismatch between operands");
}

}  // namespace sphereforge
