#include "motco/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace motco::graph {

namespace {

bool valid_name(const std::string& name) {
    if (name.empty()) return false;
    for (char c : name)
        if (std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string uniquify(std::string candidate, std::set<std::string>& taken) {
    while (taken.count(candidate)) candidate += '\'';
    taken.insert(candidate);
    return candidate;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

OrientedGraph::OrientedGraph(std::vector<std::string> vertex_names,
                             std::vector<std::pair<int, int>> edges)
    : names_(std::move(vertex_names)), edges_(std::move(edges)) {
    std::set<std::string> seen;
    for (const auto& name : names_) {
        if (!valid_name(name)) throw LoadError("invalid vertex name: '" + name + "'");
        if (!seen.insert(name).second) throw LoadError("duplicate vertex name: " + name);
    }
    const int n = vertex_count();
    std::set<std::pair<int, int>> pairs;
    for (const auto& [s, t] : edges_) {
        if (s < 0 || s >= n || t < 0 || t >= n) throw LoadError("edge endpoint out of range");
        if (s == t) throw LoadError("loop at vertex " + names_[s]);
        if (!pairs.insert({s, t}).second)
            throw LoadError("duplicate edge " + names_[s] + " -> " + names_[t]);
        if (pairs.count({t, s}))
            throw LoadError("2-cycle between " + names_[s] + " and " + names_[t]);
    }
}

OrientedGraph OrientedGraph::with_default_names(int vertex_count,
                                                std::vector<std::pair<int, int>> edges) {
    std::vector<std::string> names;
    names.reserve(vertex_count);
    for (int i = 0; i < vertex_count; ++i) names.push_back("v" + std::to_string(i));
    return OrientedGraph(std::move(names), std::move(edges));
}

int Orientation::hamming() const { return std::popcount(flips); }

OrientedGraph apply(const OrientedGraph& g, Orientation o) {
    std::vector<std::pair<int, int>> edges = g.edges();
    for (int e = 0; e < g.edge_count(); ++e)
        if (o.flips >> e & 1) std::swap(edges[e].first, edges[e].second);
    return OrientedGraph(g.vertex_names(), std::move(edges));
}

GraphReport analyze(const OrientedGraph& g) {
    const int n = g.vertex_count();
    GraphReport rep;
    rep.indegree.assign(n, 0);
    rep.outdegree.assign(n, 0);
    UnionFind uf(n);
    for (const auto& [s, t] : g.edges()) {
        ++rep.outdegree[s];
        ++rep.indegree[t];
        uf.unite(s, t);
    }
    std::map<int, std::vector<int>> comps;
    for (int v = 0; v < n; ++v) comps[uf.find(v)].push_back(v);
    std::vector<int> comp_of(n, -1);
    for (auto& [root, verts] : comps) {
        std::sort(verts.begin(), verts.end());
        rep.components.push_back(verts);
    }
    std::sort(rep.components.begin(), rep.components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (size_t c = 0; c < rep.components.size(); ++c)
        for (int v : rep.components[c]) comp_of[v] = static_cast<int>(c);
    std::vector<int> edge_count(rep.components.size(), 0);
    for (const auto& [s, t] : g.edges()) ++edge_count[comp_of[s]];
    for (size_t c = 0; c < rep.components.size(); ++c) {
        const int v = static_cast<int>(rep.components[c].size());
        const int e = edge_count[c];
        rep.component_classes.push_back(e < v     ? ComponentClass::tree
                                        : e == v ? ComponentClass::unicyclic
                                                 : ComponentClass::multicyclic);
    }
    rep.is_free_flow = std::all_of(rep.indegree.begin(), rep.indegree.end(),
                                   [](int d) { return d <= 1; });
    rep.is_alternating = true;
    for (int v = 0; v < n; ++v)
        if (rep.indegree[v] > 0 && rep.outdegree[v] > 0) rep.is_alternating = false;
    return rep;
}

namespace {

// Adjacency in the underlying graph: vertex -> list of (neighbour, edge id).
std::vector<std::vector<std::pair<int, int>>> underlying_adjacency(const OrientedGraph& g) {
    std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& [s, t] = g.edge(e);
        adj[s].emplace_back(t, e);
        adj[t].emplace_back(s, e);
    }
    return adj;
}

// Flip mask orienting every listed edge parent -> child along a BFS of the
// underlying graph from the given roots; never revisits settled vertices.
std::uint64_t orient_away_from(const OrientedGraph& g,
                               const std::vector<std::vector<std::pair<int, int>>>& adj,
                               const std::vector<int>& roots, std::vector<char>& settled) {
    std::uint64_t flips = 0;
    std::queue<int> queue;
    for (int r : roots) {
        settled[r] = 1;
        queue.push(r);
    }
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop();
        for (const auto& [w, e] : adj[u]) {
            if (settled[w]) continue;
            settled[w] = 1;
            if (g.source(e) != u) flips |= std::uint64_t{1} << e;
            queue.push(w);
        }
    }
    return flips;
}

// Vertices on the unique cycle of a unicyclic component: prune leaves.
std::vector<int> cycle_vertices(const std::vector<int>& comp,
                                const std::vector<std::vector<std::pair<int, int>>>& adj) {
    std::map<int, int> degree;
    for (int v : comp) degree[v] = static_cast<int>(adj[v].size());
    std::set<int> removed;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v : comp) {
            if (removed.count(v) || degree[v] != 1) continue;
            removed.insert(v);
            for (const auto& [w, e] : adj[v])
                if (!removed.count(w)) --degree[w];
            changed = true;
        }
    }
    std::vector<int> cycle;
    for (int v : comp)
        if (!removed.count(v)) cycle.push_back(v);
    return cycle;
}

}  // namespace

std::vector<Orientation> enumerate_free_flow(const OrientedGraph& g) {
    if (g.edge_count() > 62) throw LoadError("enumerate_free_flow: more than 62 edges");
    const GraphReport rep = analyze(g);
    const auto adj = underlying_adjacency(g);

    std::vector<std::vector<std::uint64_t>> per_component;
    for (size_t c = 0; c < rep.components.size(); ++c) {
        const auto& comp = rep.components[c];
        std::vector<std::uint64_t> choices;
        switch (rep.component_classes[c]) {
            case ComponentClass::tree:
                for (int root : comp) {
                    std::vector<char> settled(g.vertex_count(), 0);
                    choices.push_back(orient_away_from(g, adj, {root}, settled));
                }
                break;
            case ComponentClass::unicyclic: {
                const std::vector<int> cycle = cycle_vertices(comp, adj);
                // walk the cycle in both rotational directions from its least vertex
                for (int direction = 0; direction < 2; ++direction) {
                    std::uint64_t flips = 0;
                    const int start = cycle.front();
                    std::set<int> on_cycle(cycle.begin(), cycle.end());
                    std::vector<int> cycle_neighbours;
                    for (const auto& [w, e] : adj[start])
                        if (on_cycle.count(w)) cycle_neighbours.push_back(w);
                    std::sort(cycle_neighbours.begin(), cycle_neighbours.end());
                    // a cycle vertex can meet the cycle twice via parallel paths;
                    // neighbours on the cycle are exactly two for a simple cycle
                    int prev = start;
                    int cur = cycle_neighbours[direction == 0 ? 0 : cycle_neighbours.size() - 1];
                    int edge_walked = -1;
                    for (const auto& [w, e] : adj[start])
                        if (w == cur && on_cycle.count(w)) edge_walked = e;
                    if (g.source(edge_walked) != start) flips |= std::uint64_t{1} << edge_walked;
                    while (cur != start) {
                        int next = -1, next_edge = -1;
                        for (const auto& [w, e] : adj[cur]) {
                            if (!on_cycle.count(w) || e == edge_walked) continue;
                            if (w == prev) continue;
                            next = w;
                            next_edge = e;
                            break;
                        }
                        if (g.source(next_edge) != cur) flips |= std::uint64_t{1} << next_edge;
                        prev = cur;
                        cur = next;
                        edge_walked = next_edge;
                    }
                    std::vector<char> settled(g.vertex_count(), 0);
                    flips |= orient_away_from(g, adj, cycle, settled);
                    choices.push_back(flips);
                }
                break;
            }
            case ComponentClass::multicyclic:
                break;
        }
        if (choices.empty()) return {};
        per_component.push_back(std::move(choices));
    }

    std::vector<std::uint64_t> combined{0};
    for (const auto& choices : per_component) {
        std::vector<std::uint64_t> next;
        next.reserve(combined.size() * choices.size());
        for (std::uint64_t base : combined)
            for (std::uint64_t extra : choices) next.push_back(base | extra);
        combined = std::move(next);
    }
    std::sort(combined.begin(), combined.end());
    std::vector<Orientation> out;
    out.reserve(combined.size());
    for (std::uint64_t flips : combined) out.push_back({flips});
    return out;
}

bool is_free_flow_literal(const OrientedGraph& g) {
    const GraphReport rep = analyze(g);
    const auto adj = underlying_adjacency(g);
    std::vector<std::vector<int>> out_edges(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e) out_edges[g.source(e)].push_back(e);

    for (size_t c = 0; c < rep.components.size(); ++c) {
        const auto& comp = rep.components[c];
        std::vector<int> roots;
        switch (rep.component_classes[c]) {
            case ComponentClass::multicyclic:
                return false;
            case ComponentClass::tree: {
                // the root is the unique vertex no edge enters
                for (int v : comp)
                    if (rep.indegree[v] == 0) roots.push_back(v);
                if (roots.size() != 1) return false;
                break;
            }
            case ComponentClass::unicyclic: {
                // the cycle must be coherently oriented
                roots = cycle_vertices(comp, adj);
                std::set<int> on_cycle(roots.begin(), roots.end());
                for (int v : roots) {
                    int successors = 0;
                    for (int e : out_edges[v])
                        if (on_cycle.count(g.target(e))) ++successors;
                    int predecessors = 0;
                    for (const auto& [w, e] : adj[v])
                        if (on_cycle.count(w) && g.target(e) == v && g.source(e) == w) ++predecessors;
                    if (successors != 1 || predecessors != 1) return false;
                }
                break;
            }
        }
        // all remaining edges must lead away from the roots, each vertex
        // entered exactly once
        std::set<int> visited(roots.begin(), roots.end());
        std::queue<int> queue;
        for (int r : roots) queue.push(r);
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop();
            for (int e : out_edges[u]) {
                const int w = g.target(e);
                if (visited.count(w)) {
                    // re-entering a vertex is only legal along the cycle itself
                    if (rep.component_classes[c] != ComponentClass::unicyclic) return false;
                    continue;
                }
                visited.insert(w);
                queue.push(w);
            }
        }
        for (int v : comp)
            if (!visited.count(v)) return false;
    }
    return true;
}

SourceResolution source_resolution(const OrientedGraph& g) {
    const GraphReport rep = analyze(g);
    std::set<std::string> taken;
    std::vector<std::string> names;
    std::vector<int> target_id(g.vertex_count(), -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (rep.indegree[v] == 0) continue;
        target_id[v] = static_cast<int>(names.size());
        names.push_back(uniquify(g.vertex_name(v), taken));
    }
    std::vector<int> copy_id(g.edge_count(), -1);
    for (int e = 0; e < g.edge_count(); ++e) {
        copy_id[e] = static_cast<int>(names.size());
        names.push_back(uniquify(g.vertex_name(g.source(e)) + "@e" + std::to_string(e), taken));
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) edges.emplace_back(copy_id[e], target_id[g.target(e)]);

    SourceResolution out{OrientedGraph(std::move(names), std::move(edges)), {}};
    out.edges.forward.resize(g.edge_count());
    out.edges.backward.resize(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) out.edges.forward[e] = out.edges.backward[e] = e;
    return out;
}

namespace {

OrientedGraph with_barycentres(const OrientedGraph& g, bool include_source_edges) {
    std::set<std::string> taken(g.vertex_names().begin(), g.vertex_names().end());
    std::vector<std::string> names = g.vertex_names();
    const int n = g.vertex_count();
    for (int e = 0; e < g.edge_count(); ++e)
        names.push_back(uniquify(
            g.vertex_name(g.source(e)) + "->" + g.vertex_name(g.target(e)), taken));
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (include_source_edges) edges.emplace_back(n + e, g.source(e));
        edges.emplace_back(n + e, g.target(e));
    }
    return OrientedGraph(std::move(names), std::move(edges));
}

}  // namespace

OrientedGraph coherent_barycentric(const OrientedGraph& g) { return with_barycentres(g, false); }

OrientedGraph barycentric_digraph(const OrientedGraph& g) { return with_barycentres(g, true); }

OrientedGraph load_graph(std::istream& in) {
    std::vector<std::string> names;
    std::map<std::string, int> index;
    std::vector<std::pair<int, int>> edges;
    auto vertex = [&](const std::string& name) {
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        const int id = static_cast<int>(names.size());
        names.push_back(name);
        index[name] = id;
        return id;
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind) || kind[0] == '#') continue;
        if (kind == "v") {
            std::string name;
            if (!(ls >> name)) throw LoadError("line " + std::to_string(lineno) + ": v needs a name");
            if (index.count(name))
                throw LoadError("line " + std::to_string(lineno) + ": duplicate vertex " + name);
            vertex(name);
        } else if (kind == "e") {
            std::string src, tgt;
            if (!(ls >> src >> tgt))
                throw LoadError("line " + std::to_string(lineno) + ": e needs two endpoints");
            // intern the source first: appearance order, not evaluation order
            const int s = vertex(src);
            const int t = vertex(tgt);
            edges.emplace_back(s, t);
        } else {
            throw LoadError("line " + std::to_string(lineno) + ": unknown directive '" + kind + "'");
        }
    }
    try {
        return OrientedGraph(std::move(names), std::move(edges));
    } catch (const LoadError& err) {
        throw LoadError(std::string("graph text: ") + err.what());
    }
}

OrientedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open graph file: " + path);
    return load_graph(in);
}

std::string format_graph(const OrientedGraph& g) {
    std::ostringstream out;
    for (const auto& name : g.vertex_names()) out << "v " << name << "\n";
    for (const auto& [s, t] : g.edges())
        out << "e " << g.vertex_name(s) << " " << g.vertex_name(t) << "\n";
    return out.str();
}

}  // namespace motco::graph
