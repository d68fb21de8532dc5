#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Finite simple oriented graphs, orientations as flip-bitsets, free-flow
// enumeration, and the derived graphs used by the complex builders: the
// source resolution, the coherent barycentric graph and the full barycentric
// digraph.

namespace motco::graph {

struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simple oriented graph: no loops, no duplicate edges, no 2-cycles.
// Vertex ids are dense 0..n-1; this id order is the vertex order used by
// every construction downstream (component order, tensor factors, ...).
class OrientedGraph {
  public:
    OrientedGraph() = default;
    OrientedGraph(std::vector<std::string> vertex_names, std::vector<std::pair<int, int>> edges);

    // Vertices named v0, v1, ...
    static OrientedGraph with_default_names(int vertex_count,
                                            std::vector<std::pair<int, int>> edges);

    int vertex_count() const { return static_cast<int>(names_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::string& vertex_name(int v) const { return names_.at(v); }
    const std::vector<std::string>& vertex_names() const { return names_; }
    const std::pair<int, int>& edge(int e) const { return edges_.at(e); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int source(int e) const { return edges_.at(e).first; }
    int target(int e) const { return edges_.at(e).second; }

  private:
    std::vector<std::string> names_;
    std::vector<std::pair<int, int>> edges_;
};

// An orientation of the underlying graph, stored relative to the base graph:
// bit e set = edge e reversed.
struct Orientation {
    std::uint64_t flips = 0;

    int hamming() const;
    bool operator==(const Orientation&) const = default;
};

// The graph with the given edges reversed; vertex names and edge order kept.
OrientedGraph apply(const OrientedGraph& g, Orientation o);

enum class ComponentClass { tree, unicyclic, multicyclic };

struct GraphReport {
    std::vector<int> indegree;
    std::vector<int> outdegree;
    std::vector<std::vector<int>> components;       // sorted ids, ordered by min id
    std::vector<ComponentClass> component_classes;  // parallel to components
    bool is_free_flow = false;     // every indegree <= 1
    bool is_alternating = false;   // no vertex is both a source and a target
};

GraphReport analyze(const OrientedGraph& g);

// All orientations of the underlying graph with every indegree <= 1, sorted
// by flip-bitset value. Per component: n choices for a tree on n vertices
// (one per root), 2 for a unicyclic component, 0 for a multicyclic one.
std::vector<Orientation> enumerate_free_flow(const OrientedGraph& g);

// Independent literal check of the free-flow shape: trees oriented away from
// a single root, unicyclic components with a coherent cycle feeding outward.
bool is_free_flow_literal(const OrientedGraph& g);

struct EdgeBijection {
    std::vector<int> forward;   // edge of g -> edge of the derived graph
    std::vector<int> backward;  // edge of the derived graph -> edge of g
};

struct SourceResolution {
    OrientedGraph graph;
    EdgeBijection edges;
};

// Splits every vertex into one copy per outgoing edge, keeping targets:
// vertices = targets of g plus one (source, edge) copy per edge; edge e
// becomes (copy of source(e) for e) -> target(e). The result is a disjoint
// union of sink stars.
SourceResolution source_resolution(const OrientedGraph& g);

// Vertices of g plus one barycentre per edge; each edge e is replaced by the
// single coherent edge barycentre(e) -> target(e).
OrientedGraph coherent_barycentric(const OrientedGraph& g);

// Oriented barycentric subdivision: vertices of g plus one barycentre per
// edge; edge e becomes the pair barycentre(e) -> source(e) at index 2e and
// barycentre(e) -> target(e) at index 2e+1.
OrientedGraph barycentric_digraph(const OrientedGraph& g);

// Text format: '# comment', 'v <name>', 'e <src> <tgt>'. Vertices first seen
// in an edge line are appended in appearance order. Duplicate edges and
// 2-cycles are load errors.
OrientedGraph load_graph(std::istream& in);
OrientedGraph load_graph_file(const std::string& path);
std::string format_graph(const OrientedGraph& g);

}  // namespace motco::graph
