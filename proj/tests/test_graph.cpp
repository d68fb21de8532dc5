#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "motco/graph.hpp"

using namespace motco::graph;

namespace {

OrientedGraph path3() { return OrientedGraph::with_default_names(3, {{0, 1}, {1, 2}}); }
OrientedGraph triangle() { return OrientedGraph::with_default_names(3, {{0, 1}, {1, 2}, {0, 2}}); }
// two triangles sharing vertex 2
OrientedGraph bowtie() {
    return OrientedGraph::with_default_names(
        5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
}

// exhaustive free-flow filter over all 2^E orientations
std::vector<Orientation> free_flow_brute(const OrientedGraph& g) {
    std::vector<Orientation> out;
    for (std::uint64_t flips = 0; flips < (std::uint64_t{1} << g.edge_count()); ++flips) {
        Orientation o{flips};
        if (analyze(apply(g, o)).is_free_flow) out.push_back(o);
    }
    return out;
}

// multiset of (star size) per component, for comparing disjoint unions of
// sink stars up to isomorphism
std::multiset<int> star_signature(const OrientedGraph& g) {
    const GraphReport rep = analyze(g);
    std::multiset<int> sizes;
    for (const auto& comp : rep.components) {
        int edges = 0;
        for (int v : comp) edges += rep.indegree[v];
        CHECK(edges + 1 == static_cast<int>(comp.size()));
        // a sink star has one sink receiving every edge
        int sinks = 0;
        for (int v : comp)
            if (rep.indegree[v] == edges) ++sinks;
        if (edges > 0) CHECK(sinks >= 1);
        sizes.insert(edges);
    }
    return sizes;
}

}  // namespace

TEST_CASE("constructor rejects malformed graphs") {
    CHECK_THROWS_AS(OrientedGraph::with_default_names(2, {{0, 0}}), LoadError);
    CHECK_THROWS_AS(OrientedGraph::with_default_names(2, {{0, 1}, {0, 1}}), LoadError);
    CHECK_THROWS_AS(OrientedGraph::with_default_names(2, {{0, 1}, {1, 0}}), LoadError);
    CHECK_THROWS_AS(OrientedGraph::with_default_names(2, {{0, 2}}), LoadError);
    CHECK_THROWS_AS(OrientedGraph({"a", "a"}, {}), LoadError);
    CHECK_THROWS_AS(OrientedGraph({"a b"}, {}), LoadError);
    CHECK_THROWS_AS(OrientedGraph({""}, {}), LoadError);
}

TEST_CASE("analyze reports degrees, components and classes") {
    const GraphReport rep = analyze(bowtie());
    CHECK(rep.indegree == std::vector<int>{0, 1, 2, 1, 2});
    CHECK(rep.outdegree == std::vector<int>{2, 1, 2, 1, 0});
    CHECK(rep.components.size() == 1);
    CHECK(rep.component_classes == std::vector<ComponentClass>{ComponentClass::multicyclic});
    CHECK_FALSE(rep.is_free_flow);

    const auto two = OrientedGraph::with_default_names(5, {{0, 1}, {2, 3}, {3, 4}, {4, 2}});
    const GraphReport rep2 = analyze(two);
    CHECK(rep2.components == std::vector<std::vector<int>>{{0, 1}, {2, 3, 4}});
    CHECK(rep2.component_classes ==
          std::vector<ComponentClass>{ComponentClass::tree, ComponentClass::unicyclic});
    CHECK(rep2.is_free_flow);

    CHECK(analyze(path3()).is_free_flow);
    CHECK_FALSE(analyze(path3()).is_alternating);
    const auto wedge = OrientedGraph::with_default_names(3, {{0, 1}, {2, 1}});
    CHECK(analyze(wedge).is_alternating);
}

TEST_CASE("free-flow enumeration matches the brute-force filter") {
    for (const auto& g : {path3(), triangle(), bowtie(),
                          OrientedGraph::with_default_names(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}),
                          OrientedGraph::with_default_names(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}}),
                          OrientedGraph::with_default_names(4, {{0, 1}, {0, 2}, {0, 3}})}) {
        CAPTURE(format_graph(g));
        const auto fast = enumerate_free_flow(g);
        const auto brute = free_flow_brute(g);
        REQUIRE(fast.size() == brute.size());
        CHECK(std::equal(fast.begin(), fast.end(), brute.begin()));
        for (const auto& o : fast) CHECK(is_free_flow_literal(apply(g, o)));
    }
}

TEST_CASE("free-flow counts: trees n per component, cycles 2, multicyclic 0") {
    CHECK(enumerate_free_flow(path3()).size() == 3);
    CHECK(enumerate_free_flow(triangle()).size() == 2);
    CHECK(enumerate_free_flow(bowtie()).empty());
    // two paths: 3 * 3 roots
    const auto g = OrientedGraph::with_default_names(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
    CHECK(enumerate_free_flow(g).size() == 9);
    // base orientation of a path is free-flow and appears as flips == 0
    const auto ff = enumerate_free_flow(path3());
    CHECK(ff.front().flips == 0);
}

TEST_CASE("literal free-flow checker rejects near misses") {
    // sink star: both edges into vertex 1, two roots
    CHECK_FALSE(is_free_flow_literal(OrientedGraph::with_default_names(3, {{0, 1}, {2, 1}})));
    // incoherent triangle
    CHECK_FALSE(is_free_flow_literal(OrientedGraph::with_default_names(3, {{0, 1}, {2, 1}, {2, 0}})));
    // coherent triangle with a pendant edge leaving the cycle
    CHECK(is_free_flow_literal(
        OrientedGraph::with_default_names(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}})));
    // pendant edge pointing into the cycle
    CHECK_FALSE(is_free_flow_literal(
        OrientedGraph::with_default_names(4, {{0, 1}, {1, 2}, {2, 0}, {3, 0}})));
}

TEST_CASE("source resolution is a disjoint union of sink stars") {
    const auto g = triangle();
    const auto sr = source_resolution(g);
    CHECK(sr.graph.vertex_count() == 5);  // targets 1, 2 + three source copies
    CHECK(sr.graph.edge_count() == 3);
    CHECK(star_signature(sr.graph) == std::multiset<int>{1, 2});
    for (int e = 0; e < 3; ++e) {
        CHECK(sr.edges.forward[e] == e);
        CHECK(sr.edges.backward[e] == e);
        // edge retains its target's name and its source appears as a copy
        CHECK(sr.graph.vertex_name(sr.graph.target(e)) == g.vertex_name(g.target(e)));
        const auto& copy = sr.graph.vertex_name(sr.graph.source(e));
        CHECK(copy.substr(0, copy.find('@')) == g.vertex_name(g.source(e)));
    }
    // isolated vertices disappear
    const auto iso = OrientedGraph::with_default_names(3, {{0, 1}});
    CHECK(source_resolution(iso).graph.vertex_count() == 2);

    const GraphReport rep = analyze(source_resolution(bowtie()).graph);
    CHECK(rep.is_alternating);
}

TEST_CASE("coherent barycentric graph = source resolution plus isolated sources") {
    for (const auto& g : {path3(), triangle(), bowtie(),
                          OrientedGraph::with_default_names(4, {{0, 1}, {0, 2}, {0, 3}})}) {
        CAPTURE(format_graph(g));
        const auto cbg = coherent_barycentric(g);
        CHECK(cbg.vertex_count() == g.vertex_count() + g.edge_count());
        CHECK(cbg.edge_count() == g.edge_count());
        const GraphReport rep = analyze(g);
        int sources = 0;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (rep.indegree[v] == 0) ++sources;
        auto expect = star_signature(source_resolution(g).graph);
        for (int s = 0; s < sources; ++s) expect.insert(0);
        CHECK(star_signature(cbg) == expect);
    }
}

TEST_CASE("barycentric digraph subdivides every edge") {
    const auto g = path3();
    const auto bd = barycentric_digraph(g);
    CHECK(bd.vertex_count() == 5);
    CHECK(bd.edge_count() == 4);
    for (int e = 0; e < g.edge_count(); ++e) {
        CHECK(bd.source(2 * e) == g.vertex_count() + e);
        CHECK(bd.target(2 * e) == g.source(e));
        CHECK(bd.source(2 * e + 1) == g.vertex_count() + e);
        CHECK(bd.target(2 * e + 1) == g.target(e));
    }
    CHECK(analyze(bd).is_alternating);
}

TEST_CASE("orientation flips round-trip and count") {
    const auto g = triangle();
    const Orientation o{0b101};
    CHECK(o.hamming() == 2);
    const auto h = apply(g, o);
    CHECK(h.edge(0) == std::pair<int, int>{1, 0});
    CHECK(h.edge(1) == std::pair<int, int>{1, 2});
    CHECK(h.edge(2) == std::pair<int, int>{2, 0});
    CHECK(apply(h, o).edges() == g.edges());
}

TEST_CASE("text format round-trips and reports line errors") {
    const std::string text =
        "# a comment\n"
        "v a\n"
        "v b\n"
        "e a b\n"
        "e c a\n";
    std::istringstream in(text);
    const auto g = load_graph(in);
    CHECK(g.vertex_count() == 3);
    CHECK(g.vertex_name(2) == "c");
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {2, 0}});

    std::istringstream back(format_graph(g));
    const auto h = load_graph(back);
    CHECK(h.vertex_names() == g.vertex_names());
    CHECK(h.edges() == g.edges());

    // both endpoints new on one line: the source is interned first
    std::istringstream pair_line("e x y\n");
    const auto p = load_graph(pair_line);
    CHECK(p.vertex_names() == std::vector<std::string>{"x", "y"});
    CHECK(p.edges() == std::vector<std::pair<int, int>>{{0, 1}});

    auto fails = [](const std::string& s) {
        std::istringstream bad(s);
        CHECK_THROWS_AS(load_graph(bad), LoadError);
    };
    fails("v a\nv a\n");
    fails("e a\n");
    fails("x a b\n");
    fails("e a b\ne b a\n");
}
