#include "motco/complexes.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>
#include <set>
#include <unordered_set>

namespace motco::complexes {

namespace {

bool mask_less(std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
}

// all nonempty subsets satisfying a deletion-closed predicate, by upward
// search from the singletons
std::vector<std::uint64_t> monotone_family(int ground_size,
                                           const std::function<bool(std::uint64_t)>& keep) {
    std::set<std::uint64_t> found;
    std::queue<std::uint64_t> frontier;
    for (int b = 0; b < ground_size; ++b) {
        const std::uint64_t m = std::uint64_t{1} << b;
        if (keep(m)) {
            found.insert(m);
            frontier.push(m);
        }
    }
    while (!frontier.empty()) {
        const std::uint64_t m = frontier.front();
        frontier.pop();
        for (int b = 0; b < ground_size; ++b) {
            if (m >> b & 1) continue;
            const std::uint64_t up = m | (std::uint64_t{1} << b);
            if (found.count(up) || !keep(up)) continue;
            found.insert(up);
            frontier.push(up);
        }
    }
    std::vector<std::uint64_t> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), mask_less);
    return out;
}

std::vector<std::string> edge_labels(const graph::OrientedGraph& g) {
    std::vector<std::string> labels;
    labels.reserve(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e)
        labels.push_back(g.vertex_name(g.source(e)) + "->" + g.vertex_name(g.target(e)));
    return labels;
}

// pairwise disjoint edges in the underlying unoriented graph
bool is_graph_matching(const graph::OrientedGraph& g, std::uint64_t mask) {
    std::uint64_t used = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!(mask >> e & 1)) continue;
        const std::uint64_t ends =
            (std::uint64_t{1} << g.source(e)) | (std::uint64_t{1} << g.target(e));
        if (used & ends) return false;
        used |= ends;
    }
    return true;
}

int unicyclic_component_count(const graph::OrientedGraph& g, std::uint64_t mask) {
    // union-find over the vertices touched by the mask
    std::vector<int> parent(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) parent[v] = v;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<int> edges_in(g.vertex_count(), 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!(mask >> e & 1)) continue;
        parent[find(g.source(e))] = find(g.target(e));
    }
    for (int e = 0; e < g.edge_count(); ++e)
        if (mask >> e & 1) ++edges_in[find(g.source(e))];
    std::vector<int> vertices_in(g.vertex_count(), 0);
    for (int v = 0; v < g.vertex_count(); ++v) ++vertices_in[find(v)];
    int unicyclic = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (find(v) == v && edges_in[v] >= vertices_in[v]) ++unicyclic;
    return unicyclic;
}

void check_size(const graph::OrientedGraph& g) {
    if (g.edge_count() > 30) throw ComplexError("complex builder: more than 30 edges");
}

}  // namespace

int SimplicialComplex::dimension() const {
    return simplices.empty() ? -1 : std::popcount(simplices.back()) - 1;
}

bool SimplicialComplex::contains(std::uint64_t simplex) const {
    return std::binary_search(simplices.begin(), simplices.end(), simplex, mask_less);
}

std::vector<long long> SimplicialComplex::f_vector() const {
    std::vector<long long> f(dimension() + 1, 0);
    for (std::uint64_t m : simplices) ++f[std::popcount(m) - 1];
    return f;
}

std::vector<std::uint64_t> SimplicialComplex::facets() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t m : simplices) {
        bool maximal = true;
        for (int v = 0; maximal && v < vertex_count(); ++v)
            if (!(m >> v & 1) && contains(m | (std::uint64_t{1} << v))) maximal = false;
        if (maximal) out.push_back(m);
    }
    return out;
}

SimplicialComplex make_complex(std::vector<std::string> labels,
                               const std::vector<std::uint64_t>& generating_sets) {
    if (labels.size() > 62) throw ComplexError("complex: more than 62 vertices");
    std::set<std::string> seen;
    for (const auto& l : labels)
        if (l.empty() || !seen.insert(l).second)
            throw ComplexError("complex: labels must be unique and nonempty");

    const std::uint64_t range =
        labels.size() == 62 ? ~std::uint64_t{0} >> 2 : (std::uint64_t{1} << labels.size()) - 1;
    std::set<std::uint64_t> closed;
    std::vector<std::uint64_t> stack;
    for (std::uint64_t m : generating_sets) {
        if (m & ~range) throw ComplexError("complex: simplex outside the vertex range");
        if (m) stack.push_back(m);
    }
    while (!stack.empty()) {
        const std::uint64_t m = stack.back();
        stack.pop_back();
        if (!closed.insert(m).second) continue;
        for (int v = 0; v < static_cast<int>(labels.size()); ++v) {
            const std::uint64_t face = m & ~(std::uint64_t{1} << v);
            if (face != m && face) stack.push_back(face);
        }
    }

    SimplicialComplex x;
    x.labels = std::move(labels);
    x.simplices.assign(closed.begin(), closed.end());
    std::sort(x.simplices.begin(), x.simplices.end(), mask_less);
    return x;
}

SimplicialComplex build_complex(const graph::OrientedGraph& g, ComplexKind kind) {
    check_size(g);
    if (kind == ComplexKind::matching)
        return build_complex(graph::barycentric_digraph(g), ComplexKind::graph_matching);

    std::function<bool(std::uint64_t)> keep;
    switch (kind) {
        case ComplexKind::graph_matching:
            keep = [&g](std::uint64_t m) { return is_graph_matching(g, m); };
            break;
        case ComplexKind::oriented_matching:
            keep = [&g](std::uint64_t m) {
                return poset::holds(g, poset::MonotoneProperty::indeg_le_one, m);
            };
            break;
        case ComplexKind::multipath:
            keep = [&g](std::uint64_t m) {
                return poset::holds(g, poset::MonotoneProperty::multipath, m);
            };
            break;
        case ComplexKind::matching:
            break;  // handled above
    }
    SimplicialComplex x;
    x.labels = edge_labels(g);
    x.simplices = monotone_family(g.edge_count(), keep);
    return x;
}

SimplicialComplex build_filtered(const graph::OrientedGraph& g, int max_unicyclic) {
    check_size(g);
    if (max_unicyclic < 0) throw ComplexError("filtered complex: negative filtration level");
    SimplicialComplex x;
    x.labels = edge_labels(g);
    x.simplices = monotone_family(g.edge_count(), [&](std::uint64_t m) {
        return poset::holds(g, poset::MonotoneProperty::indeg_le_one, m) &&
               unicyclic_component_count(g, m) <= max_unicyclic;
    });
    return x;
}

SimplicialComplex oriented_matching_literal(const graph::OrientedGraph& g) {
    check_size(g);
    const auto bary = graph::barycentric_digraph(g);
    // matchings of the underlying barycentric digraph that only use the
    // barycentre-to-target half of every edge (odd edge ids)
    const auto matchings = monotone_family(g.edge_count(), [&](std::uint64_t m) {
        std::uint64_t half = 0;
        for (int e = 0; e < g.edge_count(); ++e)
            if (m >> e & 1) half |= std::uint64_t{1} << (2 * e + 1);
        return is_graph_matching(bary, half);
    });
    SimplicialComplex x;
    x.labels = edge_labels(g);
    x.simplices = matchings;
    return x;
}

poset::RankedPoset face_poset(const SimplicialComplex& x) {
    return poset::face_poset(x.simplices, x.vertex_count());
}

UnionDecomposition union_decomposition_check(const graph::OrientedGraph& base) {
    if (base.edge_count() > 12)
        throw ComplexError("union decomposition check: more than 12 edges");
    const auto matching = build_complex(base, ComplexKind::matching);
    const std::set<std::uint64_t> want(matching.simplices.begin(), matching.simplices.end());

    UnionDecomposition out;
    std::set<std::uint64_t> got;
    const std::uint64_t orientations = std::uint64_t{1} << base.edge_count();
    for (std::uint64_t flips = 0; flips < orientations; ++flips) {
        const auto oriented = graph::apply(base, {flips});
        const auto piece = build_complex(oriented, ComplexKind::oriented_matching);
        out.piece_sizes.push_back(static_cast<long long>(piece.simplices.size()));
        for (std::uint64_t m : piece.simplices) {
            // edge e sits on its target half-edge; flipping moves it to the
            // source half-edge of the base barycentric digraph
            std::uint64_t embedded = 0;
            for (int e = 0; e < base.edge_count(); ++e)
                if (m >> e & 1)
                    embedded |= std::uint64_t{1} << (2 * e + ((flips >> e & 1) ? 0 : 1));
            got.insert(embedded);
        }
    }
    out.union_size = static_cast<long long>(got.size());
    out.equal = got == want;
    return out;
}

WedgePrediction predicted_homotopy(const graph::OrientedGraph& g) {
    const auto rep = graph::analyze(g);
    WedgePrediction out;
    for (int d : rep.indegree)
        if (d == 1) return out;  // contractible
    out.kind = HomotopyKind::wedge;
    out.q = 1;
    int positive = 0;
    for (int d : rep.indegree) {
        if (d > 0) ++positive;
        if (d > 1) out.q *= d - 1;
    }
    out.sphere_dim = positive - 1;
    return out;
}

linalg::HomologySummary reduced_homology(const SimplicialComplex& x, linalg::Coefficients coeff,
                                         linalg::Backend backend) {
    linalg::ChainComplex chain;
    chain.min_degree = -1;
    const auto f = x.f_vector();
    chain.dims.push_back(1);  // the empty simplex
    for (long long c : f) chain.dims.push_back(c);

    // per-dimension dense index of each simplex
    std::vector<long long> offset(f.size() + 1, 0);
    for (size_t d = 1; d <= f.size(); ++d) offset[d] = offset[d - 1] + f[d - 1];
    auto index_in_dim = [&](std::uint64_t m) {
        const auto it = std::lower_bound(x.simplices.begin(), x.simplices.end(), m, mask_less);
        return static_cast<int>(static_cast<long long>(it - x.simplices.begin()) -
                                offset[std::popcount(m) - 1]);
    };

    for (int d = 0; d <= x.dimension(); ++d) {
        std::vector<linalg::Triplet> entries;
        for (int col = 0; col < f[d]; ++col) {
            const std::uint64_t m = x.simplices[offset[d] + col];
            if (d == 0) {
                entries.push_back({0, col, linalg::Rat(1)});
                continue;
            }
            int position = 0;
            for (int v = 0; v < x.vertex_count(); ++v) {
                if (!(m >> v & 1)) continue;
                const std::uint64_t face = m & ~(std::uint64_t{1} << v);
                entries.push_back({index_in_dim(face), col,
                                   linalg::Rat(position % 2 == 0 ? 1 : -1)});
                ++position;
            }
        }
        chain.boundary.push_back(linalg::ExactMatrix::from_triplets(
            d == 0 ? 1 : static_cast<int>(f[d - 1]), static_cast<int>(f[d]), entries));
    }
    return linalg::chain_homology(chain, coeff, backend);
}

SimplicialComplex join(const SimplicialComplex& x, const SimplicialComplex& y) {
    if (x.labels.size() + y.labels.size() > 62)
        throw ComplexError("join: more than 62 vertices");
    std::vector<std::string> labels = x.labels;
    std::set<std::string> taken(labels.begin(), labels.end());
    for (std::string l : y.labels) {
        while (taken.count(l)) l += '\'';
        taken.insert(l);
        labels.push_back(std::move(l));
    }

    std::vector<std::uint64_t> sets;
    auto with_empty = [](const SimplicialComplex& c) {
        std::vector<std::uint64_t> v{0};
        v.insert(v.end(), c.simplices.begin(), c.simplices.end());
        return v;
    };
    for (std::uint64_t a : with_empty(x))
        for (std::uint64_t b : with_empty(y)) {
            const std::uint64_t m = a | (b << x.vertex_count());
            if (m) sets.push_back(m);
        }
    return make_complex(std::move(labels), sets);
}

SuspensionSpec::SuspensionSpec(std::vector<int> counts) {
    for (int n : counts) {
        if (n < 0) throw ComplexError("suspension: negative point count");
        if (n > 0) alpha.push_back(n);
    }
}

long long SuspensionSpec::q() const {
    long long q = 1;
    for (int n : alpha) q *= n - 1;
    return q;
}

SimplicialComplex iterated_suspension(const SuspensionSpec& spec) {
    SimplicialComplex out;  // the empty complex
    for (size_t i = 0; i < spec.alpha.size(); ++i) {
        std::vector<std::string> labels;
        std::vector<std::uint64_t> points;
        for (int j = 0; j < spec.alpha[i]; ++j) {
            labels.push_back("s" + std::to_string(i) + "p" + std::to_string(j));
            points.push_back(std::uint64_t{1} << j);
        }
        out = join(out, make_complex(std::move(labels), points));
    }
    return out;
}

ComplexStats complex_stats(const SimplicialComplex& x) {
    ComplexStats stats;
    stats.f_vector = x.f_vector();
    for (size_t i = 0; i < stats.f_vector.size(); ++i)
        stats.euler_characteristic += (i % 2 == 0 ? 1 : -1) * stats.f_vector[i];
    const auto facets = x.facets();
    for (std::uint64_t m : facets)
        if (std::popcount(m) != std::popcount(facets.front())) stats.is_pure = false;
    return stats;
}

}  // namespace motco::complexes
