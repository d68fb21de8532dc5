#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "motco/graph.hpp"
#include "motco/linalg.hpp"
#include "motco/poset.hpp"

// Simplicial complexes attached to oriented graphs: graph matchings,
// matchings of the barycentric subdivision, oriented matchings, multipaths
// and the pseudoforest filtration, with exact reduced homology, joins,
// suspensions and the indegree wedge prediction.

namespace motco::complexes {

struct ComplexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Vertices are label indices; simplices are nonempty vertex bitsets closed
// under nonempty subsets, sorted by (cardinality, value). The empty complex
// (no simplices at all) is a valid value.
struct SimplicialComplex {
    std::vector<std::string> labels;
    std::vector<std::uint64_t> simplices;

    int vertex_count() const { return static_cast<int>(labels.size()); }
    bool empty() const { return simplices.empty(); }
    // -1 for the empty complex
    int dimension() const;
    bool contains(std::uint64_t simplex) const;
    // f_vector()[i] = number of i-simplices
    std::vector<long long> f_vector() const;
    // simplices not contained in any larger simplex
    std::vector<std::uint64_t> facets() const;
};

// Closes the given generating sets downward, discards the empty set, sorts
// and deduplicates. At most 62 vertices; labels must be unique and nonempty.
SimplicialComplex make_complex(std::vector<std::string> labels,
                               const std::vector<std::uint64_t>& generating_sets);

enum class ComplexKind {
    graph_matching,     // pairwise vertex-disjoint edge sets of the underlying graph
    matching,           // graph matchings of the underlying barycentric digraph
    oriented_matching,  // edge sets with every indegree <= 1
    multipath,          // edge sets with indegree, outdegree <= 1 and no directed cycle
};

// Complex vertices are the edges of g (for matching: the edges of its
// barycentric digraph). Rejects graphs with more than 30 edges.
SimplicialComplex build_complex(const graph::OrientedGraph& g, ComplexKind kind);

// Edge sets with every indegree <= 1 and at most j cycle-containing
// components; j = 0 gives the directed-forest complex, j >= |E| gives back
// the full oriented matching complex.
SimplicialComplex build_filtered(const graph::OrientedGraph& g, int max_unicyclic);

// Oriented matchings straight from their definition: matchings among the
// barycentre-to-target edges of the barycentric digraph. Must agree with
// build_complex(g, oriented_matching) simplex for simplex.
SimplicialComplex oriented_matching_literal(const graph::OrientedGraph& g);

// The inclusion-ordered poset of nonempty simplices.
poset::RankedPoset face_poset(const SimplicialComplex& x);

struct UnionDecomposition {
    bool equal = false;
    // simplices contributed by each orientation, indexed by flip bitset
    std::vector<long long> piece_sizes;
    long long union_size = 0;
};

// Checks that the matching complex of the base graph is the union of the
// oriented matching complexes over all 2^|E| orientations, with oriented
// matchings embedded via their target half-edges. At most 12 edges.
UnionDecomposition union_decomposition_check(const graph::OrientedGraph& base);

enum class HomotopyKind { contractible, wedge };

struct WedgePrediction {
    HomotopyKind kind = HomotopyKind::contractible;
    long long q = 0;     // number of wedge summands; meaningful for wedge only
    int sphere_dim = 0;  // dimension of each sphere; -1 encodes the empty complex

    bool operator==(const WedgePrediction&) const = default;
};

// Homotopy type of the oriented matching complex from indegrees alone:
// contractible when some vertex has indegree exactly 1, otherwise a wedge of
// q = prod over indeg(v) > 1 of (indeg(v) - 1) spheres of dimension N - 1,
// N = #{v : indeg(v) > 0}.
WedgePrediction predicted_homotopy(const graph::OrientedGraph& g);

// Reduced homology of the augmented chain complex; degrees -1 .. dimension.
// The empty complex has one generator in degree -1, a full simplex has none.
linalg::HomologySummary reduced_homology(const SimplicialComplex& x, linalg::Coefficients coeff,
                                         linalg::Backend backend = linalg::Backend::auto_select);

// Join: unions of one (possibly empty) face from each side. Labels of y are
// renamed on clash.
SimplicialComplex join(const SimplicialComplex& x, const SimplicialComplex& y);

// Iterated join of discrete point sets; zero entries are dropped on
// construction, so alpha holds positive counts only.
struct SuspensionSpec {
    std::vector<int> alpha;

    explicit SuspensionSpec(std::vector<int> counts);
    // predicted wedge summands, prod (n_i - 1)
    long long q() const;
    // dimension of the predicted spheres, |alpha| - 1
    int sphere_dim() const { return static_cast<int>(alpha.size()) - 1; }
};

SimplicialComplex iterated_suspension(const SuspensionSpec& spec);

struct ComplexStats {
    std::vector<long long> f_vector;
    long long euler_characteristic = 0;  // alternating sum, empty simplex excluded
    bool is_pure = true;                 // all facets share one dimension
};

ComplexStats complex_stats(const SimplicialComplex& x);

}  // namespace motco::complexes
