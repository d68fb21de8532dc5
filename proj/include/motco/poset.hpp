#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "motco/graph.hpp"

// Ranked squared posets of edge-subsets: posets of monotone graph properties,
// face posets of simplicial complexes, the lexicographic sign assignment on
// covering pairs, and a small-poset isomorphism matcher.

namespace motco::poset {

struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Elements are subsets of a ground set of at most 62 edges or vertices,
// stored as bitsets and sorted by (rank, bitset value). Rank equals subset
// cardinality and every cover raises it by exactly one.
struct RankedPoset {
    int ground_size = 0;
    std::vector<std::uint64_t> elements;
    std::vector<int> rank;                   // parallel to elements
    std::vector<std::pair<int, int>> covers; // (lower, upper) index pairs, sorted

    int size() const { return static_cast<int>(elements.size()); }
    // index of a mask, or -1
    int index_of(std::uint64_t mask) const;
    std::vector<std::vector<int>> upper_adjacency() const;
    std::vector<std::vector<int>> lower_adjacency() const;
    // number of elements of each rank, from rank 0 upward
    std::vector<int> rank_sizes() const;
};

enum class MonotoneProperty { spanning, multipath, indeg_le_one };

// Whether the spanning subgraph picked out by the edge mask satisfies the
// property: spanning accepts everything, multipath wants indegree <= 1,
// outdegree <= 1 and no directed cycle, indeg_le_one wants indegree <= 1.
bool holds(const graph::OrientedGraph& g, MonotoneProperty property, std::uint64_t mask);

// Poset of all spanning subgraphs satisfying the property, ordered by edge
// inclusion; covers are single-edge additions. The empty subgraph is always
// an element (monotone properties are closed under deletion). Rejects graphs
// with more than 30 edges.
RankedPoset monotone_poset(const graph::OrientedGraph& g, MonotoneProperty property);

// Poset of the given nonempty downward-closed simplex family ordered by
// inclusion; rank = cardinality, covers = codimension-1 faces. The empty
// simplex is not an element.
RankedPoset face_poset(const std::vector<std::uint64_t>& nonempty_simplices, int ground_size);

// The poset with a fresh bottom element (the empty subset, rank 0) adjoined
// below every rank-1 element. Turns a face poset into the matching shape of
// a monotone poset.
RankedPoset with_bottom(const RankedPoset& p);

// Every chain z < y < x of two covers admits exactly one other midpoint y'.
bool is_squared(const RankedPoset& p);

struct SignAssignment {
    std::vector<int> sign;  // 0/1, parallel to the poset's covers
};

// sign(H, H + e) = parity of the number of edges of H below e. Requires a
// squared poset; opposite sides of every square then get opposite sign sums.
SignAssignment sign_assignment(const RankedPoset& p);

// Exhaustive check of the square condition for a given assignment.
bool verify_sign_squares(const RankedPoset& p, const SignAssignment& s);

// A rank- and cover-preserving bijection p -> q (element indices), or
// nothing. Colour refinement plus backtracking; sizes capped at 20000.
std::optional<std::vector<int>> poset_isomorphic(const RankedPoset& p, const RankedPoset& q);

}  // namespace motco::poset
