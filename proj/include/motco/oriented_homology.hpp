#pragma once

#include "motco/graph.hpp"
#include "motco/linalg.hpp"
#include "motco/poset.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Bigraded oriented homology OH(G, o): over the Boolean poset of all
// orientations of a base graph, each orientation carries the free module on
// its oriented matching complex, and each single-edge flip acts by the
// inclusion of the matchings both orientations share. Homology is graded by
// flip distance i from the base orientation and simplicial degree b.

namespace motco::orientedhomology {

struct OrientedHomologyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The Boolean lattice of flip-bitsets over the base orientation, ordered by
// inclusion of flipped edge sets; rank = Hamming distance from the base.
struct OrientationPoset {
    graph::Orientation base;
    poset::RankedPoset lattice;
};

OrientationPoset orientation_poset(const graph::OrientedGraph& u, graph::Orientation o);

// One basis element: the nonempty edge subset `subset` viewed in the
// orientation at `flips` (bits relative to the base orientation; the subset
// has all indegrees <= 1 there). Simplicial degree b = |subset| - 1,
// homological degree i = |flips|.
struct OhBasisElement {
    std::uint32_t flips = 0;
    std::uint32_t subset = 0;
};

// Strata (i, b) hold sorted basis lists; the differential preserves b and
// raises i by one, sending an element to its copies over one more flipped
// edge outside subset and flips, with Boolean parity signs.
struct BigradedComplex {
    int edge_count = 0;
    graph::Orientation base;
    std::vector<std::vector<std::vector<OhBasisElement>>> basis;  // [b][i]
    std::vector<std::vector<linalg::ExactMatrix>> differential;   // [b][i]: (i,b) -> (i+1,b)

    long long total_dim() const;
    // basis sizes of stratum (*, b), indexed by i = 0..edge_count
    std::vector<long long> stratum_dims(int b) const;
};

// Edge guard plus a cap on the materialized basis.
inline constexpr int kEdgeGuard = 14;
inline constexpr long long kBasisGuard = 5000000;

BigradedComplex build_oh_complex(const graph::OrientedGraph& u, graph::Orientation o);

// Dimension table keyed by (homological degree i, simplicial degree b);
// zero entries are omitted.
struct BigradedTable {
    std::map<std::pair<int, int>, long long> dims;

    long long at(int i, int b) const;
    long long total() const;
    bool operator==(const BigradedTable&) const = default;
};

// OH(G, o) over a field (rationals or a prime field).
BigradedTable oriented_homology(const graph::OrientedGraph& u, graph::Orientation o,
                                const linalg::Coefficients& coeff,
                                linalg::Backend backend = linalg::Backend::auto_select);

// counts[i] = free-flow orientations of u at Hamming distance i from o.
struct FreeFlowHistogram {
    std::vector<long long> counts;

    long long total() const;
    bool operator==(const FreeFlowHistogram&) const = default;
};

FreeFlowHistogram freeflow_histogram(const graph::OrientedGraph& u, graph::Orientation o);

// The expected OH table under the free-flow theorem: histogram counts placed
// at simplicial degree |E| - 1.
BigradedTable histogram_table(const graph::OrientedGraph& u, graph::Orientation o);

// Splits the total basis into the subcomplexes C(m), one per oriented
// matching m: the pairs sharing m's edge subset and the orientation of those
// edges. Verifies the partition, the 2^{|E| - |m|} block sizes, closure of
// the differential inside each block, acyclicity of every block with less
// than full support, and that the surviving full-support blocks reproduce
// oriented_homology over the rationals.
struct BooleanDecompositionCheck {
    bool pass = false;
    std::string detail;            // first failure, empty on pass
    long long blocks = 0;          // oriented matchings, the empty one included
    long long empty_block_size = 0;  // always 2^|E|
    BigradedTable expected;        // full-support blocks by flip distance
};

BooleanDecompositionCheck boolean_decomposition_check(const graph::OrientedGraph& u,
                                                      graph::Orientation o);

}  // namespace motco::orientedhomology
