#pragma once

#include "motco/algebra.hpp"
#include "motco/graph.hpp"
#include "motco/linalg.hpp"
#include "motco/poset.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Monotone cochain complexes with functor coefficients: each subgraph H in a
// monotone poset carries one tensor factor of the coefficient algebra per
// component of the spanning subgraph (V, H), and each cover H < H' acts by
// multiplying the two factors the new edge merges. Cohomology of the result
// is monotone cohomology; with the coherent barycentric graph it specializes
// to oriented-matching cohomology.

namespace motco::cochain {

struct CochainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// How a cover that does not change the component count acts: as the identity
// relabelling of tensor factors, or as the zero map.
enum class FunctorVariant { identity, zero };

struct FunctorSpec {
    algebra::FiniteAlgebra algebra;
    FunctorVariant variant = FunctorVariant::identity;
};

// Basis bookkeeping for one degree: block i covers the alpha^{components[i]}
// tensor tuples of poset element masks[i], starting at offsets[i]. Tuples are
// enumerated in mixed-radix order with the first component most significant.
struct DegreeBasis {
    std::vector<std::uint64_t> masks;
    std::vector<int> components;
    std::vector<long long> offsets;
};

struct CochainComplex {
    std::vector<long long> dims;                    // degree 0 .. top
    std::vector<linalg::ExactMatrix> differential;  // [n] : C^n -> C^{n+1}
    std::vector<DegreeBasis> basis;                 // empty for synthetic complexes
    int alpha = 0;                                  // coefficient dimension, 0 when synthetic
    bool integral = true;                           // structure constants all integral

    int top_degree() const { return static_cast<int>(dims.size()) - 1; }
    long long total_dim() const;
};

// Largest total basis size a complex may materialize.
inline constexpr long long kDimsGuard = 200000;

// Assembles the cochain complex of the monotone poset of `property` with
// coefficients in spec.algebra. Components are ordered by minimal vertex id;
// signs come from the binary sign assignment of the poset. d^2 = 0 is
// asserted at build time.
CochainComplex monotone_cochain(const graph::OrientedGraph& g, poset::MonotoneProperty property,
                                const FunctorSpec& spec);

// Monotone cochain of the coherent barycentric graph under the multipath
// property: the oriented-matching cochain complex of g.
CochainComplex oriented_matching_cochain(const graph::OrientedGraph& g, const FunctorSpec& spec);

// One free module of the given dimension concentrated in degree 0.
CochainComplex degree_zero_complex(long long dim);

// Graded tensor product, d(x (x) y) = dx (x) y + (-1)^{deg x} x (x) dy.
CochainComplex tensor(const CochainComplex& a, const CochainComplex& b);

// Per-degree cohomology dimensions, plus torsion over integer coefficients.
// Integer coefficients require an integral complex.
linalg::HomologySummary cohomology(const CochainComplex& c, const linalg::Coefficients& coeff,
                                   linalg::Backend backend = linalg::Backend::auto_select);

// Alternating sum of degree dimensions.
linalg::Int euler_characteristic(const CochainComplex& c);

// The same Euler characteristic computed directly from the poset as
// sum_H (-1)^{rank H} alpha^{#components(H)}, without materializing bases.
linalg::Int euler_from_poset(const graph::OrientedGraph& g, poset::MonotoneProperty property,
                             int alpha);

// Outcome of comparing the oriented-matching cochain of g against the
// multipath cochain of its source resolution tensored with one algebra
// factor per indegree-0 vertex. `mode` records how cohomology was compared:
// "direct" assembles both complexes literally; "componentwise" falls back to
// per-component cohomology convolved across components (field coefficients
// only), used when a side outgrows `direct_limit`.
struct SourceResolutionCheck {
    bool pass = false;
    std::string detail;  // first mismatch, empty on pass
    std::string mode;
    std::vector<linalg::Int> dims_left;
    std::vector<linalg::Int> dims_right;
    std::map<int, long long> cohomology_left;
    std::map<int, long long> cohomology_right;
};

SourceResolutionCheck verify_source_resolution_iso(const graph::OrientedGraph& g,
                                                   const FunctorSpec& spec,
                                                   const linalg::Coefficients& coeff =
                                                       linalg::Coefficients::rationals(),
                                                   long long direct_limit = 3000);

}  // namespace motco::cochain
