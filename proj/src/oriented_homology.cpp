#include "motco/oriented_homology.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

namespace motco::orientedhomology {

namespace {

using graph::OrientedGraph;
using graph::Orientation;

std::uint32_t full_mask(const OrientedGraph& u) {
    return u.edge_count() == 0 ? 0u : (std::uint32_t{1} << u.edge_count()) - 1;
}

void check_input(const OrientedGraph& u, Orientation o) {
    if (u.edge_count() > kEdgeGuard)
        throw OrientedHomologyError("graph exceeds the " + std::to_string(kEdgeGuard) +
                                    "-edge guard");
    if ((o.flips & ~std::uint64_t{full_mask(u)}) != 0)
        throw OrientedHomologyError("orientation flips edges outside the graph");
}

// head vertex of edge e when the relative flip bits are `rel` on top of the
// base orientation `o`
int head_of(const OrientedGraph& u, Orientation o, std::uint32_t rel, int e) {
    const bool flipped = ((o.flips ^ rel) >> e) & 1;
    return flipped ? u.source(e) : u.target(e);
}

// all indegrees <= 1 inside the subgraph picked out by `subset`, oriented by
// the base plus the relative flips `rel` (only bits inside subset matter)
bool subset_valid(const OrientedGraph& u, Orientation o, std::uint32_t subset, std::uint32_t rel,
                  std::vector<int>& indeg_scratch) {
    std::fill(indeg_scratch.begin(), indeg_scratch.end(), 0);
    for (std::uint32_t rest = subset; rest; rest &= rest - 1) {
        const int e = std::countr_zero(rest);
        if (++indeg_scratch[head_of(u, o, rel, e)] > 1) return false;
    }
    return true;
}

int sign_of(std::uint32_t flips, int e) {
    const std::uint32_t below = (std::uint32_t{1} << e) - 1;
    return (std::popcount(flips & below) & 1) ? -1 : 1;
}

bool element_less(const OhBasisElement& a, const OhBasisElement& b) {
    return a.flips != b.flips ? a.flips < b.flips : a.subset < b.subset;
}

int index_in_stratum(const std::vector<OhBasisElement>& stratum, OhBasisElement key) {
    const auto it = std::lower_bound(stratum.begin(), stratum.end(), key, element_less);
    return static_cast<int>(it - stratum.begin());
}

// oriented matchings (subset, flips-inside-subset), the empty one excluded
std::vector<std::pair<std::uint32_t, std::uint32_t>> valid_pairs(const OrientedGraph& u,
                                                                 Orientation o) {
    const int edges = u.edge_count();
    std::vector<int> scratch(u.vertex_count());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    long long total = 0;
    for (std::uint32_t subset = 1; subset <= full_mask(u); ++subset) {
        const long long block = 1LL << (edges - std::popcount(subset));
        for (std::uint32_t rel = subset;; rel = (rel - 1) & subset) {
            if (subset_valid(u, o, subset, rel, scratch)) {
                total += block;
                if (total > kBasisGuard)
                    throw OrientedHomologyError("basis exceeds the " +
                                                std::to_string(kBasisGuard) + "-element guard");
                out.emplace_back(subset, rel);
            }
            if (rel == 0) break;
        }
    }
    return out;
}

}  // namespace

OrientationPoset orientation_poset(const OrientedGraph& u, Orientation o) {
    check_input(u, o);
    const int edges = u.edge_count();
    poset::RankedPoset lattice;
    lattice.ground_size = edges;
    for (std::uint64_t mask = 0; mask <= full_mask(u); ++mask) {
        lattice.elements.push_back(mask);
        lattice.rank.push_back(std::popcount(mask));
    }
    std::sort(lattice.elements.begin(), lattice.elements.end(),
              [](std::uint64_t a, std::uint64_t b) {
                  const int pa = std::popcount(a), pb = std::popcount(b);
                  return pa != pb ? pa < pb : a < b;
              });
    for (int i = 0; i < lattice.size(); ++i) lattice.rank[i] = std::popcount(lattice.elements[i]);
    for (int i = 0; i < lattice.size(); ++i)
        for (int e = 0; e < edges; ++e) {
            if ((lattice.elements[i] >> e) & 1) continue;
            const int j = lattice.index_of(lattice.elements[i] | (std::uint64_t{1} << e));
            lattice.covers.emplace_back(i, j);
        }
    std::sort(lattice.covers.begin(), lattice.covers.end());
    return {o, std::move(lattice)};
}

long long BigradedComplex::total_dim() const {
    long long t = 0;
    for (const auto& slice : basis)
        for (const auto& stratum : slice) t += static_cast<long long>(stratum.size());
    return t;
}

std::vector<long long> BigradedComplex::stratum_dims(int b) const {
    std::vector<long long> out(edge_count + 1, 0);
    for (int i = 0; i <= edge_count; ++i) out[i] = static_cast<long long>(basis.at(b)[i].size());
    return out;
}

BigradedComplex build_oh_complex(const OrientedGraph& u, Orientation o) {
    check_input(u, o);
    const int edges = u.edge_count();
    const std::uint32_t full = full_mask(u);

    BigradedComplex out;
    out.edge_count = edges;
    out.base = o;
    out.basis.assign(std::max(edges, 1), {});
    for (auto& slice : out.basis) slice.assign(edges + 1, {});

    for (const auto& [subset, rel] : valid_pairs(u, o)) {
        const int b = std::popcount(subset) - 1;
        const std::uint32_t free = full & ~subset;
        for (std::uint32_t extra = free;; extra = (extra - 1) & free) {
            const std::uint32_t flips = rel | extra;
            out.basis[b][std::popcount(flips)].push_back({flips, subset});
            if (extra == 0) break;
        }
    }
    for (auto& slice : out.basis)
        for (auto& stratum : slice) std::sort(stratum.begin(), stratum.end(), element_less);

    out.differential.assign(out.basis.size(), {});
    for (std::size_t b = 0; b < out.basis.size(); ++b) {
        const auto& slice = out.basis[b];
        for (int i = 0; i < edges; ++i) {
            std::vector<linalg::Triplet> entries;
            for (std::size_t col = 0; col < slice[i].size(); ++col) {
                const auto& elem = slice[i][col];
                const std::uint32_t free = full & ~(elem.flips | elem.subset);
                for (std::uint32_t rest = free; rest; rest &= rest - 1) {
                    const int e = std::countr_zero(rest);
                    const OhBasisElement target{elem.flips | (std::uint32_t{1} << e),
                                                elem.subset};
                    entries.push_back({index_in_stratum(slice[i + 1], target),
                                       static_cast<int>(col),
                                       linalg::Rat(sign_of(elem.flips, e))});
                }
            }
            out.differential[b].push_back(linalg::ExactMatrix::from_triplets(
                static_cast<int>(slice[i + 1].size()), static_cast<int>(slice[i].size()),
                entries));
        }
        for (int i = 0; i + 1 < edges; ++i)
            if (!out.differential[b][i + 1].times(out.differential[b][i]).is_zero())
                throw OrientedHomologyError(
                    "differential does not square to zero in simplicial degree " +
                    std::to_string(b));
    }
    return out;
}

long long BigradedTable::at(int i, int b) const {
    const auto it = dims.find({i, b});
    return it == dims.end() ? 0 : it->second;
}

long long BigradedTable::total() const {
    long long t = 0;
    for (const auto& [key, dim] : dims) t += dim;
    return t;
}

BigradedTable oriented_homology(const OrientedGraph& u, Orientation o,
                                const linalg::Coefficients& coeff, linalg::Backend backend) {
    if (coeff.kind == linalg::Coefficients::Kind::integers)
        throw OrientedHomologyError("oriented homology is computed over a field");
    const auto complex = build_oh_complex(u, o);
    const int edges = complex.edge_count;

    BigradedTable table;
    for (std::size_t b = 0; b < complex.basis.size(); ++b) {
        const auto& slice = complex.basis[b];
        if (std::all_of(slice.begin(), slice.end(), [](const auto& s) { return s.empty(); }))
            continue;
        // homological chain indexing: position j holds stratum i = edges - j
        linalg::ChainComplex chain;
        chain.min_degree = 0;
        for (int j = 0; j <= edges; ++j)
            chain.dims.push_back(static_cast<long long>(slice[edges - j].size()));
        for (int j = 0; j + 1 <= edges; ++j)
            chain.boundary.push_back(complex.differential[b][edges - j - 1]);
        const auto h = linalg::chain_homology(chain, coeff, backend);
        for (const auto& [j, dim] : h.betti)
            if (dim > 0) table.dims[{edges - j, static_cast<int>(b)}] = dim;
    }
    return table;
}

long long FreeFlowHistogram::total() const {
    long long t = 0;
    for (long long c : counts) t += c;
    return t;
}

FreeFlowHistogram freeflow_histogram(const OrientedGraph& u, Orientation o) {
    if ((o.flips & ~std::uint64_t{full_mask(u)}) != 0)
        throw OrientedHomologyError("orientation flips edges outside the graph");
    FreeFlowHistogram out;
    out.counts.assign(u.edge_count() + 1, 0);
    for (const auto& ff : graph::enumerate_free_flow(u))
        ++out.counts[std::popcount(ff.flips ^ o.flips)];
    return out;
}

BigradedTable histogram_table(const OrientedGraph& u, Orientation o) {
    BigradedTable table;
    if (u.edge_count() == 0) return table;  // no nonempty matchings, OH vanishes
    const auto hist = freeflow_histogram(u, o);
    for (std::size_t i = 0; i < hist.counts.size(); ++i)
        if (hist.counts[i] > 0)
            table.dims[{static_cast<int>(i), u.edge_count() - 1}] = hist.counts[i];
    return table;
}

BooleanDecompositionCheck boolean_decomposition_check(const OrientedGraph& u, Orientation o) {
    const auto complex = build_oh_complex(u, o);
    const int edges = complex.edge_count;

    BooleanDecompositionCheck out;
    out.empty_block_size = 1LL << edges;

    // block of an element: its subset plus the flips inside the subset
    auto key_of = [](const OhBasisElement& e) {
        return (std::uint64_t{e.subset} << 32) | (e.flips & e.subset);
    };

    // discover blocks and their per-stratum members
    struct Block {
        int b = 0;
        std::vector<std::vector<int>> members;  // [i] -> indices into basis[b][i]
    };
    std::unordered_map<std::uint64_t, Block> blocks;
    for (std::size_t b = 0; b < complex.basis.size(); ++b)
        for (int i = 0; i <= edges; ++i)
            for (std::size_t idx = 0; idx < complex.basis[b][i].size(); ++idx) {
                auto& block = blocks[key_of(complex.basis[b][i][idx])];
                if (block.members.empty()) {
                    block.b = static_cast<int>(b);
                    block.members.assign(edges + 1, {});
                }
                block.members[i].push_back(static_cast<int>(idx));
            }
    out.blocks = static_cast<long long>(blocks.size()) + 1;  // plus the empty matching

    // block sizes and the expected table from full-support blocks
    for (const auto& [key, block] : blocks) {
        const auto subset = static_cast<std::uint32_t>(key >> 32);
        long long size = 0;
        int min_i = edges + 1;
        for (int i = 0; i <= edges; ++i) {
            size += static_cast<long long>(block.members[i].size());
            if (!block.members[i].empty()) min_i = std::min(min_i, i);
        }
        const long long want = 1LL << (edges - std::popcount(subset));
        if (size != want) {
            out.detail = "block of subset " + std::to_string(subset) + " has size " +
                         std::to_string(size) + ", expected " + std::to_string(want);
            return out;
        }
        if (std::popcount(subset) == edges) ++out.expected.dims[{min_i, edges - 1}];
    }

    // the differential never leaves a block
    for (std::size_t b = 0; b < complex.basis.size(); ++b)
        for (int i = 0; i < edges; ++i) {
            const auto& d = complex.differential[b][i];
            for (int r = 0; r < d.rows(); ++r)
                for (const auto& [c, v] : d.row(r))
                    if (key_of(complex.basis[b][i][c]) != key_of(complex.basis[b][i + 1][r])) {
                        out.detail = "differential leaves the block of subset " +
                                     std::to_string(complex.basis[b][i][c].subset);
                        return out;
                    }
        }

    // blocks below full support are acyclic
    for (const auto& [key, block] : blocks) {
        const auto subset = static_cast<std::uint32_t>(key >> 32);
        if (std::popcount(subset) == edges) continue;
        // local chain complex, reversed as in oriented_homology
        std::vector<std::unordered_map<int, int>> local(edges + 1);
        for (int i = 0; i <= edges; ++i)
            for (std::size_t n = 0; n < block.members[i].size(); ++n)
                local[i][block.members[i][n]] = static_cast<int>(n);
        linalg::ChainComplex chain;
        chain.min_degree = 0;
        for (int j = 0; j <= edges; ++j)
            chain.dims.push_back(static_cast<long long>(block.members[edges - j].size()));
        for (int j = 0; j + 1 <= edges; ++j) {
            const int i = edges - j - 1;
            std::vector<linalg::Triplet> entries;
            const auto& d = complex.differential[block.b][i];
            for (int r = 0; r < d.rows(); ++r) {
                const auto row_it = local[i + 1].find(r);
                if (row_it == local[i + 1].end()) continue;
                for (const auto& [c, v] : d.row(r))
                    if (const auto col_it = local[i].find(c); col_it != local[i].end())
                        entries.push_back({row_it->second, col_it->second, v});
            }
            chain.boundary.push_back(linalg::ExactMatrix::from_triplets(
                static_cast<int>(block.members[i + 1].size()),
                static_cast<int>(block.members[i].size()), entries));
        }
        const auto h = linalg::chain_homology(chain, linalg::Coefficients::rationals());
        for (const auto& [deg, dim] : h.betti)
            if (dim != 0) {
                out.detail = "block of subset " + std::to_string(subset) +
                             " is not acyclic in stratum " + std::to_string(edges - deg);
                return out;
            }
    }

    const auto oh = oriented_homology(u, o, linalg::Coefficients::rationals());
    if (!(oh == out.expected)) {
        out.detail = "full-support blocks disagree with the computed homology table";
        return out;
    }

    out.pass = true;
    return out;
}

}  // namespace motco::orientedhomology
