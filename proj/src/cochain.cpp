#include "motco/cochain.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <utility>

namespace motco::cochain {

namespace {

using linalg::Int;
using linalg::Rat;

Int int_pow(long long base, int exp) {
    Int out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

// Per-vertex component index of the spanning subgraph (V, mask), components
// numbered by increasing minimal vertex id.
struct Components {
    int count = 0;
    std::vector<int> position;
};

Components components_of(const graph::OrientedGraph& g, std::uint64_t mask) {
    const int n = g.vertex_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
        const int e = std::countr_zero(rest);
        const int a = find(g.source(e));
        const int b = find(g.target(e));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    Components out;
    out.position.assign(n, -1);
    std::vector<int> label(n, -1);
    for (int v = 0; v < n; ++v) {
        const int r = find(v);
        if (label[r] < 0) label[r] = out.count++;
        out.position[v] = label[r];
    }
    return out;
}

bool algebra_is_integral(const algebra::FiniteAlgebra& a) {
    for (const Rat& u : a.unit())
        if (denominator(u) != 1) return false;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            for (const Rat& c : a.table(i, j))
                if (denominator(c) != 1) return false;
    return true;
}

void assert_squares_to_zero(const CochainComplex& c, const char* what) {
    for (std::size_t n = 0; n + 1 < c.differential.size(); ++n) {
        if (!c.differential[n + 1].times(c.differential[n]).is_zero())
            throw CochainError(std::string(what) + ": differential does not square to zero in degree " +
                               std::to_string(n));
    }
}

// Mixed-radix encode, first digit most significant.
long long encode_tuple(const std::vector<int>& digits, const std::vector<long long>& pow,
                       int skip = -1) {
    long long idx = 0;
    for (std::size_t h = 0; h < digits.size(); ++h) {
        if (static_cast<int>(h) == skip) continue;
        idx = idx * pow[1] + digits[h];
    }
    return idx;
}

}  // namespace

long long CochainComplex::total_dim() const {
    long long t = 0;
    for (long long d : dims) t += d;
    return t;
}

CochainComplex monotone_cochain(const graph::OrientedGraph& g, poset::MonotoneProperty property,
                                const FunctorSpec& spec) {
    if (auto err = algebra::validate(spec.algebra))
        throw CochainError("invalid algebra: " + *err);
    const int alpha = spec.algebra.dim();
    const auto p = poset::monotone_poset(g, property);
    const auto& ranks = p.rank;
    const int top = p.rank_sizes().empty() ? 0 : static_cast<int>(p.rank_sizes().size()) - 1;

    // First pass: component counts, block offsets, degree dimensions. The
    // guard is checked with big integers so oversized alpha^k cannot wrap.
    std::vector<int> comp_count(p.size());
    std::vector<long long> offsets(p.size());
    std::vector<Int> degree_dims(top + 1, 0);
    Int total = 0;
    for (int i = 0; i < p.size(); ++i) {
        comp_count[i] = components_of(g, p.elements[i]).count;
        const Int block = int_pow(alpha, comp_count[i]);
        total += block;
        if (total > kDimsGuard)
            throw CochainError("cochain dims guard exceeded (" + std::to_string(kDimsGuard) +
                               " basis elements)");
        offsets[i] = degree_dims[ranks[i]].convert_to<long long>();
        degree_dims[ranks[i]] += block;
    }

    CochainComplex out;
    out.alpha = alpha;
    out.integral = algebra_is_integral(spec.algebra);
    out.dims.resize(top + 1);
    for (int n = 0; n <= top; ++n) out.dims[n] = degree_dims[n].convert_to<long long>();
    out.basis.resize(top + 1);
    for (int i = 0; i < p.size(); ++i) {
        auto& b = out.basis[ranks[i]];
        b.masks.push_back(p.elements[i]);
        b.components.push_back(comp_count[i]);
        b.offsets.push_back(offsets[i]);
    }

    const int max_comp = *std::max_element(comp_count.begin(), comp_count.end());
    std::vector<long long> pow(max_comp + 1, 1);
    for (int j = 1; j <= max_comp; ++j) pow[j] = pow[j - 1] * alpha;

    const auto signs = poset::sign_assignment(p);
    std::vector<std::vector<linalg::Triplet>> entries(std::max(top, 0));

    int cached_lo = -1;
    Components comps;
    std::vector<int> digits;
    for (std::size_t ci = 0; ci < p.covers.size(); ++ci) {
        const auto [lo, hi] = p.covers[ci];
        if (lo != cached_lo) {
            comps = components_of(g, p.elements[lo]);
            cached_lo = lo;
        }
        const int e = std::countr_zero(p.elements[hi] ^ p.elements[lo]);
        const Rat sgn = signs.sign[ci] ? -1 : 1;
        const int col0 = static_cast<int>(offsets[lo]);
        const int row0 = static_cast<int>(offsets[hi]);
        const int k = comps.count;
        int i = comps.position[g.source(e)];
        int j = comps.position[g.target(e)];
        auto& deg = entries[ranks[lo]];
        if (i == j) {
            if (spec.variant == FunctorVariant::zero) continue;
            for (long long t = 0; t < pow[k]; ++t)
                deg.push_back({row0 + static_cast<int>(t), col0 + static_cast<int>(t), sgn});
            continue;
        }
        if (i > j) std::swap(i, j);
        digits.assign(k, 0);
        for (long long t = 0; t < pow[k]; ++t) {
            long long rest = t;
            for (int h = k - 1; h >= 0; --h) {
                digits[h] = static_cast<int>(rest % alpha);
                rest /= alpha;
            }
            const auto& product = spec.algebra.table(digits[i], digits[j]);
            for (int m = 0; m < alpha; ++m) {
                if (product[m] == 0) continue;
                digits[i] = m;
                const long long r = encode_tuple(digits, pow, j);
                deg.push_back({row0 + static_cast<int>(r), col0 + static_cast<int>(t),
                               sgn * product[m]});
            }
        }
    }

    out.differential.reserve(entries.size());
    for (int n = 0; n < top; ++n)
        out.differential.push_back(linalg::ExactMatrix::from_triplets(
            static_cast<int>(out.dims[n + 1]), static_cast<int>(out.dims[n]), entries[n]));
    assert_squares_to_zero(out, "monotone_cochain");
    return out;
}

CochainComplex oriented_matching_cochain(const graph::OrientedGraph& g, const FunctorSpec& spec) {
    return monotone_cochain(graph::coherent_barycentric(g), poset::MonotoneProperty::multipath,
                            spec);
}

CochainComplex degree_zero_complex(long long dim) {
    if (dim < 0) throw CochainError("degree_zero_complex: negative dimension");
    CochainComplex out;
    out.dims = {dim};
    out.alpha = 0;
    out.integral = true;
    return out;
}

CochainComplex tensor(const CochainComplex& a, const CochainComplex& b) {
    const int atop = a.top_degree();
    const int btop = b.top_degree();
    const int top = atop + btop;
    CochainComplex out;
    out.alpha = (a.alpha == b.alpha) ? a.alpha : 0;
    out.integral = a.integral && b.integral;
    out.dims.assign(top + 1, 0);

    // offsets[n][i - lo(n)] = start of block a_i (x) b_{n-i} inside degree n
    auto lo_of = [&](int n) { return std::max(0, n - btop); };
    auto hi_of = [&](int n) { return std::min(atop, n); };
    std::vector<std::vector<long long>> offsets(top + 1);
    Int total = 0;
    for (int n = 0; n <= top; ++n) {
        long long off = 0;
        for (int i = lo_of(n); i <= hi_of(n); ++i) {
            offsets[n].push_back(off);
            const Int block = Int(a.dims[i]) * b.dims[n - i];
            total += block;
            if (total > kDimsGuard)
                throw CochainError("tensor dims guard exceeded (" + std::to_string(kDimsGuard) +
                                   " basis elements)");
            off += block.convert_to<long long>();
        }
        out.dims[n] = off;
    }

    auto offset_of = [&](int n, int i) { return offsets[n][i - lo_of(n)]; };

    for (int n = 0; n < top; ++n) {
        std::vector<linalg::Triplet> entries;
        for (int i = lo_of(n); i <= hi_of(n); ++i) {
            const int j = n - i;
            if (i < atop && a.dims[i + 1] > 0) {
                const auto& d = a.differential[i];
                for (int r = 0; r < d.rows(); ++r)
                    for (const auto& [c, v] : d.row(r))
                        for (long long y = 0; y < b.dims[j]; ++y)
                            entries.push_back(
                                {static_cast<int>(offset_of(n + 1, i + 1) + r * b.dims[j] + y),
                                 static_cast<int>(offset_of(n, i) + c * b.dims[j] + y), v});
            }
            if (j < btop && b.dims[j + 1] > 0) {
                const auto& d = b.differential[j];
                const Rat sgn = (i % 2 == 0) ? 1 : -1;
                for (int r = 0; r < d.rows(); ++r)
                    for (const auto& [c, v] : d.row(r))
                        for (long long x = 0; x < a.dims[i]; ++x)
                            entries.push_back(
                                {static_cast<int>(offset_of(n + 1, i) + x * b.dims[j + 1] + r),
                                 static_cast<int>(offset_of(n, i) + x * b.dims[j] + c), sgn * v});
            }
        }
        out.differential.push_back(linalg::ExactMatrix::from_triplets(
            static_cast<int>(out.dims[n + 1]), static_cast<int>(out.dims[n]), entries));
    }
    assert_squares_to_zero(out, "tensor");
    return out;
}

linalg::HomologySummary cohomology(const CochainComplex& c, const linalg::Coefficients& coeff,
                                   linalg::Backend backend) {
    if (coeff.kind == linalg::Coefficients::Kind::integers && !c.integral)
        throw CochainError("integer coefficients require integral structure constants");
    const int top = c.top_degree();
    linalg::ChainComplex chain;
    chain.min_degree = 0;
    chain.dims.assign(c.dims.rbegin(), c.dims.rend());
    chain.boundary.assign(c.differential.rbegin(), c.differential.rend());
    const auto raw = linalg::chain_homology(chain, coeff, backend);
    linalg::HomologySummary out;
    for (const auto& [deg, dim] : raw.betti) out.betti[top - deg] = dim;
    for (const auto& [deg, factors] : raw.torsion) out.torsion[top - deg] = factors;
    return out;
}

Int euler_characteristic(const CochainComplex& c) {
    Int chi = 0;
    for (std::size_t n = 0; n < c.dims.size(); ++n)
        chi += (n % 2 == 0) ? Int(c.dims[n]) : Int(-c.dims[n]);
    return chi;
}

Int euler_from_poset(const graph::OrientedGraph& g, poset::MonotoneProperty property, int alpha) {
    if (alpha < 1) throw CochainError("euler_from_poset: alpha must be positive");
    const auto p = poset::monotone_poset(g, property);
    Int chi = 0;
    for (int i = 0; i < p.size(); ++i) {
        const Int term = int_pow(alpha, components_of(g, p.elements[i]).count);
        chi += (p.rank[i] % 2 == 0) ? term : -term;
    }
    return chi;
}

namespace {

// Graded dimensions of the multipath cochain straight from the poset.
std::vector<Int> graded_dims(const graph::OrientedGraph& g, int alpha) {
    const auto p = poset::monotone_poset(g, poset::MonotoneProperty::multipath);
    const auto sizes = p.rank_sizes();
    std::vector<Int> out(sizes.size(), 0);
    for (int i = 0; i < p.size(); ++i)
        out[p.rank[i]] += int_pow(alpha, components_of(g, p.elements[i]).count);
    return out;
}

graph::OrientedGraph induced_subgraph(const graph::OrientedGraph& g,
                                      const std::vector<int>& vertices) {
    std::vector<int> renumber(g.vertex_count(), -1);
    std::vector<std::string> names;
    for (int v : vertices) {
        renumber[v] = static_cast<int>(names.size());
        names.push_back(g.vertex_name(v));
    }
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < g.edge_count(); ++e)
        if (renumber[g.source(e)] >= 0 && renumber[g.target(e)] >= 0)
            edges.emplace_back(renumber[g.source(e)], renumber[g.target(e)]);
    return graph::OrientedGraph(std::move(names), std::move(edges));
}

// Sink stars are the only component shape the barycentric constructions
// produce; normalizing them by edge count lets repeated stars share one
// cohomology computation.
int sink_star_size(const graph::OrientedGraph& g) {
    if (g.edge_count() == 0) return g.vertex_count() == 1 ? 0 : -1;
    if (g.vertex_count() != g.edge_count() + 1) return -1;
    const int t = g.target(0);
    for (int e = 0; e < g.edge_count(); ++e)
        if (g.target(e) != t) return -1;
    const auto rep = graph::analyze(g);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (v != t && rep.outdegree[v] != 1) return -1;
    return g.edge_count();
}

std::string algebra_fingerprint(const FunctorSpec& spec, const linalg::Coefficients& coeff) {
    std::ostringstream s;
    s << spec.algebra.dim() << (spec.variant == FunctorVariant::zero ? ";z" : ";i") << ';'
      << static_cast<int>(coeff.kind) << ';' << coeff.p;
    for (const Rat& u : spec.algebra.unit()) s << ';' << u;
    for (int i = 0; i < spec.algebra.dim(); ++i)
        for (int j = 0; j < spec.algebra.dim(); ++j)
            for (const Rat& c : spec.algebra.table(i, j)) s << ';' << c;
    return s.str();
}

std::vector<long long> betti_vector(const CochainComplex& c, const linalg::Coefficients& coeff) {
    const auto h = cohomology(c, coeff);
    std::vector<long long> out(c.dims.size(), 0);
    for (const auto& [deg, dim] : h.betti) out[deg] = dim;
    return out;
}

std::vector<long long> component_betti(const graph::OrientedGraph& comp, const FunctorSpec& spec,
                                       const linalg::Coefficients& coeff) {
    static std::map<std::string, std::vector<long long>> cache;
    static std::mutex cache_mutex;
    const int star = sink_star_size(comp);
    std::string key;
    if (star >= 0) {
        key = "star:" + std::to_string(star) + '|' + algebra_fingerprint(spec, coeff);
        std::lock_guard lock(cache_mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto result = betti_vector(
        monotone_cochain(comp, poset::MonotoneProperty::multipath, spec), coeff);
    if (!key.empty()) {
        std::lock_guard lock(cache_mutex);
        cache.emplace(key, result);
    }
    return result;
}

std::vector<long long> convolve(const std::vector<long long>& a, const std::vector<long long>& b) {
    std::vector<long long> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// Kuenneth over a field: betti numbers of the multipath cochain of g are the
// convolution of the per-component betti numbers.
std::vector<long long> componentwise_betti(const graph::OrientedGraph& g, const FunctorSpec& spec,
                                           const linalg::Coefficients& coeff) {
    std::vector<long long> acc{1};
    for (const auto& comp : graph::analyze(g).components)
        acc = convolve(acc, component_betti(induced_subgraph(g, comp), spec, coeff));
    return acc;
}

std::map<int, long long> trimmed_map(const std::vector<long long>& v) {
    std::map<int, long long> out;
    for (std::size_t n = 0; n < v.size(); ++n) out[static_cast<int>(n)] = v[n];
    while (!out.empty() && std::prev(out.end())->second == 0 &&
           static_cast<std::size_t>(std::prev(out.end())->first) + 1 == out.size() &&
           out.size() > 1)
        out.erase(std::prev(out.end()));
    return out;
}

}  // namespace

SourceResolutionCheck verify_source_resolution_iso(const graph::OrientedGraph& g,
                                                   const FunctorSpec& spec,
                                                   const linalg::Coefficients& coeff,
                                                   long long direct_limit) {
    if (auto err = algebra::validate(spec.algebra))
        throw CochainError("invalid algebra: " + *err);
    const int alpha = spec.algebra.dim();
    const auto rep = graph::analyze(g);
    int s = 0;
    for (int d : rep.indegree)
        if (d == 0) ++s;
    const auto cbg = graph::coherent_barycentric(g);
    const auto sr = graph::source_resolution(g).graph;
    const Int free_factor = int_pow(alpha, s);

    SourceResolutionCheck out;
    out.dims_left = graded_dims(cbg, alpha);
    out.dims_right = graded_dims(sr, alpha);
    for (Int& d : out.dims_right) d *= free_factor;

    if (out.dims_left.size() != out.dims_right.size()) {
        out.detail = "graded dimensions disagree in length: " +
                     std::to_string(out.dims_left.size()) + " vs " +
                     std::to_string(out.dims_right.size()) + " degrees";
        return out;
    }
    for (std::size_t n = 0; n < out.dims_left.size(); ++n) {
        if (out.dims_left[n] != out.dims_right[n]) {
            out.detail = "graded dimension mismatch in degree " + std::to_string(n) + ": " +
                         out.dims_left[n].str() + " vs " + out.dims_right[n].str();
            return out;
        }
    }

    Int max_dim = 0;
    Int total = 0;
    for (const Int& d : out.dims_left) {
        max_dim = std::max(max_dim, d);
        total += d;
    }

    if (max_dim <= direct_limit && total <= kDimsGuard) {
        out.mode = "direct";
        const auto left = oriented_matching_cochain(g, spec);
        const auto right =
            tensor(monotone_cochain(sr, poset::MonotoneProperty::multipath, spec),
                   degree_zero_complex(free_factor.convert_to<long long>()));
        const auto hl = cohomology(left, coeff);
        const auto hr = cohomology(right, coeff);
        out.cohomology_left = hl.betti;
        out.cohomology_right = hr.betti;
        if (hl.betti != hr.betti) {
            for (const auto& [deg, dim] : hl.betti) {
                const auto it = hr.betti.find(deg);
                if (it == hr.betti.end() || it->second != dim) {
                    out.detail = "cohomology mismatch in degree " + std::to_string(deg);
                    return out;
                }
            }
            out.detail = "cohomology mismatch: right side has extra degrees";
            return out;
        }
        if (coeff.kind == linalg::Coefficients::Kind::integers && hl.torsion != hr.torsion) {
            out.detail = "torsion mismatch";
            return out;
        }
    } else {
        if (coeff.kind == linalg::Coefficients::Kind::integers)
            throw CochainError(
                "verify_source_resolution_iso: integer coefficients need the direct mode; raise "
                "direct_limit");
        out.mode = "componentwise";
        auto left = componentwise_betti(cbg, spec, coeff);
        auto right = componentwise_betti(sr, spec, coeff);
        for (long long& b : right) b *= free_factor.convert_to<long long>();
        out.cohomology_left = trimmed_map(left);
        out.cohomology_right = trimmed_map(right);
        const std::size_t degrees = std::max(left.size(), right.size());
        left.resize(degrees, 0);
        right.resize(degrees, 0);
        for (std::size_t n = 0; n < degrees; ++n) {
            if (left[n] != right[n]) {
                out.detail = "cohomology mismatch in degree " + std::to_string(n) + ": " +
                             std::to_string(left[n]) + " vs " + std::to_string(right[n]);
                return out;
            }
        }
    }

    out.pass = true;
    return out;
}

}  // namespace motco::cochain
