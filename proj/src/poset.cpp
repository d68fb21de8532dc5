#include "motco/poset.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace motco::poset {

namespace {

bool mask_less(std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
}

// covers of a subset family closed downward: single-bit additions staying
// inside the family
std::vector<std::pair<int, int>> inclusion_covers(const std::vector<std::uint64_t>& elements,
                                                  int ground_size) {
    std::unordered_map<std::uint64_t, int> index;
    index.reserve(elements.size() * 2);
    for (size_t i = 0; i < elements.size(); ++i) index[elements[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> covers;
    for (size_t i = 0; i < elements.size(); ++i)
        for (int b = 0; b < ground_size; ++b) {
            if (elements[i] >> b & 1) continue;
            auto it = index.find(elements[i] | (std::uint64_t{1} << b));
            if (it != index.end()) covers.emplace_back(static_cast<int>(i), it->second);
        }
    std::sort(covers.begin(), covers.end());
    return covers;
}

RankedPoset from_masks(std::vector<std::uint64_t> elements, int ground_size) {
    std::sort(elements.begin(), elements.end(), mask_less);
    RankedPoset p;
    p.ground_size = ground_size;
    p.rank.reserve(elements.size());
    for (std::uint64_t m : elements) p.rank.push_back(std::popcount(m));
    p.elements = std::move(elements);
    p.covers = inclusion_covers(p.elements, ground_size);
    return p;
}

}  // namespace

int RankedPoset::index_of(std::uint64_t mask) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), mask, mask_less);
    if (it == elements.end() || *it != mask) return -1;
    return static_cast<int>(it - elements.begin());
}

std::vector<std::vector<int>> RankedPoset::upper_adjacency() const {
    std::vector<std::vector<int>> adj(elements.size());
    for (const auto& [lo, hi] : covers) adj[lo].push_back(hi);
    return adj;
}

std::vector<std::vector<int>> RankedPoset::lower_adjacency() const {
    std::vector<std::vector<int>> adj(elements.size());
    for (const auto& [lo, hi] : covers) adj[hi].push_back(lo);
    return adj;
}

std::vector<int> RankedPoset::rank_sizes() const {
    std::vector<int> sizes;
    for (int r : rank) {
        if (r >= static_cast<int>(sizes.size())) sizes.resize(r + 1, 0);
        ++sizes[r];
    }
    return sizes;
}

bool holds(const graph::OrientedGraph& g, MonotoneProperty property, std::uint64_t mask) {
    if (property == MonotoneProperty::spanning) return true;
    std::vector<int> indeg(g.vertex_count(), 0), outdeg(g.vertex_count(), 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!(mask >> e & 1)) continue;
        ++outdeg[g.source(e)];
        ++indeg[g.target(e)];
        if (indeg[g.target(e)] > 1) return false;
        if (property == MonotoneProperty::multipath && outdeg[g.source(e)] > 1) return false;
    }
    if (property == MonotoneProperty::indeg_le_one) return true;
    // indegree and outdegree are <= 1: components are paths or directed
    // cycles; reject cycles by following unique successors
    std::vector<int> successor(g.vertex_count(), -1);
    for (int e = 0; e < g.edge_count(); ++e)
        if (mask >> e & 1) successor[g.source(e)] = g.target(e);
    std::vector<char> done(g.vertex_count(), 0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (done[v] || indeg[v] > 0) continue;  // walk only from path starts
        for (int u = v; u != -1; u = successor[u]) done[u] = 1;
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!done[v] && successor[v] != -1) return false;  // on a cycle
    return true;
}

RankedPoset monotone_poset(const graph::OrientedGraph& g, MonotoneProperty property) {
    if (g.edge_count() > 30) throw GuardError("monotone_poset: more than 30 edges");
    // every element is reachable from the empty subgraph one edge at a time
    // because the property is closed under edge deletion
    std::set<std::uint64_t> found{0};
    std::queue<std::uint64_t> frontier;
    frontier.push(0);
    while (!frontier.empty()) {
        const std::uint64_t m = frontier.front();
        frontier.pop();
        for (int e = 0; e < g.edge_count(); ++e) {
            if (m >> e & 1) continue;
            const std::uint64_t up = m | (std::uint64_t{1} << e);
            if (found.count(up) || !holds(g, property, up)) continue;
            found.insert(up);
            frontier.push(up);
        }
    }
    return from_masks({found.begin(), found.end()}, g.edge_count());
}

RankedPoset face_poset(const std::vector<std::uint64_t>& nonempty_simplices, int ground_size) {
    for (std::uint64_t m : nonempty_simplices)
        if (m == 0) throw GuardError("face_poset: the empty simplex is not an element");
    return from_masks(nonempty_simplices, ground_size);
}

RankedPoset with_bottom(const RankedPoset& p) {
    if (p.index_of(0) != -1) throw GuardError("with_bottom: poset already has a bottom");
    RankedPoset out;
    out.ground_size = p.ground_size;
    out.elements.reserve(p.size() + 1);
    out.elements.push_back(0);
    out.elements.insert(out.elements.end(), p.elements.begin(), p.elements.end());
    out.rank.push_back(0);
    out.rank.insert(out.rank.end(), p.rank.begin(), p.rank.end());
    for (const auto& [lo, hi] : p.covers) out.covers.emplace_back(lo + 1, hi + 1);
    for (int i = 0; i < p.size(); ++i)
        if (p.rank[i] == 1) out.covers.emplace_back(0, i + 1);
    std::sort(out.covers.begin(), out.covers.end());
    return out;
}

namespace {

// number of length-2 chains between each (bottom, top) pair
std::map<std::pair<int, int>, int> square_counts(const RankedPoset& p) {
    const auto up = p.upper_adjacency();
    std::map<std::pair<int, int>, int> count;
    for (int z = 0; z < p.size(); ++z)
        for (int y : up[z])
            for (int x : up[y]) ++count[{z, x}];
    return count;
}

}  // namespace

bool is_squared(const RankedPoset& p) {
    for (const auto& [pair, c] : square_counts(p))
        if (c != 2) return false;
    return true;
}

SignAssignment sign_assignment(const RankedPoset& p) {
    if (!is_squared(p)) throw GuardError("sign_assignment: poset is not squared");
    SignAssignment s;
    s.sign.reserve(p.covers.size());
    for (const auto& [lo, hi] : p.covers) {
        const std::uint64_t added = p.elements[hi] ^ p.elements[lo];
        s.sign.push_back(std::popcount(p.elements[lo] & (added - 1)) & 1);
    }
    return s;
}

bool verify_sign_squares(const RankedPoset& p, const SignAssignment& s) {
    if (s.sign.size() != p.covers.size()) return false;
    std::map<std::pair<int, int>, int> cover_sign;
    for (size_t i = 0; i < p.covers.size(); ++i) cover_sign[p.covers[i]] = s.sign[i];
    const auto up = p.upper_adjacency();
    // group the two midpoints of each square and compare path sign sums
    std::map<std::pair<int, int>, std::vector<int>> paths;
    for (int z = 0; z < p.size(); ++z)
        for (int y : up[z])
            for (int x : up[y])
                paths[{z, x}].push_back(cover_sign[{z, y}] ^ cover_sign[{y, x}]);
    for (const auto& [pair, sums] : paths) {
        if (sums.size() != 2) return false;
        if ((sums[0] ^ sums[1]) != 1) return false;
    }
    return true;
}

namespace {

// joint iterated colour refinement over the disjoint union of both posets,
// by (rank, sorted up-neighbour colours, sorted down-neighbour colours);
// colours are renumbered canonically each round, so they are directly
// comparable between the two posets
std::pair<std::vector<int>, std::vector<int>> refine_colours(const RankedPoset& p,
                                                             const RankedPoset& q) {
    const int np = p.size(), n = np + q.size();
    std::vector<int> rank(n);
    std::vector<std::vector<int>> up(n), down(n);
    for (int i = 0; i < np; ++i) rank[i] = p.rank[i];
    for (int i = np; i < n; ++i) rank[i] = q.rank[i - np];
    for (const auto& [lo, hi] : p.covers) {
        up[lo].push_back(hi);
        down[hi].push_back(lo);
    }
    for (const auto& [lo, hi] : q.covers) {
        up[np + lo].push_back(np + hi);
        down[np + hi].push_back(np + lo);
    }

    using Key = std::vector<int>;
    auto canonical = [n](const std::vector<Key>& keys) {
        std::vector<Key> sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> colour(n);
        for (int i = 0; i < n; ++i)
            colour[i] = static_cast<int>(
                std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
        return std::pair{colour, static_cast<int>(sorted.size())};
    };

    std::vector<Key> keys(n);
    for (int i = 0; i < n; ++i)
        keys[i] = {rank[i], static_cast<int>(up[i].size()), static_cast<int>(down[i].size())};
    auto [colour, classes] = canonical(keys);
    while (true) {
        for (int i = 0; i < n; ++i) {
            Key key{colour[i], -1};
            std::vector<int> ups, downs;
            for (int j : up[i]) ups.push_back(colour[j]);
            for (int j : down[i]) downs.push_back(colour[j]);
            std::sort(ups.begin(), ups.end());
            std::sort(downs.begin(), downs.end());
            key.insert(key.end(), ups.begin(), ups.end());
            key.push_back(-1);
            key.insert(key.end(), downs.begin(), downs.end());
            keys[i] = std::move(key);
        }
        auto [next, next_classes] = canonical(keys);
        if (next_classes == classes) break;  // refinement is strict until stable
        colour = std::move(next);
        classes = next_classes;
    }
    return {std::vector<int>(colour.begin(), colour.begin() + np),
            std::vector<int>(colour.begin() + np, colour.end())};
}

struct Matcher {
    const RankedPoset& p;
    const RankedPoset& q;
    std::vector<int> colour_p, colour_q;
    std::vector<std::vector<int>> up_p, down_p, up_q, down_q;
    std::unordered_set<std::uint64_t> cover_q;  // lo * size + hi
    std::vector<int> map_pq, map_qp;
    std::vector<int> order;  // p indices, most constrained first

    bool consistent(int i, int j) const {
        for (int k : up_p[i]) {
            if (map_pq[k] == -1) continue;
            if (!cover_q.count(static_cast<std::uint64_t>(j) * q.size() + map_pq[k])) return false;
        }
        for (int k : down_p[i]) {
            if (map_pq[k] == -1) continue;
            if (!cover_q.count(static_cast<std::uint64_t>(map_pq[k]) * q.size() + j)) return false;
        }
        return true;
    }

    bool extend(size_t pos) {
        if (pos == order.size()) return true;
        const int i = order[pos];
        for (int j = 0; j < q.size(); ++j) {
            if (map_qp[j] != -1 || colour_q[j] != colour_p[i]) continue;
            if (!consistent(i, j)) continue;
            map_pq[i] = j;
            map_qp[j] = i;
            if (extend(pos + 1)) return true;
            map_pq[i] = -1;
            map_qp[j] = -1;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<int>> poset_isomorphic(const RankedPoset& p, const RankedPoset& q) {
    if (p.size() > 20000 || q.size() > 20000)
        throw GuardError("poset_isomorphic: more than 20000 elements");
    if (p.size() != q.size() || p.covers.size() != q.covers.size()) return std::nullopt;

    auto [colour_p, colour_q] = refine_colours(p, q);
    Matcher m{p, q, std::move(colour_p), std::move(colour_q),
              p.upper_adjacency(),  p.lower_adjacency(),
              q.upper_adjacency(),  q.lower_adjacency(),
              {}, {}, {}, {}};
    {
        std::vector<int> hp = m.colour_p, hq = m.colour_q;
        std::sort(hp.begin(), hp.end());
        std::sort(hq.begin(), hq.end());
        if (hp != hq) return std::nullopt;
    }
    m.cover_q.reserve(q.covers.size() * 2);
    for (const auto& [lo, hi] : q.covers)
        m.cover_q.insert(static_cast<std::uint64_t>(lo) * q.size() + hi);
    m.map_pq.assign(p.size(), -1);
    m.map_qp.assign(q.size(), -1);

    // match rare colours first, then low rank, to fail fast
    std::map<int, int> colour_size;
    for (int c : m.colour_p) ++colour_size[c];
    m.order.resize(p.size());
    for (int i = 0; i < p.size(); ++i) m.order[i] = i;
    std::sort(m.order.begin(), m.order.end(), [&](int a, int b) {
        const int ca = colour_size[m.colour_p[a]], cb = colour_size[m.colour_p[b]];
        if (ca != cb) return ca < cb;
        if (p.rank[a] != p.rank[b]) return p.rank[a] < p.rank[b];
        return a < b;
    });

    if (!m.extend(0)) return std::nullopt;
    return m.map_pq;
}

}  // namespace motco::poset
