// Times the serial and OpenMP elimination kernels on the same workloads and
// checks that both produce identical results (they run the same pivot
// order). Optional argument: repetitions per backend, best time kept.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "motco/cochain.hpp"
#include "motco/complexes.hpp"
#include "motco/graph.hpp"
#include "motco/linalg.hpp"
#include "motco/oriented_homology.hpp"
#include "motco/poset.hpp"

using namespace motco;
using graph::OrientedGraph;
using linalg::Backend;
using linalg::Coefficients;

namespace {

OrientedGraph complete_bipartite_5_5() {
    std::vector<std::pair<int, int>> edges;
    for (int l = 0; l < 5; ++l)
        for (int r = 0; r < 5; ++r) edges.emplace_back(l, 5 + r);
    return OrientedGraph::with_default_names(10, edges);
}

OrientedGraph coherent_path(int edges) {
    std::vector<std::pair<int, int>> list;
    for (int v = 0; v < edges; ++v) list.emplace_back(v, v + 1);
    return OrientedGraph::with_default_names(edges + 1, list);
}

struct Workload {
    std::string name;
    // Runs the computation on one backend and returns a digest of the result;
    // the digests from both backends must agree.
    std::string (*run)(Backend);
};

std::string digest_homology(const linalg::HomologySummary& h) {
    std::string out;
    for (const auto& [degree, betti] : h.betti)
        out += std::to_string(degree) + ":" + std::to_string(betti) + ";";
    for (const auto& [degree, factors] : h.torsion) {
        out += "t" + std::to_string(degree) + ":";
        for (const auto& f : factors) out += f.str() + ",";
    }
    return out;
}

std::string matching_homology(const Coefficients& coeff, Backend backend) {
    const auto x = complexes::build_complex(complete_bipartite_5_5(),
                                            complexes::ComplexKind::graph_matching);
    return digest_homology(complexes::reduced_homology(x, coeff, backend));
}

std::string multipath_cohomology(Backend backend) {
    const cochain::FunctorSpec spec{algebra::FiniteAlgebra::truncated_polynomial(3),
                                    cochain::FunctorVariant::identity};
    const auto c = cochain::monotone_cochain(coherent_path(6), poset::MonotoneProperty::multipath,
                                             spec);
    return digest_homology(cochain::cohomology(c, Coefficients::rationals(), backend));
}

std::string oriented_homology_path(Backend backend) {
    const auto table = orientedhomology::oriented_homology(coherent_path(7), graph::Orientation{0},
                                                           Coefficients::rationals(), backend);
    std::string out;
    for (const auto& [key, dim] : table.dims)
        out += std::to_string(key.first) + "," + std::to_string(key.second) + ":" +
               std::to_string(dim) + ";";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 1;

    const std::vector<Workload> workloads = {
        {"bipartite 5x5 matching homology over Z",
         [](Backend b) { return matching_homology(Coefficients::integers(), b); }},
        {"bipartite 5x5 matching homology over F_3",
         [](Backend b) { return matching_homology(Coefficients::prime_field(3), b); }},
        {"bipartite 5x5 matching homology over Q",
         [](Backend b) { return matching_homology(Coefficients::rationals(), b); }},
        {"multipath cochain of the 6-edge path, trunc(3), over Q",
         [](Backend b) { return multipath_cohomology(b); }},
        {"oriented homology of the 7-edge path over Q",
         [](Backend b) { return oriented_homology_path(b); }},
    };

#ifdef _OPENMP
    std::printf("threads: %d, repetitions: %d\n\n", omp_get_max_threads(), repeats);
#else
    std::printf("threads: 1 (OpenMP disabled), repetitions: %d\n\n", repeats);
#endif
    std::printf("%-55s %9s %9s %8s\n", "workload", "serial", "parallel", "speedup");

    bool all_match = true;
    for (const auto& w : workloads) {
        double best[2] = {1e300, 1e300};
        std::string digest[2];
        for (int side = 0; side < 2; ++side) {
            const Backend backend = side == 0 ? Backend::serial : Backend::parallel;
            for (int r = 0; r < repeats; ++r) {
                const auto start = std::chrono::steady_clock::now();
                digest[side] = w.run(backend);
                const double seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
                best[side] = std::min(best[side], seconds);
            }
        }
        const bool match = digest[0] == digest[1];
        all_match = all_match && match;
        std::printf("%-55s %8.3fs %8.3fs %7.2fx%s\n", w.name.c_str(), best[0], best[1],
                    best[0] / best[1], match ? "" : "  RESULTS DIFFER");
        std::fflush(stdout);
    }

    std::printf("\nresults identical across backends: %s\n", all_match ? "yes" : "NO");
    return all_match ? 0 : 1;
}
