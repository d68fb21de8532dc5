#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

// Command-line surface: graph loading, complex and cohomology reports,
// oriented homology, and the read-only verification suites. Reports go to
// caller-supplied streams so the whole surface is testable in-process.

namespace motco::cli {

// 0 success, 1 a verification suite found a mismatch, 2 input or usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

// One parsed invocation. `command` selects the branch; the selectors it does
// not use keep their defaults and are ignored.
struct RunConfig {
    std::string command;       // info | free-flow | source-resolution | complex
                               // | cohomology | oriented-homology | verify
    std::string input_path;
    std::string kind;          // complex: graph-matching | matching |
                               // oriented-matching | multipath
    std::string property;      // cohomology: multipath | oriented-matching | spanning
    std::string algebra = "trunc:2";  // ground | trunc:<n> | file:<path>
    std::string over = "q";           // q | z | fp:<p>
    std::string homology;             // complex: coefficient selector, off when empty
    std::string suite;                // verify: signs | dsq | iso-sr | decomposition
                                      // | match-multipath | wedge | oh-oracle
    std::string output_path;          // source-resolution: write here instead of stdout
    std::vector<int> flips;           // oriented-homology / verify: reversed edges
    int max_cycles = -1;              // complex: pseudoforest filtration level
    bool predict = false;             // complex: wedge prediction from indegrees
    bool variant_zero = false;        // cohomology: zero action on merge-free covers
    bool json = false;
    std::uint64_t seed = 424242;      // randomized suites print the seed they used
};

// Dispatches a parsed config. The report is written to `out`, errors to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv-style arguments (program name excluded) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace motco::cli
