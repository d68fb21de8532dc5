#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Exact linear algebra over Q, F_p and Z: ranks, Smith normal form, and
// chain-complex homology with torsion. All results are exact; no floating
// point anywhere. Elimination kernels exist in a serial and an OpenMP
// flavour; both run the same pivot order, so results are identical and the
// serial path doubles as the reference for tests and benchmarks.

namespace motco::linalg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coefficient choice for rank/homology computations.
struct Coefficients {
    enum class Kind { rationals, prime_field, integers };
    Kind kind = Kind::rationals;
    long long p = 0;  // prime modulus when kind == prime_field

    static Coefficients rationals() { return {Kind::rationals, 0}; }
    static Coefficients prime_field(long long p) { return {Kind::prime_field, p}; }
    static Coefficients integers() { return {Kind::integers, 0}; }
};

enum class Backend { serial, parallel, auto_select };

struct Triplet {
    int row = 0;
    int col = 0;
    Rat value;
};

// Sparse matrix with exact rational entries, immutable after construction.
// Rows hold (column, value) pairs sorted by column; zero entries are dropped.
class ExactMatrix {
  public:
    ExactMatrix() = default;
    ExactMatrix(int rows, int cols);

    // Duplicate (row, col) triplets are accumulated.
    static ExactMatrix from_triplets(int rows, int cols, const std::vector<Triplet>& entries);
    static ExactMatrix from_dense(const std::vector<std::vector<long long>>& grid);
    static ExactMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long long nonzeros() const;
    const std::vector<std::pair<int, Rat>>& row(int r) const { return data_[r]; }
    Rat at(int r, int c) const;

    bool is_zero() const;
    bool integral() const;  // all entries have denominator 1

    ExactMatrix times(const ExactMatrix& rhs) const;
    ExactMatrix transposed() const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::vector<std::pair<int, Rat>>> data_;
};

// Exact rank. Coefficients: rationals (integers are treated the same) use
// fraction-free elimination on a dense grid below 64 columns and sparse
// rational elimination above; prime_field uses modular elimination and
// requires every entry to be p-integral.
long long rank(const ExactMatrix& m, const Coefficients& coeff,
               Backend backend = Backend::auto_select);

// Invariant factors d_1 | d_2 | ... | d_r of an integer matrix, r = rank.
// Smallest-magnitude pivoting with arbitrary-precision integers.
std::vector<Int> smith_normal_form(const ExactMatrix& m, Backend backend = Backend::auto_select);

// A chain complex in homological indexing: dims[i] = dim C_{min_degree + i},
// boundary[i] maps C_{min_degree + i + 1} -> C_{min_degree + i}.
struct ChainComplex {
    int min_degree = 0;
    std::vector<long long> dims;
    std::vector<ExactMatrix> boundary;
};

struct HomologySummary {
    std::map<int, long long> betti;              // every degree in the complex's range
    std::map<int, std::vector<Int>> torsion;     // degrees with invariant factors > 1 only

    bool operator==(const HomologySummary&) const = default;
};

// Betti numbers (and torsion, over the integers) of a chain complex.
// Checks that consecutive boundaries compose to zero and that matrix shapes
// match dims; betti_n = dim C_n - rank d_n - rank d_{n+1}, torsion in degree
// n = invariant factors > 1 of d_{n+1}.
HomologySummary chain_homology(const ChainComplex& complex, const Coefficients& coeff,
                               Backend backend = Backend::auto_select);

bool is_prime(long long p);

// Plain dense textbook implementations, kept as an independent reference for
// the production kernels. Single-threaded, no pivoting heuristics.
namespace reference {

long long rank_rationals(std::vector<std::vector<Rat>> grid);
long long rank_mod_p(std::vector<std::vector<long long>> grid, long long p);
std::vector<Int> smith(std::vector<std::vector<Int>> grid);

}  // namespace reference

}  // namespace motco::linalg
