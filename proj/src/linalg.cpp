#include "motco/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace motco::linalg {

namespace {

bool run_parallel(Backend backend, long long work) {
#ifdef _OPENMP
    if (backend == Backend::parallel) return true;
    if (backend == Backend::serial) return false;
    return work >= 1 << 14;
#else
    (void)backend;
    (void)work;
    return false;
#endif
}

}  // namespace

ExactMatrix::ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("ExactMatrix: negative shape");
}

ExactMatrix ExactMatrix::from_triplets(int rows, int cols, const std::vector<Triplet>& entries) {
    ExactMatrix m(rows, cols);
    for (const Triplet& t : entries) {
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
            throw std::out_of_range("ExactMatrix::from_triplets: index out of range");
        m.data_[t.row].emplace_back(t.col, t.value);
    }
    for (auto& row : m.data_) {
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, Rat>> merged;
        for (auto& [c, v] : row) {
            if (!merged.empty() && merged.back().first == c)
                merged.back().second += v;
            else
                merged.emplace_back(c, v);
        }
        std::erase_if(merged, [](const auto& e) { return e.second == 0; });
        row = std::move(merged);
    }
    return m;
}

ExactMatrix ExactMatrix::from_dense(const std::vector<std::vector<long long>>& grid) {
    int rows = static_cast<int>(grid.size());
    int cols = rows ? static_cast<int>(grid[0].size()) : 0;
    std::vector<Triplet> ts;
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(grid[i].size()) != cols)
            throw std::invalid_argument("ExactMatrix::from_dense: ragged grid");
        for (int j = 0; j < cols; ++j)
            if (grid[i][j] != 0) ts.push_back({i, j, Rat(grid[i][j])});
    }
    return from_triplets(rows, cols, ts);
}

ExactMatrix ExactMatrix::identity(int n) {
    std::vector<Triplet> ts;
    ts.reserve(n);
    for (int i = 0; i < n; ++i) ts.push_back({i, i, Rat(1)});
    return from_triplets(n, n, ts);
}

long long ExactMatrix::nonzeros() const {
    long long n = 0;
    for (const auto& row : data_) n += static_cast<long long>(row.size());
    return n;
}

Rat ExactMatrix::at(int r, int c) const {
    const auto& row = data_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) return it->second;
    return Rat(0);
}

bool ExactMatrix::is_zero() const { return nonzeros() == 0; }

bool ExactMatrix::integral() const {
    for (const auto& row : data_)
        for (const auto& [c, v] : row)
            if (boost::multiprecision::denominator(v) != 1) return false;
    return true;
}

ExactMatrix ExactMatrix::times(const ExactMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("ExactMatrix::times: shape mismatch");
    std::vector<Triplet> ts;
    for (int i = 0; i < rows_; ++i) {
        std::map<int, Rat> acc;
        for (const auto& [k, v] : data_[i])
            for (const auto& [j, w] : rhs.data_[k]) acc[j] += v * w;
        for (auto& [j, v] : acc)
            if (v != 0) ts.push_back({i, j, v});
    }
    return from_triplets(rows_, rhs.cols_, ts);
}

ExactMatrix ExactMatrix::transposed() const {
    std::vector<Triplet> ts;
    for (int i = 0; i < rows_; ++i)
        for (const auto& [j, v] : data_[i]) ts.push_back({j, i, v});
    return from_triplets(cols_, rows_, ts);
}

bool is_prime(long long p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (long long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

namespace {

using SparseRow = std::vector<std::pair<int, Rat>>;

// row -= factor * pivot; sorted merge dropping zeros.
SparseRow axpy(const SparseRow& row, const Rat& factor, const SparseRow& pivot) {
    SparseRow out;
    out.reserve(row.size() + pivot.size());
    size_t a = 0, b = 0;
    while (a < row.size() || b < pivot.size()) {
        if (b == pivot.size() || (a < row.size() && row[a].first < pivot[b].first)) {
            out.push_back(row[a++]);
        } else if (a == row.size() || pivot[b].first < row[a].first) {
            out.emplace_back(pivot[b].first, -factor * pivot[b].second);
            ++b;
        } else {
            Rat v = row[a].second - factor * pivot[b].second;
            if (v != 0) out.emplace_back(row[a].first, std::move(v));
            ++a;
            ++b;
        }
    }
    return out;
}

const Rat* find_col(const SparseRow& row, int col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, int c) { return e.first < c; });
    if (it != row.end() && it->first == col) return &it->second;
    return nullptr;
}

long long rank_sparse_rationals(const ExactMatrix& m, Backend backend) {
    std::vector<SparseRow> rows(m.rows());
    for (int i = 0; i < m.rows(); ++i) rows[i] = m.row(i);
    std::vector<char> alive(rows.size(), 1);
    long long rank = 0;
    for (;;) {
        int pr = -1;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (!alive[i] || rows[i].empty()) continue;
            if (pr < 0 || rows[i].size() < rows[pr].size()) pr = static_cast<int>(i);
        }
        if (pr < 0) break;
        const int pc = rows[pr].front().first;
        const Rat pv = rows[pr].front().second;
        alive[pr] = 0;
        ++rank;
        std::vector<int> targets;
        for (size_t i = 0; i < rows.size(); ++i)
            if (alive[i] && find_col(rows[i], pc)) targets.push_back(static_cast<int>(i));
        const bool par = run_parallel(backend, static_cast<long long>(targets.size()) *
                                                   static_cast<long long>(rows[pr].size()));
        const SparseRow& pivot = rows[pr];
#pragma omp parallel for schedule(dynamic) if (par)
        for (long long t = 0; t < static_cast<long long>(targets.size()); ++t) {
            const int i = targets[t];
            const Rat factor = *find_col(rows[i], pc) / pv;
            rows[i] = axpy(rows[i], factor, pivot);
        }
    }
    return rank;
}

// Fraction-free (Bareiss) elimination after clearing denominators row-wise.
long long rank_dense_bareiss(const ExactMatrix& m, Backend backend) {
    const int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Int>> g(rows, std::vector<Int>(cols, 0));
    for (int i = 0; i < rows; ++i) {
        Int scale = 1;
        for (const auto& [c, v] : m.row(i))
            scale = boost::multiprecision::lcm(scale, Int(boost::multiprecision::denominator(v)));
        for (const auto& [c, v] : m.row(i))
            g[i][c] = Int(boost::multiprecision::numerator(v)) * (scale / Int(boost::multiprecision::denominator(v)));
    }
    Int prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (g[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(g[r], g[piv]);
        const bool par = run_parallel(backend, static_cast<long long>(rows - r) * (cols - c));
#pragma omp parallel for schedule(static) if (par)
        for (int i = r + 1; i < rows; ++i) {
            if (g[i][c] == 0) {
                for (int j = c + 1; j < cols; ++j) {
                    g[i][j] = g[r][c] * g[i][j] / prev;
                }
                continue;
            }
            for (int j = c + 1; j < cols; ++j)
                g[i][j] = (g[r][c] * g[i][j] - g[i][c] * g[r][j]) / prev;
            g[i][c] = 0;
        }
        prev = g[r][c];
        ++r;
    }
    return r;
}

long long mod_pow(long long base, long long exp, long long p) {
    long long out = 1 % p;
    base %= p;
    while (exp > 0) {
        if (exp & 1) out = out * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return out;
}

long long rank_sparse_mod_p(const ExactMatrix& m, long long p, Backend backend) {
    if (!is_prime(p)) throw std::invalid_argument("rank: modulus " + std::to_string(p) + " is not prime");
    if (p > (1LL << 31)) throw std::invalid_argument("rank: prime modulus too large");
    using ModRow = std::vector<std::pair<int, long long>>;
    std::vector<ModRow> rows(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        for (const auto& [c, v] : m.row(i)) {
            const Int num = Int(boost::multiprecision::numerator(v));
            const Int den = Int(boost::multiprecision::denominator(v));
            long long nm = static_cast<long long>(num % p);
            if (nm < 0) nm += p;
            long long dm = static_cast<long long>(den % p);
            if (dm < 0) dm += p;
            if (dm == 0)
                throw std::invalid_argument("rank: entry denominator divisible by the modulus");
            const long long val = nm * mod_pow(dm, p - 2, p) % p;
            if (val != 0) rows[i].emplace_back(c, val);
        }
    }
    std::vector<char> alive(rows.size(), 1);
    long long rank = 0;
    for (;;) {
        int pr = -1;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (!alive[i] || rows[i].empty()) continue;
            if (pr < 0 || rows[i].size() < rows[pr].size()) pr = static_cast<int>(i);
        }
        if (pr < 0) break;
        const int pc = rows[pr].front().first;
        const long long inv = mod_pow(rows[pr].front().second, p - 2, p);
        alive[pr] = 0;
        ++rank;
        std::vector<int> targets;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (!alive[i]) continue;
            auto it = std::lower_bound(rows[i].begin(), rows[i].end(), pc,
                                       [](const auto& e, int c) { return e.first < c; });
            if (it != rows[i].end() && it->first == pc) targets.push_back(static_cast<int>(i));
        }
        const bool par = run_parallel(backend, static_cast<long long>(targets.size()) *
                                                   static_cast<long long>(rows[pr].size()));
        const ModRow& pivot = rows[pr];
#pragma omp parallel for schedule(dynamic) if (par)
        for (long long t = 0; t < static_cast<long long>(targets.size()); ++t) {
            const int i = targets[t];
            auto it = std::lower_bound(rows[i].begin(), rows[i].end(), pc,
                                       [](const auto& e, int c) { return e.first < c; });
            const long long factor = it->second * inv % p;
            ModRow out;
            out.reserve(rows[i].size() + pivot.size());
            size_t a = 0, b = 0;
            while (a < rows[i].size() || b < pivot.size()) {
                if (b == pivot.size() || (a < rows[i].size() && rows[i][a].first < pivot[b].first)) {
                    out.push_back(rows[i][a++]);
                } else if (a == rows[i].size() || pivot[b].first < rows[i][a].first) {
                    const long long v = (p - factor * pivot[b].second % p) % p;
                    if (v != 0) out.emplace_back(pivot[b].first, v);
                    ++b;
                } else {
                    const long long v = ((rows[i][a].second - factor * pivot[b].second) % p + p) % p;
                    if (v != 0) out.emplace_back(rows[i][a].first, v);
                    ++a;
                    ++b;
                }
            }
            rows[i] = std::move(out);
        }
    }
    return rank;
}

}  // namespace

long long rank(const ExactMatrix& m, const Coefficients& coeff, Backend backend) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    switch (coeff.kind) {
        case Coefficients::Kind::prime_field:
            return rank_sparse_mod_p(m, coeff.p, backend);
        case Coefficients::Kind::rationals:
        case Coefficients::Kind::integers:
            if (m.cols() < 64) return rank_dense_bareiss(m, backend);
            return rank_sparse_rationals(m, backend);
    }
    throw std::logic_error("rank: unknown coefficient kind");
}

namespace {

// abs value of a cpp_int without copying sign handling everywhere.
Int int_abs(const Int& v) { return v < 0 ? Int(-v) : v; }

// Normalize a diagonal multiset into a divisibility chain (SNF of a diagonal
// matrix is obtained by repeated gcd/lcm exchanges).
std::vector<Int> divisibility_chain(std::vector<Int> diag) {
    for (Int& d : diag) d = int_abs(d);
    std::sort(diag.begin(), diag.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < diag.size(); ++i)
            for (size_t j = i + 1; j < diag.size(); ++j) {
                if (diag[j] % diag[i] == 0) continue;
                const Int g = boost::multiprecision::gcd(diag[i], diag[j]);
                const Int l = diag[i] / g * diag[j];
                diag[i] = g;
                diag[j] = l;
                changed = true;
            }
        std::sort(diag.begin(), diag.end());
    }
    return diag;
}

std::vector<Int> smith_dense(std::vector<std::vector<Int>> g, Backend backend) {
    const int rows = static_cast<int>(g.size());
    const int cols = rows ? static_cast<int>(g[0].size()) : 0;
    int r = 0;
    while (r < rows && r < cols) {
        // smallest-magnitude pivot in the active submatrix
        int pi = -1, pj = -1;
        for (int i = r; i < rows; ++i)
            for (int j = r; j < cols; ++j) {
                if (g[i][j] == 0) continue;
                if (pi < 0 || int_abs(g[i][j]) < int_abs(g[pi][pj])) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        std::swap(g[r], g[pi]);
        for (int i = r; i < rows; ++i) std::swap(g[i][r], g[i][pj]);
        for (;;) {
            // reduce column r; a nonzero remainder is a smaller pivot, retry with it
            const bool par = run_parallel(backend, static_cast<long long>(rows - r) * (cols - r));
#pragma omp parallel for schedule(static) if (par)
            for (int i = r + 1; i < rows; ++i) {
                if (g[i][r] == 0) continue;
                const Int q = g[i][r] / g[r][r];
                if (q != 0)
                    for (int j = r; j < cols; ++j) g[i][j] -= q * g[r][j];
            }
            int best_row = -1;
            for (int i = r + 1; i < rows; ++i)
                if (g[i][r] != 0 && (best_row < 0 || int_abs(g[i][r]) < int_abs(g[best_row][r])))
                    best_row = i;
            if (best_row >= 0) {
                std::swap(g[r], g[best_row]);
                continue;
            }
            // column is clear; reduce row r with column operations
#pragma omp parallel for schedule(static) if (par)
            for (int j = r + 1; j < cols; ++j) {
                if (g[r][j] == 0) continue;
                const Int q = g[r][j] / g[r][r];
                if (q != 0)
                    for (int i = r; i < rows; ++i) g[i][j] -= q * g[i][r];
            }
            int best_col = -1;
            for (int j = r + 1; j < cols; ++j)
                if (g[r][j] != 0 && (best_col < 0 || int_abs(g[r][j]) < int_abs(g[r][best_col])))
                    best_col = j;
            if (best_col >= 0) {
                for (int i = r; i < rows; ++i) std::swap(g[i][r], g[i][best_col]);
                continue;
            }
            break;
        }
        ++r;
    }
    std::vector<Int> diag;
    diag.reserve(r);
    for (int i = 0; i < r; ++i) diag.push_back(g[i][i]);
    return divisibility_chain(std::move(diag));
}

}  // namespace

std::vector<Int> smith_normal_form(const ExactMatrix& m, Backend backend) {
    if (!m.integral())
        throw std::invalid_argument("smith_normal_form: matrix entries must be integers");
    const long long cells = static_cast<long long>(m.rows()) * m.cols();
    if (cells > 4'000'000)
        throw GuardError("smith_normal_form: dense size guard exceeded (limit 4000000 cells, got " +
                         std::to_string(cells) + ")");
    std::vector<std::vector<Int>> g(m.rows(), std::vector<Int>(m.cols(), 0));
    for (int i = 0; i < m.rows(); ++i)
        for (const auto& [c, v] : m.row(i)) g[i][c] = Int(boost::multiprecision::numerator(v));
    return smith_dense(std::move(g), backend);
}

HomologySummary chain_homology(const ChainComplex& complex, const Coefficients& coeff,
                               Backend backend) {
    const auto& dims = complex.dims;
    const auto& bnd = complex.boundary;
    if (dims.empty()) return {};
    if (bnd.size() + 1 != dims.size())
        throw std::invalid_argument("chain_homology: expected one boundary per consecutive degree pair");
    for (size_t i = 0; i < bnd.size(); ++i) {
        if (bnd[i].rows() != dims[i] || bnd[i].cols() != dims[i + 1])
            throw std::invalid_argument("chain_homology: boundary shape mismatch at degree " +
                                        std::to_string(complex.min_degree + static_cast<int>(i) + 1));
    }
    for (size_t i = 0; i + 1 < bnd.size(); ++i) {
        if (!bnd[i].times(bnd[i + 1]).is_zero())
            throw std::logic_error("chain_homology: boundaries do not compose to zero at degree " +
                                   std::to_string(complex.min_degree + static_cast<int>(i) + 1));
    }

    std::vector<long long> ranks(bnd.size(), 0);
    std::vector<std::vector<Int>> factors(bnd.size());
    for (size_t i = 0; i < bnd.size(); ++i) {
        if (coeff.kind == Coefficients::Kind::integers) {
            if (!bnd[i].integral())
                throw std::invalid_argument("chain_homology: integer coefficients need integral boundaries");
            factors[i] = smith_normal_form(bnd[i], backend);
            ranks[i] = static_cast<long long>(factors[i].size());
        } else {
            ranks[i] = rank(bnd[i], coeff, backend);
        }
    }

    HomologySummary out;
    for (size_t i = 0; i < dims.size(); ++i) {
        const int degree = complex.min_degree + static_cast<int>(i);
        const long long rank_out = i >= 1 ? ranks[i - 1] : 0;      // d: C_i -> C_{i-1}
        const long long rank_in = i < bnd.size() ? ranks[i] : 0;   // d: C_{i+1} -> C_i
        out.betti[degree] = dims[i] - rank_out - rank_in;
        if (coeff.kind == Coefficients::Kind::integers && i < bnd.size()) {
            std::vector<Int> tors;
            for (const Int& f : factors[i])
                if (f > 1) tors.push_back(f);
            if (!tors.empty()) out.torsion[degree] = std::move(tors);
        }
    }
    return out;
}

namespace reference {

long long rank_rationals(std::vector<std::vector<Rat>> grid) {
    const int rows = static_cast<int>(grid.size());
    const int cols = rows ? static_cast<int>(grid[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (grid[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(grid[r], grid[piv]);
        for (int i = r + 1; i < rows; ++i) {
            if (grid[i][c] == 0) continue;
            const Rat f = grid[i][c] / grid[r][c];
            for (int j = c; j < cols; ++j) grid[i][j] -= f * grid[r][j];
        }
        ++r;
    }
    return r;
}

long long rank_mod_p(std::vector<std::vector<long long>> grid, long long p) {
    const int rows = static_cast<int>(grid.size());
    const int cols = rows ? static_cast<int>(grid[0].size()) : 0;
    for (auto& row : grid)
        for (auto& v : row) v = (v % p + p) % p;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (grid[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(grid[r], grid[piv]);
        const long long inv = mod_pow(grid[r][c], p - 2, p);
        for (int i = r + 1; i < rows; ++i) {
            if (grid[i][c] == 0) continue;
            const long long f = grid[i][c] * inv % p;
            for (int j = c; j < cols; ++j) grid[i][j] = ((grid[i][j] - f * grid[r][j]) % p + p) % p;
        }
        ++r;
    }
    return r;
}

std::vector<Int> smith(std::vector<std::vector<Int>> grid) {
    const int rows = static_cast<int>(grid.size());
    const int cols = rows ? static_cast<int>(grid[0].size()) : 0;
    int r = 0;
    while (r < rows && r < cols) {
        int pi = -1, pj = -1;
        for (int i = r; i < rows; ++i)
            for (int j = r; j < cols; ++j)
                if (grid[i][j] != 0 &&
                    (pi < 0 || int_abs(grid[i][j]) < int_abs(grid[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        std::swap(grid[r], grid[pi]);
        for (int i = r; i < rows; ++i) std::swap(grid[i][r], grid[i][pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = r + 1; i < rows; ++i)
                if (grid[i][r] != 0) {
                    const Int q = grid[i][r] / grid[r][r];
                    for (int j = r; j < cols; ++j) grid[i][j] -= q * grid[r][j];
                    if (grid[i][r] != 0) {
                        std::swap(grid[r], grid[i]);
                        clean = false;
                    }
                }
            for (int j = r + 1; j < cols; ++j)
                if (grid[r][j] != 0) {
                    const Int q = grid[r][j] / grid[r][r];
                    for (int i = r; i < rows; ++i) grid[i][j] -= q * grid[i][r];
                    if (grid[r][j] != 0) {
                        for (int i = r; i < rows; ++i) std::swap(grid[i][r], grid[i][j]);
                        clean = false;
                    }
                }
        }
        ++r;
    }
    std::vector<Int> diag;
    for (int i = 0; i < r; ++i) diag.push_back(grid[i][i]);
    return divisibility_chain(std::move(diag));
}

}  // namespace reference

}  // namespace motco::linalg
