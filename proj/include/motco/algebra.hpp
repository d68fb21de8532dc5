#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "motco/linalg.hpp"

// Finite-dimensional commutative unital algebras over the rationals, given
// by structure constants. Coefficient vectors are exact rationals.

namespace motco::algebra {

using linalg::Rat;

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class FiniteAlgebra {
  public:
    // table[i][j] = coordinates of basis_i * basis_j
    FiniteAlgebra(std::vector<std::string> basis_names, std::vector<Rat> unit,
                  std::vector<std::vector<std::vector<Rat>>> table);

    // the one-dimensional algebra: coefficients of the base field itself
    static FiniteAlgebra ground();
    // polynomials truncated above degree n - 1: basis 1, X, ..., X^{n-1} with
    // X^a X^b = X^{a+b} or zero
    static FiniteAlgebra truncated_polynomial(int n);

    int dim() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& basis_names() const { return names_; }
    const std::vector<Rat>& unit() const { return unit_; }
    const std::vector<Rat>& table(int i, int j) const { return table_.at(i).at(j); }

    std::vector<Rat> multiply(const std::vector<Rat>& x, const std::vector<Rat>& y) const;

  private:
    std::vector<std::string> names_;
    std::vector<Rat> unit_;
    std::vector<std::vector<std::vector<Rat>>> table_;
};

// Empty on success, otherwise the first violated axiom with witnesses
// (commutativity pair, associativity triple, or the unit failure).
std::optional<std::string> validate(const FiniteAlgebra& a);

// JSON object {dim, basis, unit, table}: unit a vector, table a dim x dim
// array of vectors, entries integers or "p/q" strings. The algebra is
// validated after loading.
FiniteAlgebra load_algebra(const std::string& json_text);
FiniteAlgebra load_algebra_file(const std::string& path);

// "ground", "trunc:<n>" or "file:<path>"
FiniteAlgebra parse_algebra_spec(const std::string& spec);

}  // namespace motco::algebra
