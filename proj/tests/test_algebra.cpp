#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "motco/algebra.hpp"

using namespace motco::algebra;
using motco::linalg::Rat;

namespace {

std::vector<Rat> basis_vec(int n, int i) {
    std::vector<Rat> v(n, 0);
    v[i] = 1;
    return v;
}

}  // namespace

TEST_CASE("builtin algebras multiply as expected") {
    const auto ground = FiniteAlgebra::ground();
    CHECK(ground.dim() == 1);
    CHECK(ground.multiply({Rat(1)}, {Rat(1)}) == std::vector<Rat>{Rat(1)});

    const auto t2 = FiniteAlgebra::truncated_polynomial(2);
    CHECK(t2.multiply(basis_vec(2, 1), basis_vec(2, 1)) == std::vector<Rat>(2, 0));
    // (1 + X)(1 + X) = 1 + 2X
    const std::vector<Rat> one_plus_x{1, 1};
    CHECK(t2.multiply(one_plus_x, one_plus_x) == std::vector<Rat>{1, 2});

    const auto t3 = FiniteAlgebra::truncated_polynomial(3);
    CHECK(t3.multiply(basis_vec(3, 1), basis_vec(3, 1)) == basis_vec(3, 2));

    const auto t4 = FiniteAlgebra::truncated_polynomial(4);
    CHECK(t4.multiply(basis_vec(4, 1), basis_vec(4, 3)) == std::vector<Rat>(4, 0));

    CHECK_THROWS_AS(FiniteAlgebra::truncated_polynomial(0), AlgebraError);
    CHECK_THROWS_AS(t4.multiply(basis_vec(3, 0), basis_vec(4, 0)), AlgebraError);
}

TEST_CASE("validate accepts the builtins and pinpoints broken axioms") {
    for (int n = 1; n <= 6; ++n)
        CHECK_FALSE(validate(FiniteAlgebra::truncated_polynomial(n)).has_value());

    // table(0,1) != table(1,0)
    const FiniteAlgebra noncomm(
        {"1", "b"}, {Rat(1), Rat(0)},
        {{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {{Rat(1), Rat(0)}, {Rat(1), Rat(0)}}});
    const auto comm_fail = validate(noncomm);
    REQUIRE(comm_fail.has_value());
    CHECK(comm_fail->find("not commutative") != std::string::npos);

    // a*a = b, b*b = a, a*b = 0: (a a) b = a but a (a b) = 0
    std::vector zero3(3, Rat(0));
    std::vector<std::vector<std::vector<Rat>>> table(3, std::vector(3, zero3));
    for (int i = 0; i < 3; ++i) table[0][i][i] = table[i][0][i] = 1;
    table[1][1] = {Rat(0), Rat(0), Rat(1)};
    table[2][2] = {Rat(0), Rat(1), Rat(0)};
    const FiniteAlgebra nonassoc({"1", "a", "b"}, {Rat(1), Rat(0), Rat(0)}, table);
    const auto assoc_fail = validate(nonassoc);
    REQUIRE(assoc_fail.has_value());
    CHECK(assoc_fail->find("not associative on (a, a, b)") != std::string::npos);

    // unit vector that is not the identity
    const FiniteAlgebra bad_unit(
        {"1", "X"}, {Rat(0), Rat(1)},
        {{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {{Rat(0), Rat(1)}, {Rat(0), Rat(0)}}});
    const auto unit_fail = validate(bad_unit);
    REQUIRE(unit_fail.has_value());
    CHECK(unit_fail->find("unit fails") != std::string::npos);
}

TEST_CASE("multiply is bilinear, commutative and associative on random vectors") {
    std::mt19937_64 rng(20240817);
    for (const auto& a : {FiniteAlgebra::truncated_polynomial(3),
                          FiniteAlgebra::truncated_polynomial(5)}) {
        auto rand_vec = [&] {
            std::vector<Rat> v(a.dim());
            for (auto& c : v) c = Rat(static_cast<long long>(rng() % 7) - 3);
            return v;
        };
        for (int trial = 0; trial < 20; ++trial) {
            const auto x = rand_vec(), y = rand_vec(), z = rand_vec();
            CHECK(a.multiply(x, y) == a.multiply(y, x));
            CHECK(a.multiply(a.multiply(x, y), z) == a.multiply(x, a.multiply(y, z)));
            CHECK(a.multiply(a.unit(), x) == x);
        }
    }
}

TEST_CASE("algebra JSON loads integers and p/q strings") {
    const auto a = load_algebra(R"({
        "dim": 2,
        "basis": ["1", "b"],
        "unit": [1, 0],
        "table": [[[1, 0], [0, 1]], [[0, 1], [0, "1/2"]]]
    })");
    CHECK(a.dim() == 2);
    CHECK(a.multiply(basis_vec(2, 1), basis_vec(2, 1)) == std::vector<Rat>{0, Rat(1) / 2});
    CHECK_FALSE(validate(a).has_value());

    CHECK_THROWS_AS(load_algebra("{"), AlgebraError);
    CHECK_THROWS_AS(load_algebra(R"({"dim": 0, "unit": [], "table": []})"), AlgebraError);
    CHECK_THROWS_AS(load_algebra(R"({"dim": 1, "unit": [1], "table": [[["x"]]]})"), AlgebraError);
    // loading validates: the broken-unit algebra is rejected
    CHECK_THROWS_AS(load_algebra(R"({
        "dim": 1, "unit": [0], "table": [[[1]]]
    })"),
                    AlgebraError);
}

TEST_CASE("algebra spec strings") {
    CHECK(parse_algebra_spec("ground").dim() == 1);
    CHECK(parse_algebra_spec("trunc:4").dim() == 4);
    CHECK_THROWS_AS(parse_algebra_spec("trunc:zero"), AlgebraError);
    CHECK_THROWS_AS(parse_algebra_spec("mystery"), AlgebraError);
    CHECK_THROWS_AS(parse_algebra_spec("file:/nonexistent/algebra.json"), AlgebraError);
}
