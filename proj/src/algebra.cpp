#include "motco/algebra.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace motco::algebra {

FiniteAlgebra::FiniteAlgebra(std::vector<std::string> basis_names, std::vector<Rat> unit,
                             std::vector<std::vector<std::vector<Rat>>> table)
    : names_(std::move(basis_names)), unit_(std::move(unit)), table_(std::move(table)) {
    const size_t n = names_.size();
    if (n == 0) throw AlgebraError("algebra dimension must be at least 1");
    if (unit_.size() != n) throw AlgebraError("unit vector has wrong length");
    if (table_.size() != n) throw AlgebraError("product table has wrong shape");
    for (const auto& row : table_) {
        if (row.size() != n) throw AlgebraError("product table has wrong shape");
        for (const auto& entry : row)
            if (entry.size() != n) throw AlgebraError("product table entry has wrong length");
    }
}

FiniteAlgebra FiniteAlgebra::ground() { return truncated_polynomial(1); }

FiniteAlgebra FiniteAlgebra::truncated_polynomial(int n) {
    if (n < 1) throw AlgebraError("truncated polynomial algebra needs n >= 1");
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i)
        names.push_back(i == 0 ? "1" : i == 1 ? "X" : "X^" + std::to_string(i));
    std::vector<Rat> unit(n, 0);
    unit[0] = 1;
    std::vector table(n, std::vector(n, std::vector<Rat>(n, 0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j < n) table[i][j][i + j] = 1;
    return FiniteAlgebra(std::move(names), std::move(unit), std::move(table));
}

std::vector<Rat> FiniteAlgebra::multiply(const std::vector<Rat>& x,
                                         const std::vector<Rat>& y) const {
    const int n = dim();
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw AlgebraError("multiply: vector length does not match the algebra dimension");
    std::vector<Rat> out(n, 0);
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (y[j] == 0) continue;
            const Rat c = x[i] * y[j];
            const auto& prod = table_[i][j];
            for (int k = 0; k < n; ++k)
                if (prod[k] != 0) out[k] += c * prod[k];
        }
    }
    return out;
}

std::optional<std::string> validate(const FiniteAlgebra& a) {
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (a.table(i, j) != a.table(j, i))
                return "not commutative: " + a.basis_names()[i] + " * " + a.basis_names()[j] +
                       " != " + a.basis_names()[j] + " * " + a.basis_names()[i];

    auto basis_vector = [n](int i) {
        std::vector<Rat> v(n, 0);
        v[i] = 1;
        return v;
    };
    for (int i = 0; i < n; ++i)
        if (a.multiply(a.unit(), basis_vector(i)) != basis_vector(i))
            return "unit fails on basis element " + a.basis_names()[i];

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const auto left = a.multiply(a.multiply(basis_vector(i), basis_vector(j)),
                                             basis_vector(k));
                const auto right = a.multiply(basis_vector(i),
                                              a.multiply(basis_vector(j), basis_vector(k)));
                if (left != right)
                    return "not associative on (" + a.basis_names()[i] + ", " +
                           a.basis_names()[j] + ", " + a.basis_names()[k] + ")";
            }
    return std::nullopt;
}

namespace {

Rat parse_rational(const nlohmann::json& v, const std::string& where) {
    if (v.is_number_integer()) return Rat(v.get<long long>());
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        try {
            return Rat(s);
        } catch (const std::exception&) {
            throw AlgebraError(where + ": cannot parse rational '" + s + "'");
        }
    }
    throw AlgebraError(where + ": expected an integer or a \"p/q\" string");
}

std::vector<Rat> parse_vector(const nlohmann::json& v, size_t len, const std::string& where) {
    if (!v.is_array() || v.size() != len)
        throw AlgebraError(where + ": expected an array of length " + std::to_string(len));
    std::vector<Rat> out;
    out.reserve(len);
    for (const auto& entry : v) out.push_back(parse_rational(entry, where));
    return out;
}

}  // namespace

FiniteAlgebra load_algebra(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& err) {
        throw AlgebraError(std::string("algebra JSON: ") + err.what());
    }
    if (!doc.is_object() || !doc.contains("dim")) throw AlgebraError("algebra JSON: missing dim");
    const size_t dim = doc["dim"].get<size_t>();
    if (dim == 0) throw AlgebraError("algebra JSON: dim must be at least 1");

    std::vector<std::string> names;
    if (doc.contains("basis")) {
        for (const auto& name : doc["basis"]) names.push_back(name.get<std::string>());
        if (names.size() != dim) throw AlgebraError("algebra JSON: basis length != dim");
    } else {
        for (size_t i = 0; i < dim; ++i) names.push_back("b" + std::to_string(i));
    }

    if (!doc.contains("unit") || !doc.contains("table"))
        throw AlgebraError("algebra JSON: missing unit or table");
    const auto unit = parse_vector(doc["unit"], dim, "unit");

    const auto& table_json = doc["table"];
    if (!table_json.is_array() || table_json.size() != dim)
        throw AlgebraError("algebra JSON: table must be a dim x dim array");
    std::vector<std::vector<std::vector<Rat>>> table;
    for (size_t i = 0; i < dim; ++i) {
        const auto& row = table_json[i];
        if (!row.is_array() || row.size() != dim)
            throw AlgebraError("algebra JSON: table must be a dim x dim array");
        std::vector<std::vector<Rat>> out_row;
        for (size_t j = 0; j < dim; ++j)
            out_row.push_back(parse_vector(
                row[j], dim, "table[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
        table.push_back(std::move(out_row));
    }

    FiniteAlgebra a(std::move(names), std::move(unit), std::move(table));
    if (auto fail = validate(a)) throw AlgebraError("algebra JSON: " + *fail);
    return a;
}

FiniteAlgebra load_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw AlgebraError("cannot open algebra file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_algebra(buffer.str());
}

FiniteAlgebra parse_algebra_spec(const std::string& spec) {
    if (spec == "ground") return FiniteAlgebra::ground();
    if (spec.rfind("trunc:", 0) == 0) {
        int n = 0;
        try {
            n = std::stoi(spec.substr(6));
        } catch (const std::exception&) {
            throw AlgebraError("bad algebra spec '" + spec + "': trunc:<n> needs a number");
        }
        return FiniteAlgebra::truncated_polynomial(n);
    }
    if (spec.rfind("file:", 0) == 0) return load_algebra_file(spec.substr(5));
    throw AlgebraError("bad algebra spec '" + spec + "' (want ground, trunc:<n> or file:<path>)");
}

}  // namespace motco::algebra
