#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hopfalg/bialgebroid.hpp"
#include "hopfalg/report.hpp"

namespace hopfalg::io {

using nlohmann::json;

inline constexpr const char* kReportSchema = "hopfalg.report/1";

// Optional bialgebra-over-k data attached to an algebra file.
struct HopfBlock {
    std::vector<SVec> coproduct;  // ambient H (x) H
    LinMap counit;                // H -> k
};

// A Moyal recipe: two derivations of B given on basis vectors.
struct MoyalRecipe {
    LinMap u, v;
    Scalar theta = Scalar(1);
    std::vector<std::string> commutator;  // basis names whose twisted commutator is printed
};

struct AlgebraFile {
    std::string path;
    AlgebraSpec spec;
    std::optional<HopfBlock> hopf;
    std::string host;  // "jet", "pair" or "" (caller decides)
    std::optional<MoyalRecipe> recipe;
};

struct CocycleFile {
    std::string path;
    std::string host_ref;
    std::string kind;  // "trivial", "dense" or "dualized"
    std::vector<SVec> table;  // dense kind: Gamma(e_i, e_j) at i*n + j
    std::optional<MoyalRecipe> recipe;  // dualized kind
};

// Field override: 0 keeps the file's field, otherwise the prime.
struct FieldChoice {
    bool override = false;
    std::uint32_t p = 0;
};
// "Q" or "Fp:<p>". Errors: ParseError.
FieldChoice parse_field(const std::string& text);

// Rationals as [num, den] integer pairs or "n/d" strings; big numbers as decimal strings.
Scalar parse_scalar(const json& j, std::uint32_t p);
json scalar_to_json(const Scalar& s);

// Errors: ParseError (malformed JSON or missing fields), BadInput (indices out of range).
AlgebraFile parse_algebra(const json& j, FieldChoice field = {});
AlgebraFile load_algebra(const std::string& path, FieldChoice field = {});
// Dense entries [X, Y, k, num, den] index the host's L and B; derivations use B's basis.
CocycleFile parse_cocycle(const json& j, const FiniteAlgebra& b, std::size_t host_dim);
CocycleFile load_cocycle(const std::string& path, const FiniteAlgebra& b, std::size_t host_dim);

json algebra_to_json(const FiniteAlgebra& a);

// Machine-readable command report.
struct CommandReport {
    std::string command;
    std::vector<std::string> fixtures;
    Report report;
    json dimensions = json::array();
    json values = json::object();
    std::optional<double> seconds;  // omitted unless requested, so output stays deterministic
    int exit_code = 0;
};
json report_to_json(const CommandReport& r);
// Errors: ParseError (wrong schema).
CommandReport report_from_json(const json& j);
std::string report_to_text(const CommandReport& r);

}  // namespace hopfalg::io
