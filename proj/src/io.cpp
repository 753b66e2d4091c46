#include "hopfalg/io.hpp"

#include <fstream>
#include <sstream>

#include "hopfalg/errors.hpp"

namespace hopfalg::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error("ParseError", what); }

const json& field_of(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
    return j.at(key);
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("ParseError", "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        parse_error(path + ": " + e.what());
    }
}

// A basis reference: an index or a basis name.
Index basis_ref(const json& j, const std::vector<std::string>& names, std::size_t dim, const char* what) {
    if (j.is_number_integer()) {
        long long v = j.get<long long>();
        if (v < 0 || static_cast<std::size_t>(v) >= dim)
            throw Error("BadInput", std::string(what) + " index " + std::to_string(v) + " out of range");
        return static_cast<Index>(v);
    }
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == s) return static_cast<Index>(i);
        throw Error("BadInput", std::string("unknown ") + what + " basis name '" + s + "'");
    }
    parse_error(std::string("bad ") + what + " reference " + j.dump());
}

Scalar int_or_string(const json& j, std::uint32_t p) {
    if (j.is_number_integer()) return Scalar(j.get<long long>()).in_field(p);
    if (j.is_string()) return Scalar::parse(j.get<std::string>(), p);
    parse_error("bad number " + j.dump());
}

// [.., num, den] tail of a sparse entry.
Scalar entry_coef(const json& e, std::size_t at, std::uint32_t p) {
    if (e.size() == at + 1) return parse_scalar(e[at], p);
    if (e.size() != at + 2) parse_error("entry has wrong length: " + e.dump());
    Scalar den = int_or_string(e[at + 1], p);
    if (den.is_zero()) throw Error("DivisionByZero", "zero denominator in " + e.dump());
    return int_or_string(e[at], p) / den;
}

const json& entries(const json& j, const char* key) {
    const json& a = field_of(j, key);
    if (!a.is_array()) parse_error(std::string("'") + key + "' must be an array");
    return a;
}

LinMap parse_map(const json& j, const std::vector<std::string>& names, std::size_t dim, std::uint32_t p) {
    std::vector<std::vector<Term>> cols(dim);
    if (!j.is_array()) parse_error("derivation must be an array of [src, dst, num, den] entries");
    for (const auto& e : j) {
        if (!e.is_array() || e.size() < 3) parse_error("bad derivation entry " + e.dump());
        Index s = basis_ref(e[0], names, dim, "derivation");
        Index d = basis_ref(e[1], names, dim, "derivation");
        cols[s].push_back({d, entry_coef(e, 2, p)});
    }
    LinMap m(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) m.col[c] = SVec::from_terms(std::move(cols[c]));
    return m;
}

MoyalRecipe parse_recipe(const json& j, const std::vector<std::string>& names, std::size_t dim, std::uint32_t p) {
    MoyalRecipe r;
    r.u = parse_map(field_of(j, "u"), names, dim, p);
    r.v = parse_map(field_of(j, "v"), names, dim, p);
    r.theta = j.contains("theta") ? parse_scalar(j["theta"], p) : Scalar(1).in_field(p);
    if (j.contains("commutator"))
        for (const auto& n : j["commutator"]) r.commutator.push_back(n.get<std::string>());
    return r;
}

std::uint32_t file_field(const json& j) {
    if (!j.contains("field")) return 0;
    const json& f = j["field"];
    if (f.is_string()) {
        if (f.get<std::string>() == "Q") return 0;
        return parse_field(f.get<std::string>()).p;
    }
    if (f.is_object() && f.contains("Fp")) return f["Fp"].get<std::uint32_t>();
    parse_error("bad field " + f.dump());
}

}  // namespace

FieldChoice parse_field(const std::string& text) {
    if (text == "Q") return {true, 0};
    if (text.rfind("Fp:", 0) == 0) {
        try {
            long long p = std::stoll(text.substr(3));
            if (p < 2 || p > 1000003) parse_error("prime out of range in '" + text + "'");
            for (long long d = 2; d * d <= p; ++d)
                if (p % d == 0) parse_error("not a prime: " + text.substr(3));
            return {true, static_cast<std::uint32_t>(p)};
        } catch (const std::logic_error&) {
            parse_error("bad field '" + text + "'");
        }
    }
    parse_error("field must be Q or Fp:<p>, got '" + text + "'");
}

Scalar parse_scalar(const json& j, std::uint32_t p) {
    if (j.is_array()) {
        if (j.size() != 2) parse_error("rational must be [num, den]: " + j.dump());
        Scalar den = int_or_string(j[1], p);
        if (den.is_zero()) throw Error("DivisionByZero", "zero denominator in " + j.dump());
        return int_or_string(j[0], p) / den;
    }
    return int_or_string(j, p);
}

json scalar_to_json(const Scalar& s) {
    auto as_json = [](const std::string& d) -> json {
        if (d.size() < 18) return std::stoll(d);
        return d;
    };
    return json::array({as_json(s.num_str()), as_json(s.den_str())});
}

AlgebraFile parse_algebra(const json& j, FieldChoice field) {
    AlgebraFile f;
    try {
        AlgebraSpec& s = f.spec;
        s.name = j.value("name", std::string("B"));
        s.field = field.override ? field.p : file_field(j);
        const std::uint32_t p = s.field;
        s.dim = field_of(j, "dim").get<std::size_t>();
        for (const auto& n : entries(j, "basis")) s.basis.push_back(n.get<std::string>());
        if (s.basis.size() != s.dim) throw Error("BadInput", "basis names do not match dimension");
        for (const auto& c : entries(j, "unit")) s.unit.push_back(parse_scalar(c, p));
        for (const auto& e : entries(j, "mul")) {
            if (!e.is_array() || e.size() < 4) parse_error("mul entry must be [i, j, k, num, den]: " + e.dump());
            AlgebraSpec::Entry en{basis_ref(e[0], s.basis, s.dim, "mul"), basis_ref(e[1], s.basis, s.dim, "mul"),
                                  basis_ref(e[2], s.basis, s.dim, "mul"), entry_coef(e, 3, p)};
            s.mul.push_back(en);
        }
        s.declared_commutative = j.value("commutative", false);
        f.host = j.value("host", std::string());
        if (j.contains("hopf")) {
            const json& h = j["hopf"];
            HopfBlock hb;
            std::vector<std::vector<Term>> cop(s.dim);
            for (const auto& e : entries(h, "coproduct")) {
                if (!e.is_array() || e.size() < 4) parse_error("coproduct entry must be [i, j, k, num, den]");
                Index i = basis_ref(e[0], s.basis, s.dim, "coproduct");
                Index a = basis_ref(e[1], s.basis, s.dim, "coproduct");
                Index b = basis_ref(e[2], s.basis, s.dim, "coproduct");
                cop[i].push_back({tidx(a, b, s.dim), entry_coef(e, 3, p)});
            }
            for (auto& t : cop) hb.coproduct.push_back(SVec::from_terms(std::move(t)));
            hb.counit = LinMap(s.dim, 1);
            for (const auto& e : entries(h, "counit")) {
                if (!e.is_array() || e.size() < 2) parse_error("counit entry must be [i, num, den]");
                Index i = basis_ref(e[0], s.basis, s.dim, "counit");
                hb.counit.col[i] = hb.counit.col[i] + SVec::from_terms({{0, entry_coef(e, 1, p)}});
            }
            f.hopf = std::move(hb);
        }
        if (j.contains("recipe")) f.recipe = parse_recipe(j["recipe"], s.basis, s.dim, p);
    } catch (const json::exception& e) {
        parse_error(e.what());
    }
    return f;
}

AlgebraFile load_algebra(const std::string& path, FieldChoice field) {
    AlgebraFile f = parse_algebra(read_json(path), field);
    f.path = path;
    return f;
}

CocycleFile parse_cocycle(const json& j, const FiniteAlgebra& b, std::size_t host_dim) {
    CocycleFile c;
    try {
        c.host_ref = j.value("host", std::string());
        c.kind = field_of(j, "kind").get<std::string>();
        const std::uint32_t p = b.field;
        if (c.kind == "dense") {
            std::vector<std::vector<Term>> cells(host_dim * host_dim);
            const std::vector<std::string> none;
            for (const auto& e : entries(j, "table")) {
                if (!e.is_array() || e.size() < 4) parse_error("table entry must be [X, Y, k, num, den]: " + e.dump());
                Index x = basis_ref(e[0], none, host_dim, "table");
                Index y = basis_ref(e[1], none, host_dim, "table");
                Index k = basis_ref(e[2], b.basis, b.dim, "table");
                cells[static_cast<std::size_t>(x) * host_dim + y].push_back({k, entry_coef(e, 3, p)});
            }
            for (auto& t : cells) c.table.push_back(SVec::from_terms(std::move(t)));
        } else if (c.kind == "dualized") {
            c.recipe = parse_recipe(field_of(j, "F"), b.basis, b.dim, p);
        } else if (c.kind != "trivial") {
            parse_error("unknown cocycle kind '" + c.kind + "'");
        }
    } catch (const json::exception& e) {
        parse_error(e.what());
    }
    return c;
}

CocycleFile load_cocycle(const std::string& path, const FiniteAlgebra& b, std::size_t host_dim) {
    CocycleFile c = parse_cocycle(read_json(path), b, host_dim);
    c.path = path;
    return c;
}

json algebra_to_json(const FiniteAlgebra& a) {
    json j;
    j["name"] = a.name;
    j["field"] = a.field ? json{{"Fp", a.field}} : json("Q");
    j["dim"] = a.dim;
    j["basis"] = a.basis;
    json unit = json::array();
    for (const auto& c : a.unit.dense(a.dim)) unit.push_back(scalar_to_json(c));
    j["unit"] = unit;
    json mul = json::array();
    for (Index x = 0; x < a.dim; ++x)
        for (Index y = 0; y < a.dim; ++y)
            for (const auto& [k, c] : a.prod(x, y).t) {
                json q = scalar_to_json(c);
                mul.push_back({x, y, k, q[0], q[1]});
            }
    j["mul"] = mul;
    j["commutative"] = a.commutative;
    return j;
}

json report_to_json(const CommandReport& r) {
    json j;
    j["schema"] = kReportSchema;
    j["command"] = r.command;
    j["fixtures"] = r.fixtures;
    json checks = json::array();
    for (const auto& c : r.report.checks) {
        json cj{{"name", c.name}, {"status", c.pass ? "pass" : "fail"}};
        if (!c.witness.empty()) cj["witness"] = c.witness;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    j["status"] = r.exit_code == 0 ? "pass" : "fail";
    j["exit_code"] = r.exit_code;
    j["dimensions"] = r.dimensions;
    j["values"] = r.values;
    if (r.seconds) j["timing"] = {{"seconds", *r.seconds}};
    return j;
}

CommandReport report_from_json(const json& j) {
    if (!j.is_object() || j.value("schema", std::string()) != kReportSchema)
        parse_error(std::string("expected schema ") + kReportSchema);
    CommandReport r;
    try {
        r.command = j.at("command").get<std::string>();
        r.fixtures = j.at("fixtures").get<std::vector<std::string>>();
        for (const auto& c : j.at("checks"))
            r.report.add(c.at("name").get<std::string>(), c.at("status").get<std::string>() == "pass",
                         c.value("witness", std::string()), c.value("detail", std::string()));
        r.exit_code = j.at("exit_code").get<int>();
        r.dimensions = j.at("dimensions");
        r.values = j.at("values");
        if (j.contains("timing")) r.seconds = j["timing"].at("seconds").get<double>();
    } catch (const json::exception& e) {
        parse_error(e.what());
    }
    return r;
}

std::string report_to_text(const CommandReport& r) {
    std::ostringstream o;
    o << r.command;
    for (const auto& f : r.fixtures) o << ' ' << f;
    o << '\n';
    std::size_t passed = 0;
    for (const auto& c : r.report.checks) {
        passed += c.pass;
        o << (c.pass ? "  PASS  " : "  FAIL  ") << c.name;
        if (!c.detail.empty()) o << "  (" << c.detail << ")";
        if (!c.witness.empty()) o << "\n        witness: " << c.witness;
        o << '\n';
    }
    if (!r.dimensions.empty()) {
        o << "dimensions:\n";
        for (const auto& row : r.dimensions) o << "  " << row.dump() << '\n';
    }
    for (const auto& [k, v] : r.values.items()) o << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    if (r.seconds) o << "time: " << *r.seconds << " s\n";
    o << passed << '/' << r.report.checks.size() << " checks passed, exit " << r.exit_code << '\n';
    return o.str();
}

}  // namespace hopfalg::io
