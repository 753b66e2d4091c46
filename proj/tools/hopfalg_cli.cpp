// Command-line front end: verify, jet, cotwist, quantize.
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad input.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "hopfalg/cotwist.hpp"
#include "hopfalg/duality.hpp"
#include "hopfalg/errors.hpp"
#include "hopfalg/io.hpp"
#include "hopfalg/jets.hpp"

using namespace hopfalg;
using io::json;

namespace {

struct Options {
    bool json_out = false;
    bool timing = false;
    std::string field;
    std::string algebra, cocycle, recipe;
    bool pair = false;
    std::size_t max_k = 16;
    std::string theta;
    std::string checks = "all";
};

// Thrown for problems with the inputs themselves (exit 2).
struct InputError {
    Error err;
};

io::FieldChoice field_choice(const Options& o) { return o.field.empty() ? io::FieldChoice{} : io::parse_field(o.field); }

std::string base_name(const std::string& p) { return std::filesystem::path(p).filename().string(); }

template <class F>
auto load(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        throw InputError{e};
    }
}

FiniteAlgebra load_base(const io::AlgebraFile& f) {
    return load([&] { return make_algebra(f.spec); });
}

void fail_with(io::CommandReport& r, const std::string& name, const Error& e) {
    r.report.add(name, false, e.witness().empty() ? e.what() : e.witness(), e.kind());
    r.values["error"] = e.kind();
}

// Runs `body`, recording a library failure as a failing check with its kind.
template <class F>
bool guarded(io::CommandReport& r, const std::string& name, F&& body) {
    try {
        body();
        return true;
    } catch (const Error& e) {
        fail_with(r, name, e);
        return false;
    }
}

void add_summary(io::CommandReport& r, const std::string& name, const Report& rep) {
    const Check* bad = rep.first_failure();
    r.report.add(name, bad == nullptr, bad ? bad->name + ": " + bad->witness : "");
}

void verify(const Options& o, io::CommandReport& r) {
    io::AlgebraFile f = load([&] { return io::load_algebra(o.algebra, field_choice(o)); });
    FiniteAlgebra b = load_base(f);
    const bool pair = o.pair || !f.hopf;
    Bialgebroid l = pair ? pair_hopf_algebroid(b) : bialgebra_over_field(b, f.hopf->coproduct, f.hopf->counit, b.name);
    r.values["structure"] = pair ? "pair" : "custom";
    r.dimensions.push_back({{"base", l.m()}, {"total", l.n()}});
    Report axioms = verify_bialgebroid(l);
    r.report.merge(axioms);
    if (!axioms.ok()) r.values["error"] = "AxiomFailure";
    guarded(r, "left Hopf", [&] {
        TranslationMap tm = translation_map(l);
        r.report.add("left Hopf", true);
        Report ids = verify_translation_identities(l, tm);
        std::size_t ok = 0;
        for (const auto& c : ids.checks) ok += c.pass;
        r.values["translation identities"] = std::to_string(ok) + "/" + std::to_string(ids.checks.size());
        r.report.merge(ids, "translation ");
    });
}

void jet(const Options& o, io::CommandReport& r) {
    io::AlgebraFile f = load([&] { return io::load_algebra(o.algebra, field_choice(o)); });
    FiniteAlgebra b = load_base(f);
    JetChain chain = jet_chain(b, o.max_k);
    const std::size_t env = chain.env.dim, mu = chain.powers.front().dim();
    for (std::size_t k = 0; k < chain.powers.size(); ++k) {
        const std::size_t mk = chain.powers[k].dim();
        r.dimensions.push_back({{"k", k}, {"mu_k", mk}, {"J^k", env - mk}, {"Omega1_k", mu - mk}});
    }
    if (!chain.stabilized_at) {
        r.report.add("stabilized", false, "chain still shrinking at k = " + std::to_string(o.max_k), "NotStabilized");
        r.values["error"] = "NotStabilized";
        return;
    }
    const std::size_t ks = *chain.stabilized_at;
    const Subspace& inf = chain.powers[ks];
    r.report.add("stabilized", true, {}, "k = " + std::to_string(ks));
    r.values["stabilized_at"] = ks;
    r.values["mu_infinity"] = inf.dim() == 0 ? "0" : inf == chain.powers.front() ? "mu" : std::to_string(inf.dim());
    r.values["dim J(B)"] = env - inf.dim();
    if (!b.commutative) {
        r.report.note("Hopf ideals", "skipped: base is not commutative");
        return;
    }
    Bialgebroid pair = pair_hopf_algebroid(b);
    TranslationMap tm = translation_map(pair);
    // Finite-order mu_k are usually not coideals; only the stable ideal has to be one.
    json verdicts = json::object();
    for (std::size_t k = 0; k <= ks; ++k) {
        Report h = check_hopf_ideal(pair, chain.powers[k], tm);
        verdicts["mu_" + std::to_string(k)] = h.ok();
        if (k == ks) add_summary(r, "mu_infinity Hopf ideal", h);
    }
    r.values["Hopf ideal"] = verdicts;
    guarded(r, "J(B) left Hopf", [&] {
        Bialgebroid j = jet_hopf_algebroid(b, o.max_k);
        Report v = verify_bialgebroid(j);
        const Check* bad = v.first_failure();
        r.report.add("J(B) bialgebroid", bad == nullptr, bad ? bad->name + ": " + bad->witness : "");
        translation_map(j);
        r.report.add("J(B) left Hopf", true);
    });
}

struct Built {
    std::optional<JetAlgebroid> jet;
    Host host;
};

Built build_host(const io::AlgebraFile& f, const FiniteAlgebra& b) {
    Built out;
    if (f.hopf) {
        out.host = make_host(bialgebra_over_field(b, f.hopf->coproduct, f.hopf->counit, b.name));
    } else if (f.host == "pair") {
        out.host = make_host(pair_hopf_algebroid(b));
    } else {
        out.jet = jet_algebroid(b);
        out.host = out.jet->host;
    }
    return out;
}


Cocycle dualized(const FiniteAlgebra& b, const JetAlgebroid& j, const io::MoyalRecipe& rec, io::CommandReport& r) {
    DiffBialgebroid d = diff_bialgebroid(b);
    DualPairing p = canonical_pairing(d, j);
    XuCocycle xu = check_xu_cocycle(p.lhs, moyal_twist(d, rec.u, rec.v, rec.theta));
    add_summary(r, "Xu cocycle", xu.certificate);
    Report rep;
    Cocycle g = dualize_cocycle(xu, p, j.host, &rep);
    r.report.merge(rep);
    return g;
}

void cotwist_cmd(const Options& o, io::CommandReport& r) {
    io::AlgebraFile f = load([&] { return io::load_algebra(o.algebra, field_choice(o)); });
    FiniteAlgebra b = load_base(f);
    if (o.checks != "all" && o.checks != "groupoid" && o.checks != "hopf-compare" && o.checks != "basic")
        throw InputError{Error("BadInput", "unknown check set '" + o.checks + "'")};
    Built built = build_host(f, b);
    const Host& h = built.host;
    add_summary(r, "host left Hopf algebroid", h.report);
    io::CocycleFile cf = load([&] { return io::load_cocycle(o.cocycle, b, h.l->n()); });
    if (cf.kind == "dualized" && !built.jet)
        throw InputError{Error("BadInput", "a dualized cocycle needs the jet host of the algebra")};
    r.dimensions.push_back({{"L", h.l->n()}, {"B", h.l->m()}});

    std::optional<Cocycle> g;
    if (!guarded(r, "cocycle", [&] {
            if (cf.kind == "trivial") g = trivial_cocycle(h);
            else if (cf.kind == "dense") g = check_cocycle(h, cf.table);
            else g = dualized(b, *built.jet, *cf.recipe, r);
        }))
        return;
    r.report.merge(g->certificate, "cocycle: ");
    Report inv = check_invertible(*g);
    r.report.merge(inv);
    if (!inv.ok()) {
        r.values["error"] = "NotInvertibleCocycle";
        return;
    }
    std::optional<Cotwist> ct;
    if (!guarded(r, "cotwist", [&] { ct = cotwist(*g); })) return;
    r.report.merge(ct->report, "cotwist: ");
    r.report.merge(check_square(*ct));
    const FiniteAlgebra& bg = ct->twisted.l->base;
    r.values["twisted base commutative"] = bg.commutative;
    if (cf.kind == "trivial") add_summary(r, "structural identity", structural_equal(*ct->twisted.l, *h.l));

    const bool all = o.checks == "all";
    if (all || o.checks == "groupoid") {
        guarded(r, "groupoid laws", [&] {
            Cocycle sigma = inverse_cocycle(*ct);
            Cocycle id = compose_cocycles(*ct, sigma);
            r.report.add("Gamma^-1 o Gamma = eps on L", id.table == trivial_cocycle(h).table);
            Cotwist back = cotwist(sigma);
            add_summary(r, "(L^G)^(G^-1) = L", structural_equal(*back.twisted.l, *h.l));
            Cocycle g_back = check_cocycle(back.twisted, g->table);
            Cocycle id2 = compose_cocycles(back, g_back);
            r.report.add("Gamma o Gamma^-1 = eps on L^G", id2.table == trivial_cocycle(ct->twisted).table);
            r.report.add("(Gamma^-1)^-1 = Gamma", inverse_cocycle(back).table == g->table);
            r.report.merge(check_inverse_sharp(*ct, sigma));
            r.report.merge(check_composite_sharp(*ct, sigma, id));
            Cotwist via_comp = cotwist(id);
            add_summary(r, "L^(S o G) = (L^G)^S", structural_equal(*via_comp.twisted.l, *back.twisted.l));
        });
    }
    if ((all && h.l->m() == 1) || o.checks == "hopf-compare")
        guarded(r, "hopf comparison", [&] { r.report.merge(hopf_case_compare(*g)); });
    if (all)
        for (const auto& m : default_family(*g)) r.report.merge(check_cocommute(*ct, m));
}

void quantize(const Options& o, io::CommandReport& r) {
    io::AlgebraFile f = load([&] { return io::load_algebra(o.algebra, field_choice(o)); });
    FiniteAlgebra b = load_base(f);
    std::optional<io::MoyalRecipe> rec = f.recipe;
    if (!o.recipe.empty()) {
        io::CocycleFile cf = load([&] { return io::load_cocycle(o.recipe, b, 0); });
        if (cf.kind != "dualized") throw InputError{Error("BadInput", "recipe file must be of kind 'dualized'")};
        rec = cf.recipe;
    }
    if (!rec) {
        r.report.add("recipe", false, "no nilpotent derivation recipe applies to " + b.name, "RecipeMissing");
        r.values["error"] = "RecipeMissing";
        return;
    }
    if (!o.theta.empty()) rec->theta = load([&] { return Scalar::parse(o.theta, b.field); });
    r.values["theta"] = rec->theta.str();

    std::optional<DiffBialgebroid> d;
    if (!guarded(r, "D(B)", [&] { d = diff_bialgebroid(b); })) return;
    SVec fv;
    if (!guarded(r, "recipe", [&] { fv = moyal_twist(*d, rec->u, rec->v, rec->theta); })) return;
    r.report.add("recipe", true, {}, "commuting nilpotent derivations");
    JetAlgebroid j = jet_algebroid(b);
    r.dimensions.push_back({{"B", b.dim}, {"D(B)", d->l.n()}, {"J(B)", j.host.l->n()}});
    std::optional<QuantizedJet> q;
    if (!guarded(r, "quantized jet", [&] {
            DualPairing p = canonical_pairing(*d, j);
            add_summary(r, "canonical pairing", p.report);
            XuCocycle xu = check_xu_cocycle(p.lhs, fv);
            add_summary(r, "Xu cocycle", xu.certificate);
            q = quantized_jet(*d, j, xu);
        }))
        return;
    r.report.merge(q->conformance);
    const FiniteAlgebra& bg = q->jet.twisted.l->base;
    r.values["twisted base commutative"] = bg.commutative;
    if (rec->theta.is_zero()) add_summary(r, "untwisted", structural_equal(*q->jet.twisted.l, *j.host.l));

    std::vector<Index> gens;
    for (const auto& name : rec->commutator)
        for (Index i = 0; i < b.dim; ++i)
            if (b.basis[i] == name) gens.push_back(i);
    if (gens.size() != 2) gens = algebra_generators(b);
    if (gens.size() >= 2) {
        const SVec x = SVec::unit(gens[0]), y = SVec::unit(gens[1]);
        const std::string& xn = b.basis[gens[0]];
        const std::string& yn = b.basis[gens[1]];
        r.values[xn + "._G " + yn + " - " + yn + "._G " + xn] = bg.describe(bg.multiply(x, y) - bg.multiply(y, x));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bialgebroid, jet and cotwist verification"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json_out, "Print a machine-readable report");
    app.add_flag("--timing", o.timing, "Include wall time in the report");
    app.add_option("--field", o.field, "Override the coefficient field: Q or Fp:<p>");

    auto* v = app.add_subcommand("verify", "Axioms and translation identities of a bialgebroid");
    v->add_option("algebra", o.algebra)->required();
    v->add_flag("--pair", o.pair, "Use the pair Hopf algebroid of the algebra");
    auto* j = app.add_subcommand("jet", "Dimension table of the jet chain");
    j->add_option("algebra", o.algebra)->required();
    j->add_option("--max-k", o.max_k, "Stabilization cap");
    auto* c = app.add_subcommand("cotwist", "Cotwist a Hopf algebroid by a 2-cocycle");
    c->add_option("algebra", o.algebra)->required();
    c->add_option("cocycle", o.cocycle)->required();
    c->add_option("--checks", o.checks, "all, basic, groupoid or hopf-compare");
    auto* q = app.add_subcommand("quantize", "Moyal quantization of the jet Hopf algebroid");
    q->add_option("algebra", o.algebra)->required();
    q->add_option("--theta", o.theta, "Deformation parameter (rational)");
    q->add_option("--recipe", o.recipe, "Cocycle file of kind 'dualized'");
    for (auto* sub : {v, j, c, q}) {
        sub->add_flag("--json", o.json_out, "Print a machine-readable report");
        sub->add_flag("--timing", o.timing, "Include wall time in the report");
        sub->add_option("--field", o.field, "Override the coefficient field: Q or Fp:<p>");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    io::CommandReport r;
    r.command = app.get_subcommands().front()->get_name();
    r.fixtures.push_back(base_name(o.algebra));
    if (!o.cocycle.empty()) r.fixtures.push_back(base_name(o.cocycle));
    if (!o.recipe.empty()) r.fixtures.push_back(base_name(o.recipe));

    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (*v) verify(o, r);
        else if (*j) jet(o, r);
        else if (*c) cotwist_cmd(o, r);
        else quantize(o, r);
        r.exit_code = r.report.ok() ? 0 : 1;
    } catch (const InputError& e) {
        fail_with(r, "input", e.err);
        r.exit_code = 2;
    } catch (const Error& e) {
        fail_with(r, "internal", e);
        r.exit_code = 1;
    }
    if (o.timing) r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (o.json_out) std::cout << io::report_to_json(r).dump(2) << '\n';
    else std::cout << io::report_to_text(r);
    return r.exit_code;
}
