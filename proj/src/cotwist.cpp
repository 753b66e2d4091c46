#include "hopfalg/cotwist.hpp"

#include <map>

#include "hopfalg/errors.hpp"

namespace hopfalg {

namespace {

std::string lname(const Bialgebroid& l, Index i) {
    return i < l.total.basis.size() ? l.total.basis[i] : "X" + std::to_string(i);
}

std::vector<OpPair> op_pairs(const std::vector<LinMap>& a, const std::vector<LinMap>& b,
                             const std::vector<Index>& gens) {
    std::vector<OpPair> out;
    for (Index g : gens) out.push_back({a[g], b[g]});
    return out;
}

SVec ident(Index i) { return SVec::unit(i); }

// One term of a tensor representative.
struct Pair {
    Index a, b;
    Scalar c;
};

std::vector<Pair> terms(const SVec& w, std::size_t n2) {
    std::vector<Pair> out;
    out.reserve(w.t.size());
    for (const auto& [idx, c] : w.t) out.push_back({static_cast<Index>(idx / n2), static_cast<Index>(idx % n2), c});
    return out;
}

// Sum of s(Gamma(u, u')) v v' over Delta(Y) = u (x) v, Delta(Z) = u' (x) v'.
SVec cocycle_argument(const Cocycle& c, const SVec& dy, const SVec& dz) {
    const Bialgebroid& l = *c.host;
    const std::size_t n = l.n();
    Accumulator acc;
    for (const auto& y : terms(dy, n))
        for (const auto& z : terms(dz, n)) {
            const SVec& g = c(y.a, z.a);
            if (g.empty()) continue;
            acc.add(y.c * z.c, l.mul(l.s(g), l.total.prod(y.b, z.b)));
        }
    return acc.take();
}

LinMap inverse_of(const LinMap& m) {
    ColumnSolver solver(m);
    LinMap inv(m.dst, m.src);
    for (Index k = 0; k < m.dst; ++k) {
        auto x = solver.solve(SVec::unit(k));
        if (!x) throw Error("InternalError", "inverse requested for a non-surjective map");
        inv.col[k] = *x;
    }
    return inv;
}

bool is_identity(const LinMap& m) {
    if (m.src != m.dst) return false;
    for (Index k = 0; k < m.src; ++k)
        if (m.col[k] != SVec::unit(k)) return false;
    return true;
}

// Generators of B^G; every basis element when Gamma does not give an algebra
// (only possible for uncertified tables).
std::vector<Index> twisted_generators(const Cocycle& c) {
    try {
        return algebra_generators(twisted_base(c));
    } catch (const Error&) {
        std::vector<Index> all(c.host->m());
        for (Index b = 0; b < all.size(); ++b) all[b] = b;
        return all;
    }
}

std::string pair_name(const Comodule& m, const Comodule& n) { return "(" + m.name + "," + n.name + ")"; }

}  // namespace

SVec Cocycle::eval(const SVec& x, const SVec& y) const {
    const std::size_t nn = n();
    Accumulator acc;
    for (const auto& [i, ci] : x.t)
        for (const auto& [j, cj] : y.t) acc.add(ci * cj, table[static_cast<std::size_t>(i) * nn + j]);
    return acc.take();
}

SVec Cocycle::eval_tensor(const SVec& w) const {
    Accumulator acc;
    for (const auto& [idx, c] : w.t) acc.add(c, table[idx]);
    return acc.take();
}

Host make_host(Bialgebroid l) {
    Host h;
    h.report = verify_bialgebroid(l);
    if (const Check* f = h.report.first_failure()) throw Error("AxiomFailure", l.name + ": " + f->name, f->witness);
    auto tm = translation_map(l);
    h.report.add("left Hopf", true, {}, "lambda bijective");
    h.l = std::make_shared<const Bialgebroid>(std::move(l));
    h.tm = std::make_shared<const TranslationMap>(std::move(tm));
    return h;
}

Report cocycle_report(const Cocycle& c, const CocycleChecks& which) {
    const Bialgebroid& l = *c.host;
    const FiniteAlgebra& B = l.base;
    const FiniteAlgebra& L = l.total;
    const std::size_t n = l.n();
    auto nm = [&](Index i) { return lname(l, i); };
    Report r;
    if (which.balanced) {
        Witness w;
        for (Index g : l.generators())
            for (Index x = 0; x < n && w.ok(); ++x)
                for (Index y = 0; y < n && w.ok(); ++y)
                    if (c.eval(l.tR()[g].col[x], SVec::unit(y)) != c.eval(SVec::unit(x), l.tL()[g].col[y]))
                        w.fail("Gamma(X t(b), Y) != Gamma(X, t(b)Y) at X=" + nm(x) + ", Y=" + nm(y) + ", b=" + B.basis[g]);
        w.report(r, "balanced");
    } else {
        r.note("balanced", "skipped");
    }
    if (which.linear) {
        Witness w;
        for (Index g : l.generators())
            for (Index x = 0; x < n && w.ok(); ++x)
                for (Index y = 0; y < n && w.ok(); ++y)
                    if (c.eval(l.tL()[g].col[x], SVec::unit(y)) != B.multiply(c(x, y), SVec::unit(g)))
                        w.fail("Gamma(t(b)X, Y) != Gamma(X, Y) b at X=" + nm(x) + ", Y=" + nm(y) + ", b=" + B.basis[g]);
        w.report(r, "left Bbar-linear");
    } else {
        r.note("left Bbar-linear", "skipped");
    }
    if (which.unital) {
        Witness w;
        for (Index x = 0; x < n && w.ok(); ++x) {
            SVec e = l.counit.col[x];
            if (c.eval(L.unit, SVec::unit(x)) != e) w.fail("Gamma(1, X) != eps(X) at X=" + nm(x));
            else if (c.eval(SVec::unit(x), L.unit) != e) w.fail("Gamma(X, 1) != eps(X) at X=" + nm(x));
        }
        w.report(r, "unital");
    } else {
        r.note("unital", "skipped");
    }
    if (which.cocycle) {
        Witness w;
        std::vector<SVec> arg(n * n);
        for (Index y = 0; y < n; ++y)
            for (Index z = 0; z < n; ++z) arg[y * n + z] = cocycle_argument(c, l.coproduct[y], l.coproduct[z]);
        for (Index x = 0; x < n && w.ok(); ++x)
            for (Index y = 0; y < n && w.ok(); ++y)
                for (Index z = 0; z < n && w.ok(); ++z) {
                    SVec lhs = c.eval(SVec::unit(x), arg[y * n + z]);
                    SVec rhs = c.eval(arg[x * n + y], SVec::unit(z));
                    if (lhs != rhs)
                        w.fail("X=" + nm(x) + ", Y=" + nm(y) + ", Z=" + nm(z) + ": " + B.describe(lhs) +
                               " != " + B.describe(rhs));
                }
        w.report(r, "cocycle condition");
    } else {
        r.note("cocycle condition", "skipped");
    }
    return r;
}

Cocycle check_cocycle(const Host& h, std::vector<SVec> table, const CocycleChecks& which) {
    const std::size_t n = h.l->n(), m = h.l->m();
    if (table.size() != n * n)
        throw Error("DimensionMismatch", "cocycle table needs " + std::to_string(n * n) + " entries");
    for (const auto& v : table)
        if (!v.empty() && v.max_index() >= m) throw Error("DimensionMismatch", "cocycle value outside B");
    Cocycle c{h.l, h.tm, std::move(table), {}};
    c.certificate = cocycle_report(c, which);
    static const std::map<std::string, std::string> kinds = {{"balanced", "NotBalanced"},
                                                             {"left Bbar-linear", "NotLinear"},
                                                             {"unital", "CounitConditionFailed"},
                                                             {"cocycle condition", "CocycleConditionFailed"}};
    if (const Check* f = c.certificate.first_failure())
        throw Error(kinds.at(f->name), "gamma on " + h.l->name + " fails " + f->name, f->witness);
    return c;
}

Cocycle trivial_cocycle(const Host& h) {
    const Bialgebroid& l = *h.l;
    const std::size_t n = l.n();
    std::vector<SVec> table(n * n);
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) table[x * n + y] = l.eps(l.total.prod(x, y));
    return check_cocycle(h, std::move(table));
}

FiniteAlgebra twisted_base(const Cocycle& c) {
    const Bialgebroid& l = *c.host;
    const FiniteAlgebra& B = l.base;
    FiniteAlgebra t;
    t.name = B.name + "^G";
    t.field = B.field;
    t.dim = B.dim;
    t.basis = B.basis;
    t.unit = B.unit;
    t.mul.resize(B.dim * B.dim);
    for (Index a = 0; a < B.dim; ++a)
        for (Index b = 0; b < B.dim; ++b) t.mul[a * B.dim + b] = c.eval(l.source.col[a], l.source.col[b]);
    try {
        validate_algebra(t, false);
    } catch (const Error& e) {
        throw Error("InternalError", std::string("twisted base is not an algebra: ") + e.what(), e.witness());
    }
    return t;
}

Comodule twisted_bimodule(const Cocycle& c, const Comodule& m) {
    const Bialgebroid& l = *c.host;
    const std::size_t d = m.dim;
    Comodule out;
    out.name = m.name;
    out.dim = d;
    out.coaction = m.coaction;
    for (Index b = 0; b < l.m(); ++b) {
        LinMap lb(d, d), rb(d, d);
        const SVec& sb = l.source.col[b];
        for (Index x = 0; x < d; ++x) {
            Accumulator al, ar;
            for (const auto& t : terms(m.coaction[x], d)) {
                SVec mx = SVec::unit(t.b);
                al.add(t.c, m.act_left(c.eval(sb, SVec::unit(t.a)), mx));
                ar.add(t.c, m.act_left(c.eval(SVec::unit(t.a), sb), mx));
            }
            lb.col[x] = al.take();
            rb.col[x] = ar.take();
        }
        out.left.push_back(std::move(lb));
        out.right.push_back(std::move(rb));
    }
    return out;
}

SVec gamma_sharp_ambient(const Cocycle& c, const Comodule& m, const Comodule& n, Index i, Index j) {
    Accumulator acc;
    for (const auto& x : terms(m.coaction[i], m.dim))
        for (const auto& y : terms(n.coaction[j], n.dim)) {
            SVec g = c(x.a, y.a);
            if (g.empty()) continue;
            SVec mm = m.act_left(g, SVec::unit(x.b));
            for (const auto& [k, ck] : mm.t) acc.add(tidx(k, y.b, n.dim), x.c * y.c * ck);
        }
    return acc.take();
}

GammaSharp gamma_sharp(const Cocycle& c, const Comodule& m, const Comodule& n) {
    const Bialgebroid& l = *c.host;
    if (m.coaction.size() != m.dim || n.coaction.size() != n.dim || m.left.size() != l.m() || n.left.size() != l.m())
        throw Error("DimensionMismatch", "comodule shapes do not match the host " + l.name);
    GammaSharp g;
    g.pair = pair_name(m, n);
    Comodule tm = twisted_bimodule(c, m), tn = twisted_bimodule(c, n);
    g.source = balanced_quotient(m.dim, n.dim, op_pairs(tm.right, tn.left, twisted_generators(c)));
    g.target = balanced_quotient(m.dim, n.dim, op_pairs(m.right, n.left, l.generators()));
    g.map = LinMap(g.source.dim(), g.target.dim());
    for (Index k = 0; k < g.source.dim(); ++k) {
        Index s = g.source.section(k);
        g.map.col[k] = g.target.project(
            gamma_sharp_ambient(c, m, n, static_cast<Index>(s / n.dim), static_cast<Index>(s % n.dim)));
    }
    g.bijective = g.source.dim() == g.target.dim() && ColumnSolver(g.map).injective();
    if (g.bijective) g.inverse = inverse_of(g.map);
    return g;
}

std::vector<Comodule> default_family(const Cocycle& c) {
    return {base_comodule(*c.host), coproduct_comodule(*c.host), regular_comodule(*c.host, *c.tm)};
}

Report check_invertible(const Cocycle& c, const std::vector<Comodule>& family) {
    std::vector<Comodule> fam = family.empty() ? default_family(c) : family;
    Report r;
    for (const auto& m : fam)
        for (const auto& n : fam) {
            GammaSharp g = gamma_sharp(c, m, n);
            std::string dims = std::to_string(g.source.dim()) + " -> " + std::to_string(g.target.dim());
            r.add("Gamma# bijective on " + g.pair, g.bijective, g.bijective ? "" : "rank deficient, " + dims, dims);
        }
    r.note("invertible on tested family", std::to_string(fam.size()) + " comodules, " +
                                              std::to_string(fam.size() * fam.size()) + " pairs");
    return r;
}

Report check_coherence(const Cocycle& c, const Comodule& m, const Comodule& n, const Comodule& p) {
    const Bialgebroid& l = *c.host;
    const std::size_t dm = m.dim, dn = n.dim, dp = p.dim;
    TensorComodule mn = tensor_comodule(l, m, n), np = tensor_comodule(l, n, p);
    const auto gens = l.generators();
    TripleSpace target(dm, dn, dp, op_pairs(m.right, n.left, gens), {}, op_pairs(n.right, p.left, gens));
    Comodule tm = twisted_bimodule(c, m), tn = twisted_bimodule(c, n), tp = twisted_bimodule(c, p);
    const auto tgens = twisted_generators(c);
    TripleSpace source(dm, dn, dp, op_pairs(tm.right, tn.left, tgens), {}, op_pairs(tn.right, tp.left, tgens));
    const std::size_t dmn = mn.space.dim(), dnp = np.space.dim();
    Witness w;
    for (Index k = 0; k < source.dim() && w.ok(); ++k) {
        Index s = source.section(k);
        Index i = static_cast<Index>(s / (dn * dp)), j = static_cast<Index>(s / dp % dn), q = static_cast<Index>(s % dp);
        Accumulator lhs, rhs;
        // (Gamma#_{M(x)N,P}) o (Gamma#_{M,N} (x) id)
        for (const auto& [a, ca] : mn.space.project(gamma_sharp_ambient(c, m, n, i, j)).t)
            for (const auto& t : terms(gamma_sharp_ambient(c, mn.comodule, p, a, q), dp)) {
                Index amb = mn.space.section(t.a);
                lhs.add(t3idx(static_cast<Index>(amb / dn), static_cast<Index>(amb % dn), t.b, dn, dp), ca * t.c);
            }
        // Gamma#_{M,N(x)P} o (id (x) Gamma#_{N,P})
        for (const auto& [a, ca] : np.space.project(gamma_sharp_ambient(c, n, p, j, q)).t)
            for (const auto& t : terms(gamma_sharp_ambient(c, m, np.comodule, i, a), dnp)) {
                Index amb = np.space.section(t.b);
                rhs.add(t3idx(t.a, static_cast<Index>(amb / dp), static_cast<Index>(amb % dp), dn, dp), ca * t.c);
            }
        if (!target.project(lhs.take() - rhs.take()).empty())
            w.fail("m=" + std::to_string(i) + ", n=" + std::to_string(j) + ", p=" + std::to_string(q));
    }
    Report r;
    w.report(r, "coherence on (" + m.name + "," + n.name + "," + p.name + ")",
             "source dimension " + std::to_string(source.dim()) + ", target " + std::to_string(target.dim()) +
                 ", pair spaces " + std::to_string(dmn) + "/" + std::to_string(dnp));
    return r;
}

Cotwist cotwist(const Cocycle& c) {
    const Bialgebroid& L = *c.host;
    const TranslationMap& tm = *c.tm;
    const std::size_t n = L.n();
    Report rep = check_invertible(c);
    if (const Check* f = rep.first_failure())
        throw Error("NotInvertibleCocycle", f->name + " (invertible on tested family fails)", f->witness);

    FiniteAlgebra bg = twisted_base(c);
    rep.add("twisted base associative", true, {}, bg.commutative ? "commutative" : "noncommutative");

    // X -> terms (u, p, q) with Delta(X) = u (x) v and v_+ (x) v_- = p (x) q.
    struct Quad {
        Index u, p, q;
        Scalar c;
    };
    std::vector<std::vector<Quad>> ex(n);
    for (Index x = 0; x < n; ++x)
        for (const auto& d : terms(L.coproduct[x], n))
            for (const auto& t : terms(tm.plus_minus[d.b], n)) ex[x].push_back({d.a, t.a, t.b, d.c * t.c});

    FiniteAlgebra tot;
    tot.name = L.total.name + "^G";
    tot.field = L.total.field;
    tot.dim = n;
    tot.basis = L.total.basis;
    tot.unit = L.total.unit;
    tot.mul.resize(n * n);
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) {
            Accumulator acc;
            for (const auto& a : ex[x])
                for (const auto& b : ex[y]) {
                    const SVec& g1 = c(a.u, b.u);
                    const SVec& g2 = c(b.q, a.q);
                    if (g1.empty() || g2.empty()) continue;
                    SVec v = L.mul(L.mul(L.s(g1), L.total.prod(a.p, b.p)), L.t(g2));
                    acc.add(a.c * b.c, v);
                }
            tot.mul[x * n + y] = acc.take();
        }
    try {
        validate_algebra(tot, false);
    } catch (const Error& e) {
        throw Error("AxiomFailure", std::string("twisted product: ") + e.what(), e.witness());
    }
    rep.add("twisted product associative and unital", true);

    Bialgebroid t;
    t.name = L.name + "^G";
    t.base = bg;
    t.total = std::move(tot);
    t.source = L.source;
    t.target = L.target;
    t.counit = LinMap(n, L.m());
    for (Index x = 0; x < n; ++x) t.counit.col[x] = c.eval_tensor(tm.plus_minus[x]);
    t.coproduct.assign(n, SVec());

    GammaSharp gs = gamma_sharp(c, regular_comodule(L, tm), coproduct_comodule(L));
    bool same = gs.source.same_as(t.diamond()) && gs.target.same_as(L.diamond());
    rep.add("coring identification", same, same ? "" : "L_reg (x)_{B^G} L differs from L^G diamond L^G");
    if (!same) throw Error("AxiomFailure", t.name + ": coring identification");
    if (!gs.bijective) throw Error("NotInvertibleCocycle", "Gamma# on " + gs.pair + " is not bijective");
    for (Index x = 0; x < n; ++x)
        t.coproduct[x] = gs.source.lift(gs.inverse.apply(gs.target.project(L.coproduct[x])));

    Cotwist ct{c, make_host(std::move(t)), std::move(gs), {}};
    rep.merge(ct.twisted.report, "L^G: ");
    ct.report = std::move(rep);
    return ct;
}

Comodule comodule_transport(const Cotwist& ct, const Comodule& m, Report* report) {
    const Cocycle& c = ct.gamma;
    GammaSharp g = gamma_sharp(c, regular_comodule(*c.host, *c.tm), m);
    if (!g.bijective) throw Error("NotInvertibleCocycle", "Gamma# on " + g.pair + " is not bijective");
    Comodule out = twisted_bimodule(c, m);
    out.name = m.name + "^G";
    for (Index x = 0; x < m.dim; ++x) out.coaction[x] = g.source.lift(g.inverse.apply(g.target.project(m.coaction[x])));
    if (report) report->merge(verify_comodule(*ct.twisted.l, out), "transported " + m.name + ": ");
    return out;
}

Report check_monoidal(const Cotwist& ct, const Comodule& m, const Comodule& n) {
    const Cocycle& c = ct.gamma;
    const Bialgebroid& lg = *ct.twisted.l;
    Report r;
    const std::string name = "Gamma# colinear on " + pair_name(m, n);
    GammaSharp g = gamma_sharp(c, m, n);
    TensorComodule tg = tensor_comodule(lg, comodule_transport(ct, m), comodule_transport(ct, n));
    if (!tg.space.same_as(g.source)) {
        r.add(name, false, "M^G (x)_{B^G} N^G differs from the source of Gamma#");
        return r;
    }
    Comodule tb = comodule_transport(ct, tensor_comodule(*c.host, m, n).comodule);
    QuotientSpace dq = comodule_diamond(lg, tb);
    const std::size_t ds = g.source.dim(), dt = g.target.dim();
    Witness w;
    for (Index k = 0; k < ds && w.ok(); ++k) {
        SVec lhs = map_tensor(tg.comodule.coaction[k], ds, dt, ident, [&](Index q) { return g.map.col[q]; });
        SVec rhs = tb.coact(g.map.col[k]);
        if (!dq.project(lhs - rhs).empty()) w.fail("source basis " + std::to_string(k));
    }
    w.report(r, name);
    return r;
}

Report check_cocommute(const Cotwist& ct, const Comodule& m) {
    const Bialgebroid& L = *ct.gamma.host;
    const Bialgebroid& G = *ct.twisted.l;
    const std::size_t n = L.n(), d = m.dim;
    Comodule mg = comodule_transport(ct, m);
    Report r;
    auto run = [&](const std::string& name, const std::vector<OpPair>& r12, const std::vector<OpPair>& r23,
                   const Bialgebroid& first, const Comodule& outer, const Comodule& inner) {
        // (Delta_first (x) id) o delta_outer = (id (x) delta_outer) o delta_inner
        Witness w;
        try {
            TripleSpace t3(n, n, d, r12, {}, r23);
            for (Index x = 0; x < d && w.ok(); ++x) {
                SVec lhs = map_tensor(outer.coaction[x], d, d, [&](Index u) { return first.coproduct[u]; }, ident);
                SVec rhs = map_tensor(inner.coaction[x], d, n * d, ident, [&](Index v) { return outer.coaction[v]; });
                if (!t3.project(lhs - rhs).empty()) w.fail(m.name + "[" + std::to_string(x) + "]");
            }
        } catch (const Error& e) {
            w.fail(e.what());
        }
        w.report(r, name);
    };
    run("cocommute (Delta (x) id) o delta^G on " + m.name, op_pairs(L.tL(), L.sL(), L.generators()),
        op_pairs(G.tL(), mg.left, G.generators()), L, mg, m);
    run("cocommute (Delta^G (x) id) o delta on " + m.name, op_pairs(G.tL(), G.sL(), G.generators()),
        op_pairs(L.tL(), m.left, L.generators()), G, m, mg);
    return r;
}

Report check_square(const Cotwist& ct) {
    const Cocycle& c = ct.gamma;
    const Bialgebroid& L = *c.host;
    const Bialgebroid& G = *ct.twisted.l;
    const TranslationMap& tm = *c.tm;
    const std::size_t n = L.n();
    const QuotientSpace& dq = L.diamond();
    // Gamma^#(A diamond C) = A_+ t(Gamma(A_-, C1)) diamond C2.
    auto sharp = [&](Index a, const SVec& cvec, Accumulator& acc, const Scalar& coef) {
        SVec dc = L.delta(cvec);
        for (const auto& pq : terms(tm.plus_minus[a], n))
            for (const auto& uv : terms(dc, n)) {
                SVec g = c(pq.b, uv.a);
                if (g.empty()) continue;
                SVec left = L.mul(SVec::unit(pq.a), L.t(g));
                for (const auto& [i, ci] : left.t) acc.add(tidx(i, uv.b, n), coef * pq.c * uv.c * ci);
            }
    };
    Witness w;
    for (Index x = 0; x < n && w.ok(); ++x)
        for (Index y = 0; y < n && w.ok(); ++y) {
            Accumulator lhs, rhs;
            for (const auto& ab : terms(G.coproduct[x], n))
                sharp(ab.a, G.mul(SVec::unit(ab.b), SVec::unit(y)), lhs, ab.c);
            for (const auto& pq : terms(tm.plus_minus[x], n))
                for (const auto& pq2 : terms(tm.plus_minus[y], n)) {
                    SVec g = c(pq2.b, pq.b);
                    if (g.empty()) continue;
                    SVec second = L.mul(SVec::unit(pq2.a), L.t(g));
                    SVec first = L.coproduct[pq.a];
                    rhs.add(pq.c * pq2.c, tensor_mul(L.total, first, tensor(L.total.unit, second, n)));
                }
            if (!dq.project(lhs.take() - rhs.take()).empty()) w.fail("X=" + lname(L, x) + ", Y=" + lname(L, y));
        }
    Report r;
    w.report(r, "commuting square Gamma# o lambda^G = lambda o Gamma#'");
    return r;
}

Cocycle inverse_cocycle(const Cotwist& ct) {
    const Cocycle& c = ct.gamma;
    const Bialgebroid& L = *c.host;
    const TranslationMap& tm = *c.tm;
    const std::size_t n = L.n();
    std::vector<SVec> table(n * n);
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) {
            Accumulator acc;
            for (const auto& px : terms(tm.plus_minus[x], n))
                for (const auto& py : terms(tm.plus_minus[y], n)) {
                    SVec inner = cocycle_argument(c, L.coproduct[py.b], L.coproduct[px.b]);
                    acc.add(px.c * py.c, c.eval(L.total.prod(px.a, py.a), inner));
                }
            table[x * n + y] = acc.take();
        }
    return check_cocycle(ct.twisted, std::move(table));
}

Cocycle compose_cocycles(const Cotwist& ct, const Cocycle& sigma, const CocycleChecks& which) {
    const Bialgebroid& G = *ct.twisted.l;
    if (sigma.host != ct.twisted.l && !structural_equal(*sigma.host, G).ok())
        throw Error("HostMismatch", "sigma is not a cocycle on " + G.name);
    const Cocycle& c = ct.gamma;
    const std::size_t n = G.n();
    std::vector<SVec> table(n * n);
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) {
            Accumulator acc;
            for (const auto& a : terms(G.coproduct[x], n))
                for (const auto& b : terms(G.coproduct[y], n)) {
                    SVec sg = sigma(a.a, b.a);
                    if (sg.empty()) continue;
                    acc.add(a.c * b.c, c.eval(G.mul(G.s(sg), SVec::unit(a.b)), SVec::unit(b.b)));
                }
            table[x * n + y] = acc.take();
        }
    return check_cocycle(Host{c.host, c.tm, {}}, std::move(table), which);
}

Report check_inverse_sharp(const Cotwist& ct, const Cocycle& sigma) {
    const Cocycle& c = ct.gamma;
    Report r;
    for (const auto& m : default_family(c))
        for (const auto& n : default_family(c)) {
            Comodule mg = comodule_transport(ct, m), ng = comodule_transport(ct, n);
            const std::string name = "Sigma# = Gamma#^-1 on " + pair_name(m, n);
            Comodule back = twisted_bimodule(sigma, mg);
            if (!(back.left == m.left && back.right == m.right)) {
                r.add(name, false, "twisting back does not restore the actions of " + m.name);
                continue;
            }
            GammaSharp s = gamma_sharp(sigma, mg, ng);
            GammaSharp g = gamma_sharp(c, m, n);
            if (!s.source.same_as(g.target) || !s.target.same_as(g.source)) {
                r.add(name, false, "quotients do not match");
                continue;
            }
            bool ok = is_identity(s.map.then(g.map));
            r.add(name, ok, ok ? "" : "Gamma# o Sigma# != id");
        }
    return r;
}

Report check_composite_sharp(const Cotwist& ct, const Cocycle& sigma, const Cocycle& composite) {
    const Cocycle& c = ct.gamma;
    Report r;
    for (const auto& m : default_family(c))
        for (const auto& n : default_family(c)) {
            const std::string name = "(Sigma o Gamma)# = Gamma# o Sigma# on " + pair_name(m, n);
            GammaSharp cs = gamma_sharp(composite, m, n);
            GammaSharp g = gamma_sharp(c, m, n);
            GammaSharp s = gamma_sharp(sigma, comodule_transport(ct, m), comodule_transport(ct, n));
            if (!cs.source.same_as(s.source) || !s.target.same_as(g.source)) {
                r.add(name, false, "quotients do not match");
                continue;
            }
            bool ok = cs.map == s.map.then(g.map);
            r.add(name, ok, ok ? "" : "matrices differ");
        }
    return r;
}

namespace {

// Iterated coproduct of a basis element over k as a list of (legs, coefficient).
std::vector<std::pair<std::vector<Index>, Scalar>> legs(const Bialgebroid& l, Index x, int k) {
    const std::size_t n = l.n();
    std::vector<std::pair<std::vector<Index>, Scalar>> cur{{{x}, Scalar(1)}};
    for (int step = 1; step < k; ++step) {
        std::vector<std::pair<std::vector<Index>, Scalar>> next;
        for (const auto& [ls, c] : cur)
            for (const auto& t : terms(l.coproduct[ls.back()], n)) {
                auto v = ls;
                v.back() = t.a;
                v.push_back(t.b);
                next.push_back({std::move(v), c * t.c});
            }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

Report hopf_case_compare(const Cocycle& c) {
    const Bialgebroid& H = *c.host;
    if (H.m() != 1) throw Error("BadInput", "hopf_case_compare needs the ground field as base");
    const std::size_t n = H.n();
    const FiniteAlgebra& A = H.total;
    auto scal = [&](Index x, Index y) { return c(x, y).at(0); };
    auto eps = [&](Index x) { return H.counit.col[x].at(0); };

    // Antipode from the translation map: X_+ (x) X_- = X1 (x) S(X2).
    std::vector<SVec> S(n);
    for (Index x = 0; x < n; ++x) {
        Accumulator acc;
        for (const auto& t : terms(c.tm->plus_minus[x], n)) acc.add(t.b, t.c * eps(t.a));
        S[x] = acc.take();
    }
    auto gam = [&](const SVec& a, const SVec& b) { return c.eval(a, b).at(0); };

    // Convolution inverse: sum Gamma(h1, g1) phi(h2, g2) = eps(h) eps(g).
    LinMap conv(n * n, n * n);
    for (Index h = 0; h < n; ++h)
        for (Index g = 0; g < n; ++g)
            for (const auto& dh : terms(H.coproduct[h], n))
                for (const auto& dg : terms(H.coproduct[g], n)) {
                    Scalar v = dh.c * dg.c * scal(dh.a, dg.a);
                    if (!v.is_zero()) conv.col[dh.b * n + dg.b] += scaled(SVec::unit(h * n + g), v);
                }
    SVec rhs;
    {
        Accumulator acc;
        for (Index h = 0; h < n; ++h)
            for (Index g = 0; g < n; ++g) acc.add(h * n + g, eps(h) * eps(g));
        rhs = acc.take();
    }
    auto sol = ColumnSolver(conv).solve(rhs);
    if (!sol) throw Error("NotConvolutionInvertible", "no phi with Gamma * phi = eps (x) eps");
    const SVec inv = *sol;
    auto ginv = [&](Index x, Index y) { return inv.at(x * n + y); };
    for (Index h = 0; h < n; ++h)
        for (Index g = 0; g < n; ++g) {
            Scalar acc(0);
            for (const auto& dh : terms(H.coproduct[h], n))
                for (const auto& dg : terms(H.coproduct[g], n)) acc += dh.c * dg.c * ginv(dh.a, dg.a) * scal(dh.b, dg.b);
            if (acc != eps(h) * eps(g))
                throw Error("NotConvolutionInvertible", "phi * Gamma != eps (x) eps", "h=" + A.basis[h] + ", g=" + A.basis[g]);
        }
    auto ginv_vec = [&](const SVec& a, const SVec& b) {
        Scalar acc(0);
        for (const auto& [i, ci] : a.t)
            for (const auto& [j, cj] : b.t) acc += ci * cj * ginv(i, j);
        return acc;
    };

    Report r;
    r.add("convolution invertible", true);
    Cotwist ct = cotwist(c);
    const Bialgebroid& G = *ct.twisted.l;

    // Drinfeld cotwist: Gamma(h1, g1) h2 g2 Gamma^{-1}(h3, g3), same coalgebra.
    FiniteAlgebra D = A;
    D.name = A.name + "_D";
    for (Index h = 0; h < n; ++h)
        for (Index g = 0; g < n; ++g) {
            Accumulator acc;
            for (const auto& [lh, ch] : legs(H, h, 3))
                for (const auto& [lg, cg] : legs(H, g, 3)) {
                    Scalar v = ch * cg * scal(lh[0], lg[0]) * ginv(lh[2], lg[2]);
                    if (!v.is_zero()) acc.add(v, A.prod(lh[1], lg[1]));
                }
            D.mul[h * n + g] = acc.take();
        }
    try {
        validate_algebra(D, false);
        r.add("Drinfeld cotwist is an algebra", true);
    } catch (const Error& e) {
        r.add("Drinfeld cotwist is an algebra", false, e.what());
        return r;
    }
    Bialgebroid HD = bialgebra_over_field(D, H.coproduct, H.counit, H.name + "_D");
    r.merge(verify_bialgebroid(HD), "Drinfeld cotwist: ");

    LinMap psi(n, n);
    for (Index h = 0; h < n; ++h) {
        Accumulator acc;
        for (const auto& [lh, ch] : legs(H, h, 3)) acc.add(lh[0], ch * gam(SVec::unit(lh[1]), S[lh[2]]));
        psi.col[h] = acc.take();
    }
    r.add("psi bijective", ColumnSolver(psi).injective());
    {
        Witness w;
        if (psi.apply(A.unit) != A.unit) w.fail("psi(1) != 1");
        for (Index h = 0; h < n && w.ok(); ++h)
            for (Index g = 0; g < n && w.ok(); ++g)
                if (psi.apply(G.total.prod(h, g)) != D.multiply(psi.col[h], psi.col[g]))
                    w.fail("h=" + A.basis[h] + ", g=" + A.basis[g]);
        w.report(r, "psi algebra map");
    }
    {
        Witness w;
        for (Index h = 0; h < n && w.ok(); ++h) {
            SVec lhs = H.delta(psi.col[h]);
            SVec rhs = map_tensor(G.coproduct[h], n, n, [&](Index u) { return psi.col[u]; },
                                  [&](Index v) { return psi.col[v]; });
            if (lhs != rhs) w.fail("h=" + A.basis[h]);
            else if (H.eps(psi.col[h]) != G.counit.col[h]) w.fail("counit at h=" + A.basis[h]);
        }
        w.report(r, "psi coalgebra map");
    }
    {
        Witness wp, wd, we;
        for (Index h = 0; h < n; ++h) {
            Accumulator dacc;
            for (const auto& [lh, ch] : legs(H, h, 4)) {
                Scalar v = ch * ginv_vec(S[lh[1]], SVec::unit(lh[2]));
                if (!v.is_zero()) dacc.add(tidx(lh[0], lh[3], n), v);
            }
            if (dacc.take() != G.coproduct[h]) wd.fail("h=" + A.basis[h]);
            Scalar e(0);
            for (const auto& [lh, ch] : legs(H, h, 2)) e += ch * gam(SVec::unit(lh[0]), S[lh[1]]);
            if (SVec::from_terms({{0, e}}) != G.counit.col[h]) we.fail("h=" + A.basis[h]);
            for (Index g = 0; g < n && wp.ok(); ++g) {
                Accumulator acc;
                for (const auto& [lh, ch] : legs(H, h, 3))
                    for (const auto& [lg, cg] : legs(H, g, 3)) {
                        Scalar v = ch * cg * scal(lh[0], lg[0]) * gam(S[lg[2]], S[lh[2]]);
                        if (!v.is_zero()) acc.add(v, A.prod(lh[1], lg[1]));
                    }
                if (acc.take() != G.total.prod(h, g)) wp.fail("h=" + A.basis[h] + ", g=" + A.basis[g]);
            }
        }
        wp.report(r, "product closed form");
        wd.report(r, "coproduct closed form");
        we.report(r, "counit closed form");
    }
    return r;
}

}  // namespace hopfalg
