#include "hopfalg/duality.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "hopfalg/errors.hpp"

namespace hopfalg {

namespace {

std::string nm(const FiniteAlgebra& a, Index i) { return i < a.basis.size() ? a.basis[i] : "e" + std::to_string(i); }

struct FTerm {
    Index p, q;
    Scalar c;
};

std::vector<FTerm> f_terms(const SVec& f, std::size_t n) {
    std::vector<FTerm> out;
    for (const auto& [idx, c] : f.t) out.push_back({static_cast<Index>(idx / n), static_cast<Index>(idx % n), c});
    return out;
}

LinMap combine(const std::vector<LinMap>& ops, const SVec& x, std::size_t dim) {
    LinMap out(dim, dim);
    std::vector<Accumulator> cols(dim);
    for (const auto& [i, c] : x.t)
        for (Index j = 0; j < dim; ++j) cols[j].add(c, ops[i].col[j]);
    for (Index j = 0; j < dim; ++j) out.col[j] = cols[j].take();
    return out;
}

std::vector<OpPair> op_pairs(const std::vector<LinMap>& a, const std::vector<LinMap>& b,
                             const std::vector<Index>& gens) {
    std::vector<OpPair> out;
    for (Index g : gens) out.push_back({a[g], b[g]});
    return out;
}

bool same_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    return a.dim == b.dim && a.unit == b.unit && a.mul == b.mul;
}

LinMap inverse_of(const LinMap& m) {
    ColumnSolver cs(m);
    LinMap inv(m.dst, m.src);
    for (Index k = 0; k < m.dst; ++k) inv.col[k] = *cs.solve(SVec::unit(k));
    return inv;
}

// Runs body(row) for every row in [0, n) on the available cores.
template <class F>
void for_rows(std::size_t n, F&& body) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t r; (r = next.fetch_add(1)) < n;) body(static_cast<Index>(r));
    };
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::size_t nt = std::min<std::size_t>(hw, n);
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

std::string first_nonempty(const std::vector<std::string>& v) {
    for (const auto& w : v)
        if (!w.empty()) return w;
    return {};
}

void add_row_check(Report& r, const std::string& name, const std::string& witness, const std::string& detail = {}) {
    r.add(name, witness.empty(), witness, detail);
}

// Delta_b as a linear operator on End(B) vectors.
LinMap delta_matrix(const FiniteAlgebra& b, Index e) {
    const std::size_t m = b.dim;
    LinMap out(m * m, m * m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) {
            LinMap unit(m, m);
            unit.col[j] = SVec::unit(i);
            out.col[i * m + j] = op_vector(delta_op(b, SVec::unit(e), unit));
        }
    return out;
}

// Diff^0, Diff^1, ... until two consecutive levels agree or `levels` are built.
std::vector<Subspace> filtration(const FiniteAlgebra& b, std::size_t levels, bool stop_when_stable) {
    const std::size_t m = b.dim, mm = m * m;
    std::vector<LinMap> deltas;
    for (Index e = 0; e < m; ++e) deltas.push_back(delta_matrix(b, e));
    std::vector<Subspace> out;
    Subspace prev(mm);
    for (std::size_t k = 0; k < levels; ++k) {
        QuotientSpace q(mm, prev.basis());
        const std::size_t dq = q.dim();
        LinMap big(mm, m * dq);
        for (Index v = 0; v < mm; ++v) {
            Accumulator acc;
            for (Index e = 0; e < m; ++e)
                for (const auto& [i, c] : q.project(deltas[e].col[v]).t) acc.add(static_cast<Index>(e * dq + i), c);
            big.col[v] = acc.take();
        }
        Subspace cur(mm, kernel(big));
        bool stable = cur == prev;
        out.push_back(cur);
        if (stable && stop_when_stable) break;
        prev = std::move(cur);
    }
    return out;
}

// Dense view of an SVec over a small dimension.
std::vector<Scalar> dense_of(const SVec& v, std::size_t n) {
    std::vector<Scalar> d(n);
    for (const auto& [i, c] : v.t) d[i] = c;
    return d;
}

}  // namespace

// ---------------------------------------------------------------- operators

SVec op_vector(const LinMap& d) {
    const std::size_t m = d.src;
    Accumulator acc;
    for (Index j = 0; j < m; ++j)
        for (const auto& [i, c] : d.col[j].t) acc.add(static_cast<Index>(i * m + j), c);
    return acc.take();
}

LinMap op_matrix(const SVec& v, std::size_t m) {
    std::vector<Accumulator> cols(m);
    for (const auto& [idx, c] : v.t) cols[idx % m].add(static_cast<Index>(idx / m), c);
    LinMap out(m, m);
    for (Index j = 0; j < m; ++j) out.col[j] = cols[j].take();
    return out;
}

FiniteAlgebra endomorphism_algebra(const FiniteAlgebra& b) {
    const std::size_t m = b.dim;
    FiniteAlgebra e;
    e.name = "End(" + b.name + ")";
    e.field = b.field;
    e.dim = m * m;
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) e.basis.push_back("E[" + nm(b, i) + "<-" + nm(b, j) + "]");
    Accumulator u;
    for (Index i = 0; i < m; ++i) u.add(static_cast<Index>(i * m + i), b.one());
    e.unit = u.take();
    e.mul.resize(e.dim * e.dim);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j)
            for (Index l = 0; l < m; ++l) {
                SVec v;
                v.t.push_back({static_cast<Index>(i * m + l), b.one()});
                e.mul[(i * m + j) * e.dim + j * m + l] = v;
            }
    e.commutative = m <= 1;
    return e;
}

LinMap delta_op(const FiniteAlgebra& b, const SVec& elem, const LinMap& d) {
    LinMap out(b.dim, b.dim);
    for (Index j = 0; j < b.dim; ++j)
        out.col[j] = b.multiply(d.col[j], elem) - d.apply(b.multiply(SVec::unit(j), elem));
    return out;
}

Subspace diff_operators(const FiniteAlgebra& b, std::size_t k) { return filtration(b, k + 1, false).back(); }

std::optional<std::size_t> diff_order(const FiniteAlgebra& b, const LinMap& d, std::size_t cap) {
    SVec v = op_vector(d);
    auto levels = filtration(b, cap + 1, true);
    for (std::size_t k = 0; k < levels.size(); ++k)
        if (levels[k].contains(v)) return k;
    return std::nullopt;
}

// ---------------------------------------------------------------- jets vs Diff

LinMap JetDiffIso::phi_of(const LinMap& d) const {
    const std::size_t m = base.dim;
    auto amb = [&](const SVec& w) {
        Accumulator acc;
        for (const auto& [idx, c] : w.t)
            acc.add(c, base.multiply(d.col[idx / m], SVec::unit(static_cast<Index>(idx % m))));
        return acc.take();
    };
    for (const auto& r : jet.quotient.relation_basis())
        if (!amb(r).empty())
            throw Error("FactorizationFailure", "phi_D does not vanish on mu_" + std::to_string(jet.k),
                        "relation " + to_string(r));
    LinMap phi(jet.dim(), m);
    for (Index q = 0; q < jet.dim(); ++q) phi.col[q] = amb(SVec::unit(jet.quotient.section(q)));
    return phi;
}

LinMap JetDiffIso::d_of(const LinMap& phi) const {
    const std::size_t m = base.dim;
    LinMap d(m, m);
    for (Index a = 0; a < m; ++a) d.col[a] = phi.apply(jet.quotient.project(tensor(SVec::unit(a), base.unit, m)));
    return d;
}

JetDiffIso jet_diff_iso(const FiniteAlgebra& b, std::size_t k) {
    const std::size_t m = b.dim;
    JetDiffIso iso;
    iso.base = b;
    JetChain chain = jet_chain(b, std::max<std::size_t>(16, k + 2));
    iso.jet = jet_space(chain, k);
    iso.diff = diff_operators(b, k);
    const QuotientSpace& q = iso.jet.quotient;
    const std::size_t dj = q.dim();
    const auto gens = algebra_generators(b);

    // Unknown phi has entry (q, r) at q*m + r. Constraint rows: (q, g, r).
    LinMap cons(dj * m, dj * gens.size() * m);
    std::vector<Accumulator> cols(dj * m);
    for (Index qi = 0; qi < dj; ++qi) {
        Index s = q.section(qi);
        SVec a = SVec::unit(static_cast<Index>(s / m)), bb = SVec::unit(static_cast<Index>(s % m));
        for (std::size_t g = 0; g < gens.size(); ++g) {
            const std::size_t row0 = (qi * gens.size() + g) * m;
            SVec shifted = q.project(tensor(a, b.multiply(bb, SVec::unit(gens[g])), m));
            for (const auto& [q2, c] : shifted.t)
                for (Index r = 0; r < m; ++r) cols[q2 * m + r].add(static_cast<Index>(row0 + r), c);
            for (Index r = 0; r < m; ++r)
                for (const auto& [r2, c] : b.prod(r, gens[g]).t) cols[qi * m + r].add(static_cast<Index>(row0 + r2), -c);
        }
    }
    for (std::size_t v = 0; v < dj * m; ++v) cons.col[v] = cols[v].take();
    for (const auto& kv : kernel(cons)) {
        LinMap phi(dj, m);
        std::vector<Accumulator> pc(dj);
        for (const auto& [idx, c] : kv.t) pc[idx / m].add(static_cast<Index>(idx % m), c);
        for (Index qi = 0; qi < dj; ++qi) phi.col[qi] = pc[qi].take();
        iso.hom_basis.push_back(std::move(phi));
    }
    iso.dim_diff = iso.diff.dim();
    iso.dim_hom = iso.hom_basis.size();
    iso.checks.add("dimensions agree", iso.dim_diff == iso.dim_hom,
                   iso.dim_diff == iso.dim_hom ? "" : "dim Diff = " + std::to_string(iso.dim_diff) + ", dim Hom = " + std::to_string(iso.dim_hom),
                   "dim " + std::to_string(iso.dim_diff) + " at k = " + std::to_string(k));
    Witness wd, wp;
    for (const auto& v : iso.diff.basis()) {
        LinMap d = op_matrix(v, m);
        if (iso.d_of(iso.phi_of(d)) != d && wd.ok()) wd.fail(b.describe(v));
    }
    for (std::size_t h = 0; h < iso.hom_basis.size(); ++h) {
        LinMap d = iso.d_of(iso.hom_basis[h]);
        if (!iso.diff.contains(op_vector(d))) wp.fail("D_phi outside Diff^k for hom basis " + std::to_string(h));
        else if (iso.phi_of(d) != iso.hom_basis[h]) wp.fail("hom basis " + std::to_string(h));
    }
    wd.report(iso.checks, "round trip D");
    wp.report(iso.checks, "round trip phi");
    return iso;
}

// ---------------------------------------------------------------- D(B)

LinMap DiffBialgebroid::op(const SVec& x) const {
    Accumulator acc;
    for (const auto& [i, c] : x.t) acc.add(c, ops[i]);
    return op_matrix(acc.take(), l.m());
}

SVec DiffBialgebroid::element(const LinMap& d) const {
    LinMap inc(ops.size(), l.m() * l.m());
    inc.col = ops;
    auto x = ColumnSolver(inc).solve(op_vector(d));
    if (!x) throw Error("BadInput", "operator is not in " + l.name, l.base.describe(op_vector(d)));
    return *x;
}

DiffBialgebroid diff_bialgebroid(const FiniteAlgebra& b, std::size_t cap) {
    if (!b.commutative) throw Error("NotCommutative", "D(B) needs a commutative base", b.name);
    const std::size_t m = b.dim;
    auto levels = filtration(b, cap + 1, true);
    if (levels.size() < 2 || !(levels.back() == levels[levels.size() - 2]))
        throw Error("NotStabilized", "Diff filtration did not stabilize within " + std::to_string(cap) + " steps");
    DiffBialgebroid d;
    d.stabilized_at = levels.size() - 2;
    d.ops = levels.back().basis();
    const std::string name = "D(" + b.name + ")";
    FiniteAlgebra endb = endomorphism_algebra(b);
    Bialgebroid& l = d.l;
    l.name = name;
    l.base = b;
    l.total = subalgebra(endb, d.ops, name);
    const std::size_t n = l.total.dim;
    l.source = LinMap(m, n);
    for (Index a = 0; a < m; ++a) l.source.col[a] = d.element(b.left_mult(SVec::unit(a)));
    l.target = l.source;
    l.counit = LinMap(n, m);
    for (Index x = 0; x < n; ++x) l.counit.col[x] = op_matrix(d.ops[x], m).apply(b.unit);
    l.coproduct.assign(n, SVec());

    // Canonical action of D diamond D on B (x) B, index (a*m + b)*m + c.
    const QuotientSpace& dq = l.diamond();
    std::vector<LinMap> opm;
    for (const auto& v : d.ops) opm.push_back(op_matrix(v, m));
    LinMap action(dq.dim(), m * m * m);
    for (Index k = 0; k < dq.dim(); ++k) {
        Index s = dq.section(k);
        const LinMap &d1 = opm[s / n], &d2 = opm[s % n];
        Accumulator acc;
        for (Index a = 0; a < m; ++a)
            for (Index bb = 0; bb < m; ++bb)
                for (const auto& [c, v] : b.multiply(d1.col[a], d2.col[bb]).t) acc.add(static_cast<Index>((a * m + bb) * m + c), v);
        action.col[k] = acc.take();
    }
    ColumnSolver cs(action);
    for (Index x = 0; x < n; ++x) {
        Accumulator acc;
        for (Index a = 0; a < m; ++a)
            for (Index bb = 0; bb < m; ++bb)
                for (const auto& [c, v] : opm[x].apply(b.prod(a, bb)).t) acc.add(static_cast<Index>((a * m + bb) * m + c), v);
        auto sol = cs.solve(acc.take());
        if (!sol) throw Error("CoproductNotFactorizable", "no class in " + name + " diamond " + name + " acts as D(ab)",
                              l.total.basis[x]);
        l.coproduct[x] = dq.lift(*sol);
    }
    l.reset_cache();
    d.report.note("filtration", "stabilized at Diff^" + std::to_string(d.stabilized_at) + ", dim " + std::to_string(n));
    d.report.note("coproduct action", cs.injective() ? "action on B (x) B is injective on D diamond D"
                                                      : "action has kernel of dim " + std::to_string(cs.kernel().size()));
    Report ax = verify_bialgebroid(l);
    d.report.merge(ax);
    if (const Check* f = ax.first_failure()) throw Error("AxiomFailure", name + ": " + f->name, f->witness);
    return d;
}

// ---------------------------------------------------------------- pairings

SVec DualPairing::eval(const SVec& x, const SVec& a) const {
    Accumulator acc;
    for (const auto& [i, ci] : x.t)
        for (const auto& [j, cj] : a.t) acc.add(ci * cj, (*this)(i, j));
    return acc.take();
}

Report pairing_report(const Bialgebroid& lam, const Bialgebroid& l, const std::vector<SVec>& table) {
    const std::size_t n1 = lam.n(), n2 = l.n(), m = l.m();
    const FiniteAlgebra& B = l.base;
    const FiniteAlgebra& La = lam.total;
    const FiniteAlgebra& H = l.total;
    Report r;
    bool common = same_algebra(lam.base, l.base);
    r.add("common base", common, common ? "" : lam.base.name + " vs " + B.name);
    if (!common) return r;

    auto P = [&](Index x, Index a) -> const SVec& { return table[static_cast<std::size_t>(x) * n2 + a]; };
    // Column lists: for each alpha, the nonzero <X|alpha>.
    std::vector<std::vector<std::pair<Index, const SVec*>>> cols(n2);
    for (Index x = 0; x < n1; ++x)
        for (Index a = 0; a < n2; ++a)
            if (!P(x, a).empty()) cols[a].push_back({x, &P(x, a)});
    auto eval = [&](const SVec& x, const SVec& a) {
        Accumulator acc;
        for (const auto& [i, ci] : x.t)
            for (const auto& [j, cj] : a.t) acc.add(ci * cj, P(i, j));
        return acc.take();
    };
    // <Y|a> for Y given densely over Lambda.
    auto eval_dense = [&](const std::vector<Scalar>& y, const SVec& a) {
        Accumulator acc;
        for (const auto& [j, cj] : a.t)
            for (const auto& [x, v] : cols[j])
                if (!y[x].is_zero()) acc.add(cj * y[x], *v);
        return acc.take();
    };
    auto X = [&](Index x) { return La.basis[x]; };
    auto A = [&](Index a) { return H.basis[a]; };

    // Axiom 1, one scalar at a time.
    {
        Witness w1, w2, w3, w4, w5;
        for (Index b = 0; b < m; ++b)
            for (Index x = 0; x < n1; ++x)
                for (Index a = 0; a < n2; ++a) {
                    SVec ea = SVec::unit(a), ex = SVec::unit(x);
                    std::string at = "a=" + B.basis[b] + ", X=" + X(x) + ", alpha=" + A(a);
                    if (w1.ok() && eval(lam.sL()[b].col[x], ea) != B.multiply(SVec::unit(b), P(x, a))) w1.fail(at);
                    if (w2.ok() && eval(lam.tL()[b].col[x], ea) != eval(ex, l.tR()[b].col[a])) w2.fail(at);
                    if (w3.ok() && eval(lam.sR()[b].col[x], ea) != eval(ex, l.sL()[b].col[a])) w3.fail(at);
                    if (w4.ok() && eval(lam.tR()[b].col[x], ea) != eval(ex, l.sR()[b].col[a])) w4.fail(at);
                    if (w5.ok() && B.multiply(P(x, a), SVec::unit(b)) != eval(ex, l.tL()[b].col[a])) w5.fail(at);
                }
        w1.report(r, "axiom 1 (s(a)X)", "<s(a)X|alpha> = a<X|alpha>");
        w2.report(r, "axiom 1 (t(a)X)", "<t(a)X|alpha> = <X|alpha t(a)>");
        w3.report(r, "axiom 1 (X s(a))", "<X s(a)|alpha> = <X|s(a)alpha>");
        w4.report(r, "axiom 1 (X t(a))", "<X t(a)|alpha> = <X|alpha s(a)>");
        w5.report(r, "axiom 1 (f)", "<X|alpha> f = <X|t(f)alpha>");
    }

    // Axiom 2: <X|alpha beta> = <X1|alpha t(<X2|beta>)> = <t(<X2|beta>)X1|alpha>.
    {
        std::vector<std::string> left_fail(n1), right_fail(n1);
        for_rows(n1, [&](Index x) {
            std::map<Index, std::vector<std::pair<Index, Scalar>>> groups;
            for (const auto& [idx, c] : lam.coproduct[x].t)
                groups[static_cast<Index>(idx / n1)].push_back({static_cast<Index>(idx % n1), c});
            for (Index be = 0; be < n2 && (left_fail[x].empty() || right_fail[x].empty()); ++be) {
                // z[k][x1] = k-th coordinate of sum_c c <X2|beta> grouped by X1.
                std::vector<std::vector<Scalar>> z(m, std::vector<Scalar>(n1));
                Accumulator yl;  // t(<X2|beta>) X1 in Lambda
                for (const auto& [x1, list] : groups) {
                    Accumulator bv;
                    for (const auto& [x2, c] : list) bv.add(c, P(x2, be));
                    for (const auto& [k, ck] : bv.take().t) {
                        z[k][x1] += ck;
                        yl.add(ck, lam.tL()[k].col[x1]);
                    }
                }
                std::vector<Scalar> yd = dense_of(yl.take(), n1);
                for (Index a = 0; a < n2; ++a) {
                    SVec lhs = eval(SVec::unit(x), H.prod(a, be));
                    Accumulator rhs;
                    for (Index k = 0; k < m; ++k) rhs.add(eval_dense(z[k], l.tR()[k].col[a]));
                    std::string at = "X=" + X(x) + ", alpha=" + A(a) + ", beta=" + A(be);
                    if (right_fail[x].empty() && lhs != rhs.take()) right_fail[x] = at;
                    if (left_fail[x].empty() && lhs != eval_dense(yd, SVec::unit(a))) left_fail[x] = at;
                }
            }
        });
        add_row_check(r, "axiom 2 (right)", first_nonempty(right_fail), "<X|alpha beta> = <X1|alpha t(<X2|beta>)>");
        add_row_check(r, "axiom 2 (left)", first_nonempty(left_fail), "<X|alpha beta> = <t(<X2|beta>)X1|alpha>");
    }

    // Axiom 3: <XY|alpha> = <X s(<Y|alpha1>)|alpha2> = <X|s(<Y|alpha1>)alpha2>.
    {
        std::vector<std::map<Index, std::vector<std::pair<Index, Scalar>>>> agroups(n2);
        for (Index a = 0; a < n2; ++a)
            for (const auto& [idx, c] : l.coproduct[a].t)
                agroups[a][static_cast<Index>(idx % n2)].push_back({static_cast<Index>(idx / n2), c});
        std::vector<std::string> left_fail(n1), right_fail(n1);
        for_rows(n1, [&](Index y) {
            for (Index a = 0; a < n2 && (left_fail[y].empty() || right_fail[y].empty()); ++a) {
                std::vector<std::pair<Index, SVec>> bvs;  // (alpha2, <Y|alpha1> summed)
                Accumulator vl;                           // s(<Y|alpha1>) alpha2 in L
                for (const auto& [a2, list] : agroups[a]) {
                    Accumulator bv;
                    for (const auto& [a1, c] : list) bv.add(c, P(y, a1));
                    SVec v = bv.take();
                    for (const auto& [k, ck] : v.t) vl.add(ck, l.sL()[k].col[a2]);
                    if (!v.empty()) bvs.push_back({a2, std::move(v)});
                }
                SVec vls = vl.take();
                for (Index x = 0; x < n1; ++x) {
                    SVec lhs = eval(La.prod(x, y), SVec::unit(a));
                    Accumulator rhs;
                    for (const auto& [a2, v] : bvs)
                        for (const auto& [k, ck] : v.t) rhs.add(eval(scaled(lam.sR()[k].col[x], ck), SVec::unit(a2)));
                    std::string at = "X=" + X(x) + ", Y=" + X(y) + ", alpha=" + A(a);
                    if (right_fail[y].empty() && lhs != rhs.take()) right_fail[y] = at;
                    if (left_fail[y].empty() && lhs != eval(SVec::unit(x), vls)) left_fail[y] = at;
                }
            }
        });
        add_row_check(r, "axiom 3 (right)", first_nonempty(right_fail), "<XY|alpha> = <X s(<Y|alpha1>)|alpha2>");
        add_row_check(r, "axiom 3 (left)", first_nonempty(left_fail), "<XY|alpha> = <X|s(<Y|alpha1>)alpha2>");
    }

    {
        Witness w4, w5;
        for (Index x = 0; x < n1 && w4.ok(); ++x)
            if (eval(SVec::unit(x), H.unit) != lam.counit.col[x]) w4.fail("X=" + X(x));
        for (Index a = 0; a < n2 && w5.ok(); ++a)
            if (eval(La.unit, SVec::unit(a)) != l.counit.col[a]) w5.fail("alpha=" + A(a));
        w4.report(r, "axiom 4", "<X|1> = eps(X)");
        w5.report(r, "axiom 5", "<1|alpha> = eps(alpha)");
    }
    return r;
}

DualPairing make_pairing(std::shared_ptr<const Bialgebroid> lam, std::shared_ptr<const Bialgebroid> l,
                         std::vector<SVec> table) {
    if (table.size() != lam->n() * l->n())
        throw Error("DimensionMismatch", "pairing table needs " + std::to_string(lam->n() * l->n()) + " entries");
    for (const auto& v : table)
        if (!v.empty() && v.max_index() >= l->m()) throw Error("DimensionMismatch", "pairing value outside B");
    DualPairing p{std::move(lam), std::move(l), std::move(table), {}};
    p.report = pairing_report(*p.lhs, *p.rhs, p.table);
    if (const Check* f = p.report.first_failure())
        throw Error("PairingAxiomFailure", p.lhs->name + " x " + p.rhs->name + " fails " + f->name, f->witness);
    return p;
}

SVec JetAlgebroid::jet_class(const SVec& a, const SVec& b) const {
    return quotient.project(tensor(a, b, host.l->m()));
}

JetAlgebroid jet_algebroid(const FiniteAlgebra& b, std::size_t cap) {
    JetAlgebroid j;
    JetChain chain = jet_chain(b, cap);
    j.quotient = QuotientSpace(b.dim * b.dim, chain.mu_infinity().basis());
    j.host = make_host(jet_hopf_algebroid(b, cap));
    if (j.host.l->n() != j.quotient.dim()) throw Error("InternalError", "jet quotient and J(B) disagree in dimension");
    return j;
}

DualPairing canonical_pairing(const DiffBialgebroid& d, const JetAlgebroid& j) {
    const FiniteAlgebra& B = d.l.base;
    if (!same_algebra(B, j.host.l->base)) throw Error("BaseMismatch", "D(B) and J(B) live over different algebras");
    const std::size_t m = B.dim, n1 = d.l.n(), n2 = j.host.l->n();
    std::vector<LinMap> opm;
    for (const auto& v : d.ops) opm.push_back(op_matrix(v, m));
    auto amb = [&](Index x, const SVec& w) {
        Accumulator acc;
        for (const auto& [idx, c] : w.t) acc.add(c, B.multiply(opm[x].col[idx / m], SVec::unit(static_cast<Index>(idx % m))));
        return acc.take();
    };
    Report pre;
    {
        Witness w;
        const auto rel = j.quotient.relation_basis();
        for (Index x = 0; x < n1 && w.ok(); ++x)
            for (const auto& r : rel)
                if (!amb(x, r).empty()) {
                    w.fail("D=" + d.l.total.basis[x] + " on " + B.describe(r));
                    break;
                }
        w.report(pre, "well defined", "every D vanishes on mu_infinity");
    }
    if (const Check* f = pre.first_failure()) throw Error("PairingAxiomFailure", "pairing not well defined", f->witness);
    std::vector<SVec> table(n1 * n2);
    for (Index x = 0; x < n1; ++x)
        for (Index q = 0; q < n2; ++q) table[x * n2 + q] = amb(x, SVec::unit(j.quotient.section(q)));
    DualPairing p = make_pairing(std::make_shared<const Bialgebroid>(d.l), j.host.l, std::move(table));
    pre.merge(p.report);
    p.report = std::move(pre);
    return p;
}

// ---------------------------------------------------------------- modules

SVec LModule::apply(const SVec& x, const SVec& m) const {
    Accumulator acc;
    for (const auto& [i, c] : x.t) acc.add(c, act[i].apply(m));
    return acc.take();
}

LModule base_module(const Bialgebroid& lam) {
    LModule mod;
    mod.name = lam.base.name;
    mod.dim = lam.m();
    for (Index x = 0; x < lam.n(); ++x) {
        LinMap a(lam.m(), lam.m());
        for (Index b = 0; b < lam.m(); ++b) a.col[b] = lam.eps(lam.sR()[b].col[x]);
        mod.act.push_back(std::move(a));
    }
    return mod;
}

LModule regular_module(const Bialgebroid& lam) {
    LModule mod;
    mod.name = lam.name;
    mod.dim = lam.n();
    for (Index x = 0; x < lam.n(); ++x) mod.act.push_back(lam.total.left_mult(SVec::unit(x)));
    return mod;
}

LModule module_from_comodule(const DualPairing& p, const Comodule& c) {
    LModule mod;
    mod.name = c.name;
    mod.dim = c.dim;
    const std::size_t n2 = p.rhs->n();
    for (Index x = 0; x < p.lhs->n(); ++x) {
        LinMap a(c.dim, c.dim);
        for (Index v = 0; v < c.dim; ++v) {
            Accumulator acc;
            for (const auto& [idx, k] : c.coaction[v].t) {
                const SVec& b = p(x, static_cast<Index>(idx / c.dim));
                if (!b.empty()) acc.add(k, c.act_left(b, SVec::unit(static_cast<Index>(idx % c.dim))));
            }
            a.col[v] = acc.take();
        }
        mod.act.push_back(std::move(a));
    }
    (void)n2;
    return mod;
}

Report verify_module(const Bialgebroid& lam, const LModule& m) {
    Report r;
    if (m.act.size() != lam.n()) throw Error("DimensionMismatch", "module " + m.name + " needs one operator per basis");
    {
        Witness w;
        for (Index v = 0; v < m.dim && w.ok(); ++v)
            if (m.apply(lam.total.unit, SVec::unit(v)) != SVec::unit(v)) w.fail(m.name + "[" + std::to_string(v) + "]");
        w.report(r, "unital action");
    }
    {
        Witness w;
        for (Index x = 0; x < lam.n() && w.ok(); ++x)
            for (Index y = 0; y < lam.n() && w.ok(); ++y)
                for (Index v = 0; v < m.dim && w.ok(); ++v)
                    if (m.act[x].apply(m.act[y].col[v]) != m.apply(lam.total.prod(x, y), SVec::unit(v)))
                        w.fail("X=" + lam.total.basis[x] + ", Y=" + lam.total.basis[y]);
        w.report(r, "associative action");
    }
    return r;
}

// ---------------------------------------------------------------- Xu cocycles

namespace {

// s^F(b) and t^F(b) in Lambda.
SVec source_f(const Bialgebroid& lam, const std::vector<FTerm>& ft, Index b) {
    Accumulator acc;
    for (const auto& t : ft) {
        SVec e = lam.eps(lam.sR()[b].col[t.p]);
        if (!e.empty()) acc.add(t.c, lam.mul(lam.s(e), SVec::unit(t.q)));
    }
    return acc.take();
}

SVec target_f(const Bialgebroid& lam, const std::vector<FTerm>& ft, Index b) {
    Accumulator acc;
    for (const auto& t : ft) {
        SVec e = lam.eps(lam.sR()[b].col[t.q]);
        if (!e.empty()) acc.add(t.c, lam.mul(lam.t(e), SVec::unit(t.p)));
    }
    return acc.take();
}

std::vector<Index> f_generators(const Bialgebroid& lam, const SVec& f) {
    try {
        return algebra_generators(f_twisted_base(lam, f));
    } catch (const Error&) {
        std::vector<Index> all(lam.m());
        for (Index b = 0; b < all.size(); ++b) all[b] = b;
        return all;
    }
}

}  // namespace

FiniteAlgebra f_twisted_base(const Bialgebroid& lam, const SVec& f) {
    const FiniteAlgebra& B = lam.base;
    const auto ft = f_terms(f, lam.n());
    FiniteAlgebra t;
    t.name = B.name + "^F";
    t.field = B.field;
    t.dim = B.dim;
    t.basis = B.basis;
    t.unit = B.unit;
    t.mul.resize(B.dim * B.dim);
    for (Index a = 0; a < B.dim; ++a)
        for (Index b = 0; b < B.dim; ++b) {
            Accumulator acc;
            for (const auto& ftm : ft) {
                SVec ea = lam.eps(lam.sR()[a].col[ftm.p]);
                if (ea.empty()) continue;
                SVec eb = lam.eps(lam.sR()[b].col[ftm.q]);
                if (!eb.empty()) acc.add(ftm.c, B.multiply(ea, eb));
            }
            t.mul[a * B.dim + b] = acc.take();
        }
    validate_algebra(t, false);
    return t;
}

FSharp f_sharp(const Bialgebroid& lam, const SVec& f, const LModule& m, const LModule& n) {
    if (m.act.size() != lam.n() || n.act.size() != lam.n())
        throw Error("DimensionMismatch", "module shapes do not match " + lam.name);
    const auto ft = f_terms(f, lam.n());
    FSharp s;
    s.pair = "(" + m.name + "," + n.name + ")";
    auto on = [&](const LModule& mod, const SVec& x) { return combine(mod.act, x, mod.dim); };
    std::vector<LinMap> tm, sn, tfm, sfn;
    for (Index b = 0; b < lam.m(); ++b) {
        tm.push_back(on(m, lam.target.col[b]));
        sn.push_back(on(n, lam.source.col[b]));
        tfm.push_back(on(m, target_f(lam, ft, b)));
        sfn.push_back(on(n, source_f(lam, ft, b)));
    }
    s.target = balanced_quotient(m.dim, n.dim, op_pairs(tm, sn, lam.generators()));
    s.source = balanced_quotient(m.dim, n.dim, op_pairs(tfm, sfn, f_generators(lam, f)));
    s.map = LinMap(s.source.dim(), s.target.dim());
    for (Index k = 0; k < s.source.dim(); ++k) {
        Index sec = s.source.section(k);
        SVec x = SVec::unit(static_cast<Index>(sec / n.dim)), y = SVec::unit(static_cast<Index>(sec % n.dim));
        Accumulator acc;
        for (const auto& t : ft) acc.add(t.c, tensor(m.act[t.p].apply(x), n.act[t.q].apply(y), n.dim));
        s.map.col[k] = s.target.project(acc.take());
    }
    s.bijective = s.source.dim() == s.target.dim() && ColumnSolver(s.map).injective();
    if (s.bijective) s.inverse = inverse_of(s.map);
    return s;
}

XuCocycle check_xu_cocycle(std::shared_ptr<const Bialgebroid> lamp, SVec f, const std::vector<LModule>& extra) {
    const Bialgebroid& lam = *lamp;
    const std::size_t n = lam.n();
    if (!f.empty() && f.max_index() >= n * n) throw Error("DimensionMismatch", "F must live in Lambda (x) Lambda");
    const auto ft = f_terms(f, n);
    XuCocycle xu{lamp, f, {}};
    Report& r = xu.certificate;

    Accumulator el, er;
    for (const auto& t : ft) {
        el.add(t.c, lam.mul(lam.s(lam.eps(SVec::unit(t.p))), SVec::unit(t.q)));
        er.add(t.c, lam.mul(lam.t(lam.eps(SVec::unit(t.q))), SVec::unit(t.p)));
    }
    SVec left = el.take(), right = er.take();
    r.add("counit (eps diamond id)", left == lam.total.unit, left == lam.total.unit ? "" : "(eps diamond id)F = " + lam.total.describe(left));
    r.add("counit (id diamond eps)", right == lam.total.unit, right == lam.total.unit ? "" : "(id diamond eps)F = " + lam.total.describe(right));
    if (const Check* c = r.first_failure()) throw Error("CounitFailed", c->name, c->witness);

    {
        Accumulator lhs, rhs;
        for (const auto& t : ft) {
            for (const auto& [idx, d] : lam.coproduct[t.p].t) {
                Index u = static_cast<Index>(idx / n), v = static_cast<Index>(idx % n);
                for (const auto& t2 : ft) {
                    const SVec& up = lam.total.prod(u, t2.p);
                    const SVec& vq = lam.total.prod(v, t2.q);
                    Scalar k = t.c * d * t2.c;
                    for (const auto& [i, ci] : up.t)
                        for (const auto& [j, cj] : vq.t) lhs.add(t3idx(i, j, t.q, n, n), k * ci * cj);
                }
            }
            for (const auto& [idx, d] : lam.coproduct[t.q].t) {
                Index u = static_cast<Index>(idx / n), v = static_cast<Index>(idx % n);
                for (const auto& t2 : ft) {
                    const SVec& up = lam.total.prod(u, t2.p);
                    const SVec& vq = lam.total.prod(v, t2.q);
                    Scalar k = t.c * d * t2.c;
                    for (const auto& [i, ci] : up.t)
                        for (const auto& [j, cj] : vq.t) rhs.add(t3idx(t.p, i, j, n, n), k * ci * cj);
                }
            }
        }
        SVec diff = lam.diamond3().project(lhs.take() - rhs.take());
        r.add("cocycle condition", diff.empty(), diff.empty() ? "" : std::to_string(diff.nnz()) + " nonzero coordinates in Lambda diamond Lambda diamond Lambda",
              "(Delta diamond id)F F^12 = (id diamond Delta)F F^23");
        if (!diff.empty()) throw Error("CocycleConditionFailed", "F fails the cocycle condition", r.checks.back().witness);
    }
    try {
        f_twisted_base(lam, f);
        r.add("twisted base associative", true);
    } catch (const Error& e) {
        r.add("twisted base associative", false, e.what());
        throw Error("CocycleConditionFailed", "B^F is not an algebra", e.what());
    }

    std::vector<LModule> fam{base_module(lam), regular_module(lam)};
    fam.insert(fam.end(), extra.begin(), extra.end());
    for (const auto& m : fam)
        for (const auto& nn : fam) {
            FSharp s = f_sharp(lam, f, m, nn);
            std::string dims = std::to_string(s.source.dim()) + " -> " + std::to_string(s.target.dim());
            r.add("F# bijective on " + s.pair, s.bijective, s.bijective ? "" : "rank deficient, " + dims, dims);
        }
    r.note("invertible on tested family", std::to_string(fam.size()) + " modules");
    if (const Check* c = r.first_failure()) throw Error("NotInvertible", c->name, c->witness);
    return xu;
}

XuCocycle trivial_xu_cocycle(std::shared_ptr<const Bialgebroid> lam) {
    SVec one = tensor(lam->total.unit, lam->total.unit, lam->n());
    return check_xu_cocycle(std::move(lam), std::move(one));
}

SVec moyal_twist(const DiffBialgebroid& d, const LinMap& u, const LinMap& v, const Scalar& theta) {
    const FiniteAlgebra& B = d.l.base;
    const std::size_t m = B.dim, n = d.l.n();
    for (const LinMap* w : {&u, &v})
        for (Index a = 0; a < m; ++a)
            for (Index b = 0; b < m; ++b)
                if (w->apply(B.prod(a, b)) != B.multiply(w->col[a], SVec::unit(b)) + B.multiply(SVec::unit(a), w->col[b]))
                    throw Error("BadInput", "twist generator is not a derivation", nm(B, a) + "*" + nm(B, b));
    if (u.then(v) != v.then(u)) throw Error("BadInput", "twist derivations do not commute");
    Accumulator acc;
    LinMap un = LinMap::identity(m), vn = LinMap::identity(m);
    Scalar coef = B.one();
    for (std::size_t k = 0;; ++k) {
        if (op_vector(un).empty() || op_vector(vn).empty()) break;
        if (k > m * m) throw Error("BadInput", "twist series does not terminate");
        if (k > 0) {
            Scalar kk = Scalar(static_cast<long long>(k)).in_field(B.field);
            if (kk.is_zero()) throw Error("BadInput", "k! vanishes in the field before the series terminates");
            coef = coef * theta.in_field(B.field) / kk;
        }
        acc.add(coef, tensor(d.element(un), d.element(vn), n));
        un = un.then(u);
        vn = vn.then(v);
    }
    return acc.take();
}

Bialgebroid twist_bialgebroid_by_F(const XuCocycle& xu) {
    const Bialgebroid& lam = *xu.host;
    const std::size_t n = lam.n();
    const auto ft = f_terms(xu.f, n);
    LModule reg = regular_module(lam);
    FSharp s = f_sharp(lam, xu.f, reg, reg);
    if (!s.bijective) throw Error("NotInvertible", "F# is not bijective on Lambda diamond Lambda");
    Bialgebroid r;
    r.name = lam.name + "^F";
    r.base = f_twisted_base(lam, xu.f);
    r.total = lam.total;
    r.source = LinMap(lam.m(), n);
    r.target = LinMap(lam.m(), n);
    for (Index b = 0; b < lam.m(); ++b) {
        r.source.col[b] = source_f(lam, ft, b);
        r.target.col[b] = target_f(lam, ft, b);
    }
    r.counit = lam.counit;
    r.coproduct.resize(n);
    for (Index x = 0; x < n; ++x) {
        Accumulator acc;
        for (const auto& [idx, d] : lam.coproduct[x].t) {
            Index u = static_cast<Index>(idx / n), v = static_cast<Index>(idx % n);
            for (const auto& t : ft) {
                const SVec& up = lam.total.prod(u, t.p);
                const SVec& vq = lam.total.prod(v, t.q);
                for (const auto& [i, ci] : up.t)
                    for (const auto& [j, cj] : vq.t) acc.add(tidx(i, j, n), d * t.c * ci * cj);
            }
        }
        r.coproduct[x] = s.source.lift(s.inverse.apply(s.target.project(acc.take())));
    }
    require_bialgebroid(r);
    return r;
}

Cocycle dualize_cocycle(const XuCocycle& xu, const DualPairing& p, const Host& host, Report* report) {
    const Bialgebroid& lam = *xu.host;
    const Bialgebroid& L = *host.l;
    if (p.lhs->n() != lam.n() || p.rhs->n() != L.n())
        throw Error("DimensionMismatch", "pairing does not match the cocycle host and L");
    const std::size_t n = L.n(), m = L.m();
    const auto ft = f_terms(xu.f, lam.n());
    std::vector<Accumulator> acc(n * n);
    for (const auto& t : ft)
        for (Index y = 0; y < n; ++y) {
            const SVec& b = p(t.q, y);
            if (b.empty()) continue;
            for (Index x = 0; x < n; ++x)
                for (const auto& [k, ck] : b.t) {
                    const SVec& xt = L.tR()[k].col[x];
                    for (const auto& [z, cz] : xt.t) acc[x * n + y].add(t.c * ck * cz, p(t.p, z));
                }
        }
    std::vector<SVec> table(n * n);
    for (std::size_t i = 0; i < n * n; ++i) table[i] = acc[i].take();
    (void)m;
    Cocycle g = check_cocycle(host, std::move(table));
    if (report) {
        auto fam = default_family(g);
        std::vector<LModule> mods;
        for (const auto& c : fam) mods.push_back(module_from_comodule(p, c));
        for (std::size_t i = 0; i < fam.size(); ++i)
            for (std::size_t j = 0; j < fam.size(); ++j) {
                GammaSharp gs = gamma_sharp(g, fam[i], fam[j]);
                const LModule &mm = mods[i], &nn = mods[j];
                Witness w;
                for (Index k = 0; k < gs.source.dim() && w.ok(); ++k) {
                    Index sec = gs.source.section(k);
                    SVec x = SVec::unit(static_cast<Index>(sec / nn.dim)), y = SVec::unit(static_cast<Index>(sec % nn.dim));
                    Accumulator a;
                    for (const auto& t : ft) a.add(t.c, tensor(mm.act[t.p].apply(x), nn.act[t.q].apply(y), nn.dim));
                    if (gs.target.project(a.take()) != gs.map.col[k]) w.fail("source basis " + std::to_string(k));
                }
                w.report(*report, "F-action identity on " + gs.pair, "Gamma_F#(m (x) n) = F^a.m (x) F_a.n");
            }
    }
    return g;
}

DualPairing twisted_pairing(const XuCocycle& xu, const DualPairing& p, std::shared_ptr<const Bialgebroid> lambda_f,
                            const Cotwist& l_gamma) {
    const Bialgebroid& lam = *xu.host;
    const Bialgebroid& L = *p.rhs;
    const TranslationMap& tm = *l_gamma.gamma.tm;
    const std::size_t n1 = lam.n(), n2 = L.n();
    const auto ft = f_terms(xu.f, n1);
    std::vector<SVec> table(n1 * n2);
    for (Index x = 0; x < n2; ++x) {
        // Per F term: Y_t = X_+ t(<F_a|X_->) in L.
        std::vector<SVec> ys;
        for (const auto& t : ft) {
            Accumulator y;
            for (const auto& [idx, d] : tm.plus_minus[x].t) {
                Index u = static_cast<Index>(idx / n2), v = static_cast<Index>(idx % n2);
                for (const auto& [k, ck] : p(t.q, v).t) y.add(d * ck, L.tR()[k].col[u]);
            }
            ys.push_back(y.take());
        }
        for (Index a = 0; a < n1; ++a) {
            Accumulator acc;
            for (std::size_t i = 0; i < ft.size(); ++i) {
                if (ys[i].empty()) continue;
                acc.add(ft[i].c, p.eval(lam.total.prod(ft[i].p, a), ys[i]));
            }
            table[a * n2 + x] = acc.take();
        }
    }
    return make_pairing(std::move(lambda_f), l_gamma.twisted.l, std::move(table));
}

// ---------------------------------------------------------------- quantized jets

QuantizedJet quantized_jet(const DiffBialgebroid& d, const JetAlgebroid& j, const XuCocycle& xu) {
    const FiniteAlgebra& B = d.l.base;
    const std::size_t m = B.dim;
    DualPairing p = canonical_pairing(d, j);
    Report conf;
    Cocycle g = dualize_cocycle(xu, p, j.host, &conf);
    Cotwist ct = cotwist(g);
    Cocycle sigma = inverse_cocycle(ct);
    auto lamf = std::make_shared<const Bialgebroid>(twist_bialgebroid_by_F(xu));
    DualPairing tp = twisted_pairing(xu, p, lamf, ct);

    const Bialgebroid& LG = *ct.twisted.l;
    const FiniteAlgebra& BG = LG.base;
    auto star = [&](const SVec& a, const SVec& b) { return BG.multiply(a, b); };
    auto J = [&](const SVec& a, const SVec& b) { return j.jet_class(a, b); };
    auto e = [](Index i) { return SVec::unit(i); };
    const SVec& one = B.unit;
    auto at2 = [&](Index a, Index b) { return "a=" + nm(B, a) + ", b=" + nm(B, b); };
    auto at4 = [&](Index a, Index b, Index c, Index dd) {
        return "[" + nm(B, a) + " (x) " + nm(B, b) + "], [" + nm(B, c) + " (x) " + nm(B, dd) + "]";
    };

    {
        Witness ws, wt;
        for (Index b = 0; b < m; ++b) {
            if (LG.s(e(b)) != J(e(b), one)) ws.fail(nm(B, b));
            if (LG.t(e(b)) != J(one, e(b))) wt.fail(nm(B, b));
        }
        ws.report(conf, "source", "s(b) = [b (x) 1]");
        wt.report(conf, "target", "t(b) = [1 (x) b]");
    }
    {
        Witness wp, wg, wi;
        for (Index a = 0; a < m; ++a)
            for (Index b = 0; b < m; ++b)
                for (Index c = 0; c < m; ++c)
                    for (Index dd = 0; dd < m; ++dd) {
                        SVec x = J(e(a), e(b)), y = J(e(c), e(dd));
                        if (wp.ok() && LG.mul(x, y) != J(star(e(a), e(c)), star(e(dd), e(b)))) wp.fail(at4(a, b, c, dd));
                        if (wg.ok() && g.eval(x, y) != B.multiply(B.multiply(star(e(a), e(c)), e(dd)), e(b)))
                            wg.fail(at4(a, b, c, dd));
                        if (wi.ok() && sigma.eval(x, y) != star(B.prod(a, c), star(e(dd), e(b)))) wi.fail(at4(a, b, c, dd));
                    }
        wp.report(conf, "product", "[a (x) b] [c (x) d] = [a*c (x) d*b]");
        wg.report(conf, "cocycle", "Gamma([a (x) b], [c (x) d]) = (a*c) d b");
        wi.report(conf, "inverse cocycle", "Gamma^-1([a (x) b], [c (x) d]) = (ac)*(d*b)");
    }
    {
        Witness wd, we, wm;
        const std::size_t n = LG.n();
        for (Index a = 0; a < m; ++a)
            for (Index b = 0; b < m; ++b) {
                SVec x = J(e(a), e(b));
                if (wd.ok() && !LG.diamond().project(LG.delta(x) - tensor(J(e(a), one), J(one, e(b)), n)).empty())
                    wd.fail(at2(a, b));
                if (we.ok() && LG.eps(x) != star(e(a), e(b))) we.fail(at2(a, b));
                if (wm.ok() && !LG.over_Bbar().project(translate(*ct.twisted.tm, x) - tensor(J(e(a), one), J(e(b), one), n)).empty())
                    wm.fail(at2(a, b));
            }
        wd.report(conf, "coproduct", "Delta([a (x) b]) = [a (x) 1] diamond [1 (x) b]");
        we.report(conf, "counit", "eps([a (x) b]) = a*b");
        wm.report(conf, "translation map", "[a (x) b]_+ (x) [a (x) b]_- = [a (x) 1] (x) [b (x) 1]");
    }
    {
        Witness w;
        for (Index x = 0; x < d.l.n() && w.ok(); ++x) {
            LinMap op = op_matrix(d.ops[x], m);
            for (Index a = 0; a < m && w.ok(); ++a)
                for (Index b = 0; b < m && w.ok(); ++b)
                    if (tp.eval(e(x), J(e(a), e(b))) != star(op.col[a], e(b)))
                        w.fail("D=" + d.l.total.basis[x] + ", " + at2(a, b));
        }
        w.report(conf, "twisted pairing", "[D|[a (x) b]] = D(a)*b");
    }
    if (const Check* f = conf.first_failure()) throw Error("ConformanceFailure", f->name, f->witness);
    QuantizedJet q{lamf, std::move(ct), std::move(sigma), std::move(tp), std::move(conf)};
    return q;
}

}  // namespace hopfalg
