#include "hopfalg/bialgebroid.hpp"

#include "hopfalg/errors.hpp"

namespace hopfalg {

struct Bialgebroid::Cache {
    std::vector<Index> gens;
    std::vector<LinMap> sL, tL, sR, tR;
    Bimodule reg;
    std::optional<QuotientSpace> diamond, over_Bbar, over_B, upper_B;
    std::optional<TripleSpace> diamond3;
};

namespace {

std::vector<OpPair> pairs(const std::vector<LinMap>& a, const std::vector<LinMap>& b, const std::vector<Index>& gens) {
    std::vector<OpPair> out;
    for (Index g : gens) out.push_back({a[g], b[g]});
    return out;
}

std::string nm(const FiniteAlgebra& a, Index i) { return i < a.basis.size() ? a.basis[i] : "e" + std::to_string(i); }

}  // namespace

const Bialgebroid::Cache& Bialgebroid::cache() const {
    if (cache_) return *cache_;
    auto c = std::make_shared<Cache>();
    if (source.src != m() || source.dst != n() || target.src != m() || target.dst != n() || counit.src != n() ||
        counit.dst != m() || coproduct.size() != n())
        throw Error("DimensionMismatch", "bialgebroid parts do not match the algebra dimensions");
    c->gens = algebra_generators(base);
    for (Index b = 0; b < m(); ++b) {
        c->sL.push_back(total.left_mult(source.col[b]));
        c->tL.push_back(total.left_mult(target.col[b]));
        c->sR.push_back(total.right_mult(source.col[b]));
        c->tR.push_back(total.right_mult(target.col[b]));
    }
    c->reg = Bimodule{name, n(), c->sL, c->tL, c->sR, c->tR};
    cache_ = c;
    return *cache_;
}

const std::vector<LinMap>& Bialgebroid::sL() const { return cache().sL; }
const std::vector<LinMap>& Bialgebroid::tL() const { return cache().tL; }
const std::vector<LinMap>& Bialgebroid::sR() const { return cache().sR; }
const std::vector<LinMap>& Bialgebroid::tR() const { return cache().tR; }
const std::vector<Index>& Bialgebroid::generators() const { return cache().gens; }
const Bimodule& Bialgebroid::regular() const { return cache().reg; }

const QuotientSpace& Bialgebroid::diamond() const {
    auto& c = const_cast<Cache&>(cache());
    if (!c.diamond) c.diamond = balanced_quotient(n(), n(), pairs(c.tL, c.sL, c.gens));
    return *c.diamond;
}

const QuotientSpace& Bialgebroid::over_Bbar() const {
    auto& c = const_cast<Cache&>(cache());
    if (!c.over_Bbar) c.over_Bbar = balanced_quotient(n(), n(), pairs(c.tR, c.tL, c.gens));
    return *c.over_Bbar;
}

const QuotientSpace& Bialgebroid::over_B() const {
    auto& c = const_cast<Cache&>(cache());
    if (!c.over_B) c.over_B = balanced_quotient(n(), n(), pairs(c.sR, c.sL, c.gens));
    return *c.over_B;
}

const QuotientSpace& Bialgebroid::upper_B() const {
    auto& c = const_cast<Cache&>(cache());
    if (!c.upper_B) c.upper_B = balanced_quotient(n(), n(), pairs(c.sL, c.sR, c.gens));
    return *c.upper_B;
}

const TripleSpace& Bialgebroid::diamond3() const {
    auto& c = const_cast<Cache&>(cache());
    if (!c.diamond3) {
        auto r = pairs(c.tL, c.sL, c.gens);
        c.diamond3 = TripleSpace(n(), n(), n(), r, {}, r);
    }
    return *c.diamond3;
}

SVec Bialgebroid::delta(const SVec& x) const {
    Accumulator acc;
    for (const auto& [i, c] : x.t) acc.add(c, coproduct[i]);
    return acc.take();
}

SVec tensor_mul(const FiniteAlgebra& l, const SVec& u, const SVec& v) {
    const std::size_t n = l.dim;
    Accumulator acc;
    for (const auto& [a, ca] : u.t)
        for (const auto& [b, cb] : v.t) {
            const SVec& x = l.prod(static_cast<Index>(a / n), static_cast<Index>(b / n));
            const SVec& y = l.prod(static_cast<Index>(a % n), static_cast<Index>(b % n));
            Scalar c = ca * cb;
            for (const auto& [i, ci] : x.t)
                for (const auto& [j, cj] : y.t) acc.add(tidx(i, j, n), c * ci * cj);
        }
    return acc.take();
}

SVec swap_tensor(const SVec& w, std::size_t n1, std::size_t n2) {
    std::vector<Term> terms;
    terms.reserve(w.t.size());
    for (const auto& [idx, c] : w.t) terms.push_back({tidx(static_cast<Index>(idx % n2), static_cast<Index>(idx / n2), n1), c});
    return SVec::from_terms(std::move(terms));
}

FiniteAlgebra ground_field(std::uint32_t p) {
    FiniteAlgebra k;
    k.name = p ? "F" + std::to_string(p) : "Q";
    k.field = p;
    k.dim = 1;
    k.basis = {"1"};
    k.unit = SVec::unit(0);
    k.mul = {SVec::unit(0)};
    k.commutative = true;
    return k;
}

Bialgebroid bialgebra_over_field(const FiniteAlgebra& h, std::vector<SVec> coproduct, const LinMap& counit,
                                 const std::string& name) {
    Bialgebroid l;
    l.name = name;
    l.base = ground_field(h.field);
    l.total = h;
    l.source = LinMap(1, h.dim);
    l.source.col[0] = h.unit;
    l.target = l.source;
    l.counit = counit;
    l.coproduct = std::move(coproduct);
    return l;
}

Bimodule base_bimodule(const FiniteAlgebra& b) {
    Bimodule m{b.name, b.dim, {}, {}, {}, {}};
    for (Index i = 0; i < b.dim; ++i) {
        SVec e = SVec::unit(i);
        m.left_B.push_back(b.left_mult(e));
        m.right_B.push_back(b.right_mult(e));
        m.left_Bbar.push_back(b.right_mult(e));
        m.right_Bbar.push_back(b.left_mult(e));
    }
    return m;
}

Report verify_bialgebroid(const Bialgebroid& l) {
    Report r;
    const std::size_t n = l.n(), m = l.m();
    l.cache();
    const FiniteAlgebra& L = l.total;
    const FiniteAlgebra& B = l.base;

    {
        Report s = check_map(l.source, MapKind::Algebra, B, L);
        r.add("source is an algebra map", s.ok(), s.first_failure() ? s.first_failure()->witness : "");
    }
    {
        Report t = check_map(l.target, MapKind::AntiAlgebra, B, L);
        r.add("target is an antialgebra map", t.ok(), t.first_failure() ? t.first_failure()->witness : "");
    }
    {
        Witness w;
        for (Index a = 0; a < m && w.ok(); ++a)
            for (Index b = 0; b < m && w.ok(); ++b)
                if (L.multiply(l.source.col[a], l.target.col[b]) != L.multiply(l.target.col[b], l.source.col[a]))
                    w.fail("a=" + nm(B, a) + ", b=" + nm(B, b));
        w.report(r, "source and target commute");
    }
    {
        SVec e1 = l.eps(L.unit);
        r.add("counit unital", e1 == B.unit, e1 == B.unit ? "" : "eps(1) = " + B.describe(e1));
    }
    {
        Witness w;
        for (Index a = 0; a < m && w.ok(); ++a)
            for (Index x = 0; x < n && w.ok(); ++x) {
                SVec ex = l.counit.col[x];
                if (l.eps(l.sL()[a].col[x]) != B.multiply(SVec::unit(a), ex))
                    w.fail("eps(s(a)X) != a eps(X) at a=" + nm(B, a) + ", X=" + nm(L, x));
                else if (l.eps(l.tL()[a].col[x]) != B.multiply(ex, SVec::unit(a)))
                    w.fail("eps(t(a)X) != eps(X) a at a=" + nm(B, a) + ", X=" + nm(L, x));
            }
        w.report(r, "counit B^e-linear");
    }
    {
        Witness w;
        for (Index x = 0; x < n && w.ok(); ++x)
            for (Index y = 0; y < n && w.ok(); ++y) {
                SVec xy = l.eps(L.prod(x, y));
                SVec ey = l.counit.col[y];
                SVec via_s = l.eps(L.multiply(SVec::unit(x), l.s(ey)));
                SVec via_t = l.eps(L.multiply(SVec::unit(x), l.t(ey)));
                if (xy != via_s || xy != via_t) w.fail("X=" + nm(L, x) + ", Y=" + nm(L, y));
            }
        w.report(r, "counit character");
    }
    const QuotientSpace& dq = l.diamond();
    {
        Witness w;
        for (Index x = 0; x < n && w.ok(); ++x)
            if (!takeuchi_member(l.regular(), l.regular(), dq, l.coproduct[x], l.generators()))
                w.fail("X=" + nm(L, x));
        w.report(r, "coproduct in Takeuchi product");
    }
    {
        Witness w;
        for (Index x = 0; x < n && w.ok(); ++x) {
            Accumulator left, right;
            for (const auto& [idx, c] : l.coproduct[x].t) {
                Index u = static_cast<Index>(idx / n), v = static_cast<Index>(idx % n);
                left.add(c, L.multiply(l.s(l.counit.col[u]), SVec::unit(v)));
                right.add(c, L.multiply(l.t(l.counit.col[v]), SVec::unit(u)));
            }
            SVec e = SVec::unit(x);
            if (left.take() != e) w.fail("s(eps(X1))X2 != X at X=" + nm(L, x));
            else if (right.take() != e) w.fail("t(eps(X2))X1 != X at X=" + nm(L, x));
        }
        w.report(r, "counital");
    }
    {
        Witness w;
        for (Index x = 0; x < n && w.ok(); ++x) {
            SVec d = l.coproduct[x];
            // (Delta (x) id): first output factor has dimension n^2, second n; (id (x) Delta) the reverse.
            SVec lhs = map_tensor(d, n, n, [&](Index u) { return l.coproduct[u]; }, [](Index v) { return SVec::unit(v); });
            SVec rhs = map_tensor(d, n, n * n, [](Index u) { return SVec::unit(u); }, [&](Index v) { return l.coproduct[v]; });
            if (!l.diamond3().project(lhs - rhs).empty()) w.fail("X=" + nm(L, x));
        }
        w.report(r, "coassociative");
    }
    {
        Witness w;
        SVec one = tensor(L.unit, L.unit, n);
        if (!dq.project(l.delta(L.unit) - one).empty()) w.fail("Delta(1) != 1 diamond 1");
        for (Index x = 0; x < n && w.ok(); ++x)
            for (Index y = 0; y < n && w.ok(); ++y) {
                SVec lhs = l.delta(L.prod(x, y));
                SVec rhs = tensor_mul(L, l.coproduct[x], l.coproduct[y]);
                if (!dq.project(lhs - rhs).empty()) w.fail("X=" + nm(L, x) + ", Y=" + nm(L, y));
            }
        w.report(r, "coproduct multiplicative");
    }
    {
        Witness w;
        for (Index a = 0; a < m && w.ok(); ++a) {
            SVec sa = l.source.col[a], ta = l.target.col[a];
            if (!dq.project(l.delta(sa) - tensor(sa, L.unit, n)).empty()) w.fail("Delta(s(a)) at a=" + nm(B, a));
            else if (!dq.project(l.delta(ta) - tensor(L.unit, ta, n)).empty()) w.fail("Delta(t(a)) at a=" + nm(B, a));
        }
        w.report(r, "coproduct on source and target");
    }
    return r;
}

void require_bialgebroid(const Bialgebroid& l) {
    Report r = verify_bialgebroid(l);
    if (const Check* f = r.first_failure()) throw Error("AxiomFailure", l.name + ": " + f->name, f->witness);
}

namespace {

// lambda: L (x)_Bbar L -> L diamond L, X (x) Y |-> X1 (x) X2 Y, on quotient coordinates.
LinMap lambda_matrix(const Bialgebroid& l) {
    const std::size_t n = l.n();
    const QuotientSpace& src = l.over_Bbar();
    const QuotientSpace& dst = l.diamond();
    LinMap f(src.dim(), dst.dim());
    for (Index q = 0; q < src.dim(); ++q) {
        Index amb = src.section(q);
        Index x = static_cast<Index>(amb / n), y = static_cast<Index>(amb % n);
        SVec img = map_tensor(l.coproduct[x], n, n, [](Index u) { return SVec::unit(u); },
                              [&](Index v) { return l.total.prod(v, y); });
        f.col[q] = dst.project(img);
    }
    return f;
}

// mu: L (x)_B L -> L diamond L, X (x) Y |-> X1 Y (x) X2.
LinMap mu_matrix(const Bialgebroid& l) {
    const std::size_t n = l.n();
    const QuotientSpace& src = l.over_B();
    const QuotientSpace& dst = l.diamond();
    LinMap f(src.dim(), dst.dim());
    for (Index q = 0; q < src.dim(); ++q) {
        Index amb = src.section(q);
        Index x = static_cast<Index>(amb / n), y = static_cast<Index>(amb % n);
        SVec img = map_tensor(l.coproduct[x], n, n, [&](Index u) { return l.total.prod(u, y); },
                              [](Index v) { return SVec::unit(v); });
        f.col[q] = dst.project(img);
    }
    return f;
}

std::vector<SVec> invert_on(const Bialgebroid& l, const LinMap& f, const QuotientSpace& src, bool unit_first,
                            const char* err, const char* what) {
    ColumnSolver cs(f);
    if (!cs.injective() || !cs.surjective())
        throw Error(err, std::string(what) + " is not bijective: rank " + std::to_string(cs.rank()) + " on " +
                             std::to_string(f.src) + " -> " + std::to_string(f.dst),
                    "rank defect " + std::to_string(std::max(f.src, f.dst) - cs.rank()));
    const std::size_t n = l.n();
    std::vector<SVec> out(n);
    for (Index x = 0; x < n; ++x) {
        SVec rhs = unit_first ? tensor(l.total.unit, SVec::unit(x), n) : tensor(SVec::unit(x), l.total.unit, n);
        auto sol = cs.solve(l.diamond().project(rhs));
        if (!sol) throw Error(err, std::string(what) + " has no preimage", "X=" + nm(l.total, x));
        out[x] = src.lift(*sol);
    }
    return out;
}

}  // namespace

TranslationMap translation_map(const Bialgebroid& l) {
    TranslationMap tm;
    tm.plus_minus = invert_on(l, lambda_matrix(l), l.over_Bbar(), false, "NotLeftHopf", "lambda");
    return tm;
}

std::vector<SVec> anti_translation_map(const Bialgebroid& l) {
    return invert_on(l, mu_matrix(l), l.over_B(), true, "NotAntiLeftHopf", "mu");
}

SVec translate(const TranslationMap& tm, const SVec& x) {
    Accumulator acc;
    for (const auto& [i, c] : x.t) acc.add(c, tm.plus_minus[i]);
    return acc.take();
}

namespace {

template <class F>
void each_term(const SVec& w, std::size_t n2, F&& f) {
    for (const auto& [idx, c] : w.t) f(static_cast<Index>(idx / n2), static_cast<Index>(idx % n2), c);
}

}  // namespace

Report verify_translation_identities(const Bialgebroid& l, const TranslationMap& tm) {
    Report r;
    const std::size_t n = l.n(), m = l.m();
    const FiniteAlgebra& L = l.total;
    const QuotientSpace& dq = l.diamond();
    const QuotientSpace& bq = l.over_Bbar();
    const auto& T = tm.plus_minus;
    auto e = [](Index i) { return SVec::unit(i); };

    {  // (1) X+(1) diamond X+(2) X- = X diamond 1
        Witness w;
        for (Index x = 0; x < n && w.ok(); ++x) {
            Accumulator acc;
            each_term(T[x], n, [&](Index p, Index q, const Scalar& c) {
                each_term(l.coproduct[p], n, [&](Index u, Index v, const Scalar& d) {
                    for (const auto& [k, ck] : L.prod(v, q).t) acc.add(tidx(u, k, n), c * d * ck);
                });
            });
            if (!dq.project(acc.take() - tensor(e(x), L.unit, n)).empty()) w.fail("X=" + nm(L, x));
        }
        w.report(r, "identity 1");
    }
    {  // (2) X(1)+ (x)_Bbar X(1)- X(2) = X (x) 1
        Witness w;
        for (Index x = 0; x < n && w.ok(); ++x) {
            Accumulator acc;
            each_term(l.coproduct[x], n, [&](Index u, Index v, const Scalar& c) {
                each_term(T[u], n, [&](Index p, Index q, const Scalar& d) {
                    for (const auto& [k, ck] : L.prod(q, v).t) acc.add(tidx(p, k, n), c * d * ck);
                });
            });
            if (!bq.project(acc.take() - tensor(e(x), L.unit, n)).empty()) w.fail("X=" + nm(L, x));
        }
        w.report(r, "identity 2");
    }
    {  // (3) (XY)+ (x) (XY)- = X+Y+ (x) Y-X-
        Witness w;
        std::vector<SVec> Tq(n);
        for (Index x = 0; x < n; ++x) Tq[x] = bq.project(T[x]);
        for (Index x = 0; x < n && w.ok(); ++x)
            for (Index y = 0; y < n && w.ok(); ++y) {
                Accumulator acc;
                each_term(T[x], n, [&](Index p, Index q, const Scalar& c) {
                    each_term(T[y], n, [&](Index p2, Index q2, const Scalar& d) {
                        const SVec& a = L.prod(p, p2);
                        const SVec& b = L.prod(q2, q);
                        for (const auto& [i, ci] : a.t)
                            for (const auto& [j, cj] : b.t) acc.add(tidx(i, j, n), c * d * ci * cj);
                    });
                });
                SVec lhs;
                {
                    Accumulator a2;
                    for (const auto& [k, ck] : L.prod(x, y).t) a2.add(ck, Tq[k]);
                    lhs = a2.take();
                }
                if (lhs != bq.project(acc.take())) w.fail("X=" + nm(L, x) + ", Y=" + nm(L, y));
            }
        w.report(r, "identity 3");
    }
    {  // (4) 1+ (x) 1- = 1 (x) 1
        SVec d = bq.project(translate(tm, L.unit) - tensor(L.unit, L.unit, n));
        r.add("identity 4", d.empty(), d.empty() ? "" : "X=1");
    }
    {  // (5) X+(1) diamond X+(2) (x)_Bbar X- = X(1) diamond X(2)+ (x)_Bbar X(2)-
        auto r12 = pairs(l.tL(), l.sL(), l.generators());
        auto r23 = pairs(l.tR(), l.tL(), l.generators());
        TripleSpace ts(n, n, n, r12, {}, r23);
        Witness w;
        for (Index x = 0; x < n && w.ok(); ++x) {
            Accumulator lhs, rhs;
            each_term(T[x], n, [&](Index p, Index q, const Scalar& c) {
                each_term(l.coproduct[p], n, [&](Index u, Index v, const Scalar& d) { lhs.add(t3idx(u, v, q, n, n), c * d); });
            });
            each_term(l.coproduct[x], n, [&](Index u, Index v, const Scalar& c) {
                each_term(T[v], n, [&](Index p, Index q, const Scalar& d) { rhs.add(t3idx(u, p, q, n, n), c * d); });
            });
            if (!ts.project(lhs.take() - rhs.take()).empty()) w.fail("X=" + nm(L, x));
        }
        w.report(r, "identity 5");
    }
    {  // (6) X+ (x) X-(1) (x) X-(2) = X++ (x) X- (x) X+-, stored in factor order (1,3,2)
        auto r12 = pairs(l.tR(), l.tL(), l.generators());
        auto r23 = pairs(l.sL(), l.tL(), l.generators());
        TripleSpace ts(n, n, n, r12, {}, r23);
        Witness w;
        for (Index x = 0; x < n && w.ok(); ++x) {
            Accumulator lhs, rhs;
            each_term(T[x], n, [&](Index p, Index q, const Scalar& c) {
                each_term(l.coproduct[q], n, [&](Index u, Index v, const Scalar& d) { lhs.add(t3idx(p, v, u, n, n), c * d); });
                each_term(T[p], n, [&](Index p2, Index q2, const Scalar& d) { rhs.add(t3idx(p2, q2, q, n, n), c * d); });
            });
            if (!ts.project(lhs.take() - rhs.take()).empty()) w.fail("X=" + nm(L, x));
        }
        w.report(r, "identity 6");
    }
    {  // (7) X = X+ t(eps(X-))
        Witness w;
        for (Index x = 0; x < n && w.ok(); ++x) {
            Accumulator acc;
            each_term(T[x], n, [&](Index p, Index q, const Scalar& c) {
                acc.add(c, L.multiply(e(p), l.t(l.counit.col[q])));
            });
            if (acc.take() != e(x)) w.fail("X=" + nm(L, x));
        }
        w.report(r, "identity 7");
    }
    {  // (8) X+ X- = s(eps(X))
        Witness w;
        for (Index x = 0; x < n && w.ok(); ++x) {
            Accumulator acc;
            each_term(T[x], n, [&](Index p, Index q, const Scalar& c) { acc.add(c, L.prod(p, q)); });
            if (acc.take() != l.s(l.counit.col[x])) w.fail("X=" + nm(L, x));
        }
        w.report(r, "identity 8");
    }
    {  // (9) a X+ b (x) b' X- a' = (a a'-bar X b b'-bar)+-, one scalar at a time, then jointly on small inputs
        Witness w;
        auto lhs_of = [&](const SVec& tx, const SVec& a, const SVec& ap, const SVec& b, const SVec& bp) {
            SVec sa = l.s(a), sap = l.s(ap), sb = l.s(b), sbp = l.s(bp);
            Accumulator acc;
            each_term(tx, n, [&](Index p, Index q, const Scalar& c) {
                SVec left = L.multiply(sa, e(p), sb);
                SVec right = L.multiply(sbp, e(q), sap);
                for (const auto& [i, ci] : left.t)
                    for (const auto& [j, cj] : right.t) acc.add(tidx(i, j, n), c * ci * cj);
            });
            return bq.project(acc.take());
        };
        auto rhs_of = [&](Index x, const SVec& a, const SVec& ap, const SVec& b, const SVec& bp) {
            SVec y = L.multiply(L.multiply(l.s(a), l.t(ap)), e(x));
            y = L.multiply(L.multiply(y, l.s(b)), l.t(bp));
            return bq.project(translate(tm, y));
        };
        const SVec& one = l.base.unit;
        for (Index x = 0; x < n && w.ok(); ++x)
            for (Index a = 0; a < m && w.ok(); ++a) {
                SVec ea = e(a);
                const char* which = nullptr;
                if (lhs_of(T[x], ea, one, one, one) != rhs_of(x, ea, one, one, one)) which = "a";
                else if (lhs_of(T[x], one, ea, one, one) != rhs_of(x, one, ea, one, one)) which = "a'";
                else if (lhs_of(T[x], one, one, ea, one) != rhs_of(x, one, one, ea, one)) which = "b";
                else if (lhs_of(T[x], one, one, one, ea) != rhs_of(x, one, one, one, ea)) which = "b'";
                if (which) w.fail(std::string("scalar ") + which + "=" + nm(l.base, a) + ", X=" + nm(L, x));
            }
        std::string detail = "single-scalar forms";
        if (n * m * m * m * m <= 20000) {
            detail += " and joint form";
            for (Index x = 0; x < n && w.ok(); ++x)
                for (Index a = 0; a < m && w.ok(); ++a)
                    for (Index ap = 0; ap < m && w.ok(); ++ap)
                        for (Index b = 0; b < m && w.ok(); ++b)
                            for (Index bp = 0; bp < m && w.ok(); ++bp)
                                if (lhs_of(T[x], e(a), e(ap), e(b), e(bp)) != rhs_of(x, e(a), e(ap), e(b), e(bp)))
                                    w.fail("X=" + nm(L, x) + ", a=" + nm(l.base, a) + ", a'=" + nm(l.base, ap) +
                                           ", b=" + nm(l.base, b) + ", b'=" + nm(l.base, bp));
        }
        w.report(r, "identity 9", detail);
    }
    {  // (10) t(b) X+ (x) X- = X+ (x) X- t(b)
        Witness w;
        for (Index x = 0; x < n && w.ok(); ++x)
            for (Index b = 0; b < m && w.ok(); ++b) {
                SVec lhs = apply_tensor(&l.tL()[b], nullptr, T[x], n);
                SVec rhs = apply_tensor(nullptr, &l.tR()[b], T[x], n);
                if (!bq.project(lhs - rhs).empty()) w.fail("X=" + nm(L, x) + ", b=" + nm(l.base, b));
            }
        w.report(r, "identity 10");
    }
    return r;
}

namespace {

// Span of the projections of I (x) L + L (x) I inside a quotient of L (x) L.
Subspace two_sided_span(const QuotientSpace& q, const std::vector<SVec>& ideal, std::size_t n) {
    Subspace s(q.dim());
    for (const auto& i : ideal)
        for (Index j = 0; j < n; ++j) {
            s.add(q.project(tensor(i, SVec::unit(j), n)));
            s.add(q.project(tensor(SVec::unit(j), i, n)));
        }
    return s;
}

}  // namespace

Report check_hopf_ideal(const Bialgebroid& l, const Subspace& ideal, const TranslationMap& tm,
                        const std::vector<SVec>& bracket) {
    Report r;
    const std::size_t n = l.n(), m = l.m();
    const FiniteAlgebra& L = l.total;
    auto basis = ideal.basis();
    {
        Witness w;
        for (std::size_t k = 0; k < basis.size() && w.ok(); ++k)
            for (Index j = 0; j < n && w.ok(); ++j) {
                if (!ideal.contains(L.multiply(SVec::unit(j), basis[k]))) w.fail("e_j i with j=" + nm(L, j));
                else if (!ideal.contains(L.multiply(basis[k], SVec::unit(j)))) w.fail("i e_j with j=" + nm(L, j));
            }
        w.report(r, "two-sided ideal");
    }
    {
        Witness w;
        for (std::size_t k = 0; k < basis.size() && w.ok(); ++k)
            for (Index b = 0; b < m && w.ok(); ++b)
                if (!ideal.contains(l.sL()[b].apply(basis[k])) || !ideal.contains(l.tL()[b].apply(basis[k])))
                    w.fail("b=" + nm(l.base, b));
        w.report(r, "B^e-submodule");
    }
    {
        Witness w;
        Subspace span = two_sided_span(l.diamond(), basis, n);
        for (std::size_t k = 0; k < basis.size() && w.ok(); ++k) {
            if (!l.eps(basis[k]).empty()) w.fail("eps(i) != 0 for i=" + L.describe(basis[k]));
            else if (!span.contains(l.diamond().project(l.delta(basis[k]))))
                w.fail("Delta(i) outside I diamond L + L diamond I for i=" + L.describe(basis[k]));
        }
        w.report(r, "coideal", "includes eps(I) = 0");
    }
    {
        Witness w;
        Subspace span = two_sided_span(l.over_Bbar(), basis, n);
        for (std::size_t k = 0; k < basis.size() && w.ok(); ++k)
            if (!span.contains(l.over_Bbar().project(translate(tm, basis[k])))) w.fail("i=" + L.describe(basis[k]));
        w.report(r, "translation closure");
    }
    {
        std::vector<SVec> br = bracket;
        std::string note;
        if (br.empty()) {
            try {
                br = anti_translation_map(l);
            } catch (const Error& err) {
                note = std::string("skipped: ") + err.kind();
            }
        }
        if (br.empty()) {
            r.note("anti-translation closure", note);
        } else {
            Witness w;
            Subspace span = two_sided_span(l.upper_B(), basis, n);
            for (std::size_t k = 0; k < basis.size() && w.ok(); ++k) {
                Accumulator acc;
                for (const auto& [i, c] : basis[k].t) acc.add(c, br[i]);
                if (!span.contains(l.upper_B().project(swap_tensor(acc.take(), n, n))))
                    w.fail("i=" + L.describe(basis[k]));
            }
            w.report(r, "anti-translation closure", "X[-] (x)^B X[+] tested in the (x)^B quotient");
        }
    }
    return r;
}

Bialgebroid quotient_hopf_algebroid(const Bialgebroid& l, const Subspace& ideal, const std::string& name) {
    const std::size_t n = l.n();
    QuotientSpace q(n, ideal.basis());
    Bialgebroid out;
    out.name = name.empty() ? l.name + "/I" : name;
    out.base = l.base;
    out.total = quotient_algebra(l.total, q, out.name);
    const std::size_t d = q.dim();
    out.source = LinMap(l.m(), d);
    out.target = LinMap(l.m(), d);
    for (Index b = 0; b < l.m(); ++b) {
        out.source.col[b] = q.project(l.source.col[b]);
        out.target.col[b] = q.project(l.target.col[b]);
    }
    out.counit = LinMap(d, l.m());
    out.coproduct.resize(d);
    for (Index k = 0; k < d; ++k) {
        Index x = q.section(k);
        out.counit.col[k] = l.counit.col[x];
        out.coproduct[k] = map_tensor(l.coproduct[x], n, d, [&](Index u) { return q.project_basis(u); },
                                      [&](Index v) { return q.project_basis(v); });
    }
    require_bialgebroid(out);
    return out;
}

Report structural_equal(const Bialgebroid& a, const Bialgebroid& b) {
    Report r;
    bool dims = a.n() == b.n() && a.m() == b.m();
    r.add("dimensions", dims, dims ? "" : "(" + std::to_string(a.n()) + "," + std::to_string(a.m()) + ") vs (" +
                                            std::to_string(b.n()) + "," + std::to_string(b.m()) + ")");
    if (!dims) return r;
    r.add("base product", a.base.mul == b.base.mul && a.base.unit == b.base.unit);
    r.add("total product", a.total.mul == b.total.mul && a.total.unit == b.total.unit);
    r.add("source", a.source == b.source);
    r.add("target", a.target == b.target);
    r.add("counit", a.counit == b.counit);
    bool same_q = a.diamond().same_as(b.diamond());
    r.add("diamond quotient", same_q);
    if (same_q) {
        Witness w;
        for (Index x = 0; x < a.n() && w.ok(); ++x)
            if (a.diamond().project(a.coproduct[x]) != b.diamond().project(b.coproduct[x]))
                w.fail("X=" + nm(a.total, x));
        w.report(r, "coproduct");
    }
    return r;
}

}  // namespace hopfalg
