#include "hopfalg/comodule.hpp"

#include "hopfalg/errors.hpp"

namespace hopfalg {

namespace {

SVec combine(const std::vector<LinMap>& ops, const SVec& b, const SVec& m) {
    Accumulator acc;
    for (const auto& [i, c] : b.t) acc.add(c, ops[i].apply(m));
    return acc.take();
}

std::vector<OpPair> op_pairs(const std::vector<LinMap>& a, const std::vector<LinMap>& b,
                             const std::vector<Index>& gens) {
    std::vector<OpPair> out;
    for (Index g : gens) out.push_back({a[g], b[g]});
    return out;
}

// Applies f to the L factor and g to the M factor of w in L (x) M.
template <class F, class G>
SVec on_factors(const SVec& w, std::size_t dm, F&& f, G&& g) {
    return map_tensor(w, dm, dm, f, g);
}

void check_shapes(const Bialgebroid& l, const Comodule& m) {
    if (m.left.size() != l.m() || m.right.size() != l.m() || m.coaction.size() != m.dim)
        throw Error("DimensionMismatch", "comodule " + m.name + " has the wrong number of actions or coactions");
    for (const auto& op : m.left)
        if (op.src != m.dim || op.dst != m.dim) throw Error("DimensionMismatch", "left action of " + m.name);
    for (const auto& op : m.right)
        if (op.src != m.dim || op.dst != m.dim) throw Error("DimensionMismatch", "right action of " + m.name);
}

}  // namespace

SVec Comodule::act_left(const SVec& b, const SVec& m) const { return combine(left, b, m); }
SVec Comodule::act_right(const SVec& m, const SVec& b) const { return combine(right, b, m); }

SVec Comodule::coact(const SVec& m) const {
    Accumulator acc;
    for (const auto& [i, c] : m.t) acc.add(c, coaction[i]);
    return acc.take();
}

QuotientSpace comodule_diamond(const Bialgebroid& l, const Comodule& m) {
    check_shapes(l, m);
    return balanced_quotient(l.n(), m.dim, op_pairs(l.tL(), m.left, l.generators()));
}

Comodule base_comodule(const Bialgebroid& l) {
    const FiniteAlgebra& B = l.base;
    Comodule c;
    c.name = B.name;
    c.dim = B.dim;
    for (Index b = 0; b < B.dim; ++b) {
        c.left.push_back(B.left_mult(SVec::unit(b)));
        c.right.push_back(B.right_mult(SVec::unit(b)));
        c.coaction.push_back(tensor(l.source.col[b], B.unit, B.dim));
    }
    return c;
}

Comodule coproduct_comodule(const Bialgebroid& l) {
    Comodule c;
    c.name = l.name;
    c.dim = l.n();
    c.left = l.sL();
    c.right = l.sR();
    c.coaction = l.coproduct;
    return c;
}

Comodule regular_comodule(const Bialgebroid& l, const TranslationMap& tm) {
    Comodule c;
    c.name = l.name + "_reg";
    c.dim = l.n();
    c.left = l.tR();
    c.right = l.tL();
    for (const auto& pm : tm.plus_minus) c.coaction.push_back(swap_tensor(pm, l.n(), l.n()));
    return c;
}

TensorComodule tensor_comodule(const Bialgebroid& l, const Comodule& m, const Comodule& n) {
    check_shapes(l, m);
    check_shapes(l, n);
    const std::size_t dm = m.dim, dn = n.dim;
    TensorComodule out;
    out.space = balanced_quotient(dm, dn, op_pairs(m.right, n.left, l.generators()));
    const QuotientSpace& q = out.space;
    const std::size_t dq = q.dim();
    Comodule& c = out.comodule;
    c.name = m.name + " (x)_B " + n.name;
    c.dim = dq;
    for (Index b = 0; b < l.m(); ++b) {
        LinMap lb(dq, dq), rb(dq, dq);
        for (Index k = 0; k < dq; ++k) {
            Index s = q.section(k);
            SVec x = SVec::unit(static_cast<Index>(s / dn)), y = SVec::unit(static_cast<Index>(s % dn));
            lb.col[k] = q.project(tensor(m.left[b].apply(x), y, dn));
            rb.col[k] = q.project(tensor(x, n.right[b].apply(y), dn));
        }
        c.left.push_back(std::move(lb));
        c.right.push_back(std::move(rb));
    }
    for (Index k = 0; k < dq; ++k) {
        Index s = q.section(k);
        const SVec& dx = m.coaction[s / dn];
        const SVec& dy = n.coaction[s % dn];
        Accumulator acc;
        for (const auto& [i, ci] : dx.t)
            for (const auto& [j, cj] : dy.t) {
                SVec xy = l.total.prod(static_cast<Index>(i / dm), static_cast<Index>(j / dn));
                SVec mn = q.project_basis(tidx(static_cast<Index>(i % dm), static_cast<Index>(j % dn), dn));
                Scalar c0 = ci * cj;
                for (const auto& [a, ca] : xy.t)
                    for (const auto& [b, cb] : mn.t) acc.add(tidx(a, b, dq), c0 * ca * cb);
            }
        c.coaction.push_back(acc.take());
    }
    return out;
}

Report verify_comodule(const Bialgebroid& l, const Comodule& m) {
    check_shapes(l, m);
    const FiniteAlgebra& B = l.base;
    const std::size_t n = l.n(), d = m.dim, nb = l.m();
    const QuotientSpace dq = comodule_diamond(l, m);
    auto bn = [&](Index i) { return i < B.basis.size() ? B.basis[i] : "b" + std::to_string(i); };
    auto mn = [&](Index i) { return m.name + "[" + std::to_string(i) + "]"; };
    Report r;

    {
        Witness w;
        for (Index x = 0; x < d && w.ok(); ++x)
            if (m.act_left(B.unit, SVec::unit(x)) != SVec::unit(x)) w.fail("1.m != m at " + mn(x));
        for (Index a = 0; a < nb && w.ok(); ++a)
            for (Index b = 0; b < nb && w.ok(); ++b)
                for (Index x = 0; x < d && w.ok(); ++x) {
                    SVec lhs = m.act_left(B.prod(a, b), SVec::unit(x));
                    SVec rhs = m.left[a].apply(m.left[b].apply(SVec::unit(x)));
                    if (lhs != rhs) w.fail("(ab).m != a.(b.m) at a=" + bn(a) + ", b=" + bn(b) + ", " + mn(x));
                }
        w.report(r, "left action");
    }
    {
        Witness w;
        for (Index x = 0; x < d && w.ok(); ++x)
            if (m.act_right(SVec::unit(x), B.unit) != SVec::unit(x)) w.fail("m.1 != m at " + mn(x));
        for (Index a = 0; a < nb && w.ok(); ++a)
            for (Index b = 0; b < nb && w.ok(); ++b)
                for (Index x = 0; x < d && w.ok(); ++x) {
                    SVec lhs = m.act_right(SVec::unit(x), B.prod(a, b));
                    SVec rhs = m.right[b].apply(m.right[a].apply(SVec::unit(x)));
                    if (lhs != rhs) w.fail("m.(ab) != (m.a).b at a=" + bn(a) + ", b=" + bn(b) + ", " + mn(x));
                }
        w.report(r, "right action");
    }
    {
        Witness w;
        for (Index a = 0; a < nb && w.ok(); ++a)
            for (Index b = 0; b < nb && w.ok(); ++b)
                for (Index x = 0; x < d && w.ok(); ++x)
                    if (m.right[b].apply(m.left[a].apply(SVec::unit(x))) != m.left[a].apply(m.right[b].apply(SVec::unit(x))))
                        w.fail("(a.m).b != a.(m.b) at a=" + bn(a) + ", b=" + bn(b) + ", " + mn(x));
        w.report(r, "actions commute");
    }
    auto ident = [](Index i) { return SVec::unit(i); };
    {
        Witness wl, wr;
        for (Index b = 0; b < nb; ++b)
            for (Index x = 0; x < d; ++x) {
                if (wl.ok()) {
                    SVec lhs = m.coact(m.left[b].apply(SVec::unit(x)));
                    SVec rhs = on_factors(m.coaction[x], d, [&](Index u) { return l.sL()[b].col[u]; }, ident);
                    if (!dq.project(lhs - rhs).empty()) wl.fail("b=" + bn(b) + ", " + mn(x));
                }
                if (wr.ok()) {
                    SVec lhs = m.coact(m.right[b].apply(SVec::unit(x)));
                    SVec rhs = on_factors(m.coaction[x], d, [&](Index u) { return l.sR()[b].col[u]; }, ident);
                    if (!dq.project(lhs - rhs).empty()) wr.fail("b=" + bn(b) + ", " + mn(x));
                }
            }
        wl.report(r, "coaction left B-linear");
        wr.report(r, "coaction right B-linear");
    }
    {
        Witness w;
        for (Index a = 0; a < nb && w.ok(); ++a)
            for (Index x = 0; x < d && w.ok(); ++x) {
                SVec lhs = on_factors(m.coaction[x], d, [&](Index u) { return l.tR()[a].col[u]; }, ident);
                SVec rhs = on_factors(m.coaction[x], d, ident, [&](Index v) { return m.right[a].col[v]; });
                if (!dq.project(lhs - rhs).empty()) w.fail("a=" + bn(a) + ", " + mn(x));
            }
        w.report(r, "coaction in Takeuchi product");
    }
    {
        Witness w;
        for (Index x = 0; x < d && w.ok(); ++x) {
            Accumulator acc;
            for (const auto& [idx, c] : m.coaction[x].t)
                acc.add(c, m.act_left(l.counit.col[idx / d], SVec::unit(static_cast<Index>(idx % d))));
            if (acc.take() != SVec::unit(x)) w.fail("eps(m(-1)).m(0) != m at " + mn(x));
        }
        w.report(r, "counital");
    }
    {
        Witness w;
        std::vector<OpPair> r12, r23;
        for (Index g : l.generators()) {
            r12.push_back({l.tL()[g], l.sL()[g]});
            r23.push_back({l.tL()[g], m.left[g]});
        }
        TripleSpace t3(n, n, d, r12, {}, r23);
        for (Index x = 0; x < d && w.ok(); ++x) {
            const SVec& c = m.coaction[x];
            SVec lhs = map_tensor(c, d, d, [&](Index u) { return l.coproduct[u]; }, ident);
            SVec rhs = map_tensor(c, d, n * d, ident, [&](Index v) { return m.coaction[v]; });
            if (!t3.project(lhs - rhs).empty()) w.fail(mn(x));
        }
        w.report(r, "coassociative", "L diamond L diamond M has dimension " + std::to_string(t3.dim()));
    }
    return r;
}

}  // namespace hopfalg
