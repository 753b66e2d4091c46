#include "hopfalg/jets.hpp"

#include "hopfalg/errors.hpp"

namespace hopfalg {

namespace {

SVec left_tensor(const FiniteAlgebra& b, const SVec& a) { return tensor(a, b.unit, b.dim); }   // a (x) 1
SVec right_tensor(const FiniteAlgebra& b, const SVec& a) { return tensor(b.unit, a, b.dim); }  // 1 (x) a

}  // namespace

Bialgebroid pair_hopf_algebroid(const FiniteAlgebra& b) {
    const std::size_t m = b.dim, n = m * m;
    Bialgebroid l;
    l.name = "pair(" + b.name + ")";
    l.base = b;
    l.total = enveloping(b);
    l.source = LinMap(m, n);
    l.target = LinMap(m, n);
    for (Index a = 0; a < m; ++a) {
        l.source.col[a] = left_tensor(b, SVec::unit(a));
        l.target.col[a] = right_tensor(b, SVec::unit(a));
    }
    l.counit = multiplication_map(b);
    l.coproduct.resize(n);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j)
            l.coproduct[env_index(b, i, j)] =
                tensor(left_tensor(b, SVec::unit(i)), right_tensor(b, SVec::unit(j)), n);
    require_bialgebroid(l);
    return l;
}

SVec pair_plus_minus(const FiniteAlgebra& b, Index a, Index ap) {
    return tensor(left_tensor(b, SVec::unit(a)), left_tensor(b, SVec::unit(ap)), b.dim * b.dim);
}

SVec pair_bracket(const FiniteAlgebra& b, Index a, Index ap) {
    return tensor(right_tensor(b, SVec::unit(ap)), right_tensor(b, SVec::unit(a)), b.dim * b.dim);
}

LinMap multiplication_map(const FiniteAlgebra& b) {
    LinMap f(b.dim * b.dim, b.dim);
    for (Index i = 0; i < b.dim; ++i)
        for (Index j = 0; j < b.dim; ++j) f.col[env_index(b, i, j)] = b.prod(i, j);
    return f;
}

SVec d_uni(const FiniteAlgebra& b, const SVec& a) { return right_tensor(b, a) - left_tensor(b, a); }

std::vector<SVec> universal_calculus(const FiniteAlgebra& b) { return kernel(multiplication_map(b)); }

const Subspace& JetChain::mu_infinity() const {
    if (!stabilized_at)
        throw Error("NotStabilized", "the chain mu_k did not stabilize within " + std::to_string(cap) + " steps",
                    "dim mu_" + std::to_string(powers.size() - 1) + " = " + std::to_string(powers.back().dim()));
    return powers[*stabilized_at];
}

JetChain jet_chain(const FiniteAlgebra& b, std::size_t cap) {
    JetChain c;
    c.base = b;
    c.env = enveloping(b);
    c.cap = cap;
    c.mu = universal_calculus(b);
    std::vector<LinMap> ops;
    for (Index g : algebra_generators(c.env)) {
        ops.push_back(c.env.left_mult(SVec::unit(g)));
        if (b.commutative) ops.push_back(c.env.right_mult(SVec::unit(g)));
    }
    c.powers.push_back(subspace_closure(Subspace(c.env.dim, c.mu), ops));
    for (std::size_t k = 1; k <= cap; ++k) {
        Subspace next(c.env.dim);
        for (const auto& p : c.powers.back().basis())
            for (const auto& u : c.mu) next.add(c.env.multiply(p, u));
        next = subspace_closure(next, ops);
        if (next == c.powers.back()) {
            c.stabilized_at = k - 1;
            break;
        }
        c.powers.push_back(std::move(next));
    }
    return c;
}

JetSpace jet_space(const JetChain& chain, std::size_t k) {
    JetSpace j;
    j.k = k;
    j.quotient = QuotientSpace(chain.env.dim, chain.mu_k(k).basis());
    if (chain.base.commutative) {
        j.algebra = quotient_algebra(chain.env, j.quotient, "J^" + std::to_string(k) + "(" + chain.base.name + ")");
        validate_algebra(*j.algebra, true);
    }
    return j;
}

Bialgebroid jet_hopf_algebroid(const FiniteAlgebra& b, std::size_t cap) {
    if (!b.commutative) throw Error("NotCommutative", "jet Hopf algebroid needs a commutative base", b.name);
    JetChain chain = jet_chain(b, cap);
    const Subspace& inf = chain.mu_infinity();
    Bialgebroid pair = pair_hopf_algebroid(b);
    std::string name = "J(" + b.name + ")";
    if (inf.dim() == 0) {
        pair.name = name;
        pair.total.name = name;
        pair.reset_cache();
        return pair;
    }
    TranslationMap tm = translation_map(pair);
    Report r = check_hopf_ideal(pair, inf, tm);
    if (const Check* f = r.first_failure()) throw Error("AxiomFailure", "mu_infinity is not a Hopf ideal: " + f->name, f->witness);
    return quotient_hopf_algebroid(pair, inf, name);
}

JetSplitting jet_splitting(const JetChain& chain, std::size_t k) {
    const FiniteAlgebra& b = chain.base;
    const FiniteAlgebra& env = chain.env;
    if (!b.commutative) throw Error("NotCommutative", "jet splitting needs a commutative base", b.name);
    JetSplitting s;
    s.k = k;
    s.jet = jet_space(chain, k);
    const QuotientSpace& jq = s.jet.quotient;
    const std::size_t dm = chain.mu.size();

    LinMap mu_inc(dm, env.dim);
    mu_inc.col = chain.mu;
    ColumnSolver mu_coords(mu_inc);
    auto coords = [&](const SVec& v) {
        auto x = mu_coords.solve(v);
        if (!x) throw Error("InternalError", "vector outside the universal calculus", env.describe(v));
        return *x;
    };
    std::vector<SVec> rel;
    for (const auto& v : chain.mu_k(k).basis()) rel.push_back(coords(v));
    s.omega = QuotientSpace(dm, rel);

    LinMap mult = multiplication_map(b);
    auto pi_rep = [&](const SVec& w) { return w - right_tensor(b, mult.apply(w)); };
    auto pi_of = [&](const SVec& w) { return s.omega.project(coords(pi_rep(w))); };

    s.pi = LinMap(jq.dim(), s.omega.dim());
    for (Index q = 0; q < jq.dim(); ++q) s.pi.col[q] = pi_of(SVec::unit(jq.section(q)));
    s.incl = LinMap(s.omega.dim(), jq.dim());
    for (Index r = 0; r < s.omega.dim(); ++r) s.incl.col[r] = jq.project(chain.mu[s.omega.section(r)]);
    s.prolong = LinMap(b.dim, jq.dim());
    for (Index a = 0; a < b.dim; ++a) s.prolong.col[a] = jq.project(left_tensor(b, SVec::unit(a)));

    Report& r = s.checks;
    r.add("pi o incl = id", s.incl.then(s.pi) == LinMap::identity(s.omega.dim()));
    r.add("dim J^k = dim B + dim Omega^1_k", jq.dim() == b.dim + s.omega.dim(),
          "", std::to_string(jq.dim()) + " = " + std::to_string(b.dim) + " + " + std::to_string(s.omega.dim()));
    r.add("j_k(1) = [1 (x) 1]", s.prolong.apply(b.unit) == jq.project(env.unit));
    {
        Witness w;
        for (Index a = 0; a < b.dim && w.ok(); ++a)
            for (Index c = 0; c < b.dim && w.ok(); ++c) {
                SVec lhs = s.prolong.apply(b.prod(a, c));
                SVec rhs = jq.project(env.multiply(left_tensor(b, SVec::unit(a)), jq.lift(s.prolong.col[c])));
                if (lhs != rhs) w.fail("a=" + b.basis[a] + ", b=" + b.basis[c]);
            }
        w.report(r, "j_k left B-linear");
    }
    {
        Witness w;
        for (Index a = 0; a < b.dim && w.ok(); ++a) {
            if (mult.apply(jq.lift(s.prolong.col[a])) != SVec::unit(a)) w.fail("m(j_k(b)) != b at b=" + b.basis[a]);
            SVec expect = s.omega.project(coords(left_tensor(b, SVec::unit(a)) - right_tensor(b, SVec::unit(a))));
            if (s.pi.apply(s.prolong.col[a]) != expect) w.fail("pi(j_k(b)) at b=" + b.basis[a]);
        }
        w.report(r, "pi(j_k(b)) = [b (x) 1 - 1 (x) b]");
    }
    {
        // w -> (m(w), pi(w)) is a bijection J^k -> B + Omega^1_k, linear for left multiplication by t(B).
        LinMap split(jq.dim(), b.dim + s.omega.dim());
        for (Index q = 0; q < jq.dim(); ++q) {
            SVec w = SVec::unit(jq.section(q));
            std::vector<Term> terms = mult.apply(w).t;
            for (const auto& [i, c] : s.pi.col[q].t) terms.push_back({static_cast<Index>(b.dim + i), c});
            split.col[q] = SVec::from_terms(std::move(terms));
        }
        ColumnSolver cs(split);
        r.add("J^k = B + Omega^1_k bijective", cs.injective() && cs.surjective());
        Witness w;
        for (Index a = 0; a < b.dim && w.ok(); ++a)
            for (Index q = 0; q < jq.dim() && w.ok(); ++q) {
                SVec ta = right_tensor(b, SVec::unit(a));
                SVec w0 = SVec::unit(jq.section(q));
                SVec lhs = pi_of(env.multiply(ta, w0));
                SVec rhs = s.omega.project(coords(env.multiply(ta, pi_rep(w0))));
                if (lhs != rhs) w.fail("a=" + b.basis[a] + ", w=" + env.basis[jq.section(q)]);
            }
        w.report(r, "pi linear for t(B)");
    }
    return s;
}

FirstOrderJet first_order_jet(const FiniteAlgebra& b, const std::vector<SVec>& n) {
    FiniteAlgebra env = enveloping(b);
    LinMap mult = multiplication_map(b);
    Subspace ns(env.dim, n);
    for (const auto& v : ns.basis())
        if (!mult.apply(v).empty()) throw Error("NotSubBimodule", "N is not contained in ker(m)", env.describe(v));
    for (const auto& v : ns.basis())
        for (Index a = 0; a < b.dim; ++a) {
            SVec l = env.multiply(left_tensor(b, SVec::unit(a)), v);
            SVec r = env.multiply(right_tensor(b, SVec::unit(a)), v);
            if (!ns.contains(l) || !ns.contains(r))
                throw Error("NotSubBimodule", "N is not closed under the B-actions", "a=" + b.basis[a] + ", v=" + env.describe(v));
        }
    FirstOrderJet j;
    j.quotient = QuotientSpace(env.dim, ns.basis());
    j.prolong = LinMap(b.dim, j.quotient.dim());
    for (Index a = 0; a < b.dim; ++a) j.prolong.col[a] = j.quotient.project(left_tensor(b, SVec::unit(a)));
    auto mu = universal_calculus(b);
    j.dim_b = b.dim;
    j.dim_omega = mu.size() - ns.dim();
    j.checks.add("dim J^1 = dim B + dim mu/N", j.quotient.dim() == j.dim_b + j.dim_omega, "",
                 std::to_string(j.quotient.dim()) + " = " + std::to_string(j.dim_b) + " + " + std::to_string(j.dim_omega));
    // w -> (m(w), [w - 1 (x) m(w)]) is injective on J^1, hence the decomposition.
    QuotientSpace mu_q(env.dim, ns.basis());
    LinMap split(j.quotient.dim(), b.dim + env.dim);
    for (Index q = 0; q < j.quotient.dim(); ++q) {
        SVec w = SVec::unit(j.quotient.section(q));
        SVec m = mult.apply(w);
        std::vector<Term> terms = m.t;
        for (const auto& [i, c] : mu_q.project(w - right_tensor(b, m)).t) terms.push_back({static_cast<Index>(b.dim + i), c});
        split.col[q] = SVec::from_terms(std::move(terms));
    }
    j.checks.add("J^1 -> B + mu/N injective", ColumnSolver(split).injective());
    bool unit_ok = j.prolong.apply(b.unit) == j.quotient.project(env.unit);
    j.checks.add("j_1(1) = [1 (x) 1]", unit_ok);
    return j;
}

}  // namespace hopfalg
