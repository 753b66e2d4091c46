#include "doctest.h"

#include <functional>

#include "hopfalg/duality.hpp"
#include "hopfalg/errors.hpp"
#include "hopfalg/examples.hpp"

using namespace hopfalg;

namespace {

void require_pass(const Report& r) {
    for (const auto& c : r.checks) {
        INFO(c.name << " " << c.witness);
        CHECK(c.pass);
    }
}

LinMap from_cols(std::size_t m, const std::vector<SVec>& cols) {
    LinMap d(m, m);
    d.col = cols;
    return d;
}

SVec sv(std::vector<Term> t) { return SVec::from_terms(std::move(t)); }

// Membership in Diff^k straight from the definition: every chain of k+1 deltas
// over basis elements kills D.
bool brute_in_diff(const FiniteAlgebra& b, const LinMap& d, std::size_t k) {
    std::function<bool(const LinMap&, std::size_t)> rec = [&](const LinMap& cur, std::size_t left) {
        if (left == 0) return op_vector(cur).empty();
        for (Index e = 0; e < b.dim; ++e)
            if (!rec(delta_op(b, SVec::unit(e), cur), left - 1)) return false;
        return true;
    };
    return rec(d, k + 1);
}

// x^2 d/dx and y^2 d/dy on BM (basis x^i y^j at 3i + j).
LinMap x2dx() {
    LinMap u(9, 9);
    for (Index i = 1; i < 2; ++i)
        for (Index j = 0; j < 3; ++j) u.col[3 * i + j] = sv({{3 * (i + 1) + j, Scalar(static_cast<long long>(i))}});
    return u;
}
LinMap y2dy() {
    LinMap v(9, 9);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 1; j < 2; ++j) v.col[3 * i + j] = sv({{3 * i + j + 1, Scalar(static_cast<long long>(j))}});
    return v;
}

// a * c = sum_n theta^n/n! u^n(a) v^n(c), evaluated with plain matrix powers.
SVec star_oracle(const FiniteAlgebra& b, const LinMap& u, const LinMap& v, const Scalar& theta, const SVec& a,
                 const SVec& c) {
    SVec out, ua = a, vc = c;
    Scalar coef = b.one();
    for (std::size_t n = 0; n < 8; ++n) {
        if (n > 0) {
            ua = u.apply(ua);
            vc = v.apply(vc);
            if (ua.empty() || vc.empty()) break;
            coef = coef * theta / Scalar(static_cast<long long>(n)).in_field(b.field);
        }
        out += scaled(b.multiply(ua, vc), coef);
    }
    return out;
}

struct MoyalFixture {
    FiniteAlgebra b = examples::moyal_base();
    DiffBialgebroid d = diff_bialgebroid(b);
    JetAlgebroid j = jet_algebroid(b);
    DualPairing p = canonical_pairing(d, j);
    XuCocycle f = check_xu_cocycle(p.lhs, moyal_twist(d, x2dx(), y2dy(), Scalar(1)));
};

const MoyalFixture& moyal() {
    static const MoyalFixture fx;
    return fx;
}

}  // namespace

TEST_CASE("delta operator on B2") {
    FiniteAlgebra b = examples::truncated_polynomial(2);
    const SVec one = SVec::unit(0), x = SVec::unit(1);
    LinMap d = from_cols(2, {SVec(), one});  // 1 -> 0, x -> 1
    LinMap dx = delta_op(b, x, d);
    CHECK(dx.col[0] == scaled(one, Scalar(-1)));
    CHECK(dx.col[1] == x);
    CHECK(op_vector(delta_op(b, one, d)).empty());
    for (Index c = 0; c < 2; ++c)
        for (Index e = 0; e < 2; ++e) CHECK(op_vector(delta_op(b, SVec::unit(e), b.left_mult(SVec::unit(c)))).empty());
}

TEST_CASE("differential operators of B2") {
    FiniteAlgebra b = examples::truncated_polynomial(2);
    Subspace d0 = diff_operators(b, 0), d1 = diff_operators(b, 1), d2 = diff_operators(b, 2);
    CHECK(d0.dim() == 2);
    CHECK(d1.dim() == 3);
    CHECK(d2.dim() == 4);
    // Diff^0 is spanned by left multiplications.
    CHECK(d0 == Subspace(4, {op_vector(b.left_mult(SVec::unit(0))), op_vector(b.left_mult(SVec::unit(1)))}));
    // Diff^1 is {D : D(x) in span{x}}: the coefficient of 1 in D(x) (index 0*2 + 1) vanishes.
    for (const auto& v : d1.basis()) CHECK(v.at(1).is_zero());
    CHECK(d0.includes(Subspace(4)));
    CHECK(d1.includes(d0));
    CHECK(d2.includes(d1));
}

TEST_CASE("kernel computation agrees with the delta-chain definition") {
    for (const auto& b : {examples::truncated_polynomial(3), examples::upper_triangular(), examples::split(2)}) {
        CAPTURE(b.name);
        const std::size_t m = b.dim;
        for (std::size_t k = 0; k < 3; ++k) {
            Subspace dk = diff_operators(b, k);
            for (Index e = 0; e < m * m; ++e) {
                LinMap unit = op_matrix(SVec::unit(e), m);
                CHECK(dk.contains(SVec::unit(e)) == brute_in_diff(b, unit, k));
            }
            for (const auto& v : dk.basis()) CHECK(brute_in_diff(b, op_matrix(v, m), k));
        }
    }
}

TEST_CASE("filtration is multiplicative under composition") {
    FiniteAlgebra b = examples::truncated_polynomial(3);
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) {
            Subspace dj = diff_operators(b, j), dk = diff_operators(b, k), djk = diff_operators(b, j + k);
            for (const auto& u : dj.basis())
                for (const auto& v : dk.basis())
                    CHECK(djk.contains(op_vector(op_matrix(v, 3).then(op_matrix(u, 3)))));
        }
    CHECK(diff_order(b, b.left_mult(SVec::unit(1))) == std::optional<std::size_t>(0));
    LinMap euler = from_cols(3, {SVec(), SVec::unit(1), scaled(SVec::unit(2), Scalar(2))});  // x d/dx
    CHECK(diff_order(b, euler) == std::optional<std::size_t>(1));
    // On functions on two points only multiplication operators are differential.
    CHECK(!diff_order(examples::split(2), op_matrix(SVec::unit(1), 2)).has_value());
}

TEST_CASE("Diff^k and left Bbar-linear maps on jets") {
    FiniteAlgebra b2 = examples::truncated_polynomial(2);
    JetDiffIso i1 = jet_diff_iso(b2, 1);
    require_pass(i1.checks);
    CHECK(i1.dim_diff == 3);
    CHECK(i1.dim_hom == 3);
    JetDiffIso i0 = jet_diff_iso(b2, 0);
    require_pass(i0.checks);
    CHECK(i0.dim_diff == 2);
    CHECK(i0.jet.dim() == 2);
    JetDiffIso ut = jet_diff_iso(examples::upper_triangular(), 1);
    require_pass(ut.checks);
    CHECK(ut.dim_diff == ut.dim_hom);
    // phi_D([a (x) b]) = D(a) b on the identity operator is the multiplication map.
    LinMap phi = i1.phi_of(LinMap::identity(2));
    for (Index q = 0; q < i1.jet.dim(); ++q) {
        Index s = i1.jet.quotient.section(q);
        CHECK(phi.col[q] == b2.prod(s / 2, s % 2));
    }
    // An operator of order 2 does not factor through J^1.
    LinMap d2 = from_cols(2, {SVec(), SVec::unit(0)});
    CHECK_THROWS_WITH_AS(i1.phi_of(d2), doctest::Contains("FactorizationFailure"), Error);
}

TEST_CASE("bialgebroid of differential operators on B2") {
    FiniteAlgebra b = examples::truncated_polynomial(2);
    DiffBialgebroid d = diff_bialgebroid(b);
    require_pass(d.report);
    CHECK(d.l.n() == 4);
    const std::size_t n = 4;
    for (Index c = 0; c < 2; ++c) {
        SVec lc = d.element(b.left_mult(SVec::unit(c)));
        SVec want = tensor(lc, d.l.total.unit, n);
        CHECK(d.l.diamond().project(d.l.delta(lc) - want).empty());
    }
    for (Index x = 0; x < n; ++x) CHECK(d.l.eps(SVec::unit(x)) == d.op(SVec::unit(x)).apply(b.unit));
    CHECK_THROWS_WITH_AS(diff_bialgebroid(examples::upper_triangular()), doctest::Contains("NotCommutative"), Error);
}

TEST_CASE("derivations are primitive in D(BM)") {
    const auto& fx = moyal();
    const std::size_t n = fx.d.l.n();
    CHECK(n == 81);
    for (const LinMap& u : {x2dx(), y2dy()}) {
        SVec e = fx.d.element(u);
        SVec want = tensor(e, fx.d.l.total.unit, n) + tensor(fx.d.l.total.unit, e, n);
        CHECK(fx.d.l.diamond().project(fx.d.l.delta(e) - want).empty());
        CHECK(fx.d.l.eps(e).empty());
    }
}

TEST_CASE("canonical pairing between D(B) and J(B)") {
    FiniteAlgebra b = examples::truncated_polynomial(2);
    DiffBialgebroid d = diff_bialgebroid(b);
    JetAlgebroid j = jet_algebroid(b);
    DualPairing p = canonical_pairing(d, j);
    require_pass(p.report);
    CHECK(p.report.find("axiom 3 (left)") != nullptr);
    for (Index a = 0; a < 2; ++a)
        for (Index c = 0; c < 2; ++c) {
            SVec jc = j.jet_class(SVec::unit(a), SVec::unit(c));
            CHECK(p.eval(d.l.total.unit, jc) == b.prod(a, c));
            CHECK(p.eval(d.l.total.unit, jc) == j.host.l->eps(jc));
        }
    SVec one = j.jet_class(b.unit, b.unit);
    for (Index x = 0; x < 4; ++x) CHECK(p.eval(SVec::unit(x), one) == d.op(SVec::unit(x)).apply(b.unit));

    std::vector<SVec> bad = p.table;
    bad[5] = bad[5] + SVec::unit(1);
    CHECK_THROWS_WITH_AS(make_pairing(p.lhs, p.rhs, bad), doctest::Contains("PairingAxiomFailure"), Error);
    bad.pop_back();
    CHECK_THROWS_WITH_AS(make_pairing(p.lhs, p.rhs, bad), doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("trivial Xu cocycle changes nothing") {
    FiniteAlgebra b = examples::truncated_polynomial(2);
    DiffBialgebroid d = diff_bialgebroid(b);
    JetAlgebroid j = jet_algebroid(b);
    DualPairing p = canonical_pairing(d, j);
    XuCocycle f = trivial_xu_cocycle(p.lhs);
    require_pass(f.certificate);
    Bialgebroid lf = twist_bialgebroid_by_F(f);
    require_pass(structural_equal(lf, d.l));
    Report rep;
    Cocycle g = dualize_cocycle(f, p, j.host, &rep);
    require_pass(rep);
    CHECK(g.table == trivial_cocycle(j.host).table);
    // Gamma_F(1, X) = eps(X).
    for (Index x = 0; x < j.host.l->n(); ++x) CHECK(g.eval(j.host.l->total.unit, SVec::unit(x)) == j.host.l->eps(SVec::unit(x)));
    Cotwist ct = cotwist(g);
    DualPairing tp = twisted_pairing(f, p, std::make_shared<const Bialgebroid>(lf), ct);
    CHECK(tp.table == p.table);
    QuantizedJet q = quantized_jet(d, j, f);
    require_pass(q.conformance);
}

TEST_CASE("Xu cocycle failures") {
    FiniteAlgebra b = examples::truncated_polynomial(2);
    DiffBialgebroid d = diff_bialgebroid(b);
    auto lam = std::make_shared<const Bialgebroid>(d.l);
    const std::size_t n = lam->n();
    const SVec one = lam->total.unit;
    CHECK_THROWS_WITH_AS(check_xu_cocycle(lam, scaled(tensor(one, one, n), Scalar(2))), doctest::Contains("CounitFailed"),
                         Error);
    CHECK_THROWS_WITH_AS(check_xu_cocycle(lam, SVec::unit(static_cast<Index>(n * n))), doctest::Contains("DimensionMismatch"),
                         Error);
}

TEST_CASE("non-associative deformation is not a cocycle") {
    // On B3 the cocycle condition reads (a*b)*c = a*(b*c) for a*b = ab + D(a)D(b);
    // with D = (x -> 1, 1 and x^2 -> 0) it fails at (x, x, x^2).
    FiniteAlgebra b = examples::truncated_polynomial(3);
    DiffBialgebroid d = diff_bialgebroid(b);
    auto lam = std::make_shared<const Bialgebroid>(d.l);
    const std::size_t n = lam->n();
    const SVec one = lam->total.unit, dd = d.element(from_cols(3, {SVec(), SVec::unit(0), SVec()}));
    CHECK(lam->eps(dd).empty());
    SVec f = tensor(one, one, n) + tensor(dd, dd, n);
    CHECK_THROWS_WITH_AS(check_xu_cocycle(lam, f), doctest::Contains("CocycleConditionFailed"), Error);
}

TEST_CASE("Moyal twist of D(BM)") {
    const auto& fx = moyal();
    require_pass(fx.f.certificate);
    const FiniteAlgebra& b = fx.b;
    FiniteAlgebra bf = f_twisted_base(*fx.f.host, fx.f.f);
    const SVec x = SVec::unit(3), y = SVec::unit(1), xy = SVec::unit(4), x2y2 = SVec::unit(8);
    CHECK(bf.multiply(x, y) == xy + x2y2);
    CHECK(bf.multiply(y, x) == xy);
    CHECK(bf.multiply(x, y) - bf.multiply(y, x) == x2y2);
    for (Index a = 0; a < 9; ++a)
        for (Index c = 0; c < 9; ++c)
            CHECK(bf.prod(a, c) == star_oracle(b, x2dx(), y2dy(), Scalar(1), SVec::unit(a), SVec::unit(c)));
    Bialgebroid lf = twist_bialgebroid_by_F(fx.f);
    CHECK(lf.s(b.unit) == lf.total.unit);
    CHECK(lf.base.mul == bf.mul);
}

TEST_CASE("Moyal quantized jet conformance") {
    const auto& fx = moyal();
    QuantizedJet q = quantized_jet(fx.d, fx.j, fx.f);
    require_pass(q.conformance);
    for (const char* form : {"source", "target", "product", "coproduct", "counit", "translation map", "inverse cocycle",
                             "cocycle", "twisted pairing"})
        CHECK(q.conformance.find(form) != nullptr);
    const FiniteAlgebra& bg = q.jet.twisted.l->base;
    CHECK(!bg.commutative);
    const SVec x = SVec::unit(3), y = SVec::unit(1);
    CHECK(bg.multiply(x, y) - bg.multiply(y, x) == SVec::unit(8));
    // Gamma([a (x) b], [c (x) d]) = (a*c) d b with the oracle star product.
    const FiniteAlgebra& b = fx.b;
    for (Index a : {Index(3), Index(4)})
        for (Index c : {Index(1), Index(2)})
            for (Index dd : {Index(0), Index(3)})
                for (Index bb : {Index(0), Index(1)}) {
                    SVec want = b.multiply(b.multiply(star_oracle(b, x2dx(), y2dy(), Scalar(1), SVec::unit(a), SVec::unit(c)),
                                                      SVec::unit(dd)),
                                           SVec::unit(bb));
                    CHECK(q.jet.gamma.eval(fx.j.jet_class(SVec::unit(a), SVec::unit(bb)),
                                           fx.j.jet_class(SVec::unit(c), SVec::unit(dd))) == want);
                }
}

TEST_CASE("Moyal twist with a different theta") {
    const auto& fx = moyal();
    XuCocycle f = check_xu_cocycle(fx.p.lhs, moyal_twist(fx.d, x2dx(), y2dy(), Scalar::fraction(-3, 2)));
    FiniteAlgebra bf = f_twisted_base(*f.host, f.f);
    CHECK(bf.multiply(SVec::unit(3), SVec::unit(1)) == SVec::unit(4) + scaled(SVec::unit(8), Scalar::fraction(-3, 2)));
}

TEST_CASE("twist generators are validated") {
    const auto& fx = moyal();
    LinMap notder = LinMap::identity(9);
    CHECK_THROWS_WITH_AS(moyal_twist(fx.d, notder, y2dy(), Scalar(1)), doctest::Contains("BadInput"), Error);
}

TEST_CASE("prime-field twist with partial derivatives") {
    const std::uint32_t p = 3;
    FiniteAlgebra b = examples::moyal_base(p, 3);
    auto r = [&](long long v) { return Scalar::residue(v, p); };
    LinMap dx(9, 9), dy(9, 9);
    for (Index i = 1; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) dx.col[3 * i + j] = sv({{3 * (i - 1) + j, r(i)}});
    for (Index i = 0; i < 3; ++i)
        for (Index j = 1; j < 3; ++j) dy.col[3 * i + j] = sv({{3 * i + j - 1, r(j)}});
    DiffBialgebroid d = diff_bialgebroid(b);
    JetAlgebroid j = jet_algebroid(b);
    DualPairing pr = canonical_pairing(d, j);
    XuCocycle f = check_xu_cocycle(pr.lhs, moyal_twist(d, dx, dy, r(1)));
    FiniteAlgebra bf = f_twisted_base(*f.host, f.f);
    for (Index a = 0; a < 9; ++a)
        for (Index c = 0; c < 9; ++c) CHECK(bf.prod(a, c) == star_oracle(b, dx, dy, r(1), SVec::unit(a), SVec::unit(c)));
    QuantizedJet q = quantized_jet(d, j, f);
    require_pass(q.conformance);
}
