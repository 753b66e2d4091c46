#include "doctest.h"

#include "hopfalg/errors.hpp"
#include "hopfalg/examples.hpp"
#include "hopfalg/jets.hpp"

using namespace hopfalg;

namespace {

// Dense brute-force rank of the balanced relations over all base basis elements.
std::size_t brute_balanced_dim(const std::vector<LinMap>& a, const std::vector<LinMap>& b, std::size_t n) {
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t k = 0; k < a.size(); ++k)
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) {
                std::vector<Scalar> row(n * n);
                for (const auto& [p, c] : a[k].col[i].t) row[p * n + j] += c;
                for (const auto& [q, c] : b[k].col[j].t) row[i * n + q] -= c;
                rows.push_back(row);
            }
    return n * n - rref(Matrix::from_rows(rows)).pivots.size();
}

}  // namespace

TEST_CASE("algebra fixtures validate") {
    auto b3 = examples::split(3);
    CHECK(b3.commutative);
    auto b2 = examples::truncated_polynomial(2);
    CHECK(b2.prod(1, 1).empty());
    CHECK_FALSE(examples::upper_triangular().commutative);
}

TEST_CASE("bad unit is rejected") {
    AlgebraSpec s;
    s.name = "bad";
    s.dim = 2;
    s.basis = {"e1", "e2"};
    s.unit = {Scalar(1), Scalar(0)};
    s.mul = {{0, 0, 1, Scalar(1)}};
    try {
        make_algebra(s);
        FAIL("expected BadUnit");
    } catch (const Error& e) {
        CHECK(std::string(e.kind()) == "BadUnit");
        CHECK_FALSE(e.witness().empty());
    }
}

TEST_CASE("non-associative structure constants are rejected") {
    AlgebraSpec s;
    s.name = "nonassoc";
    s.dim = 3;
    s.basis = {"1", "a", "b"};
    s.unit = {Scalar(1), Scalar(0), Scalar(0)};
    s.mul = {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {0, 2, 2, 1}, {2, 0, 2, 1}, {1, 1, 2, 1}, {1, 2, 1, 1}};
    // (aa)b = bb = 0 but a(ab) = aa = b.
    CHECK_THROWS_AS(make_algebra(s), Error);
}

TEST_CASE("opposite transposes the structure constants and is an involution") {
    auto t = examples::upper_triangular();
    auto o = opposite(t);
    CHECK(o.prod(0, 1).empty());
    CHECK(o.prod(1, 0) == SVec::unit(1));
    CHECK(opposite(o).mul == t.mul);
    CHECK(o.unit == t.unit);
    auto b3 = examples::split(3);
    CHECK(opposite(b3).mul == b3.mul);
}

TEST_CASE("enveloping algebra") {
    auto b2 = examples::truncated_polynomial(2);
    auto e = enveloping(b2);
    CHECK(e.dim == 4);
    validate_algebra(e, true);
    auto ut = examples::upper_triangular();
    auto eu = enveloping(ut);
    validate_algebra(eu, false);
    CHECK_FALSE(eu.commutative);
    // (a (x) 1) and (1 (x) b) commute.
    for (Index a = 0; a < 3; ++a)
        for (Index b = 0; b < 3; ++b) {
            SVec sa = tensor(SVec::unit(a), ut.unit, 3), tb = tensor(ut.unit, SVec::unit(b), 3);
            CHECK(eu.multiply(sa, tb) == eu.multiply(tb, sa));
        }
}

TEST_CASE("check_map detects a non-unital map") {
    auto b2 = examples::truncated_polynomial(2);
    LinMap f(2, 2);
    f.col[0] = SVec::unit(0) + SVec::unit(1);  // 1 -> 1 + x
    f.col[1] = SVec::unit(1);
    auto r = check_map(f, MapKind::Algebra, b2, b2);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.find("unit preserved")->pass);
    auto p = pair_hopf_algebroid(examples::split(3));
    CHECK(check_map(p.source, MapKind::Algebra, p.base, p.total).ok());
    CHECK(check_map(p.target, MapKind::AntiAlgebra, p.base, p.total).ok());
    CHECK(check_map(p.target, MapKind::Algebra, p.base, p.total).ok());
}

TEST_CASE("diamond product dimension matches brute force") {
    auto l = pair_hopf_algebroid(examples::truncated_polynomial(2));
    CHECK(l.diamond().dim() == 8);
    CHECK(brute_balanced_dim(l.tL(), l.sL(), l.n()) == 8);
    auto l3 = pair_hopf_algebroid(examples::split(3));
    CHECK(l3.over_Bbar().dim() == brute_balanced_dim(l3.tR(), l3.tL(), l3.n()));
    CHECK(l3.over_B().dim() == brute_balanced_dim(l3.sR(), l3.sL(), l3.n()));
    CHECK(l3.upper_B().dim() == brute_balanced_dim(l3.sL(), l3.sR(), l3.n()));
}

TEST_CASE("generator relations agree with full-basis relations") {
    auto l = pair_hopf_algebroid(examples::moyal_base());
    CHECK(l.generators().size() == 2);
    std::vector<std::pair<LinMap, LinMap>> all;
    for (Index b = 0; b < l.m(); ++b) all.push_back({l.tL()[b], l.sL()[b]});
    CHECK(balanced_quotient(l.n(), l.n(), all).same_as(l.diamond()));
}

TEST_CASE("balanced tensor with free rank one modules over B3") {
    auto b3 = examples::split(3);
    Bimodule m = base_bimodule(b3);
    auto t = balanced_tensor(m, m, BalancedKind::OverBbar);
    CHECK(t.space.dim() == 3);
    // M (x)_B B = M.
    CHECK(balanced_tensor(m, m, BalancedKind::OverB).space.dim() == 3);
    Bimodule bare{"bare", 3, {}, {}, {}, {}};
    CHECK_THROWS_AS(balanced_tensor(bare, m, BalancedKind::Diamond), Error);
}

TEST_CASE("Takeuchi subspace") {
    auto l = pair_hopf_algebroid(examples::truncated_polynomial(2));
    for (Index x = 0; x < l.n(); ++x)
        CHECK(takeuchi_member(l.regular(), l.regular(), l.diamond(), l.coproduct[x], l.generators()));
    CHECK(takeuchi_member(l.regular(), l.regular(), l.diamond(), tensor(l.total.unit, l.total.unit, l.n()), {}));
    auto ts = takeuchi(l.regular(), l.regular());
    CHECK(ts.basis.size() <= l.diamond().dim());
    // Over k there is no constraint.
    auto h = examples::klein_bialgebroid();
    auto th = takeuchi(h.regular(), h.regular());
    CHECK(th.basis.size() == 16);
}

TEST_CASE("quotient algebra by an ideal") {
    auto e = enveloping(examples::truncated_polynomial(2));
    QuotientSpace q(4, {SVec::unit(3)});
    auto a = quotient_algebra(e, q, "J1");
    validate_algebra(a, true);
    CHECK(a.dim == 3);
}
