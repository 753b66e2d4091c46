#include "doctest.h"

#include <functional>

#include "hopfalg/errors.hpp"
#include "hopfalg/examples.hpp"
#include "hopfalg/jets.hpp"

using namespace hopfalg;

namespace {

std::string kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

// Dense brute force: rank of all products (a (x) b) u_0 u_1 ... u_k over basis elements of ker m.
std::size_t brute_power_dim(const FiniteAlgebra& b, std::size_t k) {
    FiniteAlgebra env = enveloping(b);
    std::vector<std::vector<Scalar>> mrows(b.dim, std::vector<Scalar>(env.dim));
    for (Index i = 0; i < b.dim; ++i)
        for (Index j = 0; j < b.dim; ++j)
            for (const auto& [r, c] : b.prod(i, j).t) mrows[r][i * b.dim + j] = c;
    std::vector<SVec> mu;
    for (auto& v : kernel_basis(Matrix::from_rows(mrows))) mu.push_back(SVec::from_dense(v));
    std::vector<SVec> prods = mu;
    for (std::size_t step = 0; step < k; ++step) {
        std::vector<SVec> next;
        for (const auto& p : prods)
            for (const auto& u : mu) next.push_back(env.multiply(p, u));
        prods = next;
    }
    std::vector<std::vector<Scalar>> rows;
    for (const auto& p : prods)
        for (Index e = 0; e < env.dim; ++e) {
            rows.push_back(env.multiply(SVec::unit(e), p).dense(env.dim));
            rows.push_back(env.multiply(p, SVec::unit(e)).dense(env.dim));
        }
    if (rows.empty()) return 0;
    return rref(Matrix::from_rows(rows)).pivots.size();
}

}  // namespace

TEST_CASE("universal calculus") {
    auto b2 = examples::truncated_polynomial(2);
    auto mu = universal_calculus(b2);
    CHECK(mu.size() == 2);
    Subspace s(4, mu);
    CHECK(s.contains(d_uni(b2, SVec::unit(1))));
    CHECK(s.contains(SVec::unit(3)));
    CHECK(universal_calculus(examples::split(3)).size() == 6);
    auto pair = pair_hopf_algebroid(b2);
    for (Index a = 0; a < 2; ++a) CHECK(pair.eps(d_uni(b2, SVec::unit(a))).empty());
}

TEST_CASE("jet chain agrees with brute-force ideal powers") {
    auto b2 = examples::truncated_polynomial(2);
    auto c = jet_chain(b2);
    CHECK(c.mu_k(0).dim() == 2);
    CHECK(c.mu_k(1).dim() == 1);
    CHECK(c.mu_k(2).dim() == 0);
    for (std::size_t k = 0; k < 3; ++k) CHECK(c.mu_k(k).dim() == brute_power_dim(b2, k));
    CHECK(c.mu_k(1).contains(SVec::unit(3)));
    REQUIRE(c.stabilized_at);
    CHECK(*c.stabilized_at == 2);
    CHECK(c.mu_infinity().dim() == 0);

    auto b3 = examples::split(3);
    auto c3 = jet_chain(b3);
    REQUIRE(c3.stabilized_at);
    CHECK(*c3.stabilized_at == 0);
    CHECK(c3.mu_infinity().dim() == 6);
    CHECK(brute_power_dim(b3, 1) == 6);

    auto cm = jet_chain(examples::moyal_base());
    CHECK(cm.mu_infinity().dim() == 0);
    for (std::size_t k = 0; k + 1 < cm.powers.size(); ++k) CHECK(cm.powers[k + 1].dim() <= cm.powers[k].dim());
}

TEST_CASE("chain cap is enforced") {
    auto c = jet_chain(examples::truncated_polynomial(4), 1);
    CHECK_FALSE(c.stabilized_at);
    CHECK(kind_of([&] { c.mu_infinity(); }) == "NotStabilized");
}

TEST_CASE("jet spaces of B2") {
    auto b2 = examples::truncated_polynomial(2);
    auto c = jet_chain(b2);
    CHECK(jet_space(c, 0).dim() == 2);
    CHECK(jet_space(c, 1).dim() == 3);
    for (std::size_t k = 2; k < 5; ++k) CHECK(jet_space(c, k).dim() == 4);
    // J^k -> J^{k-1} is an algebra map.
    for (std::size_t k = 1; k < 3; ++k) {
        auto hi = jet_space(c, k), lo = jet_space(c, k - 1);
        REQUIRE(hi.algebra);
        REQUIRE(lo.algebra);
        auto down = [&](Index q) { return lo.quotient.project(SVec::unit(hi.quotient.section(q))); };
        for (Index p = 0; p < hi.dim(); ++p)
            for (Index q = 0; q < hi.dim(); ++q) {
                SVec lhs = lo.quotient.project(hi.quotient.lift(hi.algebra->prod(p, q)));
                CHECK(lhs == lo.algebra->multiply(down(p), down(q)));
            }
    }
}

TEST_CASE("jet Hopf algebroids") {
    CHECK(jet_hopf_algebroid(examples::truncated_polynomial(2)).n() == 4);
    auto j3 = jet_hopf_algebroid(examples::split(3));
    CHECK(j3.n() == 3);
    CHECK(kind_of([] { jet_hopf_algebroid(examples::upper_triangular()); }) == "NotCommutative");
}

TEST_CASE("jet splitting dimensions and identities") {
    auto b2 = examples::truncated_polynomial(2);
    auto c = jet_chain(b2);
    auto s1 = jet_splitting(c, 1);
    CHECK(s1.omega.dim() == 1);
    CHECK(s1.jet.dim() == 3);
    for (std::size_t k = 2; k < 4; ++k) {
        auto s = jet_splitting(c, k);
        CHECK(s.omega.dim() == 2);
        CHECK(s.jet.dim() == 4);
        for (const auto& ch : s.checks.checks) {
            INFO(ch.name);
            CHECK(ch.pass);
        }
    }
    for (const auto& ch : s1.checks.checks) {
        INFO(ch.name);
        CHECK(ch.pass);
    }
    CHECK(kind_of([] { jet_splitting(jet_chain(examples::upper_triangular()), 1); }) == "NotCommutative");
}

TEST_CASE("first-order jets") {
    auto b2 = examples::truncated_polynomial(2);
    auto c = jet_chain(b2);
    auto j = first_order_jet(b2, c.mu_k(1).basis());
    CHECK(j.quotient.same_as(jet_space(c, 1).quotient));
    CHECK(first_order_jet(b2, c.mu).quotient.dim() == 2);
    auto t2 = examples::upper_triangular();
    auto jt = first_order_jet(t2, {});
    CHECK(jt.quotient.dim() == 9);
    CHECK(jt.dim_b + jt.dim_omega == 9);
    CHECK(jt.checks.ok());
    CHECK(kind_of([&] { first_order_jet(b2, {SVec::unit(0)}); }) == "NotSubBimodule");
    CHECK(kind_of([&] { first_order_jet(b2, {d_uni(b2, SVec::unit(1))}); }) == "NotSubBimodule");
}
