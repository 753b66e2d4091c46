#include "doctest.h"

#include <random>

#include "hopfalg/errors.hpp"
#include "hopfalg/linalg.hpp"

using namespace hopfalg;

TEST_CASE("scalar arithmetic stays exact across the small/big boundary") {
    Scalar a = Scalar::fraction(1, 3);
    CHECK(a + a + a == Scalar(1));
    Scalar big(1);
    for (int i = 0; i < 70; ++i) big *= Scalar(2);
    CHECK(big.num_str() == "1180591620717411303424");
    Scalar back = big;
    for (int i = 0; i < 70; ++i) back /= Scalar(2);
    CHECK(back.is_one());
    CHECK(Scalar::parse("-6/4").str() == "-3/2");
    CHECK(Scalar::parse("123456789012345678901234567890").num_str() == "123456789012345678901234567890");
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), Error);
}

TEST_CASE("prime field residues") {
    Scalar x = Scalar::residue(3, 7);
    CHECK(x * x.inverse() == Scalar::residue(1, 7));
    CHECK(x + Scalar::residue(4, 7) == Scalar::residue(0, 7));
    CHECK((x * Scalar(5)).num_str() == "1");
    CHECK(Scalar::fraction(1, 2).in_field(7) == Scalar::residue(4, 7));
}

TEST_CASE("rref of a rank one matrix") {
    auto r = rref(Matrix::from_rows({{2, 4}, {1, 2}}));
    CHECK(r.reduced == Matrix::from_rows({{1, 2}, {0, 0}}));
    CHECK(r.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("solve picks zero free variables") {
    auto x = solve(Matrix::from_rows({{1, 1}}), {Scalar(2)});
    REQUIRE(x);
    CHECK((*x)[0] == Scalar(2));
    CHECK((*x)[1] == Scalar(0));
    CHECK_FALSE(solve(Matrix::from_rows({{1, 1}, {1, 1}}), {Scalar(1), Scalar(2)}));
    CHECK_THROWS_AS(solve_or_throw(Matrix::from_rows({{0}}), {Scalar(1)}), Error);
}

TEST_CASE("quotient by a single relation") {
    QuotientSpace q(2, {SVec::from_dense({Scalar(1), Scalar(-1)})});
    CHECK(q.dim() == 1);
    CHECK(q.section(0) == 1);
    CHECK(q.project(SVec::unit(0)) == SVec::unit(0));
    CHECK(q.lift(SVec::unit(0)) == SVec::unit(1));
}

TEST_CASE("kernel basis is annihilated") {
    Matrix m = Matrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    auto k = kernel_basis(m);
    CHECK(k.size() == 1);
    for (auto& v : k) {
        auto img = m.mul(v);
        for (auto& c : img) CHECK(c.is_zero());
    }
}

namespace {
Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, std::uint32_t p) {
    std::uniform_int_distribution<int> d(-3, 3);
    Matrix m(r, c);
    for (auto& x : m.a) x = p ? Scalar::residue((d(rng) + 7) % 7, p) : Scalar(d(rng) * (d(rng) == 0));
    return m;
}
LinMap to_map(const Matrix& m) {
    LinMap f(m.cols, m.rows);
    for (std::size_t j = 0; j < m.cols; ++j) {
        std::vector<Scalar> col(m.rows);
        for (std::size_t i = 0; i < m.rows; ++i) col[i] = m(i, j);
        f.col[j] = SVec::from_dense(col);
    }
    return f;
}
}  // namespace

TEST_CASE("sparse solver agrees with dense elimination") {
    std::mt19937 rng(7);
    for (std::uint32_t p : {0u, 7u}) {
        for (int trial = 0; trial < 40; ++trial) {
            Matrix m = random_matrix(rng, 5, 6, p);
            ColumnSolver cs(to_map(m));
            auto r = rref(m);
            CHECK(cs.rank() == r.pivots.size());
            CHECK(cs.kernel().size() == 6 - r.pivots.size());
            for (const auto& k : cs.kernel()) CHECK(to_map(m).apply(k).empty());
            std::vector<Scalar> x(6);
            for (std::size_t j = 0; j < 6; ++j) x[j] = Scalar(static_cast<int>(j) - 2).in_field(p);
            SVec b = SVec::from_dense(m.mul(x));
            auto sol = cs.solve(b);
            REQUIRE(sol);
            CHECK(to_map(m).apply(*sol) == b);
        }
    }
}

TEST_CASE("quotient projection kills relations and fixes the section") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        Matrix m = random_matrix(rng, 3, 6, 0);
        std::vector<SVec> rel;
        for (std::size_t i = 0; i < 3; ++i) {
            std::vector<Scalar> row(m.a.begin() + i * 6, m.a.begin() + (i + 1) * 6);
            rel.push_back(SVec::from_dense(row));
        }
        QuotientSpace q(6, rel);
        CHECK(q.dim() == 6 - rref(m).pivots.size());
        for (auto& r : rel) CHECK(q.project(r).empty());
        for (Index k = 0; k < q.dim(); ++k) CHECK(q.project(q.lift(SVec::unit(k))) == SVec::unit(k));
    }
}

TEST_CASE("subspace sum and intersection dimensions") {
    Subspace a(4, {SVec::unit(0), SVec::unit(1)});
    Subspace b(4, {SVec::unit(1), SVec::unit(2)});
    CHECK(subspace_sum(a, b).dim() == 3);
    auto i = subspace_intersect(a, b);
    CHECK(i.dim() == 1);
    CHECK(i.contains(SVec::unit(1)));
}
