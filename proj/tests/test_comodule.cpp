#include "doctest.h"

#include "hopfalg/comodule.hpp"
#include "hopfalg/errors.hpp"
#include "hopfalg/examples.hpp"
#include "hopfalg/jets.hpp"

using namespace hopfalg;

namespace {

void require_pass(const Report& r) {
    for (const auto& c : r.checks) {
        INFO(c.name << " " << c.witness);
        CHECK(c.pass);
    }
}

}  // namespace

TEST_CASE("default comodule family satisfies the comodule axioms") {
    for (auto l : {pair_hopf_algebroid(examples::truncated_polynomial(2)),
                   pair_hopf_algebroid(examples::split(3)), examples::klein_bialgebroid(),
                   pair_hopf_algebroid(examples::upper_triangular())}) {
        CAPTURE(l.name);
        auto tm = translation_map(l);
        require_pass(verify_comodule(l, base_comodule(l)));
        require_pass(verify_comodule(l, coproduct_comodule(l)));
        require_pass(verify_comodule(l, regular_comodule(l, tm)));
    }
}

TEST_CASE("tensor products of comodules are comodules") {
    auto l = pair_hopf_algebroid(examples::truncated_polynomial(2));
    auto tm = translation_map(l);
    std::vector<Comodule> fam{base_comodule(l), coproduct_comodule(l), regular_comodule(l, tm)};
    for (const auto& m : fam)
        for (const auto& n : fam) {
            auto t = tensor_comodule(l, m, n);
            CAPTURE(t.comodule.name);
            require_pass(verify_comodule(l, t.comodule));
        }
    // B (x)_B M = M.
    CHECK(tensor_comodule(l, fam[0], fam[1]).comodule.dim == l.n());
}

TEST_CASE("comodule checks catch a broken coaction") {
    auto l = pair_hopf_algebroid(examples::truncated_polynomial(2));
    Comodule m = coproduct_comodule(l);
    m.coaction[0] = scaled(m.coaction[0], Scalar(2));
    auto r = verify_comodule(l, m);
    REQUIRE(r.find("counital"));
    CHECK_FALSE(r.find("counital")->pass);
    m.coaction.pop_back();
    CHECK_THROWS_AS(verify_comodule(l, m), Error);
}
