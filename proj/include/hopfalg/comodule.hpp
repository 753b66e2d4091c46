#pragma once

#include <string>
#include <vector>

#include "hopfalg/bialgebroid.hpp"

namespace hopfalg {

// Left L-comodule over B: a B-bimodule M with coaction M -> L diamond_B M.
//
// The coaction of basis vector m is an ambient representative in L (x) M,
// index X*dim + m. L diamond_B M is L (x) M modulo t(b)X (x) m = X (x) b.m.
struct Comodule {
    std::string name;
    std::size_t dim = 0;
    std::vector<LinMap> left;   // b.m for every basis b of B
    std::vector<LinMap> right;  // m.b
    std::vector<SVec> coaction;

    SVec act_left(const SVec& b, const SVec& m) const;
    SVec act_right(const SVec& m, const SVec& b) const;
    SVec coact(const SVec& m) const;
};

// L diamond_B M.
QuotientSpace comodule_diamond(const Bialgebroid& l, const Comodule& m);

// B itself: b -> s(b) diamond 1.
Comodule base_comodule(const Bialgebroid& l);
// L with coaction Delta and actions by s on both sides.
Comodule coproduct_comodule(const Bialgebroid& l);
// L with b.X.b' = t(b')X t(b) and coaction X -> X_- (x) X_+.
Comodule regular_comodule(const Bialgebroid& l, const TranslationMap& tm);

// M (x)_B N realised on quotient coordinates.
struct TensorComodule {
    QuotientSpace space;  // (M (x) N) / (m.b (x) n - m (x) b.n), ambient index m*dim N + n
    Comodule comodule;
};
TensorComodule tensor_comodule(const Bialgebroid& l, const Comodule& m, const Comodule& n);

// Check names: "left action", "right action", "actions commute",
// "coaction left B-linear", "coaction right B-linear", "coaction in Takeuchi product",
// "counital", "coassociative".
Report verify_comodule(const Bialgebroid& l, const Comodule& m);

}  // namespace hopfalg
