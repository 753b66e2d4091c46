#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopfalg/algebra.hpp"
#include "hopfalg/report.hpp"
#include "hopfalg/tensor.hpp"

namespace hopfalg {

// Left bialgebroid over B given by structure constants.
//
// Elements of L (x) L are ambient vectors indexed by i*n + j (n = dim L).
// Juxtaposition conventions: for b in B, "b X" is s(b)X, "b-bar X" is t(b)X,
// "X b" is X s(b) and "X b-bar" is X t(b).
struct Bialgebroid {
    std::string name;
    FiniteAlgebra base;   // B
    FiniteAlgebra total;  // L
    LinMap source;        // s: B -> L
    LinMap target;        // t: B -> L
    LinMap counit;        // L -> B
    std::vector<SVec> coproduct;  // ambient representative of Delta(e_i)

    std::size_t n() const { return total.dim; }
    std::size_t m() const { return base.dim; }

    // Derived data, built on first use and shared between copies.
    struct Cache;
    const Cache& cache() const;
    // Call after mutating any field.
    void reset_cache() { cache_.reset(); }

    // Left/right multiplication operators on L by s(e_b), t(e_b).
    const std::vector<LinMap>& sL() const;
    const std::vector<LinMap>& tL() const;
    const std::vector<LinMap>& sR() const;
    const std::vector<LinMap>& tR() const;
    // Algebra generators of B; relations are imposed for these only.
    const std::vector<Index>& generators() const;
    // L as a B^e-bimodule via left/right multiplication by s and t.
    const Bimodule& regular() const;

    // L diamond_B L: t(b)X (x) Y = X (x) s(b)Y.
    const QuotientSpace& diamond() const;
    // L (x)_Bbar L: X t(b) (x) Y = X (x) t(b)Y.
    const QuotientSpace& over_Bbar() const;
    // L (x)_B L: X s(b) (x) Y = X (x) s(b)Y.
    const QuotientSpace& over_B() const;
    // L (x)^B L: s(b)X (x) Y = X (x) Y s(b).
    const QuotientSpace& upper_B() const;
    // L diamond L diamond L.
    const TripleSpace& diamond3() const;

    SVec s(const SVec& b) const { return source.apply(b); }
    SVec t(const SVec& b) const { return target.apply(b); }
    SVec eps(const SVec& x) const { return counit.apply(x); }
    SVec mul(const SVec& x, const SVec& y) const { return total.multiply(x, y); }
    // Delta of a general element (ambient representative).
    SVec delta(const SVec& x) const;

private:
    mutable std::shared_ptr<Cache> cache_;
};

// Tensor helpers on L (x) L (both factors of dimension n).
// (a (x) b)(c (x) d) = ac (x) bd, factorwise product of ambient tensors.
SVec tensor_mul(const FiniteAlgebra& l, const SVec& u, const SVec& v);
SVec swap_tensor(const SVec& w, std::size_t n1, std::size_t n2);
// Image of w under f (x) g where f, g are given as functions Index -> SVec.
template <class F, class G>
SVec map_tensor(const SVec& w, std::size_t n2, std::size_t out2, F&& f, G&& g) {
    Accumulator acc;
    for (const auto& [idx, c] : w.t) {
        SVec a = f(static_cast<Index>(idx / n2));
        SVec b = g(static_cast<Index>(idx % n2));
        for (const auto& [i, ci] : a.t)
            for (const auto& [j, cj] : b.t) acc.add(tidx(i, j, out2), c * ci * cj);
    }
    return acc.take();
}

// Full axiom suite. Check names are stable identifiers used by tests and the CLI.
Report verify_bialgebroid(const Bialgebroid& l);
// Throws AxiomFailure with the first failing check.
void require_bialgebroid(const Bialgebroid& l);

struct TranslationMap {
    // X_+ (x) X_- for every basis X: ambient lift of lambda^{-1}(X diamond 1).
    std::vector<SVec> plus_minus;
    // X_[+] (x) X_[-]: ambient lift of mu^{-1}(1 diamond X); empty when not requested.
    std::vector<SVec> bracket;
};

// Throws NotLeftHopf when lambda is not bijective.
TranslationMap translation_map(const Bialgebroid& l);
// Throws NotAntiLeftHopf when mu is not bijective.
std::vector<SVec> anti_translation_map(const Bialgebroid& l);
// X_+ (x) X_- for a general element.
SVec translate(const TranslationMap& tm, const SVec& x);

// Checks identities 1 to 10 of the translation map; names are "identity N".
Report verify_translation_identities(const Bialgebroid& l, const TranslationMap& tm);

// Ideal membership tests. I is given by a basis of a subspace of L.
Report check_hopf_ideal(const Bialgebroid& l, const Subspace& ideal, const TranslationMap& tm,
                        const std::vector<SVec>& bracket = {});
// L / I with the canonical section; re-verified (throws AxiomFailure on internal inconsistency).
Bialgebroid quotient_hopf_algebroid(const Bialgebroid& l, const Subspace& ideal, const std::string& name = {});

// Equal structure tensors in the canonical bases.
Report structural_equal(const Bialgebroid& a, const Bialgebroid& b);

// The one-dimensional algebra k.
FiniteAlgebra ground_field(std::uint32_t p = 0);
// A bialgebra H viewed as a bialgebroid over k (s = t = unit map).
Bialgebroid bialgebra_over_field(const FiniteAlgebra& h, std::vector<SVec> coproduct, const LinMap& counit,
                                 const std::string& name);

// Regular bimodule of the base algebra B over itself.
Bimodule base_bimodule(const FiniteAlgebra& b);

}  // namespace hopfalg
