#pragma once

#include <optional>
#include <vector>

#include "hopfalg/bialgebroid.hpp"

namespace hopfalg {

// B (x) B-bar with s(a) = a (x) 1, t(a) = 1 (x) a, Delta(a (x) a') = (a (x) 1) diamond (1 (x) a'),
// eps(a (x) a') = aa'. Verified before returning.
Bialgebroid pair_hopf_algebroid(const FiniteAlgebra& b);

// Closed forms of the pair translation maps, as ambient tensors.
SVec pair_plus_minus(const FiniteAlgebra& b, Index a, Index ap);  // (a (x) 1) (x) (a' (x) 1)
SVec pair_bracket(const FiniteAlgebra& b, Index a, Index ap);     // (1 (x) a') (x) (1 (x) a)

// Multiplication B^e -> B.
LinMap multiplication_map(const FiniteAlgebra& b);
// d_uni a = 1 (x) a - a (x) 1 in B^e.
SVec d_uni(const FiniteAlgebra& b, const SVec& a);
// Basis of ker(m).
std::vector<SVec> universal_calculus(const FiniteAlgebra& b);

struct JetChain {
    FiniteAlgebra base;
    FiniteAlgebra env;  // B^e
    std::vector<SVec> mu;
    std::vector<Subspace> powers;  // powers[k] = mu_k = mu^{k+1}
    std::optional<std::size_t> stabilized_at;
    std::size_t cap = 16;

    const Subspace& mu_k(std::size_t k) const { return powers[std::min(k, powers.size() - 1)]; }
    // Stabilized ideal; throws NotStabilized when the chain did not settle within the cap.
    const Subspace& mu_infinity() const;
};

// mu^{k+1} as the span of (k+1)-fold products, closed under left multiplication by
// B^e (and right multiplication when B is commutative).
JetChain jet_chain(const FiniteAlgebra& b, std::size_t cap = 16);

struct JetSpace {
    std::size_t k = 0;
    QuotientSpace quotient;                // B^e / mu_k
    std::optional<FiniteAlgebra> algebra;  // when B is commutative
    std::size_t dim() const { return quotient.dim(); }
};

JetSpace jet_space(const JetChain& chain, std::size_t k);

// Jet Hopf algebroid B^e / mu_infinity for commutative B.
// Errors: NotCommutative, NotStabilized.
Bialgebroid jet_hopf_algebroid(const FiniteAlgebra& b, std::size_t cap = 16);

// Omega^1_k = mu / mu_k with pi: J^k -> Omega^1_k, the inclusion and j_k(b) = [b (x) 1].
struct JetSplitting {
    std::size_t k = 0;
    JetSpace jet;
    QuotientSpace omega;  // over mu-coordinates
    LinMap pi;            // J^k -> Omega
    LinMap incl;          // Omega -> J^k
    LinMap prolong;       // B -> J^k
    Report checks;
};

// pi(w) = w - 1 (x) m(w) on representatives, so pi o incl = id and
// pi(j_k(b)) = [b (x) 1 - 1 (x) b]. Errors: NotCommutative.
JetSplitting jet_splitting(const JetChain& chain, std::size_t k);

struct FirstOrderJet {
    QuotientSpace quotient;  // B^e / N
    LinMap prolong;          // a -> [a (x) 1]
    std::size_t dim_b = 0, dim_omega = 0;  // dim B and dim mu/N
    Report checks;
};

// Noncommutative first-order jets B^e / N for a sub-bimodule N of mu.
// Errors: NotSubBimodule.
FirstOrderJet first_order_jet(const FiniteAlgebra& b, const std::vector<SVec>& n);

}  // namespace hopfalg
