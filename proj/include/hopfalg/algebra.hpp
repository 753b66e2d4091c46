#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hopfalg/linalg.hpp"
#include "hopfalg/report.hpp"

namespace hopfalg {

// Unital associative algebra given by structure constants:
// mul[i*dim + j] holds the coefficient vector of e_i e_j.
struct FiniteAlgebra {
    std::string name;
    std::uint32_t field = 0;  // 0 = rationals, otherwise the prime p
    std::size_t dim = 0;
    std::vector<std::string> basis;
    SVec unit;
    std::vector<SVec> mul;
    bool commutative = false;

    const SVec& prod(Index i, Index j) const { return mul[static_cast<std::size_t>(i) * dim + j]; }
    SVec multiply(const SVec& a, const SVec& b) const;
    SVec multiply(const SVec& a, const SVec& b, const SVec& c) const { return multiply(multiply(a, b), c); }
    // Matrices of x -> a x and x -> x a.
    LinMap left_mult(const SVec& a) const;
    LinMap right_mult(const SVec& a) const;
    Scalar one() const { return field ? Scalar::residue(1, field) : Scalar(1); }
    std::string describe(const SVec& v) const;
};

struct AlgebraSpec {
    std::string name;
    std::uint32_t field = 0;
    std::size_t dim = 0;
    std::vector<std::string> basis;
    std::vector<Scalar> unit;
    struct Entry {
        Index i, j, k;
        Scalar c;
    };
    std::vector<Entry> mul;
    bool declared_commutative = false;
};

// Validates associativity, unit laws and (if declared) commutativity.
// Errors: BadUnit, NotAssociative, NotCommutative, BadInput.
FiniteAlgebra make_algebra(const AlgebraSpec& spec);
// Same checks on an already assembled algebra.
void validate_algebra(FiniteAlgebra& a, bool declared_commutative);
bool is_commutative(const FiniteAlgebra& a);

FiniteAlgebra opposite(const FiniteAlgebra& a);
// Basis e_i (x) e_j at index i*dim + j, with (a (x) a')(c (x) c') = ac (x) c'a'.
FiniteAlgebra enveloping(const FiniteAlgebra& b);
inline Index env_index(const FiniteAlgebra& b, Index i, Index j) { return static_cast<Index>(i * b.dim + j); }

// A minimal set of basis indices generating the algebra (greedy, deterministic).
std::vector<Index> algebra_generators(const FiniteAlgebra& a);
// Algebra on the subspace spanned by `basis` (must be closed under products and contain the unit).
FiniteAlgebra subalgebra(const FiniteAlgebra& a, const std::vector<SVec>& basis, const std::string& name);
// Quotient algebra A / I for a two-sided ideal, with the canonical section.
FiniteAlgebra quotient_algebra(const FiniteAlgebra& a, const QuotientSpace& q, const std::string& name);

enum class MapKind { Algebra, AntiAlgebra, LeftLinear, Bimodule };
// Checks f: src -> dst. For LeftLinear/Bimodule, `act_*` supply the module
// structures as per-basis operators of the acting algebra on src and dst.
Report check_map(const LinMap& f, MapKind kind, const FiniteAlgebra& src, const FiniteAlgebra& dst);
Report check_module_map(const LinMap& f, const std::vector<LinMap>& act_src, const std::vector<LinMap>& act_dst,
                        const std::string& label);

// A vector space with actions of the base algebra on either side. Each action
// family is indexed by the base basis (empty = absent). For a B^e-bimodule the
// four families correspond to the left B and left B-bar actions and the right
// B and right B-bar actions.
struct Bimodule {
    std::string name;
    std::size_t dim = 0;
    std::vector<LinMap> left_B, left_Bbar, right_B, right_Bbar;
};

enum class BalancedKind { Diamond, OverB, OverBbar, UpperB, UpperBbar };
std::string to_string(BalancedKind k);

struct BalancedTensor {
    BalancedKind kind;
    std::size_t dim_m = 0, dim_n = 0;
    QuotientSpace space;
};

// Relations over the given base generators (all basis elements when empty).
BalancedTensor balanced_tensor(const Bimodule& m, const Bimodule& n, BalancedKind kind,
                               const std::vector<Index>& base_indices = {});

// Quotient of M (x) N by op_a(x) (x) y - x (x) op_b(y) for each pair of operators.
QuotientSpace balanced_quotient(std::size_t dm, std::size_t dn, const std::vector<std::pair<LinMap, LinMap>>& ops);

// Tensor index helpers.
inline Index tidx(Index i, Index j, std::size_t n2) { return static_cast<Index>(static_cast<std::size_t>(i) * n2 + j); }
SVec tensor(const SVec& a, const SVec& b, std::size_t n2);
// Applies f (x) g to an ambient tensor of dimension n1*n2.
SVec apply_tensor(const LinMap* f, const LinMap* g, const SVec& w, std::size_t n2);

struct TakeuchiSubspace {
    BalancedTensor host;
    std::vector<SVec> basis;  // quotient coordinates
};
// Equalizer of m b-bar (x) n and m (x) n b inside the diamond product.
TakeuchiSubspace takeuchi(const Bimodule& m, const Bimodule& n, const std::vector<Index>& base_indices = {});
bool takeuchi_member(const Bimodule& m, const Bimodule& n, const QuotientSpace& diamond, const SVec& ambient,
                     const std::vector<Index>& base_indices);

}  // namespace hopfalg
