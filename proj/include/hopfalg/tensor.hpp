#pragma once

#include <vector>

#include "hopfalg/linalg.hpp"

namespace hopfalg {

// A pair of operators (first acts on one tensor factor, second on another);
// the balanced relation is op_a(x) ... - ... op_b(y).
using OpPair = std::pair<LinMap, LinMap>;

// Quotient of V1 (x) V2 (x) V3 by balanced relations between factor pairs.
// Built in two stages: Q12 = (V1 (x) V2)/R12, then (Q12 (x) V3)/(R13 + R23),
// where operators on factors 1 and 2 are pushed through Q12. Ambient index of
// e_i (x) e_j (x) e_k is (i*n2 + j)*n3 + k.
class TripleSpace {
public:
    TripleSpace() = default;
    TripleSpace(std::size_t n1, std::size_t n2, std::size_t n3, const std::vector<OpPair>& r12,
                const std::vector<OpPair>& r13, const std::vector<OpPair>& r23);

    std::size_t dim() const { return q_.dim(); }
    std::size_t n1() const { return n1_; }
    std::size_t n2() const { return n2_; }
    std::size_t n3() const { return n3_; }
    SVec project(const SVec& ambient) const;
    // Ambient index of the canonical representative of quotient basis vector q.
    Index section(Index q) const;
    const QuotientSpace& first_stage() const { return q12_; }

private:
    std::size_t n1_ = 0, n2_ = 0, n3_ = 0;
    QuotientSpace q12_;
    QuotientSpace q_;
};

inline Index t3idx(Index i, Index j, Index k, std::size_t n2, std::size_t n3) {
    return static_cast<Index>((static_cast<std::size_t>(i) * n2 + j) * n3 + k);
}

SVec tensor3(const SVec& a, const SVec& b, const SVec& c, std::size_t n2, std::size_t n3);

// Checks that op (acting on factor `which` = 0 or 1 of V1 (x) V2) maps the
// relations of q into themselves, i.e. descends to the quotient.
bool descends(const QuotientSpace& q, std::size_t n2, const LinMap& op, int which);

}  // namespace hopfalg
