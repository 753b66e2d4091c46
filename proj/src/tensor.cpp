#include "hopfalg/tensor.hpp"

#include "hopfalg/algebra.hpp"
#include "hopfalg/errors.hpp"

namespace hopfalg {

SVec tensor3(const SVec& a, const SVec& b, const SVec& c, std::size_t n2, std::size_t n3) {
    SVec out;
    out.t.reserve(a.t.size() * b.t.size() * c.t.size());
    for (const auto& [i, ci] : a.t)
        for (const auto& [j, cj] : b.t) {
            Scalar cij = ci * cj;
            for (const auto& [k, ck] : c.t) out.t.push_back({t3idx(i, j, k, n2, n3), cij * ck});
        }
    return out;
}

bool descends(const QuotientSpace& q, std::size_t n2, const LinMap& op, int which) {
    for (const auto& r : q.relation_basis()) {
        SVec img = which == 0 ? apply_tensor(&op, nullptr, r, n2) : apply_tensor(nullptr, &op, r, n2);
        if (!q.project(img).empty()) return false;
    }
    return true;
}

TripleSpace::TripleSpace(std::size_t n1, std::size_t n2, std::size_t n3, const std::vector<OpPair>& r12,
                         const std::vector<OpPair>& r13, const std::vector<OpPair>& r23)
    : n1_(n1), n2_(n2), n3_(n3), q12_(balanced_quotient(n1, n2, r12)) {
    for (const auto& [a, c] : r13)
        if (!descends(q12_, n2, a, 0)) throw Error("InternalError", "factor-1 operator does not descend to the pair quotient");
    for (const auto& [a, c] : r23)
        if (!descends(q12_, n2, a, 1)) throw Error("InternalError", "factor-2 operator does not descend to the pair quotient");
    const std::size_t d12 = q12_.dim();
    Echelon e(d12 * n3);
    auto push = [&](const std::vector<OpPair>& rel, bool on_first) {
        for (const auto& [a, c] : rel) {
            for (Index q = 0; q < d12; ++q) {
                Index amb = q12_.section(q);
                Index i = static_cast<Index>(amb / n2), j = static_cast<Index>(amb % n2);
                SVec moved = on_first ? tensor(a.col[i], SVec::unit(j), n2) : tensor(SVec::unit(i), a.col[j], n2);
                SVec pq = q12_.project(moved);
                for (Index l = 0; l < n3; ++l) {
                    std::vector<Term> terms;
                    for (const auto& [p, cp] : pq.t) terms.push_back({tidx(p, l, n3), cp});
                    for (const auto& [m, cm] : c.col[l].t) terms.push_back({tidx(q, m, n3), -cm});
                    e.insert(SVec::from_terms(std::move(terms)));
                }
            }
        }
    };
    push(r13, true);
    push(r23, false);
    q_ = QuotientSpace::from_echelon(std::move(e));
}

Index TripleSpace::section(Index q) const {
    Index amb = q_.section(q);
    return static_cast<Index>(static_cast<std::size_t>(q12_.section(static_cast<Index>(amb / n3_))) * n3_ + amb % n3_);
}

SVec TripleSpace::project(const SVec& ambient) const {
    Accumulator acc;
    const std::size_t nn = n3_;
    // Terms sharing the same (i,j) prefix are adjacent in ambient order.
    for (const auto& [idx, c] : ambient.t) {
        Index ij = static_cast<Index>(idx / nn), k = static_cast<Index>(idx % nn);
        for (const auto& [p, cp] : q12_.project_basis(ij).t) acc.add(tidx(p, k, nn), c * cp);
    }
    return q_.project(acc.take());
}

}  // namespace hopfalg
