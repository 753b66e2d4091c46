#include "hopfalg/linalg.hpp"

#include <algorithm>

#include "hopfalg/errors.hpp"

namespace hopfalg {

// ---------------------------------------------------------------- SVec

SVec SVec::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.i < b.i; });
    SVec out;
    out.t.reserve(terms.size());
    for (auto& term : terms) {
        if (!out.t.empty() && out.t.back().i == term.i) {
            out.t.back().c += term.c;
        } else {
            if (!out.t.empty() && out.t.back().c.is_zero()) out.t.pop_back();
            out.t.push_back(std::move(term));
        }
    }
    if (!out.t.empty() && out.t.back().c.is_zero()) out.t.pop_back();
    return out;
}

SVec SVec::from_dense(const std::vector<Scalar>& d) {
    SVec v;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!d[i].is_zero()) v.t.push_back({static_cast<Index>(i), d[i]});
    return v;
}

Scalar SVec::at(Index i) const {
    auto it = std::lower_bound(t.begin(), t.end(), i, [](const Term& a, Index k) { return a.i < k; });
    if (it != t.end() && it->i == i) return it->c;
    return Scalar(0);
}

std::vector<Scalar> SVec::dense(std::size_t n) const {
    std::vector<Scalar> d(n);
    for (const auto& [i, c] : t) d[i] = c;
    return d;
}

void axpy(SVec& y, const Scalar& a, const SVec& x) {
    if (a.is_zero() || x.t.empty()) return;
    std::vector<Term> out;
    out.reserve(y.t.size() + x.t.size());
    std::size_t p = 0, q = 0;
    while (p < y.t.size() || q < x.t.size()) {
        if (q == x.t.size() || (p < y.t.size() && y.t[p].i < x.t[q].i)) {
            out.push_back(std::move(y.t[p++]));
        } else if (p == y.t.size() || x.t[q].i < y.t[p].i) {
            out.push_back({x.t[q].i, a * x.t[q].c});
            ++q;
        } else {
            Scalar c = std::move(y.t[p].c);
            c += a * x.t[q].c;
            if (!c.is_zero()) out.push_back({y.t[p].i, std::move(c)});
            ++p;
            ++q;
        }
    }
    y.t = std::move(out);
}

SVec& SVec::operator+=(const SVec& o) {
    axpy(*this, Scalar(1), o);
    return *this;
}

SVec& SVec::operator-=(const SVec& o) {
    axpy(*this, Scalar(-1), o);
    return *this;
}

bool operator==(const SVec& a, const SVec& b) {
    if (a.t.size() != b.t.size()) return false;
    for (std::size_t k = 0; k < a.t.size(); ++k)
        if (a.t[k].i != b.t[k].i || a.t[k].c != b.t[k].c) return false;
    return true;
}

SVec scaled(const SVec& v, const Scalar& c) {
    SVec out;
    if (c.is_zero()) return out;
    out.t.reserve(v.t.size());
    for (const auto& [i, x] : v.t) out.t.push_back({i, x * c});
    return out;
}

std::string to_string(const SVec& v) {
    std::string s = "{";
    for (std::size_t k = 0; k < v.t.size(); ++k) {
        if (k) s += ", ";
        s += std::to_string(v.t[k].i) + ":" + v.t[k].c.str();
    }
    return s + "}";
}

// ---------------------------------------------------------------- LinMap

LinMap LinMap::identity(std::size_t n) {
    LinMap m(n, n);
    for (std::size_t j = 0; j < n; ++j) m.col[j] = SVec::unit(static_cast<Index>(j));
    return m;
}

SVec LinMap::apply(const SVec& v) const {
    if (v.t.size() == 1 && v.t[0].c.is_one()) return col[v.t[0].i];
    Accumulator acc;
    for (const auto& [j, c] : v.t) acc.add(c, col[j]);
    return acc.take();
}

LinMap LinMap::then(const LinMap& after) const {
    if (after.src != dst) throw Error("DimensionMismatch", "composition of incompatible maps");
    LinMap out(src, after.dst);
    for (std::size_t j = 0; j < src; ++j) out.col[j] = after.apply(col[j]);
    return out;
}

// ---------------------------------------------------------------- dense Matrix

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rs) {
    Matrix m(rs.size(), rs.empty() ? 0 : rs[0].size());
    for (std::size_t r = 0; r < rs.size(); ++r) {
        if (rs[r].size() != m.cols) throw Error("DimensionMismatch", "ragged matrix rows");
        for (std::size_t c = 0; c < m.cols; ++c) m(r, c) = rs[r][c];
    }
    return m;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

std::vector<Scalar> Matrix::mul(const std::vector<Scalar>& v) const {
    if (v.size() != cols) throw Error("DimensionMismatch", "matrix-vector product");
    std::vector<Scalar> out(rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (!(*this)(r, c).is_zero() && !v[c].is_zero()) out[r] += (*this)(r, c) * v[c];
    return out;
}

RrefResult rref(const Matrix& m) {
    RrefResult res{m, {}};
    Matrix& a = res.reduced;
    std::size_t row = 0;
    for (std::size_t c = 0; c < a.cols && row < a.rows; ++c) {
        std::size_t piv = row;
        while (piv < a.rows && a(piv, c).is_zero()) ++piv;
        if (piv == a.rows) continue;
        if (piv != row)
            for (std::size_t k = 0; k < a.cols; ++k) std::swap(a(piv, k), a(row, k));
        Scalar inv = a(row, c).inverse();
        for (std::size_t k = c; k < a.cols; ++k) a(row, k) *= inv;
        for (std::size_t r = 0; r < a.rows; ++r) {
            if (r == row || a(r, c).is_zero()) continue;
            Scalar f = a(r, c);
            for (std::size_t k = c; k < a.cols; ++k)
                if (!a(row, k).is_zero()) a(r, k) -= f * a(row, k);
        }
        res.pivots.push_back(c);
        ++row;
    }
    return res;
}

std::vector<std::vector<Scalar>> kernel_basis(const Matrix& m) {
    auto [r, piv] = rref(m);
    std::vector<bool> is_piv(m.cols, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::vector<Scalar>> out;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Scalar> v(m.cols);
        v[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r(k, f);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<std::vector<Scalar>> solve(const Matrix& a, const std::vector<Scalar>& b) {
    if (b.size() != a.rows) throw Error("DimensionMismatch", "right-hand side length");
    Matrix aug(a.rows, a.cols + 1);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < a.cols; ++c) aug(r, c) = a(r, c);
        aug(r, a.cols) = b[r];
    }
    auto [red, piv] = rref(aug);
    if (!piv.empty() && piv.back() == a.cols) return std::nullopt;
    std::vector<Scalar> x(a.cols);
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = red(k, a.cols);
    return x;
}

std::vector<Scalar> solve_or_throw(const Matrix& a, const std::vector<Scalar>& b) {
    auto x = solve(a, b);
    if (!x) throw Error("NoSolution", "right-hand side is not in the column space");
    return *x;
}

// ---------------------------------------------------------------- Echelon

namespace {

// v := v - f * row, where row's leading index equals v.t[pos].i; entries of v
// before pos are untouched.
void eliminate_at(SVec& v, std::size_t pos, const SVec& row) {
    Scalar f = v.t[pos].c;
    std::vector<Term> out;
    out.reserve(v.t.size() + row.t.size());
    for (std::size_t k = 0; k < pos; ++k) out.push_back(std::move(v.t[k]));
    std::size_t p = pos + 1, q = 1;
    while (p < v.t.size() || q < row.t.size()) {
        if (q == row.t.size() || (p < v.t.size() && v.t[p].i < row.t[q].i)) {
            out.push_back(std::move(v.t[p++]));
        } else if (p == v.t.size() || row.t[q].i < v.t[p].i) {
            out.push_back({row.t[q].i, -(f * row.t[q].c)});
            ++q;
        } else {
            Scalar c = std::move(v.t[p].c);
            c -= f * row.t[q].c;
            if (!c.is_zero()) out.push_back({v.t[p].i, std::move(c)});
            ++p;
            ++q;
        }
    }
    v.t = std::move(out);
}

}  // namespace

void Echelon::reduce_leading(SVec& v) const {
    while (!v.t.empty()) {
        std::int32_t s = slot_[v.t[0].i];
        if (s < 0) return;
        eliminate_at(v, 0, rows_[static_cast<std::size_t>(s)]);
    }
}

bool Echelon::insert(SVec v) {
    reduce_leading(v);
    if (v.t.empty()) return false;
    Scalar inv = v.t[0].c.inverse();
    if (!inv.is_one())
        for (auto& term : v.t) term.c *= inv;
    slot_[v.t[0].i] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(v));
    finalized_ = false;
    return true;
}

SVec Echelon::normal_form(SVec v) const {
    std::size_t pos = 0;
    while (pos < v.t.size()) {
        std::int32_t s = slot_[v.t[pos].i];
        if (s < 0) {
            ++pos;
            continue;
        }
        eliminate_at(v, pos, rows_[static_cast<std::size_t>(s)]);
    }
    return v;
}

void Echelon::finalize() {
    if (finalized_) return;
    std::vector<Index> piv = pivots();
    for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
        SVec& row = rows_[static_cast<std::size_t>(slot_[*it])];
        std::size_t pos = 1;
        while (pos < row.t.size()) {
            std::int32_t s = slot_[row.t[pos].i];
            if (s < 0) {
                ++pos;
                continue;
            }
            eliminate_at(row, pos, rows_[static_cast<std::size_t>(s)]);
        }
    }
    finalized_ = true;
}

std::vector<Index> Echelon::pivots() const {
    std::vector<Index> p;
    p.reserve(rows_.size());
    for (std::size_t c = 0; c < n_; ++c)
        if (slot_[c] >= 0) p.push_back(static_cast<Index>(c));
    return p;
}

std::vector<SVec> Echelon::basis() const {
    std::vector<SVec> out;
    out.reserve(rows_.size());
    for (Index c : pivots()) out.push_back(pivot_row(c));
    return out;
}

// ---------------------------------------------------------------- QuotientSpace

QuotientSpace::QuotientSpace(std::size_t ambient_dim, const std::vector<SVec>& relations) {
    Echelon e(ambient_dim);
    for (const auto& r : relations) e.insert(r);
    *this = from_echelon(std::move(e));
}

QuotientSpace QuotientSpace::from_echelon(Echelon e) {
    e.finalize();
    QuotientSpace q;
    q.ambient_ = e.ncols();
    q.coord_.assign(q.ambient_, -1);
    for (std::size_t c = 0; c < q.ambient_; ++c) {
        if (!e.is_pivot(static_cast<Index>(c))) {
            q.coord_[c] = static_cast<std::int32_t>(q.section_.size());
            q.section_.push_back(static_cast<Index>(c));
        }
    }
    q.red_.resize(q.ambient_);
    for (Index p : e.pivots()) {
        const SVec& row = e.pivot_row(p);
        SVec r;
        r.t.reserve(row.t.size() - 1);
        for (std::size_t k = 1; k < row.t.size(); ++k)
            r.t.push_back({static_cast<Index>(q.coord_[row.t[k].i]), -row.t[k].c});
        q.red_[p] = std::move(r);
    }
    return q;
}

SVec QuotientSpace::project_basis(Index a) const {
    if (coord_[a] >= 0) return SVec::unit(static_cast<Index>(coord_[a]));
    return red_[a];
}

SVec QuotientSpace::project(const SVec& v) const {
    bool simple = true;
    for (const auto& term : v.t)
        if (coord_[term.i] < 0) {
            simple = false;
            break;
        }
    SVec out;
    if (simple) {
        // Section coordinates are increasing in the ambient index.
        out.t.reserve(v.t.size());
        for (const auto& [i, c] : v.t) out.t.push_back({static_cast<Index>(coord_[i]), c});
        return out;
    }
    Accumulator acc;
    for (const auto& [i, c] : v.t) {
        if (coord_[i] >= 0)
            acc.add(static_cast<Index>(coord_[i]), c);
        else
            acc.add(c, red_[i]);
    }
    return acc.take();
}

SVec QuotientSpace::lift(const SVec& q) const {
    SVec out;
    out.t.reserve(q.t.size());
    for (const auto& [i, c] : q.t) out.t.push_back({section_[i], c});
    return out;
}

std::vector<SVec> QuotientSpace::relation_basis() const {
    std::vector<SVec> out;
    for (std::size_t p = 0; p < ambient_; ++p) {
        if (coord_[p] >= 0) continue;
        SVec row = lift(scaled(red_[p], Scalar(-1)));
        row.t.insert(row.t.begin(), Term{static_cast<Index>(p), Scalar(1)});
        out.push_back(SVec::from_terms(std::move(row.t)));
    }
    return out;
}

bool QuotientSpace::same_as(const QuotientSpace& o) const {
    return ambient_ == o.ambient_ && coord_ == o.coord_ && red_ == o.red_;
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(std::size_t ambient, const std::vector<SVec>& spanning) : e_(ambient) {
    for (const auto& v : spanning) e_.insert(v);
    e_.finalize();
}

bool Subspace::includes(const Subspace& o) const {
    for (const auto& v : o.basis())
        if (!contains(v)) return false;
    return true;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    std::vector<SVec> all = a.basis();
    for (auto& v : b.basis()) all.push_back(std::move(v));
    return Subspace(a.ambient_dim(), all);
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    // u = sum x_k a_k lies in b iff the (linear) normal form modulo b vanishes.
    std::vector<SVec> ab = a.basis();
    LinMap nf(ab.size(), a.ambient_dim());
    for (std::size_t k = 0; k < ab.size(); ++k) nf.col[k] = b.echelon().normal_form(ab[k]);
    std::vector<SVec> out;
    for (const auto& x : kernel(nf)) {
        Accumulator acc;
        for (const auto& [k, c] : x.t) acc.add(c, ab[k]);
        out.push_back(acc.take());
    }
    return Subspace(a.ambient_dim(), out);
}

Subspace subspace_closure(const Subspace& a, const std::vector<LinMap>& ops) {
    Subspace s(a.ambient_dim());
    std::vector<SVec> queue = a.basis();
    for (const auto& v : queue) s.add(v);
    for (std::size_t k = 0; k < queue.size(); ++k) {
        for (const auto& op : ops) {
            SVec w = op.apply(queue[k]);
            if (s.add(w)) queue.push_back(std::move(w));
        }
    }
    return Subspace(a.ambient_dim(), s.basis());
}

// ---------------------------------------------------------------- kernels / solving

ColumnSolver::ColumnSolver(const LinMap& m) : src_(m.src), dst_(m.dst), e_(m.dst + m.src) {
    for (std::size_t j = 0; j < m.src; ++j) {
        SVec v = m.col[j];
        v.t.push_back({static_cast<Index>(dst_ + j), Scalar(1)});
        e_.insert(std::move(v));
    }
    e_.finalize();
    for (Index p : e_.pivots()) {
        if (p < dst_) {
            ++rank_;
            continue;
        }
        SVec k;
        for (const auto& [i, c] : e_.pivot_row(p).t) k.t.push_back({static_cast<Index>(i - dst_), c});
        kernel_.push_back(std::move(k));
    }
}

std::optional<SVec> ColumnSolver::solve(const SVec& b) const {
    SVec r = e_.normal_form(b);
    if (!r.t.empty() && r.t[0].i < dst_) return std::nullopt;
    SVec x;
    x.t.reserve(r.t.size());
    for (const auto& [i, c] : r.t) x.t.push_back({static_cast<Index>(i - dst_), -c});
    return x;
}

std::vector<SVec> kernel(const LinMap& m) { return ColumnSolver(m).kernel(); }

}  // namespace hopfalg
