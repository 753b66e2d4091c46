#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfalg/scalar.hpp"

namespace hopfalg {

using Index = std::uint32_t;

struct Term {
    Index i;
    Scalar c;
};

// Sparse vector: strictly increasing indices, no stored zeros.
struct SVec {
    std::vector<Term> t;

    SVec() = default;
    static SVec unit(Index i) {
        SVec v;
        v.t.push_back({i, Scalar(1)});
        return v;
    }
    // Sorts, merges duplicate indices and drops zeros.
    static SVec from_terms(std::vector<Term> terms);
    static SVec from_dense(const std::vector<Scalar>& d);

    bool empty() const { return t.empty(); }
    std::size_t nnz() const { return t.size(); }
    Scalar at(Index i) const;
    std::vector<Scalar> dense(std::size_t n) const;
    Index max_index() const { return t.empty() ? 0 : t.back().i; }

    SVec& operator+=(const SVec& o);
    SVec& operator-=(const SVec& o);
    friend SVec operator+(SVec a, const SVec& b) { return a += b; }
    friend SVec operator-(SVec a, const SVec& b) { return a -= b; }
    friend bool operator==(const SVec& a, const SVec& b);
    friend bool operator!=(const SVec& a, const SVec& b) { return !(a == b); }
};

SVec scaled(const SVec& v, const Scalar& c);
// y += a * x
void axpy(SVec& y, const Scalar& a, const SVec& x);
std::string to_string(const SVec& v);

// Accumulates many terms into a sparse vector without repeated merging.
class Accumulator {
public:
    void add(Index i, const Scalar& c) {
        if (!c.is_zero()) terms_.push_back({i, c});
    }
    void add(const Scalar& a, const SVec& v) {
        for (const auto& [i, c] : v.t) terms_.push_back({i, a * c});
    }
    void add(const SVec& v) {
        for (const auto& term : v.t) terms_.push_back(term);
    }
    SVec take() { return SVec::from_terms(std::move(terms_)); }

private:
    std::vector<Term> terms_;
};

// Linear map stored by columns: col[j] = image of the j-th source basis vector.
struct LinMap {
    std::size_t src = 0;
    std::size_t dst = 0;
    std::vector<SVec> col;

    LinMap() = default;
    LinMap(std::size_t s, std::size_t d) : src(s), dst(d), col(s) {}
    static LinMap identity(std::size_t n);
    static LinMap zero(std::size_t s, std::size_t d) { return LinMap(s, d); }

    SVec apply(const SVec& v) const;
    SVec apply_basis(Index j) const { return col[j]; }
    // (after ∘ this)
    LinMap then(const LinMap& after) const;
    friend bool operator==(const LinMap& a, const LinMap& b) {
        return a.src == b.src && a.dst == b.dst && a.col == b.col;
    }
};

// Dense matrix; used for the small user-facing linear-algebra primitives.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Scalar> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rs);
    static Matrix identity(std::size_t n);
    Scalar& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    std::vector<Scalar> mul(const std::vector<Scalar>& v) const;
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

RrefResult rref(const Matrix& m);
std::vector<std::vector<Scalar>> kernel_basis(const Matrix& m);
// Free variables are set to zero; nullopt when b is not in the column space.
std::optional<std::vector<Scalar>> solve(const Matrix& a, const std::vector<Scalar>& b);
// Throwing variant (NoSolution).
std::vector<Scalar> solve_or_throw(const Matrix& a, const std::vector<Scalar>& b);

// Incremental sparse row echelon form. Rows are normalised so their leading
// entry is 1; finalize() back-substitutes to reduced row echelon form.
class Echelon {
public:
    explicit Echelon(std::size_t ncols = 0) : n_(ncols), slot_(ncols, -1) {}

    std::size_t ncols() const { return n_; }
    std::size_t rank() const { return rows_.size(); }
    // Inserts v; returns false when v is already in the span.
    bool insert(SVec v);
    // Full reduction: remainder of v modulo the span (zero iff contained).
    SVec normal_form(SVec v) const;
    bool contains(const SVec& v) const { return normal_form(v).empty(); }
    void finalize();
    bool finalized() const { return finalized_; }
    std::vector<Index> pivots() const;
    const SVec& pivot_row(Index col) const { return rows_[static_cast<std::size_t>(slot_[col])]; }
    bool is_pivot(Index col) const { return slot_[col] >= 0; }
    // Rows in order of increasing pivot column.
    std::vector<SVec> basis() const;

private:
    // Reduces while the leading entry sits on a pivot column.
    void reduce_leading(SVec& v) const;

    std::size_t n_;
    std::vector<std::int32_t> slot_;
    std::vector<SVec> rows_;
    bool finalized_ = true;
};

// V / span(relations) with the canonical section: every quotient basis vector
// is the ambient basis vector of a non-pivot column of rref(relations).
class QuotientSpace {
public:
    QuotientSpace() = default;
    QuotientSpace(std::size_t ambient_dim, const std::vector<SVec>& relations);
    static QuotientSpace from_echelon(Echelon e);
    static QuotientSpace identity(std::size_t n) { return QuotientSpace(n, {}); }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return section_.size(); }
    std::size_t rank() const { return ambient_ - section_.size(); }

    SVec project(const SVec& v) const;
    SVec project_basis(Index ambient_index) const;
    SVec lift(const SVec& q) const;
    Index section(Index q) const { return section_[q]; }
    const std::vector<Index>& sections() const { return section_; }
    // Quotient coordinate of an ambient index, or -1 for pivot columns.
    std::int32_t coord(Index ambient_index) const { return coord_[ambient_index]; }
    // Reduced relation rows (rref), by increasing pivot.
    std::vector<SVec> relation_basis() const;
    bool same_as(const QuotientSpace& o) const;

private:
    std::size_t ambient_ = 0;
    std::vector<std::int32_t> coord_;
    std::vector<Index> section_;
    std::vector<SVec> red_;  // pivot column -> its class in quotient coordinates
};

// Finite-dimensional subspace given by an echelon basis.
class Subspace {
public:
    explicit Subspace(std::size_t ambient = 0) : e_(ambient) {}
    Subspace(std::size_t ambient, const std::vector<SVec>& spanning);

    std::size_t ambient_dim() const { return e_.ncols(); }
    std::size_t dim() const { return e_.rank(); }
    bool contains(const SVec& v) const { return e_.contains(v); }
    bool add(const SVec& v) { return e_.insert(v); }
    std::vector<SVec> basis() const { return e_.basis(); }
    const Echelon& echelon() const { return e_; }
    bool includes(const Subspace& o) const;
    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.dim() == b.dim() && a.includes(b);
    }

private:
    Echelon e_;
};

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
// Smallest subspace containing `a` and stable under every operator in ops.
Subspace subspace_closure(const Subspace& a, const std::vector<LinMap>& ops);

// Kernel of a sparse linear map (basis vectors over the source).
std::vector<SVec> kernel(const LinMap& m);
// Column space reduction used to solve m x = b for many right-hand sides.
class ColumnSolver {
public:
    explicit ColumnSolver(const LinMap& m);
    std::size_t rank() const { return rank_; }
    const std::vector<SVec>& kernel() const { return kernel_; }
    bool injective() const { return kernel_.empty(); }
    bool surjective() const { return rank_ == dst_; }
    // Some solution of m x = b, or nullopt.
    std::optional<SVec> solve(const SVec& b) const;

private:
    std::size_t src_, dst_, rank_ = 0;
    Echelon e_;
    std::vector<SVec> kernel_;
};

}  // namespace hopfalg
