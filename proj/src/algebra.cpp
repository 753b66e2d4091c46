#include "hopfalg/algebra.hpp"

#include <set>

#include "hopfalg/errors.hpp"

namespace hopfalg {

SVec FiniteAlgebra::multiply(const SVec& a, const SVec& b) const {
    if (a.t.size() == 1 && b.t.size() == 1 && a.t[0].c.is_one() && b.t[0].c.is_one()) return prod(a.t[0].i, b.t[0].i);
    Accumulator acc;
    for (const auto& [i, ci] : a.t)
        for (const auto& [j, cj] : b.t) acc.add(ci * cj, prod(i, j));
    return acc.take();
}

LinMap FiniteAlgebra::left_mult(const SVec& a) const {
    LinMap m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) m.col[j] = multiply(a, SVec::unit(static_cast<Index>(j)));
    return m;
}

LinMap FiniteAlgebra::right_mult(const SVec& a) const {
    LinMap m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) m.col[j] = multiply(SVec::unit(static_cast<Index>(j)), a);
    return m;
}

std::string FiniteAlgebra::describe(const SVec& v) const {
    if (v.t.empty()) return "0";
    std::string s;
    for (const auto& [i, c] : v.t) {
        std::string coef = c.str();
        if (!s.empty()) s += coef[0] == '-' ? " - " : " + ";
        else if (coef[0] == '-') s += "-";
        if (coef[0] == '-') coef = coef.substr(1);
        std::string name = i < basis.size() ? basis[i] : "e" + std::to_string(i);
        s += coef == "1" ? name : coef + "*" + name;
    }
    return s;
}

bool is_commutative(const FiniteAlgebra& a) {
    for (Index i = 0; i < a.dim; ++i)
        for (Index j = i + 1; j < a.dim; ++j)
            if (a.prod(i, j) != a.prod(j, i)) return false;
    return true;
}

void validate_algebra(FiniteAlgebra& a, bool declared_commutative) {
    const std::size_t n = a.dim;
    for (Index i = 0; i < n; ++i) {
        SVec e = SVec::unit(i);
        if (a.multiply(a.unit, e) != e || a.multiply(e, a.unit) != e)
            throw Error("BadUnit", "unit law fails for basis element " + a.basis[i], "i=" + a.basis[i]);
    }
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            const SVec& ij = a.prod(i, j);
            for (Index k = 0; k < n; ++k) {
                Accumulator lhs;
                for (const auto& [l, c] : ij.t) lhs.add(c, a.prod(l, k));
                Accumulator rhs;
                for (const auto& [l, c] : a.prod(j, k).t) rhs.add(c, a.prod(i, l));
                if (lhs.take() != rhs.take())
                    throw Error("NotAssociative", "(e_i e_j) e_k != e_i (e_j e_k)",
                                "i=" + a.basis[i] + ", j=" + a.basis[j] + ", k=" + a.basis[k]);
            }
        }
    bool comm = is_commutative(a);
    if (declared_commutative && !comm) {
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                if (a.prod(i, j) != a.prod(j, i))
                    throw Error("NotCommutative", "declared commutative but e_i e_j != e_j e_i",
                                "i=" + a.basis[i] + ", j=" + a.basis[j]);
    }
    a.commutative = comm;
}

FiniteAlgebra make_algebra(const AlgebraSpec& spec) {
    if (spec.dim == 0) throw Error("BadInput", "algebra dimension must be positive");
    if (spec.basis.size() != spec.dim) throw Error("BadInput", "basis names do not match dimension");
    std::set<std::string> names(spec.basis.begin(), spec.basis.end());
    if (names.size() != spec.basis.size()) throw Error("BadInput", "basis names are not unique");
    if (spec.unit.size() != spec.dim) throw Error("BadInput", "unit vector has wrong length");
    FiniteAlgebra a;
    a.name = spec.name;
    a.field = spec.field;
    a.dim = spec.dim;
    a.basis = spec.basis;
    auto conv = [&](const Scalar& c) { return spec.field ? c.in_field(spec.field) : c; };
    std::vector<Scalar> unit;
    for (const auto& c : spec.unit) unit.push_back(conv(c));
    a.unit = SVec::from_dense(unit);
    std::vector<std::vector<Term>> terms(spec.dim * spec.dim);
    for (const auto& e : spec.mul) {
        if (e.i >= spec.dim || e.j >= spec.dim || e.k >= spec.dim)
            throw Error("BadInput", "structure constant index out of range");
        terms[e.i * spec.dim + e.j].push_back({e.k, conv(e.c)});
    }
    a.mul.resize(spec.dim * spec.dim);
    for (std::size_t k = 0; k < terms.size(); ++k) a.mul[k] = SVec::from_terms(std::move(terms[k]));
    validate_algebra(a, spec.declared_commutative);
    return a;
}

FiniteAlgebra opposite(const FiniteAlgebra& a) {
    FiniteAlgebra o = a;
    o.name = a.name + "^op";
    for (Index i = 0; i < a.dim; ++i)
        for (Index j = 0; j < a.dim; ++j) o.mul[i * a.dim + j] = a.prod(j, i);
    return o;
}

SVec tensor(const SVec& a, const SVec& b, std::size_t n2) {
    SVec out;
    out.t.reserve(a.t.size() * b.t.size());
    for (const auto& [i, ci] : a.t)
        for (const auto& [j, cj] : b.t) out.t.push_back({tidx(i, j, n2), ci * cj});
    return out;  // indices already increasing
}

SVec apply_tensor(const LinMap* f, const LinMap* g, const SVec& w, std::size_t n2) {
    std::size_t out2 = g ? g->dst : n2;
    Accumulator acc;
    for (const auto& [idx, c] : w.t) {
        Index i = static_cast<Index>(idx / n2), j = static_cast<Index>(idx % n2);
        SVec fi = f ? f->col[i] : SVec::unit(i);
        SVec gj = g ? g->col[j] : SVec::unit(j);
        for (const auto& [a, ca] : fi.t)
            for (const auto& [b, cb] : gj.t) acc.add(tidx(a, b, out2), c * ca * cb);
    }
    return acc.take();
}

FiniteAlgebra enveloping(const FiniteAlgebra& b) {
    FiniteAlgebra e;
    e.name = b.name + "^e";
    e.field = b.field;
    e.dim = b.dim * b.dim;
    for (std::size_t i = 0; i < b.dim; ++i)
        for (std::size_t j = 0; j < b.dim; ++j) e.basis.push_back(b.basis[i] + "⊗" + b.basis[j]);
    e.unit = tensor(b.unit, b.unit, b.dim);
    e.mul.resize(e.dim * e.dim);
    for (Index i = 0; i < b.dim; ++i)
        for (Index j = 0; j < b.dim; ++j)
            for (Index k = 0; k < b.dim; ++k)
                for (Index l = 0; l < b.dim; ++l)
                    e.mul[env_index(b, i, j) * e.dim + env_index(b, k, l)] = tensor(b.prod(i, k), b.prod(l, j), b.dim);
    e.commutative = b.commutative;
    return e;
}

std::vector<Index> algebra_generators(const FiniteAlgebra& a) {
    std::vector<Index> gens;
    auto span_of = [&](const std::vector<Index>& g) {
        std::vector<LinMap> ops;
        for (Index x : g) ops.push_back(a.right_mult(SVec::unit(x)));
        return subspace_closure(Subspace(a.dim, {a.unit}), ops);
    };
    Subspace current = span_of(gens);
    for (Index i = 0; i < a.dim && current.dim() < a.dim; ++i) {
        if (current.contains(SVec::unit(i))) continue;
        gens.push_back(i);
        current = span_of(gens);
    }
    return gens;
}

FiniteAlgebra subalgebra(const FiniteAlgebra& a, const std::vector<SVec>& basis, const std::string& name) {
    LinMap inc(basis.size(), a.dim);
    inc.col = basis;
    ColumnSolver cs(inc);
    if (!cs.injective()) throw Error("BadInput", "subalgebra basis is linearly dependent");
    auto coords = [&](const SVec& v) {
        auto x = cs.solve(v);
        if (!x) throw Error("NotClosed", "subspace is not closed under multiplication", a.describe(v));
        return *x;
    };
    FiniteAlgebra s;
    s.name = name;
    s.field = a.field;
    s.dim = basis.size();
    for (const auto& v : basis) s.basis.push_back(a.describe(v));
    s.unit = coords(a.unit);
    s.mul.resize(s.dim * s.dim);
    for (std::size_t p = 0; p < s.dim; ++p)
        for (std::size_t q = 0; q < s.dim; ++q) s.mul[p * s.dim + q] = coords(a.multiply(basis[p], basis[q]));
    s.commutative = is_commutative(s);
    return s;
}

FiniteAlgebra quotient_algebra(const FiniteAlgebra& a, const QuotientSpace& q, const std::string& name) {
    FiniteAlgebra r;
    r.name = name;
    r.field = a.field;
    r.dim = q.dim();
    for (Index s : q.sections()) r.basis.push_back("[" + a.basis[s] + "]");
    r.unit = q.project(a.unit);
    r.mul.resize(r.dim * r.dim);
    for (Index p = 0; p < r.dim; ++p)
        for (Index k = 0; k < r.dim; ++k) r.mul[p * r.dim + k] = q.project(a.prod(q.section(p), q.section(k)));
    r.commutative = is_commutative(r);
    return r;
}

Report check_map(const LinMap& f, MapKind kind, const FiniteAlgebra& src, const FiniteAlgebra& dst) {
    Report r;
    if (f.src != src.dim || f.dst != dst.dim) throw Error("DimensionMismatch", "map does not match algebras");
    switch (kind) {
        case MapKind::Algebra:
        case MapKind::AntiAlgebra: {
            bool anti = kind == MapKind::AntiAlgebra;
            r.add("unit preserved", f.apply(src.unit) == dst.unit, f.apply(src.unit) == dst.unit ? "" : "f(1) = " + dst.describe(f.apply(src.unit)));
            Witness w;
            for (Index i = 0; i < src.dim && w.ok(); ++i)
                for (Index j = 0; j < src.dim && w.ok(); ++j) {
                    SVec lhs = f.apply(src.prod(i, j));
                    SVec rhs = anti ? dst.multiply(f.col[j], f.col[i]) : dst.multiply(f.col[i], f.col[j]);
                    if (lhs != rhs) w.fail("i=" + src.basis[i] + ", j=" + src.basis[j]);
                }
            w.report(r, anti ? "antimultiplicative" : "multiplicative");
            break;
        }
        case MapKind::LeftLinear:
        case MapKind::Bimodule: {
            if (src.dim != dst.dim) throw Error("DimensionMismatch", "module check needs a common acting algebra");
            std::vector<LinMap> ls, rs;
            for (Index b = 0; b < src.dim; ++b) {
                ls.push_back(src.left_mult(SVec::unit(b)));
                rs.push_back(src.right_mult(SVec::unit(b)));
            }
            r.merge(check_module_map(f, ls, ls, "left"));
            if (kind == MapKind::Bimodule) r.merge(check_module_map(f, rs, rs, "right"));
            break;
        }
    }
    return r;
}

Report check_module_map(const LinMap& f, const std::vector<LinMap>& act_src, const std::vector<LinMap>& act_dst,
                        const std::string& label) {
    Report r;
    Witness w;
    for (std::size_t b = 0; b < act_src.size() && w.ok(); ++b)
        for (Index x = 0; x < f.src && w.ok(); ++x)
            if (f.apply(act_src[b].col[x]) != act_dst[b].apply(f.col[x]))
                w.fail("b=" + std::to_string(b) + ", x=" + std::to_string(x));
    w.report(r, label + "-linear");
    return r;
}

std::string to_string(BalancedKind k) {
    switch (k) {
        case BalancedKind::Diamond: return "diamond_B";
        case BalancedKind::OverB: return "otimes_B";
        case BalancedKind::OverBbar: return "otimes_Bbar";
        case BalancedKind::UpperB: return "otimes^B";
        case BalancedKind::UpperBbar: return "otimes^Bbar";
    }
    return "?";
}

QuotientSpace balanced_quotient(std::size_t dm, std::size_t dn, const std::vector<std::pair<LinMap, LinMap>>& ops) {
    Echelon e(dm * dn);
    for (const auto& [a, b] : ops) {
        for (Index i = 0; i < dm; ++i)
            for (Index j = 0; j < dn; ++j) {
                std::vector<Term> terms;
                for (const auto& [k, c] : a.col[i].t) terms.push_back({tidx(k, j, dn), c});
                for (const auto& [k, c] : b.col[j].t) terms.push_back({tidx(i, k, dn), -c});
                e.insert(SVec::from_terms(std::move(terms)));
            }
    }
    return QuotientSpace::from_echelon(std::move(e));
}

namespace {

const std::vector<LinMap>& need(const std::vector<LinMap>& fam, const Bimodule& m, const char* what, BalancedKind k) {
    if (fam.empty())
        throw Error("MissingAction", to_string(k) + " needs the " + std::string(what) + " action on " + m.name);
    return fam;
}

std::vector<Index> indices_or_all(const std::vector<Index>& idx, std::size_t n) {
    if (!idx.empty()) return idx;
    std::vector<Index> all(n);
    for (std::size_t k = 0; k < n; ++k) all[k] = static_cast<Index>(k);
    return all;
}

}  // namespace

BalancedTensor balanced_tensor(const Bimodule& m, const Bimodule& n, BalancedKind kind,
                               const std::vector<Index>& base_indices) {
    const std::vector<LinMap>* fa = nullptr;
    const std::vector<LinMap>* fb = nullptr;
    switch (kind) {
        case BalancedKind::Diamond:
            fa = &need(m.left_Bbar, m, "left B-bar", kind);
            fb = &need(n.left_B, n, "left B", kind);
            break;
        case BalancedKind::OverB:
            fa = &need(m.right_B, m, "right B", kind);
            fb = &need(n.left_B, n, "left B", kind);
            break;
        case BalancedKind::OverBbar:
            fa = &need(m.right_Bbar, m, "right B-bar", kind);
            fb = &need(n.left_Bbar, n, "left B-bar", kind);
            break;
        case BalancedKind::UpperB:
            fa = &need(m.left_B, m, "left B", kind);
            fb = &need(n.right_B, n, "right B", kind);
            break;
        case BalancedKind::UpperBbar:
            fa = &need(m.left_Bbar, m, "left B-bar", kind);
            fb = &need(n.right_Bbar, n, "right B-bar", kind);
            break;
    }
    std::vector<std::pair<LinMap, LinMap>> ops;
    for (Index b : indices_or_all(base_indices, fa->size())) ops.push_back({(*fa)[b], (*fb)[b]});
    return BalancedTensor{kind, m.dim, n.dim, balanced_quotient(m.dim, n.dim, ops)};
}

bool takeuchi_member(const Bimodule& m, const Bimodule& n, const QuotientSpace& diamond, const SVec& w,
                     const std::vector<Index>& base_indices) {
    for (Index a : indices_or_all(base_indices, m.right_Bbar.size())) {
        SVec lhs = apply_tensor(&m.right_Bbar[a], nullptr, w, n.dim);
        SVec rhs = apply_tensor(nullptr, &n.right_B[a], w, n.dim);
        if (!diamond.project(lhs - rhs).empty()) return false;
    }
    return true;
}

TakeuchiSubspace takeuchi(const Bimodule& m, const Bimodule& n, const std::vector<Index>& base_indices) {
    if (m.right_Bbar.empty() || n.right_B.empty())
        throw Error("MissingAction", "Takeuchi product needs right B-bar on the first and right B on the second factor");
    TakeuchiSubspace ts{balanced_tensor(m, n, BalancedKind::Diamond, base_indices), {}};
    const QuotientSpace& q = ts.host.space;
    auto idx = indices_or_all(base_indices, m.right_Bbar.size());
    LinMap cond(q.dim(), q.dim() * idx.size());
    for (Index c = 0; c < q.dim(); ++c) {
        SVec w = q.lift(SVec::unit(c));
        std::vector<Term> terms;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            SVec d = q.project(apply_tensor(&m.right_Bbar[idx[k]], nullptr, w, n.dim) -
                               apply_tensor(nullptr, &n.right_B[idx[k]], w, n.dim));
            for (auto& [i, v] : d.t) terms.push_back({static_cast<Index>(k * q.dim() + i), v});
        }
        cond.col[c] = SVec::from_terms(std::move(terms));
    }
    ts.basis = kernel(cond);
    return ts;
}

}  // namespace hopfalg
