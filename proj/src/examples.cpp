#include "hopfalg/examples.hpp"

namespace hopfalg::examples {

namespace {

Scalar one(std::uint32_t p) { return p ? Scalar::residue(1, p) : Scalar(1); }

}  // namespace

FiniteAlgebra truncated_polynomial(std::size_t n, const std::string& var, std::uint32_t p) {
    AlgebraSpec s;
    s.name = "k[" + var + "]/(" + var + "^" + std::to_string(n) + ")";
    s.field = p;
    s.dim = n;
    for (std::size_t i = 0; i < n; ++i) s.basis.push_back(i == 0 ? "1" : i == 1 ? var : var + "^" + std::to_string(i));
    s.unit.assign(n, Scalar(0));
    s.unit[0] = one(p);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; i + j < n; ++j) s.mul.push_back({i, j, i + j, one(p)});
    s.declared_commutative = true;
    return make_algebra(s);
}

FiniteAlgebra split(std::size_t n) {
    AlgebraSpec s;
    s.name = "k^" + std::to_string(n);
    s.dim = n;
    for (std::size_t i = 0; i < n; ++i) s.basis.push_back("e" + std::to_string(i + 1));
    s.unit.assign(n, Scalar(1));
    for (Index i = 0; i < n; ++i) s.mul.push_back({i, i, i, Scalar(1)});
    s.declared_commutative = true;
    return make_algebra(s);
}

FiniteAlgebra upper_triangular() {
    AlgebraSpec s;
    s.name = "T2";
    s.dim = 3;
    s.basis = {"E11", "E12", "E22"};
    s.unit = {Scalar(1), Scalar(0), Scalar(1)};
    s.mul = {{0, 0, 0, Scalar(1)}, {0, 1, 1, Scalar(1)}, {1, 2, 1, Scalar(1)}, {2, 2, 2, Scalar(1)}};
    return make_algebra(s);
}

FiniteAlgebra tensor_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b, const std::string& name) {
    FiniteAlgebra t;
    t.name = name;
    t.field = a.field;
    t.dim = a.dim * b.dim;
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < b.dim; ++j) {
            const std::string& x = a.basis[i];
            const std::string& y = b.basis[j];
            t.basis.push_back(x == "1" ? y : y == "1" ? x : x + y);
        }
    t.unit = tensor(a.unit, b.unit, b.dim);
    t.mul.resize(t.dim * t.dim);
    for (Index i = 0; i < a.dim; ++i)
        for (Index j = 0; j < b.dim; ++j)
            for (Index k = 0; k < a.dim; ++k)
                for (Index l = 0; l < b.dim; ++l)
                    t.mul[(i * b.dim + j) * t.dim + k * b.dim + l] = tensor(a.prod(i, k), b.prod(j, l), b.dim);
    validate_algebra(t, a.commutative && b.commutative);
    return t;
}

FiniteAlgebra klein_group_algebra() {
    AlgebraSpec s;
    s.name = "Q[Z2xZ2]";
    s.dim = 4;
    s.basis = {"g00", "g01", "g10", "g11"};
    s.unit = {Scalar(1), Scalar(0), Scalar(0), Scalar(0)};
    for (Index g = 0; g < 4; ++g)
        for (Index h = 0; h < 4; ++h) s.mul.push_back({g, h, g ^ h, Scalar(1)});
    s.declared_commutative = true;
    return make_algebra(s);
}

Bialgebroid klein_bialgebroid() {
    FiniteAlgebra h = klein_group_algebra();
    std::vector<SVec> cop(4);
    LinMap eps(4, 1);
    for (Index g = 0; g < 4; ++g) {
        cop[g] = tensor(SVec::unit(g), SVec::unit(g), 4);
        eps.col[g] = SVec::unit(0);
    }
    return bialgebra_over_field(h, cop, eps, "Q[Z2xZ2]");
}

FiniteAlgebra moyal_base(std::uint32_t p, std::size_t trunc) {
    FiniteAlgebra t = tensor_algebra(truncated_polynomial(trunc, "x", p), truncated_polynomial(trunc, "y", p), "");
    t.name = p ? "F" + std::to_string(p) + "[x,y]/(x^" + std::to_string(trunc) + ",y^" + std::to_string(trunc) + ")"
               : "BM";
    return t;
}

}  // namespace hopfalg::examples
