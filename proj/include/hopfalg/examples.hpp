#pragma once

#include "hopfalg/bialgebroid.hpp"

namespace hopfalg::examples {

// k[x]/(x^n) with basis 1, x, ..., x^{n-1}.
FiniteAlgebra truncated_polynomial(std::size_t n, const std::string& var = "x", std::uint32_t p = 0);
// Functions on an n-point set: e_i e_j = delta_ij e_i.
FiniteAlgebra split(std::size_t n);
// Upper-triangular 2x2 matrices, basis E11, E12, E22.
FiniteAlgebra upper_triangular();
// A (x) B with basis a_i b_j at index i*dim(B) + j.
FiniteAlgebra tensor_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b, const std::string& name);
// Group algebra of Z2 x Z2, basis g_{ab} at index 2a + b.
FiniteAlgebra klein_group_algebra();
// Q[Z2 x Z2] as a bialgebroid over k with group-like coproduct.
Bialgebroid klein_bialgebroid();
// Q[x]/(x^3) (x) Q[y]/(y^3), basis x^i y^j at index 3i + j.
FiniteAlgebra moyal_base(std::uint32_t p = 0, std::size_t trunc = 3);

}  // namespace hopfalg::examples
