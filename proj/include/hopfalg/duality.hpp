#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopfalg/cotwist.hpp"
#include "hopfalg/jets.hpp"

namespace hopfalg {

// Operators on B are m x m LinMaps. As vectors of End(B) they use index
// i*m + j for the coefficient of e_i in D(e_j).
SVec op_vector(const LinMap& d);
LinMap op_matrix(const SVec& v, std::size_t m);
// End(B) under composition, basis E_ij at i*m + j.
FiniteAlgebra endomorphism_algebra(const FiniteAlgebra& b);

// delta_b(D)(a) = D(a)b - D(ab).
LinMap delta_op(const FiniteAlgebra& b, const SVec& elem, const LinMap& d);
// Diff^k(B) as a subspace of End(B): D with delta_b0 ... delta_bk (D) = 0 for all basis tuples.
Subspace diff_operators(const FiniteAlgebra& b, std::size_t k);
// Least k with D in Diff^k, or nullopt when D lies in no Diff^k with k <= cap.
std::optional<std::size_t> diff_order(const FiniteAlgebra& b, const LinMap& d, std::size_t cap = 16);

// Diff^k(B) ~ Hom_Bbar(J^k(B), B). Maps phi are jet-coordinates -> B.
struct JetDiffIso {
    JetSpace jet;
    Subspace diff;                      // Diff^k in End(B)
    std::vector<LinMap> hom_basis;      // basis of left Bbar-linear maps J^k -> B
    std::size_t dim_diff = 0, dim_hom = 0;
    Report checks;                      // "dimensions agree", "round trip D", "round trip phi"

    FiniteAlgebra base;
    // phi_D([a (x) b]) = D(a) b. Errors: FactorizationFailure.
    LinMap phi_of(const LinMap& d) const;
    // D_phi(a) = phi([a (x) 1]).
    LinMap d_of(const LinMap& phi) const;
};
JetDiffIso jet_diff_iso(const FiniteAlgebra& b, std::size_t k);

// D(B): the stabilized Diff filtration under composition.
struct DiffBialgebroid {
    Bialgebroid l;
    std::vector<SVec> ops;  // End(B) vector of each basis element
    std::size_t stabilized_at = 0;
    Report report;          // bialgebroid axioms plus coproduct solving notes

    LinMap op(const SVec& x) const;
    // Coordinates of an operator in D(B). Errors: BadInput when it is not a differential operator.
    SVec element(const LinMap& d) const;
};
// s = t = multiplication, eps(D) = D(1), Delta(D) solved from (Delta D)(a (x) b) = D(ab).
// Errors: NotCommutative, NotStabilized, CoproductNotFactorizable, AxiomFailure.
DiffBialgebroid diff_bialgebroid(const FiniteAlgebra& b, std::size_t cap = 16);

// Bilinear form Lambda x L -> B, table index X * dim L + alpha.
struct DualPairing {
    std::shared_ptr<const Bialgebroid> lhs;  // Lambda (operators)
    std::shared_ptr<const Bialgebroid> rhs;  // L
    std::vector<SVec> table;
    Report report;

    const SVec& operator()(Index x, Index a) const { return table[static_cast<std::size_t>(x) * rhs->n() + a]; }
    SVec eval(const SVec& x, const SVec& a) const;
};

// Axioms of a dual pairing. Check names: "common base", "axiom 1 (s(a)X)", "axiom 1 (t(a)X)",
// "axiom 1 (X s(a))", "axiom 1 (X t(a))", "axiom 1 (f)", "axiom 2 (right)", "axiom 2 (left)",
// "axiom 3 (right)", "axiom 3 (left)", "axiom 4", "axiom 5".
Report pairing_report(const Bialgebroid& lam, const Bialgebroid& l, const std::vector<SVec>& table);
// Errors: PairingAxiomFailure (first failing axiom), DimensionMismatch.
DualPairing make_pairing(std::shared_ptr<const Bialgebroid> lam, std::shared_ptr<const Bialgebroid> l,
                         std::vector<SVec> table);

// J(B) = B^e / mu_infinity with its class map.
struct JetAlgebroid {
    Host host;
    QuotientSpace quotient;  // B^e -> J(B) coordinates
    SVec jet_class(const SVec& a, const SVec& b) const;
};
JetAlgebroid jet_algebroid(const FiniteAlgebra& b, std::size_t cap = 16);

// <D|[a (x) b]> = D(a) b. Checks "well defined" (D kills mu_infinity) before the axioms.
DualPairing canonical_pairing(const DiffBialgebroid& d, const JetAlgebroid& j);

// A left Lambda-module given by the action of each basis element.
struct LModule {
    std::string name;
    std::size_t dim = 0;
    std::vector<LinMap> act;
    SVec apply(const SVec& x, const SVec& m) const;
};
LModule base_module(const Bialgebroid& lam);     // X . b = eps(X s(b))
LModule regular_module(const Bialgebroid& lam);  // left multiplication
// alpha . m = <alpha|m(-1)> m(0).
LModule module_from_comodule(const DualPairing& p, const Comodule& m);
// Axioms of a left module (unit, associativity of the action).
Report verify_module(const Bialgebroid& lam, const LModule& m);

struct XuCocycle {
    std::shared_ptr<const Bialgebroid> host;
    SVec f;  // ambient representative F^alpha (x) F_alpha in Lambda (x) Lambda
    Report certificate;
};

// F^#: M diamond_{B^F} N -> M diamond_B N.
struct FSharp {
    std::string pair;
    QuotientSpace source, target;
    LinMap map;
    bool bijective = false;
    LinMap inverse;
};
// B with a._F b = eps(F^alpha s(a)) eps(F_alpha s(b)). Errors: NotAssociative and friends.
FiniteAlgebra f_twisted_base(const Bialgebroid& lam, const SVec& f);
FSharp f_sharp(const Bialgebroid& lam, const SVec& f, const LModule& m, const LModule& n);

// Checks "counit (eps diamond id)", "counit (id diamond eps)", "cocycle condition",
// "twisted base associative", "F# bijective on (M,N)" for the family {B, Lambda} plus `extra`.
// Errors: CounitFailed, CocycleConditionFailed, NotInvertible, DimensionMismatch.
XuCocycle check_xu_cocycle(std::shared_ptr<const Bialgebroid> lam, SVec f, const std::vector<LModule>& extra = {});
XuCocycle trivial_xu_cocycle(std::shared_ptr<const Bialgebroid> lam);

// F = sum_n theta^n/n! u^n diamond v^n for commuting derivations u, v of B,
// truncated where u^n or v^n vanishes. Errors: BadInput when the series does not terminate.
SVec moyal_twist(const DiffBialgebroid& d, const LinMap& u, const LinMap& v, const Scalar& theta);

// Lambda^F over B^F with the unchanged product and counit. Re-verified (AxiomFailure).
Bialgebroid twist_bialgebroid_by_F(const XuCocycle& f);

// Gamma_F(X, Y) = <F^alpha | X t(<F_alpha|Y>)>, certified on `host` (the pairing's L).
// `report` receives "F-action identity on (M,N)" for the default comodule family.
Cocycle dualize_cocycle(const XuCocycle& f, const DualPairing& p, const Host& host, Report* report = nullptr);

// [alpha|X] = <F^alpha alpha | X_+ t(<F_alpha|X_->)>, axioms re-verified against Lambda^F and L^Gamma.
DualPairing twisted_pairing(const XuCocycle& f, const DualPairing& p, std::shared_ptr<const Bialgebroid> lambda_f,
                            const Cotwist& l_gamma);

struct QuantizedJet {
    std::shared_ptr<const Bialgebroid> diff_twisted;  // D(B)^F
    Cotwist jet;                                      // J(B)^Gamma
    Cocycle inverse;                                  // Gamma^{-1} on J(B)^Gamma
    DualPairing pairing;                              // twisted pairing
    Report conformance;
};
// Runs the whole chain for an F certified on D(B) and checks the closed forms:
// "source", "target", "product", "coproduct", "counit", "translation map", "inverse cocycle",
// plus "cocycle" and "twisted pairing". Errors: ConformanceFailure(form, witness).
QuantizedJet quantized_jet(const DiffBialgebroid& d, const JetAlgebroid& j, const XuCocycle& f);

}  // namespace hopfalg
