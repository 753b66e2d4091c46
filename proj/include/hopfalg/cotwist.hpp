#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hopfalg/bialgebroid.hpp"
#include "hopfalg/comodule.hpp"

namespace hopfalg {

using HostPtr = std::shared_ptr<const Bialgebroid>;
using TransPtr = std::shared_ptr<const TranslationMap>;

// Bilinear form Gamma: L x L -> B stored on basis pairs, index X*n + Y.
struct Cocycle {
    HostPtr host;
    TransPtr tm;  // translation map of host
    std::vector<SVec> table;
    Report certificate;

    std::size_t n() const { return host->n(); }
    const SVec& operator()(Index x, Index y) const { return table[static_cast<std::size_t>(x) * n() + y]; }
    SVec eval(const SVec& x, const SVec& y) const;
    // Gamma applied to an ambient element of L (x) L.
    SVec eval_tensor(const SVec& w) const;
};

// Which cocycle conditions check_cocycle insists on. Skipped ones are noted
// in the certificate.
struct CocycleChecks {
    bool balanced = true;
    bool linear = true;
    bool unital = true;
    bool cocycle = true;
};

// Verifies the host (bialgebroid axioms, left Hopf) once and packages it.
struct Host {
    HostPtr l;
    TransPtr tm;
    Report report;  // bialgebroid axioms plus "left Hopf"
};
Host make_host(Bialgebroid l);

// Check names: "balanced", "left Bbar-linear", "unital", "cocycle condition".
Report cocycle_report(const Cocycle& c, const CocycleChecks& which = {});
// Errors: NotBalanced, NotLinear, CounitConditionFailed, CocycleConditionFailed.
Cocycle check_cocycle(const Host& h, std::vector<SVec> table, const CocycleChecks& which = {});
// epsilon(XY).
Cocycle trivial_cocycle(const Host& h);

// B with a._G b = Gamma(s(a), s(b)); associativity re-verified.
FiniteAlgebra twisted_base(const Cocycle& c);
// M with the twisted B^G-actions a._G m = Gamma(a, m(-1)).m(0), m._G a = Gamma(m(-1), a).m(0).
// The coaction is still the L-coaction.
Comodule twisted_bimodule(const Cocycle& c, const Comodule& m);

// Gamma^#: M (x)_{B^G} N -> M (x)_B N on presented quotients.
struct GammaSharp {
    std::string pair;
    QuotientSpace source;  // relations m._G b (x) n - m (x) b._G n
    QuotientSpace target;  // tensor_comodule(host, M, N).space
    LinMap map;            // source coordinates -> target coordinates
    bool bijective = false;
    LinMap inverse;        // filled when bijective
};
GammaSharp gamma_sharp(const Cocycle& c, const Comodule& m, const Comodule& n);
// Gamma^# on one ambient basis pair, unprojected, in M (x) N.
SVec gamma_sharp_ambient(const Cocycle& c, const Comodule& m, const Comodule& n, Index i, Index j);

// B, L with Delta, L with the regular coaction.
std::vector<Comodule> default_family(const Cocycle& c);
// "Gamma# bijective on (M,N)" for every pair of the family (default family if empty).
Report check_invertible(const Cocycle& c, const std::vector<Comodule>& family = {});
// Gamma#_{M(x)N,P} o (Gamma#_{M,N} (x) id) = Gamma#_{M,N(x)P} o (id (x) Gamma#_{N,P}).
Report check_coherence(const Cocycle& c, const Comodule& m, const Comodule& n, const Comodule& p);

struct Cotwist {
    Cocycle gamma;
    Host twisted;             // L^G over B^G, verified left Hopf
    GammaSharp sharp;         // on L_reg (x) L_Delta, source = L^G diamond L^G
    Report report;
};
// Errors: NotInvertibleCocycle, AxiomFailure (internal inconsistency).
Cotwist cotwist(const Cocycle& c);

// M as an L^G-comodule with coaction Gamma#^{-1} o delta. Checks are appended
// to `report` when given: "transported comodule: ..." axioms.
Comodule comodule_transport(const Cotwist& ct, const Comodule& m, Report* report = nullptr);
// Gamma#_{M,N} is L^G-colinear.
Report check_monoidal(const Cotwist& ct, const Comodule& m, const Comodule& n);
// (Delta (x) id) o delta^G = (id (x) delta^G) o delta and the mirrored identity.
Report check_cocommute(const Cotwist& ct, const Comodule& m);
// Gamma^# o lambda^G = lambda o Gamma#' on L (x)_{B^G-bar} L.
Report check_square(const Cotwist& ct);

// Sigma(X, Y) = Gamma(X_+ Y_+, Gamma(Y_-(1), X_-(1)) Y_-(2) X_-(2)), certified on L^G.
Cocycle inverse_cocycle(const Cotwist& ct);
// (Sigma o Gamma)(X, Y) = Gamma(Sigma(X[1], Y[1])._G X[2], Y[2]). Errors: HostMismatch.
Cocycle compose_cocycles(const Cotwist& ct, const Cocycle& sigma, const CocycleChecks& which = {});
// Gamma#-matrices agree: (Sigma o Gamma)^# = Gamma^# o Sigma^# on the default family.
Report check_composite_sharp(const Cotwist& ct, const Cocycle& sigma, const Cocycle& composite);
// Sigma^# = (Gamma^#)^{-1} on the default family.
Report check_inverse_sharp(const Cotwist& ct, const Cocycle& sigma);

// Base = k: compares L^G with the classical Drinfeld cotwist via psi(h) = h1 Gamma(h2, S(h3)).
// Errors: NotConvolutionInvertible, BadInput when the base is not the ground field.
Report hopf_case_compare(const Cocycle& c);

}  // namespace hopfalg
