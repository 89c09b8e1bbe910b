#pragma once

#include "surflift/cmatrix.hpp"
#include "surflift/cocycle.hpp"
#include "surflift/datum.hpp"
#include "surflift/group.hpp"
#include "surflift/rep.hpp"

#include <cstdint>
#include <vector>

namespace surflift {

/* Global orientation conventions.  The two evaluation routes below involve a
 * sign choice each: the exponent of rho(phi0) in the matrix-side defect and
 * the final exponent applied to every fundamental-class pairing.  They are
 * calibrated once so that the closed-form counts match brute-force
 * enumeration on the acceptance fixtures, then frozen here and asserted in
 * tests. */
inline constexpr int kDefectRelatorExponent = -1;      // sigma
inline constexpr int kPairingOrientationExponent = +1; // tau

/* Restriction of a cocycle to a subgroup of its group, re-indexed to the
 * subgroup's local group. */
TwoCocycle restrict_cocycle(const TwoCocycle& theta, const SubgroupView& sub,
                            const TolerancePolicy& tol = {});

/* The conjugate of a kernel representation by an element a of the total
 * group: h |-> rho(a^-1 h a).  Requires an ordinary rho (trivial cocycle);
 * twisted representations need the correction factors of
 * twisted_conjugate_rep. */
ProjectiveRep conjugate_rep(const Extension& ext, const ProjectiveRep& rho, int a);

/* The twisted conjugate of a kernel theta-representation by a in the total
 * group G': h |-> theta(a^-1, ha) * theta(h, a) / (theta(a, a^-1) *
 * theta(1,1)) * rho(a^-1 h a).  theta lives on G'; the scalar factor makes
 * the result a representation over the same restricted cocycle as rho, which
 * is verified before returning. */
ProjectiveRep twisted_conjugate_rep(const Extension& ext, const TwoCocycle& theta,
                                    const ProjectiveRep& rho, int a,
                                    const TolerancePolicy& tol = {});

/* Base-group elements whose conjugation (through any preimage: one valid
 * preimage implies all are) fixes the class of rho. */
struct StabilizerResult {
    std::vector<int> elements;   // sorted base-group indices, verified subgroup
    std::vector<int> generators; // base indices generating the subgroup
    std::vector<CMatrix> generator_intertwiners; // for the canonical lifts
};

/* Stabilizer of the equivalence class of rho under conjugation by the base
 * group.  Ordinary representations are compared by character (cheap, exact);
 * twisted ones by an intertwiner solve.  Pass theta = nullptr for the
 * ordinary action. */
StabilizerResult stabilizer(const Extension& ext, const ProjectiveRep& rho,
                            const TwoCocycle* theta = nullptr,
                            const TolerancePolicy& tol = {});

/* The unitary M with conjugate(h) = M^-1 rho(h) M where conjugate is the
 * (twisted) conjugate of rho by the total-group element a.  Unique up to a
 * scalar by irreducibility; the scale is fixed by unitarity and the phase by
 * making the first sizable entry (row-major) positive real.  Returns the
 * identity matrix when a is the identity.  Throws when a's image does not
 * stabilize rho. */
CMatrix conjugation_intertwiner(const Extension& ext, const ProjectiveRep& rho, int a,
                                const TwoCocycle* theta = nullptr,
                                const TolerancePolicy& tol = {});

/* The obstruction cocycle of an irreducible kernel representation on (a
 * subgroup of) its stabilizer, together with the choices made to compute it. */
struct ZetaData {
    SubgroupView stab;         // subgroup of the base group
    std::vector<int> lifts;    // per local element: chosen preimage in G'
    std::vector<CMatrix> Ms;   // per local element: intertwiner
    TwoCocycle zeta;           // on stab.local, normalized at the identity
};

/* Solves zeta(a,b) * M_a * M_b = [theta factors] * M_ab * rho(gamma) with
 * gamma = lift(ab)^-1 lift(a) lift(b), where the bracket is
 * theta(lift(a), lift(b)) / theta(lift(ab), gamma) in the twisted case and 1
 * otherwise.  Every solved value must be a scalar matrix (guaranteed for
 * irreducible rho); the result is verified to satisfy the cocycle identity.
 *
 * stab_elements: base elements to build the cocycle on; must form a subgroup
 * of the stabilizer of rho.  lifts_override (one total-group preimage per
 * local element; identity must lift to identity) and M_scale (one nonzero
 * factor per local element; 1 at the identity) exist so tests can perturb
 * the choices: the cohomology class, and hence every fundamental-class
 * pairing, must not move. */
ZetaData zeta_cocycle(const Extension& ext, const ProjectiveRep& rho,
                      const std::vector<int>& stab_elements,
                      const TwoCocycle* theta = nullptr,
                      const std::vector<int>& lifts_override = {},
                      const std::vector<cplx>& M_scale = {},
                      const TolerancePolicy& tol = {});

/* Evaluation of a 2-cocycle class against the fundamental class pushed
 * forward by g: form the central extension C* x_zeta H with product
 * (s,a)(t,b) = (s t zeta(a,b), ab), lift each generator image to (1, .),
 * and return the first coordinate of the product of commutators, raised to
 * the orientation exponent.  Invariant under coboundary shifts of zeta; the
 * result has modulus 1. */
cplx pair_with_fundamental_class(const TwoCocycle& zeta, const SurfaceHom& g,
                                 const TolerancePolicy& tol = {});

/* The same evaluation computed on the matrix side from descent data: solve
 * one intertwiner K per generator automorphism (rho o psi = K rho K^-1),
 * then P = prod_i [K_x_i, K_y_i] * rho(phi0^sigma) is scalar by Schur's
 * lemma; return that scalar raised to the orientation exponent.  Requires
 * every generator automorphism to stabilize rho. */
cplx rep_pairing_defect(const ExtensionDatum& dat, const ProjectiveRep& rho,
                        const TolerancePolicy& tol = {});

/* Shorthand for pairing a cocycle on the total group with a lifted surface
 * homomorphism (validates the relator upstream in make_surface_hom). */
cplx theta_pairing(const TwoCocycle& theta, const SurfaceHom& g_lift,
                   const TolerancePolicy& tol = {});

/* True when every obstruction cocycle of a full-stabilizer irreducible
 * kernel representation pairs to 1 against the class realized by g: such
 * classes minimize the genus norm within their multiples. */
bool extremal_test(const Extension& ext, const SurfaceHom& g, uint64_t seed = 1,
                   const TolerancePolicy& tol = {});

} // namespace surflift
