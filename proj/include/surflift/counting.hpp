#pragma once

#include "surflift/cohomology.hpp"
#include "surflift/datum.hpp"
#include "surflift/group.hpp"
#include "surflift/rational.hpp"
#include "surflift/rep.hpp"

#include <map>
#include <memory>
#include <vector>

namespace surflift {

/* One row of the closed-form sum: how a single irreducible kernel
 * representation contributes to a count. */
struct RhoContribution {
    int index = 0;                // position in the irreducible set
    int dim = 0;
    long long stabilizer_order = 0;
    bool included = false;        // base stabilizer contains the image of g
    cplx pairing = cplx(1.0);     // fundamental-class pairing (when included)
    cplx term = cplx(0.0);        // orientation-adjusted weighted contribution
};

struct CountReport {
    cplx formula = cplx(0.0);
    long long rounded = 0;
    double residual = 0.0; // |formula - rounded|; enforced for integral counts
    std::vector<RhoContribution> table;
    /* Set when the count internally replaced the base with the image of g
     * (and the total group with its preimage), for auditability. */
    std::shared_ptr<ReducedLift> reduction;
};

/* Precomputed per-extension data shared by repeated counts against the same
 * extension: the kernel irreducibles, their base stabilizers, and the
 * obstruction cocycles. Ordinary (untwisted) coefficients. */
struct ExtensionAnalysis {
    IrrSet irr;
    std::vector<StabilizerResult> stabilizers;
    std::vector<ZetaData> zetas; // stab view, lifts, intertwiners, cocycle per irrep
};

ExtensionAnalysis analyze_extension(const Extension& ext, const TolerancePolicy& tol = {});

/* Number of lifts of g through the extension, as the closed-form sum
 * |kernel| * sum over stabilized irreducibles of weight * pairing. The result
 * must round to an integer within count_eps. Pass a precomputed analysis to
 * amortize repeated calls. */
CountReport count_lifts_formula(const Extension& ext, const SurfaceHom& g,
                                const TolerancePolicy& tol = {},
                                const ExtensionAnalysis* cache = nullptr);

/* Number of genus-d surface-group homomorphisms into the group:
 * |G| * sum over irreducibles of (|G|/dim)^(2d-2). Genus 0 is allowed. */
CountReport frobenius_mednykh(GroupPtr gamma, int genus, const TolerancePolicy& tol = {});

/* The per-dimension pairing sums: for each irreducible dimension k, the sum
 * of fundamental-class pairings over irreducibles of dimension k whose
 * stabilizer is the whole base. Values are validated integers. */
struct VkVector {
    std::map<int, cplx> raw;          // k -> complex sum before rounding
    std::map<int, long long> values;  // k -> validated integer value
    std::map<int, long long> counts;  // k -> number of contributing irreducibles
    SurfaceHom realization;
};

VkVector vk(const Extension& ext, const SurfaceHom& g, const TolerancePolicy& tol = {},
            const ExtensionAnalysis* cache = nullptr);

/* Exact evaluation of sum_k v_k * k^(-2n). */
BigRational v_eval(const VkVector& v, int n);

/* Smallest n0 such that the evaluation is nonnegative for every n >= n0,
 * plus one: a lower bound for the genus norm of the realized class.
 * Requires every irreducible to be stabilized by the whole base. */
int genus_norm_lower_bound(const Extension& ext, const SurfaceHom& g,
                           const TolerancePolicy& tol = {});

/* Closed form for abelian kernels: |kernel|^(2d) / |mixed commutator| when
 * lifts exist, 0 otherwise; cross-checked against count_lifts_formula. */
CountReport abelian_count(const Extension& ext, const SurfaceHom& g,
                          const TolerancePolicy& tol = {});

/* Existence bound for abelian kernels: with b = 2*genus and m the mixed
 * commutator order, the condition 2^b > m-1 (vacuous when m = 1) forces
 * count >= |kernel|^b * (2^b - m + 1) / (m * 2^b) when lifts exist. */
struct GenusBoundDecision {
    bool vacuous = false;    // m == 1: the condition carries no content
    bool applicable = false; // condition holds (always true when vacuous)
    BigRational lower_bound; // the guaranteed count when applicable
    long long count = 0;     // actual closed-form count
};

GenusBoundDecision genus_bound_decision(const Extension& ext, const SurfaceHom& g,
                                        const TolerancePolicy& tol = {});

/* Does |kernel| * |center(kernel)|^(2d-2) divide the rounded count? */
bool divisibility_check(const CountReport& report, const Extension& ext, int genus);

/* A count together with its automorphism-weighted form (count divided by the
 * fiber order), which is the natural measure on isomorphism classes. */
struct WeightedCount {
    long long total = 0;
    BigRational weighted;
    bool exists = false; // total != 0
    std::vector<RhoContribution> table;
};

/* Isomorphism classes of lifted structures, weighted by 1/|automorphisms|:
 * count_lifts_formula divided by the kernel order. */
WeightedCount bundle_weighted_count(const Extension& ext, const SurfaceHom& g,
                                    const TolerancePolicy& tol = {});

/* Section count of a datum: |fiber| * sum over irreducibles of the fiber
 * stabilized by every datum automorphism of weight * defect pairing; also
 * divided by |fiber| as the weighted form. exists decides section existence. */
WeightedCount sections_weighted_count(const ExtensionDatum& dat,
                                      const TolerancePolicy& tol = {});

/* The measure |Z^1|/|fiber| of twisted cocycle classes for a surface action
 * on the fiber (one automorphism per generator, commutators composing to the
 * identity), computed by the closed form rather than enumeration. */
WeightedCount h1_measure(GroupPtr phi, int genus, const std::vector<Automorphism>& act_x,
                         const std::vector<Automorphism>& act_y,
                         const TolerancePolicy& tol = {});

/* True when the image of g meets the complement of every proper stabilizer:
 * then the count formula coincides with its epimorphism form (the sum
 * restricted to fully stabilized irreducibles). */
bool quasi_epi_test(const Extension& ext, const SurfaceHom& g,
                    const TolerancePolicy& tol = {});

/* Twisted count: coefficients in a 2-cocycle on the total group; the sum runs
 * over twisted kernel irreducibles, pairing each obstruction cocycle with the
 * same fundamental-class orientation used by the twisted-class evaluator. The
 * value is complex and not rounded. For a trivial cocycle it equals
 * count_lifts_formula. */
CountReport t2_formula(const Extension& ext, const SurfaceHom& g, const TwoCocycle& theta,
                       const TolerancePolicy& tol = {});

} // namespace surflift
