#pragma once

#include "surflift/cmatrix.hpp"
#include "surflift/cocycle.hpp"
#include "surflift/group.hpp"

#include <cstdint>
#include <vector>

namespace surflift {

/* A projective representation: one matrix per group element with
 * mats[a] * mats[b] = theta(a,b) * mats[a*b].  Ordinary representations are
 * the trivial-cocycle case. */
struct ProjectiveRep {
    GroupPtr group;
    TwoCocycle theta;
    std::vector<CMatrix> mats;

    int dim() const { return mats.empty() ? 0 : mats[0].size(); }
    std::vector<cplx> character() const;
};

/* Largest violation of the multiplication law over all element pairs. */
double rep_defect(const ProjectiveRep& rho);

/* Dimension of { M : rho(g) M = M sigma(g) } for reps with a shared cocycle;
 * checked on a generating set, which suffices because the cocycle factors
 * cancel.  1 for an irreducible against itself; 0 for inequivalent irreps. */
int intertwiner_dimension(const ProjectiveRep& rho, const ProjectiveRep& sigma);
bool equivalent_reps(const ProjectiveRep& rho, const ProjectiveRep& sigma);

struct IrrSet {
    /* One representative per equivalence class, sorted by dimension and then
     * by rounded character, so the order is reproducible. */
    std::vector<ProjectiveRep> irreps;
};

/* All irreducible theta-representations up to equivalence, found by splitting
 * the theta-twisted regular representation with random commutant elements.
 * The cocycle is normalized at the identity first and the returned reps
 * satisfy the normalized law.  Unit-modulus cocycles yield unitary matrices;
 * other cocycles are rescaled internally and converted back.  Deterministic
 * for a fixed seed.  Verifies sum(dim^2) == |G| and that each class shows up
 * in the regular representation with multiplicity equal to its dimension. */
IrrSet irreducible_reps(GroupPtr G, const TwoCocycle& theta, uint64_t seed = 1,
                        const TolerancePolicy& tol = {});
IrrSet irreducible_reps(GroupPtr G, uint64_t seed = 1, const TolerancePolicy& tol = {});

} // namespace surflift
