#pragma once

#include "surflift/cmatrix.hpp"
#include "surflift/cocycle.hpp"
#include "surflift/datum.hpp"
#include "surflift/group.hpp"
#include "surflift/rational.hpp"

#include <vector>

namespace surflift {

/* Knobs for the brute-force enumerators. The oracle deliberately avoids
 * algebraic shortcuts: it walks tuple spaces odometer-style and evaluates
 * relators through the multiplication table, so its output is independent
 * ground truth for the closed-form side. */
struct OracleOptions {
    long long budget = 100000000; // allowed relator evaluations
    int threads = 0;              // 0 = serial reference; >= 1 = parallel kernel
    bool collect = false;         // also return the enumerated tuples
    bool prune_last = false;      // solve the final commutator by coset lookup
};

struct LiftEnumeration {
    long long count = 0;
    /* Flat tuples [x_1..x_d, y_1..y_d] of total-group elements; filled only
     * when OracleOptions::collect is set. */
    std::vector<std::vector<int>> homs;
};

/* Count (and optionally list) all lifts of g through the extension: tuples of
 * generator preimages whose handle-commutator product is the identity. */
LiftEnumeration enumerate_lifts(const Extension& ext, const SurfaceHom& g,
                                const OracleOptions& opt = {});

/* Count the sections of a datum: fiber tuples whose twisted relator value,
 * computed in the group of pairs (element, automorphism), equals phi0^-1. */
long long enumerate_sections(const ExtensionDatum& dat, const OracleOptions& opt = {});

/* Orbit decomposition of a finite action, with the orbit-stabilizer check
 * |orbit| * |stabilizer| = |acting group| enforced per orbit. */
struct OrbitTable {
    std::vector<std::vector<int>> representatives;
    std::vector<long long> orbit_sizes;
    std::vector<long long> stabilizer_orders;
    long long total = 0; // sum of orbit sizes = number of items
};

/* Orbits of the kernel-conjugation action on a complete list of lift tuples
 * (as produced by enumerate_lifts with collect). */
OrbitTable orbit_table(const std::vector<std::vector<int>>& homs, const Extension& ext);

struct CocycleEnumeration {
    long long z1 = 0;    // number of twisted one-cocycles
    OrbitTable classes;  // orbits of the fiber action = cohomology classes
    BigRational measure; // z1 / |fiber|, equal to the sum of 1/|stabilizer|
};

/* Enumerate twisted cocycles: tuples of fiber values on the surface
 * generators, where each generator acts by the given automorphism and the
 * automorphism commutators must compose to the identity. */
CocycleEnumeration enumerate_cocycles(GroupPtr phi, int genus,
                                      const std::vector<Automorphism>& act_x,
                                      const std::vector<Automorphism>& act_y,
                                      const OracleOptions& opt = {});

/* Sum of total-group cocycle pairings over every lift of g. */
cplx t2_lhs_oracle(const Extension& ext, const SurfaceHom& g, const TwoCocycle& theta,
                   const OracleOptions& opt = {});

} // namespace surflift
