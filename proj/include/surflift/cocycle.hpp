#pragma once

#include "surflift/cmatrix.hpp"
#include "surflift/group.hpp"

#include <vector>

namespace surflift {

/* A 2-cocycle on a finite group with values in C*, stored densely:
 * at(a,b)*at(ab,c) = at(a,bc)*at(b,c) for all a,b,c. */
struct TwoCocycle {
    GroupPtr group;
    std::vector<cplx> values; // row-major [a * order + b]

    cplx at(int a, int b) const { return values[(size_t)a * group->order + b]; }
    bool is_trivial() const;
};

TwoCocycle trivial_cocycle(GroupPtr G);

/* Validates nonvanishing and the cocycle identity (within tol.scalar_eps,
 * relative to the value scale). */
TwoCocycle make_cocycle(GroupPtr G, std::vector<cplx> values, const TolerancePolicy& tol = {});

/* Divides by the constant at(1,1), after which every value on the identity
 * row and column is exactly 1.  When coboundary_out is given it receives the
 * per-element multipliers c with result(a,b) = theta(a,b)*c(a)*c(b)/c(ab),
 * so the adjustment is auditable as an explicit coboundary. */
TwoCocycle normalize_cocycle(const TwoCocycle& theta, const TolerancePolicy& tol = {},
                             std::vector<cplx>* coboundary_out = nullptr);

bool is_unit_modulus(const TwoCocycle& theta, double eps);

/* Rescales by the coboundary of b(g) = |prod_h theta(g,h)|^(1/|G|) so every
 * value has modulus exactly 1; b_out receives the multipliers.  A projective
 * representation of the result times b is one of the input. */
TwoCocycle unit_modulus_rescale(const TwoCocycle& theta, std::vector<double>& b_out);

} // namespace surflift
