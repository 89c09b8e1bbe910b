#include "surflift/cohomology.hpp"

#include "surflift/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace surflift {

namespace {

void require_kernel_rep(const Extension& ext, const ProjectiveRep& rho) {
    if (!same_group(*rho.group, *ext.kernel.local))
        throw ValidationError("representation is not defined on the extension kernel");
}

void require_total_cocycle(const Extension& ext, const TwoCocycle& theta) {
    if (!same_group(*theta.group, ext.big()))
        throw ValidationError("cocycle is not defined on the total group of the extension");
}

void require_normalized(const TwoCocycle& theta, const TolerancePolicy& tol) {
    const FiniteGroup& G = *theta.group;
    for (int a = 0; a < G.order; ++a)
        if (std::abs(theta.at(G.identity, a) - 1.0) > tol.scalar_eps ||
            std::abs(theta.at(a, G.identity) - 1.0) > tol.scalar_eps)
            throw ValidationError("cocycle must be normalized at the identity "
                                  "(use normalize_cocycle)");
}

/* rho's own cocycle must be the restriction of the total-group cocycle. */
void require_matching_restriction(const Extension& ext, const TwoCocycle& theta,
                                  const ProjectiveRep& rho, const TolerancePolicy& tol) {
    const int m = ext.kernel_order();
    for (int h = 0; h < m; ++h)
        for (int k = 0; k < m; ++k) {
            cplx big = theta.at(ext.kernel.to_parent[h], ext.kernel.to_parent[k]);
            cplx own = rho.theta.at(h, k);
            if (std::abs(big - own) > tol.scalar_eps * (1.0 + std::abs(big)))
                throw ValidationError("representation cocycle does not match the "
                                      "restriction of the total-group cocycle");
        }
}

CMatrix square_from(const RectMatrix& r) {
    CMatrix M(r.rows);
    for (int i = 0; i < r.rows; ++i)
        for (int j = 0; j < r.cols; ++j) M.at(i, j) = r.at(i, j);
    return M;
}

/* Rotate a matrix by a global phase so its first entry (row-major) of at
 * least a quarter of the maximal modulus becomes positive real. */
CMatrix phase_normalize(CMatrix M) {
    const double big = M.max_abs();
    const int n = M.size();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            cplx v = M.at(r, c);
            if (std::abs(v) >= 0.25 * big) return M.scaled(std::conj(v) / std::abs(v));
        }
    return M;
}

/* Fix the free scalar of an intertwiner: unit scale (via M*M = cI, which
 * holds whenever both representations are unitary), then a deterministic
 * phase. */
CMatrix normalize_intertwiner(CMatrix M, const TolerancePolicy& tol) {
    CMatrix A = M.adjoint() * M;
    cplx c;
    if (A.is_scalar(tol.mat_eps * (1.0 + A.max_abs()), &c) && c.real() > 0)
        M = M.scaled(1.0 / std::sqrt(c.real()));
    else
        M = M.scaled(std::sqrt((double)M.size()) / M.norm_fro());
    return phase_normalize(std::move(M));
}

} // namespace

TwoCocycle restrict_cocycle(const TwoCocycle& theta, const SubgroupView& sub,
                            const TolerancePolicy& tol) {
    if (!same_group(*theta.group, *sub.parent))
        throw ValidationError("cocycle group is not the subgroup's parent group");
    const int m = sub.local->order;
    std::vector<cplx> vals((size_t)m * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            vals[(size_t)a * m + b] = theta.at(sub.to_parent[a], sub.to_parent[b]);
    return make_cocycle(sub.local, std::move(vals), tol);
}

ProjectiveRep conjugate_rep(const Extension& ext, const ProjectiveRep& rho, int a) {
    require_kernel_rep(ext, rho);
    if (!rho.theta.is_trivial())
        throw ValidationError("conjugate_rep requires an ordinary representation; "
                              "use twisted_conjugate_rep");
    const FiniteGroup& big = ext.big();
    if (a < 0 || a >= big.order) throw ValidationError("conjugating element out of range");
    const int m = ext.kernel_order();
    const int ai = big.inv(a);

    ProjectiveRep out;
    out.group = rho.group;
    out.theta = rho.theta;
    out.mats.resize(m);
    for (int h = 0; h < m; ++h) {
        int hp = ext.kernel.to_parent[h];
        int cp = big.mul(ai, big.mul(hp, a));
        int cl = ext.kernel.to_local[cp];
        if (cl < 0) throw Error("conjugation left the kernel; extension data corrupt");
        out.mats[h] = rho.mats[cl];
    }
    return out;
}

ProjectiveRep twisted_conjugate_rep(const Extension& ext, const TwoCocycle& theta,
                                    const ProjectiveRep& rho, int a,
                                    const TolerancePolicy& tol) {
    require_kernel_rep(ext, rho);
    require_total_cocycle(ext, theta);
    require_matching_restriction(ext, theta, rho, tol);
    const FiniteGroup& big = ext.big();
    if (a < 0 || a >= big.order) throw ValidationError("conjugating element out of range");
    const int m = ext.kernel_order();
    const int ai = big.inv(a);
    const cplx denom = theta.at(a, ai) * theta.at(big.identity, big.identity);

    ProjectiveRep out;
    out.group = rho.group;
    out.theta = rho.theta;
    out.mats.resize(m);
    for (int h = 0; h < m; ++h) {
        int hp = ext.kernel.to_parent[h];
        int cp = big.mul(ai, big.mul(hp, a));
        int cl = ext.kernel.to_local[cp];
        if (cl < 0) throw Error("conjugation left the kernel; extension data corrupt");
        cplx factor = theta.at(ai, big.mul(hp, a)) * theta.at(hp, a) / denom;
        out.mats[h] = rho.mats[cl].scaled(factor);
    }

    double scale = 0;
    for (const CMatrix& M : out.mats) scale = std::max(scale, M.max_abs());
    if (rep_defect(out) > tol.mat_eps * 10.0 * (1.0 + scale * scale))
        throw NumericalError("twisted conjugate violates the representation law");
    return out;
}

StabilizerResult stabilizer(const Extension& ext, const ProjectiveRep& rho,
                            const TwoCocycle* theta, const TolerancePolicy& tol) {
    require_kernel_rep(ext, rho);
    const FiniteGroup& big = ext.big();
    const FiniteGroup& base = ext.base();
    const int m = ext.kernel_order();
    const bool ordinary = theta == nullptr || theta->is_trivial();
    if (ordinary && !rho.theta.is_trivial())
        throw ValidationError("a twisted representation needs the total-group cocycle "
                              "to define the conjugation action");

    StabilizerResult result;
    if (ordinary) {
        /* Ordinary classes are determined by characters, so membership is a
         * permuted character comparison. */
        const std::vector<cplx> chi = rho.character();
        for (int alpha = 0; alpha < base.order; ++alpha) {
            int a = ext.lift(alpha);
            int ai = big.inv(a);
            bool ok = true;
            for (int h = 0; h < m && ok; ++h) {
                int cp = big.mul(ai, big.mul(ext.kernel.to_parent[h], a));
                int cl = ext.kernel.to_local[cp];
                if (cl < 0) throw Error("conjugation left the kernel; extension data corrupt");
                ok = std::abs(chi[cl] - chi[h]) <= tol.scalar_eps;
            }
            if (ok) result.elements.push_back(alpha);
        }
    } else {
        for (int alpha = 0; alpha < base.order; ++alpha) {
            ProjectiveRep conj = twisted_conjugate_rep(ext, *theta, rho, ext.lift(alpha), tol);
            if (equivalent_reps(rho, conj)) result.elements.push_back(alpha);
        }
    }

    if (subgroup_closure(base, result.elements) != result.elements)
        throw NumericalError("stabilizer did not close as a subgroup; "
                             "equivalence decisions are inconsistent");

    SubgroupView view = make_subgroup_view(ext.q.codomain, result.elements);
    for (int gl : small_generating_set(*view.local)) {
        int alpha = view.to_parent[gl];
        result.generators.push_back(alpha);
        result.generator_intertwiners.push_back(
            conjugation_intertwiner(ext, rho, ext.lift(alpha), theta, tol));
    }
    return result;
}

CMatrix conjugation_intertwiner(const Extension& ext, const ProjectiveRep& rho, int a,
                                const TwoCocycle* theta, const TolerancePolicy& tol) {
    require_kernel_rep(ext, rho);
    const FiniteGroup& big = ext.big();
    if (a < 0 || a >= big.order) throw ValidationError("conjugating element out of range");
    const int n = rho.dim();
    if (a == big.identity) return CMatrix::identity(n);

    const bool ordinary = theta == nullptr || theta->is_trivial();
    ProjectiveRep conj = ordinary ? conjugate_rep(ext, rho, a)
                                  : twisted_conjugate_rep(ext, *theta, rho, a, tol);

    const FiniteGroup& K = *rho.group;
    std::vector<int> gens = small_generating_set(K);
    if (gens.empty()) return CMatrix::identity(n); // trivial kernel

    std::vector<CMatrix> L, R;
    L.reserve(gens.size());
    R.reserve(gens.size());
    for (int g : gens) {
        L.push_back(rho.mats[g]);
        R.push_back(conj.mats[g]);
    }
    std::vector<RectMatrix> basis = solve_intertwiner_space(L, R);
    if (basis.empty())
        throw ValidationError("element " + big.label(a) +
                              " does not stabilize the representation");
    if (basis.size() > 1)
        throw NumericalError("conjugation intertwiner space is not one-dimensional "
                             "(representation not irreducible?)");

    CMatrix M = normalize_intertwiner(square_from(basis[0]), tol);

    /* The solve used generators only; confirm intertwining on every element. */
    double scale = 0;
    for (const CMatrix& mat : rho.mats) scale = std::max(scale, mat.max_abs());
    for (const CMatrix& mat : conj.mats) scale = std::max(scale, mat.max_abs());
    const double bound = 10.0 * tol.mat_eps * (1.0 + scale) * (1.0 + M.max_abs());
    for (int h = 0; h < K.order; ++h) {
        CMatrix diff = rho.mats[h] * M - M * conj.mats[h];
        if (diff.max_abs() > bound)
            throw NumericalError("conjugation intertwiner fails outside the generating set");
    }
    return M;
}

ZetaData zeta_cocycle(const Extension& ext, const ProjectiveRep& rho,
                      const std::vector<int>& stab_elements, const TwoCocycle* theta,
                      const std::vector<int>& lifts_override,
                      const std::vector<cplx>& M_scale, const TolerancePolicy& tol) {
    require_kernel_rep(ext, rho);
    const FiniteGroup& big = ext.big();
    const FiniteGroup& base = ext.base();
    const bool ordinary = theta == nullptr || theta->is_trivial();
    if (!ordinary) {
        require_total_cocycle(ext, *theta);
        require_normalized(*theta, tol);
        require_matching_restriction(ext, *theta, rho, tol);
    } else if (!rho.theta.is_trivial()) {
        throw ValidationError("a twisted representation needs the total-group cocycle "
                              "to build its obstruction cocycle");
    }

    std::vector<int> elems = stab_elements;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (subgroup_closure(base, elems) != elems)
        throw ValidationError("the given elements do not form a subgroup of the base group");

    ZetaData zd;
    zd.stab = make_subgroup_view(ext.q.codomain, elems);
    const int s = zd.stab.local->order;
    const int id_local = zd.stab.local->identity;

    /* Choose one preimage per element; the identity must lift to the identity
     * so the resulting cocycle is normalized. */
    if (lifts_override.empty()) {
        zd.lifts.resize(s);
        for (int l = 0; l < s; ++l) zd.lifts[l] = ext.lift(zd.stab.to_parent[l]);
    } else {
        if ((int)lifts_override.size() != s)
            throw ValidationError("lift override must name one preimage per subgroup element");
        for (int l = 0; l < s; ++l) {
            int lift = lifts_override[l];
            if (lift < 0 || lift >= big.order || ext.q.map(lift) != zd.stab.to_parent[l])
                throw ValidationError("lift override entry is not a preimage of its element");
        }
        if (lifts_override[id_local] != big.identity)
            throw ValidationError("the identity must lift to the identity");
        zd.lifts = lifts_override;
    }
    if (!M_scale.empty()) {
        if ((int)M_scale.size() != s)
            throw ValidationError("intertwiner scale override must have one factor per element");
        for (const cplx& f : M_scale)
            if (std::abs(f) < 1e-12)
                throw ValidationError("intertwiner scale factors must be nonzero");
        if (std::abs(M_scale[id_local] - 1.0) > 0)
            throw ValidationError("the identity intertwiner cannot be rescaled");
    }

    zd.Ms.resize(s);
    for (int l = 0; l < s; ++l) {
        zd.Ms[l] = conjugation_intertwiner(ext, rho, zd.lifts[l], theta, tol);
        if (!M_scale.empty()) zd.Ms[l] = zd.Ms[l].scaled(M_scale[l]);
    }

    const FiniteGroup& S = *zd.stab.local;
    std::vector<cplx> vals((size_t)s * s);
    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) {
            int ab = S.mul(a, b);
            int gp = big.mul(big.inv(zd.lifts[ab]), big.mul(zd.lifts[a], zd.lifts[b]));
            int gl = ext.kernel.to_local[gp];
            if (gl < 0) throw Error("lift discrepancy left the kernel; extension data corrupt");
            CMatrix rhs = zd.Ms[ab] * rho.mats[gl];
            if (!ordinary) rhs = rhs.scaled(theta->at(zd.lifts[a], zd.lifts[b]) /
                                            theta->at(zd.lifts[ab], gp));
            CMatrix T = rhs * (zd.Ms[a] * zd.Ms[b]).inverse();
            cplx z;
            if (!T.is_scalar(tol.mat_eps * 100.0 * (1.0 + T.max_abs()), &z))
                throw NumericalError("non-scalar residue in the obstruction cocycle "
                                     "(representation reducible or numerics failed)");
            vals[(size_t)a * s + b] = z;
        }

    zd.zeta = normalize_cocycle(make_cocycle(zd.stab.local, std::move(vals), tol), tol);
    return zd;
}

cplx pair_with_fundamental_class(const TwoCocycle& zeta, const SurfaceHom& g,
                                 const TolerancePolicy& tol) {
    if (!same_group(*zeta.group, *g.target))
        throw ValidationError("cocycle and surface homomorphism live on different groups");
    const FiniteGroup& H = *zeta.group;
    if (relator_value(H, g.x, g.y) != H.identity)
        throw ValidationError("surface relator violated in the pairing target");

    /* Work with the identity-normalized representative (a constant is a
     * coboundary, so this does not change the value). */
    const cplx unit = zeta.at(H.identity, H.identity);
    auto zt = [&](int a, int b) { return zeta.at(a, b) / unit; };

    struct PairElt {
        cplx s;
        int a;
    };
    auto mul = [&](const PairElt& p, const PairElt& q) {
        return PairElt{p.s * q.s * zt(p.a, q.a), H.mul(p.a, q.a)};
    };
    auto inv = [&](const PairElt& p) {
        int ai = H.inv(p.a);
        return PairElt{cplx(1.0) / (p.s * zt(p.a, ai)), ai};
    };

    PairElt acc{cplx(1.0), H.identity};
    for (int i = 0; i < g.genus; ++i) {
        PairElt X{cplx(1.0), g.x[i]};
        PairElt Y{cplx(1.0), g.y[i]};
        acc = mul(mul(mul(mul(acc, X), Y), inv(X)), inv(Y));
    }
    if (acc.a != H.identity) throw Error("commutator product left the identity coset");

    cplx lambda = acc.s;
    if (std::abs(std::abs(lambda) - 1.0) > tol.scalar_eps)
        throw NumericalError("fundamental-class pairing has nonunit modulus " +
                             std::to_string(std::abs(lambda)));
    return kPairingOrientationExponent == 1 ? lambda : cplx(1.0) / lambda;
}

cplx rep_pairing_defect(const ExtensionDatum& dat, const ProjectiveRep& rho,
                        const TolerancePolicy& tol) {
    if (!same_group(*rho.group, *dat.phi))
        throw ValidationError("representation is not defined on the datum's fiber group");
    const FiniteGroup& P = *dat.phi;
    const int n = rho.dim();

    /* One intertwiner per generator automorphism, solved over every element
     * so twisted representations are handled without a propagation argument. */
    auto solve_K = [&](const Automorphism& psi) {
        std::vector<CMatrix> L, R;
        L.reserve(P.order);
        R.reserve(P.order);
        for (int h = 0; h < P.order; ++h) {
            L.push_back(rho.mats[psi[h]]);
            R.push_back(rho.mats[h]);
        }
        std::vector<RectMatrix> basis = solve_intertwiner_space(L, R);
        if (basis.empty())
            throw ValidationError("a generator automorphism does not stabilize "
                                  "the representation");
        if (basis.size() > 1)
            throw NumericalError("generator intertwiner space is not one-dimensional "
                                 "(representation not irreducible?)");
        return square_from(basis[0]);
    };

    CMatrix prod = CMatrix::identity(n);
    for (int i = 0; i < dat.genus; ++i) {
        CMatrix Kx = solve_K(dat.psi_x[i]);
        CMatrix Ky = solve_K(dat.psi_y[i]);
        prod = prod * (Kx * Ky * Kx.inverse() * Ky.inverse());
    }
    const int ph = kDefectRelatorExponent == -1 ? P.inv(dat.phi0) : dat.phi0;
    prod = prod * rho.mats[ph];

    cplx c;
    if (!prod.is_scalar(tol.mat_eps * 100.0 * (1.0 + prod.max_abs()), &c))
        throw NumericalError("pairing defect is not a scalar matrix");
    if (std::abs(std::abs(c) - 1.0) > tol.scalar_eps)
        throw NumericalError("pairing defect has nonunit modulus " +
                             std::to_string(std::abs(c)));
    /* The commutator product of intertwiners traverses the fundamental class
     * with the opposite orientation: it equals rho(phi0) divided by the
     * central-extension pairing.  Invert so both evaluation routes agree. */
    cplx inverted = cplx(1.0) / c;
    return kPairingOrientationExponent == 1 ? inverted : cplx(1.0) / inverted;
}

cplx theta_pairing(const TwoCocycle& theta, const SurfaceHom& g_lift,
                   const TolerancePolicy& tol) {
    return pair_with_fundamental_class(theta, g_lift, tol);
}

bool extremal_test(const Extension& ext, const SurfaceHom& g, uint64_t seed,
                   const TolerancePolicy& tol) {
    if (!same_group(*g.target, ext.base()))
        throw ValidationError("surface hom target is not the extension base");
    const FiniteGroup& base = ext.base();
    IrrSet irr = irreducible_reps(ext.kernel.local, seed, tol);
    for (const ProjectiveRep& rho : irr.irreps) {
        StabilizerResult st = stabilizer(ext, rho, nullptr, tol);
        if ((int)st.elements.size() != base.order) continue; // only full stabilizers
        ZetaData zd = zeta_cocycle(ext, rho, st.elements, nullptr, {}, {}, tol);
        cplx lam = pair_with_fundamental_class(zd.zeta, restrict_hom(zd.stab, g), tol);
        if (std::abs(lam - cplx(1.0)) > tol.scalar_eps) return false;
    }
    return true;
}

} // namespace surflift
