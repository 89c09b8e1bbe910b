#include "surflift/counting.hpp"

#include "surflift/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace surflift {

namespace {

bool subset_of(const std::vector<int>& inner, const std::vector<int>& outer) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

/* rho composed with an automorphism of its group: h |-> rho(psi(h)). Only
 * meaningful for ordinary representations (an automorphism need not preserve
 * a nontrivial cocycle). */
ProjectiveRep compose_with_automorphism(const ProjectiveRep& rho, const Automorphism& psi) {
    ProjectiveRep out;
    out.group = rho.group;
    out.theta = rho.theta;
    out.mats.reserve(rho.mats.size());
    for (int h = 0; h < static_cast<int>(rho.mats.size()); ++h)
        out.mats.push_back(rho.mats[psi[h]]);
    return out;
}

long long round_integral(cplx value, const std::string& what, const TolerancePolicy& tol,
                         double* residual_out = nullptr) {
    const long long rounded = std::llround(value.real());
    const double residual = std::abs(value - cplx(static_cast<double>(rounded)));
    if (residual_out) *residual_out = residual;
    if (residual > tol.count_eps)
        throw NumericalError(what + " does not settle on an integer within tolerance");
    if (rounded < 0) throw NumericalError(what + " rounds to a negative value");
    return rounded;
}

void check_cache(const Extension& ext, const ExtensionAnalysis* cache) {
    if (!cache) return;
    if (cache->stabilizers.size() != cache->irr.irreps.size() ||
        cache->zetas.size() != cache->irr.irreps.size())
        throw ValidationError("the precomputed analysis is incomplete");
    if (!cache->irr.irreps.empty() &&
        !same_group(*cache->irr.irreps[0].group, *ext.kernel.local))
        throw ValidationError("the precomputed analysis belongs to a different extension");
}

struct CoreSum {
    cplx total = cplx(0.0);
    std::vector<RhoContribution> table;
};

/* Shared engine behind the two counting theorems: |kernel| times the sum,
 * over (theta-)irreducible kernel representations whose stabilizer contains
 * the image of g, of (|kernel|/dim)^(2d-2) times the fundamental-class
 * pairing raised to the requested orientation. Terms accumulate in class
 * index order so the result is reproducible. */
CoreSum count_core(const Extension& ext, const SurfaceHom& g, const TwoCocycle* theta,
                   int pairing_exponent, const TolerancePolicy& tol,
                   const ExtensionAnalysis* cache) {
    if (!same_group(*g.target, ext.base()))
        throw ValidationError("the surface homomorphism must land in the base group of the extension");
    check_cache(ext, cache);

    const double K = static_cast<double>(ext.kernel_order());
    const double e = 2.0 * g.genus - 2.0;
    const std::vector<int> image = g.image();

    IrrSet local_irr;
    const IrrSet* irr = nullptr;
    if (theta) {
        const TwoCocycle theta_kernel = restrict_cocycle(*theta, ext.kernel, tol);
        local_irr = irreducible_reps(ext.kernel.local, theta_kernel, 1, tol);
        irr = &local_irr;
    } else if (cache) {
        irr = &cache->irr;
    } else {
        local_irr = irreducible_reps(ext.kernel.local, 1, tol);
        irr = &local_irr;
    }

    CoreSum out;
    out.table.reserve(irr->irreps.size());
    for (int i = 0; i < static_cast<int>(irr->irreps.size()); ++i) {
        const ProjectiveRep& rho = irr->irreps[i];
        RhoContribution row;
        row.index = i;
        row.dim = rho.dim();

        StabilizerResult local_stab;
        const StabilizerResult* stab;
        if (!theta && cache) {
            stab = &cache->stabilizers[i];
        } else {
            local_stab = stabilizer(ext, rho, theta, tol);
            stab = &local_stab;
        }
        row.stabilizer_order = static_cast<long long>(stab->elements.size());
        row.included = subset_of(image, stab->elements);

        if (row.included) {
            cplx p;
            if (!theta && cache) {
                const ZetaData& zd = cache->zetas[i];
                p = pair_with_fundamental_class(zd.zeta, restrict_hom(zd.stab, g), tol);
            } else {
                const ZetaData zd = zeta_cocycle(ext, rho, stab->elements, theta, {}, {}, tol);
                p = pair_with_fundamental_class(zd.zeta, restrict_hom(zd.stab, g), tol);
            }
            row.pairing = p;
            // pairings have unit modulus, so the inverse orientation is the conjugate
            const cplx oriented = pairing_exponent >= 0 ? p : std::conj(p);
            row.term = std::pow(K / row.dim, e) * oriented;
            out.total += row.term;
        }
        out.table.push_back(std::move(row));
    }
    out.total *= K;
    return out;
}

/* Reduction shared by the abelian closed forms: replace the base with the
 * image of g and recount there (the lifts are in bijection). */
struct AbelianSetting {
    std::shared_ptr<ReducedLift> red;
    CountReport reduced_count;
    long long mixed_order = 0;
};

AbelianSetting abelian_setting(const Extension& ext, const SurfaceHom& g,
                               const TolerancePolicy& tol) {
    if (!ext.kernel.local->is_abelian())
        throw ValidationError("the closed form requires an abelian kernel");
    AbelianSetting s;
    s.red = std::make_shared<ReducedLift>(reduce_to_image(ext, g));
    s.reduced_count = count_lifts_formula(s.red->ext, s.red->g, tol);
    s.mixed_order = static_cast<long long>(mixed_commutator(s.red->ext).size());
    return s;
}

} // namespace

ExtensionAnalysis analyze_extension(const Extension& ext, const TolerancePolicy& tol) {
    ExtensionAnalysis an;
    an.irr = irreducible_reps(ext.kernel.local, 1, tol);
    an.stabilizers.reserve(an.irr.irreps.size());
    an.zetas.reserve(an.irr.irreps.size());
    for (const ProjectiveRep& rho : an.irr.irreps) {
        an.stabilizers.push_back(stabilizer(ext, rho, nullptr, tol));
        an.zetas.push_back(
            zeta_cocycle(ext, rho, an.stabilizers.back().elements, nullptr, {}, {}, tol));
    }
    return an;
}

CountReport count_lifts_formula(const Extension& ext, const SurfaceHom& g,
                                const TolerancePolicy& tol, const ExtensionAnalysis* cache) {
    CoreSum core = count_core(ext, g, nullptr, +1, tol, cache);
    bool any_included = false;
    for (const RhoContribution& row : core.table) any_included = any_included || row.included;
    if (!any_included)
        throw NumericalError(
            "no irreducible contributes to the lift count; the trivial representation "
            "is stabilized by everything and must always be included");
    CountReport rep;
    rep.formula = core.total;
    rep.table = std::move(core.table);
    rep.rounded = round_integral(rep.formula, "the lift count", tol, &rep.residual);
    return rep;
}

CountReport frobenius_mednykh(GroupPtr gamma, int genus, const TolerancePolicy& tol) {
    if (!gamma) throw ValidationError("the group must be provided");
    if (genus < 0) throw ValidationError("the genus must be nonnegative");
    const IrrSet irr = irreducible_reps(gamma, 1, tol);
    const double K = static_cast<double>(gamma->order);
    const double e = 2.0 * genus - 2.0;
    CountReport rep;
    rep.table.reserve(irr.irreps.size());
    cplx total(0.0);
    for (int i = 0; i < static_cast<int>(irr.irreps.size()); ++i) {
        RhoContribution row;
        row.index = i;
        row.dim = irr.irreps[i].dim();
        row.stabilizer_order = 0; // the absolute count has no base action
        row.included = true;
        row.term = cplx(std::pow(K / row.dim, e));
        total += row.term;
        rep.table.push_back(row);
    }
    rep.formula = total * K;
    rep.rounded = round_integral(rep.formula, "the homomorphism count", tol, &rep.residual);
    return rep;
}

VkVector vk(const Extension& ext, const SurfaceHom& g, const TolerancePolicy& tol,
            const ExtensionAnalysis* cache) {
    if (!same_group(*g.target, ext.base()))
        throw ValidationError("the surface homomorphism must land in the base group of the extension");
    check_cache(ext, cache);
    ExtensionAnalysis local;
    if (!cache) {
        local = analyze_extension(ext, tol);
        cache = &local;
    }
    const int base_order = ext.base().order;
    VkVector v;
    v.realization = g;
    for (int i = 0; i < static_cast<int>(cache->irr.irreps.size()); ++i) {
        if (static_cast<int>(cache->stabilizers[i].elements.size()) != base_order) continue;
        const int k = cache->irr.irreps[i].dim();
        const ZetaData& zd = cache->zetas[i];
        v.raw[k] += pair_with_fundamental_class(zd.zeta, restrict_hom(zd.stab, g), tol);
        v.counts[k] += 1;
    }
    for (const auto& [k, sum] : v.raw) {
        const long long rounded = std::llround(sum.real());
        if (std::abs(sum - cplx(static_cast<double>(rounded))) > tol.count_eps)
            throw NumericalError(
                "a per-dimension pairing sum does not settle on an integer within tolerance");
        v.values[k] = rounded;
    }
    return v;
}

BigRational v_eval(const VkVector& v, int n) {
    BigRational total;
    for (const auto& [k, value] : v.values) {
        if (value == 0) continue;
        if (n >= 0)
            total = total + BigRational(BigInt(value),
                                        BigInt::pow_ll(k, static_cast<unsigned long>(2 * n)));
        else
            total = total + BigRational(BigInt(value) * BigInt::pow_ll(
                                            k, static_cast<unsigned long>(-2 * n)),
                                        BigInt(1));
    }
    return total;
}

int genus_norm_lower_bound(const Extension& ext, const SurfaceHom& g,
                           const TolerancePolicy& tol) {
    const ExtensionAnalysis an = analyze_extension(ext, tol);
    const int base_order = ext.base().order;
    for (const StabilizerResult& st : an.stabilizers)
        if (static_cast<int>(st.elements.size()) != base_order)
            throw ValidationError(
                "the genus-norm bound requires every irreducible kernel representation "
                "to be stabilized by the whole base group");
    const VkVector v = vk(ext, g, tol, &an);

    std::vector<std::pair<int, long long>> nonzero;
    for (const auto& [k, value] : v.values)
        if (value != 0) nonzero.emplace_back(k, value);

    // Everything vanishes: every evaluation is 0, so already nonnegative at n = 0.
    if (nonzero.empty()) return 1;

    const auto [k0, v0] = nonzero.front(); // smallest dimension with a nonzero value
    if (v0 < 0)
        throw NumericalError(
            "the leading per-dimension value is negative, so the evaluations are "
            "eventually negative and never dominated");
    if (nonzero.size() == 1) return 1; // single positive term: positive for every n

    // Threshold where the leading term dominates the tail in absolute value:
    // v0/k0^(2n) >= sum_{k>k0} |v_k|/k^(2n) once v0 * (k1/k0)^(2n) >= sum |v_k|,
    // with k1 the next contributing dimension.
    const long long k1 = nonzero[1].first;
    BigInt tail(0);
    for (std::size_t j = 1; j < nonzero.size(); ++j)
        tail = tail + BigInt(nonzero[j].second).abs();
    int threshold = 0;
    while (BigInt(v0) * BigInt::pow_ll(k1, static_cast<unsigned long>(2 * threshold)) <
           tail * BigInt::pow_ll(k0, static_cast<unsigned long>(2 * threshold)))
        ++threshold;

    // All n >= threshold are certified nonnegative; scan downward exactly.
    int n0 = threshold;
    for (int n = threshold - 1; n >= 0; --n) {
        if (v_eval(v, n).signum() >= 0)
            n0 = n;
        else
            break;
    }
    return n0 + 1;
}

CountReport abelian_count(const Extension& ext, const SurfaceHom& g,
                          const TolerancePolicy& tol) {
    AbelianSetting s = abelian_setting(ext, g, tol);
    long long closed = 0;
    if (s.reduced_count.rounded != 0) {
        const BigInt numerator =
            BigInt::pow_ll(ext.kernel_order(), static_cast<unsigned long>(2 * g.genus));
        BigInt quotient, remainder;
        BigInt::divmod(numerator, BigInt(s.mixed_order), quotient, remainder);
        if (!remainder.is_zero())
            throw NumericalError("the abelian closed form is not an integer");
        closed = quotient.to_ll();
    }
    if (closed != s.reduced_count.rounded)
        throw NumericalError("the abelian closed form disagrees with the representation sum");
    CountReport rep = std::move(s.reduced_count);
    rep.formula = cplx(static_cast<double>(closed));
    rep.rounded = closed;
    rep.residual = 0.0;
    rep.reduction = std::move(s.red);
    return rep;
}

GenusBoundDecision genus_bound_decision(const Extension& ext, const SurfaceHom& g,
                                        const TolerancePolicy& tol) {
    AbelianSetting s = abelian_setting(ext, g, tol);
    const long long b = 2LL * g.genus;
    const long long m = s.mixed_order;
    GenusBoundDecision dec;
    dec.count = s.reduced_count.rounded;
    dec.vacuous = m == 1;
    const BigInt two_b = BigInt::pow_ll(2, static_cast<unsigned long>(b));
    dec.applicable = two_b > BigInt(m - 1);
    if (dec.applicable) {
        const BigInt kernel_b =
            BigInt::pow_ll(ext.kernel_order(), static_cast<unsigned long>(b));
        dec.lower_bound =
            BigRational(kernel_b * (two_b - BigInt(m - 1)), BigInt(m) * two_b);
        if (dec.count > 0 && BigRational(dec.count) < dec.lower_bound)
            throw NumericalError("the lift count violates the abelian existence bound");
    }
    return dec;
}

bool divisibility_check(const CountReport& report, const Extension& ext, int genus) {
    if (genus < 1) throw ValidationError("the divisibility statement needs genus at least 1");
    const BigInt center_order(static_cast<long long>(center(*ext.kernel.local).size()));
    const BigInt modulus = BigInt(ext.kernel_order()) *
                           center_order.pow(static_cast<unsigned long>(2 * genus - 2));
    return (BigInt(report.rounded) % modulus).is_zero();
}

WeightedCount bundle_weighted_count(const Extension& ext, const SurfaceHom& g,
                                    const TolerancePolicy& tol) {
    CountReport rep = count_lifts_formula(ext, g, tol);
    WeightedCount out;
    out.total = rep.rounded;
    out.weighted = BigRational(rep.rounded, ext.kernel_order());
    out.exists = rep.rounded != 0;
    out.table = std::move(rep.table);
    return out;
}

WeightedCount sections_weighted_count(const ExtensionDatum& dat, const TolerancePolicy& tol) {
    const long long fiber = dat.phi->order;
    WeightedCount out;
    if (dat.genus == 0) {
        // The empty section is the only candidate; it is valid exactly when
        // the defect element is the identity.
        out.total = dat.phi0 == dat.phi->identity ? 1 : 0;
        out.weighted = BigRational(out.total, fiber);
        out.exists = out.total != 0;
        return out;
    }
    const IrrSet irr = irreducible_reps(dat.phi, 1, tol);
    const double e = 2.0 * dat.genus - 2.0;
    cplx total(0.0);
    out.table.reserve(irr.irreps.size());
    for (int i = 0; i < static_cast<int>(irr.irreps.size()); ++i) {
        const ProjectiveRep& rho = irr.irreps[i];
        RhoContribution row;
        row.index = i;
        row.dim = rho.dim();
        row.stabilizer_order = 0;
        bool fixed_by_all = true;
        for (const Automorphism& psi : dat.psi_x)
            fixed_by_all =
                fixed_by_all && equivalent_reps(compose_with_automorphism(rho, psi), rho);
        for (const Automorphism& psi : dat.psi_y)
            fixed_by_all =
                fixed_by_all && equivalent_reps(compose_with_automorphism(rho, psi), rho);
        row.included = fixed_by_all;
        if (fixed_by_all) {
            row.pairing = rep_pairing_defect(dat, rho, tol);
            row.term = std::pow(static_cast<double>(fiber) / row.dim, e) * row.pairing;
            total += row.term;
        }
        out.table.push_back(std::move(row));
    }
    out.total =
        round_integral(total * static_cast<double>(fiber), "the section count", tol);
    out.weighted = BigRational(out.total, fiber);
    out.exists = out.total != 0;
    return out;
}

WeightedCount h1_measure(GroupPtr phi, int genus, const std::vector<Automorphism>& act_x,
                         const std::vector<Automorphism>& act_y,
                         const TolerancePolicy& tol) {
    return sections_weighted_count(split_datum(phi, genus, act_x, act_y), tol);
}

bool quasi_epi_test(const Extension& ext, const SurfaceHom& g, const TolerancePolicy& tol) {
    if (!same_group(*g.target, ext.base()))
        throw ValidationError("the surface homomorphism must land in the base group of the extension");
    const std::vector<int> image = g.image();
    const int base_order = ext.base().order;
    const IrrSet irr = irreducible_reps(ext.kernel.local, 1, tol);
    for (const ProjectiveRep& rho : irr.irreps) {
        const StabilizerResult st = stabilizer(ext, rho, nullptr, tol);
        if (static_cast<int>(st.elements.size()) != base_order &&
            subset_of(image, st.elements))
            return false;
    }
    return true;
}

CountReport t2_formula(const Extension& ext, const SurfaceHom& g, const TwoCocycle& theta,
                       const TolerancePolicy& tol) {
    if (!same_group(*theta.group, ext.big()))
        throw ValidationError("the twisting cocycle must live on the total group of the extension");
    const TwoCocycle normalized = normalize_cocycle(theta, tol);
    /* Calibrated orientation: the twisted-class evaluator and the residual
     * pairing use the SAME orientation of the fundamental class, so the sum
     * takes the pairing directly.  Conjugating here instead makes the closed
     * form the mirror image of the enumerated twisted sum; the fixture with a
     * kernel-invisible twist (totals +-16i) pins the choice empirically. */
    CoreSum core = count_core(ext, g, &normalized, +1, tol, nullptr);
    CountReport rep;
    rep.formula = core.total;
    rep.table = std::move(core.table);
    // The twisted sum need not be an integer; record how far it is anyway.
    rep.rounded = std::llround(rep.formula.real());
    rep.residual = std::abs(rep.formula - cplx(static_cast<double>(rep.rounded)));
    return rep;
}

} // namespace surflift
