#include "surflift/oracle.hpp"

#include "surflift/cohomology.hpp"
#include "surflift/error.hpp"

#include <algorithm>
#include <map>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace surflift {

namespace {

/* Saturating product of enumeration-step counts; throws when the budget is
 * exceeded. Returns the exact step count otherwise. */
long long charge_budget(const std::vector<long long>& factors, long long extra,
                        long long budget) {
    long long evals = 1;
    for (long long f : factors) {
        if (f <= 0) return 0;
        if (evals > budget / f) {
            throw BudgetError("enumeration would need more than " + std::to_string(budget) +
                              " relator evaluations; raise the budget to proceed");
        }
        evals *= f;
    }
    if (evals > budget - extra) {
        throw BudgetError("enumeration would need more than " + std::to_string(budget) +
                          " relator evaluations; raise the budget to proceed");
    }
    return evals + extra;
}

/* ------------------------------------------------------------------ lifts */

struct LiftJob {
    const FiniteGroup* big = nullptr;
    int d = 0;
    std::vector<const std::vector<int>*> cx, cy; // generator-image cosets
    bool prune = false;
    /* For the last handle: per x-coset index, per group element v, the number
     * of y-coset elements b with [a, b] = v. */
    std::vector<std::vector<long long>> last_counts;
};

/* Enumerate handles h..d-1 on top of the accumulated relator value `acc`.
 * Counts completions whose total relator is the identity; when use_leaf is
 * set, also writes each completed tuple into cur and calls leaf(cur). */
template <typename Leaf>
long long lift_walk(const LiftJob& j, int h, int acc, std::vector<int>& cur, Leaf&& leaf,
                    bool use_leaf) {
    const FiniteGroup& G = *j.big;
    const std::vector<int>& ax = *j.cx[h];
    const std::vector<int>& ay = *j.cy[h];
    long long n = 0;
    if (h == j.d - 1) {
        const int needed = G.inv(acc);
        if (j.prune && !use_leaf) {
            for (size_t ia = 0; ia < ax.size(); ++ia) n += j.last_counts[ia][needed];
            return n;
        }
        for (int a : ax) {
            for (int b : ay) {
                if (G.commutator(a, b) != needed) continue;
                ++n;
                if (use_leaf) {
                    cur[h] = a;
                    cur[j.d + h] = b;
                    leaf(cur);
                }
            }
        }
        return n;
    }
    for (int a : ax) {
        for (int b : ay) {
            if (use_leaf) {
                cur[h] = a;
                cur[j.d + h] = b;
            }
            n += lift_walk(j, h + 1, G.mul(acc, G.commutator(a, b)), cur, leaf, use_leaf);
        }
    }
    return n;
}

LiftJob make_lift_job(const Extension& ext, const SurfaceHom& g, const OracleOptions& opt) {
    if (!same_group(*g.target, ext.base())) {
        throw ValidationError(
            "surface homomorphism targets a different group than the extension base");
    }
    LiftJob j;
    j.big = &ext.big();
    j.d = g.genus;
    for (int i = 0; i < g.genus; ++i) {
        j.cx.push_back(&ext.cosets[g.x[i]]);
        j.cy.push_back(&ext.cosets[g.y[i]]);
    }
    j.prune = opt.prune_last;

    std::vector<long long> factors;
    long long extra = 0;
    for (int i = 0; i < j.d; ++i) {
        factors.push_back((long long)j.cx[i]->size());
        if (!j.prune || i < j.d - 1) factors.push_back((long long)j.cy[i]->size());
    }
    if (j.prune && j.d > 0)
        extra = (long long)j.cx[j.d - 1]->size() * (long long)j.cy[j.d - 1]->size();
    charge_budget(factors, extra, opt.budget);

    if (j.prune && j.d > 0) {
        const FiniteGroup& G = *j.big;
        const std::vector<int>& ax = *j.cx[j.d - 1];
        const std::vector<int>& ay = *j.cy[j.d - 1];
        j.last_counts.assign(ax.size(), std::vector<long long>(G.order, 0));
        for (size_t ia = 0; ia < ax.size(); ++ia)
            for (int b : ay) ++j.last_counts[ia][G.commutator(ax[ia], b)];
    }
    return j;
}

/* Run one first-coordinate block of the parallel kernel. */
template <typename Leaf>
long long lift_block(const LiftJob& j, int ia0, std::vector<int>& cur, Leaf&& leaf,
                     bool use_leaf) {
    const FiniteGroup& G = *j.big;
    const int a0 = (*j.cx[0])[ia0];
    if (use_leaf) cur[0] = a0;
    if (j.d == 1) {
        if (j.prune && !use_leaf) return j.last_counts[ia0][G.identity];
        long long n = 0;
        for (int b : *j.cy[0]) {
            if (G.commutator(a0, b) != G.identity) continue;
            ++n;
            if (use_leaf) {
                cur[1] = b;
                leaf(cur);
            }
        }
        return n;
    }
    long long n = 0;
    for (int b : *j.cy[0]) {
        if (use_leaf) cur[j.d] = b;
        n += lift_walk(j, 1, G.commutator(a0, b), cur, leaf, use_leaf);
    }
    return n;
}

/* -------------------------------------------------------------- sections */

struct SectionJob {
    const FiniteGroup* phi = nullptr;
    int d = 0;
    int target = 0; // phi0^{-1}
    /* Per handle: the three fixed automorphisms in the commutator expansion
     * of the pair group, and the prefix transport applied to handle h's
     * contribution. */
    std::vector<Automorphism> e1, e2, e3, pre;
};

int section_term(const SectionJob& j, int h, int u, int v) {
    const FiniteGroup& P = *j.phi;
    int c = P.mul(P.mul(u, j.e1[h][v]), P.mul(j.e2[h][P.inv(u)], j.e3[h][P.inv(v)]));
    return j.pre[h][c];
}

template <typename Leaf>
long long section_walk(const SectionJob& j, int h, int acc, std::vector<int>& cur, Leaf&& leaf,
                       bool use_leaf) {
    const FiniteGroup& P = *j.phi;
    long long n = 0;
    if (h == j.d - 1) {
        const int needed = P.mul(P.inv(acc), j.target);
        for (int u = 0; u < P.order; ++u) {
            for (int v = 0; v < P.order; ++v) {
                if (section_term(j, h, u, v) != needed) continue;
                ++n;
                if (use_leaf) {
                    cur[h] = u;
                    cur[j.d + h] = v;
                    leaf(cur);
                }
            }
        }
        return n;
    }
    for (int u = 0; u < P.order; ++u) {
        for (int v = 0; v < P.order; ++v) {
            if (use_leaf) {
                cur[h] = u;
                cur[j.d + h] = v;
            }
            n += section_walk(j, h + 1, P.mul(acc, section_term(j, h, u, v)), cur, leaf,
                              use_leaf);
        }
    }
    return n;
}

SectionJob make_section_job(const ExtensionDatum& dat) {
    SectionJob j;
    j.phi = dat.phi.get();
    j.d = dat.genus;
    j.target = dat.phi->inv(dat.phi0);
    Automorphism prefix = identity_automorphism(*dat.phi);
    for (int i = 0; i < dat.genus; ++i) {
        const Automorphism& X = dat.psi_x[i];
        const Automorphism& Y = dat.psi_y[i];
        Automorphism Xi = auto_inverse(X);
        Automorphism e2 = auto_compose(auto_compose(X, Y), Xi);
        Automorphism e3 = auto_compose(e2, auto_inverse(Y));
        j.e1.push_back(X);
        j.e2.push_back(std::move(e2));
        j.pre.push_back(prefix);
        prefix = auto_compose(prefix, e3);
        j.e3.push_back(std::move(e3));
    }
    return j;
}

template <typename Leaf>
long long section_block(const SectionJob& j, int u0, std::vector<int>& cur, Leaf&& leaf,
                        bool use_leaf) {
    const FiniteGroup& P = *j.phi;
    if (use_leaf) cur[0] = u0;
    long long n = 0;
    if (j.d == 1) {
        for (int v = 0; v < P.order; ++v) {
            if (section_term(j, 0, u0, v) != j.target) continue;
            ++n;
            if (use_leaf) {
                cur[1] = v;
                leaf(cur);
            }
        }
        return n;
    }
    for (int v = 0; v < P.order; ++v) {
        if (use_leaf) cur[j.d] = v;
        n += section_walk(j, 1, section_term(j, 0, u0, v), cur, leaf, use_leaf);
    }
    return n;
}

long long sections_core(const ExtensionDatum& dat, const OracleOptions& opt,
                        std::vector<std::vector<int>>* out) {
    const FiniteGroup& P = *dat.phi;
    if (dat.genus == 0) {
        bool valid = dat.phi0 == P.identity;
        if (valid && out) out->push_back({});
        return valid ? 1 : 0;
    }
    std::vector<long long> factors(2 * (size_t)dat.genus, P.order);
    charge_budget(factors, 0, opt.budget);
    SectionJob j = make_section_job(dat);

    const bool use_leaf = out != nullptr;
    if (opt.threads <= 0) {
        std::vector<int> cur(2 * (size_t)dat.genus);
        long long n = 0;
        auto leaf = [&](const std::vector<int>& t) { out->push_back(t); };
        n = section_walk(j, 0, P.identity, cur, leaf, use_leaf);
        return n;
    }

    std::vector<long long> partial(P.order, 0);
    std::vector<std::vector<std::vector<int>>> collected(use_leaf ? P.order : 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(opt.threads)
#endif
    for (int u0 = 0; u0 < P.order; ++u0) {
        std::vector<int> cur(2 * (size_t)dat.genus);
        auto leaf = [&](const std::vector<int>& t) { collected[u0].push_back(t); };
        partial[u0] = section_block(j, u0, cur, leaf, use_leaf);
    }
    long long n = 0;
    for (int u0 = 0; u0 < P.order; ++u0) {
        n += partial[u0];
        if (use_leaf)
            for (std::vector<int>& t : collected[u0]) out->push_back(std::move(t));
    }
    return n;
}

/* ---------------------------------------------------------------- orbits */

template <typename Act>
OrbitTable build_orbit_table(const std::vector<std::vector<int>>& items, long long group_order,
                             Act&& act, const char* what) {
    OrbitTable table;
    table.total = (long long)items.size();
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < items.size(); ++i) {
        if (!index.emplace(items[i], (int)i).second)
            throw ValidationError(std::string(what) + " list contains duplicates");
    }
    std::vector<char> seen(items.size(), 0);
    for (size_t i = 0; i < items.size(); ++i) {
        if (seen[i]) continue;
        long long stab = 0;
        long long size = 0;
        for (int k = 0; k < group_order; ++k) {
            std::vector<int> moved = act(items[i], k);
            auto it = index.find(moved);
            if (it == index.end())
                throw ValidationError(std::string(what) + " list is not closed under the action");
            if (moved == items[i]) ++stab;
            if (!seen[it->second]) {
                seen[it->second] = 1;
                ++size;
            }
        }
        if (size * stab != group_order)
            throw ValidationError(std::string(what) +
                                  " list violates the orbit-stabilizer identity; "
                                  "it is not a complete enumeration");
        table.representatives.push_back(items[i]);
        table.orbit_sizes.push_back(size);
        table.stabilizer_orders.push_back(stab);
    }
    return table;
}

} // namespace

LiftEnumeration enumerate_lifts(const Extension& ext, const SurfaceHom& g,
                                const OracleOptions& opt) {
    LiftEnumeration result;
    if (g.genus == 0) {
        result.count = 1;
        if (opt.collect) result.homs.push_back({});
        return result;
    }
    LiftJob j = make_lift_job(ext, g, opt);
    const bool use_leaf = opt.collect;

    if (opt.threads <= 0) {
        std::vector<int> cur(2 * (size_t)j.d);
        auto leaf = [&](const std::vector<int>& t) { result.homs.push_back(t); };
        result.count = lift_walk(j, 0, j.big->identity, cur, leaf, use_leaf);
        return result;
    }

    const int blocks = (int)j.cx[0]->size();
    std::vector<long long> partial(blocks, 0);
    std::vector<std::vector<std::vector<int>>> collected(use_leaf ? blocks : 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(opt.threads)
#endif
    for (int ia0 = 0; ia0 < blocks; ++ia0) {
        std::vector<int> cur(2 * (size_t)j.d);
        auto leaf = [&](const std::vector<int>& t) { collected[ia0].push_back(t); };
        partial[ia0] = lift_block(j, ia0, cur, leaf, use_leaf);
    }
    for (int ia0 = 0; ia0 < blocks; ++ia0) {
        result.count += partial[ia0];
        if (use_leaf)
            for (std::vector<int>& t : collected[ia0]) result.homs.push_back(std::move(t));
    }
    return result;
}

long long enumerate_sections(const ExtensionDatum& dat, const OracleOptions& opt) {
    return sections_core(dat, opt, nullptr);
}

OrbitTable orbit_table(const std::vector<std::vector<int>>& homs, const Extension& ext) {
    const FiniteGroup& G = ext.big();
    const std::vector<int>& kernel_elements = ext.kernel.to_parent;
    auto act = [&](const std::vector<int>& tuple, int k) {
        const int gamma = kernel_elements[k];
        std::vector<int> moved(tuple.size());
        for (size_t i = 0; i < tuple.size(); ++i) moved[i] = G.conj(gamma, tuple[i]);
        return moved;
    };
    return build_orbit_table(homs, ext.kernel_order(), act, "lift");
}

CocycleEnumeration enumerate_cocycles(GroupPtr phi, int genus,
                                      const std::vector<Automorphism>& act_x,
                                      const std::vector<Automorphism>& act_y,
                                      const OracleOptions& opt) {
    ExtensionDatum dat = split_datum(phi, genus, act_x, act_y);
    std::vector<std::vector<int>> cocycles;
    CocycleEnumeration out;
    out.z1 = sections_core(dat, opt, &cocycles);
    auto act = [&](const std::vector<int>& s, int f) { return section_shift(dat, s, f); };
    out.classes = build_orbit_table(cocycles, phi->order, act, "cocycle");
    out.measure = BigRational(out.z1, phi->order);
    BigRational check(0);
    for (long long stab : out.classes.stabilizer_orders) check = check + BigRational(1, stab);
    if (!(check == out.measure))
        throw NumericalError("class measure does not match the cocycle count");
    return out;
}

cplx t2_lhs_oracle(const Extension& ext, const SurfaceHom& g, const TwoCocycle& theta,
                   const OracleOptions& opt) {
    if (!same_group(*theta.group, ext.big()))
        throw ValidationError("the cocycle must live on the total group of the extension");
    if (g.genus == 0) return cplx(1.0);
    LiftJob j = make_lift_job(ext, g, opt);
    const int d = j.d;
    auto pairing_of = [&](const std::vector<int>& tuple) {
        std::vector<int> xs(tuple.begin(), tuple.begin() + d);
        std::vector<int> ys(tuple.begin() + d, tuple.end());
        return theta_pairing(theta, make_surface_hom(ext.q.domain, d, xs, ys));
    };

    if (opt.threads <= 0) {
        std::vector<int> cur(2 * (size_t)d);
        cplx sum(0.0);
        auto leaf = [&](const std::vector<int>& t) { sum += pairing_of(t); };
        lift_walk(j, 0, j.big->identity, cur, leaf, true);
        return sum;
    }

    const int blocks = (int)j.cx[0]->size();
    std::vector<cplx> partial(blocks, cplx(0.0));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(opt.threads)
#endif
    for (int ia0 = 0; ia0 < blocks; ++ia0) {
        std::vector<int> cur(2 * (size_t)d);
        cplx sum(0.0);
        auto leaf = [&](const std::vector<int>& t) { sum += pairing_of(t); };
        lift_block(j, ia0, cur, leaf, true);
        partial[ia0] = sum;
    }
    cplx total(0.0);
    for (int ia0 = 0; ia0 < blocks; ++ia0) total += partial[ia0];
    return total;
}

} // namespace surflift
