#include "surflift/rep.hpp"

#include "surflift/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace surflift {

namespace {

/* ---- rectangular helpers (row-major) ---- */

RectMatrix rect_identity(int n) {
    RectMatrix r;
    r.rows = r.cols = n;
    r.a.assign((size_t)n * n, 0.0);
    for (int i = 0; i < n; ++i) r.at(i, i) = 1.0;
    return r;
}

/* A^dagger * B, A is D x m, B is D x n -> m x n. */
RectMatrix adj_mul(const RectMatrix& A, const RectMatrix& B) {
    RectMatrix r;
    r.rows = A.cols;
    r.cols = B.cols;
    r.a.assign((size_t)r.rows * r.cols, 0.0);
    for (int k = 0; k < A.rows; ++k)
        for (int i = 0; i < A.cols; ++i) {
            cplx v = std::conj(A.at(k, i));
            if (v == 0.0) continue;
            for (int j = 0; j < B.cols; ++j) r.at(i, j) += v * B.at(k, j);
        }
    return r;
}

/* A * B with A p x q, B q x r. */
RectMatrix rect_mul(const RectMatrix& A, const RectMatrix& B) {
    RectMatrix r;
    r.rows = A.rows;
    r.cols = B.cols;
    r.a.assign((size_t)r.rows * r.cols, 0.0);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            cplx v = A.at(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < B.cols; ++j) r.at(i, j) += v * B.at(k, j);
        }
    return r;
}

CMatrix to_cmatrix(const RectMatrix& A) {
    CMatrix m(A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) m.at(i, j) = A.at(i, j);
    return m;
}

/* The twisted regular action applied to a basis: (L_g B)[g*h][c] =
 * theta(g,h) * B[h][c]; one nonzero per column of L_g, so no D x D product. */
RectMatrix apply_regular(const FiniteGroup& G, const TwoCocycle& th, int g,
                         const RectMatrix& B) {
    RectMatrix r;
    r.rows = B.rows;
    r.cols = B.cols;
    r.a.assign(B.a.size(), 0.0);
    for (int h = 0; h < G.order; ++h) {
        cplx w = th.at(g, h);
        int row = G.mul(g, h);
        for (int c = 0; c < B.cols; ++c) r.at(row, c) = w * B.at(h, c);
    }
    return r;
}

std::vector<CMatrix> subspace_rep(const FiniteGroup& G, const TwoCocycle& th,
                                  const RectMatrix& B) {
    std::vector<CMatrix> mats(G.order);
    for (int g = 0; g < G.order; ++g) mats[g] = to_cmatrix(adj_mul(B, apply_regular(G, th, g, B)));
    return mats;
}

struct SplitContext {
    const FiniteGroup& G;
    const TwoCocycle& th;
    const std::vector<int>& gens;
    std::mt19937_64& rng;
    const TolerancePolicy& tol;
    int maxdim;
    std::vector<std::vector<CMatrix>>& out;
};

void split_subspace(SplitContext& ctx, const RectMatrix& B) {
    const int m = B.cols;
    auto rho = subspace_rep(ctx.G, ctx.th, B);

    if (m <= ctx.maxdim) {
        if (ctx.gens.empty()) { // trivial group
            ctx.out.push_back(rho);
            return;
        }
        std::vector<CMatrix> gen_mats;
        for (int g : ctx.gens) gen_mats.push_back(rho[g]);
        if ((int)solve_intertwiner_space(gen_mats, gen_mats).size() == 1) {
            ctx.out.push_back(std::move(rho));
            return;
        }
    }

    std::normal_distribution<double> nd(0.0, 1.0);
    for (int attempt = 0; attempt < 8; ++attempt) {
        CMatrix H0(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) H0.at(i, j) = cplx(nd(ctx.rng), nd(ctx.rng));
        H0 = (H0 + H0.adjoint()).scaled(0.5);

        /* Group-averaged H0 lies in the commutant of rho (the cocycle factors
         * cancel in rho(g) H0 rho(g)^dagger for unit-modulus cocycles). */
        CMatrix H(m);
        for (int g = 0; g < ctx.G.order; ++g) H = H + rho[g] * H0 * rho[g].adjoint();
        H = (H + H.adjoint()).scaled(0.5 / ctx.G.order);

        std::vector<double> w;
        CMatrix V;
        eig_hermitian(H, w, V);
        double spread = w.back() - w.front();
        double wscale = std::max(std::abs(w.back()), std::abs(w.front()));
        if (spread <= 1e-9 * std::max(1.0, wscale)) continue; // scalar; retry

        std::vector<std::pair<int, int>> clusters; // [begin, end)
        int begin = 0;
        for (int i = 1; i < m; ++i)
            if (w[i] - w[i - 1] > 1e-6 * spread) {
                clusters.push_back({begin, i});
                begin = i;
            }
        clusters.push_back({begin, m});
        if (clusters.size() < 2) continue;

        for (auto [lo, hi] : clusters) {
            RectMatrix Vc;
            Vc.rows = m;
            Vc.cols = hi - lo;
            Vc.a.resize((size_t)m * (hi - lo));
            for (int r = 0; r < m; ++r)
                for (int c = lo; c < hi; ++c) Vc.at(r, c - lo) = V.at(r, c);
            split_subspace(ctx, rect_mul(B, Vc));
        }
        return;
    }
    throw NumericalError("failed to split a reducible invariant subspace");
}

std::vector<std::pair<long long, long long>> character_key(const std::vector<CMatrix>& mats) {
    std::vector<std::pair<long long, long long>> key;
    key.reserve(mats.size());
    for (const CMatrix& M : mats) {
        cplx t = M.trace();
        key.push_back({std::llround(t.real() * 1e6), std::llround(t.imag() * 1e6)});
    }
    return key;
}

} // namespace

std::vector<cplx> ProjectiveRep::character() const {
    std::vector<cplx> chi;
    chi.reserve(mats.size());
    for (const CMatrix& M : mats) chi.push_back(M.trace());
    return chi;
}

double rep_defect(const ProjectiveRep& rho) {
    const FiniteGroup& G = *rho.group;
    double worst = 0;
    for (int a = 0; a < G.order; ++a)
        for (int b = 0; b < G.order; ++b) {
            CMatrix d = rho.mats[a] * rho.mats[b] - rho.mats[G.mul(a, b)].scaled(rho.theta.at(a, b));
            worst = std::max(worst, d.max_abs());
        }
    return worst;
}

int intertwiner_dimension(const ProjectiveRep& rho, const ProjectiveRep& sigma) {
    if (!same_group(*rho.group, *sigma.group))
        throw ValidationError("intertwiner dimension needs reps of the same group");
    auto gens = small_generating_set(*rho.group);
    if (gens.empty()) return rho.dim() * sigma.dim(); // trivial group
    std::vector<CMatrix> L, R;
    for (int g : gens) {
        L.push_back(rho.mats[g]);
        R.push_back(sigma.mats[g]);
    }
    return (int)solve_intertwiner_space(L, R).size();
}

bool equivalent_reps(const ProjectiveRep& rho, const ProjectiveRep& sigma) {
    if (rho.dim() != sigma.dim()) return false;
    return intertwiner_dimension(rho, sigma) > 0;
}

IrrSet irreducible_reps(GroupPtr G, const TwoCocycle& theta, uint64_t seed,
                        const TolerancePolicy& tol) {
    if (!same_group(*G, *theta.group))
        throw ValidationError("cocycle is defined on a different group");
    const int n = G->order;
    TwoCocycle norm = normalize_cocycle(theta);

    std::vector<double> b;
    bool rescaled = !is_unit_modulus(norm, tol.scalar_eps);
    TwoCocycle work = rescaled ? unit_modulus_rescale(norm, b) : norm;

    std::mt19937_64 rng(seed);
    auto gens = small_generating_set(*G);
    int maxdim = (int)std::floor(std::sqrt((double)n) + 0.5);
    while (maxdim * maxdim > n) --maxdim;

    std::vector<std::vector<CMatrix>> found;
    SplitContext ctx{*G, work, gens, rng, tol, maxdim, found};
    split_subspace(ctx, rect_identity(n));

    /* Group the invariant subspaces into equivalence classes. */
    std::vector<ProjectiveRep> reps;
    for (auto& mats : found) {
        ProjectiveRep r;
        r.group = G;
        r.theta = work;
        r.mats = std::move(mats);
        if (rep_defect(r) > tol.mat_eps)
            throw NumericalError("split produced a non-representation");
        for (const CMatrix& M : r.mats)
            if (!M.is_unitary(tol.mat_eps))
                throw NumericalError("split produced a non-unitary matrix");
        reps.push_back(std::move(r));
    }

    std::vector<ProjectiveRep> classes;
    std::vector<int> multiplicity;
    std::vector<std::vector<std::pair<long long, long long>>> keys;
    for (auto& r : reps) {
        int hit = -1;
        auto key = character_key(r.mats);
        for (size_t c = 0; c < classes.size(); ++c) {
            if (classes[c].dim() != r.dim() || keys[c] != key) continue;
            if (equivalent_reps(classes[c], r)) {
                hit = (int)c;
                break;
            }
        }
        if (hit < 0) {
            classes.push_back(std::move(r));
            keys.push_back(std::move(key));
            multiplicity.push_back(1);
        } else {
            ++multiplicity[hit];
        }
    }

    long long dimsq = 0;
    for (size_t c = 0; c < classes.size(); ++c) {
        dimsq += (long long)classes[c].dim() * classes[c].dim();
        if (multiplicity[c] != classes[c].dim())
            throw NumericalError("regular representation multiplicity mismatch");
    }
    if (dimsq != n)
        throw NumericalError("irreducible dimensions do not account for the group order");

    std::vector<int> order(classes.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(), [&](int a, int bidx) {
        if (classes[a].dim() != classes[bidx].dim())
            return classes[a].dim() < classes[bidx].dim();
        return keys[a] < keys[bidx];
    });

    IrrSet out;
    for (int idx : order) {
        ProjectiveRep r = std::move(classes[idx]);
        if (rescaled) {
            for (int g = 0; g < n; ++g) r.mats[g] = r.mats[g].scaled(b[g]);
            r.theta = norm;
            if (rep_defect(r) > tol.mat_eps * 10)
                throw NumericalError("rescaled representation violates the cocycle law");
        }
        out.irreps.push_back(std::move(r));
    }
    return out;
}

IrrSet irreducible_reps(GroupPtr G, uint64_t seed, const TolerancePolicy& tol) {
    TwoCocycle triv = trivial_cocycle(G);
    return irreducible_reps(std::move(G), triv, seed, tol);
}

} // namespace surflift
