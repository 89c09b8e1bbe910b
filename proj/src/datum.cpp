#include "surflift/datum.hpp"

#include "surflift/error.hpp"

#include <algorithm>
#include <numeric>

namespace surflift {

Automorphism identity_automorphism(const FiniteGroup& G) {
    Automorphism f(G.order);
    std::iota(f.begin(), f.end(), 0);
    return f;
}

Automorphism auto_compose(const Automorphism& f, const Automorphism& g) {
    Automorphism r(g.size());
    for (size_t i = 0; i < g.size(); ++i) r[i] = f[g[i]];
    return r;
}

Automorphism auto_inverse(const Automorphism& f) {
    Automorphism r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[f[i]] = (int)i;
    return r;
}

bool is_automorphism(const FiniteGroup& G, const Automorphism& f) {
    if ((int)f.size() != G.order) return false;
    std::vector<char> seen(G.order, 0);
    for (int v : f) {
        if (v < 0 || v >= G.order || seen[v]) return false;
        seen[v] = 1;
    }
    for (int a = 0; a < G.order; ++a)
        for (int b = 0; b < G.order; ++b)
            if (f[G.mul(a, b)] != G.mul(f[a], f[b])) return false;
    return true;
}

Automorphism conj_automorphism(const FiniteGroup& G, int a) {
    Automorphism f(G.order);
    for (int x = 0; x < G.order; ++x) f[x] = G.conj(a, x);
    return f;
}

namespace {

void validate_datum(const ExtensionDatum& dat) {
    const FiniteGroup& P = *dat.phi;
    if (dat.genus < 1) throw ValidationError("datum genus must be at least 1");
    if ((int)dat.psi_x.size() != dat.genus || (int)dat.psi_y.size() != dat.genus)
        throw ValidationError("datum needs one automorphism per surface generator");
    for (int i = 0; i < dat.genus; ++i) {
        if (!is_automorphism(P, dat.psi_x[i]))
            throw ValidationError("psi_x[" + std::to_string(i) + "] is not an automorphism");
        if (!is_automorphism(P, dat.psi_y[i]))
            throw ValidationError("psi_y[" + std::to_string(i) + "] is not an automorphism");
    }
    if (dat.phi0 < 0 || dat.phi0 >= P.order)
        throw ValidationError("datum defect element out of range");
    Automorphism acc = identity_automorphism(P);
    for (int i = 0; i < dat.genus; ++i) {
        Automorphism c = auto_compose(
            auto_compose(dat.psi_x[i], dat.psi_y[i]),
            auto_compose(auto_inverse(dat.psi_x[i]), auto_inverse(dat.psi_y[i])));
        acc = auto_compose(acc, c);
    }
    if (acc != conj_automorphism(P, dat.phi0))
        throw ValidationError(
            "datum incompatible: automorphism commutators do not compose to conjugation by "
            "the defect element");
}

} // namespace

ExtensionDatum make_datum(GroupPtr phi, int genus, std::vector<Automorphism> psi_x,
                          std::vector<Automorphism> psi_y, int phi0) {
    ExtensionDatum dat{std::move(phi), genus, std::move(psi_x), std::move(psi_y), phi0};
    validate_datum(dat);
    return dat;
}

ExtensionDatum split_datum(GroupPtr phi, int genus, std::vector<Automorphism> psi_x,
                           std::vector<Automorphism> psi_y) {
    int id = phi->identity;
    return make_datum(std::move(phi), genus, std::move(psi_x), std::move(psi_y), id);
}

ExtensionDatum pullback_datum(const Extension& ext, const SurfaceHom& g,
                              std::vector<int> lifts_x, std::vector<int> lifts_y) {
    if (!same_group(*g.target, *ext.q.codomain))
        throw ValidationError("surface hom target is not the extension base");
    const FiniteGroup& D = ext.big();
    if (lifts_x.empty())
        for (int a : g.x) lifts_x.push_back(ext.lift(a));
    if (lifts_y.empty())
        for (int b : g.y) lifts_y.push_back(ext.lift(b));
    if ((int)lifts_x.size() != g.genus || (int)lifts_y.size() != g.genus)
        throw ValidationError("need one preimage per surface generator");
    for (int i = 0; i < g.genus; ++i) {
        if (ext.q.map(lifts_x[i]) != g.x[i])
            throw ValidationError("x preimage does not map to the generator image");
        if (ext.q.map(lifts_y[i]) != g.y[i])
            throw ValidationError("y preimage does not map to the generator image");
    }

    const SubgroupView& K = ext.kernel;
    const int m = K.local->order;
    auto conj_on_kernel = [&](int a) {
        Automorphism f(m);
        for (int k = 0; k < m; ++k) {
            int img = K.to_local[D.conj(a, K.to_parent[k])];
            if (img < 0) throw ValidationError("conjugation does not preserve the kernel");
            f[k] = img;
        }
        return f;
    };

    std::vector<Automorphism> psi_x, psi_y;
    for (int i = 0; i < g.genus; ++i) {
        psi_x.push_back(conj_on_kernel(lifts_x[i]));
        psi_y.push_back(conj_on_kernel(lifts_y[i]));
    }
    int defect = relator_value(D, lifts_x, lifts_y);
    int phi0 = K.to_local[defect];
    if (phi0 < 0)
        throw ValidationError("preimage commutator product is not in the kernel");
    return make_datum(K.local, g.genus, std::move(psi_x), std::move(psi_y), phi0);
}

int section_relator_first(const ExtensionDatum& dat, const Section& s) {
    const FiniteGroup& P = *dat.phi;
    if ((int)s.size() != 2 * dat.genus)
        throw ValidationError("section has wrong length");
    for (int v : s)
        if (v < 0 || v >= P.order) throw ValidationError("section entry out of range");

    /* Pair arithmetic, carrying only the first coordinate and the running
       automorphism. */
    int first = P.identity;
    Automorphism psi = identity_automorphism(P);
    auto mul_pair = [&](int f2, const Automorphism& p2) {
        first = P.mul(first, psi[f2]);
        psi = auto_compose(psi, p2);
    };
    for (int i = 0; i < dat.genus; ++i) {
        int u = s[i], v = s[dat.genus + i];
        const Automorphism& px = dat.psi_x[i];
        const Automorphism& py = dat.psi_y[i];
        Automorphism pxi = auto_inverse(px), pyi = auto_inverse(py);
        mul_pair(u, px);
        mul_pair(v, py);
        mul_pair(pxi[P.inv(u)], pxi); // (u, px)^-1
        mul_pair(pyi[P.inv(v)], pyi); // (v, py)^-1
    }
    return first;
}

bool section_is_valid(const ExtensionDatum& dat, const Section& s) {
    return section_relator_first(dat, s) == dat.phi->inv(dat.phi0);
}

Section section_shift(const ExtensionDatum& dat, const Section& s, int phi) {
    const FiniteGroup& P = *dat.phi;
    Section r(s.size());
    for (int i = 0; i < dat.genus; ++i) {
        r[i] = P.mul(P.mul(phi, s[i]), P.inv(dat.psi_x[i][phi]));
        r[dat.genus + i] = P.mul(P.mul(phi, s[dat.genus + i]), P.inv(dat.psi_y[i][phi]));
    }
    return r;
}

} // namespace surflift
