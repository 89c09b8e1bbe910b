#include "surflift/cocycle.hpp"

#include "surflift/error.hpp"

#include <cmath>
#include <string>

namespace surflift {

bool TwoCocycle::is_trivial() const {
    for (const cplx& v : values)
        if (std::abs(v - 1.0) > 1e-12) return false;
    return true;
}

TwoCocycle trivial_cocycle(GroupPtr G) {
    TwoCocycle t;
    t.values.assign((size_t)G->order * G->order, cplx(1.0));
    t.group = std::move(G);
    return t;
}

TwoCocycle make_cocycle(GroupPtr G, std::vector<cplx> values, const TolerancePolicy& tol) {
    const int n = G->order;
    if ((int)values.size() != n * n)
        throw ValidationError("cocycle value table has wrong size");
    TwoCocycle t;
    t.group = G;
    t.values = std::move(values);

    double scale = 0;
    for (const cplx& v : t.values) scale = std::max(scale, std::abs(v));
    for (const cplx& v : t.values)
        if (std::abs(v) < 1e-12 * std::max(1.0, scale))
            throw ValidationError("cocycle has a (near-)zero value");

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                cplx lhs = t.at(a, b) * t.at(G->mul(a, b), c);
                cplx rhs = t.at(a, G->mul(b, c)) * t.at(b, c);
                if (std::abs(lhs - rhs) > tol.scalar_eps * std::max(1.0, std::abs(lhs)))
                    throw ValidationError("cocycle identity fails at (a,b,c)=(" +
                                          std::to_string(a) + "," + std::to_string(b) + "," +
                                          std::to_string(c) + ")");
            }
    return t;
}

TwoCocycle normalize_cocycle(const TwoCocycle& theta, const TolerancePolicy&,
                             std::vector<cplx>* coboundary_out) {
    const FiniteGroup& G = *theta.group;
    cplx unit = theta.at(G.identity, G.identity);
    /* Constant functions are coboundaries: c(a)c(b)/c(ab) = c.  Dividing by
     * theta(1,1) is the coboundary of the constant 1/theta(1,1). */
    if (coboundary_out) coboundary_out->assign(G.order, cplx(1.0) / unit);
    TwoCocycle t;
    t.group = theta.group;
    t.values.reserve(theta.values.size());
    for (const cplx& v : theta.values) t.values.push_back(v / unit);
    /* The cocycle identity forces the whole identity row/column to the same
     * constant; pin them to exactly 1 to remove rounding dust. */
    for (int a = 0; a < G.order; ++a) {
        t.values[(size_t)G.identity * G.order + a] = 1.0;
        t.values[(size_t)a * G.order + G.identity] = 1.0;
    }
    return t;
}

bool is_unit_modulus(const TwoCocycle& theta, double eps) {
    for (const cplx& v : theta.values)
        if (std::abs(std::abs(v) - 1.0) > eps) return false;
    return true;
}

TwoCocycle unit_modulus_rescale(const TwoCocycle& theta, std::vector<double>& b_out) {
    const FiniteGroup& G = *theta.group;
    const int n = G.order;
    /* log|b(g)| = (1/n) sum_h log|theta(g,h)|; the cocycle identity gives
     * |theta(a,b)| = b(a) b(b) / b(ab) exactly. */
    b_out.assign(n, 1.0);
    for (int g = 0; g < n; ++g) {
        double logsum = 0;
        for (int h = 0; h < n; ++h) logsum += std::log(std::abs(theta.at(g, h)));
        b_out[g] = std::exp(logsum / n);
    }
    TwoCocycle t;
    t.group = theta.group;
    t.values.resize(theta.values.size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            cplx v = theta.at(a, b) * (b_out[G.mul(a, b)] / (b_out[a] * b_out[b]));
            t.values[(size_t)a * n + b] = v / std::abs(v); // force exact unit modulus
        }
    return t;
}

} // namespace surflift
