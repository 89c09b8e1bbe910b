#include "surflift/group.hpp"

#include "surflift/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace surflift {

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order; ++a)
        for (int b = a + 1; b < order; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::string FiniteGroup::label(int i) const {
    if (!labels.empty()) return labels[i];
    return std::to_string(i);
}

namespace {

GroupPtr finish_group(FiniteGroup g, const GroupLimits& limits) {
    const int n = g.order;
    if (n <= 0) throw ValidationError("group has no elements");
    if (n > limits.max_order)
        throw ValidationError("group order " + std::to_string(n) + " exceeds cap " +
                              std::to_string(limits.max_order));
    for (int v : g.table)
        if (v < 0 || v >= n)
            throw ValidationError("cayley table entry " + std::to_string(v) + " out of range");

    int id = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            ok = g.mul(e, a) == a && g.mul(a, e) == a;
        if (ok) {
            id = e;
            break;
        }
    }
    if (id < 0) throw ValidationError("cayley table has no two-sided identity");
    g.identity = id;

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    throw ValidationError(
                        "cayley table not associative at (a,b,c)=(" + std::to_string(a) + "," +
                        std::to_string(b) + "," + std::to_string(c) + "): (a*b)*c=" +
                        std::to_string(g.mul(g.mul(a, b), c)) + ", a*(b*c)=" +
                        std::to_string(g.mul(a, g.mul(b, c))));

    g.inverses.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (g.mul(a, b) == id && g.mul(b, a) == id) {
                g.inverses[a] = b;
                break;
            }
        if (g.inverses[a] < 0)
            throw ValidationError("element " + std::to_string(a) + " has no inverse");
    }
    if (!g.labels.empty() && (int)g.labels.size() != n)
        throw ValidationError("label list size does not match group order");
    return std::make_shared<FiniteGroup>(std::move(g));
}

} // namespace

GroupPtr group_from_table(const std::vector<std::vector<int>>& rows,
                          std::vector<std::string> labels, GroupLimits limits) {
    FiniteGroup g;
    g.order = (int)rows.size();
    for (const auto& row : rows) {
        if ((int)row.size() != g.order)
            throw ValidationError("cayley table is not square");
        g.table.insert(g.table.end(), row.begin(), row.end());
    }
    g.labels = std::move(labels);
    return finish_group(std::move(g), limits);
}

GroupPtr group_from_perm_images(int degree, const std::vector<std::vector<int>>& generators,
                                GroupLimits limits) {
    if (degree <= 0) throw ValidationError("permutation degree must be positive");
    for (const auto& p : generators) {
        if ((int)p.size() != degree)
            throw ValidationError("permutation image array has wrong length");
        std::vector<char> seen(degree, 0);
        for (int v : p) {
            if (v < 0 || v >= degree || seen[v])
                throw ValidationError("generator is not a permutation");
            seen[v] = 1;
        }
    }

    std::vector<int> id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> elems{id};
    std::map<std::vector<int>, int> index{{id, 0}};
    auto compose = [&](const std::vector<int>& f, const std::vector<int>& g) {
        std::vector<int> r(degree);
        for (int i = 0; i < degree; ++i) r[i] = f[g[i]];
        return r;
    };
    for (size_t i = 0; i < elems.size(); ++i) {
        for (const auto& gen : generators) {
            auto prod = compose(elems[i], gen);
            if (index.emplace(prod, (int)elems.size()).second) {
                elems.push_back(prod);
                if ((int)elems.size() > limits.max_order)
                    throw ValidationError("permutation closure exceeds order cap " +
                                          std::to_string(limits.max_order));
            }
        }
    }

    FiniteGroup g;
    g.order = (int)elems.size();
    g.table.resize((size_t)g.order * g.order);
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b) {
            auto prod = compose(elems[a], elems[b]);
            auto it = index.find(prod);
            if (it == index.end()) throw ValidationError("permutation closure not closed");
            g.table[a * g.order + b] = it->second;
        }
    g.labels.reserve(g.order);
    for (const auto& e : elems) {
        std::string s = "(";
        for (int i = 0; i < degree; ++i) s += std::to_string(e[i]) + (i + 1 < degree ? " " : "");
        g.labels.push_back(s + ")");
    }
    return finish_group(std::move(g), limits);
}

GroupPtr group_from_permutations(int degree,
                                 const std::vector<std::vector<std::vector<int>>>& generator_cycles,
                                 GroupLimits limits) {
    std::vector<std::vector<int>> gens;
    for (const auto& cycles : generator_cycles) {
        std::vector<int> img(degree);
        std::iota(img.begin(), img.end(), 0);
        for (const auto& cyc : cycles) {
            for (int v : cyc)
                if (v < 0 || v >= degree)
                    throw ValidationError("cycle entry out of range for degree " +
                                          std::to_string(degree));
            for (size_t i = 0; i < cyc.size(); ++i)
                img[cyc[i]] = cyc[(i + 1) % cyc.size()];
        }
        gens.push_back(std::move(img));
    }
    return group_from_perm_images(degree, gens, limits);
}

bool same_group(const FiniteGroup& a, const FiniteGroup& b) {
    if (&a == &b) return true;
    return a.order == b.order && a.table == b.table;
}

std::vector<int> subgroup_closure(const FiniteGroup& G, std::vector<int> gens) {
    std::vector<char> in(G.order, 0);
    std::vector<int> frontier{G.identity};
    in[G.identity] = 1;
    for (int g : gens)
        if (g < 0 || g >= G.order)
            throw ValidationError("generator index out of range");
    for (int g : gens)
        if (!in[g]) {
            in[g] = 1;
            frontier.push_back(g);
        }
    for (size_t i = 0; i < frontier.size(); ++i) {
        for (int g : gens) {
            int p = G.mul(frontier[i], g);
            if (!in[p]) {
                in[p] = 1;
                frontier.push_back(p);
            }
            p = G.mul(frontier[i], G.inv(g));
            if (!in[p]) {
                in[p] = 1;
                frontier.push_back(p);
            }
        }
    }
    std::sort(frontier.begin(), frontier.end());
    return frontier;
}

std::vector<int> center(const FiniteGroup& G) {
    std::vector<int> z;
    for (int a = 0; a < G.order; ++a) {
        bool central = true;
        for (int b = 0; b < G.order && central; ++b)
            central = G.mul(a, b) == G.mul(b, a);
        if (central) z.push_back(a);
    }
    return z;
}

std::vector<int> small_generating_set(const FiniteGroup& G) {
    std::vector<int> gens;
    std::vector<int> closure{G.identity};
    std::vector<char> in(G.order, 0);
    in[G.identity] = 1;
    while ((int)closure.size() < G.order) {
        int next = -1;
        for (int a = 0; a < G.order; ++a)
            if (!in[a]) {
                next = a;
                break;
            }
        gens.push_back(next);
        closure = subgroup_closure(G, gens);
        std::fill(in.begin(), in.end(), 0);
        for (int a : closure) in[a] = 1;
    }
    return gens;
}

SubgroupView make_subgroup_view(GroupPtr parent, const std::vector<int>& elements) {
    std::vector<int> elems = elements;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    const FiniteGroup& P = *parent;
    for (int e : elems)
        if (e < 0 || e >= P.order)
            throw ValidationError("subgroup element index out of range");

    SubgroupView v;
    v.parent = parent;
    v.to_parent = elems;
    v.to_local.assign(P.order, -1);
    for (int i = 0; i < (int)elems.size(); ++i) v.to_local[elems[i]] = i;

    FiniteGroup loc;
    loc.order = (int)elems.size();
    loc.table.resize((size_t)loc.order * loc.order);
    for (int a = 0; a < loc.order; ++a)
        for (int b = 0; b < loc.order; ++b) {
            int p = P.mul(elems[a], elems[b]);
            int l = v.to_local[p];
            if (l < 0)
                throw ValidationError("element set is not closed under multiplication: " +
                                      P.label(elems[a]) + " * " + P.label(elems[b]) + " = " +
                                      P.label(p) + " is outside");
            loc.table[a * loc.order + b] = l;
        }
    if (!P.labels.empty()) {
        loc.labels.reserve(loc.order);
        for (int e : elems) loc.labels.push_back(P.labels[e]);
    }
    GroupLimits wide;
    wide.max_order = P.order;
    v.local = group_from_table(
        [&] {
            std::vector<std::vector<int>> rows(loc.order, std::vector<int>(loc.order));
            for (int a = 0; a < loc.order; ++a)
                for (int b = 0; b < loc.order; ++b) rows[a][b] = loc.table[a * loc.order + b];
            return rows;
        }(),
        loc.labels, wide);
    return v;
}

GroupHom make_hom(GroupPtr domain, GroupPtr codomain, std::vector<int> images) {
    const FiniteGroup& D = *domain;
    const FiniteGroup& C = *codomain;
    if ((int)images.size() != D.order)
        throw ValidationError("hom image array has wrong length");
    for (int v : images)
        if (v < 0 || v >= C.order)
            throw ValidationError("hom image index out of range");
    for (int a = 0; a < D.order; ++a)
        for (int b = 0; b < D.order; ++b)
            if (images[D.mul(a, b)] != C.mul(images[a], images[b]))
                throw ValidationError("not a homomorphism at (a,b)=(" + std::to_string(a) + "," +
                                      std::to_string(b) + "): f(ab)=" +
                                      std::to_string(images[D.mul(a, b)]) + " but f(a)f(b)=" +
                                      std::to_string(C.mul(images[a], images[b])));
    return GroupHom{std::move(domain), std::move(codomain), std::move(images)};
}

int Extension::lift(int alpha) const {
    if (alpha == q.codomain->identity) return q.domain->identity;
    return cosets[alpha][0];
}

Extension make_extension(GroupHom q) {
    const FiniteGroup& D = *q.domain;
    const FiniteGroup& C = *q.codomain;
    std::vector<std::vector<int>> cosets(C.order);
    for (int a = 0; a < D.order; ++a) cosets[q.map(a)].push_back(a);
    for (int c = 0; c < C.order; ++c)
        if (cosets[c].empty())
            throw ValidationError("quotient map is not surjective: " + C.label(c) +
                                  " has no preimage");
    Extension ext;
    ext.kernel = make_subgroup_view(q.domain, cosets[C.identity]);
    ext.q = std::move(q);
    ext.cosets = std::move(cosets);
    if (ext.kernel.local->order * C.order != D.order)
        throw ValidationError("kernel size times base order does not match group order");
    return ext;
}

std::vector<int> mixed_commutator(const Extension& ext) {
    const FiniteGroup& D = ext.big();
    std::vector<int> gens;
    for (int kl = 0; kl < ext.kernel_order(); ++kl) {
        int gamma = ext.kernel.to_parent[kl];
        for (int a = 0; a < D.order; ++a) gens.push_back(D.commutator(gamma, a));
    }
    std::vector<int> sub = subgroup_closure(D, gens);
    std::vector<int> local;
    for (int p : sub) {
        int l = ext.kernel.to_local[p];
        if (l < 0)
            throw ValidationError("mixed commutator left the kernel (kernel not normal?)");
        local.push_back(l);
    }
    std::sort(local.begin(), local.end());
    return local;
}

int relator_value(const FiniteGroup& G, const std::vector<int>& x, const std::vector<int>& y) {
    int acc = G.identity;
    for (size_t i = 0; i < x.size(); ++i) acc = G.mul(acc, G.commutator(x[i], y[i]));
    return acc;
}

std::vector<int> SurfaceHom::image() const {
    std::vector<int> gens = x;
    gens.insert(gens.end(), y.begin(), y.end());
    return subgroup_closure(*target, gens);
}

SurfaceHom make_surface_hom(GroupPtr target, int genus, std::vector<int> x, std::vector<int> y) {
    if (genus < 1) throw ValidationError("surface genus must be at least 1");
    if ((int)x.size() != genus || (int)y.size() != genus)
        throw ValidationError("generator image arrays must have length equal to the genus");
    const FiniteGroup& G = *target;
    for (int v : x)
        if (v < 0 || v >= G.order) throw ValidationError("x image index out of range");
    for (int v : y)
        if (v < 0 || v >= G.order) throw ValidationError("y image index out of range");
    int r = relator_value(G, x, y);
    if (r != G.identity)
        throw ValidationError("surface relator violated: product of commutators is " +
                              G.label(r) + ", not the identity");
    return SurfaceHom{std::move(target), genus, std::move(x), std::move(y)};
}

SurfaceHom restrict_hom(const SubgroupView& sub, const SurfaceHom& g) {
    if (!same_group(*g.target, *sub.parent))
        throw ValidationError("surface hom target is not the subgroup's parent group");
    std::vector<int> lx(g.genus), ly(g.genus);
    for (int i = 0; i < g.genus; ++i) {
        lx[i] = sub.to_local[g.x[i]];
        ly[i] = sub.to_local[g.y[i]];
        if (lx[i] < 0 || ly[i] < 0)
            throw ValidationError("surface hom image element " +
                                  g.target->label(lx[i] < 0 ? g.x[i] : g.y[i]) +
                                  " lies outside the subgroup");
    }
    return make_surface_hom(sub.local, g.genus, std::move(lx), std::move(ly));
}

SurfaceHom orientation_reverse(const SurfaceHom& g) {
    std::vector<int> rx(g.genus), ry(g.genus);
    for (int i = 0; i < g.genus; ++i) {
        rx[i] = g.y[g.genus - 1 - i];
        ry[i] = g.x[g.genus - 1 - i];
    }
    return make_surface_hom(g.target, g.genus, std::move(rx), std::move(ry));
}

ReducedLift reduce_to_image(const Extension& ext, const SurfaceHom& g) {
    if (!same_group(*g.target, *ext.q.codomain))
        throw ValidationError("surface hom target is not the extension base");
    ReducedLift red;
    red.image = make_subgroup_view(ext.q.codomain, g.image());
    std::vector<int> pre;
    for (int p : red.image.to_parent)
        pre.insert(pre.end(), ext.cosets[p].begin(), ext.cosets[p].end());
    red.preimage = make_subgroup_view(ext.q.domain, pre);

    std::vector<int> images(red.preimage.local->order);
    for (int a = 0; a < (int)images.size(); ++a)
        images[a] = red.image.to_local[ext.q.map(red.preimage.to_parent[a])];
    red.ext = make_extension(make_hom(red.preimage.local, red.image.local, std::move(images)));

    std::vector<int> gx(g.genus), gy(g.genus);
    for (int i = 0; i < g.genus; ++i) {
        gx[i] = red.image.to_local[g.x[i]];
        gy[i] = red.image.to_local[g.y[i]];
    }
    red.g = make_surface_hom(red.image.local, g.genus, std::move(gx), std::move(gy));
    return red;
}

} // namespace surflift
