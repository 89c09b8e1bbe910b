#include "fixtures.hpp"

#include "surflift/error.hpp"

#include <map>
#include <numeric>

namespace surflift::fixtures {

namespace {

using Table = std::vector<std::vector<int>>;

std::vector<int> perm_compose(const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> r(g.size());
    for (size_t i = 0; i < g.size(); ++i) r[i] = f[g[i]];
    return r;
}

/* Builds table + labels from an explicit, pinned-order list of permutations. */
GroupPtr perm_list_group(const std::vector<std::vector<int>>& perms,
                         std::vector<std::string> labels) {
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = (int)i;
    Table rows(perms.size(), std::vector<int>(perms.size()));
    for (size_t a = 0; a < perms.size(); ++a)
        for (size_t b = 0; b < perms.size(); ++b)
            rows[a][b] = index.at(perm_compose(perms[a], perms[b]));
    return group_from_table(rows, std::move(labels));
}

const std::vector<std::vector<int>>& s3_perms() {
    static const std::vector<std::vector<int>> p{
        {0, 1, 2},  // e
        {1, 0, 2},  // (01)
        {2, 1, 0},  // (02)
        {0, 2, 1},  // (12)
        {1, 2, 0},  // (012): 0->1->2->0
        {2, 0, 1},  // (021)
    };
    return p;
}

/* BFS closure; the fixture owns this element order. */
std::vector<std::vector<int>> s4_perms() {
    std::vector<int> id(4);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> gens{{1, 0, 2, 3}, {1, 2, 3, 0}}; // (01), (0123)
    std::vector<std::vector<int>> elems{id};
    std::map<std::vector<int>, int> index{{id, 0}};
    for (size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : gens) {
            auto p = perm_compose(elems[i], g);
            if (index.emplace(p, (int)elems.size()).second) elems.push_back(p);
        }
    return elems;
}

} // namespace

GroupPtr trivial() {
    static GroupPtr g = group_from_table({{0}}, {"e"});
    return g;
}

GroupPtr cyclic(int n) {
    static std::map<int, GroupPtr> cache;
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    Table rows(n, std::vector<int>(n));
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) {
        labels[i] = std::to_string(i);
        for (int j = 0; j < n; ++j) rows[i][j] = (i + j) % n;
    }
    return cache[n] = group_from_table(rows, std::move(labels));
}

GroupPtr klein4() {
    static GroupPtr g = [] {
        Table rows(4, std::vector<int>(4));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) rows[i][j] = i ^ j;
        return group_from_table(rows, {"e", "a", "b", "ab"});
    }();
    return g;
}

GroupPtr z6_split() {
    static GroupPtr g = [] {
        Table rows(6, std::vector<int>(6));
        std::vector<std::string> labels(6);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 2; ++j) {
                labels[2 * i + j] = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 2; ++l)
                        rows[2 * i + j][2 * k + l] = 2 * ((i + k) % 3) + ((j + l) % 2);
            }
        return group_from_table(rows, std::move(labels));
    }();
    return g;
}

GroupPtr s3() {
    static GroupPtr g =
        perm_list_group(s3_perms(), {"e", "(01)", "(02)", "(12)", "(012)", "(021)"});
    return g;
}

GroupPtr q8() {
    /* index = 2*axis + (negative ? 1 : 0), axes 0=unit,1=i,2=j,3=k */
    static GroupPtr g = [] {
        static const int ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static const int sg[4][4] = {{+1, +1, +1, +1},
                                     {+1, -1, +1, -1},
                                     {+1, -1, -1, +1},
                                     {+1, +1, -1, -1}};
        Table rows(8, std::vector<int>(8));
        for (int a = 0; a < 8; ++a)
            for (int b = 0; b < 8; ++b) {
                int axa = a / 2, axb = b / 2;
                int s = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * sg[axa][axb];
                rows[a][b] = 2 * ax[axa][axb] + (s < 0 ? 1 : 0);
            }
        return group_from_table(rows, {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
    }();
    return g;
}

GroupPtr d4() {
    static GroupPtr g = [] {
        Table rows(8, std::vector<int>(8));
        std::vector<std::string> labels(8);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 2; ++b) {
                labels[a + 4 * b] = (b ? "r" + std::to_string(a) + "s" : "r" + std::to_string(a));
                for (int c = 0; c < 4; ++c)
                    for (int d = 0; d < 2; ++d) {
                        int e = (a + (b ? 4 - c : c)) % 4; // s r^c = r^-c s
                        rows[a + 4 * b][c + 4 * d] = e + 4 * (b ^ d);
                    }
            }
        return group_from_table(rows, std::move(labels));
    }();
    return g;
}

GroupPtr s4() {
    static GroupPtr g = [] {
        auto perms = s4_perms();
        std::vector<std::string> labels;
        for (const auto& p : perms) {
            std::string s = "[";
            for (int i = 0; i < 4; ++i) s += std::to_string(p[i]);
            labels.push_back(s + "]");
        }
        return perm_list_group(perms, std::move(labels));
    }();
    return g;
}

GroupPtr z4xz4() {
    static GroupPtr g = [] {
        Table rows(16, std::vector<int>(16));
        std::vector<std::string> labels(16);
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) {
                labels[4 * p + q] = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
                for (int r = 0; r < 4; ++r)
                    for (int s = 0; s < 4; ++s)
                        rows[4 * p + q][4 * r + s] = 4 * ((p + r) % 4) + ((q + s) % 4);
            }
        return group_from_table(rows, std::move(labels));
    }();
    return g;
}

GroupPtr heisenberg4() {
    static GroupPtr g = [] {
        Table rows(64, std::vector<int>(64));
        std::vector<std::string> labels(64);
        auto idx = [](int a, int b, int c) { return 16 * a + 4 * b + c; };
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c) {
                    labels[idx(a, b, c)] = "(" + std::to_string(a) + "," + std::to_string(b) +
                                           "," + std::to_string(c) + ")";
                    for (int a2 = 0; a2 < 4; ++a2)
                        for (int b2 = 0; b2 < 4; ++b2)
                            for (int c2 = 0; c2 < 4; ++c2)
                                rows[idx(a, b, c)][idx(a2, b2, c2)] =
                                    idx((a + a2) % 4, (b + b2) % 4, (c + c2 + a * b2) % 4);
                }
        return group_from_table(rows, std::move(labels));
    }();
    return g;
}

GroupHom s3_parity() {
    return make_hom(s3(), cyclic(2), {0, 1, 1, 1, 0, 0});
}

GroupHom q8_to_v4() {
    return make_hom(q8(), klein4(), {0, 0, 1, 1, 2, 2, 3, 3});
}

GroupHom d4_to_v4() {
    std::vector<int> images(8);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 2; ++b) images[a + 4 * b] = (a % 2) + 2 * b;
    return make_hom(d4(), klein4(), images);
}

GroupHom z6_to_z2() {
    return make_hom(z6_split(), cyclic(2), {0, 1, 0, 1, 0, 1});
}

GroupHom z4_to_z2() {
    return make_hom(cyclic(4), cyclic(2), {0, 1, 0, 1});
}

GroupHom s4_to_s3() {
    auto perms = s4_perms();
    /* The three 2+2 partitions of {0,1,2,3}, identified by the partner of
     * point 0: partition t pairs {0,t} with the complementary pair. */
    auto partner = [](const std::vector<int>& p, int t) {
        /* image of partition t under p: the new partner of point 0 */
        std::vector<int> inv(4);
        for (int i = 0; i < 4; ++i) inv[p[i]] = i;
        int pre0 = inv[0];
        int mate = -1; // partner of pre0 within partition t
        if (pre0 == 0)
            mate = t;
        else if (pre0 == t)
            mate = 0;
        else
            for (int m = 1; m < 4; ++m)
                if (m != t && m != pre0) mate = m;
        return p[mate];
    };
    std::map<std::vector<int>, int> s3index;
    for (size_t i = 0; i < s3_perms().size(); ++i) s3index[s3_perms()[i]] = (int)i;
    std::vector<int> images;
    for (const auto& p : perms) {
        std::vector<int> tau(3);
        for (int t = 1; t <= 3; ++t) tau[t - 1] = partner(p, t) - 1;
        images.push_back(s3index.at(tau));
    }
    return make_hom(s4(), s3(), images);
}

GroupHom heis_to_z4xz4() {
    std::vector<int> images(64);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) images[16 * a + 4 * b + c] = 4 * a + b;
    return make_hom(heisenberg4(), z4xz4(), images);
}

TwoCocycle v4_symplectic_cocycle() {
    std::vector<cplx> v(16);
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) v[4 * x + y] = (((x >> 1) & (y & 1)) ? -1.0 : 1.0);
    return make_cocycle(klein4(), std::move(v));
}

TwoCocycle d4_i_cocycle() {
    const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::vector<cplx> v(64);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 2; ++d) v[8 * (a + 4 * b) + (c + 4 * d)] = i_pow[(b * c) % 4];
    return make_cocycle(d4(), std::move(v));
}

} // namespace surflift::fixtures
