/* Wall-clock comparison of the serial reference enumerator against the
 * OpenMP kernel, on tuple spaces large enough for the difference to matter.
 *
 * Usage: bench_oracle [threads]   (default: 8)
 */
#include "surflift/group.hpp"
#include "surflift/oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

using namespace surflift;

namespace {

GroupPtr product_group(const FiniteGroup& A, const FiniteGroup& B) {
    const int n = A.order * B.order;
    std::vector<std::vector<int>> rows(n, std::vector<int>(n));
    for (int a1 = 0; a1 < A.order; ++a1)
        for (int b1 = 0; b1 < B.order; ++b1)
            for (int a2 = 0; a2 < A.order; ++a2)
                for (int b2 = 0; b2 < B.order; ++b2)
                    rows[a1 * B.order + b1][a2 * B.order + b2] =
                        A.mul(a1, a2) * B.order + B.mul(b1, b2);
    return group_from_table(rows);
}

GroupPtr cyclic_group(int m) {
    std::vector<std::vector<int>> rows(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) rows[i][j] = (i + j) % m;
    return group_from_table(rows);
}

GroupPtr dihedral8() {
    /* r^a s^b -> a + 4b */
    std::vector<std::vector<int>> rows(8, std::vector<int>(8));
    for (int a1 = 0; a1 < 4; ++a1)
        for (int b1 = 0; b1 < 2; ++b1)
            for (int a2 = 0; a2 < 4; ++a2)
                for (int b2 = 0; b2 < 2; ++b2) {
                    int a = b1 ? (a1 - a2 + 4) % 4 : (a1 + a2) % 4;
                    rows[a1 + 4 * b1][a2 + 4 * b2] = a + 4 * ((b1 + b2) % 2);
                }
    return group_from_table(rows);
}

double run(const Extension& ext, const SurfaceHom& g, const OracleOptions& opt,
           long long* count) {
    auto t0 = std::chrono::steady_clock::now();
    *count = enumerate_lifts(ext, g, opt).count;
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void bench_case(const char* name, GroupPtr G, int threads) {
    Extension ext = make_extension(
        make_hom(G, group_from_table({{0}}), std::vector<int>(G->order, 0)));
    SurfaceHom g = make_surface_hom(ext.q.codomain, 2, {0, 0}, {0, 0});

    OracleOptions serial;
    serial.budget = 1LL << 40;
    OracleOptions parallel = serial;
    parallel.threads = threads;
    OracleOptions pruned = serial;
    pruned.prune_last = true;

    long long c_serial = 0, c_parallel = 0, c_pruned = 0;
    double t_serial = run(ext, g, serial, &c_serial);
    double t_parallel = run(ext, g, parallel, &c_parallel);
    double t_pruned = run(ext, g, pruned, &c_pruned);

    if (c_serial != c_parallel || c_serial != c_pruned) {
        std::fprintf(stderr, "MISMATCH in %s: serial=%lld parallel=%lld pruned=%lld\n", name,
                     c_serial, c_parallel, c_pruned);
        std::exit(1);
    }
    std::printf("%-28s |G'|=%2d tuples=%10.3g count=%10lld serial=%8.3fs parallel(%d)=%8.3fs "
                "speedup=%5.2fx pruned=%8.3fs\n",
                name, G->order, std::pow((double)G->order, 4.0), c_serial, t_serial, threads,
                t_parallel, t_serial / t_parallel, t_pruned);
}

} // namespace

int main(int argc, char** argv) {
    int threads = argc > 1 ? std::atoi(argv[1]) : 8;

    GroupPtr z2 = cyclic_group(2);
    GroupPtr elem = z2;
    for (int i = 1; i < 6; ++i) elem = product_group(*elem, *z2); // (Z/2)^6, order 64

    GroupPtr mixed = product_group(*dihedral8(), *cyclic_group(8)); // order 64

    std::printf("genus-2 enumeration over the full group (base collapsed to a point)\n");
    bench_case("elementary (Z/2)^6", elem, threads);
    bench_case("dihedral8 x Z/8", mixed, threads);
    return 0;
}
