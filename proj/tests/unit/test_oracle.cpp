#include "surflift/oracle.hpp"

#include "surflift/cohomology.hpp"
#include "surflift/error.hpp"

#include "common/fixtures.hpp"
#include "doctest.h"

#include <algorithm>
#include <complex>

using namespace surflift;
namespace fx = surflift::fixtures;

namespace {

template <typename Fn>
void expect_validation_error(Fn&& fn, const std::string& needle) {
    bool threw = false;
    try {
        fn();
    } catch (const ValidationError& e) {
        threw = true;
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
    CHECK(threw);
}

Extension onto_point(GroupPtr G) {
    return make_extension(make_hom(G, fx::trivial(), std::vector<int>(G->order, 0)));
}

/* Section count the slow way, through the public validity predicate. */
long long sections_direct(const ExtensionDatum& dat) {
    const int n = dat.phi->order;
    const int w = 2 * dat.genus;
    std::vector<int> s(w, 0);
    long long count = 0;
    while (true) {
        if (section_is_valid(dat, s)) ++count;
        int j = 0;
        for (; j < w; ++j) {
            if (++s[j] < n) break;
            s[j] = 0;
        }
        if (j == w) break;
    }
    return count;
}

} // namespace

TEST_CASE("lift enumeration on the pinned fixtures") {
    SUBCASE("split abelian extension: every pair of preimages commutes") {
        Extension ext = make_extension(fx::z6_to_z2());
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                SurfaceHom g = make_surface_hom(ext.q.codomain, 1, {a}, {b});
                CHECK(enumerate_lifts(ext, g).count == 9);
            }
    }
    SUBCASE("sign extension of the symmetric group") {
        Extension ext = make_extension(fx::s3_parity());
        CHECK(enumerate_lifts(ext, make_surface_hom(ext.q.codomain, 1, {1}, {0})).count == 3);
        CHECK(enumerate_lifts(ext, make_surface_hom(ext.q.codomain, 1, {1}, {1})).count == 3);
        CHECK(enumerate_lifts(ext, make_surface_hom(ext.q.codomain, 1, {0}, {0})).count == 9);
    }
    SUBCASE("quaternion extension: the obstructed class has no lifts") {
        Extension ext = make_extension(fx::q8_to_v4());
        CHECK(enumerate_lifts(ext, make_surface_hom(ext.q.codomain, 1, {1}, {2})).count == 0);
        CHECK(enumerate_lifts(ext, make_surface_hom(ext.q.codomain, 1, {0}, {0})).count == 4);
    }
    SUBCASE("collapsing to a point counts all surface homomorphisms") {
        Extension ext = onto_point(fx::s3());
        SurfaceHom g1 = make_surface_hom(ext.q.codomain, 1, {0}, {0});
        SurfaceHom g2 = make_surface_hom(ext.q.codomain, 2, {0, 0}, {0, 0});
        CHECK(enumerate_lifts(ext, g1).count == 18);
        CHECK(enumerate_lifts(ext, g2).count == 486);
    }
}

TEST_CASE("serial, parallel, and pruned paths agree exactly") {
    auto all_paths_agree = [](const Extension& ext, const SurfaceHom& g, long long expect) {
        OracleOptions serial;
        OracleOptions pruned;
        pruned.prune_last = true;
        OracleOptions parallel;
        parallel.threads = 4;
        OracleOptions both;
        both.threads = 4;
        both.prune_last = true;
        long long base = enumerate_lifts(ext, g, serial).count;
        CHECK(base == enumerate_lifts(ext, g, pruned).count);
        CHECK(base == enumerate_lifts(ext, g, parallel).count);
        CHECK(base == enumerate_lifts(ext, g, both).count);
        if (expect >= 0) CHECK(base == expect);
    };

    Extension q8e = make_extension(fx::q8_to_v4());
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            all_paths_agree(q8e, make_surface_hom(q8e.q.codomain, 1, {a}, {b}), -1);

    Extension s4e = make_extension(fx::s4_to_s3());
    all_paths_agree(s4e, make_surface_hom(s4e.q.codomain, 2, {1, 2}, {1, 2}), -1);
    all_paths_agree(s4e, make_surface_hom(s4e.q.codomain, 2, {0, 4}, {0, 5}), -1);

    Extension heise = make_extension(fx::heis_to_z4xz4());
    all_paths_agree(heise, make_surface_hom(heise.q.codomain, 2, {4, 1}, {1, 6}), -1);

    Extension d4e = make_extension(fx::d4_to_v4());
    all_paths_agree(d4e, make_surface_hom(d4e.q.codomain, 2, {1, 2}, {1, 3}), -1);
}

TEST_CASE("collected tuples are the actual lifts, in a stable order") {
    Extension ext = make_extension(fx::s3_parity());
    SurfaceHom g = make_surface_hom(ext.q.codomain, 1, {1}, {0});
    OracleOptions collecting;
    collecting.collect = true;
    LiftEnumeration serial = enumerate_lifts(ext, g, collecting);
    REQUIRE(serial.count == 3);
    REQUIRE(serial.homs.size() == 3);
    const FiniteGroup& G = ext.big();
    for (const std::vector<int>& t : serial.homs) {
        CHECK(G.commutator(t[0], t[1]) == G.identity);
        CHECK(ext.q.map(t[0]) == 1);
        CHECK(ext.q.map(t[1]) == 0);
    }
    OracleOptions par = collecting;
    par.threads = 4;
    CHECK(enumerate_lifts(ext, g, par).homs == serial.homs);
    OracleOptions pruned = collecting;
    pruned.prune_last = true;
    CHECK(enumerate_lifts(ext, g, pruned).homs == serial.homs);
}

TEST_CASE("budget accounting") {
    Extension heise = make_extension(fx::heis_to_z4xz4());
    SurfaceHom g2 = make_surface_hom(heise.q.codomain, 2, {4, 1}, {1, 6});
    OracleOptions tight;
    tight.budget = 100; // needs 4^4 = 256
    CHECK_THROWS_AS(enumerate_lifts(heise, g2, tight), BudgetError);

    Extension z6e = make_extension(fx::z6_to_z2());
    SurfaceHom g = make_surface_hom(z6e.q.codomain, 1, {1}, {1});
    OracleOptions exact;
    exact.budget = 9;
    CHECK(enumerate_lifts(z6e, g, exact).count == 9);
    exact.budget = 8;
    CHECK_THROWS_AS(enumerate_lifts(z6e, g, exact), BudgetError);
}

TEST_CASE("section counts") {
    SUBCASE("split datum with trivial action counts commuting pairs") {
        GroupPtr s3 = fx::s3();
        Automorphism id = identity_automorphism(*s3);
        ExtensionDatum dat = split_datum(s3, 1, {id}, {id});
        CHECK(enumerate_sections(dat) == 18);
    }
    SUBCASE("the one-element fiber has exactly one section") {
        GroupPtr one = fx::trivial();
        Automorphism id = identity_automorphism(*one);
        CHECK(enumerate_sections(split_datum(one, 1, {id}, {id})) == 1);
    }
    SUBCASE("pullback data count the lifts") {
        Extension ext = make_extension(fx::q8_to_v4());
        SurfaceHom obstructed = make_surface_hom(ext.q.codomain, 1, {1}, {2});
        SurfaceHom trivial_g = make_surface_hom(ext.q.codomain, 1, {0}, {0});
        CHECK(enumerate_sections(pullback_datum(ext, obstructed)) == 0);
        CHECK(enumerate_sections(pullback_datum(ext, trivial_g)) == 4);
    }
    SUBCASE("the fast relator agrees with the public validity predicate") {
        GroupPtr s3 = fx::s3();
        ExtensionDatum inner = make_datum(s3, 1, {conj_automorphism(*s3, 1)},
                                          {conj_automorphism(*s3, 2)}, 4);
        CHECK(enumerate_sections(inner) == sections_direct(inner));

        Extension d4e = make_extension(fx::d4_to_v4());
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                SurfaceHom g = make_surface_hom(d4e.q.codomain, 1, {a}, {b});
                ExtensionDatum dat = pullback_datum(d4e, g);
                CHECK(enumerate_sections(dat) == sections_direct(dat));
            }

        Extension heise = make_extension(fx::heis_to_z4xz4());
        SurfaceHom g = make_surface_hom(heise.q.codomain, 1, {4}, {1});
        ExtensionDatum dat = pullback_datum(heise, g);
        CHECK(enumerate_sections(dat) == sections_direct(dat));
    }
    SUBCASE("sections equal lifts for every choice of datum preimages") {
        Extension q8e = make_extension(fx::q8_to_v4());
        for (auto [a, b] : {std::pair{1, 2}, std::pair{0, 0}, std::pair{1, 1}}) {
            SurfaceHom g = make_surface_hom(q8e.q.codomain, 1, {a}, {b});
            long long lifts = enumerate_lifts(q8e, g).count;
            for (int la : q8e.cosets[a])
                for (int lb : q8e.cosets[b])
                    CHECK(enumerate_sections(pullback_datum(q8e, g, {la}, {lb})) == lifts);
        }
        Extension heise = make_extension(fx::heis_to_z4xz4());
        SurfaceHom g = make_surface_hom(heise.q.codomain, 1, {4}, {1});
        long long lifts = enumerate_lifts(heise, g).count;
        for (int la : heise.cosets[4])
            for (int lb : heise.cosets[1])
                CHECK(enumerate_sections(pullback_datum(heise, g, {la}, {lb})) == lifts);

        Extension s4e = make_extension(fx::s4_to_s3());
        SurfaceHom g2 = make_surface_hom(s4e.q.codomain, 2, {1, 2}, {1, 2});
        CHECK(enumerate_sections(pullback_datum(s4e, g2)) == enumerate_lifts(s4e, g2).count);
    }
    SUBCASE("parallel section enumeration agrees with serial") {
        Extension heise = make_extension(fx::heis_to_z4xz4());
        SurfaceHom g = make_surface_hom(heise.q.codomain, 2, {4, 1}, {1, 6});
        ExtensionDatum dat = pullback_datum(heise, g);
        OracleOptions par;
        par.threads = 4;
        CHECK(enumerate_sections(dat, par) == enumerate_sections(dat));
    }
}

TEST_CASE("orbit tables") {
    SUBCASE("abelian split case: all orbits are singletons with full stabilizer") {
        Extension ext = make_extension(fx::z6_to_z2());
        SurfaceHom g = make_surface_hom(ext.q.codomain, 1, {1}, {0});
        OracleOptions collecting;
        collecting.collect = true;
        LiftEnumeration lifts = enumerate_lifts(ext, g, collecting);
        OrbitTable table = orbit_table(lifts.homs, ext);
        CHECK(table.total == 9);
        CHECK(table.representatives.size() == 9);
        for (size_t i = 0; i < table.orbit_sizes.size(); ++i) {
            CHECK(table.orbit_sizes[i] == 1);
            CHECK(table.stabilizer_orders[i] == 3);
        }
    }
    SUBCASE("sign extension: one orbit of size three") {
        Extension ext = make_extension(fx::s3_parity());
        SurfaceHom g = make_surface_hom(ext.q.codomain, 1, {1}, {0});
        OracleOptions collecting;
        collecting.collect = true;
        LiftEnumeration lifts = enumerate_lifts(ext, g, collecting);
        OrbitTable table = orbit_table(lifts.homs, ext);
        REQUIRE(table.representatives.size() == 1);
        CHECK(table.orbit_sizes[0] == 3);
        CHECK(table.stabilizer_orders[0] == 1);
        long long mass = 0;
        for (size_t i = 0; i < table.orbit_sizes.size(); ++i)
            mass += ext.kernel_order() / table.stabilizer_orders[i];
        CHECK(mass == lifts.count);
    }
    SUBCASE("an empty list yields an empty table") {
        Extension ext = make_extension(fx::q8_to_v4());
        OrbitTable table = orbit_table({}, ext);
        CHECK(table.total == 0);
        CHECK(table.representatives.empty());
    }
    SUBCASE("incomplete or duplicated lists are rejected") {
        Extension ext = make_extension(fx::s3_parity());
        SurfaceHom g = make_surface_hom(ext.q.codomain, 1, {1}, {0});
        OracleOptions collecting;
        collecting.collect = true;
        LiftEnumeration lifts = enumerate_lifts(ext, g, collecting);
        expect_validation_error(
            [&] { orbit_table({lifts.homs[0]}, ext); }, "not closed");
        expect_validation_error(
            [&] { orbit_table({lifts.homs[0], lifts.homs[0]}, ext); }, "duplicates");
    }
}

TEST_CASE("twisted cocycle enumeration") {
    SUBCASE("trivial action: cocycles are plain homomorphisms, classes are orbits") {
        GroupPtr s3 = fx::s3();
        Automorphism id = identity_automorphism(*s3);
        CocycleEnumeration ce = enumerate_cocycles(s3, 1, {id}, {id});
        CHECK(ce.z1 == 18);
        CHECK(ce.measure == BigRational(3));
        long long covered = 0;
        for (size_t i = 0; i < ce.classes.orbit_sizes.size(); ++i) {
            CHECK(ce.classes.orbit_sizes[i] * ce.classes.stabilizer_orders[i] == 6);
            covered += ce.classes.orbit_sizes[i];
        }
        CHECK(covered == 18);
    }
    SUBCASE("inversion action on the cyclic fiber of order three") {
        GroupPtr z3 = fx::cyclic(3);
        Automorphism inv{0, 2, 1};
        Automorphism id = identity_automorphism(*z3);
        CocycleEnumeration ce = enumerate_cocycles(z3, 1, {inv}, {id});
        CHECK(ce.z1 == 3);
        CHECK(ce.measure == BigRational(1));
    }
    SUBCASE("trivial action matches collapsing the extension to a point") {
        GroupPtr q8 = fx::q8();
        Automorphism id = identity_automorphism(*q8);
        CocycleEnumeration ce = enumerate_cocycles(q8, 1, {id}, {id});
        Extension ext = onto_point(q8);
        SurfaceHom g = make_surface_hom(ext.q.codomain, 1, {0}, {0});
        CHECK(ce.z1 == enumerate_lifts(ext, g).count);
    }
    SUBCASE("generator images that are not a surface action are rejected") {
        GroupPtr s3 = fx::s3();
        CHECK_THROWS_AS(enumerate_cocycles(s3, 1, {conj_automorphism(*s3, 1)},
                                           {conj_automorphism(*s3, 2)}),
                        ValidationError);
    }
}

TEST_CASE("pairing-weighted lift sums") {
    SUBCASE("a trivial cocycle reduces to the plain count") {
        Extension ext = make_extension(fx::q8_to_v4());
        TwoCocycle one = trivial_cocycle(ext.q.domain);
        SurfaceHom obstructed = make_surface_hom(ext.q.codomain, 1, {1}, {2});
        SurfaceHom trivial_g = make_surface_hom(ext.q.codomain, 1, {0}, {0});
        CHECK(std::abs(t2_lhs_oracle(ext, obstructed, one)) < 1e-12);
        CHECK(std::abs(t2_lhs_oracle(ext, trivial_g, one) - cplx(4.0)) < 1e-12);
    }
    SUBCASE("symplectic weights over the rank-two elementary fiber sum to four") {
        GroupPtr v4 = fx::klein4();
        Extension ext = onto_point(v4);
        SurfaceHom g = make_surface_hom(ext.q.codomain, 1, {0}, {0});
        CHECK(std::abs(t2_lhs_oracle(ext, g, fx::v4_symplectic_cocycle()) - cplx(4.0)) < 1e-12);
    }
    SUBCASE("serial and parallel sums agree, and match a collected manual sum") {
        Extension ext = make_extension(fx::d4_to_v4());
        TwoCocycle theta = fx::d4_i_cocycle();
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                SurfaceHom g = make_surface_hom(ext.q.codomain, 1, {a}, {b});
                cplx serial = t2_lhs_oracle(ext, g, theta);
                OracleOptions par;
                par.threads = 4;
                CHECK(std::abs(t2_lhs_oracle(ext, g, theta, par) - serial) < 1e-12);
                OracleOptions collecting;
                collecting.collect = true;
                cplx manual(0.0);
                for (const std::vector<int>& t : enumerate_lifts(ext, g, collecting).homs)
                    manual += theta_pairing(theta, make_surface_hom(ext.q.domain, 1, {t[0]},
                                                                    {t[1]}));
                CHECK(std::abs(serial - manual) < 1e-12);
            }
    }
}

TEST_CASE("counts are invariant under relabeling by an automorphism") {
    GroupPtr q8 = fx::q8();
    GroupHom q = fx::q8_to_v4();
    Extension ext = make_extension(q);
    Automorphism p = conj_automorphism(*q8, 2);
    Automorphism pinv = auto_inverse(p);
    std::vector<int> relabeled(q8->order);
    for (int a = 0; a < q8->order; ++a) relabeled[a] = q.map(pinv[a]);
    Extension ext2 = make_extension(make_hom(q8, q.codomain, relabeled));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            SurfaceHom g = make_surface_hom(q.codomain, 1, {a}, {b});
            CHECK(enumerate_lifts(ext, g).count == enumerate_lifts(ext2, g).count);
        }
}
