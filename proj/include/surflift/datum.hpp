#pragma once

#include "surflift/group.hpp"

#include <vector>

namespace surflift {

/* An automorphism of a finite group, stored as the permutation it induces on
   element indices. */
using Automorphism = std::vector<int>;

Automorphism identity_automorphism(const FiniteGroup& G);
Automorphism auto_compose(const Automorphism& f, const Automorphism& g); // f after g
Automorphism auto_inverse(const Automorphism& f);
bool is_automorphism(const FiniteGroup& G, const Automorphism& f);
/* x |-> a x a^-1 as a permutation of G. */
Automorphism conj_automorphism(const FiniteGroup& G, int a);

/* Descent data for lifting a surface homomorphism: a fiber group Phi, one
   automorphism of Phi per surface generator, and a defect element phi0 whose
   conjugation action equals the product of automorphism commutators. */
struct ExtensionDatum {
    GroupPtr phi;
    int genus = 0;
    std::vector<Automorphism> psi_x;
    std::vector<Automorphism> psi_y;
    int phi0 = 0;
};

/* Validates the automorphisms and the compatibility condition
   prod_i [psi_x_i, psi_y_i] = conjugation by phi0. */
ExtensionDatum make_datum(GroupPtr phi, int genus, std::vector<Automorphism> psi_x,
                          std::vector<Automorphism> psi_y, int phi0);

/* Datum with trivial defect (phi0 = identity); the automorphism commutators
   must compose to the identity. */
ExtensionDatum split_datum(GroupPtr phi, int genus, std::vector<Automorphism> psi_x,
                           std::vector<Automorphism> psi_y);

/* The datum induced by an extension and a base surface homomorphism: the fiber
   is the kernel, psi is conjugation by chosen preimages of the generator
   images, and phi0 is the product of preimage commutators. Empty lift arrays
   select the canonical preimages. */
ExtensionDatum pullback_datum(const Extension& ext, const SurfaceHom& g,
                              std::vector<int> lifts_x = {}, std::vector<int> lifts_y = {});

/* A section assigns one fiber element to each surface generator, stored flat
   as [u_1..u_d, v_1..v_d]. */
using Section = std::vector<int>;

/* First coordinate of the generator-commutator product in the group of pairs
   (phi, psi) with (phi,psi)(phi',psi') = (phi * psi(phi'), psi o psi'). */
int section_relator_first(const ExtensionDatum& dat, const Section& s);

/* A section is valid when the relator's first coordinate equals phi0^-1. */
bool section_is_valid(const ExtensionDatum& dat, const Section& s);

/* The fiber group acts on valid sections: u_i |-> phi * u_i * psi_x_i(phi)^-1
   and likewise for v_i. Orbits of this action are cohomology classes. */
Section section_shift(const ExtensionDatum& dat, const Section& s, int phi);

} // namespace surflift
