#pragma once

#include "surflift/cocycle.hpp"
#include "surflift/group.hpp"

namespace surflift::fixtures {

/* Small groups with pinned element orders, used as shared test material.
 * Indexing conventions are part of the contract: tests freeze values against
 * these exact indices. */

GroupPtr trivial();
GroupPtr cyclic(int n);   // i * j = (i + j) mod n
GroupPtr klein4();        // bitmask xor; 0=e, 1=a, 2=b, 3=ab
GroupPtr z6_split();      // pairs (i,j) in Z/3 x Z/2, index 2*i + j
GroupPtr s3();            // [e, (01), (02), (12), (012), (021)]
GroupPtr q8();            // [1, -1, i, -i, j, -j, k, -k]
GroupPtr d4();            // r^a s^b -> index a + 4*b
GroupPtr s4();            // permutations of 4 points, BFS from (01),(0123)
GroupPtr z4xz4();         // pairs, index 4*p + q
GroupPtr heisenberg4();   // upper unitriangular over Z/4: (a,b,c), index 16*a + 4*b + c

/* Quotient maps between them (all validated homomorphisms). */
GroupHom s3_parity();     // S3 -> Z/2, sign
GroupHom q8_to_v4();      // quotient by {+-1}
GroupHom d4_to_v4();      // quotient by {e, r^2}: (a%2, b)
GroupHom z6_to_z2();      // second coordinate (split)
GroupHom z4_to_z2();      // mod 2 (non-split)
GroupHom s4_to_s3();      // action on the three 2+2 partitions
GroupHom heis_to_z4xz4(); // drop the corner entry

/* Cohomologically nontrivial 2-cocycles. */
TwoCocycle v4_symplectic_cocycle(); // theta(x,y) = (-1)^(x_1 * y_0) on klein4
TwoCocycle d4_i_cocycle();          // theta(r^a s^b, r^c s^d) = i^(b*c)

} // namespace surflift::fixtures
