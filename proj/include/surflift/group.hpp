#pragma once

#include <memory>
#include <string>
#include <vector>

namespace surflift {

struct FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/* A finite group as a full Cayley table over indices 0..order-1. */
struct FiniteGroup {
    int order = 0;
    std::vector<int> table;        // row-major: table[a*order+b] = a*b
    int identity = 0;
    std::vector<int> inverses;
    std::vector<std::string> labels; // size order, or empty

    int mul(int a, int b) const { return table[a * order + b]; }
    int inv(int a) const { return inverses[a]; }
    int conj(int a, int h) const { return mul(mul(a, h), inv(a)); } // a h a^-1
    int commutator(int a, int b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
    bool is_abelian() const;
    std::string label(int i) const;
};

struct GroupLimits {
    int max_order = 64;
};

/* Validates associativity, two-sided identity, inverses; caps order. */
GroupPtr group_from_table(const std::vector<std::vector<int>>& rows,
                          std::vector<std::string> labels = {},
                          GroupLimits limits = {});

/* Closure of permutation generators on {0..degree-1}; generators given either
 * as cycle lists or as image arrays.  Element order: BFS from identity. */
GroupPtr group_from_permutations(int degree,
                                 const std::vector<std::vector<std::vector<int>>>& generator_cycles,
                                 GroupLimits limits = {});
GroupPtr group_from_perm_images(int degree,
                                const std::vector<std::vector<int>>& generators,
                                GroupLimits limits = {});

/* Same underlying group: identical object or identical Cayley table, so
 * element indices are interchangeable. */
bool same_group(const FiniteGroup& a, const FiniteGroup& b);

/* Sorted element list of the subgroup generated by gens. */
std::vector<int> subgroup_closure(const FiniteGroup& G, std::vector<int> gens);
std::vector<int> center(const FiniteGroup& G);
/* Small (greedy) generating set; empty for the trivial group. */
std::vector<int> small_generating_set(const FiniteGroup& G);

/* A subgroup re-indexed as a group of its own, with index maps both ways. */
struct SubgroupView {
    GroupPtr parent;
    GroupPtr local;
    std::vector<int> to_parent;  // local index -> parent index (sorted ascending)
    std::vector<int> to_local;   // parent index -> local index, -1 outside
    bool contains(int parent_index) const { return to_local[parent_index] >= 0; }
};
SubgroupView make_subgroup_view(GroupPtr parent, const std::vector<int>& elements);

struct GroupHom {
    GroupPtr domain;
    GroupPtr codomain;
    std::vector<int> images;
    int map(int a) const { return images[a]; }
};
/* Validates the homomorphism property on all pairs. */
GroupHom make_hom(GroupPtr domain, GroupPtr codomain, std::vector<int> images);

/* A surjection q : G' -> G together with its kernel. */
struct Extension {
    GroupHom q;
    SubgroupView kernel;                  // subgroup of domain
    std::vector<std::vector<int>> cosets; // per codomain element, sorted preimages

    const FiniteGroup& big() const { return *q.domain; }
    const FiniteGroup& base() const { return *q.codomain; }
    int kernel_order() const { return kernel.local->order; }
    /* Canonical lift: identity -> identity, else least preimage. */
    int lift(int alpha) const;
};
Extension make_extension(GroupHom q);

/* Subgroup of the kernel (local indices) generated by commutators
 * [kernel, whole domain]. */
std::vector<int> mixed_commutator(const Extension& ext);

/* Genus-d surface group homomorphism: images of the standard generators,
 * product of commutators must be the identity. */
struct SurfaceHom {
    GroupPtr target;
    int genus = 0;
    std::vector<int> x, y;  // each of length genus

    std::vector<int> image() const; // sorted subgroup
};
SurfaceHom make_surface_hom(GroupPtr target, int genus, std::vector<int> x, std::vector<int> y);

int relator_value(const FiniteGroup& G, const std::vector<int>& x, const std::vector<int>& y);

/* The same homomorphism viewed into a subgroup containing its image, in the
 * subgroup's local indexing. */
SurfaceHom restrict_hom(const SubgroupView& sub, const SurfaceHom& g);

/* Realization of the negated fundamental class: handles reversed and each
 * (x_i, y_i) swapped.  Always satisfies the relator when the input does. */
SurfaceHom orientation_reverse(const SurfaceHom& g);

/* Restriction of (q, g) to the image of g: an extension over g's image with a
 * surjective surface hom into it.  Kernel is unchanged. */
struct ReducedLift {
    SubgroupView image;       // of codomain
    SubgroupView preimage;    // of domain
    Extension ext;            // between the two local groups
    SurfaceHom g;             // into image.local, surjective
};
ReducedLift reduce_to_image(const Extension& ext, const SurfaceHom& g);

} // namespace surflift
