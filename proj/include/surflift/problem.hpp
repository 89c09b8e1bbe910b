#pragma once

#include "surflift/cocycle.hpp"
#include "surflift/datum.hpp"
#include "surflift/group.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace surflift {

/* A surface action on a fiber group: one automorphism per handle generator. */
struct H1ActionSpec {
    GroupPtr fiber;
    int genus = 1;
    std::vector<Automorphism> act_x;
    std::vector<Automorphism> act_y;
};

/* A fully parsed and validated problem document.  Groups are declared by
 * name and referenced by name; every object is validated on load through the
 * same constructors the library uses, so a Problem in hand is safe to run. */
struct Problem {
    std::string task;
    std::map<std::string, GroupPtr> groups;
    std::optional<Extension> extension;
    std::optional<SurfaceHom> surface_hom;
    std::optional<TwoCocycle> theta;
    std::optional<H1ActionSpec> h1_action;
    std::optional<ExtensionDatum> datum;
    GroupPtr irr_target; // null unless the document names one
};

/* Parse a problem from JSON text.  Schema:
 *   groups:    {name: {"cayley": [[...]], "labels": [...]} |
 *                     {"permutations": [[[cycle]...]...], "degree": n}}
 *   task:      "count" | "irr" | "vk" | "sections" | "h1" | "t2" |
 *              "bundles" | "genusbound"
 *   extension: {"domain": name, "codomain": name, "images": [...]}
 *   surface_hom: {"target": name, "genus": d, "x": [...], "y": [...]}
 *   cocycle:   {"group": name, "values": [[v ...] ...]} with each v either
 *              [re, im] or {"root_of_unity": [k, n]} meaning e^{2*pi*i*k/n}
 *   h1_action: {"fiber": name, "genus": d, "act_x": [[...]...], "act_y": ...}
 *   datum:     {"phi": name, "genus": d, "psi_x": [[...]...], "psi_y": ...,
 *               "phi0": index}
 *   irr_target: name
 * Malformed documents raise ValidationError naming the offending field. */
Problem parse_problem(const std::string& text, const TolerancePolicy& tol = {});

/* parse_problem on the contents of a file. */
Problem load_problem(const std::string& path, const TolerancePolicy& tol = {});

} // namespace surflift
