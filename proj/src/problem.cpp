#include "surflift/problem.hpp"

#include "surflift/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace surflift {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ValidationError("problem field '" + where + "': " + what);
}

const json& need(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, "missing required key '" + key + "'");
    return *it;
}

int need_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<int>();
}

std::vector<int> int_array(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array of integers");
    std::vector<int> out;
    out.reserve(v.size());
    for (const json& e : v) out.push_back(need_int(e, where));
    return out;
}

std::vector<std::vector<int>> int_matrix(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array of integer arrays");
    std::vector<std::vector<int>> out;
    out.reserve(v.size());
    for (const json& row : v) out.push_back(int_array(row, where));
    return out;
}

GroupPtr parse_group(const json& spec, const std::string& where) {
    if (!spec.is_object()) fail(where, "expected a group object");
    if (spec.contains("cayley")) {
        std::vector<std::string> labels;
        if (spec.contains("labels")) {
            const json& ls = spec["labels"];
            if (!ls.is_array()) fail(where + ".labels", "expected an array of strings");
            for (const json& l : ls) {
                if (!l.is_string()) fail(where + ".labels", "expected an array of strings");
                labels.push_back(l.get<std::string>());
            }
        }
        return group_from_table(int_matrix(spec["cayley"], where + ".cayley"),
                                std::move(labels));
    }
    if (spec.contains("permutations")) {
        const int degree = need_int(need(spec, "degree", where), where + ".degree");
        const json& gens = spec["permutations"];
        if (!gens.is_array()) fail(where + ".permutations", "expected an array of generators");
        std::vector<std::vector<std::vector<int>>> cycles;
        for (const json& gen : gens)
            cycles.push_back(int_matrix(gen, where + ".permutations"));
        return group_from_permutations(degree, cycles);
    }
    fail(where, "a group needs either 'cayley' or 'permutations'");
}

GroupPtr find_group(const Problem& p, const json& name, const std::string& where) {
    if (!name.is_string()) fail(where, "expected a group name");
    const std::string key = name.get<std::string>();
    auto it = p.groups.find(key);
    if (it == p.groups.end()) fail(where, "unknown group '" + key + "'");
    return it->second;
}

cplx parse_value(const json& v, const std::string& where) {
    if (v.is_array()) {
        if (v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            fail(where, "a complex value is [re, im]");
        return cplx(v[0].get<double>(), v[1].get<double>());
    }
    if (v.is_object() && v.contains("root_of_unity")) {
        const json& r = v["root_of_unity"];
        if (!r.is_array() || r.size() != 2)
            fail(where, "root_of_unity is [k, n]");
        const int k = need_int(r[0], where);
        const int n = need_int(r[1], where);
        if (n == 0) fail(where, "root_of_unity order must be nonzero");
        const double ang = 2.0 * 3.14159265358979323846 * k / n;
        return cplx(std::cos(ang), std::sin(ang));
    }
    fail(where, "a value is [re, im] or {\"root_of_unity\": [k, n]}");
}

std::vector<Automorphism> automorphism_list(const json& v, const std::string& where) {
    std::vector<Automorphism> out;
    for (const std::vector<int>& images : int_matrix(v, where)) out.push_back(images);
    return out;
}

} // namespace

Problem parse_problem(const std::string& text, const TolerancePolicy& tol) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("problem document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("problem document must be a JSON object");

    Problem p;

    const json& groups = need(doc, "groups", "groups");
    if (!groups.is_object()) fail("groups", "expected an object of named groups");
    for (auto it = groups.begin(); it != groups.end(); ++it)
        p.groups.emplace(it.key(), parse_group(it.value(), "groups." + it.key()));

    const json& task = need(doc, "task", "task");
    if (!task.is_string()) fail("task", "expected a string");
    p.task = task.get<std::string>();
    static const char* known[] = {"count", "irr",    "vk", "sections",
                                  "h1",    "t2",     "bundles", "genusbound"};
    bool ok = false;
    for (const char* t : known) ok = ok || p.task == t;
    if (!ok) fail("task", "unknown task '" + p.task + "'");

    if (doc.contains("extension")) {
        const json& e = doc["extension"];
        GroupPtr dom = find_group(p, need(e, "domain", "extension.domain"), "extension.domain");
        GroupPtr cod =
            find_group(p, need(e, "codomain", "extension.codomain"), "extension.codomain");
        p.extension = make_extension(
            make_hom(dom, cod, int_array(need(e, "images", "extension.images"),
                                         "extension.images")));
    }

    if (doc.contains("surface_hom")) {
        const json& s = doc["surface_hom"];
        GroupPtr target =
            find_group(p, need(s, "target", "surface_hom.target"), "surface_hom.target");
        const int genus = need_int(need(s, "genus", "surface_hom.genus"), "surface_hom.genus");
        p.surface_hom = make_surface_hom(
            target, genus, int_array(need(s, "x", "surface_hom.x"), "surface_hom.x"),
            int_array(need(s, "y", "surface_hom.y"), "surface_hom.y"));
    }

    if (doc.contains("cocycle")) {
        const json& c = doc["cocycle"];
        GroupPtr G = find_group(p, need(c, "group", "cocycle.group"), "cocycle.group");
        const json& rows = need(c, "values", "cocycle.values");
        if (!rows.is_array() || static_cast<int>(rows.size()) != G->order)
            fail("cocycle.values", "expected a dense |G| x |G| table");
        std::vector<cplx> values;
        values.reserve(static_cast<size_t>(G->order) * G->order);
        for (const json& row : rows) {
            if (!row.is_array() || static_cast<int>(row.size()) != G->order)
                fail("cocycle.values", "expected a dense |G| x |G| table");
            for (const json& v : row) values.push_back(parse_value(v, "cocycle.values"));
        }
        p.theta = make_cocycle(G, std::move(values), tol);
    }

    if (doc.contains("h1_action")) {
        const json& h = doc["h1_action"];
        H1ActionSpec spec;
        spec.fiber = find_group(p, need(h, "fiber", "h1_action.fiber"), "h1_action.fiber");
        spec.genus = need_int(need(h, "genus", "h1_action.genus"), "h1_action.genus");
        spec.act_x = automorphism_list(need(h, "act_x", "h1_action.act_x"), "h1_action.act_x");
        spec.act_y = automorphism_list(need(h, "act_y", "h1_action.act_y"), "h1_action.act_y");
        for (const Automorphism& a : spec.act_x)
            if (!is_automorphism(*spec.fiber, a))
                fail("h1_action.act_x", "an entry is not an automorphism of the fiber");
        for (const Automorphism& a : spec.act_y)
            if (!is_automorphism(*spec.fiber, a))
                fail("h1_action.act_y", "an entry is not an automorphism of the fiber");
        p.h1_action = std::move(spec);
    }

    if (doc.contains("datum")) {
        const json& d = doc["datum"];
        GroupPtr phi = find_group(p, need(d, "phi", "datum.phi"), "datum.phi");
        p.datum = make_datum(
            phi, need_int(need(d, "genus", "datum.genus"), "datum.genus"),
            automorphism_list(need(d, "psi_x", "datum.psi_x"), "datum.psi_x"),
            automorphism_list(need(d, "psi_y", "datum.psi_y"), "datum.psi_y"),
            need_int(need(d, "phi0", "datum.phi0"), "datum.phi0"));
    }

    if (doc.contains("irr_target"))
        p.irr_target = find_group(p, doc["irr_target"], "irr_target");

    return p;
}

Problem load_problem(const std::string& path, const TolerancePolicy& tol) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open problem file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str(), tol);
}

} // namespace surflift
