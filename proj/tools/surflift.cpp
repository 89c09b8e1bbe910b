#include "surflift/counting.hpp"
#include "surflift/error.hpp"
#include "surflift/oracle.hpp"
#include "surflift/problem.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace surflift;
using nlohmann::json;

struct Flags {
    std::string file;
    int genus = 0; // 0 = keep the problem's genus
    double tolerance = 0;
    bool no_oracle = false;
    long long budget = 100000000;
    int seed = 1;
    int threads = 0;
    std::string json_path;
};

/* ---- byte-stable number rendering -------------------------------------- */

std::string num(double v) {
    if (v == 0.0) v = 0.0; // collapse negative zero
    char b[64];
    std::snprintf(b, sizeof b, "%.12g", v);
    return b;
}

std::string cnum(const cplx& z) { return "(" + num(z.real()) + ", " + num(z.imag()) + ")"; }

std::string ints(const std::vector<int>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s + "]";
}

json cjson(const cplx& z) {
    const double re = z.real() == 0.0 ? 0.0 : z.real();
    const double im = z.imag() == 0.0 ? 0.0 : z.imag();
    return json::array({re, im});
}

/* ---- shared pieces ------------------------------------------------------ */

TolerancePolicy tolerance_of(const Flags& f) {
    TolerancePolicy tol;
    if (f.tolerance > 0) tol.count_eps = f.tolerance;
    return tol;
}

OracleOptions oracle_options(const Flags& f) {
    OracleOptions opt;
    opt.budget = f.budget;
    opt.threads = f.threads;
    return opt;
}

const Extension& need_extension(const Problem& p) {
    if (!p.extension) throw ValidationError("this task needs an 'extension' in the problem file");
    return *p.extension;
}

const SurfaceHom& need_surface_hom(const Problem& p) {
    if (!p.surface_hom)
        throw ValidationError("this task needs a 'surface_hom' in the problem file");
    return *p.surface_hom;
}

/* Genus override: realize the same class on a larger surface by appending
 * trivial handles (identity generator images / identity automorphisms). */
SurfaceHom with_genus(const SurfaceHom& g, int genus) {
    if (genus == 0 || genus == g.genus) return g;
    if (genus < g.genus)
        throw ValidationError("the --genus override cannot remove handles (the problem has genus " +
                              std::to_string(g.genus) + ")");
    std::vector<int> x = g.x, y = g.y;
    x.resize(genus, g.target->identity);
    y.resize(genus, g.target->identity);
    return make_surface_hom(g.target, genus, x, y);
}

ExtensionDatum with_genus(const ExtensionDatum& dat, int genus) {
    if (genus == 0 || genus == dat.genus) return dat;
    if (genus < dat.genus)
        throw ValidationError("the --genus override cannot remove handles (the problem has genus " +
                              std::to_string(dat.genus) + ")");
    std::vector<Automorphism> px = dat.psi_x, py = dat.psi_y;
    px.resize(genus, identity_automorphism(*dat.phi));
    py.resize(genus, identity_automorphism(*dat.phi));
    return make_datum(dat.phi, genus, std::move(px), std::move(py), dat.phi0);
}

H1ActionSpec with_genus(const H1ActionSpec& spec, int genus) {
    if (genus == 0 || genus == spec.genus) return spec;
    if (genus < spec.genus)
        throw ValidationError("the --genus override cannot remove handles (the problem has genus " +
                              std::to_string(spec.genus) + ")");
    H1ActionSpec out = spec;
    out.genus = genus;
    out.act_x.resize(genus, identity_automorphism(*spec.fiber));
    out.act_y.resize(genus, identity_automorphism(*spec.fiber));
    return out;
}

void print_class(const SurfaceHom& g) {
    std::printf("class: genus %d, x = %s, y = %s\n", g.genus, ints(g.x).c_str(),
                ints(g.y).c_str());
}

void print_table(const std::vector<RhoContribution>& table) {
    std::printf("per-representation table:\n");
    std::printf("  idx dim stab in  pairing / term\n");
    for (const RhoContribution& row : table) {
        char stab[24];
        if (row.stabilizer_order > 0)
            std::snprintf(stab, sizeof stab, "%4lld", row.stabilizer_order);
        else
            std::snprintf(stab, sizeof stab, "%4s", "-");
        std::printf("  %3d %3d %s %-3s %s / %s\n", row.index, row.dim, stab,
                    row.included ? "yes" : "no", cnum(row.pairing).c_str(),
                    cnum(row.term).c_str());
    }
}

json table_json(const std::vector<RhoContribution>& table) {
    json rows = json::array();
    for (const RhoContribution& row : table)
        rows.push_back(json{{"index", row.index},
                            {"dim", row.dim},
                            {"stabilizer_order", row.stabilizer_order},
                            {"included", row.included},
                            {"pairing", cjson(row.pairing)},
                            {"term", cjson(row.term)}});
    return rows;
}

void emit(const Flags& f, const json& report) {
    if (f.json_path.empty()) return;
    std::ofstream out(f.json_path);
    if (!out) throw ValidationError("cannot write JSON report to '" + f.json_path + "'");
    out << report.dump(2) << "\n";
}

/* ---- task runners (return the process exit code) ------------------------ */

int cmd_validate(const Problem& p, const Flags& f) {
    std::printf("problem is valid\n");
    std::printf("task: %s\n", p.task.c_str());
    json jgroups = json::object();
    for (const auto& [name, G] : p.groups) {
        std::printf("group %s: order %d%s\n", name.c_str(), G->order,
                    G->is_abelian() ? " (abelian)" : "");
        jgroups[name] = json{{"order", G->order}, {"abelian", G->is_abelian()}};
    }
    if (p.extension)
        std::printf("extension: total order %d, base order %d, kernel order %d\n",
                    p.extension->big().order, p.extension->base().order,
                    p.extension->kernel_order());
    if (p.surface_hom) print_class(*p.surface_hom);
    if (p.theta) std::printf("cocycle: on a group of order %d\n", p.theta->group->order);
    if (p.h1_action)
        std::printf("h1 action: fiber order %d, genus %d\n", p.h1_action->fiber->order,
                    p.h1_action->genus);
    if (p.datum)
        std::printf("datum: fiber order %d, genus %d, defect %d\n", p.datum->phi->order,
                    p.datum->genus, p.datum->phi0);
    json report{{"task", p.task}, {"valid", true}, {"groups", jgroups}};
    emit(f, report);
    return 0;
}

int cmd_count(const Problem& p, const Flags& f) {
    const TolerancePolicy tol = tolerance_of(f);
    const Extension& ext = need_extension(p);
    const SurfaceHom g = with_genus(need_surface_hom(p), f.genus);

    CountReport rep = count_lifts_formula(ext, g, tol);
    print_class(g);
    std::printf("closed form: %lld\n", rep.rounded);
    std::printf("residual: %s\n", num(rep.residual).c_str());
    std::printf("existence: %s\n", rep.rounded != 0 ? "yes" : "no (obstructed)");
    const bool quasi = quasi_epi_test(ext, g, tol);
    std::printf("quasi-epimorphism: %s\n", quasi ? "yes" : "no");
    print_table(rep.table);

    const bool divisible = divisibility_check(rep, ext, g.genus);
    std::printf("divisibility: %s\n", divisible ? "ok" : "VIOLATED");

    json report{{"task", "count"},    {"count", rep.rounded},
                {"formula", cjson(rep.formula)}, {"residual", rep.residual},
                {"quasi_epimorphism", quasi},    {"divisible", divisible},
                {"table", table_json(rep.table)}};

    if (ext.kernel.local->is_abelian()) {
        CountReport closed = abelian_count(ext, g, tol);
        std::printf("abelian closed form: %lld\n", closed.rounded);
        GenusBoundDecision dec = genus_bound_decision(ext, g, tol);
        std::printf("existence bound: %s (vacuous: %s, applicable: %s)\n",
                    dec.lower_bound.str().c_str(), dec.vacuous ? "yes" : "no",
                    dec.applicable ? "yes" : "no");
        report["abelian_count"] = closed.rounded;
        report["existence_bound"] = dec.lower_bound.str();
        report["existence_bound_vacuous"] = dec.vacuous;
        report["existence_bound_applicable"] = dec.applicable;
    }

    int code = divisible ? 0 : 3;
    if (!f.no_oracle) {
        const long long direct = enumerate_lifts(ext, g, oracle_options(f)).count;
        const bool agree = direct == rep.rounded;
        std::printf("oracle count: %lld\n", direct);
        std::printf("agreement: %s\n", agree ? "yes" : "NO");
        report["oracle_count"] = direct;
        report["agree"] = agree;
        if (!agree) code = 3;
    }
    emit(f, report);
    return code;
}

int cmd_irr(const Problem& p, const Flags& f) {
    const TolerancePolicy tol = tolerance_of(f);
    GroupPtr target = p.irr_target;
    if (!target && p.extension) target = p.extension->kernel.local;
    if (!target)
        throw ValidationError("the irr task needs 'irr_target' or an 'extension' whose kernel to decompose");

    const bool twisted = p.theta && same_group(*p.theta->group, *target);
    IrrSet irr = twisted ? irreducible_reps(target, *p.theta, f.seed, tol)
                         : irreducible_reps(target, f.seed, tol);

    std::printf("irreducible representations: %zu (twisted: %s)\n", irr.irreps.size(),
                twisted ? "yes" : "no");
    long long dimsq = 0;
    json jreps = json::array();
    for (size_t i = 0; i < irr.irreps.size(); ++i) {
        const ProjectiveRep& rho = irr.irreps[i];
        dimsq += static_cast<long long>(rho.dim()) * rho.dim();
        std::vector<cplx> chi = rho.character();
        std::string line;
        json jchi = json::array();
        for (const cplx& c : chi) {
            line += " " + cnum(c);
            jchi.push_back(cjson(c));
        }
        std::printf("rep %zu: dim %d, character%s\n", i, rho.dim(), line.c_str());
        jreps.push_back(json{{"dim", rho.dim()}, {"character", jchi}});
    }
    std::printf("sum of squared dimensions: %lld (group order %d)\n", dimsq, target->order);
    emit(f, json{{"task", "irr"},
                 {"twisted", twisted},
                 {"order", target->order},
                 {"reps", jreps}});
    return 0;
}

int cmd_vk(const Problem& p, const Flags& f) {
    const TolerancePolicy tol = tolerance_of(f);
    const Extension& ext = need_extension(p);
    const SurfaceHom g = with_genus(need_surface_hom(p), f.genus);
    VkVector v = vk(ext, g, tol);
    print_class(g);
    std::printf("per-dimension pairing sums:\n");
    std::printf("  k N_k v_k\n");
    json jrows = json::array();
    for (const auto& [k, value] : v.values) {
        std::printf("  %d %lld %lld\n", k, v.counts.at(k), value);
        jrows.push_back(json{{"k", k}, {"count", v.counts.at(k)}, {"value", value}});
    }
    json jevals = json::object();
    std::printf("evaluations:\n");
    for (int n = 0; n <= 3; ++n) {
        const std::string val = v_eval(v, n).str();
        std::printf("  n=%d: %s\n", n, val.c_str());
        jevals[std::to_string(n)] = val;
    }
    emit(f, json{{"task", "vk"}, {"rows", jrows}, {"evaluations", jevals}});
    return 0;
}

int cmd_sections(const Problem& p, const Flags& f) {
    const TolerancePolicy tol = tolerance_of(f);
    if (!p.datum) throw ValidationError("the sections task needs a 'datum' in the problem file");
    const ExtensionDatum dat = with_genus(*p.datum, f.genus);
    WeightedCount wc = sections_weighted_count(dat, tol);
    std::printf("fiber order %d, genus %d, defect %d\n", dat.phi->order, dat.genus, dat.phi0);
    std::printf("sections (closed form): %lld\n", wc.total);
    std::printf("weighted: %s\n", wc.weighted.str().c_str());
    std::printf("existence: %s\n", wc.exists ? "yes" : "no");
    print_table(wc.table);
    json report{{"task", "sections"},
                {"sections", wc.total},
                {"weighted", wc.weighted.str()},
                {"exists", wc.exists},
                {"table", table_json(wc.table)}};
    int code = 0;
    if (!f.no_oracle) {
        const long long direct = enumerate_sections(dat, oracle_options(f));
        const bool agree = direct == wc.total;
        std::printf("oracle sections: %lld\n", direct);
        std::printf("agreement: %s\n", agree ? "yes" : "NO");
        report["oracle_sections"] = direct;
        report["agree"] = agree;
        if (!agree) code = 3;
    }
    emit(f, report);
    return code;
}

int cmd_h1(const Problem& p, const Flags& f) {
    const TolerancePolicy tol = tolerance_of(f);
    if (!p.h1_action)
        throw ValidationError("the h1 task needs an 'h1_action' in the problem file");
    const H1ActionSpec spec = with_genus(*p.h1_action, f.genus);
    WeightedCount wc = h1_measure(spec.fiber, spec.genus, spec.act_x, spec.act_y, tol);
    std::printf("fiber order %d, genus %d\n", spec.fiber->order, spec.genus);
    std::printf("cocycles (closed form): %lld\n", wc.total);
    std::printf("measure: %s\n", wc.weighted.str().c_str());
    json report{{"task", "h1"},
                {"cocycles", wc.total},
                {"measure", wc.weighted.str()}};
    int code = 0;
    if (!f.no_oracle) {
        CocycleEnumeration direct = enumerate_cocycles(spec.fiber, spec.genus, spec.act_x,
                                                       spec.act_y, oracle_options(f));
        const bool agree = direct.z1 == wc.total && direct.measure == wc.weighted;
        const long long nclasses = static_cast<long long>(direct.classes.representatives.size());
        std::printf("oracle cocycles: %lld\n", direct.z1);
        std::printf("oracle classes: %lld\n", nclasses);
        std::printf("oracle measure: %s\n", direct.measure.str().c_str());
        std::printf("agreement: %s\n", agree ? "yes" : "NO");
        report["oracle_cocycles"] = direct.z1;
        report["oracle_classes"] = nclasses;
        report["oracle_measure"] = direct.measure.str();
        report["agree"] = agree;
        if (!agree) code = 3;
    }
    emit(f, report);
    return code;
}

int cmd_t2(const Problem& p, const Flags& f) {
    const TolerancePolicy tol = tolerance_of(f);
    const Extension& ext = need_extension(p);
    const SurfaceHom g = with_genus(need_surface_hom(p), f.genus);
    if (!p.theta) throw ValidationError("the t2 task needs a 'cocycle' in the problem file");
    CountReport rep = t2_formula(ext, g, *p.theta, tol);
    print_class(g);
    std::printf("twisted sum (closed form): %s\n", cnum(rep.formula).c_str());
    std::printf("distance to nearest integer: %s\n", num(rep.residual).c_str());
    print_table(rep.table);
    json report{{"task", "t2"},
                {"formula", cjson(rep.formula)},
                {"residual", rep.residual},
                {"table", table_json(rep.table)}};
    int code = 0;
    if (!f.no_oracle) {
        const cplx lhs = t2_lhs_oracle(ext, g, *p.theta, oracle_options(f));
        const bool agree = std::abs(lhs - rep.formula) <= tol.count_eps;
        std::printf("enumerated twisted sum: %s\n", cnum(lhs).c_str());
        std::printf("agreement: %s\n", agree ? "yes" : "NO");
        report["oracle_formula"] = cjson(lhs);
        report["agree"] = agree;
        if (!agree) code = 3;
    }
    emit(f, report);
    return code;
}

int cmd_bundles(const Problem& p, const Flags& f) {
    const TolerancePolicy tol = tolerance_of(f);
    const Extension& ext = need_extension(p);
    const SurfaceHom g = with_genus(need_surface_hom(p), f.genus);
    WeightedCount wc = bundle_weighted_count(ext, g, tol);
    print_class(g);
    std::printf("isomorphism classes weighted by 1/|Aut|: %s\n", wc.weighted.str().c_str());
    std::printf("total lift count: %lld\n", wc.total);
    std::printf("existence: %s\n", wc.exists ? "yes" : "no");
    print_table(wc.table);
    json report{{"task", "bundles"},
                {"weighted", wc.weighted.str()},
                {"total", wc.total},
                {"exists", wc.exists},
                {"table", table_json(wc.table)}};
    int code = 0;
    if (!f.no_oracle) {
        OracleOptions opt = oracle_options(f);
        opt.collect = true;
        OrbitTable orbits = orbit_table(enumerate_lifts(ext, g, opt).homs, ext);
        BigRational mass;
        for (long long stab : orbits.stabilizer_orders) mass = mass + BigRational(1, stab);
        const bool agree = mass == wc.weighted;
        std::printf("oracle orbits: %zu\n", orbits.representatives.size());
        std::printf("oracle mass: %s\n", mass.str().c_str());
        std::printf("agreement: %s\n", agree ? "yes" : "NO");
        report["oracle_orbits"] = orbits.representatives.size();
        report["oracle_mass"] = mass.str();
        report["agree"] = agree;
        if (!agree) code = 3;
    }
    emit(f, report);
    return code;
}

int cmd_genusbound(const Problem& p, const Flags& f) {
    const TolerancePolicy tol = tolerance_of(f);
    const Extension& ext = need_extension(p);
    const SurfaceHom g = with_genus(need_surface_hom(p), f.genus);
    print_class(g);
    json report{{"task", "genusbound"}};
    try {
        const int bound = genus_norm_lower_bound(ext, g, tol);
        std::printf("genus-norm lower bound: %d\n", bound);
        report["norm_lower_bound"] = bound;
    } catch (const ValidationError& e) {
        std::printf("genus-norm lower bound inapplicable: %s\n", e.what());
        report["norm_lower_bound_inapplicable"] = std::string(e.what());
    }
    if (ext.kernel.local->is_abelian()) {
        GenusBoundDecision dec = genus_bound_decision(ext, g, tol);
        std::printf("existence bound: %s (vacuous: %s, applicable: %s), count %lld\n",
                    dec.lower_bound.str().c_str(), dec.vacuous ? "yes" : "no",
                    dec.applicable ? "yes" : "no", dec.count);
        report["existence_bound"] = dec.lower_bound.str();
        report["existence_bound_vacuous"] = dec.vacuous;
        report["existence_bound_applicable"] = dec.applicable;
        report["count"] = dec.count;
    } else {
        std::printf("existence bound inapplicable: the kernel is not abelian\n");
        report["existence_bound_inapplicable"] = "the kernel is not abelian";
    }
    emit(f, report);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verify lift-counting formulas for surface homomorphisms against enumeration"};
    app.require_subcommand(1);

    Flags flags;
    const std::vector<std::pair<std::string, std::string>> names = {
        {"validate", "load a problem file and check every invariant"},
        {"count", "closed-form lift count vs. enumeration"},
        {"irr", "decompose a group into irreducible representations"},
        {"vk", "per-dimension pairing sums and their evaluations"},
        {"sections", "weighted section count of an extension datum"},
        {"h1", "weighted measure of twisted cocycle classes"},
        {"t2", "cocycle-twisted count vs. enumerated twisted sum"},
        {"bundles", "lift classes weighted by automorphisms"},
        {"genusbound", "lower bounds from the pairing-sum evaluations"},
    };
    for (const auto& [name, help] : names) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("file", flags.file, "problem JSON file")->required();
        sub->add_option("--genus", flags.genus,
                        "realize the same class on this larger genus (append trivial handles)");
        sub->add_option("--tolerance", flags.tolerance, "override the integrality tolerance");
        sub->add_flag("--no-oracle", flags.no_oracle, "skip the enumeration cross-check");
        sub->add_option("--budget", flags.budget, "enumeration budget (relator evaluations)");
        sub->add_option("--seed", flags.seed, "seed for the representation splitting");
        sub->add_option("--threads", flags.threads, "oracle threads (0 = serial)");
        sub->add_option("--json", flags.json_path, "also write the report as JSON here");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const Problem problem = load_problem(flags.file, tolerance_of(flags));
        if (command == "validate") return cmd_validate(problem, flags);
        if (problem.task != command)
            throw ValidationError("the problem file's task is '" + problem.task +
                                  "' but the command is '" + command + "'");
        if (command == "count") return cmd_count(problem, flags);
        if (command == "irr") return cmd_irr(problem, flags);
        if (command == "vk") return cmd_vk(problem, flags);
        if (command == "sections") return cmd_sections(problem, flags);
        if (command == "h1") return cmd_h1(problem, flags);
        if (command == "t2") return cmd_t2(problem, flags);
        if (command == "bundles") return cmd_bundles(problem, flags);
        if (command == "genusbound") return cmd_genusbound(problem, flags);
        throw ValidationError("unknown command '" + command + "'");
    } catch (const BudgetError& e) {
        std::fprintf(stderr, "budget exceeded: %s\n", e.what());
        return 4;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
