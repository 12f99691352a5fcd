#pragma once

#include "becell/solver.hpp"

namespace becell {

struct CylinderOptions {
    /// Chosen homotopy corrections, keyed by original generator name, written
    /// in cylinder coordinates (g', g'', sg). Entries are verified, not
    /// trusted. Generators without an entry go through the solver.
    std::map<std::string, AlgElement> manual_phi;
    int start_arity = 2;
    int escalation_limit = 6;
    size_t max_basis = 2'000'000;
};

struct CylinderResult {
    CellAlgebra IA;
    CellMorphism eta; // IA -> A, kills the s generators, folds the copies
    CellMorphism j1;  // A -> IA, primed copy
    CellMorphism j2;  // A -> IA, double-primed copy
    std::map<std::string, AlgElement> phi_table;
};

namespace detail {

struct CylinderNames {
    std::map<std::string, std::string> primed, doubled, s;
};

inline CylinderNames cylinder_names(const CellAlgebra& A) {
    CylinderNames names;
    std::set<std::string> taken;
    auto claim = [&](std::string base) {
        std::string candidate = base;
        int suffix = 2;
        while (taken.count(candidate))
            candidate = base + "_" + std::to_string(suffix++);
        taken.insert(candidate);
        return candidate;
    };
    for (const Generator& g : A.gens) {
        names.primed[g.name] = claim(g.name + "'");
        names.doubled[g.name] = claim(g.name + "''");
        names.s[g.name] = claim("s" + g.name);
    }
    return names;
}

inline bool contains_s_generator(const Monomial& m, const std::set<std::string>& s_names) {
    for (const Generator& g : m.args)
        if (s_names.count(g.name)) return true;
    return false;
}

} // namespace detail

/// The generators of the cylinder on A (primed copy, double-primed copy, and
/// the degree-lowered s copy), for parsing manual homotopy files before the
/// cylinder itself exists.
inline std::vector<Generator> cylinder_generator_universe(const CellAlgebra& A) {
    detail::CylinderNames names = detail::cylinder_names(A);
    std::vector<Generator> out;
    for (const Generator& g : A.gens) {
        out.push_back({names.primed[g.name], g.degree, -1});
        out.push_back({names.doubled[g.name], g.degree, -1});
        out.push_back({names.s[g.name], g.degree - 1, -1});
    }
    return out;
}

/// Cell model of the fold map A v A -> A: the algebra on generators
/// {g', g'', sg} with d(sg) = g' + g'' + phi_g, where each phi_g is a
/// correction supported on monomials containing an s generator, built from
/// copies of strictly earlier stages, with d(phi_g) = d(g' + g''). Manual
/// corrections are used when supplied (after exact verification); otherwise
/// the linear solver finds one inside an escalating arity window.
inline CylinderResult cylinder(const CellAlgebra& A, const CylinderOptions& options = {}) {
    ValidationReport input_report = validate(A);
    if (!input_report.ok())
        throw Error("cylinder: input algebra is invalid:\n" + input_report.summary());

    detail::CylinderNames names = detail::cylinder_names(A);
    std::set<std::string> s_names;
    for (const Generator& g : A.gens) s_names.insert(names.s[g.name]);

    // Stage-ordered processing; copies of stage k only ever depend on copies
    // of stages < k, so the partially built cylinder is a valid context for
    // each solve.
    std::vector<const Generator*> order;
    for (const Generator& g : A.gens) order.push_back(&g);
    std::stable_sort(order.begin(), order.end(),
                     [](const Generator* a, const Generator* b) { return a->stage < b->stage; });

    CellAlgebra partial; // copies of stages processed so far
    partial.name = "I" + A.name;
    std::map<std::string, AlgElement> to_primed, to_doubled;
    std::map<std::string, AlgElement> phi_table;

    size_t i = 0;
    while (i < order.size()) {
        const int stage = order[i]->stage;
        struct Pending {
            const Generator* g;
            AlgElement d_primed, d_doubled, phi;
        };
        std::vector<Pending> batch;
        for (; i < order.size() && order[i]->stage == stage; ++i) {
            const Generator& g = *order[i];
            const AlgElement& dg = A.d_of(g.name);
            Pending p{&g, substitute(dg, to_primed), substitute(dg, to_doubled), {}};
            AlgElement cycle = p.d_primed + p.d_doubled;

            auto manual = options.manual_phi.find(g.name);
            if (manual != options.manual_phi.end()) {
                const AlgElement& phi = manual->second;
                if (!phi.is_zero() && (!phi.is_homogeneous() || phi.degree() != g.degree))
                    throw Error("cylinder: manual correction for '" + g.name +
                                "' must be homogeneous of degree " + std::to_string(g.degree));
                for (const Monomial& m : phi.terms()) {
                    if (!detail::contains_s_generator(m, s_names))
                        throw Error("cylinder: manual correction for '" + g.name +
                                    "' has a monomial outside the kernel of eta: " + to_string(m));
                    for (const Generator& used : m.args)
                        if (!partial.find(used.name))
                            throw Error("cylinder: manual correction for '" + g.name +
                                        "' uses '" + used.name + "', which is not an earlier-stage copy");
                }
                AlgElement residue = partial.d(phi) + cycle;
                if (!residue.is_zero())
                    throw Error("cylinder: manual correction for '" + g.name +
                                "' does not split its cycle (residue " + to_string(residue) + ")");
                p.phi = phi;
            } else {
                TruncationWindow window;
                window.degree = g.degree;
                window.max_arity = options.start_arity;
                window.escalation_limit = options.escalation_limit;
                window.max_basis = options.max_basis;
                MonomialPredicate in_kernel = [&s_names](const Monomial& m) {
                    return detail::contains_s_generator(m, s_names);
                };
                try {
                    p.phi = solve_primitive(partial, cycle, window, in_kernel);
                } catch (const SolverExhausted& e) {
                    throw SolverExhausted("cylinder: could not split the cycle for generator '" +
                                              g.name + "' (cycle " + to_string(cycle) + "): " + e.what(),
                                          e.report);
                }
            }
            batch.push_back(std::move(p));
        }

        for (Pending& p : batch) {
            const Generator& g = *p.g;
            Generator gp{names.primed[g.name], g.degree, -1};
            Generator gd{names.doubled[g.name], g.degree, -1};
            Generator gs{names.s[g.name], g.degree - 1, -1};
            partial.gens.push_back(gp);
            partial.gens.push_back(gd);
            partial.gens.push_back(gs);
            partial.dtable[gp.name] = p.d_primed;
            partial.dtable[gd.name] = p.d_doubled;
            partial.dtable[gs.name] = gen_element(gp) + gen_element(gd) + p.phi;
            to_primed[g.name] = gen_element(gp);
            to_doubled[g.name] = gen_element(gd);
            phi_table[g.name] = std::move(p.phi);
        }
    }

    CylinderResult result;
    result.IA = make_algebra(partial.name, partial.gens, partial.dtable);
    ValidationReport report = validate(result.IA);
    if (!report.ok())
        throw Error("cylinder: constructed algebra failed validation:\n" + report.summary());

    std::map<std::string, AlgElement> eta_assign, j1_assign, j2_assign;
    for (const Generator& g : A.gens) {
        eta_assign[names.primed[g.name]] = gen_element(g);
        eta_assign[names.doubled[g.name]] = gen_element(g);
        eta_assign[names.s[g.name]] = AlgElement::zero();
        j1_assign[g.name] = to_primed[g.name];
        j2_assign[g.name] = to_doubled[g.name];
    }
    result.eta = CellMorphism{"eta", result.IA, A, std::move(eta_assign)};
    result.j1 = CellMorphism{"j1", A, result.IA, std::move(j1_assign)};
    result.j2 = CellMorphism{"j2", A, result.IA, std::move(j2_assign)};
    result.phi_table = std::move(phi_table);
    return result;
}

/// Acyclic closure from an already built cylinder: kill the double-primed
/// copy and rename the primed copy back to the original names.
inline CellAlgebra cone_from(const CellAlgebra& A, const CylinderResult& cyl) {
    detail::CylinderNames names = detail::cylinder_names(A);
    std::set<std::string> victims;
    std::map<std::string, std::string> back;
    for (const Generator& g : A.gens) {
        victims.insert(names.doubled[g.name]);
        back[names.primed[g.name]] = g.name;
    }
    CellAlgebra C = rename_generators(kill_generators(cyl.IA, victims), back);
    C.name = "C" + A.name;
    ValidationReport report = validate(C);
    if (!report.ok())
        throw Error("cone: constructed algebra failed validation:\n" + report.summary());
    return C;
}

inline CellAlgebra cone(const CellAlgebra& A, const CylinderOptions& options = {}) {
    return cone_from(A, cylinder(A, options));
}

/// Free loop model from an already built cylinder: identify the two copies.
/// Generators are {g, sg}; d(g) is unchanged and the s filtration mirrors the
/// original one.
inline CellAlgebra free_loop_from(const CellAlgebra& A, const CylinderResult& cyl) {
    detail::CylinderNames names = detail::cylinder_names(A);
    std::map<std::string, AlgElement> fold;
    std::vector<Generator> gens;
    for (const Generator& g : A.gens) gens.push_back(g);
    for (const Generator& g : A.gens) {
        Generator gs{names.s[g.name], g.degree - 1, g.stage};
        gens.push_back(gs);
        fold[names.primed[g.name]] = gen_element(g);
        fold[names.doubled[g.name]] = gen_element(g);
        fold[names.s[g.name]] = gen_element(gs);
    }
    DTable dtable = A.dtable;
    for (const Generator& g : A.gens)
        dtable[names.s[g.name]] = substitute(cyl.IA.d_of(names.s[g.name]), fold);
    CellAlgebra L = make_algebra("L" + A.name, std::move(gens), std::move(dtable));
    ValidationReport report = validate(L);
    if (!report.ok())
        throw Error("free_loop: constructed algebra failed validation:\n" + report.summary());
    return L;
}

inline CellAlgebra free_loop(const CellAlgebra& A, const CylinderOptions& options = {}) {
    return free_loop_from(A, cylinder(A, options));
}

/// Suspension: kill the original generators in the free loop model, leaving
/// the s copies one degree down. Computed through both the free-loop and the
/// cone route; the two must agree exactly.
inline CellAlgebra suspend(const CellAlgebra& A, const CylinderOptions& options = {}) {
    for (const Generator& g : A.gens)
        if (g.degree < 1)
            throw Error("suspend: generator '" + g.name +
                        "' has degree 0; suspension would leave negative degree");
    CylinderResult cyl = cylinder(A, options);
    std::set<std::string> original;
    for (const Generator& g : A.gens) original.insert(g.name);

    CellAlgebra via_loop = kill_generators(free_loop_from(A, cyl), original);
    CellAlgebra via_cone = kill_generators(cone_from(A, cyl), original);
    if (via_loop.dtable != via_cone.dtable)
        throw Error("suspend: free-loop route and cone route disagree");

    via_loop.name = "S" + A.name;
    ValidationReport report = validate(via_loop);
    if (!report.ok())
        throw Error("suspend: constructed algebra failed validation:\n" + report.summary());
    return via_loop;
}

/// q-fold suspension; requires every generator degree > q. Generators are
/// renamed s^q<name> (plain s<name> for q = 1).
inline CellAlgebra iterate_suspend(const CellAlgebra& A, int q, const CylinderOptions& options = {}) {
    if (q < 1)
        throw Error("iterate_suspend: iteration count must be >= 1");
    for (const Generator& g : A.gens)
        if (g.degree <= q)
            throw Error("iterate_suspend: generator '" + g.name + "' has degree " +
                        std::to_string(g.degree) + " <= " + std::to_string(q) +
                        " (connectivity violated)");

    std::vector<std::string> original_names;
    for (const Generator& g : A.gens) original_names.push_back(g.name);

    CellAlgebra S = A;
    for (int step = 0; step < q; ++step)
        S = suspend(S, step == 0 ? options : CylinderOptions{});

    if (q >= 2) {
        // After q rounds the generators are s...s<name> in the original
        // order; collapse to the s^q spelling.
        std::map<std::string, std::string> rename;
        for (size_t i = 0; i < original_names.size(); ++i)
            rename[S.gens[i].name] = "s^" + std::to_string(q) + original_names[i];
        S = rename_generators(S, rename);
    }
    S.name = "S^" + std::to_string(q) + A.name;
    return S;
}

/// Pushout of a cell extension ext: A -> A v E<W> along a morphism
/// phi: A -> B. The result is B v E<W>, with the W differentials carried
/// through phi.
inline CellAlgebra pushout(const CellMorphism& phi, const CellAlgebra& ext) {
    ValidationReport phi_report = validate_morphism(phi);
    if (!phi_report.ok())
        throw Error("pushout: morphism is not a chain map:\n" + phi_report.summary());

    const CellAlgebra& A = phi.source;
    const CellAlgebra& B = phi.target;
    for (const Generator& g : A.gens) {
        const Generator* in_ext = ext.find(g.name);
        if (!in_ext || in_ext->degree != g.degree)
            throw Error("pushout: extension does not contain base generator '" + g.name + "'");
        if (!(ext.d_of(g.name) == A.d_of(g.name)))
            throw Error("pushout: extension differential disagrees with the base on '" + g.name + "'");
    }

    std::set<std::string> base_names;
    for (const Generator& g : A.gens) base_names.insert(g.name);
    std::set<std::string> taken;
    for (const Generator& g : B.gens) taken.insert(g.name);

    std::vector<Generator> gens = B.gens;
    std::map<std::string, AlgElement> assign;
    for (const Generator& g : A.gens) assign[g.name] = phi.assign.at(g.name);
    std::vector<std::pair<const Generator*, std::string>> added;
    for (const Generator& g : ext.gens) {
        if (base_names.count(g.name)) continue;
        std::string candidate = g.name;
        int suffix = 2;
        while (taken.count(candidate))
            candidate = g.name + "_" + std::to_string(suffix++);
        taken.insert(candidate);
        Generator ng{candidate, g.degree, -1};
        gens.push_back(ng);
        assign[g.name] = gen_element(ng);
        added.emplace_back(&g, candidate);
    }

    DTable dtable = B.dtable;
    for (auto& [w, new_name] : added)
        dtable[new_name] = substitute(ext.d_of(w->name), assign);

    CellAlgebra P = make_algebra(B.name + "_pushout", std::move(gens), std::move(dtable));
    ValidationReport report = validate(P);
    if (!report.ok())
        throw Error("pushout: result failed validation (inconsistent input):\n" + report.summary());
    return P;
}

} // namespace becell
