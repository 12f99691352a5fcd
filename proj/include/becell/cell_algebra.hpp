#pragma once

#include <set>
#include <sstream>

#include "becell/free_algebra.hpp"

namespace becell {

/// Free algebra on a filtered generator list together with a differential
/// table. Immutable in spirit: operations build new algebras.
///
/// Structural invariants checked by validate():
///   - generator names unique, degrees >= 0, stages >= 0,
///   - d(g) is homogeneous of degree deg(g) + 1 (or zero),
///   - triangularity: d(g) only involves generators of strictly smaller
///     stage (so stage-0 generators are cycles),
///   - d∘d(g) = 0 for every generator, checked exactly.
struct CellAlgebra {
    std::string name;
    std::vector<Generator> gens; // declaration order
    DTable dtable;               // complete: one entry per generator

    const Generator* find(const std::string& gname) const {
        for (const Generator& g : gens)
            if (g.name == gname) return &g;
        return nullptr;
    }

    const AlgElement& d_of(const std::string& gname) const {
        auto it = dtable.find(gname);
        if (it == dtable.end())
            throw Error("CellAlgebra: unknown generator '" + gname + "'");
        return it->second;
    }

    AlgElement d(const AlgElement& x) const { return differential(x, dtable); }

    /// Identity assignment on all generators.
    std::map<std::string, AlgElement> identity_assignment() const {
        std::map<std::string, AlgElement> out;
        for (const Generator& g : gens) out[g.name] = gen_element(g);
        return out;
    }
};

inline std::set<std::string> generator_names(const AlgElement& x) {
    std::set<std::string> out;
    for (const Monomial& m : x.terms())
        for (const Generator& g : m.args) out.insert(g.name);
    return out;
}

/// Assemble an algebra; every generator gets a dtable entry (zero when
/// absent) and unset stages are inferred as the longest dependency path.
inline CellAlgebra make_algebra(std::string name, std::vector<Generator> gens, DTable dtable) {
    CellAlgebra A;
    A.name = std::move(name);
    A.gens = std::move(gens);
    for (const Generator& g : A.gens)
        if (!dtable.count(g.name)) dtable[g.name] = AlgElement::zero();
    A.dtable = std::move(dtable);

    // Stage inference: 0 for cycles, else one more than the deepest
    // generator appearing in the differential. User-set stages are kept.
    std::map<std::string, int> memo;
    std::function<int(const std::string&, std::set<std::string>&)> depth =
        [&](const std::string& gname, std::set<std::string>& active) -> int {
        auto it = memo.find(gname);
        if (it != memo.end()) return it->second;
        const Generator* g = A.find(gname);
        if (!g) return 0; // unknown names are reported by validate()
        if (g->stage >= 0) return memo[gname] = g->stage;
        if (!active.insert(gname).second)
            throw Error("stage inference: generator dependency cycle through '" + gname + "'");
        int best = -1;
        auto dit = A.dtable.find(gname);
        if (dit != A.dtable.end())
            for (const std::string& used : generator_names(dit->second))
                best = std::max(best, depth(used, active));
        active.erase(gname);
        return memo[gname] = best + 1;
    };
    for (Generator& g : A.gens) {
        if (g.stage < 0) {
            std::set<std::string> active;
            g.stage = depth(g.name, active);
        }
    }
    return A;
}

struct ValidationIssue {
    std::string generator;
    std::string kind; // "name", "degree", "stage", "triangularity", "dsquare", "unknown"
    std::string detail;
    AlgElement residue;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }

    std::string summary() const {
        if (issues.empty()) return "valid";
        std::ostringstream os;
        for (const ValidationIssue& issue : issues) {
            os << issue.kind << " failure at generator '" << issue.generator << "': " << issue.detail;
            if (!issue.residue.is_zero())
                os << " [residue " << to_string(issue.residue) << "]";
            os << '\n';
        }
        return os.str();
    }
};

/// Exact structural check; reports every failing generator with its residue.
inline ValidationReport validate(const CellAlgebra& A) {
    ValidationReport report;
    std::set<std::string> seen;
    for (const Generator& g : A.gens) {
        if (!seen.insert(g.name).second)
            report.issues.push_back({g.name, "name", "duplicate generator name", {}});
        if (g.degree < 0)
            report.issues.push_back({g.name, "degree", "generator degree must be >= 0", {}});
        if (g.stage < 0)
            report.issues.push_back({g.name, "stage", "generator stage must be >= 0", {}});
    }
    for (const Generator& g : A.gens) {
        auto it = A.dtable.find(g.name);
        if (it == A.dtable.end()) continue;
        const AlgElement& dg = it->second;
        if (dg.is_zero()) continue;

        bool shape_ok = true;
        if (!dg.is_homogeneous() || dg.degree() != g.degree + 1) {
            report.issues.push_back({g.name, "degree",
                                     "d(" + g.name + ") must be homogeneous of degree " +
                                         std::to_string(g.degree + 1),
                                     {}});
            shape_ok = false;
        }
        for (const std::string& used : generator_names(dg)) {
            const Generator* h = A.find(used);
            if (!h) {
                report.issues.push_back({g.name, "unknown",
                                         "d(" + g.name + ") uses unknown generator '" + used + "'",
                                         {}});
                shape_ok = false;
            } else if (h->stage >= g.stage) {
                report.issues.push_back({g.name, "triangularity",
                                         "d(" + g.name + ") uses '" + used + "' of stage " +
                                             std::to_string(h->stage) + " >= " + std::to_string(g.stage),
                                         {}});
            }
        }
        if (!shape_ok) continue;
        AlgElement dd = A.d(dg);
        if (!dd.is_zero())
            report.issues.push_back({g.name, "dsquare", "d(d(" + g.name + ")) is nonzero", dd});
    }
    return report;
}

/// Generator-assignment morphism between cell algebras.
struct CellMorphism {
    std::string name;
    CellAlgebra source;
    CellAlgebra target;
    std::map<std::string, AlgElement> assign;

    AlgElement apply(const AlgElement& x) const { return substitute(x, assign); }
};

/// Chain-map check: per-generator residues substitute(d_src g) + d_tgt(f g).
inline ValidationReport validate_morphism(const CellMorphism& f) {
    ValidationReport report;
    for (const Generator& g : f.source.gens) {
        auto it = f.assign.find(g.name);
        if (it == f.assign.end()) {
            report.issues.push_back({g.name, "missing", "no assignment for generator", {}});
            continue;
        }
        const AlgElement& image = it->second;
        if (!image.is_zero() && (!image.is_homogeneous() || image.degree() != g.degree)) {
            report.issues.push_back({g.name, "degree", "image must be homogeneous of degree " +
                                                           std::to_string(g.degree),
                                     {}});
            continue;
        }
        AlgElement residue = substitute(f.source.d_of(g.name), f.assign) + f.target.d(image);
        if (!residue.is_zero())
            report.issues.push_back({g.name, "chainmap", "chain-map residue is nonzero", residue});
    }
    return report;
}

/// Rename generators (degree- and stage-preserving); differentials are
/// carried along by substitution.
inline CellAlgebra rename_generators(const CellAlgebra& A,
                                     const std::map<std::string, std::string>& new_names) {
    std::map<std::string, AlgElement> assign;
    std::vector<Generator> gens;
    std::set<std::string> taken;
    for (const Generator& g : A.gens) {
        auto it = new_names.find(g.name);
        Generator ng = g;
        if (it != new_names.end()) ng.name = it->second;
        if (!taken.insert(ng.name).second)
            throw Error("rename_generators: name collision at '" + ng.name + "'");
        gens.push_back(ng);
        assign[g.name] = gen_element(ng);
    }
    DTable dtable;
    for (const Generator& g : A.gens) {
        const Generator& ng = gens[static_cast<size_t>(&g - A.gens.data())];
        dtable[ng.name] = substitute(A.d_of(g.name), assign);
    }
    return make_algebra(A.name, std::move(gens), std::move(dtable));
}

/// Coproduct of cell algebras: disjoint union of generators and
/// differentials. Name collisions in B are resolved with numeric suffixes;
/// stages are kept, so both filtrations embed.
inline CellAlgebra coproduct(const CellAlgebra& A, const CellAlgebra& B) {
    std::set<std::string> taken;
    for (const Generator& g : A.gens) taken.insert(g.name);

    std::map<std::string, std::string> rename;
    for (const Generator& g : B.gens) {
        std::string candidate = g.name;
        int suffix = 2;
        while (taken.count(candidate))
            candidate = g.name + "_" + std::to_string(suffix++);
        if (candidate != g.name) rename[g.name] = candidate;
        taken.insert(candidate);
    }
    CellAlgebra B2 = rename.empty() ? B : rename_generators(B, rename);

    std::vector<Generator> gens = A.gens;
    gens.insert(gens.end(), B2.gens.begin(), B2.gens.end());
    DTable dtable = A.dtable;
    for (auto& [k, v] : B2.dtable) dtable[k] = v;
    return make_algebra(A.name + "+" + B.name, std::move(gens), std::move(dtable));
}

/// Quotient by the ideal generated by a set of generators: the listed
/// generators are sent to zero. The quotient differential must still square
/// to zero; the first witness generator is reported otherwise.
inline CellAlgebra kill_generators(const CellAlgebra& A, const std::set<std::string>& victims) {
    for (const std::string& s : victims)
        if (!A.find(s))
            throw Error("kill_generators: unknown generator '" + s + "'");

    std::map<std::string, AlgElement> assign;
    std::vector<Generator> gens;
    for (const Generator& g : A.gens) {
        if (victims.count(g.name)) {
            assign[g.name] = AlgElement::zero();
        } else {
            Generator ng = g;
            ng.stage = -1; // stages are re-inferred for the quotient
            gens.push_back(ng);
            assign[g.name] = gen_element(ng);
        }
    }
    DTable dtable;
    for (const Generator& g : gens)
        dtable[g.name] = substitute(A.d_of(g.name), assign);
    CellAlgebra Q = make_algebra(A.name + "/(" + std::to_string(victims.size()) + " gens)",
                                 std::move(gens), std::move(dtable));
    for (const Generator& g : Q.gens) {
        AlgElement dd = Q.d(Q.d_of(g.name));
        if (!dd.is_zero())
            throw Error("kill_generators: quotient differential does not square to zero at '" +
                        g.name + "' (residue " + to_string(dd) + ")");
    }
    return Q;
}

} // namespace becell
