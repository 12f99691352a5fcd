#pragma once

#include "becell/becell.hpp"

namespace becell::fixtures {

/// Model of the mod-2 Eilenberg-MacLane space in one degree: generators u of
/// degree n and v of degree n-1, with d(v) = u + e_n(u,u).
inline CellAlgebra eilenberg_maclane(int n) {
    Generator u{"u", n, 0};
    Generator v{"v", n - 1, 1};
    DTable dtable;
    dtable["v"] = gen_element(u) +
                  apply_operad(e_standard(n), {gen_element(u), gen_element(u)});
    return make_algebra("A" + std::to_string(n), {u, v}, std::move(dtable));
}

/// The cylinder corrections used in the worked loop-space computation:
/// phi_u = 0 and phi_v = su + e_n(u'',su) + e_n(su,u') + e_{n-1}(su,su).
inline std::map<std::string, AlgElement> cylinder_corrections(int n) {
    Generator up{"u'", n}, upp{"u''", n}, su{"su", n - 1};
    AlgElement phi_v =
        gen_element(su) +
        apply_operad(e_standard(n), {gen_element(upp), gen_element(su)}) +
        apply_operad(e_standard(n), {gen_element(su), gen_element(up)}) +
        apply_operad(e_standard(n - 1), {gen_element(su), gen_element(su)});
    return {{"u", AlgElement::zero()}, {"v", phi_v}};
}

inline AlgElement e_of(int q, const AlgElement& a, const AlgElement& b) {
    return apply_operad(e_standard(q), {a, b});
}

inline AlgElement gen_of(const CellAlgebra& A, const std::string& name) {
    const Generator* g = A.find(name);
    if (!g) throw Error("fixture: no generator '" + name + "' in " + A.name);
    return gen_element(*g);
}

} // namespace becell::fixtures
