#pragma once

#include <map>
#include <optional>

#include "becell/barratt_eccles.hpp"

namespace becell {

/// Graded generator. Degrees are cohomological; the filtration stage is
/// bookkeeping carried by the owning algebra (-1 when not assigned).
/// Identity and ordering ignore the stage.
struct Generator {
    std::string name;
    int degree = 0;
    int stage = -1;

    friend bool operator==(const Generator& a, const Generator& b) {
        return a.name == b.name && a.degree == b.degree;
    }
    friend bool operator<(const Generator& a, const Generator& b) {
        if (a.name != b.name) return a.name < b.name;
        return a.degree < b.degree;
    }
};

/// Operadic monomial e ⊗ (g1,...,gn), stored as the canonical representative
/// of its orbit under the simultaneous symmetric group action
///   (e·sigma) ⊗ (g1,...,gn)  ~  e ⊗ (g_sigma^{-1}(1),...,g_sigma^{-1}(n)),
/// the classical coinvariant relation (the right operad action against the
/// left place-permutation action on tensors). This pairing makes the
/// composition product and the differential descend to orbit classes.
/// The canonical pair minimizes (args, op) lexicographically over the orbit;
/// in particular canonical argument tuples are sorted.
struct Monomial {
    ESimplex op;
    std::vector<Generator> args;

    int arity() const { return op.arity(); }

    /// Cohomological degree: sum of argument degrees minus operad degree.
    int degree() const {
        int d = -op.degree();
        for (const Generator& g : args) d += g.degree;
        return d;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.op == b.op && a.args == b.args;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.arity() != b.arity()) return a.arity() < b.arity();
        if (a.args != b.args) return a.args < b.args;
        return a.op < b.op;
    }
};

namespace detail {

/// Permutations of {1..n} fixing the sorted tuple (identity included),
/// generated as products of permutations of equal-argument runs.
inline std::vector<Perm> stabilizer(const std::vector<Generator>& sorted_args) {
    const int n = static_cast<int>(sorted_args.size());
    std::vector<std::pair<int, int>> runs; // [begin, end) of equal entries, 0-based
    int begin = 0;
    for (int i = 1; i <= n; ++i) {
        if (i == n || !(sorted_args[static_cast<size_t>(i)] == sorted_args[static_cast<size_t>(begin)])) {
            runs.emplace_back(begin, i);
            begin = i;
        }
    }
    std::vector<Perm> out;
    std::vector<uint8_t> img(static_cast<size_t>(n));
    std::function<void(size_t)> rec = [&](size_t r) {
        if (r == runs.size()) {
            out.push_back(Perm(img));
            return;
        }
        auto [lo, hi] = runs[r];
        std::vector<uint8_t> slots(static_cast<size_t>(hi - lo));
        std::iota(slots.begin(), slots.end(), static_cast<uint8_t>(lo + 1));
        do {
            for (int i = lo; i < hi; ++i)
                img[static_cast<size_t>(i)] = slots[static_cast<size_t>(i - lo)];
            rec(r + 1);
        } while (std::next_permutation(slots.begin(), slots.end()));
    };
    rec(0);
    return out;
}

} // namespace detail

/// Canonical orbit representative of e ⊗ (g1,...,gn).
inline Monomial canonicalize(const ESimplex& op, const std::vector<Generator>& args) {
    const int n = op.arity();
    if (n != static_cast<int>(args.size()))
        throw Error("canonicalize: operad arity must equal number of arguments");

    // The orbit of (op, args) is {(op·sigma, args∘sigma)}, so sorting the
    // arguments with sigma1 (args∘sigma1 = sorted) leaves the coset
    // sigma1∘Stab(sorted) to minimize over.
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return args[static_cast<size_t>(a)] < args[static_cast<size_t>(b)]; });
    std::vector<Generator> sorted;
    sorted.reserve(static_cast<size_t>(n));
    for (int i : order) sorted.push_back(args[static_cast<size_t>(i)]);

    std::vector<uint8_t> sigma1_img(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        sigma1_img[static_cast<size_t>(i)] = static_cast<uint8_t>(order[static_cast<size_t>(i)] + 1);
    const Perm sigma1 = Perm(sigma1_img);

    std::optional<ESimplex> best;
    for (const Perm& tau : detail::stabilizer(sorted)) {
        ESimplex candidate = right_action(op, compose(sigma1, tau));
        if (!best || candidate < *best) best = std::move(candidate);
    }
    return Monomial{std::move(*best), std::move(sorted)};
}

inline Monomial canonicalize(const Monomial& m) { return canonicalize(m.op, m.args); }

/// True iff op is minimal in its stabilizer orbit; args must already be
/// sorted. Used by enumeration to emit each orbit once.
inline bool is_canonical_sorted(const ESimplex& op, const std::vector<Perm>& stab) {
    for (const Perm& tau : stab) {
        if (tau.is_identity()) continue;
        if (right_action(op, tau) < op) return false;
    }
    return true;
}

/// F2 linear combination of canonical monomials.
class AlgElement {
public:
    AlgElement() = default;
    explicit AlgElement(Monomial m) { terms_.push_back(std::move(m)); }

    static AlgElement zero() { return AlgElement(); }

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Monomial>& terms() const { return terms_; }

    /// Degree of a homogeneous element; throws on mixed degrees, -10000 for 0.
    int degree() const {
        if (terms_.empty()) return kZeroDegree;
        int d = terms_.front().degree();
        for (const Monomial& m : terms_)
            if (m.degree() != d)
                throw Error("AlgElement: degree of a non-homogeneous element");
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = terms_.front().degree();
        for (const Monomial& m : terms_)
            if (m.degree() != d) return false;
        return true;
    }

    void toggle(const Monomial& m) {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m);
        if (it != terms_.end() && *it == m)
            terms_.erase(it);
        else
            terms_.insert(it, m);
    }

    AlgElement& operator+=(const AlgElement& other) {
        for (const Monomial& m : other.terms_) toggle(m);
        return *this;
    }
    friend AlgElement operator+(AlgElement a, const AlgElement& b) {
        a += b;
        return a;
    }
    friend bool operator==(const AlgElement& a, const AlgElement& b) {
        return a.terms_ == b.terms_;
    }

    static constexpr int kZeroDegree = -10000;

private:
    std::vector<Monomial> terms_; // sorted, canonical
};

/// The generator g as the arity-1 monomial (unit op) ⊗ (g).
inline AlgElement gen_element(const Generator& g) {
    return AlgElement(Monomial{e_unit(), {g}});
}

/// Structure map of the free algebra: op(a1,...,an), expanded multilinearly
/// over F2 and canonicalized. Arguments must be homogeneous.
inline AlgElement apply_operad(const EElement& op, const std::vector<AlgElement>& args) {
    if (!op.is_zero() && op.arity() != static_cast<int>(args.size()))
        throw Error("apply_operad: operad arity must equal number of arguments");
    AlgElement out;
    if (op.is_zero()) return out;
    for (const AlgElement& a : args) {
        if (a.is_zero()) return out;
        if (!a.is_homogeneous())
            throw Error("apply_operad: arguments must be homogeneous");
    }

    std::vector<size_t> pick(args.size(), 0);
    std::vector<ESimplex> inner_ops(args.size());
    std::vector<Generator> cat;
    for (const ESimplex& x : op.terms()) {
        std::fill(pick.begin(), pick.end(), 0);
        while (true) {
            cat.clear();
            for (size_t i = 0; i < args.size(); ++i) {
                const Monomial& m = args[i].terms()[pick[i]];
                inner_ops[i] = m.op;
                cat.insert(cat.end(), m.args.begin(), m.args.end());
            }
            EElement composed = compose(x, inner_ops);
            for (const ESimplex& h : composed.terms())
                out.toggle(canonicalize(h, cat));
            size_t i = 0;
            for (; i < args.size(); ++i) {
                if (++pick[i] < args[i].terms().size()) break;
                pick[i] = 0;
            }
            if (i == args.size()) break;
        }
    }
    return out;
}

inline AlgElement apply_operad(const ESimplex& op, const std::vector<AlgElement>& args) {
    return apply_operad(EElement(op), args);
}

using DTable = std::map<std::string, AlgElement>;

namespace detail {

inline const AlgElement& dtable_at(const DTable& dtable, const Generator& g) {
    auto it = dtable.find(g.name);
    if (it == dtable.end())
        throw Error("differential: no entry for generator '" + g.name + "'");
    if (!it->second.is_zero() && it->second.degree() != g.degree + 1)
        throw Error("differential: entry for generator '" + g.name + "' has degree " +
                    std::to_string(it->second.degree()) + ", expected " + std::to_string(g.degree + 1));
    return it->second;
}

} // namespace detail

/// Free-algebra differential: operad boundary on the monomial's operation
/// plus, for each slot, partial composition with the generator's entry in
/// dtable. Raises cohomological degree by one.
inline AlgElement differential(const Monomial& m, const DTable& dtable) {
    AlgElement out;
    const EElement op_boundary = boundary(m.op);
    for (const ESimplex& f : op_boundary.terms())
        out.toggle(canonicalize(f, m.args));

    const int n = m.arity();
    for (int i = 0; i < n; ++i) {
        const AlgElement& dg = detail::dtable_at(dtable, m.args[static_cast<size_t>(i)]);
        if (dg.is_zero()) continue;
        std::vector<Generator> spliced;
        std::vector<ESimplex> inner_ops(static_cast<size_t>(n), e_unit());
        for (const Monomial& t : dg.terms()) {
            inner_ops[static_cast<size_t>(i)] = t.op;
            spliced.clear();
            spliced.insert(spliced.end(), m.args.begin(), m.args.begin() + i);
            spliced.insert(spliced.end(), t.args.begin(), t.args.end());
            spliced.insert(spliced.end(), m.args.begin() + i + 1, m.args.end());
            EElement composed = compose(m.op, inner_ops);
            for (const ESimplex& h : composed.terms())
                out.toggle(canonicalize(h, spliced));
        }
    }
    return out;
}

inline AlgElement differential(const AlgElement& x, const DTable& dtable) {
    AlgElement out;
    for (const Monomial& m : x.terms())
        out += differential(m, dtable);
    return out;
}

/// Morphism application by generator assignment; the assignment must cover
/// every generator of x and preserve degrees.
inline AlgElement substitute(const AlgElement& x, const std::map<std::string, AlgElement>& assign) {
    AlgElement out;
    std::vector<AlgElement> images;
    for (const Monomial& m : x.terms()) {
        images.clear();
        for (const Generator& g : m.args) {
            auto it = assign.find(g.name);
            if (it == assign.end())
                throw Error("substitute: no assignment for generator '" + g.name + "'");
            if (!it->second.is_zero() && it->second.degree() != g.degree)
                throw Error("substitute: assignment for generator '" + g.name + "' has degree " +
                            std::to_string(it->second.degree()) + ", expected " + std::to_string(g.degree));
            images.push_back(it->second);
        }
        out += apply_operad(m.op, images);
    }
    return out;
}

/// All canonical monomials of cohomological degree D with arity at most N
/// over the given generators, in deterministic order (arity, then argument
/// tuple, then operation). The operad degree of each monomial is forced by
/// its argument multiset.
inline std::vector<Monomial> basis_enumerate(std::vector<Generator> gens, int D, int N) {
    if (N < 1)
        throw Error("basis_enumerate: max arity must be >= 1");
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

    std::vector<Monomial> out;
    std::vector<Generator> tuple;
    for (int n = 1; n <= N; ++n) {
        // Non-decreasing index tuples enumerate sorted argument tuples in
        // lexicographic order.
        std::vector<size_t> idx(static_cast<size_t>(n), 0);
        std::function<void(int, size_t, int)> rec = [&](int slot, size_t lo, int degsum) {
            if (slot == n) {
                const int q = degsum - D;
                if (q < 0) return;
                if (n == 1 && q > 0) return;
                tuple.clear();
                for (size_t i : idx) tuple.push_back(gens[i]);
                const std::vector<Perm> stab = detail::stabilizer(tuple);
                for_each_basis(n, q, [&](const ESimplex& e) {
                    if (is_canonical_sorted(e, stab))
                        out.push_back(Monomial{e, tuple});
                });
                return;
            }
            for (size_t i = lo; i < gens.size(); ++i) {
                idx[static_cast<size_t>(slot)] = i;
                rec(slot + 1, i, degsum + gens[i].degree);
            }
        };
        rec(0, 0, 0);
    }
    return out;
}

inline std::string to_string(const Generator& g) { return g.name; }

/// Monomial display. Arity-1 unit monomials print as the bare generator;
/// arity-2 monomials whose operation is the standard alternating simplex (or
/// its twist, shown with swapped arguments) print as e[q](a,b); everything
/// else uses the explicit tuple form.
inline std::string to_string(const Monomial& m) {
    if (m.arity() == 1 && m.op.degree() == 0)
        return m.args.front().name;
    std::string argstr = "(";
    const auto args_joined = [&](bool swapped) {
        std::string s;
        if (!swapped) {
            for (size_t i = 0; i < m.args.size(); ++i) {
                if (i) s += ',';
                s += m.args[i].name;
            }
        } else {
            s = m.args[1].name + "," + m.args[0].name;
        }
        return s;
    };
    if (m.arity() == 2) {
        const int q = m.op.degree();
        if (m.op == e_standard(q))
            return "e[" + std::to_string(q) + "](" + args_joined(false) + ")";
        if (m.op == right_action(e_standard(q), Perm({2, 1})))
            return "e[" + std::to_string(q) + "](" + args_joined(true) + ")";
    }
    argstr += args_joined(false);
    argstr += ')';
    return to_string(m.op) + argstr;
}

inline std::string to_string(const AlgElement& x) {
    if (x.is_zero()) return "0";
    std::string s;
    for (size_t i = 0; i < x.terms().size(); ++i) {
        if (i > 0) s += " + ";
        s += to_string(x.terms()[i]);
    }
    return s;
}

} // namespace becell
