#pragma once

#include <cassert>
#include <cstring>
#include <functional>
#include <map>
#include <mutex>
#include <span>

#include "becell/perm.hpp"

namespace becell {

/// Basis simplex of the Barratt-Eccles operad in arity n: a tuple
/// (w0,...,wq) of permutations of {1..n} with no two adjacent entries equal
/// (normalized chains on the standard simplicial resolution of the symmetric
/// group). The homological degree is q.
class ESimplex {
public:
    ESimplex() = default;

    explicit ESimplex(const std::vector<Perm>& tuple) {
        if (tuple.empty())
            throw Error("ESimplex: tuple must be nonempty");
        arity_ = tuple.front().n();
        flat_.reserve(tuple.size() * static_cast<size_t>(arity_));
        for (const Perm& w : tuple) {
            if (w.n() != arity_)
                throw Error("ESimplex: entries must share arity");
            flat_.insert(flat_.end(), w.images().begin(), w.images().end());
        }
        if (is_degenerate())
            throw Error("ESimplex: adjacent entries equal (degenerate tuple)");
    }

    static ESimplex from_flat(int arity, std::vector<uint8_t> flat) {
        ESimplex s;
        s.arity_ = arity;
        s.flat_ = std::move(flat);
        return s;
    }

    int arity() const { return arity_; }
    int degree() const { return static_cast<int>(flat_.size()) / arity_ - 1; }
    int levels() const { return static_cast<int>(flat_.size()) / arity_; }

    std::span<const uint8_t> level(int t) const {
        return {flat_.data() + static_cast<size_t>(t) * static_cast<size_t>(arity_),
                static_cast<size_t>(arity_)};
    }

    Perm level_perm(int t) const {
        auto row = level(t);
        return Perm(std::vector<uint8_t>(row.begin(), row.end()));
    }

    const std::vector<uint8_t>& flat() const { return flat_; }

    bool is_degenerate() const {
        const size_t n = static_cast<size_t>(arity_);
        for (int t = 0; t + 1 < levels(); ++t)
            if (std::memcmp(flat_.data() + static_cast<size_t>(t) * n,
                            flat_.data() + (static_cast<size_t>(t) + 1) * n, n) == 0)
                return true;
        return false;
    }

    friend bool operator==(const ESimplex& a, const ESimplex& b) {
        return a.arity_ == b.arity_ && a.flat_ == b.flat_;
    }

    friend bool operator<(const ESimplex& a, const ESimplex& b) {
        if (a.arity_ != b.arity_) return a.arity_ < b.arity_;
        if (a.flat_.size() != b.flat_.size()) return a.flat_.size() < b.flat_.size();
        return a.flat_ < b.flat_;
    }

private:
    int arity_ = 0;
    std::vector<uint8_t> flat_;
};

inline std::string to_string(const ESimplex& x) {
    std::string s = "[";
    for (int t = 0; t < x.levels(); ++t) {
        if (t > 0) s += '|';
        s += to_string(x.level_perm(t));
    }
    s += ']';
    return s;
}

/// F2 linear combination of basis simplices of one arity; a term is present
/// iff its coefficient is 1.
class EElement {
public:
    EElement() = default;
    explicit EElement(int arity) : arity_(arity) {}
    explicit EElement(const ESimplex& x) : arity_(x.arity()) { terms_.push_back(x); }

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<ESimplex>& terms() const { return terms_; }

    /// Degree of a homogeneous nonzero element; -1 for zero.
    int degree() const {
        if (terms_.empty()) return -1;
        int d = terms_.front().degree();
        for (const ESimplex& t : terms_)
            if (t.degree() != d)
                throw Error("EElement: degree of a non-homogeneous element");
        return d;
    }

    void toggle(const ESimplex& x) {
        if (arity_ == 0) arity_ = x.arity();
        if (x.arity() != arity_)
            throw Error("EElement: arity mismatch");
        auto it = std::lower_bound(terms_.begin(), terms_.end(), x);
        if (it != terms_.end() && *it == x)
            terms_.erase(it);
        else
            terms_.insert(it, x);
    }

    EElement& operator+=(const EElement& other) {
        for (const ESimplex& t : other.terms_) toggle(t);
        return *this;
    }

    friend EElement operator+(EElement a, const EElement& b) {
        a += b;
        return a;
    }

    friend bool operator==(const EElement& a, const EElement& b) {
        if (a.terms_.empty() && b.terms_.empty()) return true;
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

private:
    int arity_ = 0;
    std::vector<ESimplex> terms_;
};

inline std::string to_string(const EElement& x) {
    if (x.is_zero()) return "0";
    std::string s;
    for (size_t i = 0; i < x.terms().size(); ++i) {
        if (i > 0) s += " + ";
        s += to_string(x.terms()[i]);
    }
    return s;
}

/// e_q in arity 2: the alternating tuple (1, t, 1, t, ...) of length q+1,
/// where t is the transposition.
inline ESimplex e_standard(int q) {
    if (q < 0)
        throw Error("e_standard: degree must be >= 0");
    std::vector<uint8_t> flat;
    flat.reserve(2 * (static_cast<size_t>(q) + 1));
    for (int t = 0; t <= q; ++t) {
        if (t % 2 == 0) {
            flat.push_back(1);
            flat.push_back(2);
        } else {
            flat.push_back(2);
            flat.push_back(1);
        }
    }
    return ESimplex::from_flat(2, std::move(flat));
}

/// The operad unit: the unique 0-simplex in arity 1.
inline ESimplex e_unit() {
    return ESimplex::from_flat(1, {1});
}

/// Simplicial boundary: alternating-free sum of face deletions, degenerate
/// faces dropped. Degree-0 input gives the zero element.
inline EElement boundary(const ESimplex& x) {
    EElement out(x.arity());
    const int q = x.degree();
    if (q == 0) return out;
    const size_t n = static_cast<size_t>(x.arity());
    for (int i = 0; i <= q; ++i) {
        // Deleting an interior level yields a degenerate tuple iff its
        // neighbours agree; end deletions are always nondegenerate.
        if (i > 0 && i < q &&
            std::memcmp(x.flat().data() + static_cast<size_t>(i - 1) * n,
                        x.flat().data() + static_cast<size_t>(i + 1) * n, n) == 0)
            continue;
        std::vector<uint8_t> flat;
        flat.reserve(static_cast<size_t>(q) * n);
        flat.insert(flat.end(), x.flat().begin(), x.flat().begin() + static_cast<long>(static_cast<size_t>(i) * n));
        flat.insert(flat.end(), x.flat().begin() + static_cast<long>((static_cast<size_t>(i) + 1) * n), x.flat().end());
        out.toggle(ESimplex::from_flat(x.arity(), std::move(flat)));
    }
    return out;
}

inline EElement boundary(const EElement& x) {
    EElement out(x.arity());
    for (const ESimplex& t : x.terms())
        out += boundary(t);
    return out;
}

/// Diagonal right action of the symmetric group: every tuple entry w is
/// replaced by w∘sigma.
inline ESimplex right_action(const ESimplex& x, const Perm& sigma) {
    if (sigma.n() != x.arity())
        throw Error("right_action: arity mismatch");
    const int n = x.arity();
    std::vector<uint8_t> flat(x.flat().size());
    for (int t = 0; t < x.levels(); ++t) {
        auto row = x.level(t);
        for (int i = 1; i <= n; ++i)
            flat[static_cast<size_t>(t) * static_cast<size_t>(n) + static_cast<size_t>(i - 1)] =
                row[static_cast<size_t>(sigma(i) - 1)];
    }
    return ESimplex::from_flat(n, std::move(flat));
}

inline EElement right_action(const EElement& x, const Perm& sigma) {
    EElement out(x.arity());
    for (const ESimplex& t : x.terms())
        out.toggle(right_action(t, sigma));
    return out;
}

/// Chain-level operad composition.
///
/// The Eilenberg-Zilber shuffle map sends the input simplices to the sum,
/// over all interleavings of their step sequences, of the product simplices
/// obtained by degenerating each input up to the common degree. A shuffle
/// term is a walk of length Q = sum of degrees in which exactly one factor's
/// simplicial level advances per step; at every level the outer permutation
/// is block-composed with the inner ones. Over F2 there are no signs.
inline EElement compose(const ESimplex& outer, std::span<const ESimplex> inners) {
    const int n = outer.arity();
    if (n != static_cast<int>(inners.size()))
        throw Error("compose: outer arity must equal number of inners");

    int total_arity = 0;
    int total_degree = outer.degree();
    for (const ESimplex& y : inners) {
        total_arity += y.arity();
        total_degree += y.degree();
    }
    const int Q = total_degree;

    // Per-factor level permutations, factor 0 being the outer simplex.
    std::vector<std::vector<Perm>> levels(static_cast<size_t>(n) + 1);
    for (int t = 0; t < outer.levels(); ++t)
        levels[0].push_back(outer.level_perm(t));
    for (int f = 1; f <= n; ++f)
        for (int t = 0; t < inners[static_cast<size_t>(f - 1)].levels(); ++t)
            levels[static_cast<size_t>(f)].push_back(inners[static_cast<size_t>(f - 1)].level_perm(t));

    std::vector<int> remaining(static_cast<size_t>(n) + 1);
    for (size_t f = 0; f <= static_cast<size_t>(n); ++f)
        remaining[f] = static_cast<int>(levels[f].size()) - 1;

    std::vector<int> at(static_cast<size_t>(n) + 1, 0);
    std::vector<Perm> inner_now(static_cast<size_t>(n));

    auto level_product = [&]() {
        for (int f = 1; f <= n; ++f)
            inner_now[static_cast<size_t>(f - 1)] = levels[static_cast<size_t>(f)][static_cast<size_t>(at[static_cast<size_t>(f)])];
        return block_compose(levels[0][static_cast<size_t>(at[0])], inner_now);
    };

    EElement out(total_arity);
    std::vector<uint8_t> flat;
    flat.reserve((static_cast<size_t>(Q) + 1) * static_cast<size_t>(total_arity));

    std::function<void(int)> walk = [&](int steps_left) {
        if (steps_left == 0) {
            ESimplex s = ESimplex::from_flat(total_arity, flat);
            if (!s.is_degenerate())
                out.toggle(std::move(s));
            return;
        }
        for (size_t f = 0; f <= static_cast<size_t>(n); ++f) {
            if (remaining[f] == 0) continue;
            --remaining[f];
            ++at[f];
            const Perm p = level_product();
            flat.insert(flat.end(), p.images().begin(), p.images().end());
            walk(steps_left - 1);
            flat.resize(flat.size() - static_cast<size_t>(total_arity));
            --at[f];
            ++remaining[f];
        }
    };

    const Perm p0 = level_product();
    flat.insert(flat.end(), p0.images().begin(), p0.images().end());
    walk(Q);
    return out;
}

inline EElement compose(const ESimplex& outer, const std::vector<ESimplex>& inners) {
    return compose(outer, std::span<const ESimplex>(inners));
}

/// Multilinear extension of compose to F2 combinations.
inline EElement compose(const EElement& outer, const std::vector<EElement>& inners) {
    if (outer.arity() != 0 && outer.arity() != static_cast<int>(inners.size()))
        throw Error("compose: outer arity must equal number of inners");
    int total_arity = 0;
    for (const EElement& y : inners) total_arity += y.arity();
    EElement out(total_arity);
    if (outer.is_zero()) return out;
    for (const EElement& y : inners)
        if (y.is_zero()) return out;

    std::vector<size_t> pick(inners.size(), 0);
    std::vector<ESimplex> chosen(inners.size());
    for (const ESimplex& x : outer.terms()) {
        std::fill(pick.begin(), pick.end(), 0);
        while (true) {
            for (size_t i = 0; i < inners.size(); ++i)
                chosen[i] = inners[i].terms()[pick[i]];
            out += compose(x, chosen);
            size_t i = 0;
            for (; i < inners.size(); ++i) {
                if (++pick[i] < inners[i].terms().size()) break;
                pick[i] = 0;
            }
            if (i == inners.size()) break;
        }
    }
    return out;
}

/// Shared table of symmetric groups in lexicographic order; populated on
/// first use, insert is idempotent.
inline const std::vector<Perm>& sym_group(int n) {
    static std::map<int, std::vector<Perm>> table;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = table.find(n);
    if (it == table.end())
        it = table.emplace(n, all_perms(n)).first;
    return it->second;
}

/// Number of basis simplices of E(n) in degree q: n! * (n!-1)^q.
inline double basis_count(int n, int q) {
    const double size = static_cast<double>(factorial(n));
    double count = size;
    for (int i = 0; i < q; ++i) count *= size - 1;
    return count;
}

/// Visit every basis simplex of E(n) in degree q, in lexicographic order of
/// the concatenated one-line notations.
inline void for_each_basis(int n, int q,
                           const std::function<void(const ESimplex&)>& fn) {
    if (n < 1 || q < 0)
        throw Error("basis: need arity >= 1 and degree >= 0");
    const std::vector<Perm>& perms = sym_group(n);
    if (n == 1 && q >= 1) return; // all longer tuples are degenerate
    std::vector<size_t> idx(static_cast<size_t>(q) + 1, 0);
    std::vector<uint8_t> flat;
    flat.reserve((static_cast<size_t>(q) + 1) * static_cast<size_t>(n));

    std::function<void(int)> rec = [&](int t) {
        if (t == q + 1) {
            fn(ESimplex::from_flat(n, flat));
            return;
        }
        for (size_t i = 0; i < perms.size(); ++i) {
            if (t > 0 && i == idx[static_cast<size_t>(t - 1)]) continue;
            idx[static_cast<size_t>(t)] = i;
            flat.insert(flat.end(), perms[i].images().begin(), perms[i].images().end());
            rec(t + 1);
            flat.resize(flat.size() - static_cast<size_t>(n));
        }
    };
    rec(0);
}

/// Materialized basis of E(n) in degree q, deterministic order.
inline std::vector<ESimplex> basis(int n, int q) {
    std::vector<ESimplex> out;
    if (basis_count(n, q) > 5e7)
        throw Error("basis: requested basis of E(" + std::to_string(n) + ") in degree " +
                    std::to_string(q) + " is too large to materialize");
    out.reserve(static_cast<size_t>(basis_count(n, q)));
    for_each_basis(n, q, [&](const ESimplex& s) { out.push_back(s); });
    return out;
}

} // namespace becell
