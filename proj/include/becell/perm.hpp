#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace becell {

class Error : public std::runtime_error {
public:
    explicit Error(std::string msg) : std::runtime_error(std::move(msg)) {}
};

/// Permutation of {1..n} in one-line notation.
///
/// Composition convention throughout the library: compose(p, q) applies q
/// first, i.e. (p*q)(i) = p(q(i)).
class Perm {
public:
    Perm() = default;

    /// Identity permutation of {1..n}.
    explicit Perm(int n) : images_(static_cast<size_t>(n)) {
        if (n < 1)
            throw Error("Perm: arity must be >= 1");
        std::iota(images_.begin(), images_.end(), uint8_t{1});
    }

    /// From one-line notation; validates that images is a bijection of {1..n}.
    explicit Perm(std::vector<uint8_t> images) : images_(std::move(images)) {
        if (images_.empty())
            throw Error("Perm: arity must be >= 1");
        std::vector<bool> seen(images_.size(), false);
        for (uint8_t v : images_) {
            if (v < 1 || v > images_.size() || seen[v - 1])
                throw Error("Perm: images are not a bijection of {1..n}");
            seen[v - 1] = true;
        }
    }

    static Perm identity(int n) { return Perm(n); }

    int n() const { return static_cast<int>(images_.size()); }

    /// Image of point i, 1-based.
    int operator()(int i) const { return images_[static_cast<size_t>(i - 1)]; }

    bool is_identity() const {
        for (int i = 1; i <= n(); ++i)
            if ((*this)(i) != i) return false;
        return true;
    }

    Perm inverse() const {
        std::vector<uint8_t> inv(images_.size());
        for (int i = 1; i <= n(); ++i)
            inv[static_cast<size_t>((*this)(i) - 1)] = static_cast<uint8_t>(i);
        Perm p;
        p.images_ = std::move(inv);
        return p;
    }

    const std::vector<uint8_t>& images() const { return images_; }

    auto operator<=>(const Perm&) const = default;

private:
    std::vector<uint8_t> images_;
};

/// (p*q)(i) = p(q(i)): apply q first.
inline Perm compose(const Perm& p, const Perm& q) {
    if (p.n() != q.n())
        throw Error("Perm compose: arity mismatch");
    std::vector<uint8_t> img(static_cast<size_t>(p.n()));
    for (int i = 1; i <= p.n(); ++i)
        img[static_cast<size_t>(i - 1)] = static_cast<uint8_t>(p(q(i)));
    return Perm(std::move(img));
}

/// Composition product of the permutation operad.
///
/// Each inner permutation acts within its consecutive block of the listed
/// sizes, then the blocks are rearranged so that block i lands in slot
/// outer(i). This is the classical block-permutation composition; it is
/// associative and unital (the unit is the unique element of the symmetric
/// group on one point).
inline Perm block_compose(const Perm& outer, std::span<const Perm> inners) {
    if (outer.n() != static_cast<int>(inners.size()))
        throw Error("block_compose: outer arity must equal number of inners");
    const int n = outer.n();
    int total = 0;
    for (const Perm& p : inners) total += p.n();

    // Source offset of block i and target offset of slot outer(i).
    std::vector<int> src_off(static_cast<size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i)
        src_off[static_cast<size_t>(i)] = src_off[static_cast<size_t>(i - 1)] + inners[static_cast<size_t>(i - 1)].n();

    std::vector<int> slot_size(static_cast<size_t>(n), 0);
    for (int i = 1; i <= n; ++i)
        slot_size[static_cast<size_t>(outer(i) - 1)] = inners[static_cast<size_t>(i - 1)].n();
    std::vector<int> slot_off(static_cast<size_t>(n) + 1, 0);
    for (int m = 1; m <= n; ++m)
        slot_off[static_cast<size_t>(m)] = slot_off[static_cast<size_t>(m - 1)] + slot_size[static_cast<size_t>(m - 1)];

    std::vector<uint8_t> img(static_cast<size_t>(total));
    for (int i = 1; i <= n; ++i) {
        const Perm& tau = inners[static_cast<size_t>(i - 1)];
        const int from = src_off[static_cast<size_t>(i - 1)];
        const int to = slot_off[static_cast<size_t>(outer(i) - 1)];
        for (int r = 1; r <= tau.n(); ++r)
            img[static_cast<size_t>(from + r - 1)] = static_cast<uint8_t>(to + tau(r));
    }
    return Perm(std::move(img));
}

inline Perm block_compose(const Perm& outer, const std::vector<Perm>& inners) {
    return block_compose(outer, std::span<const Perm>(inners));
}

/// The block permutation outer<j1,...,jn> (all inners the identity).
inline Perm block_perm(const Perm& outer, const std::vector<int>& sizes) {
    std::vector<Perm> ids;
    ids.reserve(sizes.size());
    for (int j : sizes) ids.emplace_back(j);
    return block_compose(outer, ids);
}

/// All permutations of {1..n} in lexicographic order of one-line notation.
inline std::vector<Perm> all_perms(int n) {
    std::vector<uint8_t> img(static_cast<size_t>(n));
    std::iota(img.begin(), img.end(), uint8_t{1});
    std::vector<Perm> out;
    do {
        out.push_back(Perm(img));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

inline long factorial(int n) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Textual form: digits concatenated for n <= 9, comma-separated in
/// parentheses otherwise.
inline std::string to_string(const Perm& p) {
    std::string s;
    if (p.n() <= 9) {
        for (int i = 1; i <= p.n(); ++i) s += static_cast<char>('0' + p(i));
    } else {
        s += '(';
        for (int i = 1; i <= p.n(); ++i) {
            if (i > 1) s += ',';
            s += std::to_string(p(i));
        }
        s += ')';
    }
    return s;
}

inline Perm parse_perm(const std::string& text) {
    std::vector<uint8_t> img;
    if (!text.empty() && text.front() == '(') {
        if (text.back() != ')')
            throw Error("parse_perm: missing closing parenthesis in '" + text + "'");
        size_t pos = 1;
        while (pos < text.size() - 1) {
            size_t end = text.find(',', pos);
            if (end == std::string::npos || end > text.size() - 1) end = text.size() - 1;
            int v = std::stoi(text.substr(pos, end - pos));
            if (v < 1 || v > 255)
                throw Error("parse_perm: point out of range in '" + text + "'");
            img.push_back(static_cast<uint8_t>(v));
            pos = end + 1;
        }
    } else {
        for (char c : text) {
            if (c < '1' || c > '9')
                throw Error("parse_perm: invalid digit in '" + text + "'");
            img.push_back(static_cast<uint8_t>(c - '0'));
        }
    }
    if (img.empty())
        throw Error("parse_perm: empty permutation");
    return Perm(std::move(img));
}

} // namespace becell
