#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "becell/perm.hpp"

namespace becell {

/// Dense bit-packed matrix over F2, row-major.
class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), words_(cols / 64 + 1), data_(rows * (cols / 64 + 1), 0) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    void set(size_t r, size_t c) { row(r)[c >> 6] |= uint64_t{1} << (c & 63); }
    void flip(size_t r, size_t c) { row(r)[c >> 6] ^= uint64_t{1} << (c & 63); }
    bool get(size_t r, size_t c) const { return (row(r)[c >> 6] >> (c & 63)) & 1; }

    void xor_rows(size_t dst, size_t src) {
        uint64_t* d = row(dst);
        const uint64_t* s = row(src);
        for (size_t w = 0; w < words_; ++w) d[w] ^= s[w];
    }

    uint64_t* row(size_t r) { return data_.data() + r * words_; }
    const uint64_t* row(size_t r) const { return data_.data() + r * words_; }

private:
    size_t rows_ = 0, cols_ = 0, words_ = 1;
    std::vector<uint64_t> data_;
};

namespace detail {

/// Gauss-Jordan elimination with pivots chosen by ascending column index and,
/// within a column, the first available row. Returns pivot (column, row)
/// pairs in pivot order. M (and the optional right-hand side) are reduced in
/// place.
inline std::vector<std::pair<size_t, size_t>> eliminate(F2Matrix& M, std::vector<uint8_t>* b) {
    std::vector<std::pair<size_t, size_t>> pivots;
    std::vector<uint8_t> row_used(M.rows(), 0);
    for (size_t c = 0; c < M.cols(); ++c) {
        size_t pivot = M.rows();
        for (size_t r = 0; r < M.rows(); ++r) {
            if (!row_used[r] && M.get(r, c)) {
                pivot = r;
                break;
            }
        }
        if (pivot == M.rows()) continue;
        row_used[pivot] = 1;
        pivots.emplace_back(c, pivot);
        for (size_t r = 0; r < M.rows(); ++r) {
            if (r != pivot && M.get(r, c)) {
                M.xor_rows(r, pivot);
                if (b) (*b)[r] = static_cast<uint8_t>((*b)[r] ^ (*b)[pivot]);
            }
        }
    }
    return pivots;
}

} // namespace detail

/// Some x with Mx = b, or nullopt when inconsistent. Deterministic: free
/// variables are zero, so the support sits on the earliest independent
/// columns. rank_out receives the rank of M when supplied.
inline std::optional<std::vector<uint8_t>> solve_linear(const F2Matrix& M,
                                                        const std::vector<uint8_t>& b,
                                                        size_t* rank_out = nullptr) {
    if (b.size() != M.rows())
        throw Error("solve_linear: dimension mismatch");
    F2Matrix R = M;
    std::vector<uint8_t> rhs = b;
    auto pivots = detail::eliminate(R, &rhs);
    if (rank_out) *rank_out = pivots.size();

    std::vector<uint8_t> pivot_of_row(M.rows(), 0);
    for (auto [c, r] : pivots) pivot_of_row[r] = 1;
    for (size_t r = 0; r < M.rows(); ++r)
        if (rhs[r] && !pivot_of_row[r]) return std::nullopt;

    std::vector<uint8_t> x(M.cols(), 0);
    for (auto [c, r] : pivots) x[c] = rhs[r];
    return x;
}

inline size_t rank(const F2Matrix& M) {
    F2Matrix R = M;
    return detail::eliminate(R, nullptr).size();
}

/// Basis of the kernel {x : Mx = 0}, one vector per free column.
inline std::vector<std::vector<uint8_t>> kernel_basis(const F2Matrix& M) {
    F2Matrix R = M;
    auto pivots = detail::eliminate(R, nullptr);
    std::vector<size_t> pivot_row_of_col(M.cols(), SIZE_MAX);
    for (auto [c, r] : pivots) pivot_row_of_col[c] = r;

    std::vector<std::vector<uint8_t>> out;
    for (size_t f = 0; f < M.cols(); ++f) {
        if (pivot_row_of_col[f] != SIZE_MAX) continue;
        std::vector<uint8_t> v(M.cols(), 0);
        v[f] = 1;
        for (auto [c, r] : pivots) v[c] = static_cast<uint8_t>(R.get(r, f));
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace becell
