#pragma once

#include <functional>
#include <sstream>

#include "becell/cell_algebra.hpp"
#include "becell/f2_matrix.hpp"

namespace becell {

/// Finite window onto the free algebra: candidate primitives are drawn from
/// monomials of the window degree with arity at most max_arity, escalating to
/// escalation_limit when no solution fits.
struct TruncationWindow {
    int degree = 0;
    int max_arity = 2;
    int escalation_limit = 6;
    // Guard against runaway enumeration at high arity; an exceeded budget is
    // reported as exhaustion, never silently truncated.
    size_t max_basis = 2'000'000;
};

struct SolveReport {
    int degree = 0;
    int arity_window = 0;
    size_t matrix_rows = 0;
    size_t matrix_cols = 0;
    size_t rank = 0;
    AlgElement phi;
    bool found = false;

    std::string summary() const {
        std::ostringstream os;
        os << "degree " << degree << ", arity window " << arity_window << ", matrix "
           << matrix_rows << "x" << matrix_cols << ", rank " << rank;
        if (found)
            os << ", phi = " << to_string(phi);
        else
            os << ", no solution";
        return os.str();
    }
};

class SolverExhausted : public Error {
public:
    SolverExhausted(std::string msg, SolveReport last) : Error(std::move(msg)), report(std::move(last)) {}
    SolveReport report;
};

using MonomialPredicate = std::function<bool(const Monomial&)>;

namespace detail {

/// Candidate columns for one window: canonical monomials of the window
/// degree, arity <= N, passing the constraint.
inline std::vector<Monomial> window_columns(const CellAlgebra& A, int degree, int N,
                                            const MonomialPredicate& constraint, size_t max_basis) {
    // Size guard before materializing: the per-multiset simplex counts are
    // known in closed form.
    std::vector<Generator> gens = A.gens;
    std::sort(gens.begin(), gens.end());
    double estimate = 0;
    std::function<void(int, size_t, int, int)> scan = [&](int slot, size_t lo, int degsum, int n) {
        if (slot == n) {
            int q = degsum - degree;
            if (q >= 0 && !(n == 1 && q > 0)) estimate += basis_count(n, q);
            return;
        }
        for (size_t i = lo; i < gens.size(); ++i)
            scan(slot + 1, i, degsum + gens[i].degree, n);
    };
    for (int n = 1; n <= N; ++n) scan(0, 0, 0, n);
    if (estimate > static_cast<double>(max_basis))
        throw Error("window basis at degree " + std::to_string(degree) + ", arity <= " +
                    std::to_string(N) + " exceeds the enumeration budget (" +
                    std::to_string(static_cast<long long>(estimate)) + " simplices)");

    std::vector<Monomial> cols = basis_enumerate(A.gens, degree, N);
    if (constraint) {
        std::vector<Monomial> kept;
        kept.reserve(cols.size());
        for (Monomial& m : cols)
            if (constraint(m)) kept.push_back(std::move(m));
        cols = std::move(kept);
    }
    return cols;
}

} // namespace detail

/// Solve d(phi) = c inside the arity-truncated quotient complex, then verify
/// the candidate exactly (full differential, no truncation) before returning
/// it. Arity is non-decreasing under the differential because differential
/// tables have no constant terms, so dropping monomials of arity > N on the
/// target side is a genuine quotient complex. Escalates the arity window one
/// step at a time up to the escalation limit.
///
/// Deterministic: candidate monomials are enumerated in a fixed order,
/// elimination pivots by column index, free variables are zero.
inline AlgElement solve_primitive(const CellAlgebra& A, const AlgElement& c,
                                  TruncationWindow window,
                                  const MonomialPredicate& constraint = nullptr,
                                  SolveReport* report_out = nullptr) {
    if (c.is_zero()) {
        if (report_out) *report_out = SolveReport{window.degree, window.max_arity, 0, 0, 0, {}, true};
        return AlgElement::zero();
    }
    if (!c.is_homogeneous())
        throw Error("solve_primitive: target must be homogeneous");
    if (!A.d(c).is_zero())
        throw Error("solve_primitive: target is not a cycle");

    const int D = c.degree() - 1;
    SolveReport report;
    report.degree = D;

    for (int N = window.max_arity; N <= window.escalation_limit; ++N) {
        std::vector<Monomial> cols;
        try {
            cols = detail::window_columns(A, D, N, constraint, window.max_basis);
        } catch (const Error& e) {
            report.arity_window = N;
            throw SolverExhausted(std::string("solve_primitive: ") + e.what(), report);
        }

        // Rows are indexed lazily from the window projections of the column
        // images and of the target; rows outside every image make the system
        // inconsistent exactly when the target touches them.
        std::map<Monomial, size_t> row_index;
        std::vector<std::vector<size_t>> col_rows(cols.size());
        auto row_of = [&](const Monomial& m) {
            auto [it, fresh] = row_index.emplace(m, row_index.size());
            (void)fresh;
            return it->second;
        };
        for (size_t j = 0; j < cols.size(); ++j) {
            AlgElement image = A.d(AlgElement(cols[j]));
            for (const Monomial& m : image.terms())
                if (m.arity() <= N) col_rows[j].push_back(row_of(m));
        }
        bool target_in_span = true;
        std::vector<size_t> b_rows;
        for (const Monomial& m : c.terms()) {
            if (m.arity() > N) continue;
            auto it = row_index.find(m);
            if (it == row_index.end()) {
                target_in_span = false;
                break;
            }
            b_rows.push_back(it->second);
        }

        report.arity_window = N;
        report.matrix_rows = row_index.size();
        report.matrix_cols = cols.size();

        if (target_in_span) {
            F2Matrix M(row_index.size(), cols.size());
            for (size_t j = 0; j < cols.size(); ++j)
                for (size_t r : col_rows[j]) M.flip(r, j);
            std::vector<uint8_t> b(row_index.size(), 0);
            for (size_t r : b_rows) b[r] = static_cast<uint8_t>(b[r] ^ 1);

            size_t rk = 0;
            auto x = solve_linear(M, b, &rk);
            report.rank = rk;
            if (x) {
                AlgElement phi;
                for (size_t j = 0; j < cols.size(); ++j)
                    if ((*x)[j]) phi.toggle(cols[j]);
                if (A.d(phi) == c) {
                    report.phi = phi;
                    report.found = true;
                    if (report_out) *report_out = report;
                    return phi;
                }
            }
        }
    }
    if (report_out) *report_out = report;
    throw SolverExhausted("solve_primitive: no primitive found up to arity " +
                              std::to_string(window.escalation_limit) + " (" + report.summary() + ")",
                          report);
}

struct CohomologyResult {
    int degree = 0;
    int max_arity = 0;
    size_t dimension = 0;
    std::vector<AlgElement> representatives;

    /// The report always names the arity window: this is the cohomology of a
    /// truncated complex, not of the full algebra.
    std::string summary() const {
        std::ostringstream os;
        os << "truncated cohomology at degree " << degree << " (arity <= " << max_arity
           << "): dimension " << dimension;
        for (const AlgElement& r : representatives)
            os << "\n  representative: " << to_string(r);
        return os.str();
    }
};

/// Dimension of ker d / im d at the window degree in the arity-truncated
/// quotient complex, with explicit representatives.
inline CohomologyResult truncated_cohomology(const CellAlgebra& A, const TruncationWindow& window) {
    const int D = window.degree;
    const int N = window.max_arity;

    std::vector<Monomial> chain_D = basis_enumerate(A.gens, D, N);
    std::vector<Monomial> chain_below = basis_enumerate(A.gens, D - 1, N);
    std::map<Monomial, size_t> index_D;
    for (size_t i = 0; i < chain_D.size(); ++i) index_D[chain_D[i]] = i;

    // Images of degree-(D-1) monomials as coefficient vectors over chain_D.
    std::vector<std::vector<size_t>> image_vectors;
    for (const Monomial& m : chain_below) {
        AlgElement im = A.d(AlgElement(m));
        std::vector<size_t> v;
        for (const Monomial& t : im.terms()) {
            auto it = index_D.find(t);
            if (it != index_D.end()) v.push_back(it->second);
        }
        if (!v.empty()) image_vectors.push_back(std::move(v));
    }

    // Kernel of d restricted to the window at degree D.
    std::map<Monomial, size_t> row_index;
    std::vector<std::vector<size_t>> col_rows(chain_D.size());
    for (size_t j = 0; j < chain_D.size(); ++j) {
        AlgElement im = A.d(AlgElement(chain_D[j]));
        for (const Monomial& t : im.terms()) {
            if (t.arity() > N) continue;
            auto [it, fresh] = row_index.emplace(t, row_index.size());
            (void)fresh;
            col_rows[j].push_back(it->second);
        }
    }
    F2Matrix M(row_index.size(), chain_D.size());
    for (size_t j = 0; j < chain_D.size(); ++j)
        for (size_t r : col_rows[j]) M.flip(r, j);
    std::vector<std::vector<uint8_t>> kernel = kernel_basis(M);

    // Quotient by the image: stack image vectors, then keep the kernel
    // vectors that still increase the rank.
    F2Matrix Q(image_vectors.size() + kernel.size(), chain_D.size());
    size_t next_row = 0;
    for (const std::vector<size_t>& v : image_vectors) {
        for (size_t c : v) Q.flip(next_row, c);
        ++next_row;
    }
    size_t base_rank = 0;
    {
        F2Matrix tmp = Q;
        base_rank = rank(tmp);
    }

    CohomologyResult result;
    result.degree = D;
    result.max_arity = N;
    size_t current_rank = base_rank;
    for (const std::vector<uint8_t>& v : kernel) {
        for (size_t c = 0; c < v.size(); ++c)
            if (v[c]) Q.set(next_row, c);
        ++next_row;
        F2Matrix tmp = Q;
        // Only the filled prefix matters; trailing zero rows do not change rank.
        size_t rk = rank(tmp);
        if (rk > current_rank) {
            current_rank = rk;
            AlgElement rep;
            for (size_t c = 0; c < v.size(); ++c)
                if (v[c]) rep.toggle(chain_D[c]);
            result.representatives.push_back(std::move(rep));
        } else {
            // Reset the row so later checks are unaffected.
            for (size_t c = 0; c < v.size(); ++c)
                if (v[c]) Q.flip(next_row - 1, c);
            --next_row;
        }
    }
    result.dimension = result.representatives.size();
    return result;
}

} // namespace becell
