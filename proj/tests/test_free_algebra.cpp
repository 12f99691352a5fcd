#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"

using namespace becell;
using fixtures::e_of;
using fixtures::eilenberg_maclane;

namespace {

const Perm tau = Perm({2, 1});

Generator G(const std::string& name, int degree) { return Generator{name, degree, -1}; }

} // namespace

TEST_CASE("canonicalize") {
    Generator x = G("x", 2), y = G("y", 3);

    // (e·tau) ⊗ (x,y) and e ⊗ (y,x) are the same orbit
    Monomial a = canonicalize(right_action(e_standard(1), tau), {x, y});
    Monomial b = canonicalize(e_standard(1), {y, x});
    CHECK(a == b);

    // stabilizer orbit on repeated arguments: e_q(u,u) is already canonical
    Generator u = G("u", 2);
    for (int q = 0; q <= 4; ++q) {
        Monomial m = canonicalize(e_standard(q), {u, u});
        CHECK(m.op == e_standard(q));
    }

    // idempotence
    Monomial c = canonicalize(e_standard(3), {y, x});
    CHECK(canonicalize(c) == c);

    CHECK_THROWS_AS(canonicalize(e_standard(1), {x}), Error);
}

TEST_CASE("canonicalize is constant on orbits, exhaustive n <= 3") {
    std::vector<Generator> pool = {G("a", 1), G("b", 2), G("c", 2)};
    for (int n = 2; n <= 3; ++n) {
        for (int q = 0; q <= 2; ++q) {
            std::vector<ESimplex> ops = basis(n, q);
            // a representative argument tuple with a repeat when n = 3
            std::vector<Generator> args(pool.begin(), pool.begin() + n);
            if (n == 3) args[2] = args[1];
            for (const ESimplex& e : ops) {
                Monomial canonical = canonicalize(e, args);
                for (const Perm& sigma : sym_group(n)) {
                    // orbit partner: (e·sigma, args∘sigma)
                    std::vector<Generator> permuted;
                    for (int i = 1; i <= n; ++i)
                        permuted.push_back(args[static_cast<size_t>(sigma(i) - 1)]);
                    CHECK(canonicalize(right_action(e, sigma), permuted) == canonical);
                }
            }
        }
    }
}

TEST_CASE("apply_operad") {
    Generator u = G("u", 2), v = G("v", 3);
    AlgElement ue = gen_element(u), ve = gen_element(v);

    // arity-2 0-simplex is the product
    AlgElement prod = apply_operad(e_standard(0), {ue, ve});
    REQUIRE(prod.terms().size() == 1);
    CHECK(prod.terms().front().op == e_standard(0));
    CHECK(prod.degree() == 5);

    // unit application
    CHECK(apply_operad(EElement(e_unit()), {ve}) == ve);

    // multilinearity: zero argument kills the term
    CHECK(apply_operad(e_standard(2), {ue, AlgElement::zero()}).is_zero());

    // nested square-of-square shape: arity 4, degree bookkeeping
    for (int n = 2; n <= 3; ++n) {
        const int p = 1;
        AlgElement inner = e_of(n - p, gen_element(G("u", n)), gen_element(G("u", n)));
        CHECK(inner.degree() == n + p);
        AlgElement outer = e_of(n + p, inner, inner);
        CHECK(outer.degree() == n + p);
        for (const Monomial& m : outer.terms()) CHECK(m.arity() == 4);
        CHECK_FALSE(outer.is_zero());
    }
}

TEST_CASE("differential basics") {
    CellAlgebra A2 = eilenberg_maclane(2);
    AlgElement u = fixtures::gen_of(A2, "u");
    AlgElement v = fixtures::gen_of(A2, "v");

    // d(e_n(u,u)) = 0: the two boundary faces agree after canonicalization
    for (int n = 2; n <= 4; ++n)
        CHECK(A2.d(e_of(n, u, u)).is_zero());

    // the defining differential, and d∘d = 0 on it
    CHECK(A2.d(v) == u + e_of(2, u, u));
    CHECK(A2.d(A2.d(v)).is_zero());

    // two cycles x, y: d(e_1(x,y)) = e_0(x,y) + e_0(y,x)
    Generator x = G("x", 2), y = G("y", 2);
    DTable dtable{{"x", {}}, {"y", {}}};
    CellAlgebra B = make_algebra("B", {x, y}, dtable);
    AlgElement d1 = B.d(e_of(1, gen_element(x), gen_element(y)));
    AlgElement expected = apply_operad(e_standard(0), {gen_element(x), gen_element(y)}) +
                          apply_operad(e_standard(0), {gen_element(y), gen_element(x)});
    CHECK(d1 == expected);

    // missing generator and degree-inconsistent tables are rejected
    CHECK_THROWS_AS(differential(gen_element(G("z", 1)), A2.dtable), Error);
    DTable bad{{"x", gen_element(y)}, {"y", {}}}; // degree 2 image, expected 3
    CHECK_THROWS_AS(differential(e_of(1, gen_element(x), gen_element(y)), bad), Error);
}

TEST_CASE("differential is a derivation, sampled") {
    CellAlgebra A2 = eilenberg_maclane(2);
    std::mt19937 rng(31);
    std::vector<Monomial> pool = basis_enumerate(A2.gens, 3, 2);
    std::vector<Monomial> pool2 = basis_enumerate(A2.gens, 2, 2);
    REQUIRE(!pool.empty());
    REQUIRE(!pool2.empty());
    for (int trial = 0; trial < 20; ++trial) {
        AlgElement a(pool[rng() % pool.size()]);
        AlgElement b(pool2[rng() % pool2.size()]);
        for (int q = 0; q <= 2; ++q) {
            EElement e(e_standard(q));
            AlgElement lhs = A2.d(apply_operad(e, {a, b}));
            AlgElement rhs = apply_operad(boundary(e), {a, b}) +
                             apply_operad(e, {A2.d(a), b}) + apply_operad(e, {a, A2.d(b)});
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("d squares to zero on enumerated bases, sampled windows") {
    struct Window {
        int n, D;
    };
    // windows keep the forced operad degree small enough to enumerate
    std::vector<Window> windows = {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5},
                                   {2, 6}, {3, 5}, {3, 6}, {3, 7}, {3, 8}};
    for (const Window& w : windows) {
        CellAlgebra A = eilenberg_maclane(w.n);
        std::vector<Monomial> b = basis_enumerate(A.gens, w.D, 3);
        const size_t step = std::max<size_t>(1, b.size() / 120);
        for (size_t i = 0; i < b.size(); i += step)
            REQUIRE(A.d(A.d(AlgElement(b[i]))).is_zero());
    }
}

TEST_CASE("substitute") {
    CellAlgebra A2 = eilenberg_maclane(2);
    AlgElement u = fixtures::gen_of(A2, "u");
    AlgElement v = fixtures::gen_of(A2, "v");

    // identity assignment
    AlgElement mix = v + e_of(1, u, v);
    CHECK(substitute(mix, A2.identity_assignment()) == mix);

    // multilinearity: killing u kills e_2(u,u)
    std::map<std::string, AlgElement> kill_u{{"u", AlgElement::zero()}, {"v", v}};
    CHECK(substitute(e_of(2, u, u), kill_u).is_zero());

    // the Steenrod-square assignment u |-> e_{n-p}(u,u) carries d(v) of the
    // higher model to e_{n-p}(u,u) + e_{n+p}(e_{n-p}(u,u), e_{n-p}(u,u))
    for (int n = 2; n <= 3; ++n) {
        const int p = 1;
        CellAlgebra high = eilenberg_maclane(n + p);
        CellAlgebra low = eilenberg_maclane(n);
        AlgElement un = fixtures::gen_of(low, "u");
        AlgElement image = e_of(n - p, un, un);
        std::map<std::string, AlgElement> phi{{"u", image}};
        AlgElement carried = substitute(high.d_of("v"), phi);
        CHECK(carried == image + e_of(n + p, image, image));
    }

    // errors: missing assignment, degree mismatch
    CHECK_THROWS_AS(substitute(mix, std::map<std::string, AlgElement>{{"u", u}}), Error);
    std::map<std::string, AlgElement> wrong{{"u", v}, {"v", v}};
    CHECK_THROWS_AS(substitute(mix, wrong), Error);
}

TEST_CASE("substitute commutes with apply_operad, sampled") {
    CellAlgebra A2 = eilenberg_maclane(2);
    AlgElement u = fixtures::gen_of(A2, "u");
    AlgElement v = fixtures::gen_of(A2, "v");
    // degree-1 operation parts keep the shuffle expansion small
    std::map<std::string, AlgElement> f{{"u", u + e_of(1, u, v)}, {"v", v + e_of(1, v, v)}};

    std::mt19937 rng(47);
    std::vector<Monomial> pool;
    for (const Monomial& m : basis_enumerate(A2.gens, 2, 2))
        if (m.op.degree() <= 2) pool.push_back(m);
    for (int trial = 0; trial < 10; ++trial) {
        AlgElement a(pool[rng() % pool.size()]);
        AlgElement b(pool[rng() % pool.size()]);
        for (int q = 0; q <= 1; ++q) {
            EElement e(e_standard(q));
            AlgElement lhs = substitute(apply_operad(e, {a, b}), f);
            AlgElement rhs = apply_operad(e, {substitute(a, f), substitute(b, f)});
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("basis_enumerate") {
    Generator u = G("u", 2);

    // degree 2, arity <= 2: the generator itself and e_2(u,u)
    std::vector<Monomial> b22 = basis_enumerate({u}, 2, 2);
    REQUIRE(b22.size() == 2);
    CHECK(b22[0] == canonicalize(e_unit(), {u}));
    CHECK(b22[1] == canonicalize(e_standard(2), {u, u}));

    // brute-force oracle: canonicalize every (op, ordered tuple) pair
    for (int D = 2; D <= 6; ++D) {
        std::set<Monomial> expected;
        for (int n = 1; n <= 2; ++n) {
            const int q = 2 * n - D;
            if (q < 0 || (n == 1 && q != 0)) continue;
            for (const ESimplex& e : basis(n, q)) {
                std::vector<Generator> args(static_cast<size_t>(n), u);
                expected.insert(canonicalize(e, args));
            }
        }
        std::vector<Monomial> got = basis_enumerate({u}, D, 2);
        CHECK(std::set<Monomial>(got.begin(), got.end()) == expected);
        CHECK(got.size() == expected.size());
        CHECK(std::is_sorted(got.begin(), got.end(),
                             [](const Monomial& a, const Monomial& b) { return a < b; }));
    }

    // degree below every generator: nothing in arity 1
    for (const Monomial& m : basis_enumerate({u}, 1, 3))
        CHECK(m.arity() > 1);

    // degree 4 at arity <= 2 over {u}: only the product e_0(u,u)
    std::vector<Monomial> b42 = basis_enumerate({u}, 4, 2);
    REQUIRE(b42.size() == 1);
    CHECK(b42[0] == canonicalize(e_standard(0), {u, u}));

    // mixed generator degrees, including degree 0
    Generator s = G("s", 0);
    std::vector<Monomial> mixed = basis_enumerate({u, s}, 2, 2);
    for (const Monomial& m : mixed) CHECK(m.degree() == 2);
    CHECK(std::count_if(mixed.begin(), mixed.end(),
                        [](const Monomial& m) { return m.arity() == 1; }) == 1);
}
