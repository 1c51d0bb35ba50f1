#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <bit>
#include <thread>

using namespace jetforge;
using namespace tf;

TEST_CASE("reduced basis of a linear pair") {
    auto t = table({"x", "y"});
    auto x = var(t, 0), y = var(t, 1);
    Ideal<QF> I(q(), t, {x, x + y});
    auto G = I.groebner_basis(MonomialOrder::lex());
    REQUIRE(G.size() == 2);
    CHECK(std::find(G.begin(), G.end(), x) != G.end());
    CHECK(std::find(G.begin(), G.end(), y) != G.end());
}

TEST_CASE("the S-polynomial y*(x^2+y^2) - x*(xy) = y^3 enters the lex basis") {
    auto t = table({"x", "y"});
    auto x = var(t, 0), y = var(t, 1);
    Ideal<QF> I(q(), t, {x * x + y * y, x * y});
    auto G = I.groebner_basis(MonomialOrder::lex());
    // hand S-polynomial computation pins the expected reduced basis
    REQUIRE(G.size() == 3);
    CHECK(std::find(G.begin(), G.end(), y * y * y) != G.end());
    CHECK(std::find(G.begin(), G.end(), x * y) != G.end());
    CHECK(std::find(G.begin(), G.end(), x * x + y * y) != G.end());
}

TEST_CASE("the zero ideal has the empty basis") {
    auto t = table({"x"});
    Ideal<QF> I(q(), t, {QP::zero(q(), t)});
    CHECK(I.groebner_basis(MonomialOrder::lex()).empty());
    CHECK(I.is_zero_ideal());
}

TEST_CASE("normal forms") {
    auto t = table({"x", "y"});
    auto x = var(t, 0), y = var(t, 1);
    Ideal<QF> XY(q(), t, {x, y});
    CHECK(XY.reduce(x + y).is_zero());

    Ideal<QF> I(q(), t, {x * x - y});
    CHECK(I.reduce(x * x) == y);

    // self-membership of every prolonged generator
    auto J = prolong(quadric_cone(), 2);
    auto JI = J.ideal();
    for (const auto& g : J.flat_generators()) CHECK(JI.reduce(g).is_zero());
}

TEST_CASE("ideal membership") {
    auto t = table({"x", "y"});
    auto x = var(t, 0), y = var(t, 1);
    Ideal<QF> I(q(), t, {x * x, x * y});
    CHECK_FALSE(I.contains(x)); // x reduces to itself
    CHECK(I.contains(x * x));
    CHECK(I.contains(QP::zero(q(), t)));
}

TEST_CASE("reduce is idempotent on random inputs") {
    std::mt19937_64 rng(37);
    auto t = table({"x", "y", "z"});
    auto x = var(t, 0), y = var(t, 1), z = var(t, 2);
    Ideal<QF> I(q(), t, {x * y + z * z, x * x - y});
    for (int i = 0; i < 50; ++i) {
        auto f = rnd_poly(q(), t, rng, 3, 5);
        auto r = I.reduce(f);
        REQUIRE(I.reduce(r) == r);
    }
}

TEST_CASE("elimination") {
    SECTION("parabola projects onto the whole line") {
        auto t = table({"x", "y"});
        auto x = var(t, 0), y = var(t, 1);
        Ideal<QF> I(q(), t, {y - x * x});
        auto E = eliminate(I, {1}); // keep y
        CHECK(E.generators().empty());
    }
    SECTION("coordinate hyperplane eliminates to zero") {
        auto t = table({"x", "y"});
        Ideal<QF> I(q(), t, {var(t, 0)});
        CHECK(eliminate(I, {1}).generators().empty());
    }
    SECTION("classic implicitization") {
        auto t = table({"t", "x", "y"});
        auto tt = var(t, 0), x = var(t, 1), y = var(t, 2);
        Ideal<QF> I(q(), t, {x - tt, y - tt * tt});
        auto E = eliminate(I, {1, 2});
        REQUIRE(E.table()->size() == 2);
        auto xx = var(E.table(), 0), yy = var(E.table(), 1);
        Ideal<QF> expected(q(), E.table(), {yy - xx * xx});
        CHECK(ideal_equal(E, expected));
        // substitution verifies membership both directions
        for (const auto& g : E.generators()) {
            auto back = g.transplanted(t, {1, 2});
            CHECK(I.contains(back));
        }
    }
}

TEST_CASE("elimination agrees with the lex-prefix route") {
    // independent route: permute the table so the eliminated block comes
    // first, take a pure-lex basis, and keep the elements free of the block
    std::mt19937_64 rng(89);
    auto t = table({"a", "b", "c", "d"});
    auto lex_route = [&](const Ideal<QF>& I, const std::vector<std::size_t>& keep) {
        std::vector<std::size_t> elim;
        std::vector<bool> kept(t->size(), false);
        for (auto k : keep) kept[k] = true;
        for (std::size_t i = 0; i < t->size(); ++i)
            if (!kept[i]) elim.push_back(i);
        // permuted table: eliminated variables first
        std::vector<VarId> vars;
        std::vector<std::size_t> to_perm(t->size());
        for (auto e : elim) { to_perm[e] = vars.size(); vars.push_back(t->var(e)); }
        for (auto k : keep) { to_perm[k] = vars.size(); vars.push_back(t->var(k)); }
        auto pt = VariableTable::make(vars);
        std::vector<QP> pgens;
        for (const auto& g : I.generators()) pgens.push_back(g.transplanted(pt, to_perm));
        auto G = Ideal<QF>(q(), pt, pgens).groebner_basis(MonomialOrder::lex());
        // map keepers back onto the restricted table
        std::vector<VarId> kept_vars;
        for (auto k : keep) kept_vars.push_back(t->var(k));
        auto small = VariableTable::make(kept_vars);
        std::vector<std::size_t> back(pt->size(), VariableTable::npos);
        for (std::size_t i = 0; i < keep.size(); ++i) back[elim.size() + i] = i;
        std::vector<QP> out;
        for (const auto& g : G) {
            bool pure = true;
            for (auto v : support(g))
                if (v < elim.size()) { pure = false; break; }
            if (pure) out.push_back(g.transplanted(small, back));
        }
        return Ideal<QF>(q(), small, out);
    };

    for (int trial = 0; trial < 10; ++trial) {
        std::vector<QP> gens;
        for (int i = 0; i < 3; ++i) gens.push_back(rnd_poly(q(), t, rng, 2, 3));
        Ideal<QF> I(q(), t, gens);
        std::vector<std::size_t> keep = {2, 3};
        auto a = eliminate(I, keep);
        auto b = lex_route(I, keep);
        REQUIRE(same_table(a.table(), b.table()));
        REQUIRE(ideal_equal(a, b));
    }
}

TEST_CASE("krull dimension is independent of the staircase order") {
    // dim R/I = dim R/LT(I) for any order; recompute the staircase from a
    // lex basis by hand and compare
    auto staircase_dim = [](const std::vector<QP>& G, const MonomialOrder& ord, std::size_t n) {
        std::vector<std::vector<bool>> supports;
        for (const auto& g : G) {
            const auto& m = g.leading_term(ord).m;
            std::vector<bool> s(n, false);
            for (std::size_t i = 0; i < n; ++i) s[i] = m.e[i] > 0;
            supports.push_back(s);
        }
        int best = 0;
        for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
            bool ok = true;
            for (const auto& s : supports) {
                bool inside = true;
                for (std::size_t i = 0; i < n; ++i)
                    if (s[i] && !((mask >> i) & 1)) { inside = false; break; }
                if (inside) { ok = false; break; }
            }
            if (ok) best = std::max(best, static_cast<int>(std::popcount(mask)));
        }
        return best;
    };

    std::mt19937_64 rng(97);
    auto t = table({"x", "y", "z"});
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<QP> gens = {rnd_poly(q(), t, rng, 2, 3, false), rnd_poly(q(), t, rng, 2, 3, false)};
        Ideal<QF> I(q(), t, gens);
        bool unit;
        try {
            unit = I.is_unit();
        } catch (const budget_error&) {
            continue;
        }
        if (unit) continue;
        auto lexG = I.groebner_basis(MonomialOrder::lex());
        int via_lex = lexG.empty() ? 3 : staircase_dim(lexG, MonomialOrder::lex(), 3);
        REQUIRE(krull_dimension(I) == via_lex);
    }
    // and the worked value both ways
    auto J = prolong(quadric_cone(), 2).ideal();
    auto lexG = J.groebner_basis(MonomialOrder::lex());
    CHECK(staircase_dim(lexG, MonomialOrder::lex(), 9) == 6);
}

TEST_CASE("colon ideals") {
    auto t = table({"x", "y"});
    auto x = var(t, 0), y = var(t, 1);
    Ideal<QF> I(q(), t, {x * y});
    auto C = colon(I, x);
    Ideal<QF> Y(q(), t, {y});
    CHECK(ideal_equal(C, Y));

    // ((x^2, xy) : x) = (x, y), by hand
    Ideal<QF> I2(q(), t, {x * x, x * y});
    Ideal<QF> XY(q(), t, {x, y});
    CHECK(ideal_equal(colon(I2, x), XY));
}

TEST_CASE("saturation peels the embedded origin from the axes") {
    // (x^2 y, x y^2) cuts out the two axes with an embedded origin;
    // saturating by (x, y) leaves exactly (xy)
    auto t = table({"x", "y"});
    auto x = var(t, 0), y = var(t, 1);
    Ideal<QF> I(q(), t, {x * x * y, x * y * y});
    Ideal<QF> m0(q(), t, {x, y});
    auto S = saturate(I, m0);
    Ideal<QF> XYprod(q(), t, {x * y});
    CHECK(ideal_equal(S, XYprod));
}

TEST_CASE("saturation, computed honestly") {
    auto t = table({"x", "y"});
    auto x = var(t, 0), y = var(t, 1);
    Ideal<QF> I(q(), t, {x * x, x * y});

    SECTION("by (x): the whole variety sits inside V(x), so the unit ideal") {
        Ideal<QF> X(q(), t, {x});
        auto S = saturate(I, X);
        CHECK(S.is_unit());
        // the stated oracle: (x) is contained in the result, and
        // result * x^k lands back in I for some k
        CHECK(S.contains(x));
        for (const auto& g : S.generators()) CHECK(I.contains(g * x * x));
    }
    SECTION("by (y): peels the embedded part, leaving (x)") {
        Ideal<QF> Y(q(), t, {y});
        auto S = saturate(I, Y);
        Ideal<QF> X(q(), t, {x});
        CHECK(ideal_equal(S, X));
        CHECK(S.contains(x));
        for (const auto& g : S.generators()) CHECK(I.contains(g * y));
    }
    SECTION("by the unit ideal: identity") {
        Ideal<QF> one(q(), t, {cst(t, 1)});
        CHECK(ideal_equal(saturate(I, one), I));
    }
    SECTION("by the zero ideal: error") {
        CHECK_THROWS_AS(saturate(I, Ideal<QF>::zero(q(), t)), domain_error);
    }
}

TEST_CASE("krull dimension") {
    SECTION("zero ideal in n variables") {
        for (std::size_t n = 1; n <= 4; ++n) {
            std::vector<std::string> names;
            for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
            auto t = table(names);
            CHECK(krull_dimension(Ideal<QF>::zero(q(), t)) == static_cast<int>(n));
        }
    }
    SECTION("jet ideal of the quadric cone at level 2 has dimension 6") {
        CHECK(krull_dimension(prolong(quadric_cone(), 2).ideal()) == 6);
    }
    SECTION("its fiber over the origin has dimension 5") {
        auto fib = fiber_ideal(prolong(quadric_cone(), 2), {Rational(0), Rational(0), Rational(0)});
        CHECK(krull_dimension(fib) == 5);
    }
    SECTION("unit ideal has no dimension") {
        auto t = table({"x"});
        Ideal<QF> I(q(), t, {cst(t, 1)});
        CHECK_THROWS_AS(krull_dimension(I), domain_error);
    }
}

TEST_CASE("reduced bases are unique under generator permutation") {
    std::mt19937_64 rng(41);
    auto t = table({"x", "y", "z"});
    auto x = var(t, 0), y = var(t, 1), z = var(t, 2);
    std::vector<QP> gens = {x * y + z * z, x * x - y, y * y * z - x, z * z - x * y * z};
    Ideal<QF> I(q(), t, gens);
    auto G0 = I.groebner_basis(MonomialOrder::grevlex());
    for (int i = 0; i < 10; ++i) {
        auto shuffled = gens;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        Ideal<QF> J(q(), t, shuffled);
        REQUIRE(J.groebner_basis(MonomialOrder::grevlex()) == G0);
    }
}

TEST_CASE("Buchberger criterion holds post-hoc on the output") {
    auto t = table({"x", "y", "z"});
    auto x = var(t, 0), y = var(t, 1), z = var(t, 2);
    std::vector<Ideal<QF>> fixtures = {
        Ideal<QF>(q(), t, {x * y + z * z, x * x - y}),
        Ideal<QF>(q(), t, {x * x + y * y, x * y}),
        prolong(nodal_cubic(), 1).ideal(),
    };
    for (auto& I : fixtures) {
        for (auto ord : {MonomialOrder::lex(), MonomialOrder::grevlex()}) {
            auto G = I.groebner_basis(ord);
            Ideal<QF> GI(I.coefficient_field(), I.table(), G);
            for (std::size_t i = 0; i < G.size(); ++i)
                for (std::size_t j = i + 1; j < G.size(); ++j)
                    REQUIRE(GI.reduce(s_polynomial(G[i], G[j], ord), ord).is_zero());
        }
    }
}

TEST_CASE("concurrent basis queries on one ideal are consistent") {
    auto t = table({"x", "y", "z"});
    auto x = var(t, 0), y = var(t, 1), z = var(t, 2);
    Ideal<QF> I(q(), t, {x * y + z * z, x * x - y, y * z - x});
    auto expected_lex = Ideal<QF>(q(), t, I.generators()).groebner_basis(MonomialOrder::lex());
    auto expected_grevlex = Ideal<QF>(q(), t, I.generators()).groebner_basis(MonomialOrder::grevlex());

    std::vector<std::thread> pool;
    std::vector<int> ok(8, 0);
    for (int k = 0; k < 8; ++k)
        pool.emplace_back([&, k] {
            auto ord = k % 2 ? MonomialOrder::lex() : MonomialOrder::grevlex();
            const auto& expect = k % 2 ? expected_lex : expected_grevlex;
            ok[static_cast<std::size_t>(k)] = I.groebner_basis(ord) == expect ? 1 : 0;
        });
    for (auto& th : pool) th.join();
    for (int v : ok) CHECK(v == 1);
}

TEST_CASE("basis cache serves repeated queries") {
    auto t = table({"x", "y"});
    auto x = var(t, 0), y = var(t, 1);
    Ideal<QF> I(q(), t, {x * x + y * y, x * y});
    const auto& a = I.groebner_basis(MonomialOrder::lex());
    const auto& b = I.groebner_basis(MonomialOrder::lex());
    CHECK(&a == &b); // same cached object
}

TEST_CASE("budget exhaustion is a distinguished error") {
    auto t = table({"x", "y", "z"});
    auto x = var(t, 0), y = var(t, 1), z = var(t, 2);
    Ideal<QF> I(q(), t, {x * y + z * z, x * x - y, y * y * z - x});
    Budget tiny;
    tiny.max_pairs = 1;
    CHECK_THROWS_AS(I.groebner_basis(MonomialOrder::lex(), tiny), budget_error);
    Budget tiny2;
    tiny2.max_basis = 1;
    CHECK_THROWS_AS(I.groebner_basis(MonomialOrder::grevlex(), tiny2), budget_error);
}

TEST_CASE("radical membership by the Rabinowitsch trick") {
    auto t = table({"x", "y"});
    auto x = var(t, 0), y = var(t, 1);
    Ideal<QF> I(q(), t, {x * x});
    CHECK(radical_contains(I, x));
    CHECK_FALSE(I.contains(x));
    CHECK_FALSE(radical_contains(I, y));
    CHECK(bounded_power_membership(I, x, 4) == 2);
    CHECK(bounded_power_membership(I, y, 4) == 0);
}

TEST_CASE("the cyclic-4 system: a positive-dimensional classic") {
    auto t = table({"x", "y", "z", "w"});
    auto x = var(t, 0), y = var(t, 1), z = var(t, 2), w = var(t, 3);
    std::vector<QP> gens = {
        x + y + z + w,
        x * y + y * z + z * w + w * x,
        x * y * z + y * z * w + z * w * x + w * x * y,
        x * y * z * w - cst(t, 1),
    };
    Ideal<QF> I(q(), t, gens);

    // independent dimension witness: the curve (s, 1/s, -s, -1/s) solves the
    // system identically; with s = 2 that is (2, 1/2, -2, -1/2)
    std::vector<Rational> pt = {Rational(2), Rational(BigInt(1), BigInt(2)), Rational(-2),
                                Rational(BigInt(-1), BigInt(2))};
    for (const auto& g : gens) REQUIRE(g.evaluate(pt).is_zero());
    // and symbolically: substitute the parametrization into every generator
    auto st = table({"s", "si"}); // si stands in for 1/s; the relation s*si = 1 is applied afterwards
    auto s = var(st, 0), si = var(st, 1);
    std::vector<QP> param = {s, si, -s, -si};
    Ideal<QF> rel(q(), st, {s * si - cst(st, 1)});
    for (const auto& g : gens) REQUIRE(rel.reduce(g.substitute(param)).is_zero());

    // the witness pins dim >= 1; the staircase computes exactly 1
    CHECK(krull_dimension(I) == 1);

    // post-hoc Buchberger criterion on the computed basis
    auto ord = MonomialOrder::grevlex();
    auto G = I.groebner_basis(ord);
    Ideal<QF> GI(q(), t, G);
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j)
            REQUIRE(GI.reduce(s_polynomial(G[i], G[j], ord), ord).is_zero());
}

TEST_CASE("groebner engine over a prime field") {
    PrimeField F5(5);
    auto t = VariableTable::make_base({"x", "y"});
    auto x = Polynomial<PrimeField>::variable(F5, t, 0);
    auto y = Polynomial<PrimeField>::variable(F5, t, 1);
    Ideal<PrimeField> I(F5, t, {x * x + y * y, x * y});
    auto G = I.groebner_basis(MonomialOrder::lex());
    REQUIRE(G.size() == 3);
    CHECK(std::find(G.begin(), G.end(), y * y * y) != G.end());
    CHECK(krull_dimension(I) == 0);
}
