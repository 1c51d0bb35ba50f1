#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace jetforge;
using namespace tf;

namespace {

QS scalar_series(int level, std::vector<long long> coeffs) {
    auto params = VariableTable::make({});
    QS s(level, QF{}, params);
    for (int l = 0; l <= level && l < static_cast<int>(coeffs.size()); ++l)
        s.set_coefficient(l, QP::constant(QF{}, params, Rational(coeffs[static_cast<std::size_t>(l)])));
    return s;
}

} // namespace

TEST_CASE("series addition is coefficientwise") {
    auto a = scalar_series(2, {1, 1, 0});
    auto b = scalar_series(2, {1, -1, 0});
    CHECK(a + b == scalar_series(2, {2, 0, 0}));
    CHECK(a + scalar_series(2, {}) == a);
}

TEST_CASE("series levels must agree") {
    CHECK_THROWS_AS(scalar_series(2, {1}) + scalar_series(3, {1}), table_mismatch_error);
}

TEST_CASE("series multiplication truncates at the level") {
    auto t = scalar_series(1, {0, 1});
    CHECK(t * t == scalar_series(1, {0, 0})); // t^2 is cut at m=1

    auto one_plus_t = scalar_series(2, {1, 1});
    CHECK(one_plus_t * one_plus_t == scalar_series(2, {1, 2, 1}));
}

TEST_CASE("series multiplication matches the auxiliary-variable oracle") {
    std::mt19937_64 rng(23);
    RationalField Q;
    auto t = table({"a", "b"});
    for (int i = 0; i < 200; ++i) {
        auto x = rnd_series(Q, t, 3, rng);
        auto y = rnd_series(Q, t, 3, rng);
        REQUIRE(x * y == series_mul_oracle(x, y));
    }
}

TEST_CASE("ts_evaluate produces each jet equation of the worked quadric") {
    // evaluate xy + z^2 at x -> x+x(1)t+x(2)t^2, ... and read the
    // coefficients against their hand expansions
    auto X = quadric_cone();
    auto jt = make_jet_table(X.table(), 2);
    auto images = universal_jet_images(q(), X.table(), jt, 2);
    auto series = ts_evaluate(X.generators()[0], images);

    auto v = [&](const char* b, int l) { return QP::variable(q(), jt, jt->find(b, l)); };
    auto c0 = v("x", 0) * v("y", 0) + v("z", 0) * v("z", 0);
    auto c1 = v("x", 1) * v("y", 0) + v("x", 0) * v("y", 1) + (v("z", 0) * v("z", 1)).scaled(Rational(2));
    auto c2 = v("x", 2) * v("y", 0) + v("x", 1) * v("y", 1) + v("x", 0) * v("y", 2) +
              v("z", 1) * v("z", 1) + (v("z", 0) * v("z", 2)).scaled(Rational(2));
    CHECK(series.coefficient(0) == c0);
    CHECK(series.coefficient(1) == c1);
    CHECK(series.coefficient(2) == c2);
}

TEST_CASE("ts_evaluate of a single variable returns its image") {
    auto t = table({"x"});
    auto s = scalar_series(2, {3, 1, 4});
    auto f = var(t, 0);
    CHECK(ts_evaluate(f, std::vector<QS>{s}) == s);
}

TEST_CASE("ts_evaluate is a ring homomorphism on random pairs") {
    std::mt19937_64 rng(29);
    RationalField Q;
    auto base = table({"x", "y"});
    auto pt = table({"a", "b"});
    for (int i = 0; i < 200; ++i) {
        auto f = rnd_poly(Q, base, rng, 2, 3);
        auto g = rnd_poly(Q, base, rng, 2, 3);
        std::vector<QS> images = {rnd_series(Q, pt, 3, rng, 1, 2), rnd_series(Q, pt, 3, rng, 1, 2)};
        REQUIRE(ts_evaluate(f * g, images) == ts_evaluate(f, images) * ts_evaluate(g, images));
        REQUIRE(ts_evaluate(f + g, images) == ts_evaluate(f, images) + ts_evaluate(g, images));
    }
}

TEST_CASE("series order") {
    CHECK(scalar_series(3, {}).order() == std::nullopt); // order >= m+1
    CHECK(scalar_series(3, {0, 0, 1, 1}).order() == 2);

    // z^2 at z -> c1 t + c2 t^2 with symbolic c's has order 2: the t^2
    // coefficient is c1^2, nonzero as a polynomial
    auto params = table({"c1", "c2"});
    QS zimg(3, q(), params);
    zimg.set_coefficient(1, var(params, 0));
    zimg.set_coefficient(2, var(params, 1));
    auto tz = table({"z"});
    auto f = var(tz, 0) * var(tz, 0);
    auto s = ts_evaluate(f, std::vector<QS>{zimg});
    CHECK(s.order() == 2);
    CHECK(s.coefficient(2) == var(params, 0) * var(params, 0));
}

TEST_CASE("truncation tower: evaluate high then drop equals evaluate low") {
    std::mt19937_64 rng(31);
    RationalField Q;
    auto base = table({"x", "y"});
    auto pt = table({"a"});
    for (int i = 0; i < 100; ++i) {
        auto f = rnd_poly(Q, base, rng, 3, 4);
        for (int m = 0; m < 4; ++m) {
            std::vector<QS> hi = {rnd_series(Q, pt, 4, rng, 1, 2), rnd_series(Q, pt, 4, rng, 1, 2)};
            std::vector<QS> lo;
            for (const auto& s : hi) lo.push_back(s.truncated(m));
            REQUIRE(ts_evaluate(f, hi).truncated(m) == ts_evaluate(f, lo));
        }
    }
}
