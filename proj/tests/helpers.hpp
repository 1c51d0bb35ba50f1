#pragma once

#include <jetforge/geometry.hpp>

#include <random>
#include <string>
#include <vector>

// Shared fixtures and independent oracles for the test suites. Everything
// here stays off the library's implementation paths it is used to check.

namespace tf {

using namespace jetforge;

using QF = RationalField;
using QP = Polynomial<QF>;
using QS = TruncatedSeries<QF>;

inline QF q() { return QF{}; }

inline TablePtr table(const std::vector<std::string>& names) { return VariableTable::make_base(names); }

inline QP var(const TablePtr& t, std::size_t i) { return QP::variable(QF{}, t, i); }
inline QP cst(const TablePtr& t, long long c) { return QP::constant(QF{}, t, Rational(c)); }

// --- named varieties from the worked examples ------------------------------

/// xy + z^2 in A^3
inline AffinePresentation<QF> quadric_cone() {
    auto t = table({"x", "y", "z"});
    return {QF{}, t, {var(t, 0) * var(t, 1) + var(t, 2) * var(t, 2)}};
}

/// x^2 - y^2 - x^3 in A^2
inline AffinePresentation<QF> nodal_cubic() {
    auto t = table({"x", "y"});
    auto x = var(t, 0), y = var(t, 1);
    return {QF{}, t, {x * x - y * y - x * x * x}};
}

/// xy^2 - z^2 in A^3
inline AffinePresentation<QF> whitney_umbrella() {
    auto t = table({"x", "y", "z"});
    auto x = var(t, 0), y = var(t, 1), z = var(t, 2);
    return {QF{}, t, {x * y * y - z * z}};
}

inline AffinePresentation<QF> affine_space(const std::vector<std::string>& names) {
    return {QF{}, table(names), {}};
}

// --- random generation ------------------------------------------------------

template <field F>
typename F::Element rnd_scalar(const F& fld, std::mt19937_64& rng) {
    return random_scalar(fld, rng);
}

/// Random sparse polynomial: up to max_terms monomials of degree <= max_deg.
template <field F>
Polynomial<F> rnd_poly(const F& fld, const TablePtr& t, std::mt19937_64& rng, int max_deg = 3,
                       int max_terms = 4, bool allow_zero = true) {
    std::uniform_int_distribution<int> nterms(allow_zero ? 0 : 1, max_terms);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::vector<typename Polynomial<F>::Term> soup;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        Monomial m(t->size());
        int d = deg(rng);
        std::uniform_int_distribution<std::size_t> pick(0, t->size() - 1);
        for (int j = 0; j < d; ++j) ++m.e[pick(rng)];
        soup.push_back({std::move(m), rnd_scalar(fld, rng)});
    }
    return Polynomial<F>::from_terms(fld, t, soup);
}

template <field F>
TruncatedSeries<F> rnd_series(const F& fld, const TablePtr& t, int level, std::mt19937_64& rng,
                              int max_deg = 2, int max_terms = 3) {
    TruncatedSeries<F> s(level, fld, t);
    for (int l = 0; l <= level; ++l) s.set_coefficient(l, rnd_poly(fld, t, rng, max_deg, max_terms));
    return s;
}

// --- independent oracles -----------------------------------------------------

/// Oracle for truncated-series multiplication: multiply in a genuine
/// polynomial ring with t adjoined as an extra table variable, then drop
/// the powers of t above the level. Independent of the convolution path.
template <field F>
TruncatedSeries<F> series_mul_oracle(const TruncatedSeries<F>& a, const TruncatedSeries<F>& b) {
    const F& fld = a.coefficient_field();
    const auto& t = a.table();
    auto vars = t->vars();
    vars.push_back(VarId{"#t", 0});
    auto big = VariableTable::make(std::move(vars));
    std::size_t tpos = big->size() - 1;
    std::vector<std::size_t> emb(t->size());
    for (std::size_t i = 0; i < emb.size(); ++i) emb[i] = i;

    auto lift = [&](const TruncatedSeries<F>& s) {
        auto p = Polynomial<F>::zero(fld, big);
        for (int l = 0; l <= s.level(); ++l) {
            Monomial m(big->size());
            m.e[tpos] = static_cast<std::uint32_t>(l);
            p = p + s.coefficient(l).transplanted(big, emb) *
                        Polynomial<F>::monomial(fld, big, m, fld.one());
        }
        return p;
    };

    auto prod = lift(a) * lift(b);
    TruncatedSeries<F> out(a.level(), fld, t);
    std::vector<std::vector<typename Polynomial<F>::Term>> buckets(static_cast<std::size_t>(a.level()) + 1);
    for (const auto& term : prod.terms()) {
        auto l = term.m.e[tpos];
        if (l > static_cast<std::uint32_t>(a.level())) continue;
        Monomial m = term.m;
        m.e[tpos] = 0;
        Monomial small(t->size());
        for (std::size_t i = 0; i < t->size(); ++i) small.e[i] = m.e[i];
        buckets[l].push_back({std::move(small), term.c});
    }
    for (int l = 0; l <= a.level(); ++l)
        out.set_coefficient(l, Polynomial<F>::from_terms(fld, t, buckets[static_cast<std::size_t>(l)]));
    return out;
}

/// Valid 2-jet (or higher) of the nodal cubic through its rational
/// parametrization x = 1 - u^2, y = u - u^3: substitute a scalar u-series.
/// Every output satisfies the jet equations by construction.
inline JetPoint<QF> nodal_jet_from_parameter(const std::vector<Rational>& u_coeffs, int level) {
    QF fld;
    auto params = VariableTable::make({});
    TruncatedSeries<QF> u(level, fld, params);
    for (int l = 0; l <= level && l < static_cast<int>(u_coeffs.size()); ++l)
        u.set_coefficient(l, QP::constant(fld, params, u_coeffs[static_cast<std::size_t>(l)]));
    auto one = QS::constant(level, QP::constant(fld, params, fld.one()));
    auto xs = one - u * u;          // 1 - u^2
    auto ys = u - u * u * u;        // u - u^3
    auto C = nodal_cubic();
    auto jt = make_jet_table(C.table(), level);
    std::vector<QP> vals(jt->size(), QP::zero(fld, params));
    for (int l = 0; l <= level; ++l) {
        vals[jt->find("x", l)] = xs.coefficient(l);
        vals[jt->find("y", l)] = ys.coefficient(l);
    }
    return JetPoint<QF>(level, jt, params, vals);
}

inline std::string data_file(const std::string& name) {
    return std::string(JETFORGE_DATA_DIR) + "/" + name;
}

} // namespace tf
