#pragma once

#include <jetforge/polynomial.hpp>

#include <optional>
#include <vector>

namespace jetforge {

enum class Irreducibility { irreducible, reducible, unknown };

namespace factor_detail {

/// Rational square root, exact: r = s^2 with s >= 0, when it exists.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r < Rational(0)) return std::nullopt;
    BigInt n = r.numerator(), d = r.denominator();
    BigInt sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rational(sn, sd);
}

/// Square root in F_p (p odd prime) by Tonelli-Shanks; nullopt for
/// non-residues.
inline std::optional<Fp> exact_sqrt(const Fp& a) {
    const std::uint64_t p = a.p;
    if (a.v == 0) return Fp{0, p};
    auto powmod = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        b %= p;
        while (e) {
            if (e & 1) r = (r * b) % p;
            b = (b * b) % p;
            e >>= 1;
        }
        return r;
    };
    if (powmod(a.v, (p - 1) / 2) != 1) return std::nullopt; // Euler criterion
    if (p % 4 == 3) return Fp{powmod(a.v, (p + 1) / 4), p};
    // Tonelli-Shanks
    std::uint64_t q = p - 1, s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2) != p - 1) ++z;
    std::uint64_t m = s, c = powmod(z, q), t = powmod(a.v, q), r = powmod(a.v, (q + 1) / 2);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) { tt = (tt * tt) % p; ++i; }
        std::uint64_t b = c;
        for (std::uint64_t k = 0; k + i + 1 < m; ++k) b = (b * b) % p;
        m = i;
        c = (b * b) % p;
        t = (t * c) % p;
        r = (r * b) % p;
    }
    return Fp{r, p};
}

template <field F>
bool char_two(const F& fld) {
    return (fld.from_int(2)).is_zero();
}

} // namespace factor_detail

/// Sum-of-squares decomposition q = sum_k lambda_k L_k^2 of a homogeneous
/// quadratic by completing the square; the L_k come out linearly
/// independent, so their count is the rank of the Gram matrix. Requires
/// characteristic != 2.
template <field F>
std::vector<std::pair<typename F::Element, Polynomial<F>>> square_decomposition(Polynomial<F> q) {
    using E = typename F::Element;
    const F& fld = q.coefficient_field();
    const auto& table = q.table();
    const E two = fld.from_int(2);
    const E four = fld.from_int(4);

    std::vector<std::pair<E, Polynomial<F>>> forms;
    while (!q.is_zero()) {
        std::size_t sq = VariableTable::npos;
        E c = fld.zero();
        for (std::size_t v = 0; v < table->size() && sq == VariableTable::npos; ++v) {
            Monomial m(table->size());
            m.e[v] = 2;
            E cv = q.coefficient(m);
            if (!cv.is_zero()) { sq = v; c = cv; }
        }
        if (sq != VariableTable::npos) {
            auto L = q.derivative(sq).scaled(fld.one() / (two * c));
            q = q - (L * L).scaled(c);
            forms.emplace_back(c, std::move(L));
        } else {
            // no squares left: take a cross term c*v*w and peel the product
            const auto& t = q.terms().front();
            std::size_t v = VariableTable::npos, w = VariableTable::npos;
            for (std::size_t i = 0; i < t.m.e.size(); ++i) {
                if (!t.m.e[i]) continue;
                if (v == VariableTable::npos) v = i;
                else w = i;
            }
            c = t.c;
            auto A = q.derivative(w).scaled(fld.one() / c); // v + ..., free of w
            auto B = q.derivative(v).scaled(fld.one() / c); // w + ..., free of v
            q = q - (A * B).scaled(c);
            forms.emplace_back(c / four, A + B);
            forms.emplace_back(-(c / four), A - B);
        }
    }
    return forms;
}

/// Factorization certificate for a quadratic polynomial (not necessarily
/// homogeneous): homogenize, decompose, read the rank. Rank >= 3 certifies
/// irreducibility over any extension; rank <= 2 splits over the ground
/// field exactly when the discriminant ratio is a square there.
template <field F>
struct QuadraticAnalysis {
    Irreducibility verdict = Irreducibility::unknown;
    std::vector<Polynomial<F>> factors; // nonempty iff verdict == reducible
};

template <field F>
QuadraticAnalysis<F> analyze_quadratic(const Polynomial<F>& g) {
    QuadraticAnalysis<F> out;
    const F& fld = g.coefficient_field();
    if (factor_detail::char_two(fld)) return out; // unknown in characteristic 2
    if (g.total_degree() != 2) return out;

    // homogenize into an extended table
    auto vars = g.table()->vars();
    vars.push_back(VarId{"#h", 0});
    auto big = VariableTable::make(std::move(vars));
    std::size_t hpos = big->size() - 1;
    std::vector<typename Polynomial<F>::Term> soup;
    for (const auto& t : g.terms()) {
        Monomial m(big->size());
        for (std::size_t i = 0; i < t.m.e.size(); ++i) m.e[i] = t.m.e[i];
        m.e[hpos] = static_cast<std::uint32_t>(2 - t.m.degree());
        soup.push_back({std::move(m), t.c});
    }
    auto qh = Polynomial<F>::from_terms(fld, big, soup);

    auto forms = square_decomposition(qh);
    if (forms.size() >= 3) {
        out.verdict = Irreducibility::irreducible;
        return out;
    }

    std::vector<Polynomial<F>> hfactors;
    if (forms.size() == 1) {
        hfactors = {forms[0].second};
    } else if (forms.size() == 2) {
        auto ratio = -(forms[1].first / forms[0].first);
        auto s = factor_detail::exact_sqrt(ratio);
        if (!s) {
            out.verdict = Irreducibility::irreducible; // over the ground field
            return out;
        }
        hfactors = {forms[0].second - forms[1].second.scaled(*s),
                    forms[0].second + forms[1].second.scaled(*s)};
    }

    // dehomogenize: h -> 1
    std::vector<Polynomial<F>> images;
    for (std::size_t i = 0; i < big->size(); ++i)
        images.push_back(i == hpos ? Polynomial<F>::constant(fld, g.table(), fld.one())
                                   : Polynomial<F>::variable(fld, g.table(), i));
    for (auto& h : hfactors) {
        auto f = h.substitute(images);
        if (!f.is_constant()) out.factors.push_back(std::move(f));
    }
    out.verdict = out.factors.empty() ? Irreducibility::irreducible : Irreducibility::reducible;
    return out;
}

/// Monomial content of g: exponent vector of the largest monomial dividing
/// every term.
template <field F>
Monomial monomial_content(const Polynomial<F>& g) {
    Monomial m(g.table()->size());
    bool first = true;
    for (const auto& t : g.terms()) {
        if (first) { m = t.m; first = false; continue; }
        for (std::size_t i = 0; i < m.e.size(); ++i) m.e[i] = std::min(m.e[i], t.m.e[i]);
    }
    return m;
}

/// Attempt a certified nontrivial splitting of g for component branching:
/// the returned factors f_k satisfy V(g) = union V(f_k). Monomial content
/// first, then the quadratic analysis. Degree >= 3 beyond content is not
/// attempted.
template <field F>
std::optional<std::vector<Polynomial<F>>> try_split_generator(const Polynomial<F>& g) {
    if (g.is_zero() || g.is_constant()) return std::nullopt;
    const F& fld = g.coefficient_field();
    const auto& table = g.table();

    Monomial content = monomial_content(g);
    if (!content.is_one()) {
        std::vector<Polynomial<F>> factors;
        for (std::size_t i = 0; i < content.e.size(); ++i)
            if (content.e[i]) factors.push_back(Polynomial<F>::variable(fld, table, i));
        // the cofactor after stripping the content
        std::vector<typename Polynomial<F>::Term> soup;
        for (const auto& t : g.terms()) soup.push_back({t.m / content, t.c});
        auto rest = Polynomial<F>::from_terms(fld, table, soup);
        if (!rest.is_constant()) factors.push_back(std::move(rest));
        if (factors.size() == 1 && factors[0] == g) return std::nullopt; // g is itself a variable
        return factors;
    }

    if (g.total_degree() == 2) {
        auto qa = analyze_quadratic(g);
        if (qa.verdict == Irreducibility::reducible) return qa.factors;
    }
    return std::nullopt;
}

/// Irreducibility certificate over the ground field, used by the component
/// splitter's completeness flag. Conservative: "unknown" whenever the
/// implemented criteria do not apply.
template <field F>
Irreducibility certify_irreducible(const Polynomial<F>& g) {
    if (g.is_zero() || g.is_constant()) return Irreducibility::unknown;
    Monomial content = monomial_content(g);
    if (!content.is_one()) {
        // a lone variable is irreducible; anything else with content splits
        if (g.term_count() == 1 && g.terms()[0].m.degree() == 1) return Irreducibility::irreducible;
        return Irreducibility::reducible;
    }
    auto d = g.total_degree();
    if (d == 1) return Irreducibility::irreducible;
    if (d == 2) return analyze_quadratic(g).verdict;
    return Irreducibility::unknown;
}

} // namespace jetforge
