#pragma once

#include <jetforge/field.hpp>
#include <jetforge/monomial.hpp>
#include <jetforge/variable_table.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jetforge {

/// Comparator for canonical term storage: descending structural lex.
struct StructGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return struct_compare(a, b) > 0; }
};

/// Sparse multivariate polynomial over an explicit variable table.
///
/// Canonical form: terms sorted descending under the structural order, no
/// zero coefficients, and the zero polynomial is the empty term list. Two
/// polynomials are equal iff their term lists are equal. The canonical form
/// does not depend on any MonomialOrder; orders only matter to consumers
/// that pick leading terms (the Groebner engine, the printer).
template <field F>
class Polynomial {
public:
    using Element = typename F::Element;

    struct Term {
        Monomial m;
        Element c;
        bool operator==(const Term&) const = default;
    };

    Polynomial() = default;
    Polynomial(F fld, TablePtr table) : field_(std::move(fld)), table_(std::move(table)) {}

    static Polynomial zero(const F& fld, const TablePtr& table) { return Polynomial(fld, table); }

    static Polynomial constant(const F& fld, const TablePtr& table, Element c) {
        Polynomial p(fld, table);
        if (!c.is_zero()) p.terms_.push_back({Monomial(table->size()), std::move(c)});
        return p;
    }

    static Polynomial monomial(const F& fld, const TablePtr& table, Monomial m, Element c) {
        Polynomial p(fld, table);
        if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
        return p;
    }

    static Polynomial variable(const F& fld, const TablePtr& table, std::size_t index) {
        Monomial m(table->size());
        m.e.at(index) = 1;
        return monomial(fld, table, std::move(m), fld.one());
    }

    /// Normalizing constructor from an arbitrary term soup.
    static Polynomial from_terms(const F& fld, const TablePtr& table, const std::vector<Term>& soup) {
        std::map<Monomial, Element, StructGreater> acc;
        for (const auto& t : soup) {
            if (t.m.size() != table->size()) throw table_mismatch_error("monomial length does not match table");
            auto [it, fresh] = acc.emplace(t.m, t.c);
            if (!fresh) it->second += t.c;
        }
        Polynomial p(fld, table);
        for (auto& [m, c] : acc)
            if (!c.is_zero()) p.terms_.push_back({m, c});
        return p;
    }

    const F& coefficient_field() const { return field_; }
    const TablePtr& table() const { return table_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
    std::size_t term_count() const { return terms_.size(); }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.m.degree());
        return d;
    }

    Element coefficient(const Monomial& m) const {
        for (const auto& t : terms_)
            if (t.m == m) return t.c;
        return field_.zero();
    }

    Element constant_term() const { return coefficient(Monomial(table_->size())); }

    bool operator==(const Polynomial& o) const {
        return same_table(table_, o.table_) && field_ == o.field_ && terms_ == o.terms_;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.check_compatible(b);
        Polynomial r(a.field_, a.table_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            auto cmp = struct_compare(a.terms_[i].m, b.terms_[j].m);
            if (cmp > 0) r.terms_.push_back(a.terms_[i++]);
            else if (cmp < 0) r.terms_.push_back(b.terms_[j++]);
            else {
                Element c = a.terms_[i].c + b.terms_[j].c;
                if (!c.is_zero()) r.terms_.push_back({a.terms_[i].m, std::move(c)});
                ++i; ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    Polynomial operator-() const {
        Polynomial r(field_, table_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.m, -t.c});
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_compatible(b);
        std::map<Monomial, Element, StructGreater> acc;
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) {
                Monomial m = ta.m * tb.m;
                Element c = ta.c * tb.c;
                auto it = acc.find(m);
                if (it == acc.end()) acc.emplace(std::move(m), std::move(c));
                else it->second += c;
            }
        Polynomial r(a.field_, a.table_);
        for (auto& [m, c] : acc)
            if (!c.is_zero()) r.terms_.push_back({m, c});
        return r;
    }

    Polynomial scaled(const Element& s) const {
        Polynomial r(field_, table_);
        if (s.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            Element c = t.c * s;
            if (!c.is_zero()) r.terms_.push_back({t.m, std::move(c)});
        }
        return r;
    }

    /// this * s * m, the workhorse of polynomial reduction.
    Polynomial scaled_shifted(const Element& s, const Monomial& m) const {
        Polynomial r(field_, table_);
        if (s.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            Element c = t.c * s;
            if (!c.is_zero()) r.terms_.push_back({t.m * m, std::move(c)});
        }
        // multiplication by a fixed monomial preserves the structural order
        return r;
    }

    Polynomial pow(std::uint64_t n) const {
        Polynomial acc = constant(field_, table_, field_.one());
        Polynomial base = *this;
        while (n) {
            if (n & 1) acc = acc * base;
            base = (n >>= 1) ? base * base : base;
        }
        return acc;
    }

    /// Formal partial derivative. In characteristic p the exponent factors
    /// reduce through the coefficient field, so d/dx x^p = 0 falls out.
    Polynomial derivative(std::size_t var) const {
        Polynomial r(field_, table_);
        for (const auto& t : terms_) {
            if (t.m.e[var] == 0) continue;
            Element c = t.c * field_.from_int(static_cast<long long>(t.m.e[var]));
            if (c.is_zero()) continue;
            Monomial m = t.m;
            --m.e[var];
            r.terms_.push_back({std::move(m), std::move(c)});
        }
        // decrementing one exponent keeps descending structural order
        return r;
    }

    /// Leading term under the given order (largest monomial).
    const Term& leading_term(const MonomialOrder& order) const {
        if (terms_.empty()) throw domain_error("leading term of the zero polynomial");
        const Term* best = &terms_[0];
        for (const auto& t : terms_)
            if (order.greater(t.m, best->m)) best = &t;
        return *best;
    }

    /// Ring homomorphism to the target ring: every variable of this table
    /// must have an image; all images share one table and field.
    Polynomial substitute(const std::vector<Polynomial>& images) const {
        if (images.size() != table_->size())
            throw domain_error("substitute: need one image per variable");
        for (const auto& im : images) {
            require_same_table(images[0].table(), im.table());
            require_same_field(images[0].coefficient_field(), im.coefficient_field());
        }
        const F& tf = images.empty() ? field_ : images[0].coefficient_field();
        require_same_field(field_, tf);
        TablePtr tt = images.empty() ? table_ : images[0].table();

        // memoized powers per variable
        std::vector<std::vector<Polynomial>> powers(images.size());
        auto power_of = [&](std::size_t v, std::uint32_t e) -> const Polynomial& {
            auto& cache = powers[v];
            if (cache.empty()) cache.push_back(constant(tf, tt, tf.one()));
            while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
            return cache[e];
        };

        Polynomial result = zero(tf, tt);
        for (const auto& t : terms_) {
            Polynomial term = constant(tf, tt, t.c);
            for (std::size_t v = 0; v < images.size(); ++v)
                if (t.m.e[v]) term = term * power_of(v, t.m.e[v]);
            result = result + term;
        }
        return result;
    }

    /// Evaluation at scalars; the special case of constant images.
    Element evaluate(const std::vector<Element>& point) const {
        if (point.size() != table_->size()) throw domain_error("evaluate: need one value per variable");
        Element r = field_.zero();
        for (const auto& t : terms_) {
            Element v = t.c;
            for (std::size_t i = 0; i < point.size(); ++i)
                for (std::uint32_t k = 0; k < t.m.e[i]; ++k) v = v * point[i];
            r = r + v;
        }
        return r;
    }

    /// Re-express over another table. position_map[i] gives the new position
    /// of old variable i, or VariableTable::npos when the variable must not
    /// occur in this polynomial.
    Polynomial transplanted(const TablePtr& new_table, const std::vector<std::size_t>& position_map) const {
        Polynomial r(field_, new_table);
        std::vector<Term> soup;
        soup.reserve(terms_.size());
        for (const auto& t : terms_) {
            Monomial m(new_table->size());
            for (std::size_t i = 0; i < t.m.e.size(); ++i) {
                if (t.m.e[i] == 0) continue;
                if (position_map[i] == VariableTable::npos)
                    throw domain_error("transplant: variable " + table_->var(i).str() + " has no image slot");
                m.e[position_map[i]] += t.m.e[i];
            }
            soup.push_back({std::move(m), t.c});
        }
        return from_terms(field_, new_table, soup);
    }

    /// Canonical text form: terms descending under `order`, explicit '*',
    /// '^' for exponents, field-specific coefficient spelling.
    std::string str(const MonomialOrder& order = MonomialOrder::grevlex()) const {
        if (terms_.empty()) return "0";
        std::vector<const Term*> ts;
        ts.reserve(terms_.size());
        for (const auto& t : terms_) ts.push_back(&t);
        std::stable_sort(ts.begin(), ts.end(), [&](const Term* a, const Term* b) {
            auto cmp = order.compare(a->m, b->m);
            if (cmp != 0) return cmp > 0;
            return struct_compare(a->m, b->m) > 0;
        });
        std::string out;
        bool first = true;
        for (const Term* t : ts) {
            auto [sign, mag] = signed_coeff(t->c);
            if (first) {
                if (sign < 0) out += "-";
                first = false;
            } else {
                out += sign < 0 ? " - " : " + ";
            }
            std::string mon = monomial_str(t->m);
            if (mon.empty()) out += mag;
            else if (mag == "1") out += mon;
            else out += mag + "*" + mon;
        }
        return out;
    }

    std::string monomial_str(const Monomial& m) const {
        std::string out;
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] == 0) continue;
            if (!out.empty()) out += "*";
            out += table_->var(i).str();
            if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
        }
        return out;
    }

private:
    void check_compatible(const Polynomial& o) const {
        require_same_table(table_, o.table_);
        require_same_field(field_, o.field_);
    }

    // (sign, magnitude-spelling) with the sign pulled out for printing
    static std::pair<int, std::string> signed_coeff(const Element& c) {
        if constexpr (std::is_same_v<F, RationalField>) {
            if (c < Rational(0)) return {-1, RationalField::coeff_string(-c)};
            return {1, RationalField::coeff_string(c)};
        } else {
            return {1, F::coeff_string(c)};
        }
    }

    F field_;
    TablePtr table_;
    std::vector<Term> terms_;
};

/// Deterministic total order on polynomials over one table, used to
/// canonicalize report and basis orderings.
template <field F>
std::strong_ordering poly_compare(const Polynomial<F>& a, const Polynomial<F>& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
        auto cmp = struct_compare(ta[i].m, tb[i].m);
        if (cmp != 0) return cmp;
        auto cc = ta[i].c <=> tb[i].c;
        if (cc != 0) return cc;
    }
    return ta.size() <=> tb.size();
}

/// Strip content: over Q, clear denominators and divide by the integer gcd
/// so coefficients are coprime integers with positive leading coefficient
/// under `order`; over F_p, make the polynomial monic. Keeps Groebner
/// intermediates small and normalizes generators.
template <field F>
Polynomial<F> primitive_part(const Polynomial<F>& f, const MonomialOrder& order) {
    if (f.is_zero()) return f;
    if constexpr (std::is_same_v<F, RationalField>) {
        BigInt den_lcm = 1, num_gcd = 0;
        for (const auto& t : f.terms()) {
            den_lcm = boost::multiprecision::lcm(den_lcm, t.c.denominator());
            num_gcd = boost::multiprecision::gcd(num_gcd, t.c.numerator());
        }
        Rational s(den_lcm, num_gcd);
        Polynomial<F> g = f.scaled(s);
        if (g.leading_term(order).c < Rational(0)) g = -g;
        return g;
    } else {
        const auto& lc = f.leading_term(order).c;
        return f.scaled(lc.inverse());
    }
}

} // namespace jetforge
