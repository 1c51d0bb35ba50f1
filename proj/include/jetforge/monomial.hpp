#pragma once

#include <jetforge/variable_table.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <vector>

namespace jetforge {

/// Exponent vector indexed by table position. Length always equals the
/// table size of the polynomial it belongs to.
struct Monomial {
    std::vector<std::uint32_t> e;

    Monomial() = default;
    explicit Monomial(std::size_t n) : e(n, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : e(std::move(exps)) {}

    std::size_t size() const { return e.size(); }
    bool is_one() const { return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; }); }

    std::uint64_t degree() const {
        return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
    }

    std::uint64_t weighted_degree(const std::vector<std::uint64_t>& w) const {
        std::uint64_t d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += w[i] * e[i];
        return d;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r(a.e.size());
        for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = a.e[i] + b.e[i];
        return r;
    }

    bool divides(const Monomial& m) const {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > m.e[i]) return false;
        return true;
    }

    /// Quotient m / this; caller guarantees divisibility.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial r(a.e.size());
        for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = a.e[i] - b.e[i];
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a.e.size());
        for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
        return r;
    }

    bool coprime_with(const Monomial& b) const {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] && b.e[i]) return false;
        return true;
    }

    bool operator==(const Monomial&) const = default;
};

/// Structural order used for canonical term storage: plain lexicographic on
/// the exponent vector. Independent of any MonomialOrder.
inline std::strong_ordering struct_compare(const Monomial& a, const Monomial& b) {
    return std::lexicographical_compare_three_way(a.e.begin(), a.e.end(), b.e.begin(), b.e.end());
}

/// Admissible monomial order: a multiplicative well-order on monomials.
///   lex      -- pure lexicographic, leftmost table position dominant
///   grevlex  -- total degree, ties by reverse lexicographic
///   weighted -- weighted degree (weights >= 0), ties by grevlex
class MonomialOrder {
public:
    enum class Kind { lex, grevlex, weighted };

    static MonomialOrder lex() { return MonomialOrder(Kind::lex, {}); }
    static MonomialOrder grevlex() { return MonomialOrder(Kind::grevlex, {}); }
    static MonomialOrder weighted(std::vector<std::uint64_t> w) {
        return MonomialOrder(Kind::weighted, std::move(w));
    }

    /// Elimination order for a variable subset: weighted order whose weight
    /// vector is the indicator of the eliminated positions. Any leading
    /// monomial free of eliminated variables certifies its polynomial is too.
    static MonomialOrder eliminating(std::size_t table_size, const std::vector<std::size_t>& eliminated) {
        std::vector<std::uint64_t> w(table_size, 0);
        for (auto i : eliminated) w[i] = 1;
        return weighted(std::move(w));
    }

    Kind kind() const { return kind_; }
    const std::vector<std::uint64_t>& weights() const { return weights_; }

    std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
        switch (kind_) {
        case Kind::lex:
            return std::lexicographical_compare_three_way(a.e.begin(), a.e.end(), b.e.begin(), b.e.end());
        case Kind::grevlex:
            return grevlex_compare(a, b);
        case Kind::weighted: {
            auto wa = a.weighted_degree(weights_);
            auto wb = b.weighted_degree(weights_);
            if (wa != wb) return wa <=> wb;
            return grevlex_compare(a, b);
        }
        }
        return std::strong_ordering::equal;
    }

    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    /// Total order on orders, for use as a cache key.
    auto operator<=>(const MonomialOrder&) const = default;
    bool operator==(const MonomialOrder&) const = default;

    std::string str() const {
        switch (kind_) {
        case Kind::lex: return "lex";
        case Kind::grevlex: return "grevlex";
        case Kind::weighted: {
            std::string s = "weighted(";
            for (std::size_t i = 0; i < weights_.size(); ++i)
                s += (i ? "," : "") + std::to_string(weights_[i]);
            return s + ")";
        }
        }
        return "?";
    }

private:
    MonomialOrder(Kind k, std::vector<std::uint64_t> w) : kind_(k), weights_(std::move(w)) {}

    static std::strong_ordering grevlex_compare(const Monomial& a, const Monomial& b) {
        auto da = a.degree(), db = b.degree();
        if (da != db) return da <=> db;
        // equal degree: a > b iff the rightmost nonzero entry of a-b is negative
        for (std::size_t i = a.e.size(); i-- > 0;) {
            if (a.e[i] != b.e[i])
                return a.e[i] < b.e[i] ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        return std::strong_ordering::equal;
    }

    Kind kind_;
    std::vector<std::uint64_t> weights_;
};

} // namespace jetforge
