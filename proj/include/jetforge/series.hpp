#pragma once

#include <jetforge/polynomial.hpp>

#include <optional>
#include <vector>

namespace jetforge {

/// Element of C[t]/(t^{m+1}) where C is a polynomial ring: exactly m+1
/// coefficient slots, trailing zeros stored explicitly. One evaluation with
/// symbolic coefficients produces jet equations; evaluation at constant
/// polynomials is the scalar case.
template <field F>
class TruncatedSeries {
public:
    TruncatedSeries(int level, const F& fld, const TablePtr& table)
        : coeffs_(static_cast<std::size_t>(level) + 1, Polynomial<F>::zero(fld, table)) {
        if (level < 0) throw domain_error("truncation level must be nonnegative");
    }

    TruncatedSeries(std::vector<Polynomial<F>> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw domain_error("series needs at least the t^0 slot");
        for (const auto& c : coeffs_) {
            require_same_table(coeffs_[0].table(), c.table());
            require_same_field(coeffs_[0].coefficient_field(), c.coefficient_field());
        }
    }

    int level() const { return static_cast<int>(coeffs_.size()) - 1; }
    const F& coefficient_field() const { return coeffs_[0].coefficient_field(); }
    const TablePtr& table() const { return coeffs_[0].table(); }

    const Polynomial<F>& coefficient(int s) const { return coeffs_.at(static_cast<std::size_t>(s)); }
    void set_coefficient(int s, Polynomial<F> c) {
        require_same_table(table(), c.table());
        coeffs_.at(static_cast<std::size_t>(s)) = std::move(c);
    }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    /// Least s with c_s != 0, or nullopt meaning "order >= m+1".
    std::optional<int> order() const {
        for (int s = 0; s <= level(); ++s)
            if (!coeffs_[static_cast<std::size_t>(s)].is_zero()) return s;
        return std::nullopt;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check_compatible(b);
        std::vector<Polynomial<F>> c;
        c.reserve(a.coeffs_.size());
        for (std::size_t s = 0; s < a.coeffs_.size(); ++s) c.push_back(a.coeffs_[s] + b.coeffs_[s]);
        return TruncatedSeries(std::move(c));
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check_compatible(b);
        std::vector<Polynomial<F>> c;
        c.reserve(a.coeffs_.size());
        for (std::size_t s = 0; s < a.coeffs_.size(); ++s) c.push_back(a.coeffs_[s] - b.coeffs_[s]);
        return TruncatedSeries(std::move(c));
    }

    /// c_s(ab) = sum_{i+j=s} c_i(a) c_j(b); terms beyond t^m are discarded.
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check_compatible(b);
        TruncatedSeries r(a.level(), a.coefficient_field(), a.table());
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; i + j < b.coeffs_.size(); ++j) {
                if (b.coeffs_[j].is_zero()) continue;
                r.coeffs_[i + j] = r.coeffs_[i + j] + a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return r;
    }

    TruncatedSeries pow(std::uint64_t n) const {
        TruncatedSeries acc = constant(level(), Polynomial<F>::constant(coefficient_field(), table(), coefficient_field().one()));
        TruncatedSeries base = *this;
        while (n) {
            if (n & 1) acc = acc * base;
            base = (n >>= 1) ? base * base : base;
        }
        return acc;
    }

    static TruncatedSeries constant(int level, Polynomial<F> c0) {
        TruncatedSeries r(level, c0.coefficient_field(), c0.table());
        r.coeffs_[0] = std::move(c0);
        return r;
    }

    /// Drop coefficients above `level` (level <= m).
    TruncatedSeries truncated(int new_level) const {
        if (new_level < 0 || new_level > level()) throw table_mismatch_error("truncation level out of range");
        std::vector<Polynomial<F>> c(coeffs_.begin(), coeffs_.begin() + new_level + 1);
        return TruncatedSeries(std::move(c));
    }

    bool operator==(const TruncatedSeries& o) const { return coeffs_ == o.coeffs_; }

private:
    void check_compatible(const TruncatedSeries& o) const {
        if (coeffs_.size() != o.coeffs_.size()) throw table_mismatch_error("series truncation levels differ");
        require_same_table(table(), o.table());
        require_same_field(coefficient_field(), o.coefficient_field());
    }

    std::vector<Polynomial<F>> coeffs_;
};

/// Evaluate a polynomial over base variables at truncated-series images,
/// one image per variable of f's table, all at one common level. The s-th
/// coefficient of the result is the prolonged polynomial F^(s) when the
/// images carry symbolic jet coordinates. Powers of each image are memoized
/// so repeated exponents cost one series multiplication each.
template <field F>
TruncatedSeries<F> ts_evaluate(const Polynomial<F>& f, const std::vector<TruncatedSeries<F>>& images) {
    if (images.size() != f.table()->size())
        throw domain_error("ts_evaluate: need one series image per variable");
    for (const auto& im : images) {
        if (im.level() != images[0].level()) throw table_mismatch_error("series truncation levels differ");
        require_same_table(images[0].table(), im.table());
        require_same_field(images[0].coefficient_field(), im.coefficient_field());
    }
    if (images.empty()) throw domain_error("ts_evaluate: need a nonempty variable table");
    require_same_field(f.coefficient_field(), images[0].coefficient_field());

    const F& fld = images[0].coefficient_field();
    const TablePtr& table = images[0].table();
    const int m = images[0].level();

    std::vector<std::vector<TruncatedSeries<F>>> powers(images.size());
    auto power_of = [&](std::size_t v, std::uint32_t e) -> const TruncatedSeries<F>& {
        auto& cache = powers[v];
        if (cache.empty())
            cache.push_back(TruncatedSeries<F>::constant(m, Polynomial<F>::constant(fld, table, fld.one())));
        while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
        return cache[e];
    };

    TruncatedSeries<F> result(m, fld, table);
    for (const auto& t : f.terms()) {
        TruncatedSeries<F> term = TruncatedSeries<F>::constant(m, Polynomial<F>::constant(fld, table, t.c));
        for (std::size_t v = 0; v < images.size(); ++v)
            if (t.m.e[v]) term = term * power_of(v, t.m.e[v]);
        result = result + term;
    }
    return result;
}

} // namespace jetforge
