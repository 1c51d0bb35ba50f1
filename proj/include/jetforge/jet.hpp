#pragma once

#include <jetforge/groebner.hpp>
#include <jetforge/series.hpp>

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace jetforge {

/// Affine variety presentation: an ordered variable table and a finite list
/// of nonzero generators (zero generators are dropped at construction).
template <field F>
class AffinePresentation {
public:
    AffinePresentation(F fld, TablePtr table, std::vector<Polynomial<F>> gens)
        : field_(std::move(fld)), table_(std::move(table)) {
        if (table_->size() < 1) throw domain_error("presentation needs at least one variable");
        for (auto& g : gens) {
            if (g.is_zero()) continue;
            require_same_table(table_, g.table());
            require_same_field(field_, g.coefficient_field());
            generators_.push_back(std::move(g));
        }
    }

    const F& coefficient_field() const { return field_; }
    const TablePtr& table() const { return table_; }
    const std::vector<Polynomial<F>>& generators() const { return generators_; }
    std::size_t variable_count() const { return table_->size(); }

    Ideal<F> ideal() const { return Ideal<F>(field_, table_, generators_); }

    /// True when every generator vanishes at the point.
    bool contains_point(const std::vector<typename F::Element>& x) const {
        for (const auto& g : generators_)
            if (!g.evaluate(x).is_zero()) return false;
        return true;
    }

    bool operator==(const AffinePresentation& o) const {
        return field_ == o.field_ && same_table(table_, o.table_) && generators_ == o.generators_;
    }

private:
    F field_;
    TablePtr table_;
    std::vector<Polynomial<F>> generators_;
};

/// Jet variable table for a base table at level m: all level-0 variables
/// first, then level 1, and so on, so truncation is a prefix restriction.
inline TablePtr make_jet_table(const TablePtr& base, int level) {
    std::vector<VarId> vars;
    vars.reserve(base->size() * static_cast<std::size_t>(level + 1));
    for (int l = 0; l <= level; ++l)
        for (const auto& v : base->vars()) {
            if (v.level != 0) throw domain_error("jet table requires a level-0 base table");
            vars.push_back(VarId{v.base, l});
        }
    return VariableTable::make(std::move(vars));
}

/// Weight of each jet-table position: the jet level of its variable.
inline std::vector<std::uint64_t> jet_weights(const TablePtr& jet_table) {
    std::vector<std::uint64_t> w;
    w.reserve(jet_table->size());
    for (const auto& v : jet_table->vars()) w.push_back(static_cast<std::uint64_t>(v.level));
    return w;
}

/// Every monomial of p has total weight exactly s under w.
template <field F>
bool is_isobaric(const Polynomial<F>& p, const std::vector<std::uint64_t>& w, std::uint64_t s) {
    for (const auto& t : p.terms())
        if (t.m.weighted_degree(w) != s) return false;
    return true;
}

/// Presentation of the m-jet scheme: generators F_i^(s) indexed by source
/// generator i and t-power s. Structurally zero F_i^(s) are retained so the
/// (i, s) grid stays positionally intact; is_structural_zero flags them.
template <field F>
class JetPresentation {
public:
    /// Raw constructor; invariants (F_i^(0) = f_i, isobaricity) are
    /// guaranteed when produced by prolong or truncated.
    JetPresentation(AffinePresentation<F> source, int level, TablePtr jet_table,
                    std::vector<std::vector<Polynomial<F>>> gens)
        : source_(std::move(source)), level_(level), jet_table_(std::move(jet_table)), gens_(std::move(gens)) {}

    const AffinePresentation<F>& source() const { return source_; }
    int level() const { return level_; }
    const TablePtr& jet_table() const { return jet_table_; }

    std::size_t generator_rows() const { return gens_.size(); }
    const Polynomial<F>& generator(std::size_t i, int s) const {
        return gens_.at(i).at(static_cast<std::size_t>(s));
    }
    bool is_structural_zero(std::size_t i, int s) const { return generator(i, s).is_zero(); }

    /// All generators in (i, s) order; zero rows skipped unless requested.
    std::vector<Polynomial<F>> flat_generators(bool include_structural_zeros = false) const {
        std::vector<Polynomial<F>> out;
        for (const auto& row : gens_)
            for (const auto& g : row)
                if (include_structural_zeros || !g.is_zero()) out.push_back(g);
        return out;
    }

    Ideal<F> ideal() const {
        return Ideal<F>(source_.coefficient_field(), jet_table_, flat_generators());
    }

    AffinePresentation<F> as_affine() const {
        return AffinePresentation<F>(source_.coefficient_field(), jet_table_, flat_generators());
    }

    std::vector<std::uint64_t> weights() const { return jet_weights(jet_table_); }

    bool operator==(const JetPresentation& o) const {
        return source_ == o.source_ && level_ == o.level_ && same_table(jet_table_, o.jet_table_) &&
               gens_ == o.gens_;
    }

private:
    AffinePresentation<F> source_;
    int level_;
    TablePtr jet_table_;
    std::vector<std::vector<Polynomial<F>>> gens_; // [i][s]
};

/// The universal substitution x_j -> sum_l x_j^(l) t^l as series over the
/// jet table (or any table containing the jet variables of the base).
template <field F>
std::vector<TruncatedSeries<F>> universal_jet_images(const F& fld, const TablePtr& base,
                                                     const TablePtr& jet_table, int level) {
    std::vector<TruncatedSeries<F>> images;
    images.reserve(base->size());
    for (const auto& v : base->vars()) {
        TruncatedSeries<F> s(level, fld, jet_table);
        for (int l = 0; l <= level; ++l) {
            auto pos = jet_table->find(v.base, l);
            if (pos == VariableTable::npos) throw domain_error("jet table misses " + VarId{v.base, l}.str());
            s.set_coefficient(l, Polynomial<F>::variable(fld, jet_table, pos));
        }
        images.push_back(std::move(s));
    }
    return images;
}

/// Equations of the m-jet scheme: F_i^(s) is the t^s-coefficient of f_i
/// evaluated at the universal substitution.
template <field F>
JetPresentation<F> prolong(const AffinePresentation<F>& P, int level) {
    if (level < 0) throw domain_error("jet level must be nonnegative");
    const F& fld = P.coefficient_field();
    auto jt = make_jet_table(P.table(), level);
    auto images = universal_jet_images(fld, P.table(), jt, level);

    std::vector<std::vector<Polynomial<F>>> gens;
    gens.reserve(P.generators().size());
    for (const auto& f : P.generators()) {
        auto series = ts_evaluate(f, images);
        std::vector<Polynomial<F>> row;
        row.reserve(static_cast<std::size_t>(level) + 1);
        for (int s = 0; s <= level; ++s) row.push_back(series.coefficient(s));
        gens.push_back(std::move(row));
    }
    return JetPresentation<F>(P, level, std::move(jt), std::move(gens));
}

/// Restriction of a jet presentation to a lower level. The F_i^(s) for
/// s <= m are literally the same polynomials; the result is recomputed
/// independently and the two must agree exactly.
template <field F>
JetPresentation<F> truncate_presentation(const JetPresentation<F>& J, int level) {
    if (level >= J.level() || level < 0)
        throw domain_error("truncation level must satisfy 0 <= m < m'");
    auto small = make_jet_table(J.source().table(), level);
    std::vector<std::size_t> prefix(J.jet_table()->size(), VariableTable::npos);
    for (std::size_t i = 0; i < small->size(); ++i) prefix[i] = i;

    std::vector<std::vector<Polynomial<F>>> gens;
    for (std::size_t i = 0; i < J.generator_rows(); ++i) {
        std::vector<Polynomial<F>> row;
        for (int s = 0; s <= level; ++s) row.push_back(J.generator(i, s).transplanted(small, prefix));
        gens.push_back(std::move(row));
    }
    JetPresentation<F> R(J.source(), level, small, std::move(gens));
    if (!(R == prolong(J.source(), level)))
        throw domain_error("truncate_presentation: restriction disagrees with direct prolongation");
    return R;
}

/// A point of a jet scheme: one polynomial entry per jet variable, over a
/// parameter table (empty for concrete points, indeterminates for generic
/// ones).
template <field F>
class JetPoint {
public:
    JetPoint(int level, TablePtr jet_table, TablePtr param_table, std::vector<Polynomial<F>> values)
        : level_(level), jet_table_(std::move(jet_table)), param_table_(std::move(param_table)),
          values_(std::move(values)) {
        if (values_.size() != jet_table_->size())
            throw domain_error("jet point needs one entry per jet variable");
        for (const auto& v : values_) require_same_table(param_table_, v.table());
    }

    static JetPoint from_scalars(const F& fld, int level, const TablePtr& jet_table,
                                 const std::vector<typename F::Element>& coords) {
        auto params = VariableTable::make({});
        std::vector<Polynomial<F>> vals;
        vals.reserve(coords.size());
        for (const auto& c : coords) vals.push_back(Polynomial<F>::constant(fld, params, c));
        return JetPoint(level, jet_table, params, std::move(vals));
    }

    int level() const { return level_; }
    const TablePtr& jet_table() const { return jet_table_; }
    const TablePtr& param_table() const { return param_table_; }
    const std::vector<Polynomial<F>>& values() const { return values_; }

    const Polynomial<F>& value(const std::string& base, int l) const {
        auto pos = jet_table_->find(base, l);
        if (pos == VariableTable::npos) throw domain_error("no jet variable " + VarId{base, l}.str());
        return values_[pos];
    }

    /// Substitute this point into a polynomial over the jet table.
    Polynomial<F> apply(const Polynomial<F>& f) const {
        require_same_table(jet_table_, f.table());
        return f.substitute(values_);
    }

    /// Every F_i^(s) of J vanishes under the assignment.
    bool satisfies(const JetPresentation<F>& J) const {
        require_same_table(jet_table_, J.jet_table());
        for (std::size_t i = 0; i < J.generator_rows(); ++i)
            for (int s = 0; s <= J.level(); ++s)
                if (!apply(J.generator(i, s)).is_zero()) return false;
        return true;
    }

    /// Coordinate series x_j(t) of this point, over the parameter table.
    std::vector<TruncatedSeries<F>> coordinate_series(const TablePtr& base) const {
        const F& fld = values_.front().coefficient_field();
        std::vector<TruncatedSeries<F>> out;
        out.reserve(base->size());
        for (const auto& v : base->vars()) {
            TruncatedSeries<F> s(level_, fld, param_table_);
            for (int l = 0; l <= level_; ++l) s.set_coefficient(l, value(v.base, l));
            out.push_back(std::move(s));
        }
        return out;
    }

    bool operator==(const JetPoint& o) const {
        return level_ == o.level_ && same_table(jet_table_, o.jet_table_) &&
               same_table(param_table_, o.param_table_) && values_ == o.values_;
    }

private:
    int level_;
    TablePtr jet_table_;
    TablePtr param_table_;
    std::vector<Polynomial<F>> values_;
};

/// Pointwise truncation: drop the coefficients above the new level.
template <field F>
JetPoint<F> truncate_point(const JetPoint<F>& a, const TablePtr& base, int level) {
    if (level >= a.level() || level < 0) throw domain_error("truncation level must satisfy 0 <= m < m'");
    auto jt = make_jet_table(base, level);
    std::vector<Polynomial<F>> vals;
    vals.reserve(jt->size());
    for (const auto& v : jt->vars()) vals.push_back(a.value(v.base, v.level));
    return JetPoint<F>(level, jt, a.param_table(), std::move(vals));
}

/// Section of the truncation: the constant m-jet at a point of X.
template <field F>
JetPoint<F> constant_jet(const AffinePresentation<F>& P, const std::vector<typename F::Element>& x,
                         int level) {
    if (x.size() != P.variable_count()) throw domain_error("point arity does not match the presentation");
    if (!P.contains_point(x)) throw domain_error("point does not lie on the variety");
    const F& fld = P.coefficient_field();
    auto jt = make_jet_table(P.table(), level);
    auto params = VariableTable::make({});
    std::vector<Polynomial<F>> vals;
    vals.reserve(jt->size());
    for (const auto& v : jt->vars()) {
        auto c = v.level == 0 ? x[P.table()->find(v.base, 0)] : fld.zero();
        vals.push_back(Polynomial<F>::constant(fld, params, c));
    }
    return JetPoint<F>(level, jt, params, std::move(vals));
}

/// The G_m scaling t -> s·t on jets: a^(l) -> s^l a^(l). Defined for every
/// s including 0, where it lands on the constant jet at the base point.
template <field F>
JetPoint<F> gm_act(const typename F::Element& s, const JetPoint<F>& a) {
    const F& fld = a.values().front().coefficient_field();
    std::vector<Polynomial<F>> vals;
    vals.reserve(a.values().size());
    for (std::size_t i = 0; i < a.values().size(); ++i) {
        int l = a.jet_table()->var(i).level;
        auto factor = fld.one();
        for (int k = 0; k < l; ++k) factor = factor * s;
        vals.push_back(a.values()[i].scaled(factor));
    }
    return JetPoint<F>(a.level(), a.jet_table(), a.param_table(), std::move(vals));
}

/// Morphism of affine presentations, given by coordinate images: one
/// polynomial over the source table per target variable.
template <field F>
struct PolynomialMap {
    AffinePresentation<F> source;
    AffinePresentation<F> target;
    std::vector<Polynomial<F>> images;

    PolynomialMap(AffinePresentation<F> src, AffinePresentation<F> tgt, std::vector<Polynomial<F>> imgs)
        : source(std::move(src)), target(std::move(tgt)), images(std::move(imgs)) {
        if (images.size() != target.variable_count())
            throw domain_error("polynomial map needs one image per target variable");
        for (const auto& im : images) require_same_table(source.table(), im.table());
    }

    /// Pullback of a polynomial on the target.
    Polynomial<F> pullback(const Polynomial<F>& g) const {
        require_same_table(target.table(), g.table());
        return g.substitute(images);
    }

    /// Each target generator must pull back into the source ideal.
    bool is_valid(const Budget& budget = {}) const {
        auto I = source.ideal();
        for (const auto& g : target.generators())
            if (!I.contains(pullback(g), MonomialOrder::grevlex(), budget)) return false;
        return true;
    }

    void validate(const Budget& budget = {}) const {
        if (!is_valid(budget))
            throw domain_error("map does not carry the source variety into the target variety");
    }

    /// Composition: this after phi (phi maps into this->source).
    PolynomialMap after(const PolynomialMap& phi) const {
        require_same_table(source.table(), phi.target.table());
        std::vector<Polynomial<F>> comp;
        comp.reserve(images.size());
        for (const auto& im : images) comp.push_back(im.substitute(phi.images));
        return PolynomialMap(phi.source, target, std::move(comp));
    }
};

/// Prolongation of a morphism: the image of y_k^(s) is the t^s-coefficient
/// of phi_k evaluated under the universal substitution. Level-0 images
/// reproduce phi, which is the commuting square with the projections.
template <field F>
PolynomialMap<F> prolong_map(const PolynomialMap<F>& phi, int level, const Budget& budget = {}) {
    phi.validate(budget);
    const F& fld = phi.source.coefficient_field();
    auto JX = prolong(phi.source, level);
    auto JY = prolong(phi.target, level);
    auto images = universal_jet_images(fld, phi.source.table(), JX.jet_table(), level);

    std::vector<Polynomial<F>> jet_images(JY.jet_table()->size(),
                                          Polynomial<F>::zero(fld, JX.jet_table()));
    for (std::size_t k = 0; k < phi.target.variable_count(); ++k) {
        auto series = ts_evaluate(phi.images[k], images);
        const auto& base = phi.target.table()->var(k).base;
        for (int s = 0; s <= level; ++s)
            jet_images[JY.jet_table()->find(base, s)] = series.coefficient(s);
    }
    return PolynomialMap<F>(JX.as_affine(), JY.as_affine(), std::move(jet_images));
}

/// Product presentation: concatenated tables and generator lists. Colliding
/// base names in the second factor get a numeric suffix, deterministically.
template <field F>
AffinePresentation<F> product_presentation(const AffinePresentation<F>& P, const AffinePresentation<F>& Q) {
    require_same_field(P.coefficient_field(), Q.coefficient_field());
    std::vector<VarId> vars = P.table()->vars();

    // rename colliding base names of the second factor, consistently across
    // all jet levels of that base
    std::set<std::string> taken;
    for (const auto& w : vars) taken.insert(w.base);
    std::map<std::string, std::string> rename;
    std::vector<std::size_t> qmap(Q.table()->size());
    for (std::size_t i = 0; i < Q.table()->size(); ++i) {
        VarId v = Q.table()->var(i);
        auto it = rename.find(v.base);
        if (it == rename.end()) {
            std::string name = v.base;
            int salt = 2;
            while (taken.count(name)) name = v.base + "_" + std::to_string(salt++);
            taken.insert(name);
            it = rename.emplace(v.base, std::move(name)).first;
        }
        qmap[i] = vars.size();
        vars.push_back(VarId{it->second, v.level});
    }
    auto table = VariableTable::make(std::move(vars));

    std::vector<std::size_t> pmap(P.table()->size());
    for (std::size_t i = 0; i < pmap.size(); ++i) pmap[i] = i;

    std::vector<Polynomial<F>> gens;
    for (const auto& g : P.generators()) gens.push_back(g.transplanted(table, pmap));
    for (const auto& g : Q.generators()) gens.push_back(g.transplanted(table, qmap));
    return AffinePresentation<F>(P.coefficient_field(), table, std::move(gens));
}

/// Independent verification of prolong: random scalar jet tuples, each
/// generator evaluated directly in truncated-series arithmetic with scalar
/// coefficients, compared coefficientwise against the F_i^(s).
struct OracleMismatch {
    std::size_t trial;
    std::size_t generator;
    int coefficient;
};

struct OracleReport {
    std::size_t trials = 0;
    std::vector<OracleMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

template <field F>
typename F::Element random_scalar(const F& fld, std::mt19937_64& rng) {
    if constexpr (std::is_same_v<F, RationalField>) {
        std::uniform_int_distribution<int> num(-9, 9);
        std::uniform_int_distribution<int> den(1, 4);
        return Rational(BigInt(num(rng)), BigInt(den(rng)));
    } else {
        std::uniform_int_distribution<std::uint64_t> d(0, fld.p - 1);
        return typename F::Element{d(rng), fld.p};
    }
}

template <field F>
OracleReport numeric_oracle_check(const JetPresentation<F>& J, std::size_t trials,
                                  std::uint64_t seed = 0x6a657466u) {
    const F& fld = J.source().coefficient_field();
    const auto& base = J.source().table();
    const int m = J.level();
    std::mt19937_64 rng(seed);
    auto params = VariableTable::make({});

    OracleReport report;
    report.trials = trials;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        // one scalar per jet variable, in table order
        std::vector<typename F::Element> tuple;
        tuple.reserve(J.jet_table()->size());
        for (std::size_t i = 0; i < J.jet_table()->size(); ++i) tuple.push_back(random_scalar(fld, rng));

        std::vector<TruncatedSeries<F>> images;
        images.reserve(base->size());
        for (const auto& v : base->vars()) {
            TruncatedSeries<F> s(m, fld, params);
            for (int l = 0; l <= m; ++l)
                s.set_coefficient(l, Polynomial<F>::constant(
                                         fld, params, tuple[J.jet_table()->find(v.base, l)]));
            images.push_back(std::move(s));
        }

        for (std::size_t i = 0; i < J.generator_rows(); ++i) {
            auto direct = ts_evaluate(J.source().generators()[i], images);
            for (int s = 0; s <= m; ++s) {
                auto via_F = J.generator(i, s).evaluate(tuple);
                if (!(direct.coefficient(s).constant_term() == via_F))
                    report.mismatches.push_back({trial, i, s});
            }
        }
    }
    return report;
}

} // namespace jetforge
