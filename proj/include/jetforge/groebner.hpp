#pragma once

#include <jetforge/budget.hpp>
#include <jetforge/polynomial.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <vector>

namespace jetforge {

namespace gb_detail {

/// Engine-internal representation: terms sorted descending under the active
/// order, so leading terms sit at the front and reductions are list merges.
template <field F>
struct OPoly {
    using Term = typename Polynomial<F>::Term;
    std::vector<Term> t;

    bool is_zero() const { return t.empty(); }
    const Term& lt() const { return t.front(); }
};

template <field F>
OPoly<F> to_opoly(const Polynomial<F>& p, const MonomialOrder& ord) {
    OPoly<F> r;
    r.t.assign(p.terms().begin(), p.terms().end());
    std::sort(r.t.begin(), r.t.end(), [&](const auto& a, const auto& b) { return ord.compare(a.m, b.m) > 0; });
    return r;
}

template <field F>
Polynomial<F> from_opoly(const F& fld, const TablePtr& table, const OPoly<F>& p) {
    return Polynomial<F>::from_terms(fld, table, p.t);
}

/// s * x^mon * p, order-sorted input stays sorted (orders are multiplicative).
template <field F>
OPoly<F> mul_shift(const OPoly<F>& p, const typename F::Element& s, const Monomial& mon) {
    OPoly<F> r;
    r.t.reserve(p.t.size());
    for (const auto& t : p.t) {
        auto c = t.c * s;
        if (!c.is_zero()) r.t.push_back({t.m * mon, std::move(c)});
    }
    return r;
}

/// a - s * x^mon * b, both inputs sorted descending under ord.
template <field F>
OPoly<F> sub_scaled(const OPoly<F>& a, const typename F::Element& s, const Monomial& mon, const OPoly<F>& b,
                    const MonomialOrder& ord) {
    OPoly<F> r;
    r.t.reserve(a.t.size() + b.t.size());
    std::size_t i = 0, j = 0;
    while (i < a.t.size() && j < b.t.size()) {
        Monomial bm = b.t[j].m * mon;
        auto cmp = ord.compare(a.t[i].m, bm);
        if (cmp > 0) {
            r.t.push_back(a.t[i++]);
        } else if (cmp < 0) {
            auto c = -(s * b.t[j].c);
            if (!c.is_zero()) r.t.push_back({std::move(bm), std::move(c)});
            ++j;
        } else {
            auto c = a.t[i].c - s * b.t[j].c;
            if (!c.is_zero()) r.t.push_back({a.t[i].m, std::move(c)});
            ++i; ++j;
        }
    }
    for (; i < a.t.size(); ++i) r.t.push_back(a.t[i]);
    for (; j < b.t.size(); ++j) {
        auto c = -(s * b.t[j].c);
        if (!c.is_zero()) r.t.push_back({b.t[j].m * mon, std::move(c)});
    }
    return r;
}

/// Full normal form of f against the (not necessarily reduced) family G.
/// Divisor search order is fixed, so the result is deterministic for a
/// fixed G; against a reduced basis it is the canonical remainder.
template <field F>
OPoly<F> normal_form(OPoly<F> f, const std::vector<OPoly<F>>& G, const std::vector<bool>* alive,
                     const MonomialOrder& ord) {
    OPoly<F> rem;
    while (!f.is_zero()) {
        bool reduced = false;
        for (std::size_t k = 0; k < G.size(); ++k) {
            if (alive && !(*alive)[k]) continue;
            if (G[k].is_zero()) continue;
            if (G[k].lt().m.divides(f.lt().m)) {
                auto s = f.lt().c / G[k].lt().c;
                f = sub_scaled(f, s, f.lt().m / G[k].lt().m, G[k], ord);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem.t.push_back(f.lt());
            f.t.erase(f.t.begin());
        }
    }
    return rem;
}

} // namespace gb_detail

/// S-polynomial of f and g under ord (public for the post-hoc Buchberger
/// criterion checks in tests).
template <field F>
Polynomial<F> s_polynomial(const Polynomial<F>& f, const Polynomial<F>& g, const MonomialOrder& ord) {
    if (f.is_zero() || g.is_zero()) throw domain_error("s-polynomial of zero");
    const auto& tf = f.leading_term(ord);
    const auto& tg = g.leading_term(ord);
    Monomial l = lcm(tf.m, tg.m);
    Polynomial<F> a = f.scaled_shifted(f.coefficient_field().one() / tf.c, l / tf.m);
    Polynomial<F> b = g.scaled_shifted(g.coefficient_field().one() / tg.c, l / tg.m);
    return a - b;
}

/// Ideal with cached reduced Groebner bases, one per monomial order.
/// Value-semantic; copies share the generator list and the cache.
template <field F>
class Ideal {
public:
    Ideal(F fld, TablePtr table, std::vector<Polynomial<F>> gens)
        : data_(std::make_shared<Data>()), cache_(std::make_shared<Cache>()) {
        data_->field = std::move(fld);
        data_->table = std::move(table);
        for (auto& g : gens) {
            if (g.is_zero()) continue; // zero generators add nothing
            require_same_table(data_->table, g.table());
            require_same_field(data_->field, g.coefficient_field());
            data_->gens.push_back(std::move(g));
        }
    }

    static Ideal zero(const F& fld, const TablePtr& table) { return Ideal(fld, table, {}); }

    const F& coefficient_field() const { return data_->field; }
    const TablePtr& table() const { return data_->table; }
    const std::vector<Polynomial<F>>& generators() const { return data_->gens; }

    bool is_zero_ideal() const { return data_->gens.empty(); }

    /// Reduced Groebner basis: monic elements, no monomial of any element
    /// divisible by another element's leading monomial, sorted ascending by
    /// leading monomial. Unique for (ideal, order). Cached.
    const std::vector<Polynomial<F>>& groebner_basis(const MonomialOrder& ord, const Budget& budget = {}) const {
        {
            std::lock_guard<std::mutex> lock(cache_->mu);
            auto it = cache_->bases.find(ord);
            if (it != cache_->bases.end()) return it->second;
        }
        auto basis = buchberger(ord, budget);
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto [it, fresh] = cache_->bases.emplace(ord, std::move(basis));
        return it->second;
    }

    /// Normal form of f against the reduced basis; zero iff f lies in the ideal.
    Polynomial<F> reduce(const Polynomial<F>& f, const MonomialOrder& ord = MonomialOrder::grevlex(),
                         const Budget& budget = {}) const {
        require_same_table(data_->table, f.table());
        const auto& G = groebner_basis(ord, budget);
        std::vector<gb_detail::OPoly<F>> og;
        og.reserve(G.size());
        for (const auto& g : G) og.push_back(gb_detail::to_opoly(g, ord));
        auto nf = gb_detail::normal_form(gb_detail::to_opoly(f, ord), og, nullptr, ord);
        return gb_detail::from_opoly(data_->field, data_->table, nf);
    }

    bool contains(const Polynomial<F>& f, const MonomialOrder& ord = MonomialOrder::grevlex(),
                  const Budget& budget = {}) const {
        return reduce(f, ord, budget).is_zero();
    }

    /// 1 in I, i.e. V(I) is empty.
    bool is_unit(const Budget& budget = {}) const {
        const auto& G = groebner_basis(MonomialOrder::grevlex(), budget);
        return G.size() == 1 && G[0].is_constant() && !G[0].is_zero();
    }

    bool operator==(const Ideal&) const = delete; // use ideal_equal: generator lists are not canonical

private:
    struct Data {
        F field;
        TablePtr table;
        std::vector<Polynomial<F>> gens;
    };
    struct Cache {
        std::mutex mu;
        std::map<MonomialOrder, std::vector<Polynomial<F>>> bases;
    };

    std::vector<Polynomial<F>> buchberger(const MonomialOrder& ord, const Budget& budget) const;

    std::shared_ptr<Data> data_;
    std::shared_ptr<Cache> cache_;
};

// ---------------------------------------------------------------------------
// Buchberger with Gebauer-Moller pair elimination
// ---------------------------------------------------------------------------

template <field F>
std::vector<Polynomial<F>> Ideal<F>::buchberger(const MonomialOrder& ord, const Budget& budget) const {
    using OP = gb_detail::OPoly<F>;
    const F& fld = data_->field;
    const TablePtr& table = data_->table;

    struct Pair {
        std::size_t i, j;
        Monomial l;
        std::uint64_t deg;
    };

    std::vector<OP> G;
    std::vector<bool> alive;
    std::vector<Pair> pairs;

    // normal selection strategy: minimal lcm degree, ties by order on the
    // lcm, then by indices, so runs are reproducible
    auto pair_before = [&](const Pair& a, const Pair& b) {
        if (a.deg != b.deg) return a.deg < b.deg;
        auto cmp = ord.compare(a.l, b.l);
        if (cmp != 0) return cmp < 0;
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
    };

    // Gebauer-Moller update: add h, prune obsolete pairs, create new ones
    auto update = [&](OP h) {
        std::size_t t = G.size();
        Monomial hm = h.lt().m;

        struct Cand {
            std::size_t i;
            Monomial l;
            bool keep = true;
        };
        std::vector<Cand> cand;
        cand.reserve(t);
        for (std::size_t i = 0; i < t; ++i)
            if (alive[i]) cand.push_back({i, lcm(G[i].lt().m, hm)});

        // first criterion within the new pairs: drop (i,t) when another new
        // pair's lcm properly divides its lcm, and collapse equal lcms
        for (auto& a : cand) {
            if (!a.keep) continue;
            for (auto& b : cand) {
                if (&a == &b || !b.keep) continue;
                if (b.l.divides(a.l) && !(a.l == b.l)) { a.keep = false; break; }
            }
        }
        for (std::size_t x = 0; x < cand.size(); ++x) {
            if (!cand[x].keep) continue;
            for (std::size_t y = x + 1; y < cand.size(); ++y)
                if (cand[y].keep && cand[y].l == cand[x].l) cand[y].keep = false;
        }
        // product criterion
        for (auto& a : cand)
            if (a.keep && G[a.i].lt().m.coprime_with(hm)) a.keep = false;

        // chain criterion on old pairs: drop (i,j) when LM(h) divides
        // lcm(i,j) strictly finer than both new lcms
        std::erase_if(pairs, [&](const Pair& p) {
            if (!hm.divides(p.l)) return false;
            Monomial li = lcm(G[p.i].lt().m, hm);
            Monomial lj = lcm(G[p.j].lt().m, hm);
            return !(li == p.l) && !(lj == p.l);
        });

        for (auto& a : cand)
            if (a.keep) pairs.push_back({a.i, t, a.l, a.l.degree()});

        // mark superseded basis elements; they stay in place so pair indices
        // remain valid, minimalization drops them at the end
        for (std::size_t i = 0; i < t; ++i)
            if (alive[i] && hm.divides(G[i].lt().m)) alive[i] = false;

        G.push_back(std::move(h));
        alive.push_back(true);
        if (G.size() > budget.max_basis)
            throw budget_error("groebner basis size exceeded budget (" + std::to_string(budget.max_basis) + ")");
    };

    for (const auto& g : data_->gens) {
        auto h = gb_detail::to_opoly(primitive_part(g, ord), ord);
        h = gb_detail::normal_form(std::move(h), G, &alive, ord);
        if (!h.is_zero()) {
            auto hp = gb_detail::to_opoly(primitive_part(gb_detail::from_opoly(fld, table, h), ord), ord);
            update(std::move(hp));
        }
    }

    std::size_t processed = 0;
    while (!pairs.empty()) {
        auto best = std::min_element(pairs.begin(), pairs.end(), pair_before);
        Pair p = *best;
        pairs.erase(best);
        if (++processed > budget.max_pairs)
            throw budget_error("groebner pair count exceeded budget (" + std::to_string(budget.max_pairs) + ")");

        const OP& a = G[p.i];
        const OP& b = G[p.j];
        OP left = gb_detail::mul_shift(a, fld.one() / a.lt().c, p.l / a.lt().m);
        OP spoly = gb_detail::sub_scaled(left, fld.one() / b.lt().c, p.l / b.lt().m, b, ord);
        OP h = gb_detail::normal_form(std::move(spoly), G, &alive, ord);
        if (!h.is_zero()) {
            // content stripped after each reduction to control growth over Q
            auto hp = gb_detail::to_opoly(primitive_part(gb_detail::from_opoly(fld, table, h), ord), ord);
            update(std::move(hp));
        }
    }

    // minimalize: keep only elements whose leading monomial is not divisible
    // by another live element's leading monomial (equal leading monomials
    // cannot both be alive: update() retires the older one)
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < G.size(); ++i) {
        if (!alive[i]) continue;
        bool minimal = true;
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (i == j || !alive[j]) continue;
            if (G[j].lt().m.divides(G[i].lt().m)) { minimal = false; break; }
        }
        if (minimal) kept.push_back(i);
    }

    std::vector<gb_detail::OPoly<F>> mins;
    mins.reserve(kept.size());
    for (auto i : kept) mins.push_back(G[i]);

    // tail-reduce to the reduced basis, then make monic
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < mins.size(); ++i) {
            std::vector<bool> mask(mins.size(), true);
            mask[i] = false;
            auto nf = gb_detail::normal_form(mins[i], mins, &mask, ord);
            if (!(nf.t == mins[i].t)) {
                mins[i] = std::move(nf);
                changed = true;
            }
        }
    }

    std::vector<Polynomial<F>> out;
    out.reserve(mins.size());
    for (auto& m : mins) {
        auto p = gb_detail::from_opoly(fld, table, m);
        out.push_back(p.scaled(fld.one() / p.leading_term(ord).c));
    }
    std::sort(out.begin(), out.end(), [&](const Polynomial<F>& x, const Polynomial<F>& y) {
        return ord.compare(x.leading_term(ord).m, y.leading_term(ord).m) < 0;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Derived ideal operations
// ---------------------------------------------------------------------------

namespace gb_detail {

/// Append a fresh auxiliary variable to a table. The base name is chosen
/// outside the document grammar so it can never collide with user input.
inline TablePtr extend_table(const TablePtr& table, const std::string& tag, int salt = 0) {
    auto vars = table->vars();
    vars.push_back(VarId{"#" + tag + (salt ? std::to_string(salt) : ""), 0});
    return VariableTable::make(std::move(vars));
}

template <field F>
Polynomial<F> embed(const Polynomial<F>& p, const TablePtr& big) {
    std::vector<std::size_t> map(p.table()->size());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = i; // original table is a prefix
    return p.transplanted(big, map);
}

} // namespace gb_detail

/// Variable support of a polynomial as table positions.
template <field F>
std::vector<std::size_t> support(const Polynomial<F>& p) {
    std::vector<bool> seen(p.table()->size(), false);
    for (const auto& t : p.terms())
        for (std::size_t i = 0; i < t.m.e.size(); ++i)
            if (t.m.e[i]) seen[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) out.push_back(i);
    return out;
}

/// Elimination ideal I ∩ k[kept variables], returned over the restricted
/// table. Uses the indicator-weighted order, whose leading terms certify
/// freedom from the eliminated block.
template <field F>
Ideal<F> eliminate(const Ideal<F>& I, const std::vector<std::size_t>& keep_positions, const Budget& budget = {}) {
    const auto& table = I.table();
    std::vector<bool> keep(table->size(), false);
    for (auto i : keep_positions) keep.at(i) = true;
    std::vector<std::size_t> elim;
    for (std::size_t i = 0; i < table->size(); ++i)
        if (!keep[i]) elim.push_back(i);

    auto ord = MonomialOrder::eliminating(table->size(), elim);
    const auto& G = I.groebner_basis(ord, budget);

    std::vector<VarId> kept_vars;
    std::vector<std::size_t> position_map(table->size(), VariableTable::npos);
    for (std::size_t i = 0, k = 0; i < table->size(); ++i)
        if (keep[i]) {
            kept_vars.push_back(table->var(i));
            position_map[i] = k++;
        }
    auto small = VariableTable::make(std::move(kept_vars));

    std::vector<Polynomial<F>> gens;
    for (const auto& g : G) {
        bool pure = true;
        for (auto v : support(g))
            if (!keep[v]) { pure = false; break; }
        if (pure) gens.push_back(g.transplanted(small, position_map));
    }
    return Ideal<F>(I.coefficient_field(), small, std::move(gens));
}

/// Intersection I ∩ J via the auxiliary-variable trick:
/// eliminate t from t·I + (1-t)·J.
template <field F>
Ideal<F> intersect(const Ideal<F>& I, const Ideal<F>& J, const Budget& budget = {}) {
    require_same_table(I.table(), J.table());
    const F& fld = I.coefficient_field();
    auto big = gb_detail::extend_table(I.table(), "cut");
    std::size_t tpos = big->size() - 1;
    auto t = Polynomial<F>::variable(fld, big, tpos);
    auto one = Polynomial<F>::constant(fld, big, fld.one());
    std::vector<Polynomial<F>> gens;
    for (const auto& g : I.generators()) gens.push_back(t * gb_detail::embed(g, big));
    for (const auto& h : J.generators()) gens.push_back((one - t) * gb_detail::embed(h, big));
    Ideal<F> H(fld, big, std::move(gens));

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < tpos; ++i) keep.push_back(i);
    auto E = eliminate(H, keep, budget);
    // transplant back onto the original table object
    std::vector<std::size_t> idmap(I.table()->size());
    for (std::size_t i = 0; i < idmap.size(); ++i) idmap[i] = i;
    std::vector<Polynomial<F>> out;
    for (const auto& g : E.generators()) out.push_back(g.transplanted(I.table(), idmap));
    return Ideal<F>(fld, I.table(), std::move(out));
}

/// Exact quotient h / f; h must be a polynomial multiple of f.
template <field F>
Polynomial<F> divide_exact(const Polynomial<F>& h, const Polynomial<F>& f) {
    if (f.is_zero()) throw arithmetic_error("division by the zero polynomial");
    auto ord = MonomialOrder::grevlex();
    Polynomial<F> q = Polynomial<F>::zero(h.coefficient_field(), h.table());
    Polynomial<F> r = h;
    const auto& ft = f.leading_term(ord);
    while (!r.is_zero()) {
        const auto& rt = r.leading_term(ord);
        if (!ft.m.divides(rt.m)) throw arithmetic_error("divide_exact: not an exact multiple");
        auto c = rt.c / ft.c;
        Monomial m = rt.m / ft.m;
        q = q + Polynomial<F>::monomial(h.coefficient_field(), h.table(), m, c);
        r = r - f.scaled_shifted(c, m);
    }
    return q;
}

/// Ideal quotient (I : f) = { g : g·f ∈ I }, via (I ∩ (f)) / f.
template <field F>
Ideal<F> colon(const Ideal<F>& I, const Polynomial<F>& f, const Budget& budget = {}) {
    if (f.is_zero()) throw domain_error("colon by the zero polynomial");
    Ideal<F> Jf(I.coefficient_field(), I.table(), {f});
    auto cut = intersect(I, Jf, budget);
    std::vector<Polynomial<F>> gens;
    for (const auto& g : cut.generators()) gens.push_back(divide_exact(g, f));
    return Ideal<F>(I.coefficient_field(), I.table(), std::move(gens));
}

/// Saturation I : g^∞ for a single polynomial, by Rabinowitsch elimination:
/// (I + (1 - w·g)) ∩ k[x].
template <field F>
Ideal<F> saturate_single(const Ideal<F>& I, const Polynomial<F>& g, const Budget& budget = {}) {
    if (g.is_zero()) throw domain_error("saturation by the zero polynomial");
    const F& fld = I.coefficient_field();
    auto big = gb_detail::extend_table(I.table(), "sat");
    std::size_t wpos = big->size() - 1;
    auto w = Polynomial<F>::variable(fld, big, wpos);
    auto one = Polynomial<F>::constant(fld, big, fld.one());
    std::vector<Polynomial<F>> gens;
    for (const auto& h : I.generators()) gens.push_back(gb_detail::embed(h, big));
    gens.push_back(one - w * gb_detail::embed(g, big));
    Ideal<F> H(fld, big, std::move(gens));

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < wpos; ++i) keep.push_back(i);
    auto E = eliminate(H, keep, budget);
    std::vector<std::size_t> idmap(I.table()->size());
    for (std::size_t i = 0; i < idmap.size(); ++i) idmap[i] = i;
    std::vector<Polynomial<F>> out;
    for (const auto& h : E.generators()) out.push_back(h.transplanted(I.table(), idmap));
    return Ideal<F>(fld, I.table(), std::move(out));
}

/// Saturation I : J^∞ = ∩_g (I : g^∞) over the generators g of J. Removes
/// the components of V(I) lying inside V(J).
template <field F>
Ideal<F> saturate(const Ideal<F>& I, const Ideal<F>& J, const Budget& budget = {}) {
    require_same_table(I.table(), J.table());
    if (J.is_zero_ideal()) throw domain_error("saturation by the zero ideal");
    bool first = true;
    Ideal<F> acc = I;
    for (const auto& g : J.generators()) {
        auto Sg = saturate_single(I, g, budget);
        acc = first ? Sg : intersect(acc, Sg, budget);
        first = false;
    }
    return acc;
}

/// Radical membership by the Rabinowitsch trick: f ∈ √I iff
/// 1 ∈ I + (1 - w·f). Exact, no power bound.
template <field F>
bool radical_contains(const Ideal<F>& I, const Polynomial<F>& f, const Budget& budget = {}) {
    if (f.is_zero()) return true;
    const F& fld = I.coefficient_field();
    auto big = gb_detail::extend_table(I.table(), "rad");
    std::size_t wpos = big->size() - 1;
    auto w = Polynomial<F>::variable(fld, big, wpos);
    auto one = Polynomial<F>::constant(fld, big, fld.one());
    std::vector<Polynomial<F>> gens;
    for (const auto& h : I.generators()) gens.push_back(gb_detail::embed(h, big));
    gens.push_back(one - w * gb_detail::embed(f, big));
    return Ideal<F>(fld, big, std::move(gens)).is_unit(budget);
}

/// Bounded-power membership: the least k <= bound with f^k ∈ I, or 0.
template <field F>
int bounded_power_membership(const Ideal<F>& I, const Polynomial<F>& f, int bound,
                             const Budget& budget = {}) {
    Polynomial<F> p = f;
    for (int k = 1; k <= bound; ++k) {
        if (I.contains(p, MonomialOrder::grevlex(), budget)) return k;
        if (k < bound) p = p * f;
    }
    return 0;
}

/// Equality as ideals (not varieties): mutual membership of generators.
template <field F>
bool ideal_equal(const Ideal<F>& A, const Ideal<F>& B, const Budget& budget = {}) {
    require_same_table(A.table(), B.table());
    for (const auto& g : A.generators())
        if (!B.contains(g, MonomialOrder::grevlex(), budget)) return false;
    for (const auto& g : B.generators())
        if (!A.contains(g, MonomialOrder::grevlex(), budget)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Krull dimension
// ---------------------------------------------------------------------------

/// Dimension of k[table]/I: the size of the largest variable subset S with
/// no leading monomial of the reduced basis supported inside S (staircase
/// combinatorics on the leading-term ideal; order-independent result).
template <field F>
int krull_dimension(const Ideal<F>& I, const Budget& budget = {}) {
    const auto& G = I.groebner_basis(MonomialOrder::grevlex(), budget);
    const std::size_t n = I.table()->size();
    if (n > 63) throw budget_error("krull_dimension limited to tables of at most 63 variables");
    for (const auto& g : G)
        if (g.is_constant() && !g.is_zero()) throw domain_error("krull_dimension of the unit ideal");

    std::vector<std::uint64_t> supports;
    for (const auto& g : G) {
        std::uint64_t s = 0;
        const auto& m = g.leading_term(MonomialOrder::grevlex()).m;
        for (std::size_t i = 0; i < n; ++i)
            if (m.e[i]) s |= (1ull << i);
        supports.push_back(s);
    }

    int best = 0;
    std::size_t nodes = 0;
    // branch over variables; prune by the count still reachable
    auto rec = [&](auto&& self, std::size_t i, std::uint64_t chosen, int count) -> void {
        if (++nodes > (std::size_t{1} << 24))
            throw budget_error("krull_dimension staircase search exceeded its node budget");
        if (count + static_cast<int>(n - i) <= best) return;
        if (i == n) { best = std::max(best, count); return; }
        // include variable i when no staircase support falls inside
        std::uint64_t with = chosen | (1ull << i);
        bool ok = true;
        for (auto s : supports)
            if ((s & ~with) == 0) { ok = false; break; }
        if (ok) self(self, i + 1, with, count + 1);
        self(self, i + 1, chosen, count);
    };
    rec(rec, 0, 0, 0);
    return best;
}

} // namespace jetforge
