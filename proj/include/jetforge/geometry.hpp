#pragma once

#include <jetforge/factor.hpp>
#include <jetforge/jet.hpp>

#include <deque>
#include <functional>
#include <optional>
#include <vector>

namespace jetforge {

// ---------------------------------------------------------------------------
// Singular locus
// ---------------------------------------------------------------------------

namespace geo_detail {

template <field F>
Polynomial<F> determinant(const std::vector<std::vector<Polynomial<F>>>& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    Polynomial<F> det = Polynomial<F>::zero(a[0][0].coefficient_field(), a[0][0].table());
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j].is_zero()) continue;
        std::vector<std::vector<Polynomial<F>>> sub;
        sub.reserve(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Polynomial<F>> row;
            row.reserve(n - 1);
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(a[r][c]);
            sub.push_back(std::move(row));
        }
        auto cof = a[0][j] * determinant(sub);
        det = (j % 2 == 0) ? det + cof : det - cof;
    }
    return det;
}

inline void for_each_combination(std::size_t n, std::size_t k,
                                 const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i-- > 0) {
            if (idx[i] != i + n - k) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
    }
}

} // namespace geo_detail

/// Jacobian criterion: the ideal of the singular locus is generated by the
/// presentation's generators together with all c x c minors of the Jacobian,
/// where c = n - dim is recomputed from the staircase, never trusted from
/// the caller. By convention c = 0 yields the unit ideal (nothing singular)
/// and c > min(r, n) returns the input ideal (nothing smooth).
template <field F>
Ideal<F> singular_locus(const AffinePresentation<F>& P, const Budget& budget = {}) {
    auto I = P.ideal();
    if (I.is_unit(budget)) throw domain_error("singular locus of the empty variety");
    const F& fld = P.coefficient_field();
    const std::size_t n = P.variable_count();
    const std::size_t r = P.generators().size();
    const int dim = krull_dimension(I, budget);
    const std::size_t c = n - static_cast<std::size_t>(dim);

    if (c == 0)
        return Ideal<F>(fld, P.table(), {Polynomial<F>::constant(fld, P.table(), fld.one())});
    if (c > std::min(r, n)) return I;

    std::vector<std::vector<Polynomial<F>>> jac(r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) jac[i].push_back(P.generators()[i].derivative(j));

    std::vector<Polynomial<F>> gens = P.generators();
    geo_detail::for_each_combination(r, c, [&](const std::vector<std::size_t>& rows) {
        geo_detail::for_each_combination(n, c, [&](const std::vector<std::size_t>& cols) {
            std::vector<std::vector<Polynomial<F>>> sub;
            for (auto i : rows) {
                std::vector<Polynomial<F>> row;
                for (auto j : cols) row.push_back(jac[i][j]);
                sub.push_back(std::move(row));
            }
            auto det = geo_detail::determinant(sub);
            if (!det.is_zero()) gens.push_back(std::move(det));
        });
    });
    return Ideal<F>(fld, P.table(), std::move(gens));
}

// ---------------------------------------------------------------------------
// Fibers of the projection to the base
// ---------------------------------------------------------------------------

/// Ideal of the fiber of X_m -> X over a point x: substitute the level-0
/// coordinates and keep the relations among the n*m higher jet variables.
template <field F>
Ideal<F> fiber_ideal(const JetPresentation<F>& J, const std::vector<typename F::Element>& x) {
    const F& fld = J.source().coefficient_field();
    if (!J.source().contains_point(x)) throw domain_error("point does not lie on the variety");

    std::vector<VarId> high;
    for (const auto& v : J.jet_table()->vars())
        if (v.level >= 1) high.push_back(v);
    auto fiber_table = VariableTable::make(std::move(high));

    std::vector<Polynomial<F>> images;
    images.reserve(J.jet_table()->size());
    for (const auto& v : J.jet_table()->vars()) {
        if (v.level == 0) {
            images.push_back(Polynomial<F>::constant(fld, fiber_table, x[J.source().table()->find(v.base, 0)]));
        } else {
            images.push_back(Polynomial<F>::variable(fld, fiber_table, fiber_table->find(v)));
        }
    }

    std::vector<Polynomial<F>> gens;
    for (const auto& g : J.flat_generators()) {
        auto h = g.substitute(images);
        if (!h.is_zero()) gens.push_back(std::move(h));
    }
    return Ideal<F>(fld, fiber_table, std::move(gens));
}

// ---------------------------------------------------------------------------
// Component splitting (certified heuristic)
// ---------------------------------------------------------------------------

template <field F>
struct Component {
    Ideal<F> ideal;
    int dimension = -1;
    bool contains_input = false; ///< each input generator reduces to zero mod this candidate
};

template <field F>
struct ComponentReport {
    Ideal<F> input;
    std::vector<Component<F>> components;
    bool complete = false;

    ComponentReport(Ideal<F> in) : input(std::move(in)) {}
};

template <field F>
struct SplitOptions {
    std::vector<Ideal<F>> hints;        ///< known-subvariety ideals, tried in order
    bool derive_jacobian_hints = true;  ///< fall back to a Jacobian-derived hint per candidate
    std::size_t max_steps = 64;         ///< branching steps before the report goes incomplete
};

namespace geo_detail {

/// Drop generators lying in the ideal of the remaining ones, so candidate
/// generator lists stay reviewable and certifiable.
template <field F>
std::vector<Polynomial<F>> minimalize_generators(const Ideal<F>& J, const Budget& budget) {
    std::vector<Polynomial<F>> gens = J.generators();
    for (std::size_t i = gens.size(); i-- > 0;) {
        std::vector<Polynomial<F>> rest;
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (j != i) rest.push_back(gens[j]);
        Ideal<F> R(J.coefficient_field(), J.table(), rest);
        if (R.contains(gens[i], MonomialOrder::grevlex(), budget)) gens.erase(gens.begin() + i);
    }
    return gens;
}

/// Jacobian-derived subvariety hint for a bare ideal: generators plus the
/// codimension-many minors of their Jacobian.
template <field F>
std::optional<Ideal<F>> jacobian_hint(const Ideal<F>& J, const Budget& budget) {
    if (J.is_zero_ideal()) return std::nullopt;
    AffinePresentation<F> P(J.coefficient_field(), J.table(), J.generators());
    auto M = singular_locus(P, budget);
    if (M.is_unit(budget)) return std::nullopt;
    return M;
}

} // namespace geo_detail

/// Heuristic component splitter. Branches on (a) certified generator
/// factorizations and (b) saturation against known subvarieties (caller
/// hints, then a Jacobian-derived one). Candidates carry containment
/// certificates; the completeness flag is true only when every candidate
/// generator is certified irreducible over the ground field and pairwise
/// saturations are stable. Budget exhaustion yields a partial report
/// flagged incomplete, not an error.
template <field F>
ComponentReport<F> split_components(const Ideal<F>& I, const SplitOptions<F>& opts = {},
                                    const Budget& budget = {}) {
    ComponentReport<F> report(I);
    const F& fld = I.coefficient_field();
    const auto& table = I.table();
    for (const auto& Z : opts.hints) require_same_table(table, Z.table());

    struct Work {
        Ideal<F> J;
        std::size_t next_hint;
        bool jacobian_tried;
    };
    std::deque<Work> queue;
    queue.push_back({I, 0, false});
    std::vector<Ideal<F>> out;
    bool clean = true;
    std::size_t steps = 0;

    try {
        while (!queue.empty()) {
            if (++steps > opts.max_steps) {
                clean = false;
                for (auto& w : queue) out.push_back(std::move(w.J));
                break;
            }
            Work w = std::move(queue.front());
            queue.pop_front();

            if (w.J.is_unit(budget)) continue; // empty variety

            // (a) factor a generator and branch over the factors. The union
            // over ALL factors covers V(J); when a factor already lies in J
            // the branch is vacuous (its child is J itself) and must not be
            // taken, or coverage would be lost.
            bool branched = false;
            for (const auto& g : w.J.generators()) {
                auto factors = try_split_generator(g);
                if (!factors) continue;
                bool vacuous = false;
                for (const auto& f : *factors)
                    if (w.J.contains(f, MonomialOrder::grevlex(), budget)) { vacuous = true; break; }
                if (vacuous) continue;
                for (const auto& f : *factors) {
                    auto gens = w.J.generators();
                    gens.push_back(f);
                    queue.push_back({Ideal<F>(fld, table, std::move(gens)), w.next_hint, w.jacobian_tried});
                }
                branched = true;
                break;
            }
            if (branched) continue;

            // (b) saturate against a known subvariety and branch
            bool hinted = false;
            while (w.next_hint < opts.hints.size() && !hinted) {
                const Ideal<F>& Z = opts.hints[w.next_hint];
                ++w.next_hint;
                auto sat = saturate(w.J, Z, budget);
                if (ideal_equal(sat, w.J, budget)) continue; // no component inside V(Z)
                auto gens = w.J.generators();
                for (const auto& z : Z.generators()) gens.push_back(z);
                Ideal<F> plus(fld, table, std::move(gens));
                if (!sat.is_unit(budget)) queue.push_back({sat, w.next_hint, w.jacobian_tried});
                if (!plus.is_unit(budget)) queue.push_back({plus, w.next_hint, w.jacobian_tried});
                hinted = true;
            }
            if (hinted) continue;

            if (opts.derive_jacobian_hints && !w.jacobian_tried && !w.J.is_zero_ideal()) {
                w.jacobian_tried = true;
                auto M = geo_detail::jacobian_hint(w.J, budget);
                if (M) {
                    auto sat = saturate(w.J, *M, budget);
                    if (!ideal_equal(sat, w.J, budget)) {
                        auto gens = w.J.generators();
                        for (const auto& z : M->generators()) gens.push_back(z);
                        Ideal<F> plus(fld, table, std::move(gens));
                        if (!sat.is_unit(budget)) queue.push_back({sat, w.next_hint, true});
                        if (!plus.is_unit(budget)) queue.push_back({plus, w.next_hint, true});
                        continue;
                    }
                }
            }

            out.push_back(std::move(w.J));
        }
    } catch (const budget_error&) {
        clean = false;
        for (auto& w : queue) out.push_back(std::move(w.J));
    }

    // canonicalize candidate generator lists
    std::vector<Ideal<F>> cands;
    for (auto& J : out) {
        try {
            cands.emplace_back(fld, table, geo_detail::minimalize_generators(J, budget));
        } catch (const budget_error&) {
            clean = false;
            cands.push_back(std::move(J));
        }
    }

    // dedup (same ideal) and absorb candidates contained in another one
    std::vector<bool> dropped(cands.size(), false);
    try {
        for (std::size_t i = 0; i < cands.size(); ++i)
            for (std::size_t j = i + 1; j < cands.size(); ++j)
                if (!dropped[i] && !dropped[j] && ideal_equal(cands[i], cands[j], budget))
                    dropped[j] = true;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (dropped[i]) continue;
            for (std::size_t j = 0; j < cands.size(); ++j) {
                if (i == j || dropped[j]) continue;
                // V(i) inside V(j): every generator of j vanishes on V(i)
                bool inside = true;
                for (const auto& g : cands[j].generators())
                    if (!radical_contains(cands[i], g, budget)) { inside = false; break; }
                if (inside) { dropped[i] = true; break; }
            }
        }
    } catch (const budget_error&) {
        clean = false;
    }

    std::vector<Ideal<F>> keep;
    for (std::size_t i = 0; i < cands.size(); ++i)
        if (!dropped[i]) keep.push_back(std::move(cands[i]));

    // certify and measure
    bool all_irreducible = true;
    for (const auto& J : keep) {
        Component<F> comp{J};
        try {
            comp.dimension = J.is_zero_ideal() ? static_cast<int>(table->size()) : krull_dimension(J, budget);
        } catch (const budget_error&) {
            clean = false;
        }
        comp.contains_input = true;
        for (const auto& g : I.generators())
            if (!J.contains(g, MonomialOrder::grevlex(), budget)) { comp.contains_input = false; break; }
        for (const auto& g : J.generators())
            if (certify_irreducible(g) != Irreducibility::irreducible) { all_irreducible = false; break; }
        report.components.push_back(std::move(comp));
    }

    // pairwise saturation stability
    bool stable = true;
    try {
        for (std::size_t i = 0; i < report.components.size() && stable; ++i)
            for (std::size_t j = 0; j < report.components.size() && stable; ++j) {
                if (i == j) continue;
                const auto& A = report.components[i].ideal;
                const auto& B = report.components[j].ideal;
                if (B.is_zero_ideal()) continue;
                if (!ideal_equal(saturate(A, B, budget), A, budget)) stable = false;
            }
    } catch (const budget_error&) {
        clean = false;
        stable = false;
    }

    std::sort(report.components.begin(), report.components.end(),
              [](const Component<F>& a, const Component<F>& b) {
                  if (a.dimension != b.dimension) return a.dimension > b.dimension;
                  const auto& ga = a.ideal.generators();
                  const auto& gb = b.ideal.generators();
                  for (std::size_t k = 0; k < std::min(ga.size(), gb.size()); ++k) {
                      auto cmp = poly_compare(ga[k], gb[k]);
                      if (cmp != 0) return cmp < 0;
                  }
                  return ga.size() < gb.size();
              });

    report.complete = clean && stable && all_irreducible;
    return report;
}

// ---------------------------------------------------------------------------
// Arcs: kernels, thin/fat verdicts, cylinders
// ---------------------------------------------------------------------------

/// Polynomial arc of X: one polynomial in t (and optional parameters) per
/// coordinate. The table carries t at position 0 and parameters after it.
template <field F>
class ArcPolynomial {
public:
    ArcPolynomial(AffinePresentation<F> variety, TablePtr arc_table, std::vector<Polynomial<F>> coords)
        : variety_(std::move(variety)), arc_table_(std::move(arc_table)), coords_(std::move(coords)) {
        if (arc_table_->size() < 1 || !(arc_table_->var(0) == VarId{"t", 0}))
            throw domain_error("arc table must carry t at position 0");
        if (coords_.size() != variety_.variable_count())
            throw domain_error("arc needs one coordinate image per variable");
        for (const auto& c : coords_) require_same_table(arc_table_, c.table());
        for (const auto& f : variety_.generators())
            if (!f.substitute(coords_).is_zero())
                throw domain_error("arc does not lie on the variety");
    }

    const AffinePresentation<F>& variety() const { return variety_; }
    const TablePtr& arc_table() const { return arc_table_; }
    const std::vector<Polynomial<F>>& coordinates() const { return coords_; }

private:
    AffinePresentation<F> variety_;
    TablePtr arc_table_;
    std::vector<Polynomial<F>> coords_;
};

template <field F>
struct ArcKernelReport {
    Ideal<F> kernel; ///< over the base table
    bool fat = false; ///< kernel equals the ideal of X (injective pullback)
};

/// Kernel of the coordinate-ring map of a polynomial arc, by eliminating t
/// (and any parameters) from (x_j - alpha_j). The arc is fat exactly when
/// the kernel reduces to the ideal of X.
template <field F>
ArcKernelReport<F> arc_kernel(const ArcPolynomial<F>& a, const Budget& budget = {}) {
    const F& fld = a.variety().coefficient_field();
    const auto& base = a.variety().table();
    const auto& at = a.arc_table();

    // combined table: arc variables (renamed out of the way) then base vars
    std::vector<VarId> vars;
    for (std::size_t i = 0; i < at->size(); ++i) vars.push_back(VarId{"#arc" + std::to_string(i), 0});
    for (const auto& v : base->vars()) vars.push_back(v);
    auto big = VariableTable::make(std::move(vars));

    std::vector<std::size_t> arc_map(at->size());
    for (std::size_t i = 0; i < at->size(); ++i) arc_map[i] = i;
    std::vector<std::size_t> base_map(base->size());
    for (std::size_t j = 0; j < base->size(); ++j) base_map[j] = at->size() + j;

    std::vector<Polynomial<F>> gens;
    for (std::size_t j = 0; j < base->size(); ++j) {
        auto xj = Polynomial<F>::variable(fld, big, base_map[j]);
        gens.push_back(xj - a.coordinates()[j].transplanted(big, arc_map));
    }
    Ideal<F> graph(fld, big, std::move(gens));
    auto E = eliminate(graph, base_map, budget);

    std::vector<std::size_t> idmap(base->size());
    for (std::size_t j = 0; j < base->size(); ++j) idmap[j] = j;
    std::vector<Polynomial<F>> kg;
    for (const auto& g : E.generators()) kg.push_back(g.transplanted(base, idmap));
    ArcKernelReport<F> report{Ideal<F>(fld, base, std::move(kg))};
    report.fat = ideal_equal(report.kernel, a.variety().ideal(), budget);
    return report;
}

/// Finite-level thinness test: every generator of Z evaluates to the zero
/// truncated series on the jet prefix. True is necessary-but-not-sufficient
/// evidence that arcs through the prefix factor through V(Z).
template <field F>
bool is_thin_at_level(const JetPoint<F>& prefix, const AffinePresentation<F>& X, const Ideal<F>& Z,
                      int level) {
    require_same_table(X.table(), Z.table());
    if (level < 0 || level > prefix.level()) throw domain_error("level exceeds the prefix level");
    auto series = prefix.coordinate_series(X.table());
    std::vector<TruncatedSeries<F>> cut;
    cut.reserve(series.size());
    for (auto& s : series) cut.push_back(s.truncated(level));
    for (const auto& g : Z.generators())
        if (!ts_evaluate(g, cut).is_zero()) return false;
    return true;
}

namespace geo_detail {

/// Parameter table and coordinate series for a jet prefix extended by fresh
/// coefficient variables at levels m+1 .. m+depth.
template <field F>
struct Extension {
    TablePtr params;
    std::vector<TruncatedSeries<F>> images;
    std::vector<VarId> fresh;
};

template <field F>
Extension<F> extend_prefix(const AffinePresentation<F>& X, const JetPoint<F>& a, int depth) {
    if (depth < 1) throw domain_error("extension depth must be positive");
    const F& fld = X.coefficient_field();
    const int m = a.level();
    const int M = m + depth;

    std::vector<VarId> pv = a.param_table()->vars();
    std::vector<VarId> fresh;
    for (int l = m + 1; l <= M; ++l)
        for (const auto& v : X.table()->vars()) {
            VarId id{v.base, l};
            if (a.param_table()->find(id) != VariableTable::npos)
                throw domain_error("prefix parameters collide with extension coefficients");
            pv.push_back(id);
            fresh.push_back(id);
        }
    auto params = VariableTable::make(std::move(pv));

    std::vector<std::size_t> old_map(a.param_table()->size());
    for (std::size_t i = 0; i < old_map.size(); ++i) old_map[i] = i;

    std::vector<TruncatedSeries<F>> images;
    images.reserve(X.table()->size());
    for (const auto& v : X.table()->vars()) {
        TruncatedSeries<F> s(M, fld, params);
        for (int l = 0; l <= m; ++l) s.set_coefficient(l, a.value(v.base, l).transplanted(params, old_map));
        for (int l = m + 1; l <= M; ++l)
            s.set_coefficient(l, Polynomial<F>::variable(fld, params, params->find(v.base, l)));
        images.push_back(std::move(s));
    }
    return {params, std::move(images), std::move(fresh)};
}

} // namespace geo_detail

template <field F>
struct EscapeWitness {
    std::size_t generator_index;
    Polynomial<F> generator; ///< over the base table
    int level;
    Polynomial<F> coefficient; ///< nonzero polynomial in the extension parameters
};

/// Generic-lift escape certificate: extend the prefix with indeterminate
/// coefficients and return the first generator of Z with a symbolically
/// nonzero series coefficient. Z must be a proper ideal strictly containing
/// the ideal of X (a proper closed subvariety).
template <field F>
std::optional<EscapeWitness<F>> cylinder_escape(const AffinePresentation<F>& X, const JetPoint<F>& a,
                                                const Ideal<F>& Z, int depth, const Budget& budget = {}) {
    require_same_table(X.table(), Z.table());
    if (Z.is_unit(budget)) throw domain_error("Z must be a proper ideal");
    auto IX = X.ideal();
    for (const auto& f : X.generators())
        if (!Z.contains(f, MonomialOrder::grevlex(), budget))
            throw domain_error("Z must contain the ideal of X");
    bool strict = false;
    for (const auto& z : Z.generators())
        if (!IX.contains(z, MonomialOrder::grevlex(), budget)) { strict = true; break; }
    if (!strict) throw domain_error("Z must strictly contain the ideal of X");
    if (!a.satisfies(prolong(X, a.level()))) throw domain_error("prefix is not a jet of X");

    auto ext = geo_detail::extend_prefix(X, a, depth);
    for (std::size_t gi = 0; gi < Z.generators().size(); ++gi) {
        auto series = ts_evaluate(Z.generators()[gi], ext.images);
        for (int l = 0; l <= series.level(); ++l)
            if (!series.coefficient(l).is_zero())
                return EscapeWitness<F>{gi, Z.generators()[gi], l, series.coefficient(l)};
    }
    return std::nullopt;
}

template <field F>
struct ForcedVanishingReport {
    std::vector<VarId> forced; ///< extension coefficients provably zero on every lift
    Ideal<F> constraints;      ///< the finite-level constraint ideal in the parameters
    int depth = 0;
    int power_bound = 0;
};

/// Finite-level forced vanishing: extend the prefix by indeterminate
/// coefficients, impose every F_i^(s) = 0 up to level m+depth, and report
/// the extension coefficients v with v^k in the constraint ideal for some
/// k <= power_bound. Evidence at the checked depth, not an arc-level proof.
template <field F>
ForcedVanishingReport<F> forced_vanishing(const AffinePresentation<F>& X, const JetPoint<F>& a,
                                          int depth, const Budget& budget = {}) {
    if (!a.satisfies(prolong(X, a.level()))) throw domain_error("prefix is not a jet of X");
    auto ext = geo_detail::extend_prefix(X, a, depth);
    const F& fld = X.coefficient_field();

    std::vector<Polynomial<F>> cons;
    for (const auto& f : X.generators()) {
        auto series = ts_evaluate(f, ext.images);
        for (int s = 0; s <= series.level(); ++s)
            if (!series.coefficient(s).is_zero()) cons.push_back(series.coefficient(s));
    }
    ForcedVanishingReport<F> report{{}, Ideal<F>(fld, ext.params, std::move(cons)), depth, budget.power_bound};

    for (const auto& v : ext.fresh) {
        auto pos = ext.params->find(v);
        auto poly = Polynomial<F>::variable(fld, ext.params, pos);
        if (bounded_power_membership(report.constraints, poly, budget.power_bound, budget) > 0)
            report.forced.push_back(v);
    }
    return report;
}

} // namespace jetforge
