// A short tour of the library on three classical surfaces and curves.

#include <jetforge/geometry.hpp>

#include <iostream>

using namespace jetforge;
using F = RationalField;
using P = Polynomial<F>;

int main() {
    F Q;

    // the quadric cone xy + z^2 = 0 and its 2-jets
    auto t3 = VariableTable::make_base({"x", "y", "z"});
    auto x = P::variable(Q, t3, 0), y = P::variable(Q, t3, 1), z = P::variable(Q, t3, 2);
    AffinePresentation<F> cone(Q, t3, {x * y + z * z});
    auto J = prolong(cone, 2);

    std::cout << "== 2-jets of the quadric cone ==\n";
    for (int s = 0; s <= 2; ++s)
        std::cout << "F^(" << s << ") = " << J.generator(0, s).str() << "\n";
    std::cout << "dim X_2 = " << krull_dimension(J.ideal()) << "\n";
    auto fib = fiber_ideal(J, {Q.zero(), Q.zero(), Q.zero()});
    std::cout << "fiber over the origin: dimension " << krull_dimension(fib) << "\n\n";

    // the nodal cubic splits at level 1
    auto t2 = VariableTable::make_base({"x", "y"});
    auto cx = P::variable(Q, t2, 0), cy = P::variable(Q, t2, 1);
    AffinePresentation<F> nodal(Q, t2, {cx * cx - cy * cy - cx * cx * cx});
    auto J1 = prolong(nodal, 1);
    auto jt = J1.jet_table();
    SplitOptions<F> opts;
    opts.hints = {Ideal<F>(Q, jt, {P::variable(Q, jt, 0), P::variable(Q, jt, 1)})};
    auto rep = split_components(J1.ideal(), opts);
    std::cout << "== 1-jets of the nodal cubic ==\n";
    std::cout << "components: " << rep.components.size() << "\n";
    for (const auto& c : rep.components) std::cout << "  dimension " << c.dimension << "\n";
    std::cout << "\n";

    // a cylinder trapped in the singular locus of the Whitney umbrella
    AffinePresentation<F> umbrella(Q, t3, {x * y * y - z * z});
    auto ujt = make_jet_table(t3, 1);
    auto params = VariableTable::make({});
    std::vector<P> vals(ujt->size(), P::zero(Q, params));
    vals[ujt->find("x", 1)] = P::constant(Q, params, Q.one());
    JetPoint<F> prefix(1, ujt, params, vals);
    Budget budget;
    budget.depth = 4;
    auto forced = forced_vanishing(umbrella, prefix, 4, budget);
    std::cout << "== Whitney umbrella, prefix x = t ==\n";
    std::cout << "coefficients forced to vanish:";
    for (const auto& v : forced.forced) std::cout << " " << v.str();
    std::cout << "\n";
    return 0;
}
