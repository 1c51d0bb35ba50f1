#pragma once

#include <jetforge/document.hpp>
#include <jetforge/geometry.hpp>
#include <jetforge/version.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace jetforge::cli {

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

struct Options {
    int level = 0;
    int to = -1;
    std::string point;
    std::string jet;
    std::string arc;
    std::string against;
    std::string images;
    std::string target_path;
    std::vector<std::string> hints;
    std::size_t trials = 100;
    std::uint64_t seed = 20260810;
    std::size_t max_steps = 64;
    bool no_auto_hint = false;
    Budget budget;
};

namespace detail {

inline const char* finite_level_note =
    "note: finite-level evidence at the checked depth; not a proof of the arc-space statement";

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw domain_error("cannot read input file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Lift a polynomial over the base ring into a jet table of that ring.
template <field F>
Polynomial<F> lift_to_jet(const Polynomial<F>& p, const TablePtr& jet_table) {
    std::vector<std::size_t> map(p.table()->size());
    for (std::size_t i = 0; i < map.size(); ++i) {
        map[i] = jet_table->find(p.table()->var(i));
        if (map[i] == VariableTable::npos)
            throw domain_error("variable " + p.table()->var(i).str() + " missing from the jet table");
    }
    return p.transplanted(jet_table, map);
}

/// A comma-separated polynomial list: either the label of a declared hint
/// (lifted onto the target table) or an inline expression list parsed over
/// the target table directly.
template <field F>
std::vector<Polynomial<F>> resolve_polys(const SystemDocument<F>& doc, const std::string& spec,
                                         const TablePtr& target) {
    if (const auto* h = doc.find_hint(spec)) {
        std::vector<Polynomial<F>> out;
        for (const auto& p : h->polys) out.push_back(lift_to_jet(p, target));
        return out;
    }
    auto toks = doc_detail::tokenize(spec, 1);
    doc_detail::ExprParser<F> parser(toks, doc.field, target);
    return parser.parse_list();
}

template <field F>
std::vector<typename F::Element> base_point(const SystemDocument<F>& doc, const std::string& label) {
    const auto* p = doc.find_point(label);
    if (!p) throw domain_error("no point named " + label);
    if (p->coords.size() != doc.ring->size())
        throw domain_error("point " + label + " is not a base point (needs exactly one value per variable)");
    return p->coords;
}

/// A declared point with n(m+1) coordinates, read as an m-jet in the
/// level-major layout of the jet table.
template <field F>
JetPoint<F> jet_point(const SystemDocument<F>& doc, const std::string& label) {
    const auto* p = doc.find_point(label);
    if (!p) throw domain_error("no point named " + label);
    const std::size_t n = doc.ring->size();
    if (p->coords.empty() || p->coords.size() % n != 0)
        throw domain_error("point " + label + " has arity " + std::to_string(p->coords.size()) +
                           ", not a multiple of " + std::to_string(n));
    int level = static_cast<int>(p->coords.size() / n) - 1;
    auto jt = make_jet_table(doc.ring, level);
    return JetPoint<F>::from_scalars(doc.field, level, jt, p->coords);
}

template <field F>
void print_presentation_like(std::ostream& body, const JetPresentation<F>& J,
                             const MonomialOrder& ord = MonomialOrder::grevlex()) {
    body << "field " << J.source().coefficient_field().name() << "\n";
    body << "ring";
    for (const auto& v : J.jet_table()->vars()) body << " " << v.str();
    body << "\n";
    body << "generators:\n";
    for (std::size_t i = 0; i < J.generator_rows(); ++i)
        for (int s = 0; s <= J.level(); ++s) {
            body << "F[" << (i + 1) << "][" << s << "] = " << J.generator(i, s).str(ord);
            if (J.is_structural_zero(i, s)) body << " (structural zero)";
            body << "\n";
        }
}

template <field F>
void print_ideal_lines(std::ostream& body, const Ideal<F>& I,
                       const MonomialOrder& ord = MonomialOrder::grevlex()) {
    if (I.generators().empty()) {
        body << "0\n";
        return;
    }
    for (const auto& g : I.generators()) body << g.str(ord) << "\n";
}

// --- subcommand bodies -----------------------------------------------------

template <field F>
void cmd_prolong(const SystemDocument<F>& doc, const Options& o, std::ostream& body) {
    print_presentation_like(body, prolong(doc.presentation(), o.level));
}

template <field F>
void cmd_truncate(const SystemDocument<F>& doc, const Options& o, std::ostream& body) {
    if (o.to < 0) throw domain_error("truncate needs --to");
    auto J = prolong(doc.presentation(), o.level);
    print_presentation_like(body, truncate_presentation(J, o.to));
}

template <field F>
void cmd_fiber(const SystemDocument<F>& doc, const Options& o, std::ostream& body) {
    auto x = base_point(doc, o.point);
    auto J = prolong(doc.presentation(), o.level);
    auto fib = fiber_ideal(J, x);
    body << "point: " << o.point << "\n";
    body << "ring";
    for (const auto& v : fib.table()->vars()) body << " " << v.str();
    body << "\n";
    body << "generators:\n";
    print_ideal_lines(body, fib);
    body << "dimension: " << krull_dimension(fib, o.budget) << "\n";
}

template <field F>
void cmd_dim(const SystemDocument<F>& doc, const Options& o, std::ostream& body) {
    int d = 0;
    if (!o.point.empty()) {
        auto x = base_point(doc, o.point);
        auto fib = fiber_ideal(prolong(doc.presentation(), o.level), x);
        d = krull_dimension(fib, o.budget);
    } else if (o.level == 0) {
        d = krull_dimension(doc.presentation().ideal(), o.budget);
    } else {
        d = krull_dimension(prolong(doc.presentation(), o.level).ideal(), o.budget);
    }
    body << "dimension: " << d << "\n";
}

template <field F>
void cmd_singular(const SystemDocument<F>& doc, const Options& o, std::ostream& body) {
    auto P = o.level == 0 ? doc.presentation() : prolong(doc.presentation(), o.level).as_affine();
    auto S = singular_locus(P, o.budget);
    body << "ring";
    for (const auto& v : S.table()->vars()) body << " " << v.str();
    body << "\n";
    body << "basis:\n";
    const auto& G = S.groebner_basis(MonomialOrder::grevlex(), o.budget);
    if (G.empty()) body << "0\n";
    for (const auto& g : G) body << g.str() << "\n";
}

template <field F>
void cmd_components(const SystemDocument<F>& doc, const Options& o, std::ostream& body) {
    Ideal<F> I = o.level == 0 ? doc.presentation().ideal() : prolong(doc.presentation(), o.level).ideal();
    SplitOptions<F> opts;
    opts.max_steps = o.max_steps;
    opts.derive_jacobian_hints = !o.no_auto_hint;
    for (const auto& spec : o.hints)
        opts.hints.emplace_back(doc.field, I.table(), resolve_polys(doc, spec, I.table()));
    auto rep = split_components(I, opts, o.budget);
    body << "components: " << rep.components.size() << "\n";
    body << "complete: " << (rep.complete ? "true" : "false") << "\n";
    for (std::size_t i = 0; i < rep.components.size(); ++i) {
        const auto& c = rep.components[i];
        body << "component " << (i + 1) << ":\n";
        body << "dimension: " << c.dimension << "\n";
        body << "contains-input: " << (c.contains_input ? "true" : "false") << "\n";
        body << "generators:\n";
        print_ideal_lines(body, c.ideal);
    }
}

template <field F>
void cmd_map(const SystemDocument<F>& doc, const SystemDocument<F>& target, const Options& o,
             std::ostream& body) {
    auto toks = doc_detail::tokenize(o.images, 1);
    doc_detail::ExprParser<F> parser(toks, doc.field, doc.ring);
    auto images = parser.parse_list();
    PolynomialMap<F> phi(doc.presentation(), target.presentation(), images);
    auto phim = prolong_map(phi, o.level, o.budget);
    body << "map:\n";
    for (std::size_t k = 0; k < phim.target.table()->size(); ++k)
        body << phim.target.table()->var(k).str() << " -> " << phim.images[k].str() << "\n";
}

template <field F>
void cmd_product(const SystemDocument<F>& doc, const SystemDocument<F>& second, const Options& o,
                 std::ostream& body) {
    auto prod = product_presentation(doc.presentation(), second.presentation());
    if (o.level > 0) {
        print_presentation_like(body, prolong(prod, o.level));
        return;
    }
    SystemDocument<F> out;
    out.field = doc.field;
    out.ring = prod.table();
    out.generators = prod.generators();
    body << print_canonical(out);
}

template <field F>
void cmd_arc_kernel(const SystemDocument<F>& doc, const Options& o, std::ostream& body) {
    const auto* a = doc.find_arc(o.arc);
    if (!a) throw domain_error("no arc named " + o.arc);
    auto arc_table = a->coords.front().table();
    ArcPolynomial<F> arc(doc.presentation(), arc_table, a->coords);
    auto rep = arc_kernel(arc, o.budget);
    body << "arc: " << o.arc << "\n";
    body << "kernel:\n";
    print_ideal_lines(body, rep.kernel);
    body << "verdict: " << (rep.fat ? "fat" : "thin") << "\n";
}

template <field F>
void cmd_thin(const SystemDocument<F>& doc, const Options& o, std::ostream& body) {
    auto a = jet_point(doc, o.jet);
    auto P = doc.presentation();
    Ideal<F> Z(doc.field, doc.ring, resolve_polys(doc, o.against, doc.ring));
    int level = o.to >= 0 ? o.to : a.level();
    bool thin = is_thin_at_level(a, P, Z, level);
    body << "thin-at-level: " << (thin ? "true" : "false") << "\n";
    body << "level: " << level << "\n";
    body << finite_level_note << "\n";
}

template <field F>
void cmd_escape(const SystemDocument<F>& doc, const Options& o, std::ostream& body) {
    auto a = jet_point(doc, o.jet);
    auto P = doc.presentation();
    Ideal<F> Z(doc.field, doc.ring, resolve_polys(doc, o.against, doc.ring));
    auto wit = cylinder_escape(P, a, Z, o.budget.depth, o.budget);
    if (wit) {
        body << "witness: generator " << (wit->generator_index + 1) << ", level " << wit->level << "\n";
        body << "generator: " << wit->generator.str() << "\n";
        body << "coefficient: " << wit->coefficient.str() << "\n";
    } else {
        body << "witness: none found (depth " << o.budget.depth << ")\n";
    }
    body << finite_level_note << "\n";
}

template <field F>
void cmd_forced(const SystemDocument<F>& doc, const Options& o, std::ostream& body) {
    auto a = jet_point(doc, o.jet);
    auto rep = forced_vanishing(doc.presentation(), a, o.budget.depth, o.budget);
    body << "forced:";
    if (rep.forced.empty()) body << " none";
    for (const auto& v : rep.forced) body << " " << v.str();
    body << "\n";
    body << "depth: " << rep.depth << "\n";
    body << "power-bound: " << rep.power_bound << "\n";
    body << finite_level_note << "\n";
}

template <field F>
void cmd_oracle(const SystemDocument<F>& doc, const Options& o, std::ostream& body) {
    auto J = prolong(doc.presentation(), o.level);
    auto rep = numeric_oracle_check(J, o.trials, o.seed);
    body << "trials: " << rep.trials << "\n";
    body << "mismatches: " << rep.mismatches.size() << "\n";
    for (const auto& mm : rep.mismatches)
        body << "mismatch: trial " << mm.trial << " generator " << (mm.generator + 1) << " coefficient "
             << mm.coefficient << "\n";
}

inline Budget env_budget() {
    Budget b;
    const char* env = std::getenv("JETFORGE_BUDGET");
    if (!env) return b;
    std::string s(env);
    std::size_t start = 0;
    while (start <= s.size()) {
        auto end = s.find(',', start);
        if (end == std::string::npos) end = s.size();
        auto item = s.substr(start, end - start);
        auto eq = item.find('=');
        if (eq != std::string::npos) {
            auto key = item.substr(0, eq);
            auto val = std::stoll(item.substr(eq + 1));
            if (key == "max-pairs") b.max_pairs = static_cast<std::size_t>(val);
            else if (key == "max-basis") b.max_basis = static_cast<std::size_t>(val);
            else if (key == "depth") b.depth = static_cast<int>(val);
            else if (key == "power-bound") b.power_bound = static_cast<int>(val);
        }
        start = end + 1;
    }
    return b;
}

} // namespace detail

/// Run one CLI command. args excludes the program name. Reports go to out,
/// diagnostics to err. Exit codes: 0 success, 1 domain error, 2 usage
/// error, 3 budget exhaustion.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"jet schemes of affine varieties: prolongation and analysis"};
    app.require_subcommand(1);

    Options o;
    o.budget = detail::env_budget();

    std::string path, second_path;

    auto add_common = [&](CLI::App* sub, bool with_file = true) {
        sub->add_option("--max-pairs", o.budget.max_pairs, "Groebner S-pair budget");
        sub->add_option("--max-basis", o.budget.max_basis, "Groebner basis-size budget");
        sub->add_option("--depth", o.budget.depth, "extension depth for arc-level probes");
        sub->add_option("--power-bound", o.budget.power_bound, "bounded-power membership cap");
        if (with_file) sub->add_option("file", path, "system document")->required();
    };

    auto* prolong_cmd = app.add_subcommand("prolong", "prolonged equations of the m-jet scheme");
    prolong_cmd->add_option("--level", o.level, "jet level m")->required();
    add_common(prolong_cmd);

    auto* truncate_cmd = app.add_subcommand("truncate", "restrict a jet presentation to a lower level");
    truncate_cmd->add_option("--level", o.level, "jet level m'")->required();
    truncate_cmd->add_option("--to", o.to, "target level m < m'")->required();
    add_common(truncate_cmd);

    auto* fiber_cmd = app.add_subcommand("fiber", "fiber of X_m -> X over a named point");
    fiber_cmd->add_option("--level", o.level, "jet level m")->required();
    fiber_cmd->add_option("--point", o.point, "point label")->required();
    add_common(fiber_cmd);

    auto* dim_cmd = app.add_subcommand("dim", "Krull dimension of the (jet) ideal or a fiber");
    dim_cmd->add_option("--level", o.level, "jet level m (0 = the base variety)");
    dim_cmd->add_option("--fiber", o.point, "point label; measure the fiber over it");
    add_common(dim_cmd);

    auto* singular_cmd = app.add_subcommand("singular", "singular locus via the Jacobian criterion");
    singular_cmd->add_option("--level", o.level, "jet level m (0 = the base variety)");
    add_common(singular_cmd);

    auto* comp_cmd = app.add_subcommand("components", "heuristic component splitting");
    comp_cmd->add_option("--level", o.level, "jet level m (0 = the base variety)");
    comp_cmd->add_option("--hint", o.hints, "hint label or inline polynomial list");
    comp_cmd->add_option("--max-steps", o.max_steps, "branching step budget");
    comp_cmd->add_flag("--no-auto-hint", o.no_auto_hint, "disable Jacobian-derived hints");
    add_common(comp_cmd);

    auto* map_cmd = app.add_subcommand("map", "prolong a polynomial map between presentations");
    map_cmd->add_option("--level", o.level, "jet level m")->required();
    map_cmd->add_option("--target", second_path, "target system document")->required();
    map_cmd->add_option("--images", o.images, "comma-separated images of the target variables")->required();
    add_common(map_cmd);

    auto* product_cmd = app.add_subcommand("product", "product presentation of two documents");
    product_cmd->add_option("--level", o.level, "also prolong the product to this level");
    add_common(product_cmd);
    product_cmd->add_option("second", second_path, "second system document")->required();

    auto* arck_cmd = app.add_subcommand("arc-kernel", "kernel and fat/thin verdict of a named arc");
    arck_cmd->add_option("--arc", o.arc, "arc label")->required();
    add_common(arck_cmd);

    auto* thin_cmd = app.add_subcommand("thin", "finite-level thinness of a jet prefix against Z");
    thin_cmd->add_option("--jet", o.jet, "jet point label")->required();
    thin_cmd->add_option("--against", o.against, "subvariety ideal: hint label or inline list")->required();
    thin_cmd->add_option("--level", o.to, "test level (default: the jet's level)");
    add_common(thin_cmd);

    auto* escape_cmd = app.add_subcommand("escape", "generic-lift escape witness for a cylinder");
    escape_cmd->add_option("--jet", o.jet, "jet point label")->required();
    escape_cmd->add_option("--against", o.against, "subvariety ideal: hint label or inline list")->required();
    add_common(escape_cmd);

    auto* forced_cmd = app.add_subcommand("forced", "extension coefficients forced to vanish");
    forced_cmd->add_option("--jet", o.jet, "jet point label")->required();
    add_common(forced_cmd);

    auto* oracle_cmd = app.add_subcommand("oracle", "random scalar cross-check of the prolongation");
    oracle_cmd->add_option("--level", o.level, "jet level m")->required();
    oracle_cmd->add_option("--trials", o.trials, "number of random tuples");
    oracle_cmd->add_option("--seed", o.seed, "random seed");
    add_common(oracle_cmd);

    std::vector<const char*> argv;
    argv.push_back("jetforge");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
            out << app.help() << "\n";
            return 0;
        } catch (const CLI::ParseError& e) {
            err << "usage error: " << e.what() << "\n";
            return 2;
        }

        auto text = detail::read_file(path);
        auto doc = parse_system(text);

        std::ostringstream body;
        std::string second_text;

        if (*map_cmd || *product_cmd) {
            second_text = detail::read_file(second_path);
            auto second = parse_system(second_text);
            if (doc.index() != second.index())
                throw field_mismatch_error("the two documents declare different coefficient fields");
            std::visit(
                [&](auto& d) {
                    using Doc = std::decay_t<decltype(d)>;
                    const auto& s = std::get<Doc>(second);
                    if (!(d.field == s.field))
                        throw field_mismatch_error("the two documents declare different coefficient fields");
                    if (*map_cmd) detail::cmd_map(d, s, o, body);
                    else detail::cmd_product(d, s, o, body);
                },
                doc);
        } else {
            std::visit(
                [&](auto& d) {
                    if (*prolong_cmd) detail::cmd_prolong(d, o, body);
                    else if (*truncate_cmd) detail::cmd_truncate(d, o, body);
                    else if (*fiber_cmd) detail::cmd_fiber(d, o, body);
                    else if (*dim_cmd) detail::cmd_dim(d, o, body);
                    else if (*singular_cmd) detail::cmd_singular(d, o, body);
                    else if (*comp_cmd) detail::cmd_components(d, o, body);
                    else if (*arck_cmd) detail::cmd_arc_kernel(d, o, body);
                    else if (*thin_cmd) detail::cmd_thin(d, o, body);
                    else if (*escape_cmd) detail::cmd_escape(d, o, body);
                    else if (*forced_cmd) detail::cmd_forced(d, o, body);
                    else if (*oracle_cmd) detail::cmd_oracle(d, o, body);
                },
                doc);
        }

        std::string cmdline;
        for (const auto& a : args) cmdline += (cmdline.empty() ? "" : " ") + a;
        out << "jetforge " << version_string << "\n";
        out << "command: " << cmdline << "\n";
        out << "input: " << path << " fnv1a64=" << hex64(fnv1a64(text)) << "\n";
        if (*map_cmd || *product_cmd)
            out << "input: " << second_path << " fnv1a64=" << hex64(fnv1a64(second_text)) << "\n";
        out << "---\n";
        out << body.str();
        return 0;
    } catch (const budget_error& e) {
        err << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace jetforge::cli
