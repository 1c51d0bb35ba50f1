#pragma once

#include <jetforge/jet.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace jetforge {

// ---------------------------------------------------------------------------
// Tokenizer for the polynomial expression grammar
// ---------------------------------------------------------------------------

namespace doc_detail {

struct Token {
    enum class Kind { integer, name, plus, minus, star, caret, slash, lparen, rparen, comma, colon, end };
    Kind kind;
    std::string text;
    int line;
    int column;
};

/// Digit-run token to integer. cpp_int's string constructor would read a
/// leading zero as an octal prefix, so strip leading zeros first.
inline BigInt big_from_digits(const std::string& digits) {
    std::size_t i = 0;
    while (i + 1 < digits.size() && digits[i] == '0') ++i;
    return BigInt(digits.substr(i));
}

inline std::vector<Token> tokenize(std::string_view s, int line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        int col = static_cast<int>(i) + 1;
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Kind::integer, std::string(s.substr(i, j - i)), line, col});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Token::Kind::name, std::string(s.substr(i, j - i)), line, col});
            i = j;
            continue;
        }
        Token::Kind k;
        switch (c) {
        case '+': k = Token::Kind::plus; break;
        case '-': k = Token::Kind::minus; break;
        case '*': k = Token::Kind::star; break;
        case '^': k = Token::Kind::caret; break;
        case '/': k = Token::Kind::slash; break;
        case '(': k = Token::Kind::lparen; break;
        case ')': k = Token::Kind::rparen; break;
        case ',': k = Token::Kind::comma; break;
        case ':': k = Token::Kind::colon; break;
        default:
            throw parse_error(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back({k, std::string(1, c), line, col});
        ++i;
    }
    out.push_back({Token::Kind::end, "", line, static_cast<int>(s.size()) + 1});
    return out;
}

/// Recursive-descent parser for the document polynomial grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ['^' INT]
///   atom   := INT | '(' INT '/' INT ')' | NAME ['(' INT ')'] | '(' expr ')'
/// Juxtaposition is not multiplication; '*' is mandatory.
template <field F>
class ExprParser {
public:
    ExprParser(const std::vector<Token>& toks, const F& fld, const TablePtr& table)
        : toks_(toks), fld_(fld), table_(table) {}

    Polynomial<F> parse() {
        auto p = expr();
        expect(Token::Kind::end, "end of expression");
        return p;
    }

    /// Parse a comma-separated list of expressions up to end-of-line.
    std::vector<Polynomial<F>> parse_list() {
        std::vector<Polynomial<F>> out;
        out.push_back(expr());
        while (peek().kind == Token::Kind::comma) {
            ++pos_;
            out.push_back(expr());
        }
        expect(Token::Kind::end, "end of expression");
        return out;
    }

private:
    const Token& peek(std::size_t off = 0) const {
        return toks_[std::min(pos_ + off, toks_.size() - 1)];
    }
    const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    void expect(Token::Kind k, const std::string& what) {
        if (peek().kind != k)
            throw parse_error("expected " + what, peek().line, peek().column);
        ++pos_;
    }

    Polynomial<F> expr() {
        bool neg = false;
        if (peek().kind == Token::Kind::minus) { neg = true; ++pos_; }
        auto p = term();
        if (neg) p = -p;
        while (peek().kind == Token::Kind::plus || peek().kind == Token::Kind::minus) {
            bool sub = next().kind == Token::Kind::minus;
            auto q = term();
            p = sub ? p - q : p + q;
        }
        return p;
    }

    Polynomial<F> term() {
        auto p = factor();
        while (peek().kind == Token::Kind::star) {
            ++pos_;
            p = p * factor();
        }
        return p;
    }

    Polynomial<F> factor() {
        auto p = atom();
        if (peek().kind == Token::Kind::caret) {
            ++pos_;
            const Token& t = peek();
            if (t.kind != Token::Kind::integer)
                throw parse_error("expected integer exponent after '^'", t.line, t.column);
            ++pos_;
            auto e = parse_small_int(t, 1000000, "exponent");
            return p.pow(static_cast<std::uint64_t>(e));
        }
        return p;
    }

    Polynomial<F> atom() {
        const Token& t = peek();
        switch (t.kind) {
        case Token::Kind::integer: {
            ++pos_;
            return Polynomial<F>::constant(fld_, table_, fld_.from_fraction(big_from_digits(t.text), BigInt(1)));
        }
        case Token::Kind::lparen: {
            // '(' INT '/' INT ')' is a rational literal, anything else a group
            if (peek(1).kind == Token::Kind::integer && peek(2).kind == Token::Kind::slash) {
                ++pos_;
                const Token& num = peek();
                ++pos_;
                ++pos_; // slash
                const Token& den = peek();
                if (den.kind != Token::Kind::integer)
                    throw parse_error("expected integer denominator", den.line, den.column);
                ++pos_;
                expect(Token::Kind::rparen, "')'");
                BigInt n = big_from_digits(num.text), d = big_from_digits(den.text);
                if (d == 0) throw parse_error("zero denominator", den.line, den.column);
                return Polynomial<F>::constant(fld_, table_, from_fraction_checked(n, d, den));
            }
            ++pos_;
            auto p = expr();
            expect(Token::Kind::rparen, "')'");
            return p;
        }
        case Token::Kind::name: {
            ++pos_;
            int level = 0;
            if (peek().kind == Token::Kind::lparen) {
                ++pos_;
                const Token& lv = peek();
                if (lv.kind != Token::Kind::integer)
                    throw parse_error("expected integer jet level", lv.line, lv.column);
                ++pos_;
                level = static_cast<int>(parse_small_int(lv, 1000000, "jet level"));
                expect(Token::Kind::rparen, "')'");
            }
            auto posv = table_->find(t.text, level);
            if (posv == VariableTable::npos)
                throw parse_error("unknown variable " + VarId{t.text, level}.str(), t.line, t.column);
            return Polynomial<F>::variable(fld_, table_, posv);
        }
        default:
            throw parse_error("expected a number, variable, or '('", t.line, t.column);
        }
    }

    long long parse_small_int(const Token& t, long long cap, const std::string& what) {
        BigInt v = big_from_digits(t.text);
        if (v > cap) throw parse_error(what + " too large", t.line, t.column);
        return v.convert_to<long long>();
    }

    typename F::Element from_fraction_checked(const BigInt& n, const BigInt& d, const Token& at) {
        try {
            return fld_.from_fraction(n, d);
        } catch (const arithmetic_error& e) {
            throw parse_error(e.what(), at.line, at.column);
        }
    }

    const std::vector<Token>& toks_;
    std::size_t pos_ = 0;
    const F& fld_;
    const TablePtr& table_;
};

} // namespace doc_detail

// ---------------------------------------------------------------------------
// System documents
// ---------------------------------------------------------------------------

/// A parsed input document: field and ring declarations, generator list and
/// the optional named points, arcs, and hint ideals.
template <field F>
struct SystemDocument {
    struct NamedPoint {
        std::string label;
        std::vector<typename F::Element> coords;
        bool operator==(const NamedPoint&) const = default;
    };
    struct NamedArc {
        std::string label;
        std::vector<Polynomial<F>> coords; ///< over the arc table {t}
        bool operator==(const NamedArc&) const = default;
    };
    struct NamedHint {
        std::string label;
        std::vector<Polynomial<F>> polys; ///< over the ring table
        bool operator==(const NamedHint&) const = default;
    };

    F field;
    TablePtr ring;
    std::vector<Polynomial<F>> generators;
    std::vector<NamedPoint> points;
    std::vector<NamedArc> arcs;
    std::vector<NamedHint> hints;

    AffinePresentation<F> presentation() const { return AffinePresentation<F>(field, ring, generators); }

    const NamedPoint* find_point(const std::string& label) const {
        for (const auto& p : points)
            if (p.label == label) return &p;
        return nullptr;
    }
    const NamedArc* find_arc(const std::string& label) const {
        for (const auto& a : arcs)
            if (a.label == label) return &a;
        return nullptr;
    }
    const NamedHint* find_hint(const std::string& label) const {
        for (const auto& h : hints)
            if (h.label == label) return &h;
        return nullptr;
    }

    bool operator==(const SystemDocument& o) const {
        return field == o.field && same_table(ring, o.ring) && generators == o.generators &&
               points == o.points && arcs == o.arcs && hints == o.hints;
    }
};

using AnyDocument = std::variant<SystemDocument<RationalField>, SystemDocument<PrimeField>>;

namespace doc_detail {

struct Line {
    std::string text;
    int number;
};

inline std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    int n = 1;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            out.push_back({std::string(text.substr(start, i - start)), n++});
            start = i + 1;
        }
    }
    return out;
}

inline bool blank(const std::string& s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

inline std::string first_word(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
    return s.substr(i, j - i);
}

template <field F>
SystemDocument<F> parse_body(const F& fld, const std::vector<Line>& lines, std::size_t idx) {
    SystemDocument<F> doc;
    doc.field = fld;

    // ring declaration
    while (idx < lines.size() && blank(lines[idx].text)) ++idx;
    if (idx >= lines.size() || first_word(lines[idx].text) != "ring")
        throw parse_error("expected a 'ring' declaration", idx < lines.size() ? lines[idx].number : 0, 1);
    {
        auto toks = tokenize(lines[idx].text, lines[idx].number);
        std::vector<std::string> names;
        std::size_t k = 1; // skip 'ring'
        while (toks[k].kind != Token::Kind::end) {
            if (toks[k].kind != Token::Kind::name)
                throw parse_error("expected a variable name", toks[k].line, toks[k].column);
            names.push_back(toks[k].text);
            ++k;
        }
        if (names.empty()) throw parse_error("ring needs at least one variable", lines[idx].number, 1);
        try {
            doc.ring = VariableTable::make_base(names);
        } catch (const table_mismatch_error& e) {
            throw parse_error(e.what(), lines[idx].number, 1);
        }
        ++idx;
    }

    auto arc_table = VariableTable::make({VarId{"t", 0}});
    bool in_ideal = false;

    auto parse_labelled = [&](const Line& ln, const std::string& keyword)
        -> std::pair<std::string, std::vector<Token>> {
        auto toks = tokenize(ln.text, ln.number);
        // toks[0] == keyword
        if (toks.size() < 3 || toks[1].kind != Token::Kind::name)
            throw parse_error("expected a label after '" + keyword + "'", ln.number, 1);
        if (toks[2].kind != Token::Kind::colon)
            throw parse_error("expected ':' after the label", toks[2].line, toks[2].column);
        std::string label = toks[1].text;
        std::vector<Token> rest(toks.begin() + 3, toks.end());
        return {label, rest};
    };

    for (; idx < lines.size(); ++idx) {
        const auto& ln = lines[idx];
        if (blank(ln.text)) continue;
        auto word = first_word(ln.text);
        if (word == "ideal") {
            auto toks = tokenize(ln.text, ln.number);
            if (toks.size() < 2 || toks[1].kind != Token::Kind::colon)
                throw parse_error("expected 'ideal:'", ln.number, 1);
            in_ideal = true;
            continue;
        }
        if (word == "point") {
            in_ideal = false;
            auto [label, rest] = parse_labelled(ln, "point");
            if (doc.find_point(label)) throw parse_error("duplicate point label " + label, ln.number, 1);
            ExprParser<F> p(rest, fld, doc.ring);
            std::vector<typename F::Element> coords;
            for (const auto& value : p.parse_list()) {
                if (!value.is_constant())
                    throw parse_error("point coordinates must be constants", ln.number, 1);
                coords.push_back(value.constant_term());
            }
            if (coords.size() % doc.ring->size() != 0)
                throw parse_error("point arity must be a multiple of the ring size", ln.number, 1);
            doc.points.push_back({label, std::move(coords)});
            continue;
        }
        if (word == "arc") {
            in_ideal = false;
            auto [label, rest] = parse_labelled(ln, "arc");
            if (doc.find_arc(label)) throw parse_error("duplicate arc label " + label, ln.number, 1);
            ExprParser<F> p(rest, fld, arc_table);
            auto coords = p.parse_list();
            if (coords.size() != doc.ring->size())
                throw parse_error("arc needs one coordinate per ring variable", ln.number, 1);
            doc.arcs.push_back({label, std::move(coords)});
            continue;
        }
        if (word == "hint") {
            in_ideal = false;
            auto [label, rest] = parse_labelled(ln, "hint");
            if (doc.find_hint(label)) throw parse_error("duplicate hint label " + label, ln.number, 1);
            ExprParser<F> p(rest, fld, doc.ring);
            doc.hints.push_back({label, p.parse_list()});
            continue;
        }
        if (!in_ideal)
            throw parse_error("unexpected line (expected ideal:, point, arc, or hint)", ln.number, 1);
        auto toks = tokenize(ln.text, ln.number);
        ExprParser<F> p(toks, fld, doc.ring);
        doc.generators.push_back(p.parse());
    }
    return doc;
}

} // namespace doc_detail

/// Parse a full system document. The field declaration selects the
/// coefficient field at runtime, hence the variant result.
inline AnyDocument parse_system(std::string_view text) {
    using namespace doc_detail;
    auto lines = split_lines(text);
    std::size_t idx = 0;
    while (idx < lines.size() && blank(lines[idx].text)) ++idx;
    if (idx >= lines.size()) throw parse_error("empty document", 1, 1);
    auto toks = tokenize(lines[idx].text, lines[idx].number);
    if (toks[0].kind != Token::Kind::name || toks[0].text != "field")
        throw parse_error("expected a 'field' declaration", lines[idx].number, 1);
    if (toks.size() < 2 || toks[1].kind != Token::Kind::name)
        throw parse_error("expected 'Q' or 'Fp <prime>'", lines[idx].number, 1);

    if (toks[1].text == "Q") {
        if (toks[2].kind != Token::Kind::end)
            throw parse_error("unexpected text after 'field Q'", toks[2].line, toks[2].column);
        return parse_body(RationalField{}, lines, idx + 1);
    }
    if (toks[1].text == "Fp") {
        if (toks.size() < 3 || toks[2].kind != Token::Kind::integer)
            throw parse_error("expected a prime modulus after 'Fp'", lines[idx].number, 1);
        BigInt p = doc_detail::big_from_digits(toks[2].text);
        if (p >= (BigInt(1) << 31)) throw parse_error("prime modulus too large", toks[2].line, toks[2].column);
        try {
            PrimeField fld(p.convert_to<std::uint64_t>());
            return parse_body(fld, lines, idx + 1);
        } catch (const arithmetic_error& e) {
            throw parse_error(e.what(), toks[2].line, toks[2].column);
        }
    }
    throw parse_error("unknown field '" + toks[1].text + "' (expected Q or Fp)", toks[1].line, toks[1].column);
}

// ---------------------------------------------------------------------------
// Canonical printing
// ---------------------------------------------------------------------------

/// Deterministic text form of a document; parse(print_canonical(doc)) == doc.
template <field F>
std::string print_canonical(const SystemDocument<F>& doc,
                            const MonomialOrder& order = MonomialOrder::grevlex()) {
    std::string out = "field " + doc.field.name() + "\n";
    out += "ring";
    for (const auto& v : doc.ring->vars()) out += " " + v.str();
    out += "\n";
    if (!doc.generators.empty()) {
        out += "ideal:\n";
        for (const auto& g : doc.generators) out += g.str(order) + "\n";
    }
    for (const auto& p : doc.points) {
        out += "point " + p.label + ":";
        for (std::size_t i = 0; i < p.coords.size(); ++i)
            out += std::string(i ? "," : "") + " " + F::coeff_string(p.coords[i]);
        out += "\n";
    }
    for (const auto& a : doc.arcs) {
        out += "arc " + a.label + ":";
        for (std::size_t i = 0; i < a.coords.size(); ++i)
            out += std::string(i ? "," : "") + " " + a.coords[i].str(order);
        out += "\n";
    }
    for (const auto& h : doc.hints) {
        out += "hint " + h.label + ":";
        for (std::size_t i = 0; i < h.polys.size(); ++i)
            out += std::string(i ? "," : "") + " " + h.polys[i].str(order);
        out += "\n";
    }
    return out;
}

} // namespace jetforge
