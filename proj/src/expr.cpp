#include "relchern/expr.hpp"

#include <cctype>

#include "relchern/errors.hpp"

namespace relchern {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Number: return "number '" + t.text + "'";
    case Tok::Ident: return "symbol '" + t.text + "'";
    default: return "'" + t.text + "'";
    }
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        const int tl = line;
        const int tc = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Tok::Number, std::string(src.substr(i, j - i)), tl, tc});
            advance(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), tl, tc});
            advance(j - i);
            continue;
        }
        Tok kind;
        switch (c) {
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        case '/': kind = Tok::Slash; break;
        case '^': kind = Tok::Caret; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
        }
        out.push_back({kind, std::string(1, c), tl, tc});
        advance(1);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        if (peek().kind != Tok::End) fail("expected an operator or end of input, found " + describe(peek()));
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

    static ExprPtr node(ClassExpr::Kind kind, const Token& at, std::vector<ExprPtr> args) {
        auto e = std::make_shared<ClassExpr>();
        e->kind = kind;
        e->args = std::move(args);
        e->line = at.line;
        e->column = at.column;
        return e;
    }

    ExprPtr expr() {
        const Token start = peek();
        bool negate = false;
        if (start.kind == Tok::Plus || start.kind == Tok::Minus) {
            negate = start.kind == Tok::Minus;
            next();
        }
        ExprPtr lhs = term();
        if (negate) lhs = node(ClassExpr::Kind::Negate, start, {lhs});
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token op = next();
            ExprPtr rhs = term();
            lhs = node(op.kind == Tok::Plus ? ClassExpr::Kind::Add : ClassExpr::Kind::Sub, op, {lhs, rhs});
        }
        return lhs;
    }

    static bool starts_factor(Tok k) { return k == Tok::Number || k == Tok::Ident || k == Tok::LParen; }

    ExprPtr term() {
        ExprPtr lhs = factor();
        for (;;) {
            const Token op = peek();
            if (op.kind == Tok::Star || op.kind == Tok::Slash) {
                next();
                ExprPtr rhs = factor();
                lhs = node(op.kind == Tok::Star ? ClassExpr::Kind::Mul : ClassExpr::Kind::Div, op, {lhs, rhs});
            } else if (starts_factor(op.kind)) {
                ExprPtr rhs = factor();
                lhs = node(ClassExpr::Kind::Mul, op, {lhs, rhs});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr factor() {
        ExprPtr b = base();
        if (peek().kind != Tok::Caret) return b;
        const Token caret = next();
        if (peek().kind != Tok::Number) fail("expected a nonnegative integer exponent after '^', found " + describe(peek()));
        const Token num = next();
        if (num.text.size() > 6) throw ParseError("exponent too large", num.line, num.column);
        auto e = std::make_shared<ClassExpr>();
        e->kind = ClassExpr::Kind::Pow;
        e->exponent = static_cast<unsigned>(std::stoul(num.text));
        e->args = {b};
        e->line = caret.line;
        e->column = caret.column;
        return e;
    }

    ExprPtr base() {
        const Token t = peek();
        switch (t.kind) {
        case Tok::Number: {
            next();
            auto e = std::make_shared<ClassExpr>();
            e->kind = ClassExpr::Kind::Number;
            e->number = Integer(t.text);
            e->line = t.line;
            e->column = t.column;
            return e;
        }
        case Tok::Ident: {
            next();
            auto e = std::make_shared<ClassExpr>();
            e->kind = ClassExpr::Kind::Symbol;
            e->name = t.text;
            e->line = t.line;
            e->column = t.column;
            return e;
        }
        case Tok::LParen: {
            next();
            ExprPtr inner = expr();
            if (peek().kind != Tok::RParen) fail("expected ')', found " + describe(peek()));
            next();
            return inner;
        }
        default:
            fail("expected a number, symbol or '(', found " + describe(t));
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

// Precedence levels: 1 sums (and a leading minus), 2 products, 3 powers, 4 atoms.
int precedence(const ClassExpr& e) {
    switch (e.kind) {
    case ClassExpr::Kind::Number:
    case ClassExpr::Kind::Symbol: return 4;
    case ClassExpr::Kind::Pow: return 3;
    case ClassExpr::Kind::Mul:
    case ClassExpr::Kind::Div: return 2;
    default: return 1;
    }
}

std::string render(const ClassExpr& e, int min_prec) {
    std::string s;
    switch (e.kind) {
    case ClassExpr::Kind::Number: s = e.number.get_str(); break;
    case ClassExpr::Kind::Symbol: s = e.name; break;
    case ClassExpr::Kind::Negate: s = "-" + render(*e.args[0], 2); break;
    case ClassExpr::Kind::Add: s = render(*e.args[0], 1) + " + " + render(*e.args[1], 2); break;
    case ClassExpr::Kind::Sub: s = render(*e.args[0], 1) + " - " + render(*e.args[1], 2); break;
    case ClassExpr::Kind::Mul: s = render(*e.args[0], 2) + "*" + render(*e.args[1], 3); break;
    case ClassExpr::Kind::Div: s = render(*e.args[0], 2) + "/" + render(*e.args[1], 3); break;
    case ClassExpr::Kind::Pow: s = render(*e.args[0], 4) + "^" + std::to_string(e.exponent); break;
    }
    // A leading minus is only legal at the start of a parenthesized sum.
    const bool needs_parens =
        precedence(e) < min_prec || (e.kind == ClassExpr::Kind::Negate && min_prec > 1);
    return needs_parens ? "(" + s + ")" : s;
}

} // namespace

ExprPtr parse_class_expr(std::string_view src) { return Parser(tokenize(src)).parse(); }

std::string to_string(const ClassExpr& expr) { return render(expr, 1); }

bool structurally_equal(const ClassExpr& a, const ClassExpr& b) {
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    switch (a.kind) {
    case ClassExpr::Kind::Number:
        if (a.number != b.number) return false;
        break;
    case ClassExpr::Kind::Symbol:
        if (a.name != b.name) return false;
        break;
    case ClassExpr::Kind::Pow:
        if (a.exponent != b.exponent) return false;
        break;
    default: break;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!structurally_equal(*a.args[i], *b.args[i])) return false;
    }
    return true;
}

ChowPoly evaluate(const ClassExpr& e, const RingPtr& ring) {
    switch (e.kind) {
    case ClassExpr::Kind::Number: return ChowPoly::constant(ring, Rational(e.number));
    case ClassExpr::Kind::Symbol:
        if (!ring->contains(e.name)) {
            throw SymbolError("unknown symbol '" + e.name + "' at line " + std::to_string(e.line) + ", column " +
                              std::to_string(e.column));
        }
        return ChowPoly::generator(ring, e.name);
    case ClassExpr::Kind::Negate: return -evaluate(*e.args[0], ring);
    case ClassExpr::Kind::Add: return evaluate(*e.args[0], ring) + evaluate(*e.args[1], ring);
    case ClassExpr::Kind::Sub: return evaluate(*e.args[0], ring) - evaluate(*e.args[1], ring);
    case ClassExpr::Kind::Mul: return evaluate(*e.args[0], ring) * evaluate(*e.args[1], ring);
    case ClassExpr::Kind::Pow: return pow(evaluate(*e.args[0], ring), e.exponent);
    case ClassExpr::Kind::Div: {
        const ChowPoly num = evaluate(*e.args[0], ring);
        const ChowPoly den = evaluate(*e.args[1], ring);
        if (den.is_constant()) {
            const Rational c = den.constant_term();
            if (c == 0) throw NonUnitError("division by zero");
            return scale(num, 1 / c);
        }
        return expand_ratio(num, den);
    }
    }
    throw InvariantViolation("unreachable expression kind");
}

} // namespace relchern
