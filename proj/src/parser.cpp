#include "lambdalin/parser.hpp"

#include <algorithm>
#include <cctype>

namespace lambdalin {

namespace {

enum class Tok {
    Ident,
    Int,
    ZeroVec,
    Sqrt2,
    Imag,
    Omega8,
    Let,
    Backslash,
    Dot,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Semi,
    Equal,
    Less,
    Greater,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t pos = 0;
    int line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++pos) {
            if (src[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (pos < src.size()) {
        const char c = src[pos];
        if (c == '#') {
            while (pos < src.size() && src[pos] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        SourceSpan span{pos, pos + 1, line, col};
        auto push = [&](Tok k, std::size_t len) {
            span.end = pos + len;
            out.push_back({k, std::string(src.substr(pos, len)), span});
            advance(len);
        };
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t len = 1;
            while (pos + len < src.size() && std::isdigit(static_cast<unsigned char>(src[pos + len])))
                ++len;
            // "0v" is the null vector, not a number.
            if (len == 1 && c == '0' && pos + 1 < src.size() && src[pos + 1] == 'v' &&
                (pos + 2 >= src.size() || !ident_char(src[pos + 2]))) {
                push(Tok::ZeroVec, 2);
            } else {
                push(Tok::Int, len);
            }
            continue;
        }
        if (ident_start(c)) {
            std::size_t len = 1;
            while (pos + len < src.size() && ident_char(src[pos + len])) ++len;
            std::string_view word = src.substr(pos, len);
            Tok kind = Tok::Ident;
            if (word == "let")
                kind = Tok::Let;
            else if (word == "sqrt2")
                kind = Tok::Sqrt2;
            else if (word == "i")
                kind = Tok::Imag;
            else if (word == "omega8")
                kind = Tok::Omega8;
            push(kind, len);
            continue;
        }
        switch (c) {
            case '\\': push(Tok::Backslash, 1); break;
            case '.': push(Tok::Dot, 1); break;
            case '+': push(Tok::Plus, 1); break;
            case '-': push(Tok::Minus, 1); break;
            case '*': push(Tok::Star, 1); break;
            case '/': push(Tok::Slash, 1); break;
            case '(': push(Tok::LParen, 1); break;
            case ')': push(Tok::RParen, 1); break;
            case ';': push(Tok::Semi, 1); break;
            case '=': push(Tok::Equal, 1); break;
            case '<': push(Tok::Less, 1); break;
            case '>': push(Tok::Greater, 1); break;
            default:
                throw ParseError("unexpected character '" + std::string(1, c) + "'", span);
        }
    }
    SourceSpan eof{src.size(), src.size(), line, col};
    out.push_back({Tok::End, "", eof});
    return out;
}

// Sugar: t - u adds the negation of u. The sign folds into existing scalar
// weights and distributes over sums so that no scaling stack is introduced
// that the source never spelled out.
TermPtr negate_term(const TermPtr& t) {
    switch (t->kind()) {
        case TermKind::Zero:
            return t;
        case TermKind::Scaled:
            return scaled(-t->factor(), t->body());
        case TermKind::Sum: {
            std::vector<TermPtr> kids;
            kids.reserve(t->addends().size());
            for (const auto& kid : t->addends()) kids.push_back(negate_term(kid));
            return sum(std::move(kids));
        }
        default:
            return scaled(Scalar(-1), t);
    }
}

class Parser {
public:
    Parser(std::string_view src, const Bindings* names, bool allow_free)
        : tokens_(tokenize(src)), names_(names), allow_free_(allow_free) {}

    TermPtr term_entry() {
        TermPtr t = parse_term_rec();
        expect(Tok::End, "end of input");
        return t;
    }

    Bindings program_entry() {
        Bindings defined;
        own_ = &defined;
        while (peek().kind != Tok::End) {
            expect(Tok::Let, "'let'");
            Token name = expect(Tok::Ident, "binding name");
            for (const auto& [n, _] : defined)
                if (n == name.text) throw ParseError("duplicate binding '" + name.text + "'", name.span);
            expect(Tok::Equal, "'='");
            TermPtr body = parse_term_rec();
            expect(Tok::Semi, "';'");
            defined.emplace_back(name.text, std::move(body));
        }
        return defined;
    }

    Scalar scalar_entry() {
        Scalar s = parse_scalar_expr();
        expect(Tok::End, "end of input");
        return s;
    }

private:
    std::vector<Token> tokens_;
    std::size_t cursor_ = 0;
    const Bindings* names_;
    const Bindings* own_ = nullptr;  // bindings defined so far by program_entry
    bool allow_free_;
    std::vector<std::string> binder_stack_;

    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(cursor_ + ahead, tokens_.size() - 1)];
    }
    Token next() { return tokens_[std::min(cursor_++, tokens_.size() - 1)]; }
    Token expect(Tok k, const char* what) {
        if (peek().kind != k)
            throw ParseError(std::string("expected ") + what + ", got '" + describe(peek()) + "'",
                             peek().span);
        return next();
    }
    static std::string describe(const Token& t) {
        return t.kind == Tok::End ? "end of input" : t.text;
    }

    const TermPtr* lookup_binding(const std::string& name) const {
        if (own_)
            for (const auto& [n, t] : *own_)
                if (n == name) return &t;
        if (names_)
            for (const auto& [n, t] : *names_)
                if (n == name) return &t;
        return nullptr;
    }

    TermPtr parse_term_rec() {
        if (peek().kind == Tok::Backslash) {
            next();
            Token binder = expect(Tok::Ident, "binder name");
            expect(Tok::Dot, "'.'");
            binder_stack_.push_back(binder.text);
            TermPtr body = parse_term_rec();
            binder_stack_.pop_back();
            return lambda(binder.text, std::move(body));
        }
        return parse_sum();
    }

    TermPtr parse_sum() {
        std::vector<TermPtr> addends;
        addends.push_back(parse_scaled());
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const bool minus = next().kind == Tok::Minus;
            TermPtr rhs = parse_scaled();
            addends.push_back(minus ? negate_term(rhs) : std::move(rhs));
        }
        if (addends.size() == 1) return addends[0];
        return sum(std::move(addends));
    }

    bool starts_scalar() const {
        switch (peek().kind) {
            case Tok::Int:
            case Tok::Sqrt2:
            case Tok::Imag:
            case Tok::Omega8:
            case Tok::Minus:
            case Tok::LParen:
                return true;
            default:
                return false;
        }
    }

    TermPtr parse_scaled() {
        if (starts_scalar()) {
            const std::size_t mark = cursor_;
            try {
                Scalar factor = parse_scalar_expr();
                if (peek().kind == Tok::Dot) {
                    next();
                    return scaled(std::move(factor), parse_app());
                }
            } catch (const ParseError&) {
            }
            cursor_ = mark;
        }
        return parse_app();
    }

    TermPtr parse_app() {
        TermPtr t = parse_atom();
        while (true) {
            switch (peek().kind) {
                case Tok::Ident:
                case Tok::ZeroVec:
                case Tok::LParen:
                case Tok::Less:
                    t = apply(std::move(t), parse_atom());
                    break;
                default:
                    return t;
            }
        }
    }

    TermPtr parse_atom() {
        const Token tok = peek();
        switch (tok.kind) {
            case Tok::Ident: {
                next();
                const auto rend = binder_stack_.rend();
                if (std::find(binder_stack_.rbegin(), rend, tok.text) != rend)
                    return variable(tok.text);
                if (const TermPtr* bound = lookup_binding(tok.text)) return *bound;
                if (!allow_free_)
                    throw ParseError("unknown identifier '" + tok.text + "'", tok.span);
                return variable(tok.text);
            }
            case Tok::ZeroVec:
                next();
                return zero_vector();
            case Tok::Less: {
                next();
                Token name = expect(Tok::Ident, "name");
                expect(Tok::Greater, "'>'");
                if (const TermPtr* bound = lookup_binding(name.text)) return *bound;
                throw ParseError("unknown name '<" + name.text + ">'", name.span);
            }
            case Tok::LParen: {
                next();
                TermPtr t = parse_term_rec();
                expect(Tok::RParen, "')'");
                return t;
            }
            default:
                throw ParseError("expected a term, got '" + describe(tok) + "'", tok.span);
        }
    }

    Scalar parse_scalar_expr() {
        Scalar s = parse_scalar_product();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const bool minus = next().kind == Tok::Minus;
            Scalar rhs = parse_scalar_product();
            s = minus ? s - rhs : s + rhs;
        }
        return s;
    }

    Scalar parse_scalar_product() {
        Scalar s = parse_scalar_unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const Token op = next();
            Scalar rhs = parse_scalar_unary();
            if (op.kind == Tok::Star) {
                s = s * rhs;
            } else {
                if (rhs.is_zero()) throw ParseError("division by zero", op.span);
                s = s / rhs;
            }
        }
        return s;
    }

    Scalar parse_scalar_unary() {
        switch (peek().kind) {
            case Tok::Minus:
                next();
                return -parse_scalar_unary();
            case Tok::Int: {
                Token t = next();
                return Scalar(Rational(BigInt(t.text)));
            }
            case Tok::Sqrt2:
                next();
                return Scalar::sqrt2();
            case Tok::Imag:
                next();
                return Scalar::imag_unit();
            case Tok::Omega8:
                next();
                return Scalar::omega8();
            case Tok::LParen: {
                next();
                Scalar s = parse_scalar_expr();
                expect(Tok::RParen, "')'");
                return s;
            }
            default:
                throw ParseError("expected a scalar, got '" + describe(peek()) + "'", peek().span);
        }
    }
};

// ---------------------------------------------------------------------------
// Printing.
// ---------------------------------------------------------------------------

bool scalar_needs_parens(const std::string& s) {
    if (s == "sqrt2" || s == "i" || s == "omega8") return false;
    return !std::all_of(s.begin(), s.end(),
                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class Printer {
public:
    explicit Printer(const Bindings* names) : names_(names) {}

    const std::string* named(const TermPtr& t) {
        if (!names_ || t->kind() == TermKind::Variable || t->kind() == TermKind::Zero)
            return nullptr;
        for (const auto& [name, def] : *names_)
            if (def->size() == t->size() && alpha_ac_equal(def, t)) return &name;
        return nullptr;
    }

    std::string print(const TermPtr& t) {
        if (const std::string* n = named(t)) return "<" + *n + ">";
        switch (t->kind()) {
            case TermKind::Zero:
                return "0v";
            case TermKind::Variable:
                return t->name();
            case TermKind::Lambda:
                return "\\" + t->name() + "." + print(t->body());
            case TermKind::Apply:
                return print_fun(t->fun()) + " " + print_arg(t->arg());
            case TermKind::Scaled:
                return print_factor(t->factor()) + "." + print_scaled_body(t->body());
            case TermKind::Sum:
                return print_sum(t);
        }
        return {};
    }

private:
    const Bindings* names_;

    bool atomic(const TermPtr& t) {
        if (t->kind() == TermKind::Variable || t->kind() == TermKind::Zero) return true;
        // A named subterm prints as one token.
        return named(t) != nullptr;
    }

    std::string parens(const TermPtr& t) { return "(" + print(t) + ")"; }

    std::string print_fun(const TermPtr& t) {
        if (t->kind() == TermKind::Apply || atomic(t)) return print(t);
        return parens(t);
    }

    std::string print_arg(const TermPtr& t) { return atomic(t) ? print(t) : parens(t); }

    static std::string print_factor(const Scalar& s) {
        std::string str = s.to_string();
        return scalar_needs_parens(str) ? "(" + str + ")" : str;
    }

    std::string print_scaled_body(const TermPtr& t) {
        if (t->kind() == TermKind::Apply || atomic(t)) return print(t);
        return parens(t);
    }

    // A lambda cannot stand bare inside a sum (its body would swallow the
    // remaining addends on reparse).
    std::string print_addend(const TermPtr& t) {
        if (t->kind() == TermKind::Lambda && !named(t)) return parens(t);
        return print(t);
    }

    std::string print_sum(const TermPtr& t) {
        std::string out;
        bool first = true;
        for (const auto& addend : t->addends()) {
            // Render negatively weighted addends with the subtraction sugar.
            const bool negative = addend->kind() == TermKind::Scaled &&
                                  addend->factor().compare(Scalar::zero()) < 0 &&
                                  named(addend) == nullptr;
            if (first) {
                out += print_addend(addend);
                first = false;
                continue;
            }
            if (negative) {
                out += " - ";
                const Scalar flipped = -addend->factor();
                const TermKind bk = addend->body()->kind();
                // A bare "- u" reparses by folding the sign into u, which
                // only restores this addend when u takes a fresh weight.
                if (flipped.is_one() && (bk == TermKind::Variable || bk == TermKind::Lambda ||
                                         bk == TermKind::Apply)) {
                    out += print_arg(addend->body());
                } else {
                    out += print_factor(flipped) + "." + print_scaled_body(addend->body());
                }
            } else {
                out += " + " + print_addend(addend);
            }
        }
        return out;
    }
};

}  // namespace

TermPtr parse_term(std::string_view src, const Bindings* names) {
    return Parser(src, names, /*allow_free=*/true).term_entry();
}

Bindings parse_program(std::string_view src, const Bindings* prelude) {
    return Parser(src, prelude, /*allow_free=*/false).program_entry();
}

Scalar parse_scalar(std::string_view src) {
    return Parser(src, nullptr, true).scalar_entry();
}

std::string print_term(const TermPtr& t, const Bindings* names) {
    return Printer(names).print(t);
}

std::string print_scalar(const Scalar& s) { return s.to_string(); }

}  // namespace lambdalin
