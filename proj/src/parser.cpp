#include <cctype>
#include <cstdlib>

#include "epi/formula.hpp"

namespace epi {

std::string ParseError::format() const {
    std::string out = "offset " + std::to_string(offset) + ": " + message;
    if (!expected.empty()) {
        out += " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) out += ", ";
            out += expected[i];
        }
        out += ")";
    }
    return out;
}

namespace {

struct Token {
    enum Type { LParen, RParen, Arrow, Amp, Pipe, Tilde, Modal, Ident, False, True, End } type;
    std::size_t offset = 0;
    std::string text;   // Ident
    char modal = 0;     // 'K' | 'L' | 'B'
    Agent agent = 0;    // Modal
};

struct Lexer {
    std::string_view src;
    std::size_t pos = 0;
    std::optional<ParseError> err;

    static Token tok(Token::Type t, std::size_t at) {
        Token k;
        k.type = t;
        k.offset = at;
        return k;
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
            if (pos >= src.size()) {
                out.push_back(tok(Token::End, pos));
                return out;
            }
            const std::size_t at = pos;
            const char c = src[pos];
            if (c == '(') { out.push_back(tok(Token::LParen, at)); ++pos; continue; }
            if (c == ')') { out.push_back(tok(Token::RParen, at)); ++pos; continue; }
            if (c == '&') { out.push_back(tok(Token::Amp, at)); ++pos; continue; }
            if (c == '|') { out.push_back(tok(Token::Pipe, at)); ++pos; continue; }
            if (c == '~') { out.push_back(tok(Token::Tilde, at)); ++pos; continue; }
            if (c == '-') {
                if (pos + 1 < src.size() && src[pos + 1] == '>') {
                    out.push_back(tok(Token::Arrow, at));
                    pos += 2;
                    continue;
                }
                err = ParseError{at, "stray '-'", {"'->'"}};
                return out;
            }
            if (c >= 'a' && c <= 'z') {
                std::size_t end = pos + 1;
                while (end < src.size() &&
                       ((src[end] >= 'a' && src[end] <= 'z') ||
                        (src[end] >= '0' && src[end] <= '9') || src[end] == '_'))
                    ++end;
                std::string word(src.substr(pos, end - pos));
                pos = end;
                if (word == "false") {
                    out.push_back(tok(Token::False, at));
                } else if (word == "true") {
                    out.push_back(tok(Token::True, at));
                } else {
                    Token t = tok(Token::Ident, at);
                    t.text = std::move(word);
                    out.push_back(std::move(t));
                }
                continue;
            }
            if (c >= 'A' && c <= 'Z') {
                std::size_t end = pos + 1;
                while (end < src.size() &&
                       (std::isalnum(static_cast<unsigned char>(src[end])) || src[end] == '_'))
                    ++end;
                std::string word(src.substr(pos, end - pos));
                if (c == 'K' || c == 'L' || c == 'B') {
                    // agent label must follow the modality letter directly
                    std::size_t d = pos + 1;
                    std::uint64_t n = 0;
                    bool any = false;
                    while (d < src.size() && src[d] >= '0' && src[d] <= '9') {
                        n = n * 10 + static_cast<std::uint64_t>(src[d] - '0');
                        if (n > 1000000000ULL) {
                            err = ParseError{at, "agent index too large", {}};
                            return out;
                        }
                        any = true;
                        ++d;
                    }
                    if (!any) {
                        err = ParseError{at, std::string("agent index missing after '") + c + "'",
                                         {"decimal agent label"}};
                        return out;
                    }
                    if (d < src.size() &&
                        (std::isalpha(static_cast<unsigned char>(src[d])) || src[d] == '_')) {
                        err = ParseError{at, "unknown keyword '" + word + "'", {}};
                        return out;
                    }
                    pos = d;
                    Token t = tok(Token::Modal, at);
                    t.modal = c;
                    t.agent = static_cast<Agent>(n);
                    out.push_back(std::move(t));
                    continue;
                }
                err = ParseError{at, "unknown keyword '" + word + "'", {}};
                return out;
            }
            err = ParseError{at, std::string("unexpected character '") + c + "'", {}};
            return out;
        }
    }
};

struct Parser {
    const std::vector<Token>& toks;
    std::size_t i = 0;
    std::optional<ParseError> err;

    const Token& peek() const { return toks[i]; }
    const Token& take() { return toks[i++]; }

    std::optional<Formula> fail(ParseError e) {
        if (!err) err = std::move(e);
        return std::nullopt;
    }

    std::optional<Formula> imp() {
        auto l = disj();
        if (!l) return std::nullopt;
        if (peek().type == Token::Arrow) {
            take();
            auto r = imp();
            if (!r) return std::nullopt;
            return Formula::imp(*l, *r);
        }
        return l;
    }

    std::optional<Formula> disj() {
        auto l = conj();
        if (!l) return std::nullopt;
        while (peek().type == Token::Pipe) {
            take();
            auto r = conj();
            if (!r) return std::nullopt;
            l = Formula::disj(*l, *r);
        }
        return l;
    }

    std::optional<Formula> conj() {
        auto l = unary();
        if (!l) return std::nullopt;
        while (peek().type == Token::Amp) {
            take();
            auto r = unary();
            if (!r) return std::nullopt;
            l = Formula::conj(*l, *r);
        }
        return l;
    }

    std::optional<Formula> unary() {
        const Token& t = peek();
        if (t.type == Token::Tilde) {
            take();
            auto a = unary();
            if (!a) return std::nullopt;
            return Formula::neg(*a);
        }
        if (t.type == Token::Modal) {
            take();
            auto a = unary();
            if (!a) return std::nullopt;
            switch (t.modal) {
                case 'K': return Formula::know(t.agent, *a);
                case 'L': return Formula::poss(t.agent, *a);
                default: return Formula::bel(t.agent, *a);
            }
        }
        return atom();
    }

    std::optional<Formula> atom() {
        const Token& t = peek();
        switch (t.type) {
            case Token::False: take(); return Formula::bottom();
            case Token::True: take(); return Formula::top();
            case Token::Ident: return Formula::var(take().text);
            case Token::LParen: {
                take();
                auto f = imp();
                if (!f) return std::nullopt;
                if (peek().type != Token::RParen)
                    return fail({peek().offset, "unbalanced parenthesis", {"')'"}});
                take();
                return f;
            }
            default:
                return fail({t.offset, "expected a formula",
                             {"'false'", "'true'", "identifier", "'('", "'~'", "'K'/'L'/'B'"}});
        }
    }
};

enum class Level : int { Imp = 0, Or = 1, And = 2, Unary = 3, Atom = 4 };

Level natural_level(const Formula& f) {
    if (f.is_top()) return Level::Atom;
    if (f.is_neg()) return Level::Unary;
    switch (f.kind()) {
        case Kind::Bottom:
        case Kind::Var: return Level::Atom;
        case Kind::Know: return Level::Unary;
        case Kind::And: return Level::And;
        case Kind::Or: return Level::Or;
        case Kind::Imp: return Level::Imp;
    }
    return Level::Atom;
}

void render_into(const Formula& f, Level min, std::string& out) {
    const bool paren = static_cast<int>(natural_level(f)) < static_cast<int>(min);
    if (paren) out += '(';
    if (f.is_top()) {
        out += "true";
    } else if (f.is_neg()) {
        out += '~';
        render_into(f.lhs(), Level::Unary, out);
    } else {
        switch (f.kind()) {
            case Kind::Bottom: out += "false"; break;
            case Kind::Var: out += f.name(); break;
            case Kind::Know:
                out += 'K';
                out += std::to_string(f.agent());
                out += ' ';
                render_into(f.body(), Level::Unary, out);
                break;
            case Kind::And:
                render_into(f.lhs(), Level::And, out);
                out += " & ";
                render_into(f.rhs(), Level::Unary, out);
                break;
            case Kind::Or:
                render_into(f.lhs(), Level::Or, out);
                out += " | ";
                render_into(f.rhs(), Level::And, out);
                break;
            case Kind::Imp:
                render_into(f.lhs(), Level::Or, out);
                out += " -> ";
                render_into(f.rhs(), Level::Imp, out);
                break;
        }
    }
    if (paren) out += ')';
}

}  // namespace

Expected<Formula, ParseError> parse(std::string_view text) {
    Lexer lex;
    lex.src = text;
    auto toks = lex.run();
    if (lex.err) return *lex.err;
    Parser p{toks, 0, std::nullopt};
    auto f = p.imp();
    if (!f) return p.err ? *p.err : ParseError{0, "parse failed", {}};
    if (p.peek().type != Token::End)
        return ParseError{p.peek().offset, "unexpected trailing input", {"end of input"}};
    return *f;
}

std::string render(const Formula& f) {
    std::string out;
    render_into(f, Level::Imp, out);
    return out;
}

}  // namespace epi
