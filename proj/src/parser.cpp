#include "musat/formula.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace musat {

namespace {

enum class Tok { End, Ident, True, False, Mu, Nu, And, Or, Imp, Not, LPar, RPar, Dot, Modal };

struct Token {
    Tok kind = Tok::End;
    size_t pos = 0;
    std::string text; // Ident
    ModalOp op;       // Modal
};

struct Lexer {
    const std::string& src;
    size_t i = 0;

    explicit Lexer(const std::string& s) : src(s) {}

    void skip_ws() {
        while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
    }

    uint32_t number(const char* what) {
        size_t start = i;
        uint64_t v = 0;
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
            v = v * 10 + (src[i] - '0');
            if (v > 1u << 30) throw ParseError(start, std::string(what) + " out of range");
            ++i;
        }
        if (i == start) throw ParseError(i, std::string("expected ") + what);
        return uint32_t(v);
    }

    AgentSet agent_block(size_t at) {
        // cursor sits right after '{'
        AgentSet set = 0;
        skip_ws();
        if (i < src.size() && src[i] == '}') {
            ++i;
            return 0;
        }
        for (;;) {
            skip_ws();
            size_t p = i;
            uint32_t a = number("agent");
            if (a < 1 || a > 64) throw ParseError(p, "agent must be between 1 and 64");
            set |= AgentSet(1) << (a - 1);
            skip_ws();
            if (i < src.size() && src[i] == ',') {
                ++i;
                continue;
            }
            if (i < src.size() && src[i] == '}') {
                ++i;
                return set;
            }
            throw ParseError(i, "expected ',' or '}' in agent set");
        }
        (void)at;
    }

    Token next() {
        skip_ws();
        Token t;
        t.pos = i;
        if (i >= src.size()) return t;
        char c = src[i];
        if (c == '&') { ++i; t.kind = Tok::And; return t; }
        if (c == '|') { ++i; t.kind = Tok::Or; return t; }
        if (c == '-') {
            if (i + 1 < src.size() && src[i + 1] == '>') {
                i += 2;
                t.kind = Tok::Imp;
                return t;
            }
            throw ParseError(i, "expected '->'");
        }
        if (c == '!') { ++i; t.kind = Tok::Not; return t; }
        if (c == '(') { ++i; t.kind = Tok::LPar; return t; }
        if (c == ')') { ++i; t.kind = Tok::RPar; return t; }
        if (c == '.') { ++i; t.kind = Tok::Dot; return t; }
        if (c == '<' || c == '[') {
            bool dia = c == '<';
            char close = dia ? '>' : ']';
            ++i;
            t.kind = Tok::Modal;
            if (i < src.size() && src[i] == close) {
                ++i;
                t.op.kind = dia ? ModKind::Dia : ModKind::Box;
                return t;
            }
            if (i < src.size() && src[i] == '{') {
                ++i;
                t.op.kind = dia ? ModKind::CDia : ModKind::CBox;
                t.op.agents = agent_block(t.pos);
                if (i >= src.size() || src[i] != close)
                    throw ParseError(i, std::string("expected '") + close + "'");
                ++i;
                return t;
            }
            if (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
                t.op.kind = dia ? ModKind::GDia : ModKind::GBox;
                t.op.grade = number("grade");
                if (i >= src.size() || src[i] != close)
                    throw ParseError(i, std::string("expected '") + close + "'");
                ++i;
                return t;
            }
            throw ParseError(i, "malformed modality");
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = i;
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                ++i;
            t.text = src.substr(start, i - start);
            if (t.text == "true") t.kind = Tok::True;
            else if (t.text == "false") t.kind = Tok::False;
            else if (t.text == "mu") t.kind = Tok::Mu;
            else if (t.text == "nu") t.kind = Tok::Nu;
            else t.kind = Tok::Ident;
            return t;
        }
        throw ParseError(i, std::string("unexpected character '") + c + "'");
    }
};

struct Parser {
    std::vector<Token> toks;
    size_t at = 0;
    LogicId logic;
    std::vector<std::string> scope;

    const Token& peek() const { return toks[at]; }
    Token take() { return toks[at++]; }

    bool in_scope(const std::string& name) const {
        for (const auto& s : scope)
            if (s == name) return true;
        return false;
    }

    void check_modality(const Token& t) {
        ModKind k = t.op.kind;
        switch (logic) {
        case LogicId::K:
        case LogicId::KD:
            if (k != ModKind::Dia && k != ModKind::Box)
                throw ParseError(t.pos, "only <> and [] are available in this logic");
            break;
        case LogicId::Graded:
            // plain <> and [] read as grade zero
            break;
        case LogicId::Amc:
            if (k != ModKind::CDia && k != ModKind::CBox)
                throw ParseError(t.pos, "coalition modalities <{..}> and [{..}] are required here");
            break;
        }
    }

    ModalOp adapt(ModalOp op) const {
        if (logic == LogicId::Graded) {
            if (op.kind == ModKind::Dia) { op.kind = ModKind::GDia; op.grade = 0; }
            if (op.kind == ModKind::Box) { op.kind = ModKind::GBox; op.grade = 0; }
        }
        return op;
    }

    // a -> b desugars to !a | b right away, so the guard from parse_unary
    // against negating bound fixpoint variables applies here as well
    Formula parse_imp() {
        Formula l = parse_or();
        if (peek().kind == Tok::Imp) {
            Token arrow = take();
            for (const auto& v : free_vars(l))
                if (in_scope(v))
                    throw ParseError(arrow.pos, "implication from fixpoint variable " + v);
            return Formula::bor(negate(l), parse_imp());
        }
        return l;
    }

    Formula parse_or() {
        Formula l = parse_and();
        if (peek().kind == Tok::Or) {
            take();
            return Formula::bor(l, parse_or());
        }
        return l;
    }

    Formula parse_and() {
        Formula l = parse_unary();
        if (peek().kind == Tok::And) {
            take();
            return Formula::band(l, parse_and());
        }
        return l;
    }

    Formula parse_unary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Not: {
            Token bang = take();
            Formula arg = parse_unary();
            for (const auto& v : free_vars(arg))
                if (in_scope(v))
                    throw ParseError(bang.pos, "negation over fixpoint variable " + v);
            return negate(arg);
        }
        case Tok::Modal: {
            Token m = take();
            check_modality(m);
            return Formula::modal(adapt(m.op), parse_unary());
        }
        case Tok::Mu:
        case Tok::Nu: return parse_binder();
        default: return parse_primary();
        }
    }

    Formula parse_binder() {
        Token b = take();
        Token name = take();
        if (name.kind != Tok::Ident)
            throw ParseError(name.pos, "expected variable name after binder");
        Token dot = take();
        if (dot.kind != Tok::Dot) throw ParseError(dot.pos, "expected '.' after variable");
        scope.push_back(name.text);
        Formula body = parse_imp();
        scope.pop_back();
        return b.kind == Tok::Mu ? Formula::mu(name.text, body) : Formula::nu(name.text, body);
    }

    Formula parse_primary() {
        Token t = take();
        switch (t.kind) {
        case Tok::True: return Formula::top();
        case Tok::False: return Formula::bot();
        case Tok::Ident:
            return in_scope(t.text) ? Formula::var(t.text) : Formula::atom(t.text);
        case Tok::LPar: {
            Formula inner = parse_imp();
            Token r = take();
            if (r.kind != Tok::RPar) throw ParseError(r.pos, "expected ')'");
            return inner;
        }
        case Tok::End: throw ParseError(t.pos, "unexpected end of input");
        default: throw ParseError(t.pos, "unexpected token");
        }
    }
};

} // namespace

Formula parse(const std::string& text, LogicId logic) {
    Lexer lex(text);
    Parser p;
    p.logic = logic;
    for (;;) {
        Token t = lex.next();
        bool end = t.kind == Tok::End;
        p.toks.push_back(std::move(t));
        if (end) break;
    }
    Formula f = p.parse_imp();
    if (p.peek().kind != Tok::End) throw ParseError(p.peek().pos, "trailing input");
    return f;
}

} // namespace musat
