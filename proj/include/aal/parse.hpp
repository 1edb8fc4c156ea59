// aal — concrete syntax: lexer, parser and printers for formulas and words.
// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aal/lang.hpp"

namespace aal {

// Grammar (lowest precedence first; '<->' associates left, '->' right,
// '|' and '&' left; unary operators bind tightest):
//
//   formula := iff
//   iff     := imp ('<->' imp)*
//   imp     := disj ('->' imp)?
//   disj    := conj ('|' conj)*
//   conj    := unary ('&' unary)*
//   unary   := '~' unary | 'K' AGENT unary | 'Khat' AGENT unary
//            | '<' word '>' unary | '[' word ']' unary | primary
//   primary := 'T' | 'F' | ATOM | '(' formula ')'
//   word    := 'eps' | letter ('.' letter)*
//   letter  := AGENT | formula
//
// 'K a f' / '[w]f' / '&' / '->' / '<->' / 'F' are rewritten into the seven
// primitive connectives at parse time; '[w]f' becomes '~<w>~f' with a single
// negation pair around the whole modal chain (so '[eps]f' is '~~f').

namespace detail {

enum class Tok : std::uint8_t {
    End, LParen, RParen, LBrack, RBrack, LAngle, RAngle,
    Tilde, Pipe, Amp, Arrow, DArrow, Dot,
    Ident, KwT, KwF, KwK, KwKhat, KwEps,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto is_word_char = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_';
    };
    while (i < s.size()) {
        char c = s[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++i;
            continue;
        }
        std::size_t start = i;
        switch (c) {
        case '(': out.push_back({Tok::LParen, "(", start}); ++i; continue;
        case ')': out.push_back({Tok::RParen, ")", start}); ++i; continue;
        case '[': out.push_back({Tok::LBrack, "[", start}); ++i; continue;
        case ']': out.push_back({Tok::RBrack, "]", start}); ++i; continue;
        case '>': out.push_back({Tok::RAngle, ">", start}); ++i; continue;
        case '~': out.push_back({Tok::Tilde, "~", start}); ++i; continue;
        case '|': out.push_back({Tok::Pipe, "|", start}); ++i; continue;
        case '&': out.push_back({Tok::Amp, "&", start}); ++i; continue;
        case '.': out.push_back({Tok::Dot, ".", start}); ++i; continue;
        case '<':
            if (i + 2 < s.size() && s[i + 1] == '-' && s[i + 2] == '>') {
                out.push_back({Tok::DArrow, "<->", start});
                i += 3;
            } else {
                out.push_back({Tok::LAngle, "<", start});
                ++i;
            }
            continue;
        case '-':
            if (i + 1 < s.size() && s[i + 1] == '>') {
                out.push_back({Tok::Arrow, "->", start});
                i += 2;
                continue;
            }
            throw LexError("stray '-' at offset " + std::to_string(start));
        default:
            break;
        }
        if (is_word_char(c) && !(c >= '0' && c <= '9')) {
            std::size_t j = i;
            while (j < s.size() && is_word_char(s[j]))
                ++j;
            std::string word(s.substr(i, j - i));
            Tok k = Tok::Ident;
            if (word == "T")
                k = Tok::KwT;
            else if (word == "F")
                k = Tok::KwF;
            else if (word == "K")
                k = Tok::KwK;
            else if (word == "Khat")
                k = Tok::KwKhat;
            else if (word == "eps")
                k = Tok::KwEps;
            out.push_back({k, std::move(word), start});
            i = j;
            continue;
        }
        throw LexError(std::string("unexpected character '") + c + "' at offset " +
                       std::to_string(start));
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

class Parser {
  public:
    Parser(Lang& lang, std::string_view text) : lang_(lang), toks_(lex(text)) {}

    FormulaId formula_all() {
        FormulaId f = iff();
        expect(Tok::End, "end of input");
        return f;
    }

  private:
    Lang& lang_;
    std::vector<detail::Token> toks_;
    std::size_t pos_ = 0;

    Tok peek() const { return toks_[pos_].kind; }
    const Token& cur() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }
    void expect(Tok k, const char* what) {
        if (peek() != k)
            throw SyntaxError(std::string("expected ") + what + " at offset " +
                              std::to_string(cur().pos));
        next();
    }

    FormulaId iff() {
        FormulaId l = imp();
        while (peek() == Tok::DArrow) {
            next();
            l = lang_.formulas().iff(l, imp());
        }
        return l;
    }

    FormulaId imp() {
        FormulaId l = disj();
        if (peek() == Tok::Arrow) {
            next();
            return lang_.formulas().implies(l, imp());
        }
        return l;
    }

    FormulaId disj() {
        FormulaId l = conj();
        while (peek() == Tok::Pipe) {
            next();
            l = lang_.formulas().lor(l, conj());
        }
        return l;
    }

    FormulaId conj() {
        FormulaId l = unary();
        while (peek() == Tok::Amp) {
            next();
            l = lang_.formulas().land(l, unary());
        }
        return l;
    }

    std::uint32_t agent_arg(const char* op) {
        if (peek() != Tok::Ident)
            throw SyntaxError(std::string("expected agent name after '") + op + "' at offset " +
                              std::to_string(cur().pos));
        Token t = next();
        auto a = lang_.vocab().agent_index(t.text);
        if (!a)
            throw SyntaxError("'" + t.text + "' after '" + op +
                                 "' is not a declared agent (offset " + std::to_string(t.pos) +
                                 ")");
        return *a;
    }

    FormulaId unary() {
        switch (peek()) {
        case Tok::Tilde:
            next();
            return lang_.formulas().lnot(unary());
        case Tok::KwK: {
            next();
            std::uint32_t a = agent_arg("K");
            return lang_.formulas().knows(a, unary());
        }
        case Tok::KwKhat: {
            next();
            std::uint32_t a = agent_arg("Khat");
            return lang_.formulas().hatk(a, unary());
        }
        case Tok::LAngle: {
            next();
            std::vector<Letter> w = modal_word(Tok::RAngle);
            expect(Tok::RAngle, "'>'");
            return diamond_over(w, unary());
        }
        case Tok::LBrack: {
            next();
            std::vector<Letter> w = modal_word(Tok::RBrack);
            expect(Tok::RBrack, "']'");
            FormulaId body = unary();
            return lang_.formulas().lnot(diamond_over(w, lang_.formulas().lnot(body)));
        }
        default:
            return primary();
        }
    }

    FormulaId primary() {
        switch (peek()) {
        case Tok::KwT:
            next();
            return lang_.formulas().top();
        case Tok::KwF:
            next();
            return lang_.formulas().bot();
        case Tok::Ident: {
            Token t = next();
            if (auto p = lang_.vocab().atom_index(t.text))
                return lang_.formulas().atom(*p);
            if (lang_.vocab().agent_index(t.text))
                throw SyntaxError("agent name '" + t.text +
                                     "' used in formula position (offset " +
                                     std::to_string(t.pos) + ")");
            throw SyntaxError("identifier '" + t.text +
                                 "' is neither a declared atom nor a declared agent (offset " +
                                 std::to_string(t.pos) + ")");
        }
        case Tok::LParen: {
            next();
            FormulaId f = iff();
            expect(Tok::RParen, "')'");
            return f;
        }
        default:
            throw SyntaxError("unexpected token '" + cur().text + "' at offset " +
                              std::to_string(cur().pos));
        }
    }

    // Letters inside '<...>' / '[...]' ; 'eps' is only valid alone.
    std::vector<Letter> modal_word(Tok closing) {
        if (peek() == Tok::KwEps) {
            Token t = next();
            if (peek() != closing)
                throw SyntaxError("'eps' must stand alone in a word (offset " +
                                  std::to_string(t.pos) + ")");
            return {};
        }
        return letters(closing);
    }

    std::vector<Letter> letters(Tok /*closing*/) {
        std::vector<Letter> out;
        for (;;) {
            if (peek() == Tok::Ident) {
                if (auto a = lang_.vocab().agent_index(cur().text)) {
                    next();
                    out.push_back(Letter::recv(*a));
                } else {
                    out.push_back(Letter::ann(iff()));
                }
            } else {
                out.push_back(Letter::ann(iff()));
            }
            if (peek() == Tok::Dot) {
                next();
                continue;
            }
            break;
        }
        return out;
    }

    FormulaId diamond_over(const std::vector<Letter>& w, FormulaId f) {
        for (std::size_t i = w.size(); i-- > 0;) {
            const Letter& l = w[i];
            f = l.is_agent() ? lang_.formulas().recv(l.agent, f)
                             : lang_.formulas().send(l.formula, f);
        }
        return f;
    }

    friend WordId parse_word_impl(Lang&, std::string_view);
};

inline WordId parse_word_impl(Lang& lang, std::string_view text) {
    Parser p(lang, text);
    WordId w = lang.words().epsilon();
    if (p.peek() == Tok::KwEps) {
        p.next();
    } else {
        for (const Letter& l : p.letters(Tok::End))
            w = lang.words().extend(w, l);
    }
    p.expect(Tok::End, "end of input");
    return w;
}

} // namespace detail

// Parses a formula; throws LexError / SyntaxError.
inline FormulaId parse_formula(Lang& lang, std::string_view text) {
    detail::Parser p(lang, text);
    return p.formula_all();
}

// Parses a dot-separated word ("eps" for the empty word).
inline WordId parse_word(Lang& lang, std::string_view text) {
    return detail::parse_word_impl(lang, text);
}

namespace detail {

inline void print_rec(const Lang& lang, FormulaId f, bool compact, std::string& out) {
    const FormulaNode& n = lang.formulas()[f];
    switch (n.kind) {
    case FKind::Atom:
        out += lang.vocab().atom_name(n.idx);
        break;
    case FKind::Top:
        out += 'T';
        break;
    case FKind::Not:
        out += '~';
        print_rec(lang, n.lhs, compact, out);
        break;
    case FKind::Or:
        out += '(';
        print_rec(lang, n.lhs, compact, out);
        out += compact ? "|" : " | ";
        print_rec(lang, n.rhs, compact, out);
        out += ')';
        break;
    case FKind::HatK:
        out += "Khat ";
        out += lang.vocab().agent_name(n.idx);
        out += ' ';
        print_rec(lang, n.lhs, compact, out);
        break;
    case FKind::Send:
        out += '<';
        print_rec(lang, n.lhs, compact, out);
        out += '>';
        print_rec(lang, n.rhs, compact, out);
        break;
    case FKind::Recv:
        out += '<';
        out += lang.vocab().agent_name(n.idx);
        out += '>';
        print_rec(lang, n.lhs, compact, out);
        break;
    }
}

} // namespace detail

// Prints using only the primitive connectives; reparsing yields the same id.
inline std::string print_formula(const Lang& lang, FormulaId f) {
    std::string out;
    detail::print_rec(lang, f, /*compact=*/false, out);
    return out;
}

// Prints a word in dot syntax; non-atomic announcement letters are wrapped
// in parentheses and printed compactly, e.g. "(p|q).a.b". The empty word
// prints as "eps".
inline std::string print_word(const Lang& lang, WordId w) {
    if (lang.words().len(w) == 0)
        return "eps";
    std::string out;
    bool first = true;
    for (const Letter& l : lang.words().letters(w)) {
        if (!first)
            out += '.';
        first = false;
        if (l.is_agent()) {
            out += lang.vocab().agent_name(l.agent);
        } else {
            const FKind k = lang.formulas().kind(l.formula);
            std::string s;
            detail::print_rec(lang, l.formula, /*compact=*/true, s);
            if (k == FKind::Atom || k == FKind::Top || s[0] == '(')
                out += s;
            else
                out += '(' + s + ')';
        }
    }
    return out;
}

} // namespace aal
