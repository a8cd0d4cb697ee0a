/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "mtt/lexer.hpp"

#include <array>
#include <cctype>

namespace mtt {

namespace {

const std::array<const char*, 15> k_keywords = {
    "Definition", "Axiom", "Record", "Inductive", "Coercion", "Canonical", "Structure",
    "Notation", "Check", "Eval", "Fail", "forall", "fun", "Prop", "Type",
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool is_symbol_char(char c) {
    switch (c) {
        case '*': case '+': case '-': case '=': case '<': case '>': case '/':
        case '\\': case '!': case '&': case '|': case '^': case '~': case '%':
        case '?': case ':':
            return true;
        default: return false;
    }
}

struct Cursor {
    const std::string& src;
    const std::string& file;
    size_t pos = 0;
    uint32_t line = 1;
    uint32_t col = 1;

    bool done() const { return pos >= src.size(); }
    char peek(size_t off = 0) const {
        return pos + off < src.size() ? src[pos + off] : '\0';
    }
    char next() {
        char c = src[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    SourceSpan here() const {
        SourceSpan s;
        s.file = file;
        s.start = static_cast<uint32_t>(pos);
        s.end = static_cast<uint32_t>(pos);
        s.line = line;
        s.col = col;
        return s;
    }
};

}  // namespace

std::vector<Token> tokenize(const std::string& input, const std::string& file) {
    Cursor c{input, file};
    std::vector<Token> out;

    auto finish_span = [&](SourceSpan s) {
        s.end = static_cast<uint32_t>(c.pos);
        return s;
    };

    while (!c.done()) {
        char ch = c.peek();
        if (std::isspace(static_cast<unsigned char>(ch))) {
            c.next();
            continue;
        }
        // line comment
        if (ch == '-' && c.peek(1) == '-') {
            while (!c.done() && c.peek() != '\n') c.next();
            continue;
        }
        // block comment, nesting
        if (ch == '(' && c.peek(1) == '*') {
            SourceSpan open = c.here();
            c.next();
            c.next();
            int depth = 1;
            while (depth > 0) {
                if (c.done())
                    throw_error(DiagCategory::LexError, open, "unterminated block comment");
                if (c.peek() == '(' && c.peek(1) == '*') {
                    c.next();
                    c.next();
                    ++depth;
                } else if (c.peek() == '*' && c.peek(1) == ')') {
                    c.next();
                    c.next();
                    --depth;
                } else {
                    c.next();
                }
            }
            continue;
        }

        SourceSpan span = c.here();
        if (is_ident_start(ch)) {
            std::string text;
            while (!c.done() && is_ident_char(c.peek())) text += c.next();
            Token t;
            t.text = std::move(text);
            t.kind = TokenKind::Ident;
            for (const char* kw : k_keywords)
                if (t.text == kw) {
                    t.kind = TokenKind::Keyword;
                    break;
                }
            t.span = finish_span(span);
            out.push_back(std::move(t));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string text;
            while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek())))
                text += c.next();
            Token t;
            t.kind = TokenKind::Numeral;
            t.number = std::stoull(text);
            t.text = std::move(text);
            t.span = finish_span(span);
            out.push_back(std::move(t));
            continue;
        }
        if (ch == '"') {
            c.next();
            std::string text;
            while (!c.done() && c.peek() != '"') text += c.next();
            if (c.done())
                throw_error(DiagCategory::LexError, span, "unterminated string literal");
            c.next();
            Token t;
            t.kind = TokenKind::StringLit;
            t.text = std::move(text);
            t.span = finish_span(span);
            out.push_back(std::move(t));
            continue;
        }

        auto single = [&](TokenKind k, const char* text) {
            c.next();
            Token t;
            t.kind = k;
            t.text = text;
            t.span = finish_span(span);
            out.push_back(std::move(t));
        };
        switch (ch) {
            case '(': single(TokenKind::LParen, "("); continue;
            case ')': single(TokenKind::RParen, ")"); continue;
            case '{': single(TokenKind::LBrace, "{"); continue;
            case '}': single(TokenKind::RBrace, "}"); continue;
            case ',': single(TokenKind::Comma, ","); continue;
            case '.': single(TokenKind::Dot, "."); continue;
            case ';': single(TokenKind::Semicolon, ";"); continue;
            case '_':
                // a hole unless part of an identifier tail (handled above)
                single(TokenKind::Underscore, "_");
                continue;
            case '@': single(TokenKind::At, "@"); continue;
            default: break;
        }
        if (ch == '|' && !is_symbol_char(c.peek(1))) {
            single(TokenKind::Pipe, "|");
            continue;
        }
        if (is_symbol_char(ch)) {
            std::string text;
            while (!c.done() && is_symbol_char(c.peek())) text += c.next();
            Token t;
            if (text == ":=")
                t.kind = TokenKind::ColonEq;
            else if (text == ":")
                t.kind = TokenKind::Colon;
            else if (text == "->")
                t.kind = TokenKind::Arrow;
            else if (text == "=>")
                t.kind = TokenKind::DblArrow;
            else if (text == ">->")
                t.kind = TokenKind::CoerceArrow;
            else
                t.kind = TokenKind::Operator;
            t.text = std::move(text);
            t.span = finish_span(span);
            out.push_back(std::move(t));
            continue;
        }
        throw_error(DiagCategory::LexError, span,
                    std::string("unexpected character '") + ch + "'");
    }

    Token eof;
    eof.kind = TokenKind::Eof;
    eof.span = c.here();
    out.push_back(std::move(eof));
    return out;
}

}  // namespace mtt
