/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "mtt/diagnostics.hpp"

namespace mtt {

enum class TokenKind : uint8_t {
    Ident,
    Keyword,     // Definition Axiom Record Inductive Coercion Canonical Structure
                 // Notation Check Eval Fail forall fun Prop Type
    Numeral,
    StringLit,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Semicolon,
    Underscore,
    At,
    Pipe,
    ColonEq,     // :=
    Colon,       // :
    Arrow,       // ->
    DblArrow,    // =>
    CoerceArrow, // >->
    Operator,    // any other symbol run: * + == <= = ...
    Eof,
};

struct Token {
    TokenKind kind;
    std::string text;
    uint64_t number = 0;  // Numeral
    SourceSpan span;

    bool is_keyword(const char* kw) const {
        return kind == TokenKind::Keyword && text == kw;
    }
};

/// Lex a whole file. Line comments start with `--`; block comments
/// `(* ... *)` nest. Symbol runs use longest match, so `g *h` splits into
/// three tokens while `>->` stays one.
std::vector<Token> tokenize(const std::string& input, const std::string& file);

}  // namespace mtt
