/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once
#include <map>
#include <optional>

#include "mtt/env.hpp"
#include "mtt/lexer.hpp"
#include "mtt/surface_ast.hpp"

namespace mtt {

/// Operator-precedence term parser plus vernacular command parser. Commands
/// are pulled one at a time so that notation registrations take effect for
/// everything after them; the notation table is passed per call.
class Parser {
public:
    Parser(std::vector<Token> tokens);

    bool at_eof() const;
    /// Parse the next `.`-terminated command. Inside `Fail`, a parse error of
    /// the wrapped command is captured as the expected failure.
    CommandPtr parse_command(const std::map<std::string, NotationEntry>& notations);
    /// Error recovery: drop tokens up to and including the next `.`.
    void skip_to_next_command();

    /// Parse a complete standalone term (used by eval and tests).
    SurfacePtr parse_standalone_term(const std::map<std::string, NotationEntry>& notations);

private:
    const Token& peek(size_t off = 0) const;
    const Token& next();
    bool at(TokenKind k) const { return peek().kind == k; }
    const Token& expect(TokenKind k, const char* what);
    [[noreturn]] void err(const std::string& msg) const;

    SurfacePtr parse_term(uint32_t max_level);
    SurfacePtr parse_app();
    SurfacePtr parse_atom();
    SurfacePtr parse_binder_term(bool is_lambda);
    std::vector<SurfaceBinderGroup> parse_binder_groups(bool allow_bare);
    std::vector<std::string> parse_binder_names();
    CommandPtr parse_command_core();
    void parse_notation_command(Command& cmd);

    std::vector<Token> m_toks;
    size_t m_pos = 0;
    int m_depth = 0;
    const std::map<std::string, NotationEntry>* m_notations = nullptr;
    // operand names in scope while parsing a notation template
    std::optional<std::pair<std::string, std::string>> m_pattern_vars;

    struct DepthGuard;
};

}  // namespace mtt
