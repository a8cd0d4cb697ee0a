/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "mtt/parser.hpp"

namespace mtt {

namespace {
constexpr uint32_t LVL_TOP = 200;
constexpr int MAX_NESTING = 256;
}  // namespace

struct Parser::DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
        if (++p.m_depth > MAX_NESTING)
            throw_error(DiagCategory::ParseError, p.peek().span, "term nesting too deep");
    }
    ~DepthGuard() { --p.m_depth; }
};

Parser::Parser(std::vector<Token> tokens) : m_toks(std::move(tokens)) {}

bool Parser::at_eof() const { return peek().kind == TokenKind::Eof; }

const Token& Parser::peek(size_t off) const {
    size_t i = m_pos + off;
    if (i >= m_toks.size()) i = m_toks.size() - 1;  // Eof sentinel
    return m_toks[i];
}

const Token& Parser::next() {
    const Token& t = peek();
    if (m_pos + 1 < m_toks.size()) ++m_pos;
    return t;
}

void Parser::err(const std::string& msg) const {
    throw_error(DiagCategory::ParseError, peek().span,
                msg + " (found '" + (peek().kind == TokenKind::Eof ? "<eof>" : peek().text) +
                    "')");
}

const Token& Parser::expect(TokenKind k, const char* what) {
    if (!at(k)) err(std::string("expected ") + what);
    return next();
}

void Parser::skip_to_next_command() {
    while (!at_eof() && peek().kind != TokenKind::Dot) next();
    if (!at_eof()) next();  // the dot
}

// --- terms ---

static bool starts_atom(const Token& t) {
    switch (t.kind) {
        case TokenKind::Ident:
        case TokenKind::At:
        case TokenKind::Underscore:
        case TokenKind::Numeral:
        case TokenKind::LParen:
            return true;
        case TokenKind::Keyword: return t.text == "Prop" || t.text == "Type";
        default: return false;
    }
}

SurfacePtr Parser::parse_atom() {
    DepthGuard guard(*this);
    const Token& t = peek();
    switch (t.kind) {
        case TokenKind::Ident: {
            next();
            if (m_pattern_vars) {
                if (t.text == m_pattern_vars->first) return s_slot(0, t.span);
                if (t.text == m_pattern_vars->second) return s_slot(1, t.span);
            }
            return s_ref(t.text, t.span);
        }
        case TokenKind::At: {
            next();
            const Token& id = expect(TokenKind::Ident, "identifier after '@'");
            return s_at(id.text, id.span);
        }
        case TokenKind::Underscore:
            next();
            return s_hole(t.span);
        case TokenKind::Numeral:
            next();
            return s_numeral(t.number, t.span);
        case TokenKind::Keyword: {
            if (t.text == "Prop") {
                next();
                return s_sort(true, 0, t.span);
            }
            if (t.text == "Type") {
                next();
                uint32_t level = 0;
                if (at(TokenKind::Numeral)) level = static_cast<uint32_t>(next().number);
                return s_sort(false, level, t.span);
            }
            err("expected a term");
        }
        case TokenKind::LParen: {
            next();
            SurfacePtr inner = parse_term(LVL_TOP);
            if (at(TokenKind::Colon)) {
                next();
                SurfacePtr ty = parse_term(LVL_TOP);
                expect(TokenKind::RParen, "')'");
                return s_ascribe(inner, ty, t.span);
            }
            expect(TokenKind::RParen, "')'");
            return inner;
        }
        default: err("expected a term");
    }
}

SurfacePtr Parser::parse_app() {
    DepthGuard guard(*this);
    SurfacePtr t = parse_atom();
    while (starts_atom(peek())) {
        SourceSpan sp = t->span;
        SurfacePtr arg = parse_atom();
        sp.end = arg->span.end;
        t = s_app(t, arg, sp);
    }
    return t;
}

std::vector<std::string> Parser::parse_binder_names() {
    std::vector<std::string> names;
    while (at(TokenKind::Ident) || at(TokenKind::Underscore)) names.push_back(next().text);
    if (names.empty()) err("expected binder name");
    return names;
}

std::vector<SurfaceBinderGroup> Parser::parse_binder_groups(bool allow_bare) {
    std::vector<SurfaceBinderGroup> groups;
    if (allow_bare && (at(TokenKind::Ident) || at(TokenKind::Underscore))) {
        SurfaceBinderGroup g;
        g.span = peek().span;
        g.names = parse_binder_names();
        if (at(TokenKind::Colon)) {
            next();
            g.type = parse_term(LVL_TOP);
        }
        groups.push_back(std::move(g));
        return groups;
    }
    while (at(TokenKind::LParen) || at(TokenKind::LBrace)) {
        bool implicit = at(TokenKind::LBrace);
        SurfaceBinderGroup g;
        g.span = peek().span;
        g.implicit = implicit;
        next();
        g.names = parse_binder_names();
        expect(TokenKind::Colon, "':' in binder");
        g.type = parse_term(LVL_TOP);
        expect(implicit ? TokenKind::RBrace : TokenKind::RParen, "closing binder delimiter");
        groups.push_back(std::move(g));
    }
    if (groups.empty()) err("expected binders");
    return groups;
}

SurfacePtr Parser::parse_binder_term(bool is_lambda) {
    DepthGuard guard(*this);
    SourceSpan sp = peek().span;
    next();  // forall / fun
    std::vector<SurfaceBinderGroup> groups = parse_binder_groups(true);
    if (is_lambda)
        expect(TokenKind::DblArrow, "'=>'");
    else
        expect(TokenKind::Comma, "','");
    SurfacePtr body = parse_term(LVL_TOP);
    sp.end = body->span.end;
    return is_lambda ? s_lam(std::move(groups), body, sp) : s_pi(std::move(groups), body, sp);
}

SurfacePtr Parser::parse_term(uint32_t max_level) {
    DepthGuard guard(*this);
    if (peek().is_keyword("forall")) return parse_binder_term(false);
    if (peek().is_keyword("fun")) return parse_binder_term(true);

    SurfacePtr lhs = parse_app();
    uint32_t lhs_level = 0;
    for (;;) {
        uint32_t level;
        Assoc assoc;
        bool is_arrow = false;
        if (at(TokenKind::Arrow)) {
            level = 99;
            assoc = Assoc::Right;
            is_arrow = true;
        } else if (at(TokenKind::Operator)) {
            if (peek().text == "=") {
                level = 70;
                assoc = Assoc::None;
            } else {
                const NotationEntry* entry = nullptr;
                if (m_notations) {
                    auto it = m_notations->find(peek().text);
                    if (it != m_notations->end()) entry = &it->second;
                }
                if (!entry) err("unknown notation '" + peek().text + "'");
                level = entry->level;
                assoc = entry->assoc;
            }
        } else {
            break;
        }
        if (level > max_level) break;
        uint32_t left_max = assoc == Assoc::Left ? level : level - 1;
        if (lhs_level > left_max) break;

        const Token op = next();
        uint32_t right_max = assoc == Assoc::Right ? level : level - 1;
        SurfacePtr rhs = parse_term(right_max);
        SourceSpan sp = lhs->span;
        sp.end = rhs->span.end;
        lhs = is_arrow ? s_arrow(lhs, rhs, sp) : s_infix(op.text, lhs, rhs, sp);
        lhs_level = level;
    }
    return lhs;
}

SurfacePtr Parser::parse_standalone_term(const std::map<std::string, NotationEntry>& notations) {
    m_notations = &notations;
    SurfacePtr t = parse_term(LVL_TOP);
    if (!at_eof() && !at(TokenKind::Dot)) err("trailing input after term");
    m_notations = nullptr;
    return t;
}

// --- commands ---

CommandPtr Parser::parse_command(const std::map<std::string, NotationEntry>& notations) {
    m_notations = &notations;
    CommandPtr c = parse_command_core();
    m_notations = nullptr;
    return c;
}

void Parser::parse_notation_command(Command& cmd) {
    const Token& pattern = expect(TokenKind::StringLit, "notation pattern string");
    std::vector<Token> ptoks = tokenize(pattern.text, pattern.span.file);
    if (ptoks.size() != 4 ||  // x OP y eof
        ptoks[0].kind != TokenKind::Ident || ptoks[2].kind != TokenKind::Ident ||
        (ptoks[1].kind != TokenKind::Operator && ptoks[1].kind != TokenKind::CoerceArrow &&
         ptoks[1].kind != TokenKind::Arrow && ptoks[1].kind != TokenKind::DblArrow))
        throw_error(DiagCategory::ParseError, pattern.span,
                    "notation pattern must be \"x OP y\" with a symbolic OP");
    cmd.operand_left = ptoks[0].text;
    cmd.operand_right = ptoks[2].text;
    cmd.notation_token = ptoks[1].text;

    expect(TokenKind::ColonEq, "':='");
    expect(TokenKind::LParen, "'(' before notation template");
    m_pattern_vars = std::make_pair(cmd.operand_left, cmd.operand_right);
    SurfacePtr tmpl = parse_term(LVL_TOP);
    m_pattern_vars.reset();
    expect(TokenKind::RParen, "')' after notation template");
    cmd.notation_template = tmpl;

    // optional modifiers: (at level N, left|right|no associativity)
    cmd.notation_level = 40;
    cmd.notation_assoc = Assoc::Left;
    if (at(TokenKind::LParen)) {
        next();
        const Token& at_kw = expect(TokenKind::Ident, "'at'");
        if (at_kw.text != "at") err("expected 'at' in notation modifiers");
        const Token& level_kw = expect(TokenKind::Ident, "'level'");
        if (level_kw.text != "level") err("expected 'level'");
        const Token& num = expect(TokenKind::Numeral, "level number");
        if (num.number > 100)
            throw_error(DiagCategory::ParseError, num.span, "notation level must be 0..100");
        cmd.notation_level = static_cast<uint32_t>(num.number);
        if (at(TokenKind::Comma)) {
            next();
            const Token& which = expect(TokenKind::Ident, "associativity");
            if (which.text == "left")
                cmd.notation_assoc = Assoc::Left;
            else if (which.text == "right")
                cmd.notation_assoc = Assoc::Right;
            else if (which.text == "no")
                cmd.notation_assoc = Assoc::None;
            else
                err("expected left, right, or no associativity");
            const Token& assoc_kw = expect(TokenKind::Ident, "'associativity'");
            if (assoc_kw.text != "associativity") err("expected 'associativity'");
        }
        expect(TokenKind::RParen, "')' after notation modifiers");
    }
}

CommandPtr Parser::parse_command_core() {
    auto cmd = std::make_shared<Command>();
    const Token& kw = peek();
    cmd->span = kw.span;
    if (kw.kind != TokenKind::Keyword) err("expected a command");

    if (kw.text == "Fail") {
        next();
        cmd->kind = CommandKind::Fail;
        try {
            cmd->inner = parse_command_core();
        } catch (const Error& e) {
            // the wrapped command failed to parse: that is the expected failure
            skip_to_next_command();
            auto diag = std::make_shared<Diagnostic>(e.diag());
            auto failing = std::make_shared<Command>();
            failing->kind = CommandKind::Fail;
            failing->span = cmd->span;
            failing->parse_failure = diag;
            return failing;
        }
        return cmd;
    }

    if (kw.text == "Definition") {
        next();
        cmd->kind = CommandKind::Definition;
        cmd->name = expect(TokenKind::Ident, "definition name").text;
        if (at(TokenKind::LParen) || at(TokenKind::LBrace))
            cmd->params = parse_binder_groups(false);
        if (at(TokenKind::Colon)) {
            next();
            cmd->type = parse_term(LVL_TOP);
        }
        expect(TokenKind::ColonEq, "':='");
        cmd->body = parse_term(LVL_TOP);
    } else if (kw.text == "Axiom") {
        next();
        cmd->kind = CommandKind::Axiom;
        cmd->name = expect(TokenKind::Ident, "axiom name").text;
        expect(TokenKind::Colon, "':'");
        cmd->type = parse_term(LVL_TOP);
    } else if (kw.text == "Record") {
        next();
        cmd->kind = CommandKind::Record;
        cmd->name = expect(TokenKind::Ident, "record name").text;
        if (at(TokenKind::LParen) || at(TokenKind::LBrace))
            cmd->params = parse_binder_groups(false);
        expect(TokenKind::Colon, "':'");
        cmd->type = parse_term(LVL_TOP);
        expect(TokenKind::ColonEq, "':='");
        cmd->ctor_name = expect(TokenKind::Ident, "constructor name").text;
        expect(TokenKind::LBrace, "'{'");
        while (!at(TokenKind::RBrace)) {
            RecordFieldSyntax f;
            f.span = peek().span;
            f.name = expect(TokenKind::Ident, "field name").text;
            expect(TokenKind::Colon, "':'");
            f.type = parse_term(LVL_TOP);
            cmd->fields.push_back(std::move(f));
            if (at(TokenKind::Semicolon))
                next();
            else
                break;
        }
        expect(TokenKind::RBrace, "'}'");
    } else if (kw.text == "Inductive") {
        next();
        cmd->kind = CommandKind::Inductive;
        cmd->name = expect(TokenKind::Ident, "inductive name").text;
        if (at(TokenKind::LParen) || at(TokenKind::LBrace))
            cmd->params = parse_binder_groups(false);
        expect(TokenKind::Colon, "':'");
        cmd->type = parse_term(LVL_TOP);
        if (at(TokenKind::ColonEq)) {
            next();
            if (at(TokenKind::Pipe)) next();
            while (!at(TokenKind::Dot)) {
                ConstructorSyntax ctor;
                ctor.span = peek().span;
                ctor.name = expect(TokenKind::Ident, "constructor name").text;
                expect(TokenKind::Colon, "':'");
                ctor.type = parse_term(LVL_TOP);
                cmd->ctors.push_back(std::move(ctor));
                if (at(TokenKind::Pipe))
                    next();
                else
                    break;
            }
        }
    } else if (kw.text == "Coercion") {
        next();
        cmd->kind = CommandKind::Coercion;
        cmd->name = expect(TokenKind::Ident, "coercion function name").text;
        expect(TokenKind::Colon, "':'");
        cmd->coercion_src = expect(TokenKind::Ident, "source class").text;
        expect(TokenKind::CoerceArrow, "'>->'");
        if (peek().is_keyword("Type")) {
            next();
            cmd->coercion_target = "Type";
        } else {
            cmd->coercion_target = expect(TokenKind::Ident, "target class").text;
        }
    } else if (kw.text == "Canonical") {
        next();
        cmd->kind = CommandKind::Canonical;
        if (!peek().is_keyword("Structure")) err("expected 'Structure'");
        next();
        cmd->name = expect(TokenKind::Ident, "instance name").text;
    } else if (kw.text == "Notation") {
        next();
        cmd->kind = CommandKind::Notation;
        parse_notation_command(*cmd);
    } else if (kw.text == "Check") {
        next();
        cmd->kind = CommandKind::Check;
        cmd->body = parse_term(LVL_TOP);
    } else if (kw.text == "Eval") {
        next();
        cmd->kind = CommandKind::Eval;
        cmd->body = parse_term(LVL_TOP);
    } else {
        err("unknown command '" + kw.text + "'");
    }

    expect(TokenKind::Dot, "'.' ending the command");
    return cmd;
}

}  // namespace mtt
