/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once
#include <set>
#include <string>
#include <vector>

#include "mtt/env.hpp"
#include "mtt/term.hpp"

namespace mtt {

struct PrintOptions {
    bool notations = false;       // infix sugar, including built-in `=`
    bool numerals = true;         // closed S/O chains as decimals
    bool hide_implicits = true;   // drop arguments at implicit positions
    /// Application nodes inserted by coercion handling; printed as their
    /// coerced argument unless shown explicitly.
    const std::set<const TermData*>* hidden = nullptr;

    static PrintOptions check_default() { return {}; }
    static PrintOptions everything() {
        PrintOptions o;
        o.hide_implicits = false;
        return o;
    }
    static PrintOptions with_notations() {
        PrintOptions o;
        o.notations = true;
        return o;
    }
};

/// Level-aware term rendering over an environment's notation and implicit
/// tables. Output re-parses to an alpha-equal term (binder names are
/// freshened against enclosing ones).
class Printer {
public:
    Printer(const Environment& env, PrintOptions opts = {}) : m_env(env), m_opts(opts) {}

    std::string print(const Term& t, std::vector<std::string> ctx_names = {}) const;
    std::string constraint(const Term& lhs, const Term& rhs,
                           const std::vector<std::string>& ctx_names = {}) const;

private:
    struct Frame;
    void go(const Term& t, uint32_t max_level, std::vector<std::string>& names,
            std::string& out) const;
    bool try_numeral(const Term& t, std::string& out) const;
    bool try_notation(const Term& t, uint32_t max_level, std::vector<std::string>& names,
                      std::string& out) const;
    std::string fresh_name(const std::string& base, const std::vector<std::string>& names,
                           const Term& body) const;

    const Environment& m_env;
    PrintOptions m_opts;
};

std::string print_term(const Environment& env, const Term& t, PrintOptions opts = {},
                       std::vector<std::string> ctx_names = {});

}  // namespace mtt
