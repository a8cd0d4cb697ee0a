/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "mtt/printer.hpp"

#include <algorithm>

namespace mtt {

namespace {

constexpr uint32_t LVL_ATOM = 0;
constexpr uint32_t LVL_APP = 10;
constexpr uint32_t LVL_BINDER = 200;
constexpr uint32_t LVL_TOP = 200;

bool references_var0(const Term& body) { return body.var_range() >= 1; }

}  // namespace

std::string print_term(const Environment& env, const Term& t, PrintOptions opts,
                       std::vector<std::string> ctx_names) {
    return Printer(env, opts).print(t, std::move(ctx_names));
}

std::string Printer::print(const Term& t, std::vector<std::string> names) const {
    std::string out;
    go(t, LVL_TOP, names, out);
    return out;
}

std::string Printer::constraint(const Term& lhs, const Term& rhs,
                                const std::vector<std::string>& ctx_names) const {
    std::vector<std::string> n1 = ctx_names, n2 = ctx_names;
    std::string out;
    go(lhs, LVL_TOP, n1, out);
    out += " ≡ ";
    go(rhs, LVL_TOP, n2, out);
    return out;
}

bool Printer::try_numeral(const Term& t, std::string& out) const {
    if (!m_opts.numerals) return false;
    uint64_t n = 0;
    Term cur = t;
    while (true) {
        if (cur.is_const("O")) {
            out += std::to_string(n);
            return true;
        }
        if (cur.is(TermKind::App) && cur.app_fn().is_const("S")) {
            ++n;
            cur = cur.app_arg();
            continue;
        }
        return false;
    }
}

bool Printer::try_notation(const Term& t, uint32_t max_level, std::vector<std::string>& names,
                           std::string& out) const {
    auto [head, args] = unfold_apps(t);

    const std::string* token = nullptr;
    uint32_t level = 0;
    Assoc assoc = Assoc::None;
    const Term* lhs = nullptr;
    const Term* rhs = nullptr;

    if (head.is_const("eq") && args.size() == 3) {
        static const std::string eq_token = "=";
        token = &eq_token;
        level = 70;
        assoc = Assoc::None;
        lhs = &args[1];
        rhs = &args[2];
    } else if (head.is(TermKind::Const)) {
        for (const auto& [tok, entry] : m_env.notations()) {
            if (entry.print_head != head.const_name()) continue;
            if (entry.print_pattern.size() != args.size()) continue;
            const Term* l = nullptr;
            const Term* r = nullptr;
            for (size_t i = 0; i < args.size(); ++i) {
                if (entry.print_pattern[i] == 0) l = &args[i];
                if (entry.print_pattern[i] == 1) r = &args[i];
            }
            if (!l || !r) continue;
            token = &entry.token;
            level = entry.level;
            assoc = entry.assoc;
            lhs = l;
            rhs = r;
            break;
        }
    }
    if (!token) return false;

    bool paren = level > max_level;
    if (paren) out += "(";
    uint32_t lmax = assoc == Assoc::Left ? level : level - 1;
    uint32_t rmax = assoc == Assoc::Right ? level : level - 1;
    go(*lhs, lmax, names, out);
    out += " " + *token + " ";
    go(*rhs, rmax, names, out);
    if (paren) out += ")";
    return true;
}

std::string Printer::fresh_name(const std::string& base, const std::vector<std::string>& names,
                                const Term& body) const {
    std::string name = base.empty() ? "_" : base;
    if (name == "_") {
        if (!references_var0(body)) return name;
        name = "x";
    }
    while (std::find(names.begin(), names.end(), name) != names.end()) name += "'";
    return name;
}

void Printer::go(const Term& t, uint32_t max_level, std::vector<std::string>& names,
                 std::string& out) const {
    if (t.is_null()) {
        out += "<null>";
        return;
    }
    switch (t.kind()) {
        case TermKind::Sort: {
            SortLevel s = t.sort_level();
            if (s.is_prop()) {
                out += "Prop";
                return;
            }
            bool paren = LVL_APP > max_level;
            if (paren) out += "(";
            out += "Type " + std::to_string(s.level);
            if (paren) out += ")";
            return;
        }
        case TermKind::Var: {
            uint32_t i = t.var_index();
            if (i < names.size())
                out += names[names.size() - 1 - i];
            else
                out += "#" + std::to_string(i);
            return;
        }
        case TermKind::Const:
            if (m_opts.numerals && t.const_name() == "O")
                out += "0";
            else
                out += t.const_name();
            return;
        case TermKind::Meta:
            out += "?" + std::to_string(t.meta_id());
            return;
        case TermKind::App: {
            if (try_numeral(t, out)) return;
            // inserted coercion: print the coerced argument only
            if (m_opts.hidden && m_opts.hidden->count(t.raw())) {
                go(t.app_arg(), max_level, names, out);
                return;
            }
            if (m_opts.notations && try_notation(t, max_level, names, out)) return;

            auto [head, args] = unfold_apps(t);
            // drop implicit arguments when the head carries markings
            if (m_opts.hide_implicits && head.is(TermKind::Const)) {
                if (const auto* flags = m_env.implicit_flags(head.const_name())) {
                    std::vector<Term> kept;
                    for (size_t i = 0; i < args.size(); ++i) {
                        if (i < flags->size() && (*flags)[i]) continue;
                        kept.push_back(args[i]);
                    }
                    if (!kept.empty() && kept.size() < args.size()) {
                        bool paren = LVL_APP > max_level;
                        if (paren) out += "(";
                        go(head, LVL_APP, names, out);
                        for (const auto& a : kept) {
                            out += " ";
                            go(a, LVL_ATOM, names, out);
                        }
                        if (paren) out += ")";
                        return;
                    }
                }
            }
            bool paren = LVL_APP > max_level;
            if (paren) out += "(";
            go(t.app_fn(), LVL_APP, names, out);
            out += " ";
            go(t.app_arg(), LVL_ATOM, names, out);
            if (paren) out += ")";
            return;
        }
        case TermKind::Lam:
        case TermKind::Pi: {
            const bool is_lam = t.is(TermKind::Lam);
            if (!is_lam && !references_var0(t.body())) {
                // non-dependent product: A -> B, right-associative level 99
                bool paren = 99 > max_level;
                if (paren) out += "(";
                go(t.domain(), 98, names, out);
                out += " -> ";
                names.push_back("_");
                go(t.body(), 99, names, out);
                names.pop_back();
                if (paren) out += ")";
                return;
            }
            bool paren = LVL_BINDER > max_level;
            if (paren) out += "(";
            out += is_lam ? "fun " : "forall ";

            // group consecutive binders sharing one domain (up to lifting)
            std::vector<std::string> group;
            Term dom = t.domain();
            Term cur = t;
            size_t base = names.size();
            for (;;) {
                std::string n = fresh_name(cur.binder_name(), names, cur.body());
                group.push_back(n);
                names.push_back(n);
                const Term& b = cur.body();
                if (b.kind() == cur.kind() &&
                    b.domain() == lift(dom, 0, static_cast<uint32_t>(group.size())) &&
                    (is_lam || references_var0(b.body()))) {
                    cur = b;
                    continue;
                }
                break;
            }
            for (size_t i = 0; i < group.size(); ++i) {
                if (i) out += " ";
                out += group[i];
            }
            out += " : ";
            {
                // domain printed in the enclosing scope
                std::vector<std::string> outer(names.begin(), names.begin() + base);
                go(dom, LVL_TOP, outer, out);
            }
            out += is_lam ? " => " : ", ";
            go(cur.body(), LVL_TOP, names, out);
            names.resize(base);
            if (paren) out += ")";
            return;
        }
    }
}

}  // namespace mtt
