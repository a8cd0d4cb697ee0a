/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "mtt/term.hpp"

#include <algorithm>
#include <cassert>

namespace mtt {

namespace {

std::shared_ptr<const TermData> make(TermData d) {
    return std::make_shared<const TermData>(std::move(d));
}

}  // namespace

Term Term::sort(SortLevel l) {
    TermData d;
    d.kind = TermKind::Sort;
    d.sort = l;
    return Term(make(std::move(d)));
}

Term Term::var(uint32_t index) {
    TermData d;
    d.kind = TermKind::Var;
    d.index = index;
    d.var_range = index + 1;
    return Term(make(std::move(d)));
}

Term Term::constant(Name name) {
    TermData d;
    d.kind = TermKind::Const;
    d.name = std::move(name);
    return Term(make(std::move(d)));
}

Term Term::app(Term fn, Term arg) {
    assert(!fn.is_null() && !arg.is_null());
    TermData d;
    d.kind = TermKind::App;
    d.var_range = std::max(fn.var_range(), arg.var_range());
    d.has_meta = fn.has_meta() || arg.has_meta();
    d.fn = std::move(fn);
    d.arg = std::move(arg);
    return Term(make(std::move(d)));
}

static uint32_t under_binder_range(const Term& body) {
    uint32_t r = body.var_range();
    return r > 0 ? r - 1 : 0;
}

Term Term::lam(std::string binder, Term domain, Term body) {
    TermData d;
    d.kind = TermKind::Lam;
    d.var_range = std::max(domain.var_range(), under_binder_range(body));
    d.has_meta = domain.has_meta() || body.has_meta();
    d.binder = std::move(binder);
    d.domain = std::move(domain);
    d.body = std::move(body);
    return Term(make(std::move(d)));
}

Term Term::pi(std::string binder, Term domain, Term codomain) {
    TermData d;
    d.kind = TermKind::Pi;
    d.var_range = std::max(domain.var_range(), under_binder_range(codomain));
    d.has_meta = domain.has_meta() || codomain.has_meta();
    d.binder = std::move(binder);
    d.domain = std::move(domain);
    d.body = std::move(codomain);
    return Term(make(std::move(d)));
}

Term Term::arrow(Term domain, Term codomain) {
    return pi("_", std::move(domain), lift(codomain, 0, 1));
}

Term Term::meta(MetaId id, std::vector<Term> spine) {
    TermData d;
    d.kind = TermKind::Meta;
    d.has_meta = true;
    for (const auto& s : spine) d.var_range = std::max(d.var_range, s.var_range());
    d.meta = id;
    d.spine = std::move(spine);
    return Term(make(std::move(d)));
}

TermKind Term::kind() const {
    assert(m_p);
    return m_p->kind;
}
SortLevel Term::sort_level() const { return m_p->sort; }
uint32_t Term::var_index() const { return m_p->index; }
const Name& Term::const_name() const { return m_p->name; }
const Term& Term::app_fn() const { return m_p->fn; }
const Term& Term::app_arg() const { return m_p->arg; }
const std::string& Term::binder_name() const { return m_p->binder; }
const Term& Term::domain() const { return m_p->domain; }
const Term& Term::body() const { return m_p->body; }
MetaId Term::meta_id() const { return m_p->meta; }
const std::vector<Term>& Term::meta_spine() const { return m_p->spine; }
uint32_t Term::var_range() const { return m_p ? m_p->var_range : 0; }
bool Term::has_meta() const { return m_p && m_p->has_meta; }

bool operator==(const Term& a, const Term& b) {
    if (a.m_p == b.m_p) return true;
    if (!a.m_p || !b.m_p) return false;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case TermKind::Sort: return a.sort_level() == b.sort_level();
        case TermKind::Var: return a.var_index() == b.var_index();
        case TermKind::Const: return a.const_name() == b.const_name();
        case TermKind::App: return a.app_fn() == b.app_fn() && a.app_arg() == b.app_arg();
        case TermKind::Lam:
        case TermKind::Pi:
            // display names ignored
            return a.domain() == b.domain() && a.body() == b.body();
        case TermKind::Meta: {
            if (a.meta_id() != b.meta_id()) return false;
            const auto& sa = a.meta_spine();
            const auto& sb = b.meta_spine();
            if (sa.size() != sb.size()) return false;
            for (size_t i = 0; i < sa.size(); ++i)
                if (!(sa[i] == sb[i])) return false;
            return true;
        }
    }
    return false;
}

Term remap_free(const Term& t,
                const std::function<std::optional<Term>(uint32_t, uint32_t)>& f) {
    struct Impl {
        const std::function<std::optional<Term>(uint32_t, uint32_t)>& f;
        Term go(const Term& t, uint32_t depth) {
            if (t.var_range() <= depth && !t.has_meta()) return t;  // nothing free to touch
            switch (t.kind()) {
                case TermKind::Sort:
                case TermKind::Const: return t;
                case TermKind::Var: {
                    uint32_t i = t.var_index();
                    if (i < depth) return t;
                    if (auto r = f(i - depth, depth)) return *r;
                    return t;
                }
                case TermKind::App: return Term::app(go(t.app_fn(), depth), go(t.app_arg(), depth));
                case TermKind::Lam:
                    return Term::lam(t.binder_name(), go(t.domain(), depth), go(t.body(), depth + 1));
                case TermKind::Pi:
                    return Term::pi(t.binder_name(), go(t.domain(), depth), go(t.body(), depth + 1));
                case TermKind::Meta: {
                    std::vector<Term> spine;
                    spine.reserve(t.meta_spine().size());
                    for (const auto& s : t.meta_spine()) spine.push_back(go(s, depth));
                    return Term::meta(t.meta_id(), std::move(spine));
                }
            }
            return t;
        }
    };
    Impl impl{f};
    return impl.go(t, 0);
}

Term lift(const Term& t, uint32_t cutoff, uint32_t amount) {
    if (amount == 0 || t.var_range() <= cutoff) return t;
    return remap_free(t, [&](uint32_t free_index, uint32_t depth) -> std::optional<Term> {
        if (free_index < cutoff) return std::nullopt;
        return Term::var(free_index + amount + depth);
    });
}

Term subst(const Term& t, uint32_t index, const Term& replacement) {
    if (t.var_range() <= index && !t.has_meta()) return t;
    return remap_free(t, [&](uint32_t free_index, uint32_t depth) -> std::optional<Term> {
        if (free_index == index) return lift(replacement, 0, depth);
        if (free_index > index) return Term::var(free_index - 1 + depth);
        return std::nullopt;
    });
}

std::pair<Term, std::vector<Term>> unfold_apps(const Term& t) {
    std::vector<Term> args;
    Term cur = t;
    while (cur.is(TermKind::App)) {
        args.push_back(cur.app_arg());
        cur = cur.app_fn();
    }
    std::reverse(args.begin(), args.end());
    return {cur, std::move(args)};
}

Term mk_apps(Term head, const std::vector<Term>& args) {
    Term t = std::move(head);
    for (const auto& a : args) t = Term::app(t, a);
    return t;
}

Term mk_apps(Term head, std::initializer_list<Term> args) {
    Term t = std::move(head);
    for (const auto& a : args) t = Term::app(t, a);
    return t;
}

bool mentions_meta(const Term& t, MetaId m) {
    if (!t.has_meta()) return false;
    switch (t.kind()) {
        case TermKind::Meta: {
            if (t.meta_id() == m) return true;
            for (const auto& s : t.meta_spine())
                if (mentions_meta(s, m)) return true;
            return false;
        }
        case TermKind::App: return mentions_meta(t.app_fn(), m) || mentions_meta(t.app_arg(), m);
        case TermKind::Lam:
        case TermKind::Pi: return mentions_meta(t.domain(), m) || mentions_meta(t.body(), m);
        default: return false;
    }
}

void collect_metas(const Term& t, std::vector<MetaId>& out) {
    if (!t.has_meta()) return;
    switch (t.kind()) {
        case TermKind::Meta:
            out.push_back(t.meta_id());
            for (const auto& s : t.meta_spine()) collect_metas(s, out);
            break;
        case TermKind::App:
            collect_metas(t.app_fn(), out);
            collect_metas(t.app_arg(), out);
            break;
        case TermKind::Lam:
        case TermKind::Pi:
            collect_metas(t.domain(), out);
            collect_metas(t.body(), out);
            break;
        default: break;
    }
}

Term pi_telescope(const Telescope& tele, Term inner) {
    Term t = std::move(inner);
    for (auto it = tele.rbegin(); it != tele.rend(); ++it) t = Term::pi(it->name, it->type, t);
    return t;
}

Term lam_telescope(const Telescope& tele, Term inner) {
    Term t = std::move(inner);
    for (auto it = tele.rbegin(); it != tele.rend(); ++it) t = Term::lam(it->name, it->type, t);
    return t;
}

static void raw_str_rec(const Term& t, std::string& out, bool paren) {
    if (t.is_null()) {
        out += "<null>";
        return;
    }
    switch (t.kind()) {
        case TermKind::Sort: out += t.sort_level().str(); break;
        case TermKind::Var: out += "#" + std::to_string(t.var_index()); break;
        case TermKind::Const: out += t.const_name(); break;
        case TermKind::App: {
            if (paren) out += "(";
            raw_str_rec(t.app_fn(), out, t.app_fn().is(TermKind::App) ? false : true);
            out += " ";
            raw_str_rec(t.app_arg(), out, true);
            if (paren) out += ")";
            break;
        }
        case TermKind::Lam:
        case TermKind::Pi: {
            if (paren) out += "(";
            out += t.is(TermKind::Lam) ? "fun " : "forall ";
            out += t.binder_name().empty() ? "_" : t.binder_name();
            out += " : ";
            raw_str_rec(t.domain(), out, true);
            out += t.is(TermKind::Lam) ? " => " : ", ";
            raw_str_rec(t.body(), out, false);
            if (paren) out += ")";
            break;
        }
        case TermKind::Meta: {
            out += "?" + std::to_string(t.meta_id());
            if (!t.meta_spine().empty()) {
                out += "[";
                bool first = true;
                for (const auto& s : t.meta_spine()) {
                    if (!first) out += ", ";
                    first = false;
                    raw_str_rec(s, out, false);
                }
                out += "]";
            }
            break;
        }
    }
}

std::string raw_str(const Term& t) {
    std::string out;
    raw_str_rec(t, out, false);
    return out;
}

}  // namespace mtt
