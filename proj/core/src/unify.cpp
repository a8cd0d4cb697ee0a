/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "mtt/unify.hpp"

#include <algorithm>
#include <cassert>

namespace mtt {

namespace {

/// Beta-apply a closed lambda-abstraction to a substitution spine.
Term apply_value(Term value, const std::vector<Term>& spine) {
    for (const auto& s : spine) {
        assert(value.is(TermKind::Lam));
        value = instantiate(value.body(), s);
    }
    return value;
}

void collect_free_vars(const Term& t, uint32_t depth, std::vector<uint32_t>& out) {
    switch (t.kind()) {
        case TermKind::Var:
            if (t.var_index() >= depth) out.push_back(t.var_index() - depth);
            break;
        case TermKind::App:
            collect_free_vars(t.app_fn(), depth, out);
            collect_free_vars(t.app_arg(), depth, out);
            break;
        case TermKind::Lam:
        case TermKind::Pi:
            collect_free_vars(t.domain(), depth, out);
            collect_free_vars(t.body(), depth + 1, out);
            break;
        case TermKind::Meta:
            for (const auto& s : t.meta_spine()) collect_free_vars(s, depth, out);
            break;
        default: break;
    }
}

std::vector<std::string> ctx_names(const Telescope& ctx) {
    std::vector<std::string> names;
    names.reserve(ctx.size());
    for (const auto& b : ctx) names.push_back(b.name);
    return names;
}

}  // namespace

MetaId ElabState::fresh_meta(const Telescope& ctx, Term type, MetaOrigin origin) {
    MetaDecl d;
    d.id = static_cast<MetaId>(m_metas.size());
    d.ctx = ctx;
    d.type = std::move(type);
    d.origin = std::move(origin);
    m_metas.push_back(std::move(d));
    return m_metas.back().id;
}

Term ElabState::meta_term(MetaId id) const {
    const MetaDecl& d = m_metas[id];
    const uint32_t k = static_cast<uint32_t>(d.ctx.size());
    std::vector<Term> spine;
    spine.reserve(k);
    for (uint32_t i = 0; i < k; ++i) spine.push_back(Term::var(k - 1 - i));
    return Term::meta(id, std::move(spine));
}

Term ElabState::zonk(const Term& t) const {
    if (!t.has_meta()) return t;
    switch (t.kind()) {
        case TermKind::Meta: {
            const MetaDecl& d = m_metas[t.meta_id()];
            bool changed = false;
            std::vector<Term> spine;
            spine.reserve(t.meta_spine().size());
            for (const auto& s : t.meta_spine()) {
                Term z = zonk(s);
                changed = changed || z.raw() != s.raw();
                spine.push_back(std::move(z));
            }
            if (d.value) return zonk(apply_value(*d.value, spine));
            return changed ? Term::meta(t.meta_id(), std::move(spine)) : t;
        }
        case TermKind::App: {
            Term f = zonk(t.app_fn());
            Term a = zonk(t.app_arg());
            if (f.raw() == t.app_fn().raw() && a.raw() == t.app_arg().raw()) return t;
            return Term::app(std::move(f), std::move(a));
        }
        case TermKind::Lam:
        case TermKind::Pi: {
            Term d = zonk(t.domain());
            Term b = zonk(t.body());
            if (d.raw() == t.domain().raw() && b.raw() == t.body().raw()) return t;
            return t.is(TermKind::Lam) ? Term::lam(t.binder_name(), std::move(d), std::move(b))
                                       : Term::pi(t.binder_name(), std::move(d), std::move(b));
        }
        default: return t;
    }
}

ElabState::Savepoint ElabState::save() const { return {m_assign_log.size(), m_postponed}; }

void ElabState::rollback(const Savepoint& sp) {
    while (m_assign_log.size() > sp.log_mark) {
        m_metas[m_assign_log.back()].value.reset();
        m_assign_log.pop_back();
    }
    m_postponed = sp.queue;
}

void ElabState::trace(int resource, const std::string& action, const std::string& result,
                      const std::string& note, const Telescope& ctx, const Term& lhs,
                      const Term& rhs, const SourceSpan& span) {
    ++m_steps;
    if (!m_trace) return;
    TraceRecord r;
    r.phase = "unify";
    // lhs/rhs are the sides as they stood when this step ran; re-zonking here
    // would hide the metavariables the step acted on
    Printer p(env(), PrintOptions::everything());
    r.constraint = p.constraint(lhs, rhs, ctx_names(ctx));
    r.resource = resource;
    r.action = action;
    r.result = result;
    r.note = note;
    r.span = span;
    m_trace->record(r);
}

void ElabState::fail(DiagCategory cat, const std::string& msg, const Telescope& ctx,
                     const Term& lhs, const Term& rhs, const SourceSpan& span) {
    Printer p(env(), PrintOptions::everything());
    throw_error(cat, span, msg, p.constraint(zonk(lhs), zonk(rhs), ctx_names(ctx)));
}

void ElabState::postpone(const Telescope& ctx, const Term& lhs, const Term& rhs,
                         const SourceSpan& span) {
    m_postponed.push_back(Constraint{ctx, lhs, rhs, span});
}

void ElabState::assign(MetaId m, Term value, const SourceSpan&) {
    assert(!m_metas[m].value.has_value());  // assignments are monotone
    m_metas[m].value = std::move(value);
    m_assign_log.push_back(m);
}

bool ElabState::solve_pattern(MetaId m, const std::vector<Term>& spine, const Term& rhs0,
                              const SourceSpan& span) {
    // Miller condition: the spine lists distinct local variables
    std::vector<uint32_t> vars;
    vars.reserve(spine.size());
    for (const auto& s : spine) {
        if (!s.is(TermKind::Var)) return false;
        uint32_t v = s.var_index();
        if (std::find(vars.begin(), vars.end(), v) != vars.end()) return false;
        vars.push_back(v);
    }
    const MetaDecl& decl = m_metas[m];
    if (vars.size() != decl.ctx.size()) return false;

    Term rhs = zonk(rhs0);
    if (mentions_meta(rhs, m)) {
        Printer p(env(), PrintOptions::everything());
        throw_error(DiagCategory::OccursCheck, span,
                    "occurs check failed while solving ?" + std::to_string(m),
                    p.constraint(meta_term(m), rhs));
    }

    std::vector<uint32_t> free;
    collect_free_vars(rhs, 0, free);
    for (uint32_t f : free) {
        if (std::find(vars.begin(), vars.end(), f) == vars.end()) {
            if (rhs.has_meta()) return false;  // another assignment may prune it
            throw_error(DiagCategory::ScopeError, span,
                        "solution for ?" + std::to_string(m) +
                            " mentions a variable outside its scope");
        }
    }

    const uint32_t k = static_cast<uint32_t>(vars.size());
    Term body = remap_free(rhs, [&](uint32_t free_index, uint32_t depth) -> std::optional<Term> {
        auto it = std::find(vars.begin(), vars.end(), free_index);
        assert(it != vars.end());
        uint32_t i = static_cast<uint32_t>(it - vars.begin());
        return Term::var(k - 1 - i + depth);
    });
    assign(m, lam_telescope(decl.ctx, body), span);
    return true;
}

bool ElabState::is_stuck_flex(const Term& t) const {
    auto [h, args] = unfold_apps(t);
    if (h.is(TermKind::Meta)) return true;
    if (!h.is(TermKind::Const)) return false;
    const ConstInfo* info = env().find(h.const_name());
    if (!info) return false;
    size_t pos;
    switch (info->kind) {
        case ConstKind::Projection: {
            const InductiveInfo* ind = env().inductive(info->parent);
            pos = ind->n_params;
            break;
        }
        case ConstKind::Recursor: {
            const InductiveInfo* ind = env().inductive(info->parent);
            pos = ind->n_params + 1 + ind->ctors.size();
            break;
        }
        case ConstKind::EqRecursor: pos = 5; break;
        default: return false;
    }
    return args.size() > pos && is_stuck_flex(args[pos]);
}

UnifyResult ElabState::unify(const Telescope& ctx, const Term& lhs, const Term& rhs,
                             const SourceSpan& span) {
    Savepoint sp = save();
    m_r4_budget = m_opts.unify_fuel;
    size_t queued_before = m_postponed.size();
    try {
        unify_core(ctx, lhs, rhs, span, 0);
        UnifyResult r;
        r.status =
            m_postponed.size() > queued_before ? UnifyStatus::Postponed : UnifyStatus::Solved;
        return r;
    } catch (const Error& e) {
        rollback(sp);
        UnifyResult r;
        r.status = UnifyStatus::Failed;
        r.failure = e.diag();
        return r;
    }
}

bool ElabState::try_hint(const Telescope& ctx, const Term& proj_side, const Term& rigid_side,
                         const SourceSpan& span, int depth) {
    auto [h, args] = unfold_apps(proj_side);
    if (!h.is(TermKind::Const)) return false;
    const ConstInfo* info = env().find(h.const_name());
    if (!info || info->kind != ConstKind::Projection) return false;
    const InductiveInfo* ind = env().inductive(info->parent);
    const uint32_t P = ind->n_params;
    if (args.size() < P + 1) return false;
    if (is_stuck_flex(rigid_side)) return false;

    Term keyed = m_kernel.whnf(rigid_side);
    auto key = head_key(keyed);
    if (!key) return false;
    auto inst = env().hint_lookup(h.const_name(), *key);
    if (!inst) {
        if (is_stuck_flex(args[P]))
            trace(3, "hint-miss", "miss", key->str(), ctx, proj_side, rigid_side, span);
        return false;
    }

    Savepoint sp = save();
    try {
        std::vector<Term> head_args(args.begin(), args.begin() + P);
        Term canonical = mk_apps(mk_apps(h, head_args), {Term::constant(*inst)});
        Term original = mk_apps(mk_apps(h, head_args), {args[P]});
        unify_core(ctx, canonical, original, span, depth + 1);

        Term field_value = m_kernel.whnf(canonical);
        std::vector<Term> trailing(args.begin() + P + 1, args.end());
        unify_core(ctx, mk_apps(field_value, trailing), rigid_side, span, depth + 1);
        trace(3, "hint", "ok", *inst, ctx, proj_side, rigid_side, span);
        return true;
    } catch (const Error&) {
        rollback(sp);
        trace(3, "hint", "fail", *inst, ctx, proj_side, rigid_side, span);
        return false;
    }
}

void ElabState::wake(MetaId m, int depth) {
    std::vector<Constraint> woken;
    for (size_t i = 0; i < m_postponed.size();) {
        const Constraint& c = m_postponed[i];
        if (mentions_meta(c.lhs, m) || mentions_meta(c.rhs, m)) {
            woken.push_back(c);
            m_postponed.erase(m_postponed.begin() + static_cast<long>(i));
        } else {
            ++i;
        }
    }
    for (const auto& c : woken) unify_core(c.ctx, c.lhs, c.rhs, c.span, depth + 1);
}

void ElabState::unify_core(const Telescope& ctx, const Term& lhs, const Term& rhs,
                           const SourceSpan& span, int depth) {
    if (depth > m_opts.max_depth)
        fail(DiagCategory::UnificationFuelExhausted, "unification recursion limit reached", ctx,
             lhs, rhs, span);

    Term t = zonk(lhs);
    Term u = zonk(rhs);
    if (t == u) {
        trace(1, "refl", "ok", "", ctx, t, u, span);
        return;
    }

    auto [th, ta] = unfold_apps(t);
    auto [uh, ua] = unfold_apps(u);
    const bool tflex = th.is(TermKind::Meta);
    const bool uflex = uh.is(TermKind::Meta);

    // (1) rigid-rigid decomposition
    if (!tflex && !uflex) {
        if (t.is(TermKind::Lam) && u.is(TermKind::Lam)) {
            trace(1, "decompose-lam", "ok", "", ctx, t, u, span);
            unify_core(ctx, t.domain(), u.domain(), span, depth + 1);
            Telescope inner = ctx;
            inner.push_back({t.binder_name(), t.domain()});
            unify_core(inner, t.body(), u.body(), span, depth + 1);
            return;
        }
        if (t.is(TermKind::Pi) && u.is(TermKind::Pi)) {
            trace(1, "decompose-pi", "ok", "", ctx, t, u, span);
            unify_core(ctx, t.domain(), u.domain(), span, depth + 1);
            Telescope inner = ctx;
            inner.push_back({t.binder_name(), t.domain()});
            unify_core(inner, t.body(), u.body(), span, depth + 1);
            return;
        }
        bool same_head = false;
        if (th.is(TermKind::Const) && uh.is(TermKind::Const))
            same_head = th.const_name() == uh.const_name();
        else if (th.is(TermKind::Var) && uh.is(TermKind::Var))
            same_head = th.var_index() == uh.var_index();
        if (same_head && ta.size() == ua.size()) {
            Savepoint sp = save();
            try {
                for (size_t i = 0; i < ta.size(); ++i)
                    unify_core(ctx, ta[i], ua[i], span, depth + 1);
                trace(1, "decompose", "ok", "", ctx, t, u, span);
                return;
            } catch (const Error&) {
                rollback(sp);
                const ConstInfo* info =
                    th.is(TermKind::Const) ? env().find(th.const_name()) : nullptr;
                if (!info || info->kind != ConstKind::Definition) throw;
                // defined head: fall through and reduce instead
            }
        }
    }

    // (2) flex-rigid pattern solving; flex-flex and non-patterns postpone
    if (tflex || uflex) {
        if (tflex && uflex) {
            postpone(ctx, t, u, span);
            trace(2, "flex-flex", "postponed", "", ctx, t, u, span);
            return;
        }
        const Term& flex = tflex ? t : u;
        const Term& rigid = tflex ? u : t;
        if (flex.is(TermKind::Meta)) {
            if (solve_pattern(flex.meta_id(), flex.meta_spine(), rigid, span)) {
                trace(2, "assign", "ok", "?" + std::to_string(flex.meta_id()), ctx, t, u, span);
                wake(flex.meta_id(), depth);
                return;
            }
            postpone(ctx, t, u, span);
            trace(2, "postpone", "postponed", "non-pattern or blocked scope", ctx, t, u, span);
            return;
        }
        // metavariable under extra applications: outside the pattern fragment
        postpone(ctx, t, u, span);
        trace(2, "postpone", "postponed", "applied metavariable", ctx, t, u, span);
        return;
    }

    // (3) canonical structure hints
    if (!no_hints) {
        if (try_hint(ctx, t, u, span, depth)) return;
        if (try_hint(ctx, u, t, span, depth)) return;
    }

    // (4) reduce one side: iota/beta first, then one delta unfolding
    auto step = [&](const Term& side) -> std::optional<std::pair<Term, bool>> {
        Term w = m_kernel.whnf(side, ReductionFlags::no_delta());
        if (!(w == side)) return std::make_pair(w, false);
        if (auto d = m_kernel.unfold_head_once(side)) return std::make_pair(*d, true);
        return std::nullopt;
    };
    for (int side = 0; side < 2; ++side) {
        const Term& cur = side == 0 ? t : u;
        if (auto next = step(cur)) {
            if (next->second && --m_r4_budget < 0)
                fail(DiagCategory::UnificationFuelExhausted,
                     "unification unfolding budget exhausted", ctx, t, u, span);
            trace(4, next->second ? "delta" : "whnf", "ok", "", ctx, t, u, span);
            if (side == 0)
                unify_core(ctx, next->first, u, span, depth + 1);
            else
                unify_core(ctx, t, next->first, span, depth + 1);
            return;
        }
    }

    // nothing applies: a side blocked on a metavariable waits for it
    if (is_stuck_flex(t) || is_stuck_flex(u)) {
        postpone(ctx, t, u, span);
        trace(2, "postpone", "postponed", "stuck on metavariable", ctx, t, u, span);
        return;
    }
    trace(1, "mismatch", "fail", "", ctx, t, u, span);
    fail(DiagCategory::Mismatch, "cannot unify the two sides", ctx, t, u, span);
}

std::vector<Diagnostic> ElabState::finalize() {
    std::vector<Diagnostic> out;
    std::vector<Constraint> q;
    std::swap(q, m_postponed);
    for (const auto& c : q) {
        UnifyResult r = unify(c.ctx, c.lhs, c.rhs, c.span);
        if (!r.ok()) out.push_back(*r.failure);
    }

    std::set<MetaId> blamed;
    Printer p(env(), PrintOptions::everything());
    for (const auto& c : m_postponed) {
        Term l = zonk(c.lhs);
        Term r = zonk(c.rhs);
        Diagnostic d;
        d.category = DiagCategory::StuckConstraint;
        d.span = c.span;
        d.message = "cannot solve constraint";
        d.detail = p.constraint(l, r, ctx_names(c.ctx));
        out.push_back(std::move(d));
        std::vector<MetaId> ms;
        collect_metas(l, ms);
        collect_metas(r, ms);
        for (MetaId m : ms) blamed.insert(m);
    }
    for (const auto& md : m_metas) {
        if (md.value || blamed.count(md.id)) continue;
        Diagnostic d;
        d.category = DiagCategory::UnresolvedMeta;
        d.span = md.origin.span;
        switch (md.origin.reason) {
            case MetaReason::ImplicitArg:
                d.message = "cannot infer implicit argument ?" + std::to_string(md.id) +
                            " of " + md.origin.about;
                break;
            case MetaReason::NotationHole:
                d.message = "cannot infer notation argument ?" + std::to_string(md.id);
                break;
            case MetaReason::CoercionProbe:
                d.message = "cannot infer coercion parameter ?" + std::to_string(md.id);
                break;
            default:
                d.message = "cannot infer a term for hole ?" + std::to_string(md.id);
                break;
        }
        d.detail = p.print(zonk(md.type), ctx_names(md.ctx));
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace mtt
