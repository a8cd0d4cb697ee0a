/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "mtt/kernel.hpp"

namespace mtt {

void Kernel::spend(long& fuel) const {
    if (--fuel < 0)
        throw_error(DiagCategory::FuelExhausted, SourceSpan::synthetic(),
                    "reduction step budget exhausted (" + std::to_string(m_opts.conv_fuel) +
                        " steps); raise --fuel-conv if the input is legitimate");
}

Term Kernel::whnf(const Term& t, ReductionFlags flags) const {
    long fuel = m_opts.conv_fuel;
    return whnf_core(t, flags, fuel);
}

Term Kernel::whnf(const Term& t, ReductionFlags flags, long& fuel) const {
    return whnf_core(t, flags, fuel);
}

std::optional<Term> Kernel::unfold_head_once(const Term& t) const {
    auto [head, args] = unfold_apps(t);
    if (!head.is(TermKind::Const)) return std::nullopt;
    const ConstInfo* info = m_env.find(head.const_name());
    if (!info || info->kind != ConstKind::Definition) return std::nullopt;
    return mk_apps(*info->body, args);
}

Term Kernel::whnf_core(Term t, const ReductionFlags& flags, long& fuel) const {
    for (;;) {
        auto [head, args] = unfold_apps(t);

        if (head.is(TermKind::Lam) && !args.empty() && flags.beta) {
            spend(fuel);
            Term reduced = instantiate(head.body(), args[0]);
            std::vector<Term> rest(args.begin() + 1, args.end());
            t = mk_apps(reduced, rest);
            continue;
        }

        if (!head.is(TermKind::Const)) return t;
        const ConstInfo* info = m_env.find(head.const_name());
        if (!info) return t;

        if (flags.iota && info->kind == ConstKind::Projection) {
            const InductiveInfo* rec = m_env.inductive(info->parent);
            uint32_t pos = rec->n_params;  // the structure argument
            if (args.size() > pos) {
                Term s = whnf_core(args[pos], flags, fuel);
                auto [shead, sargs] = unfold_apps(s);
                if (shead.is(TermKind::Const)) {
                    const ConstInfo* si = m_env.find(shead.const_name());
                    if (si && si->kind == ConstKind::Constructor && si->parent == info->parent &&
                        sargs.size() == rec->n_params + rec->ctors[0].n_args) {
                        spend(fuel);
                        Term field = sargs[rec->n_params + info->field_index];
                        std::vector<Term> rest(args.begin() + pos + 1, args.end());
                        t = mk_apps(field, rest);
                        continue;
                    }
                }
                args[pos] = s;  // keep the reduced argument
                return mk_apps(head, args);
            }
        } else if (flags.iota && info->kind == ConstKind::Recursor) {
            const InductiveInfo* ind = m_env.inductive(info->parent);
            const uint32_t P = ind->n_params;
            const uint32_t C = static_cast<uint32_t>(ind->ctors.size());
            const uint32_t major_pos = P + 1 + C;
            if (args.size() > major_pos) {
                Term major = whnf_core(args[major_pos], flags, fuel);
                auto [mhead, margs] = unfold_apps(major);
                const ConstInfo* mi =
                    mhead.is(TermKind::Const) ? m_env.find(mhead.const_name()) : nullptr;
                if (mi && mi->kind == ConstKind::Constructor && mi->parent == info->parent) {
                    const CtorShape& shape = ind->ctors[mi->ctor_index];
                    if (margs.size() == P + shape.n_args) {
                        spend(fuel);
                        Term result = args[P + 1 + mi->ctor_index];  // the case
                        for (uint32_t j = 0; j < shape.n_args; ++j)
                            result = Term::app(result, margs[P + j]);
                        for (uint32_t j = 0; j < shape.n_args; ++j) {
                            if (!shape.recursive[j]) continue;
                            std::vector<Term> rec_args(args.begin(), args.begin() + major_pos);
                            rec_args.push_back(margs[P + j]);
                            result = Term::app(result, mk_apps(head, rec_args));
                        }
                        std::vector<Term> rest(args.begin() + major_pos + 1, args.end());
                        t = mk_apps(result, rest);
                        continue;
                    }
                }
                args[major_pos] = major;
                return mk_apps(head, args);
            }
        } else if (flags.iota && info->kind == ConstKind::EqRecursor) {
            // eq_rect A x P px y h ~> px when h is a reflexivity proof
            if (args.size() > 5) {
                Term h = whnf_core(args[5], flags, fuel);
                auto [hhead, hargs] = unfold_apps(h);
                if (hhead.is_const("eq_refl")) {
                    spend(fuel);
                    std::vector<Term> rest(args.begin() + 6, args.end());
                    t = mk_apps(args[3], rest);
                    continue;
                }
                args[5] = h;
                return mk_apps(head, args);
            }
        }

        if (flags.delta && info->kind == ConstKind::Definition) {
            spend(fuel);
            t = mk_apps(*info->body, args);
            continue;
        }
        return t;
    }
}

Term Kernel::normalize(const Term& t) const {
    long fuel = m_opts.conv_fuel;
    std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
        Term w = whnf_core(u, ReductionFlags::all(), fuel);
        switch (w.kind()) {
            case TermKind::App: return Term::app(go(w.app_fn()), go(w.app_arg()));
            case TermKind::Lam: return Term::lam(w.binder_name(), go(w.domain()), go(w.body()));
            case TermKind::Pi: return Term::pi(w.binder_name(), go(w.domain()), go(w.body()));
            case TermKind::Meta: {
                std::vector<Term> spine;
                spine.reserve(w.meta_spine().size());
                for (const auto& s : w.meta_spine()) spine.push_back(go(s));
                return Term::meta(w.meta_id(), std::move(spine));
            }
            default: return w;
        }
    };
    return go(t);
}

bool Kernel::is_def_eq(const Term& a, const Term& b) const {
    long fuel = m_opts.conv_fuel;
    return def_eq_core(a, b, fuel);
}

bool Kernel::is_def_eq(const Term& a, const Term& b, long& fuel) const {
    return def_eq_core(a, b, fuel);
}

bool Kernel::def_eq_core(const Term& a0, const Term& b0, long& fuel) const {
    if (a0 == b0) return true;
    Term a = whnf_core(a0, ReductionFlags::no_delta(), fuel);
    Term b = whnf_core(b0, ReductionFlags::no_delta(), fuel);
    if (a == b) return true;

    if (a.is(TermKind::Lam) && b.is(TermKind::Lam))
        return def_eq_core(a.domain(), b.domain(), fuel) && def_eq_core(a.body(), b.body(), fuel);
    if (a.is(TermKind::Pi) && b.is(TermKind::Pi))
        return def_eq_core(a.domain(), b.domain(), fuel) && def_eq_core(a.body(), b.body(), fuel);
    if (a.is(TermKind::Sort) && b.is(TermKind::Sort)) return a.sort_level() == b.sort_level();

    auto [ha, as] = unfold_apps(a);
    auto [hb, bs] = unfold_apps(b);

    auto unfoldable = [&](const Term& h) -> const ConstInfo* {
        if (!h.is(TermKind::Const)) return nullptr;
        const ConstInfo* i = m_env.find(h.const_name());
        return (i && i->kind == ConstKind::Definition) ? i : nullptr;
    };

    bool same_head = false;
    if (ha.kind() == hb.kind()) {
        switch (ha.kind()) {
            case TermKind::Const: same_head = ha.const_name() == hb.const_name(); break;
            case TermKind::Var: same_head = ha.var_index() == hb.var_index(); break;
            case TermKind::Meta:
                same_head = ha.meta_id() == hb.meta_id();
                break;
            default: break;
        }
    }

    if (same_head) {
        if (as.size() == bs.size()) {
            bool ok = true;
            for (size_t i = 0; i < as.size() && ok; ++i) ok = def_eq_core(as[i], bs[i], fuel);
            if (ok) return true;
        }
        const ConstInfo* ia = unfoldable(ha);
        if (!ia) return false;
        spend(fuel);
        spend(fuel);
        return def_eq_core(mk_apps(*ia->body, as), mk_apps(*ia->body, bs), fuel);
    }

    // lazy delta: unfold the more recently declared head first
    const ConstInfo* ia = unfoldable(ha);
    const ConstInfo* ib = unfoldable(hb);
    if (!ia && !ib) return false;
    bool unfold_a;
    if (ia && ib)
        unfold_a = ia->decl_index >= ib->decl_index;
    else
        unfold_a = ia != nullptr;
    spend(fuel);
    if (unfold_a) return def_eq_core(mk_apps(*ia->body, as), b, fuel);
    return def_eq_core(a, mk_apps(*ib->body, bs), fuel);
}

bool Kernel::is_sub(const Term& a, const Term& b) const {
    long fuel = m_opts.conv_fuel;
    return is_sub_core(a, b, fuel);
}

bool Kernel::is_sub(const Term& a, const Term& b, long& fuel) const {
    return is_sub_core(a, b, fuel);
}

bool Kernel::is_sub_core(const Term& a0, const Term& b0, long& fuel) const {
    if (a0 == b0) return true;
    Term a = whnf_core(a0, ReductionFlags::all(), fuel);
    Term b = whnf_core(b0, ReductionFlags::all(), fuel);
    if (a.is(TermKind::Sort) && b.is(TermKind::Sort))
        return a.sort_level().sub(b.sort_level());
    if (a.is(TermKind::Pi) && b.is(TermKind::Pi))
        return def_eq_core(a.domain(), b.domain(), fuel) && is_sub_core(a.body(), b.body(), fuel);
    return def_eq_core(a, b, fuel);
}

SortLevel Kernel::sort_of(const Telescope& ctx, const Term& type) const {
    Telescope c = ctx;
    long fuel = m_opts.conv_fuel;
    Term s = whnf_core(infer_core(c, type, fuel), ReductionFlags::all(), fuel);
    if (!s.is(TermKind::Sort))
        throw_error(DiagCategory::SortError, SourceSpan::synthetic(),
                    "expected a sort, got " + raw_str(s), raw_str(type));
    return s.sort_level();
}

Term Kernel::infer_type(const Telescope& ctx, const Term& t) const {
    Telescope c = ctx;
    long fuel = m_opts.conv_fuel;
    return infer_core(c, t, fuel);
}

Term Kernel::infer_core(Telescope& ctx, const Term& t, long& fuel) const {
    switch (t.kind()) {
        case TermKind::Sort: return Term::sort(t.sort_level().succ());
        case TermKind::Var: {
            uint32_t i = t.var_index();
            if (i >= ctx.size())
                throw_error(DiagCategory::UnboundVariable, SourceSpan::synthetic(),
                            "unbound variable #" + std::to_string(i));
            return lift(ctx[ctx.size() - 1 - i].type, 0, i + 1);
        }
        case TermKind::Const: return m_env.get(t.const_name()).type;
        case TermKind::App: {
            Term tf = whnf_core(infer_core(ctx, t.app_fn(), fuel), ReductionFlags::all(), fuel);
            if (!tf.is(TermKind::Pi))
                throw_error(DiagCategory::NotAFunction, SourceSpan::synthetic(),
                            "applied term is not a function",
                            raw_str(t.app_fn()) + " : " + raw_str(tf));
            Term ta = infer_core(ctx, t.app_arg(), fuel);
            if (!is_sub_core(ta, tf.domain(), fuel))
                throw_error(DiagCategory::TypeMismatch, SourceSpan::synthetic(),
                            "argument type mismatch",
                            "expected " + raw_str(tf.domain()) + ", got " + raw_str(ta));
            return instantiate(tf.body(), t.app_arg());
        }
        case TermKind::Lam: {
            Term ds = whnf_core(infer_core(ctx, t.domain(), fuel), ReductionFlags::all(), fuel);
            if (!ds.is(TermKind::Sort))
                throw_error(DiagCategory::SortError, SourceSpan::synthetic(),
                            "binder domain is not a type", raw_str(t.domain()));
            ctx.push_back({t.binder_name(), t.domain()});
            Term tb = infer_core(ctx, t.body(), fuel);
            ctx.pop_back();
            return Term::pi(t.binder_name(), t.domain(), tb);
        }
        case TermKind::Pi: {
            Term ds = whnf_core(infer_core(ctx, t.domain(), fuel), ReductionFlags::all(), fuel);
            if (!ds.is(TermKind::Sort))
                throw_error(DiagCategory::SortError, SourceSpan::synthetic(),
                            "product domain is not a type", raw_str(t.domain()));
            ctx.push_back({t.binder_name(), t.domain()});
            Term cs = whnf_core(infer_core(ctx, t.body(), fuel), ReductionFlags::all(), fuel);
            ctx.pop_back();
            if (!cs.is(TermKind::Sort))
                throw_error(DiagCategory::SortError, SourceSpan::synthetic(),
                            "product codomain is not a type", raw_str(t.body()));
            return Term::sort(SortLevel::pi_rule(ds.sort_level(), cs.sort_level()));
        }
        case TermKind::Meta:
            throw_error(DiagCategory::UnresolvedMeta, SourceSpan::synthetic(),
                        "metavariable reached the meta-free checker: ?" +
                            std::to_string(t.meta_id()));
    }
    throw_error(DiagCategory::SortError, SourceSpan::synthetic(), "unreachable term kind");
}

}  // namespace mtt
