/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "mtt/elab.hpp"

#include <algorithm>

#include "mtt/printer.hpp"

namespace mtt {

namespace {

/// Re-point synthetic spans produced by declare()/kernel at the command.
template <typename F>
auto with_span(const SourceSpan& span, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.diag().span.file == "<internal>") {
            Diagnostic d = e.diag();
            d.span = span;
            throw Error(std::move(d));
        }
        throw;
    }
}

SurfacePtr expand_builtin_eq(const SurfacePtr& lhs, const SurfacePtr& rhs,
                             const SourceSpan& span) {
    SurfacePtr head = s_ref("eq", span);
    SurfacePtr withA = s_app(head, s_hole(span), span);
    return s_app(s_app(withA, lhs, span), rhs, span);
}

}  // namespace

std::vector<bool> surface_implicit_flags(const std::vector<SurfaceBinderGroup>& params,
                                         const SurfacePtr& annotation) {
    std::vector<bool> flags;
    for (const auto& g : params)
        for (size_t i = 0; i < g.names.size(); ++i) flags.push_back(g.implicit);
    const SurfaceTerm* cur = annotation.get();
    while (cur && cur->kind == SurfaceKind::Pi) {
        for (const auto& g : cur->binders)
            for (size_t i = 0; i < g.names.size(); ++i) flags.push_back(g.implicit);
        cur = cur->body.get();
    }
    while (!flags.empty() && !flags.back()) flags.pop_back();
    return flags;
}

void Elaborator::trace_elab(const std::string& action, const std::string& note,
                            const SourceSpan& span) {
    if (!m_trace) return;
    TraceRecord r;
    r.phase = "elab";
    r.action = action;
    r.result = "ok";
    r.note = note;
    r.span = span;
    m_trace->record(r);
}

std::vector<Elaborator::FlatBinder> Elaborator::flatten(
    const std::vector<SurfaceBinderGroup>& groups) {
    std::vector<FlatBinder> out;
    for (const auto& g : groups) {
        bool first = true;
        for (const auto& n : g.names) {
            FlatBinder b;
            b.name = n;
            b.type = g.type;
            b.group_start = first;
            b.implicit = g.implicit;
            b.span = g.span;
            out.push_back(std::move(b));
            first = false;
        }
    }
    return out;
}

std::optional<CoercionClass> Elaborator::class_of(const Term& whnf_ty) const {
    auto [head, args] = unfold_apps(whnf_ty);
    switch (head.kind()) {
        case TermKind::Const: return CoercionClass::named(head.const_name());
        case TermKind::Sort: return CoercionClass::sortclass();
        case TermKind::Pi: return CoercionClass::funclass();
        default: return std::nullopt;
    }
}

std::pair<Term, Term> Elaborator::apply_coercion_path(Telescope& ctx, Term t, Term ty,
                                                      const std::vector<Name>& path,
                                                      const SourceSpan& span) {
    // canonical-structure resolution stays off inside coercion handling
    bool saved = m_state.no_hints;
    m_state.no_hints = true;
    for (const Name& fn : path) {
        const ConstInfo& info = m_env.get(fn, span);
        Term fty = m_kernel.whnf(info.type);
        if (!fty.is(TermKind::Pi))
            throw_error(DiagCategory::BadCoercionTarget, span,
                        "registered coercion " + fn + " is not a function");
        UnifyResult r = m_state.unify(ctx, m_state.zonk(ty), fty.domain(), span);
        if (!r.ok()) {
            m_state.no_hints = saved;
            Printer p(m_env, PrintOptions::everything());
            throw_error(DiagCategory::TypeMismatch, span,
                        "coercion " + fn + " does not apply",
                        p.constraint(m_state.zonk(ty), fty.domain()));
        }
        Term applied = Term::app(Term::constant(fn), t);
        m_state.mark_inserted(applied);
        trace_elab("insert-coercion", fn, span);
        ty = instantiate(fty.body(), t);
        t = applied;
    }
    m_state.no_hints = saved;
    return {t, ty};
}

std::pair<Term, Term> Elaborator::coerce_or_fail(Telescope& ctx, const Term& t, const Term& have,
                                                 const Term& want, const SourceSpan& span) {
    Printer p(m_env, PrintOptions::everything());
    Term have_z = m_state.zonk(have);
    Term want_z = m_state.zonk(want);
    Term have_w = m_kernel.whnf(have_z);
    Term want_w = m_kernel.whnf(want_z);
    auto hc = class_of(have_w);
    auto wc = class_of(want_w);
    auto mismatch = [&]() -> Error {
        return Error(Diagnostic{DiagCategory::TypeMismatch, span, "type mismatch",
                                "expected " + p.print(want_z) + ", got " + p.print(have_z)});
    };
    if (!hc || !wc || *hc == *wc) throw mismatch();
    const std::vector<Name>* path = m_env.coercion_path(*hc, *wc);
    if (!path)
        throw_error(DiagCategory::NoCoercionPath, span,
                    "no coercion from " + hc->str() + " to " + wc->str(),
                    "expected " + p.print(want_w) + ", got " + p.print(have_w));
    auto [t2, ty2] = apply_coercion_path(ctx, t, have, *path, span);

    Term h2 = m_state.zonk(ty2);
    Term w2 = m_state.zonk(want);
    if (!h2.has_meta() && !w2.has_meta()) {
        if (!m_kernel.is_sub(h2, w2)) throw mismatch();
    } else {
        UnifyResult r = m_state.unify(ctx, h2, w2, span);
        if (!r.ok()) throw mismatch();
    }
    return {t2, ty2};
}

std::pair<Term, Term> Elaborator::finish(Telescope& ctx, Term t, Term ty,
                                         const std::optional<Term>& expected,
                                         const SourceSpan& span) {
    if (!expected) return {std::move(t), std::move(ty)};
    Term have = m_state.zonk(ty);
    Term want = m_state.zonk(*expected);

    if (!have.has_meta() && !want.has_meta()) {
        if (m_kernel.is_sub(have, want)) return {std::move(t), std::move(ty)};
        return coerce_or_fail(ctx, t, have, want, span);
    }
    UnifyResult r = m_state.unify(ctx, have, want, span);
    if (r.ok()) return {std::move(t), std::move(ty)};
    if (r.failure->category == DiagCategory::Mismatch)
        return coerce_or_fail(ctx, t, have, want, span);
    Diagnostic d = *r.failure;
    if (d.span.file == "<internal>") d.span = span;
    throw Error(std::move(d));
}

void Elaborator::insert_implicits(Telescope& ctx, Term& t, Term& ty, const Name& name,
                                  const SourceSpan& span) {
    const std::vector<bool>* flags = m_env.implicit_flags(name);
    if (!flags) return;
    for (size_t i = 0; i < flags->size() && (*flags)[i]; ++i) {
        Term tyw = m_kernel.whnf(m_state.zonk(ty));
        if (!tyw.is(TermKind::Pi)) break;
        MetaId m = m_state.fresh_meta(ctx, tyw.domain(),
                                      MetaOrigin{span, MetaReason::ImplicitArg, name});
        Term mt = m_state.meta_term(m);
        trace_elab("insert-implicit", name + "#" + std::to_string(i), span);
        t = Term::app(t, mt);
        ty = instantiate(tyw.body(), mt);
    }
}

std::pair<Term, Term> Elaborator::elab_ref(Telescope& ctx, const std::string& name, bool at_mode,
                                           const SourceSpan& span) {
    for (size_t i = ctx.size(); i-- > 0;) {
        if (ctx[i].name == name) {
            uint32_t idx = static_cast<uint32_t>(ctx.size() - 1 - i);
            return {Term::var(idx), lift(ctx[i].type, 0, idx + 1)};
        }
    }
    const ConstInfo& info = m_env.get(name, span);
    Term t = Term::constant(name);
    Term ty = info.type;
    if (!at_mode) insert_implicits(ctx, t, ty, name, span);
    return {t, ty};
}

std::pair<Term, Term> Elaborator::elab_app(Telescope& ctx, const SurfacePtr& s) {
    auto [f, fty] = elaborate(ctx, s->a, std::nullopt);
    Term fty_w = m_kernel.whnf(m_state.zonk(fty));
    if (!fty_w.is(TermKind::Pi)) {
        if (fty_w.has_meta() && unfold_apps(fty_w).first.is(TermKind::Meta))
            throw_error(DiagCategory::NotAFunction, s->a->span,
                        "cannot infer the type of the applied term");
        // Funclass coercion: the head is used as a function but is not one
        auto hc = class_of(fty_w);
        const std::vector<Name>* path =
            hc ? m_env.coercion_path(*hc, CoercionClass::funclass()) : nullptr;
        if (!path) {
            Printer p(m_env, PrintOptions::everything());
            throw_error(DiagCategory::NotAFunction, s->a->span,
                        "this term is not a function", p.print(fty_w));
        }
        std::tie(f, fty) = apply_coercion_path(ctx, f, fty_w, *path, s->a->span);
        fty_w = m_kernel.whnf(m_state.zonk(fty));
        if (!fty_w.is(TermKind::Pi))
            throw_error(DiagCategory::NotAFunction, s->a->span,
                        "this term is not a function even after coercion");
    }
    auto [a, aty] = elaborate(ctx, s->b, std::optional<Term>(fty_w.domain()));
    (void)aty;
    return {Term::app(f, a), instantiate(fty_w.body(), a)};
}

std::pair<Term, Term> Elaborator::elab_lam(Telescope& ctx,
                                           const std::vector<FlatBinder>& binders, size_t i,
                                           Term prev_domain, const SurfacePtr& body,
                                           const std::optional<Term>& expected) {
    if (i == binders.size()) return elaborate(ctx, body, expected);

    const FlatBinder& b = binders[i];
    std::optional<Term> exp_dom, exp_cod;
    if (expected) {
        Term ew = m_kernel.whnf(m_state.zonk(*expected));
        if (ew.is(TermKind::Pi)) {
            exp_dom = ew.domain();
            exp_cod = ew.body();
        } else {
            // expected shape unknown here: infer and reconcile at this level
            auto [t, ty] = elab_lam(ctx, binders, i, prev_domain, body, std::nullopt);
            return finish(ctx, std::move(t), std::move(ty), expected, b.span);
        }
    }

    Term dom;
    bool dom_from_expected = false;
    if (!b.group_start) {
        dom = lift(prev_domain, 0, 1);
    } else if (b.type) {
        dom = elaborate_type(ctx, b.type);
    } else if (exp_dom) {
        dom = *exp_dom;
        dom_from_expected = true;
    } else {
        MetaId m = m_state.fresh_meta(ctx, Term::type(0), MetaOrigin{b.span, MetaReason::Hole});
        dom = m_state.meta_term(m);
    }
    if (exp_dom && !dom_from_expected) {
        Term d1 = m_state.zonk(dom);
        Term d2 = m_state.zonk(*exp_dom);
        bool ok;
        if (!d1.has_meta() && !d2.has_meta())
            ok = m_kernel.is_def_eq(d1, d2);
        else
            ok = m_state.unify(ctx, d1, d2, b.span).ok();
        if (!ok) {
            Printer p(m_env, PrintOptions::everything());
            throw_error(DiagCategory::TypeMismatch, b.span,
                        "binder type does not match the expected function type",
                        p.constraint(d1, d2));
        }
    }

    ctx.push_back({b.name, dom});
    auto [inner, inner_ty] = elab_lam(ctx, binders, i + 1, dom, body, exp_cod);
    ctx.pop_back();
    return {Term::lam(b.name, dom, inner), Term::pi(b.name, dom, inner_ty)};
}

std::pair<Term, SortLevel> Elaborator::elab_pi(Telescope& ctx,
                                               const std::vector<FlatBinder>& binders, size_t i,
                                               Term prev_domain, SortLevel prev_sort,
                                               const SurfacePtr& body) {
    if (i == binders.size()) {
        SortLevel s{};
        Term b = elaborate_type(ctx, body, &s);
        return {b, s};
    }
    const FlatBinder& b = binders[i];
    Term dom;
    SortLevel dom_sort = SortLevel::mk_type(0);
    if (!b.group_start) {
        dom = lift(prev_domain, 0, 1);  // lifting preserves the sort
        dom_sort = prev_sort;
    } else if (b.type) {
        dom = elaborate_type(ctx, b.type, &dom_sort);
    } else {
        MetaId m = m_state.fresh_meta(ctx, Term::type(0), MetaOrigin{b.span, MetaReason::Hole});
        dom = m_state.meta_term(m);
    }
    ctx.push_back({b.name, dom});
    auto [cod, cod_sort] = elab_pi(ctx, binders, i + 1, dom, dom_sort, body);
    ctx.pop_back();
    SortLevel s = SortLevel::pi_rule(dom_sort, cod_sort);
    return {Term::pi(b.name, dom, cod), s};
}

Term Elaborator::elaborate_type(Telescope& ctx, const SurfacePtr& s, SortLevel* sort_out) {
    if (s->kind == SurfaceKind::Hole) {
        MetaId m = m_state.fresh_meta(ctx, Term::type(0), MetaOrigin{s->span, MetaReason::Hole});
        if (sort_out) *sort_out = SortLevel::mk_type(0);
        return m_state.meta_term(m);
    }
    if (s->kind == SurfaceKind::Pi) {
        auto [t, sort] = elab_pi(ctx, flatten(s->binders), 0, Term(), SortLevel{}, s->body);
        if (sort_out) *sort_out = sort;
        return t;
    }
    auto [t, ty] = elaborate(ctx, s, std::nullopt);
    Term tyw = m_kernel.whnf(m_state.zonk(ty));
    if (tyw.is(TermKind::Sort)) {
        if (sort_out) *sort_out = tyw.sort_level();
        return t;
    }
    if (unfold_apps(tyw).first.is(TermKind::Meta))
        throw_error(DiagCategory::SortError, s->span,
                    "cannot infer whether this term is a type");
    auto hc = class_of(tyw);
    const std::vector<Name>* path =
        hc ? m_env.coercion_path(*hc, CoercionClass::sortclass()) : nullptr;
    if (!path) {
        Printer p(m_env, PrintOptions::everything());
        throw_error(DiagCategory::NoCoercionPath, s->span,
                    "used as a type but no coercion to a sort applies", p.print(tyw));
    }
    auto [t2, ty2] = apply_coercion_path(ctx, t, ty, *path, s->span);
    Term ty2w = m_kernel.whnf(m_state.zonk(ty2));
    if (!ty2w.is(TermKind::Sort))
        throw_error(DiagCategory::SortError, s->span, "coercion did not produce a type");
    if (sort_out) *sort_out = ty2w.sort_level();
    return t2;
}

std::pair<Term, Term> Elaborator::elaborate(Telescope& ctx, const SurfacePtr& s,
                                            const std::optional<Term>& expected) {
    switch (s->kind) {
        case SurfaceKind::Ref: {
            auto [t, ty] = elab_ref(ctx, s->name, false, s->span);
            return finish(ctx, std::move(t), std::move(ty), expected, s->span);
        }
        case SurfaceKind::AtRef: {
            auto [t, ty] = elab_ref(ctx, s->name, true, s->span);
            return finish(ctx, std::move(t), std::move(ty), expected, s->span);
        }
        case SurfaceKind::Hole: {
            if (expected) {
                MetaId m = m_state.fresh_meta(ctx, m_state.zonk(*expected),
                                              MetaOrigin{s->span, MetaReason::Hole});
                return {m_state.meta_term(m), *expected};
            }
            MetaId mt = m_state.fresh_meta(ctx, Term::type(0),
                                           MetaOrigin{s->span, MetaReason::Hole});
            Term hole_ty = m_state.meta_term(mt);
            MetaId m = m_state.fresh_meta(ctx, hole_ty, MetaOrigin{s->span, MetaReason::Hole});
            return {m_state.meta_term(m), hole_ty};
        }
        case SurfaceKind::Numeral: {
            if (!m_env.contains("O") || !m_env.contains("S"))
                throw_error(DiagCategory::UnknownIdentifier, s->span,
                            "numeral literals need the prelude nat (O and S)");
            Term t = Term::constant("O");
            for (uint64_t i = 0; i < s->numeral; ++i) t = Term::app(Term::constant("S"), t);
            return finish(ctx, std::move(t), m_env.get("O").type, expected, s->span);
        }
        case SurfaceKind::Sort: {
            SortLevel l = s->sort_is_prop ? SortLevel::mk_prop()
                                          : SortLevel::mk_type(s->sort_level);
            return finish(ctx, Term::sort(l), Term::sort(l.succ()), expected, s->span);
        }
        case SurfaceKind::App: {
            auto [t, ty] = elab_app(ctx, s);
            return finish(ctx, std::move(t), std::move(ty), expected, s->span);
        }
        case SurfaceKind::Lam:
            return elab_lam(ctx, flatten(s->binders), 0, Term(), s->body, expected);
        case SurfaceKind::Pi: {
            auto [t, sort] = elab_pi(ctx, flatten(s->binders), 0, Term(), SortLevel{}, s->body);
            return finish(ctx, std::move(t), Term::sort(sort), expected, s->span);
        }
        case SurfaceKind::Infix: {
            SurfacePtr expanded;
            if (s->name == "=") {
                expanded = expand_builtin_eq(s->a, s->b, s->span);
            } else {
                auto it = m_env.notations().find(s->name);
                if (it == m_env.notations().end())
                    throw_error(DiagCategory::AmbiguousNotation, s->span,
                                "unknown notation '" + s->name + "'");
                expanded = fill_slots(retarget_spans(it->second.tmpl, s->span), s->a, s->b);
            }
            return elaborate(ctx, expanded, expected);
        }
        case SurfaceKind::Ascribe: {
            Term T = elaborate_type(ctx, s->b);
            auto [t, ty] = elaborate(ctx, s->a, std::optional<Term>(T));
            (void)ty;
            return finish(ctx, std::move(t), std::move(T), expected, s->span);
        }
        case SurfaceKind::Slot:
            throw_error(DiagCategory::ParseError, s->span,
                        "notation slot outside a notation template");
    }
    throw_error(DiagCategory::ParseError, s->span, "unreachable surface form");
}

// --- command processing ---

namespace {

void require_clean(Elaborator& el) {
    std::vector<Diagnostic> diags = el.finalize();
    if (!diags.empty()) throw Error(diags.front());
}

/// Sanity pass over constants added by a declaration: every generated type
/// must check in the extended environment.
void validate_new_constants(const Environment& before, const Environment& after,
                            const KernelOptions& kopts, const SourceSpan& span) {
    Kernel k(after, kopts);
    with_span(span, [&] {
        for (const auto& [name, info] : after.consts()) {
            if (before.find(name)) continue;
            k.sort_of({}, info.type);
            if (info.body) {
                Term bt = k.infer_type(*info.body);
                if (!k.is_sub(bt, info.type))
                    throw_error(DiagCategory::TypeMismatch, span,
                                "declared body does not have the declared type for " + name);
            }
        }
        return 0;
    });
}

}  // namespace

PrintOptions CommandProcessor::print_options(const ElabState& state) const {
    PrintOptions po;
    po.notations = false;
    po.numerals = true;
    if (m_opts.explicit_print) {
        po.hide_implicits = false;
        po.hidden = nullptr;
    } else {
        po.hide_implicits = true;
        po.hidden = &state.inserted();
    }
    return po;
}

Telescope CommandProcessor::elaborate_params(Elaborator& el,
                                             const std::vector<SurfaceBinderGroup>& groups) {
    Telescope ctx;
    for (const auto& g : groups) {
        Term dom;
        bool first = true;
        for (const auto& n : g.names) {
            if (first) {
                if (!g.type)
                    throw_error(DiagCategory::ParseError, g.span,
                                "parameters must be annotated");
                dom = el.elaborate_type(ctx, g.type);
                first = false;
            } else {
                dom = lift(dom, 0, 1);
            }
            ctx.push_back({n, dom});
        }
    }
    return ctx;
}

SortLevel CommandProcessor::literal_sort(const SurfacePtr& s) {
    if (s->kind != SurfaceKind::Sort)
        throw_error(DiagCategory::SortError, s->span,
                    "a literal sort (Prop or Type i) is required here");
    return s->sort_is_prop ? SortLevel::mk_prop() : SortLevel::mk_type(s->sort_level);
}

CommandOutcome CommandProcessor::process(const Environment& env, const CommandPtr& cmd) {
    switch (cmd->kind) {
        case CommandKind::Definition: return process_definition(env, *cmd);
        case CommandKind::Axiom: return process_axiom(env, *cmd);
        case CommandKind::Record: return process_record(env, *cmd);
        case CommandKind::Inductive: return process_inductive(env, *cmd);
        case CommandKind::Coercion: return process_coercion(env, *cmd);
        case CommandKind::Canonical: return process_canonical(env, *cmd);
        case CommandKind::Notation: return process_notation(env, *cmd);
        case CommandKind::Check: return process_check(env, *cmd);
        case CommandKind::Eval: return process_eval(env, *cmd);
        case CommandKind::Fail: return process_fail(env, *cmd);
    }
    throw_error(DiagCategory::ParseError, cmd->span, "unknown command kind");
}

CommandOutcome CommandProcessor::process_definition(const Environment& env, const Command& cmd) {
    SurfacePtr body_s = cmd.body;
    SurfacePtr type_s = cmd.type;
    if (!cmd.params.empty()) {
        body_s = s_lam(cmd.params, cmd.body, cmd.span);
        if (cmd.type) type_s = s_pi(cmd.params, cmd.type, cmd.span);
    }

    Elaborator el(env, m_opts, m_trace);
    Telescope ctx;
    Term type, body;
    if (type_s) {
        type = el.elaborate_type(ctx, type_s);
        body = el.elaborate(ctx, body_s, std::optional<Term>(type)).first;
    } else {
        std::tie(body, type) = el.elaborate(ctx, body_s, std::nullopt);
    }
    require_clean(el);
    body = el.zonk(body);
    type = el.zonk(type);

    Kernel k(env, m_opts.kernel);
    with_span(cmd.span, [&] {
        Term bt = k.infer_type(body);
        if (!k.is_sub(bt, type))
            throw_error(DiagCategory::TypeMismatch, cmd.span,
                        "definition body does not have its declared type",
                        raw_str(bt) + " vs " + raw_str(type));
        return 0;
    });

    Environment out = with_span(cmd.span, [&] {
        return env.declare(DefinitionDecl{cmd.name, type, body});
    });
    std::vector<bool> flags = surface_implicit_flags(cmd.params, cmd.type);
    if (std::any_of(flags.begin(), flags.end(), [](bool b) { return b; }))
        out = out.declare(ImplicitDecl{cmd.name, flags});
    return {std::move(out), {}, el.state().steps()};
}

CommandOutcome CommandProcessor::process_axiom(const Environment& env, const Command& cmd) {
    Elaborator el(env, m_opts, m_trace);
    Telescope ctx;
    Term type = el.elaborate_type(ctx, cmd.type);
    require_clean(el);
    type = el.zonk(type);

    Kernel k(env, m_opts.kernel);
    with_span(cmd.span, [&] {
        k.sort_of({}, type);
        return 0;
    });
    Environment out =
        with_span(cmd.span, [&] { return env.declare(AxiomDecl{cmd.name, type}); });
    std::vector<bool> flags = surface_implicit_flags({}, cmd.type);
    if (std::any_of(flags.begin(), flags.end(), [](bool b) { return b; }))
        out = out.declare(ImplicitDecl{cmd.name, flags});
    return {std::move(out), {}, el.state().steps()};
}

CommandOutcome CommandProcessor::process_record(const Environment& env, const Command& cmd) {
    Elaborator el(env, m_opts, m_trace);
    Telescope params = elaborate_params(el, cmd.params);
    SortLevel sort = literal_sort(cmd.type);

    Telescope ctx = params;
    Telescope fields;
    for (const auto& f : cmd.fields) {
        Term ft = el.elaborate_type(ctx, f.type);
        ctx.push_back({f.name, ft});
        fields.push_back({f.name, ft});
    }
    require_clean(el);
    for (auto& b : params) b.type = el.zonk(b.type);
    for (auto& b : fields) b.type = el.zonk(b.type);

    // each field must fit inside the record's declared sort
    Kernel k(env, m_opts.kernel);
    Telescope check_ctx = params;
    for (size_t i = 0; i < fields.size(); ++i) {
        SortLevel fs = with_span(cmd.fields[i].span, [&] {
            // the record type itself is not declared yet; field types may
            // only mention parameters and earlier fields, so this env works
            return k.sort_of(check_ctx, fields[i].type);
        });
        if (!fs.sub(sort))
            throw_error(DiagCategory::SortError, cmd.fields[i].span,
                        "field " + fields[i].name + " lives in " + fs.str() +
                            " which exceeds the record sort " + sort.str());
        check_ctx.push_back(fields[i]);
    }

    Environment out = with_span(cmd.span, [&] {
        return env.declare(RecordDecl{cmd.name, params, sort, cmd.ctor_name, fields});
    });
    validate_new_constants(env, out, m_opts.kernel, cmd.span);
    return {std::move(out), {}, el.state().steps()};
}

CommandOutcome CommandProcessor::process_inductive(const Environment& env, const Command& cmd) {
    Elaborator el(env, m_opts, m_trace);
    Telescope params = elaborate_params(el, cmd.params);
    require_clean(el);
    for (auto& b : params) b.type = el.zonk(b.type);
    SortLevel arity = literal_sort(cmd.type);

    // the constructors may mention the inductive; give them a scratch env
    Environment scratch = with_span(cmd.span, [&] {
        return env.declare(AxiomDecl{cmd.name, pi_telescope(params, Term::sort(arity))});
    });

    std::vector<std::pair<Name, Term>> ctors;
    {
        Elaborator el2(scratch, m_opts, m_trace);
        Telescope ctx = params;
        std::vector<Term> raw;
        for (const auto& c : cmd.ctors) raw.push_back(el2.elaborate_type(ctx, c.type));
        require_clean(el2);
        Kernel ks(scratch, m_opts.kernel);
        for (size_t i = 0; i < raw.size(); ++i) {
            Term full = pi_telescope(params, el2.zonk(raw[i]));
            with_span(cmd.ctors[i].span, [&] {
                ks.sort_of({}, full);
                return 0;
            });
            if (!arity.is_prop()) {
                // constructor arguments must fit in the declared sort
                Term t = full;
                Telescope cctx;
                while (t.is(TermKind::Pi)) {
                    SortLevel s = with_span(cmd.ctors[i].span,
                                            [&] { return ks.sort_of(cctx, t.domain()); });
                    if (cctx.size() >= params.size() && !s.sub(arity))
                        throw_error(DiagCategory::SortError, cmd.ctors[i].span,
                                    "constructor argument lives in " + s.str() +
                                        " which exceeds the inductive sort " + arity.str());
                    cctx.push_back({t.binder_name(), t.domain()});
                    t = t.body();
                }
            }
            ctors.emplace_back(cmd.ctors[i].name, full);
        }
    }

    Environment out = with_span(cmd.span, [&] {
        return env.declare(InductiveDecl{cmd.name, params, arity, ctors, cmd.name + "_rect"});
    });
    validate_new_constants(env, out, m_opts.kernel, cmd.span);
    return {std::move(out), {}, 0};
}

CommandOutcome CommandProcessor::process_coercion(const Environment& env, const Command& cmd) {
    const ConstInfo& info = env.get(cmd.name, cmd.span);
    Kernel k(env, m_opts.kernel);
    Term fty = k.whnf(info.type);
    if (!fty.is(TermKind::Pi))
        throw_error(DiagCategory::BadCoercionTarget, cmd.span,
                    cmd.name + " is not a function and cannot be a coercion");

    Term dom_w = k.whnf(fty.domain());
    Term dom_head = unfold_apps(dom_w).first;
    if (!dom_head.is_const(cmd.coercion_src))
        throw_error(DiagCategory::BadCoercionTarget, cmd.span,
                    "the domain of " + cmd.name + " is not headed by " + cmd.coercion_src);
    env.get(cmd.coercion_src, cmd.span);

    CoercionClass dst;
    Term cod_w = k.whnf(fty.body());
    if (cmd.coercion_target == "Type") {
        if (!cod_w.is(TermKind::Sort))
            throw_error(DiagCategory::BadCoercionTarget, cmd.span,
                        "codomain of " + cmd.name + " is not a sort");
        dst = CoercionClass::sortclass();
    } else if (cmd.coercion_target == "Funclass") {
        if (!cod_w.is(TermKind::Pi))
            throw_error(DiagCategory::BadCoercionTarget, cmd.span,
                        "codomain of " + cmd.name + " is not a function type");
        dst = CoercionClass::funclass();
    } else {
        Term cod_head = unfold_apps(cod_w).first;
        if (!cod_head.is_const(cmd.coercion_target))
            throw_error(DiagCategory::BadCoercionTarget, cmd.span,
                        "codomain of " + cmd.name + " is not headed by " + cmd.coercion_target);
        dst = CoercionClass::named(cmd.coercion_target);
    }

    Environment out = with_span(cmd.span, [&] {
        return env.declare(
            CoercionDecl{cmd.name, CoercionClass::named(cmd.coercion_src), dst});
    });
    return {std::move(out), {}, 0};
}

CommandOutcome CommandProcessor::process_canonical(const Environment& env, const Command& cmd) {
    const ConstInfo& info = env.get(cmd.name, cmd.span);
    if (info.kind != ConstKind::Definition)
        throw_error(DiagCategory::NotAStructure, cmd.span,
                    cmd.name + " is not a definition and cannot be a canonical instance");
    Kernel k(env, m_opts.kernel);
    Term ty_w = k.whnf(info.type);
    auto [head, params] = unfold_apps(ty_w);
    const InductiveInfo* ind =
        head.is(TermKind::Const) ? env.inductive(head.const_name()) : nullptr;
    if (!ind || !ind->is_record)
        throw_error(DiagCategory::NotAStructure, cmd.span,
                    cmd.name + " is not an instance of a record structure");
    if (params.size() != ind->n_params)
        throw_error(DiagCategory::NotAStructure, cmd.span,
                    "instance type does not fully apply the structure parameters");

    Environment out = env;
    for (const Name& proj : ind->fields) {
        Term value =
            k.whnf(Term::app(mk_apps(Term::constant(proj), params), Term::constant(cmd.name)));
        auto key = head_key(value);
        if (!key) continue;
        out = with_span(cmd.span,
                        [&] { return out.declare(CanonicalHintDecl{proj, *key, cmd.name}); });
    }
    return {std::move(out), {}, 0};
}

CommandOutcome CommandProcessor::process_notation(const Environment& env, const Command& cmd) {
    if (!surface_mentions_slot(cmd.notation_template, 0) ||
        !surface_mentions_slot(cmd.notation_template, 1))
        throw_error(DiagCategory::AmbiguousNotation, cmd.span,
                    "notation template must use both operands");
    Environment out = with_span(cmd.span, [&] {
        return env.declare(NotationDecl{cmd.notation_token, cmd.notation_level,
                                        cmd.notation_assoc, cmd.notation_template});
    });
    return {std::move(out), {}, 0};
}

CommandOutcome CommandProcessor::process_check(const Environment& env, const Command& cmd) {
    Elaborator el(env, m_opts, m_trace);
    Telescope ctx;
    auto [t, ty] = el.elaborate(ctx, cmd.body, std::nullopt);
    require_clean(el);
    t = el.zonk(t);
    ty = el.zonk(ty);

    // every elaborated term re-checks in the meta-free kernel
    Kernel k(env, m_opts.kernel);
    with_span(cmd.span, [&] {
        Term it = k.infer_type(t);
        if (!k.is_sub(it, ty))
            throw_error(DiagCategory::TypeMismatch, cmd.span,
                        "elaborated term fails the kernel re-check",
                        raw_str(it) + " vs " + raw_str(ty));
        return 0;
    });

    Printer p(env, print_options(el.state()));
    std::string line = cmd.span.str() + ": Check: " + p.print(t) + " : " + p.print(ty);
    return {env, {line}, el.state().steps()};
}

CommandOutcome CommandProcessor::process_eval(const Environment& env, const Command& cmd) {
    Elaborator el(env, m_opts, m_trace);
    Telescope ctx;
    auto [t, ty] = el.elaborate(ctx, cmd.body, std::nullopt);
    (void)ty;
    require_clean(el);
    t = el.zonk(t);

    Kernel k(env, m_opts.kernel);
    Term nf = with_span(cmd.span, [&] { return k.normalize(t); });
    with_span(cmd.span, [&] { return k.infer_type(nf); });

    PrintOptions po = print_options(el.state());
    po.notations = true;
    Printer p(env, po);
    std::string line = cmd.span.str() + ": Eval: " + p.print(nf);
    return {env, {line}, el.state().steps()};
}

CommandOutcome CommandProcessor::process_fail(const Environment& env, const Command& cmd) {
    auto report = [&](const Diagnostic& d) {
        std::string line = d.span.str() + ": Fail: " + category_name(d.category) + ": " +
                           d.message;
        if (!d.detail.empty()) line += " [" + d.detail + "]";
        return line;
    };
    if (cmd.parse_failure) return {env, {report(*cmd.parse_failure)}, 0};
    try {
        CommandOutcome inner = process(env, cmd.inner);
        (void)inner;
    } catch (const Error& e) {
        return {env, {report(e.diag())}, 0};
    }
    throw_error(DiagCategory::FailExpected, cmd.span,
                "the command was expected to fail but succeeded");
}

}  // namespace mtt
