/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "mtt/surface_ast.hpp"

namespace mtt {

namespace {
std::shared_ptr<SurfaceTerm> mk(SurfaceKind k, SourceSpan sp) {
    auto p = std::make_shared<SurfaceTerm>();
    p->kind = k;
    p->span = std::move(sp);
    return p;
}
}  // namespace

SurfacePtr s_ref(std::string name, SourceSpan sp) {
    auto p = mk(SurfaceKind::Ref, std::move(sp));
    p->name = std::move(name);
    return p;
}
SurfacePtr s_at(std::string name, SourceSpan sp) {
    auto p = mk(SurfaceKind::AtRef, std::move(sp));
    p->name = std::move(name);
    return p;
}
SurfacePtr s_hole(SourceSpan sp) { return mk(SurfaceKind::Hole, std::move(sp)); }
SurfacePtr s_numeral(uint64_t n, SourceSpan sp) {
    auto p = mk(SurfaceKind::Numeral, std::move(sp));
    p->numeral = n;
    return p;
}
SurfacePtr s_sort(bool is_prop, uint32_t level, SourceSpan sp) {
    auto p = mk(SurfaceKind::Sort, std::move(sp));
    p->sort_is_prop = is_prop;
    p->sort_level = level;
    return p;
}
SurfacePtr s_app(SurfacePtr f, SurfacePtr a, SourceSpan sp) {
    auto p = mk(SurfaceKind::App, std::move(sp));
    p->a = std::move(f);
    p->b = std::move(a);
    return p;
}
SurfacePtr s_lam(std::vector<SurfaceBinderGroup> bs, SurfacePtr body, SourceSpan sp) {
    auto p = mk(SurfaceKind::Lam, std::move(sp));
    p->binders = std::move(bs);
    p->body = std::move(body);
    return p;
}
SurfacePtr s_pi(std::vector<SurfaceBinderGroup> bs, SurfacePtr body, SourceSpan sp) {
    auto p = mk(SurfaceKind::Pi, std::move(sp));
    p->binders = std::move(bs);
    p->body = std::move(body);
    return p;
}
SurfacePtr s_arrow(SurfacePtr dom, SurfacePtr cod, SourceSpan sp) {
    SurfaceBinderGroup g;
    g.names = {"_"};
    g.type = std::move(dom);
    g.span = sp;
    return s_pi({std::move(g)}, std::move(cod), std::move(sp));
}
SurfacePtr s_infix(std::string token, SurfacePtr l, SurfacePtr r, SourceSpan sp) {
    auto p = mk(SurfaceKind::Infix, std::move(sp));
    p->name = std::move(token);
    p->a = std::move(l);
    p->b = std::move(r);
    return p;
}
SurfacePtr s_ascribe(SurfacePtr t, SurfacePtr ty, SourceSpan sp) {
    auto p = mk(SurfaceKind::Ascribe, std::move(sp));
    p->a = std::move(t);
    p->b = std::move(ty);
    return p;
}
SurfacePtr s_slot(uint32_t i, SourceSpan sp) {
    auto p = mk(SurfaceKind::Slot, std::move(sp));
    p->slot = i;
    return p;
}

bool surface_eq(const SurfacePtr& a, const SurfacePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case SurfaceKind::Ref:
        case SurfaceKind::AtRef: return a->name == b->name;
        case SurfaceKind::Hole: return true;
        case SurfaceKind::Numeral: return a->numeral == b->numeral;
        case SurfaceKind::Sort:
            return a->sort_is_prop == b->sort_is_prop &&
                   (a->sort_is_prop || a->sort_level == b->sort_level);
        case SurfaceKind::App:
        case SurfaceKind::Ascribe: return surface_eq(a->a, b->a) && surface_eq(a->b, b->b);
        case SurfaceKind::Infix:
            return a->name == b->name && surface_eq(a->a, b->a) && surface_eq(a->b, b->b);
        case SurfaceKind::Lam:
        case SurfaceKind::Pi: {
            if (a->binders.size() != b->binders.size()) return false;
            for (size_t i = 0; i < a->binders.size(); ++i) {
                const auto& ga = a->binders[i];
                const auto& gb = b->binders[i];
                if (ga.names != gb.names || ga.implicit != gb.implicit) return false;
                if ((ga.type == nullptr) != (gb.type == nullptr)) return false;
                if (ga.type && !surface_eq(ga.type, gb.type)) return false;
            }
            return surface_eq(a->body, b->body);
        }
        case SurfaceKind::Slot: return a->slot == b->slot;
    }
    return false;
}

SurfacePtr retarget_spans(const SurfacePtr& t, const SourceSpan& span) {
    if (!t) return t;
    auto p = std::make_shared<SurfaceTerm>(*t);
    p->span = span;
    switch (t->kind) {
        case SurfaceKind::App:
        case SurfaceKind::Infix:
        case SurfaceKind::Ascribe:
            p->a = retarget_spans(t->a, span);
            p->b = retarget_spans(t->b, span);
            break;
        case SurfaceKind::Lam:
        case SurfaceKind::Pi:
            for (auto& g : p->binders) {
                g.span = span;
                if (g.type) g.type = retarget_spans(g.type, span);
            }
            p->body = retarget_spans(t->body, span);
            break;
        default: break;
    }
    return p;
}

bool surface_mentions_slot(const SurfacePtr& t, uint32_t slot) {
    if (!t) return false;
    switch (t->kind) {
        case SurfaceKind::Slot: return t->slot == slot;
        case SurfaceKind::App:
        case SurfaceKind::Infix:
        case SurfaceKind::Ascribe:
            return surface_mentions_slot(t->a, slot) || surface_mentions_slot(t->b, slot);
        case SurfaceKind::Lam:
        case SurfaceKind::Pi: {
            for (const auto& g : t->binders)
                if (g.type && surface_mentions_slot(g.type, slot)) return true;
            return surface_mentions_slot(t->body, slot);
        }
        default: return false;
    }
}

SurfacePtr fill_slots(const SurfacePtr& tmpl, const SurfacePtr& op0, const SurfacePtr& op1) {
    if (!tmpl) return tmpl;
    switch (tmpl->kind) {
        case SurfaceKind::Slot: return tmpl->slot == 0 ? op0 : op1;
        case SurfaceKind::App:
        case SurfaceKind::Infix:
        case SurfaceKind::Ascribe: {
            auto p = std::make_shared<SurfaceTerm>(*tmpl);
            p->a = fill_slots(tmpl->a, op0, op1);
            p->b = fill_slots(tmpl->b, op0, op1);
            return p;
        }
        case SurfaceKind::Lam:
        case SurfaceKind::Pi: {
            auto p = std::make_shared<SurfaceTerm>(*tmpl);
            for (auto& g : p->binders)
                if (g.type) g.type = fill_slots(g.type, op0, op1);
            p->body = fill_slots(tmpl->body, op0, op1);
            return p;
        }
        default: return tmpl;
    }
}

}  // namespace mtt
