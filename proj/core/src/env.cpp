/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "mtt/env.hpp"

#include <algorithm>

namespace mtt {

std::string HeadKey::str() const {
    switch (kind) {
        case Kind::Const: return "const:" + name;
        case Kind::Sort: return "sort";
        case Kind::Pi: return "pi";
    }
    return "?";
}

std::string CoercionClass::str() const {
    switch (kind) {
        case Kind::Named: return name;
        case Kind::Sortclass: return "Sortclass";
        case Kind::Funclass: return "Funclass";
    }
    return "?";
}

std::optional<HeadKey> head_key(const Term& t) {
    Term head = t;
    while (head.is(TermKind::App)) head = head.app_fn();
    switch (head.kind()) {
        case TermKind::Const: return HeadKey::constant(head.const_name());
        case TermKind::Sort: return HeadKey::sort();
        case TermKind::Pi: return HeadKey::pi();
        default: return std::nullopt;
    }
}

namespace {

/// Vars for the params of a telescope of length n, seen from `extra` binders
/// further in: [Var(n-1+extra), ..., Var(extra)].
std::vector<Term> param_vars(uint32_t n, uint32_t extra) {
    std::vector<Term> vs;
    vs.reserve(n);
    for (uint32_t j = 0; j < n; ++j) vs.push_back(Term::var(n - 1 - j + extra));
    return vs;
}

[[noreturn]] void dup_name(const Name& n) {
    throw_error(DiagCategory::DuplicateName, SourceSpan::synthetic(),
                "name already declared: " + n);
}

}  // namespace

const ConstInfo* Environment::find(const Name& n) const {
    auto it = m_consts.find(n);
    return it == m_consts.end() ? nullptr : &it->second;
}

const ConstInfo& Environment::get(const Name& n, const SourceSpan& use) const {
    const ConstInfo* p = find(n);
    if (!p) throw_error(DiagCategory::UnknownIdentifier, use, "unknown identifier: " + n);
    return *p;
}

const InductiveInfo* Environment::inductive(const Name& n) const {
    auto it = m_inductives.find(n);
    return it == m_inductives.end() ? nullptr : &it->second;
}

std::optional<Name> Environment::hint_lookup(const Name& projection, const HeadKey& key) const {
    auto it = m_hints.find({projection, key});
    if (it == m_hints.end()) return std::nullopt;
    return it->second;
}

bool Environment::has_hints_for(const Name& projection) const {
    auto it = m_hints.lower_bound({projection, HeadKey{HeadKey::Kind::Const, ""}});
    return it != m_hints.end() && it->first.first == projection;
}

const std::vector<bool>* Environment::implicit_flags(const Name& n) const {
    auto it = m_implicits.find(n);
    return it == m_implicits.end() ? nullptr : &it->second;
}

bool Environment::is_coercion_fn(const Name& n) const {
    for (const auto& e : m_edges)
        if (e.fn == n) return true;
    return false;
}

const std::vector<Name>* Environment::coercion_path(const CoercionClass& from,
                                                    const CoercionClass& to) const {
    auto it = m_paths.find({from, to});
    return it == m_paths.end() ? nullptr : &it->second;
}

void Environment::add_const(ConstInfo info) {
    if (m_consts.count(info.name)) dup_name(info.name);
    info.decl_index = m_next_index++;
    m_consts.emplace(info.name, std::move(info));
}

Environment Environment::declare(const Declaration& d) const {
    Environment next = *this;
    next.apply(d);
    next.m_decls.push_back(d);
    return next;
}

void Environment::apply(const Declaration& d) {
    std::visit(
        [&](const auto& decl) {
            using T = std::decay_t<decltype(decl)>;
            if constexpr (std::is_same_v<T, DefinitionDecl>) {
                ConstInfo info;
                info.name = decl.name;
                info.type = decl.type;
                info.body = decl.body;
                info.kind = ConstKind::Definition;
                add_const(std::move(info));
            } else if constexpr (std::is_same_v<T, AxiomDecl>) {
                ConstInfo info;
                info.name = decl.name;
                info.type = decl.type;
                info.kind = ConstKind::Axiom;
                add_const(std::move(info));
            } else if constexpr (std::is_same_v<T, InductiveDecl>) {
                add_inductive(decl);
            } else if constexpr (std::is_same_v<T, RecordDecl>) {
                add_record(decl);
            } else if constexpr (std::is_same_v<T, CoercionDecl>) {
                add_coercion(decl);
            } else if constexpr (std::is_same_v<T, CanonicalHintDecl>) {
                auto key = std::make_pair(decl.projection, decl.key);
                auto it = m_hints.find(key);
                if (it != m_hints.end())
                    throw_error(DiagCategory::DuplicateHint, SourceSpan::synthetic(),
                                "duplicate canonical hint for (" + decl.projection + ", " +
                                    decl.key.str() + "): already mapped to " + it->second);
                m_hints.emplace(std::move(key), decl.instance);
            } else if constexpr (std::is_same_v<T, NotationDecl>) {
                if (decl.token == "=" || decl.token == "->")
                    throw_error(DiagCategory::AmbiguousNotation, SourceSpan::synthetic(),
                                "notation token is reserved: " + decl.token);
                if (m_notations.count(decl.token))
                    throw_error(DiagCategory::AmbiguousNotation, SourceSpan::synthetic(),
                                "notation token already registered: " + decl.token);
                NotationEntry e;
                e.token = decl.token;
                e.level = decl.level;
                e.assoc = decl.assoc;
                e.tmpl = decl.tmpl;
                // Printing pattern: template must be an application spine of a
                // constant over atoms (slots or holes).
                const SurfaceTerm* cur = decl.tmpl.get();
                std::vector<int32_t> pat;
                while (cur && cur->kind == SurfaceKind::App) {
                    const SurfaceTerm* arg = cur->b.get();
                    if (arg->kind == SurfaceKind::Slot)
                        pat.push_back(static_cast<int32_t>(arg->slot));
                    else if (arg->kind == SurfaceKind::Hole)
                        pat.push_back(-1);
                    else {
                        pat.clear();
                        cur = nullptr;
                        break;
                    }
                    cur = cur->a.get();
                }
                if (cur && cur->kind == SurfaceKind::Ref) {
                    std::reverse(pat.begin(), pat.end());
                    e.print_head = cur->name;
                    e.print_pattern = std::move(pat);
                }
                m_notations.emplace(e.token, std::move(e));
            } else if constexpr (std::is_same_v<T, ImplicitDecl>) {
                if (!m_consts.count(decl.name))
                    throw_error(DiagCategory::UnknownIdentifier, SourceSpan::synthetic(),
                                "implicit marking for unknown constant: " + decl.name);
                m_implicits[decl.name] = decl.flags;
            }
        },
        d);
}

void Environment::add_coercion(const CoercionDecl& d) {
    if (d.src.kind != CoercionClass::Kind::Named)
        throw_error(DiagCategory::BadCoercionTarget, SourceSpan::synthetic(),
                    "coercion source must be a named class");
    if (d.src == d.dst)
        throw_error(DiagCategory::DuplicateCoercionPath, SourceSpan::synthetic(),
                    "coercion from a class to itself: " + d.src.str());

    // New composite paths through the fresh edge; any second path between a
    // pair of classes is rejected.
    std::map<std::pair<CoercionClass, CoercionClass>, std::vector<Name>> fresh;
    auto propose = [&](const CoercionClass& a, const CoercionClass& b, std::vector<Name> path) {
        if (a == b)
            throw_error(DiagCategory::DuplicateCoercionPath, SourceSpan::synthetic(),
                        "coercion cycle through " + a.str());
        auto key = std::make_pair(a, b);
        if (m_paths.count(key) || fresh.count(key))
            throw_error(DiagCategory::DuplicateCoercionPath, SourceSpan::synthetic(),
                        "second coercion path from " + a.str() + " to " + b.str());
        fresh.emplace(std::move(key), std::move(path));
    };

    propose(d.src, d.dst, {d.fn});
    for (const auto& [pair, path] : m_paths) {
        const auto& [from, to] = pair;
        if (to == d.src) {
            std::vector<Name> p = path;
            p.push_back(d.fn);
            propose(from, d.dst, std::move(p));
        }
        if (d.dst == from) {
            std::vector<Name> p{d.fn};
            p.insert(p.end(), path.begin(), path.end());
            propose(d.src, to, std::move(p));
        }
        if (to == d.src) {
            for (const auto& [pair2, path2] : m_paths) {
                if (pair2.first == d.dst) {
                    std::vector<Name> p = path;
                    p.push_back(d.fn);
                    p.insert(p.end(), path2.begin(), path2.end());
                    propose(pair.first, pair2.second, std::move(p));
                }
            }
        }
    }
    for (auto& [k, v] : fresh) m_paths.emplace(k, std::move(v));
    m_edges.push_back(d);
}

void Environment::add_inductive(const InductiveDecl& d) {
    const uint32_t P = static_cast<uint32_t>(d.params.size());

    // type former
    ConstInfo ind;
    ind.name = d.name;
    ind.type = pi_telescope(d.params, Term::sort(d.arity));
    ind.kind = ConstKind::Inductive;
    add_const(std::move(ind));

    InductiveInfo info;
    info.name = d.name;
    info.n_params = P;
    info.arity = d.arity;

    // constructors: validate shape, record arg counts and recursive positions
    struct CtorParts {
        Telescope args;  // after stripping params
    };
    std::vector<CtorParts> parts;
    uint32_t ctor_index = 0;
    for (const auto& [cname, ctype] : d.ctors) {
        Term t = ctype;
        for (uint32_t j = 0; j < P; ++j) {
            if (!t.is(TermKind::Pi))
                throw_error(DiagCategory::IllFormedTelescope, SourceSpan::synthetic(),
                            "constructor " + cname + " does not quantify over the parameters");
            t = t.body();
        }
        CtorShape shape;
        shape.name = cname;
        CtorParts cp;
        while (t.is(TermKind::Pi)) {
            cp.args.push_back({t.binder_name(), t.domain()});
            t = t.body();
        }
        const uint32_t n = static_cast<uint32_t>(cp.args.size());
        // codomain must be the inductive applied to exactly the parameters
        Term expected_cod = mk_apps(Term::constant(d.name), param_vars(P, n));
        if (!(t == expected_cod))
            throw_error(DiagCategory::IllFormedTelescope, SourceSpan::synthetic(),
                        "constructor " + cname + " must target " + d.name +
                            " applied to its parameters");
        for (uint32_t i = 0; i < n; ++i) {
            // arg type lives in context params + previous args (P + i vars)
            Term rec_shape = mk_apps(Term::constant(d.name), param_vars(P, i));
            bool is_rec = cp.args[i].type == rec_shape;
            shape.recursive.push_back(is_rec);
            if (!is_rec) {
                // the inductive may not occur in non-recursive argument types
                bool occurs = false;
                std::function<void(const Term&)> scan = [&](const Term& u) {
                    if (occurs) return;
                    if (u.is_const(d.name)) { occurs = true; return; }
                    switch (u.kind()) {
                        case TermKind::App: scan(u.app_fn()); scan(u.app_arg()); break;
                        case TermKind::Lam:
                        case TermKind::Pi: scan(u.domain()); scan(u.body()); break;
                        default: break;
                    }
                };
                scan(cp.args[i].type);
                if (occurs)
                    throw_error(DiagCategory::IllFormedTelescope, SourceSpan::synthetic(),
                                "unsupported recursive occurrence in constructor " + cname);
            }
        }
        shape.n_args = n;
        info.ctors.push_back(std::move(shape));
        parts.push_back(std::move(cp));

        ConstInfo ci;
        ci.name = cname;
        ci.type = ctype;
        ci.kind = ConstKind::Constructor;
        ci.parent = d.name;
        ci.ctor_index = ctor_index++;
        add_const(std::move(ci));
    }

    // recursor; motive eliminates into Type 1 for Type-valued inductives
    // (cumulativity admits every smaller sort), into Prop for Prop-valued ones
    const uint32_t C = static_cast<uint32_t>(d.ctors.size());
    SortLevel motive_sort = d.arity.is_prop() ? SortLevel::mk_prop() : SortLevel::mk_type(1);

    // motive type, in context [params]: (x : I params) -> Sort
    Term motive_ty =
        Term::pi("x", mk_apps(Term::constant(d.name), param_vars(P, 0)), Term::sort(motive_sort));

    // case types, each built in context [params; motive]
    std::vector<Term> cases;
    for (uint32_t k = 0; k < C; ++k) {
        const auto& shape = info.ctors[k];
        const auto& cp = parts[k];
        const uint32_t n = shape.n_args;
        uint32_t m_total = 0;
        for (bool r : shape.recursive) m_total += r ? 1 : 0;

        // codomain: motive (ctor params args), under n args + m_total ihs
        std::vector<Term> capp_args = param_vars(P, n + m_total + 1);
        for (uint32_t j = 1; j <= n; ++j) capp_args.push_back(Term::var(n - j + m_total));
        Term cod = Term::app(Term::var(n + m_total),
                             mk_apps(Term::constant(shape.name), capp_args));

        // trailing induction hypotheses, innermost-last
        Term acc = cod;
        uint32_t m_seen = m_total;
        for (uint32_t j = n; j >= 1 && m_seen > 0; --j) {
            if (!shape.recursive[j - 1]) continue;
            // type of ih for arg j, with m_seen-1 later ihs already peeled
            uint32_t m_before = m_seen - 1;
            Term ih_ty = Term::app(Term::var(n + m_before), Term::var(n - j + m_before));
            acc = Term::pi("ih", ih_ty, acc);
            --m_seen;
        }
        // argument binders; lift param references over the motive binder
        for (uint32_t j = n; j >= 1; --j) {
            Term dom = lift(cp.args[j - 1].type, j - 1, 1);
            acc = Term::pi(cp.args[j - 1].name, dom, acc);
        }
        cases.push_back(acc);
    }

    // assemble: params, motive, cases, major
    Term rec_cod = Term::app(Term::var(C + 1), Term::var(0));
    Term major_ty = lift(mk_apps(Term::constant(d.name), param_vars(P, 0)), 0, 1 + C);
    Term rec_ty = Term::pi("x", major_ty, rec_cod);
    for (uint32_t k = C; k >= 1; --k)
        rec_ty = Term::pi("f", lift(cases[k - 1], 0, k - 1), rec_ty);
    rec_ty = Term::pi("P", motive_ty, rec_ty);
    rec_ty = pi_telescope(d.params, rec_ty);

    info.recursor = d.recursor_name;
    ConstInfo rec;
    rec.name = d.recursor_name;
    rec.type = rec_ty;
    rec.kind = ConstKind::Recursor;
    rec.parent = d.name;
    add_const(std::move(rec));

    m_inductives.emplace(d.name, std::move(info));
}

void Environment::add_record(const RecordDecl& d) {
    const uint32_t P = static_cast<uint32_t>(d.params.size());
    const uint32_t K = static_cast<uint32_t>(d.fields.size());

    ConstInfo rec_type;
    rec_type.name = d.name;
    rec_type.type = pi_telescope(d.params, Term::sort(d.sort));
    rec_type.kind = ConstKind::Inductive;
    add_const(std::move(rec_type));

    InductiveInfo info;
    info.name = d.name;
    info.n_params = P;
    info.arity = d.sort;
    info.is_record = true;
    info.ctor_name = d.ctor_name;

    // constructor: forall params, forall fields, R params
    Term ctor_cod = mk_apps(Term::constant(d.name), param_vars(P, K));
    Term ctor_ty = pi_telescope(d.params, pi_telescope(d.fields, ctor_cod));
    CtorShape shape;
    shape.name = d.ctor_name;
    shape.n_args = K;
    shape.recursive.assign(K, false);
    info.ctors.push_back(shape);

    ConstInfo ctor;
    ctor.name = d.ctor_name;
    ctor.type = ctor_ty;
    ctor.kind = ConstKind::Constructor;
    ctor.parent = d.name;
    add_const(std::move(ctor));

    // projections: proj_i : forall params (s : R params), T_i with earlier
    // fields replaced by their projections of s
    Term struct_ty = mk_apps(Term::constant(d.name), param_vars(P, 0));
    for (uint32_t i = 0; i < K; ++i) {
        const Term& ti = d.fields[i].type;  // context [params; f_0..f_{i-1}]
        Term remapped = remap_free(ti, [&](uint32_t free_index, uint32_t depth)
                                            -> std::optional<Term> {
            // source: innermost f_{i-1}=0 ... f_0=i-1, params start at i
            if (free_index < i) {
                uint32_t j = i - 1 - free_index;  // field index
                std::vector<Term> args = param_vars(P, 1);  // seen from under s
                Term repl = mk_apps(Term::constant(d.fields[j].name), args);
                repl = Term::app(repl, Term::var(0));  // apply to s
                return lift(repl, 0, depth);
            }
            uint32_t j = free_index - i;  // param offset: p_{P-1-j}
            return Term::var(j + 1 + depth);
        });
        Term proj_ty = pi_telescope(d.params, Term::pi("s", struct_ty, remapped));
        info.fields.push_back(d.fields[i].name);

        ConstInfo proj;
        proj.name = d.fields[i].name;
        proj.type = proj_ty;
        proj.kind = ConstKind::Projection;
        proj.parent = d.name;
        proj.field_index = i;
        add_const(std::move(proj));
    }

    m_inductives.emplace(d.name, std::move(info));
}

Environment Environment::initial() {
    Environment env;

    // built-in propositional equality with its singleton eliminator
    Term type0 = Term::type(0);
    Term eq_ty = Term::pi("A", type0, Term::pi("x", Term::var(0), Term::pi("y", Term::var(1),
                                                                           Term::prop())));
    ConstInfo eq;
    eq.name = "eq";
    eq.type = eq_ty;
    eq.kind = ConstKind::Inductive;
    env.add_const(std::move(eq));

    Term refl_ty = Term::pi(
        "A", type0,
        Term::pi("x", Term::var(0),
                 mk_apps(Term::constant("eq"), {Term::var(1), Term::var(0), Term::var(0)})));
    ConstInfo refl;
    refl.name = "eq_refl";
    refl.type = refl_ty;
    refl.kind = ConstKind::Constructor;
    refl.parent = "eq";
    env.add_const(std::move(refl));

    // eq_rect : forall (A : Type 0) (x : A) (P : A -> Type 1),
    //           P x -> forall y : A, eq A x y -> P y
    Term rect_ty = Term::pi(
        "A", type0,
        Term::pi(
            "x", Term::var(0),
            Term::pi(
                "P", Term::pi("y", Term::var(1), Term::type(1)),
                Term::pi(
                    "px", Term::app(Term::var(0), Term::var(1)),
                    Term::pi("y", Term::var(3),
                             Term::pi("h",
                                      mk_apps(Term::constant("eq"),
                                              {Term::var(4), Term::var(3), Term::var(0)}),
                                      Term::app(Term::var(3), Term::var(1))))))));
    ConstInfo rect;
    rect.name = "eq_rect";
    rect.type = rect_ty;
    rect.kind = ConstKind::EqRecursor;
    rect.parent = "eq";
    env.add_const(std::move(rect));

    return env;
}

}  // namespace mtt
