/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtt/diagnostics.hpp"

namespace mtt {

using Name = std::string;

/// Prop or Type(i). Prop sits below every Type level in the cumulativity order.
struct SortLevel {
    bool prop = true;
    uint32_t level = 0;  // meaningful only when !prop

    static SortLevel mk_prop() { return SortLevel{true, 0}; }
    static SortLevel mk_type(uint32_t i) { return SortLevel{false, i}; }

    bool is_prop() const { return prop; }
    friend bool operator==(const SortLevel& a, const SortLevel& b) {
        return a.prop == b.prop && (a.prop || a.level == b.level);
    }
    friend bool operator!=(const SortLevel& a, const SortLevel& b) { return !(a == b); }

    /// Cumulativity: Prop <= Type 0 <= Type 1 <= ...
    bool sub(const SortLevel& other) const {
        if (prop) return true;
        return !other.prop && level <= other.level;
    }
    /// The sort this sort inhabits: Prop : Type 0, Type i : Type (i+1).
    SortLevel succ() const { return prop ? mk_type(0) : mk_type(level + 1); }
    /// Sort of a dependent product. Impredicative Prop: anything into Prop is Prop.
    static SortLevel pi_rule(const SortLevel& dom, const SortLevel& cod) {
        if (cod.prop) return mk_prop();
        uint32_t d = dom.prop ? 0 : dom.level;
        return mk_type(d > cod.level ? d : cod.level);
    }
    std::string str() const { return prop ? "Prop" : "Type " + std::to_string(level); }
};

enum class TermKind : uint8_t { Sort, Var, Const, App, Lam, Pi, Meta };

using MetaId = uint32_t;

struct TermData;

/// Immutable core term. Copying is a shared_ptr copy; values are safe to
/// share across threads after construction. Equality is alpha-equivalence:
/// binder display names never participate.
class Term {
public:
    Term() = default;  // null; only valid as a placeholder before assignment

    static Term sort(SortLevel l);
    static Term prop() { return sort(SortLevel::mk_prop()); }
    static Term type(uint32_t i) { return sort(SortLevel::mk_type(i)); }
    static Term var(uint32_t index);
    static Term constant(Name name);
    static Term app(Term fn, Term arg);
    static Term lam(std::string binder, Term domain, Term body);
    static Term pi(std::string binder, Term domain, Term codomain);
    /// Non-dependent product; binder name "_".
    static Term arrow(Term domain, Term codomain);
    static Term meta(MetaId id, std::vector<Term> spine);

    bool is_null() const { return m_p == nullptr; }
    TermKind kind() const;
    bool is(TermKind k) const { return kind() == k; }

    SortLevel sort_level() const;           // Sort
    uint32_t var_index() const;             // Var
    const Name& const_name() const;         // Const
    const Term& app_fn() const;             // App
    const Term& app_arg() const;            // App
    const std::string& binder_name() const; // Lam/Pi
    const Term& domain() const;             // Lam/Pi
    const Term& body() const;               // Lam body or Pi codomain
    MetaId meta_id() const;                 // Meta
    const std::vector<Term>& meta_spine() const;  // Meta

    bool is_const(const Name& n) const { return is(TermKind::Const) && const_name() == n; }

    /// Largest free de Bruijn index plus one (0 for closed terms).
    uint32_t var_range() const;
    bool closed() const { return var_range() == 0; }
    bool has_meta() const;

    /// Alpha-equivalence (structural equality with binder names ignored).
    friend bool operator==(const Term& a, const Term& b);
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

    const TermData* raw() const { return m_p.get(); }

private:
    explicit Term(std::shared_ptr<const TermData> p) : m_p(std::move(p)) {}
    std::shared_ptr<const TermData> m_p;
};

struct TermData {
    TermKind kind;
    uint32_t var_range = 0;  // max free index + 1
    bool has_meta = false;

    SortLevel sort{};          // Sort
    uint32_t index = 0;        // Var
    Name name;                 // Const
    std::string binder;        // Lam / Pi display name
    Term fn, arg;              // App
    Term domain, body;         // Lam / Pi (body = codomain for Pi)
    MetaId meta = 0;           // Meta
    std::vector<Term> spine;   // Meta
};

/// One binder of a telescope or typing context. Contexts are stored
/// outermost-first; Var(0) refers to the back().
struct Binder {
    std::string name;
    Term type;
    bool implicit = false;
};
using Telescope = std::vector<Binder>;

/// Shift free indices >= cutoff up by amount.
Term lift(const Term& t, uint32_t cutoff, uint32_t amount);

/// Replace free index `index` by `replacement` (itself lifted under binders);
/// free indices above `index` shift down by one.
Term subst(const Term& t, uint32_t index, const Term& replacement);

/// subst specialised to entering a binder: body[0 := arg].
inline Term instantiate(const Term& body, const Term& arg) { return subst(body, 0, arg); }

/// Rewrite free variables: `f(free_index, depth)` returns the replacement
/// (expressed for the *target* context at nesting `depth`) or nullopt to
/// keep the variable as Var(free_index + depth) unchanged.
Term remap_free(const Term& t,
                const std::function<std::optional<Term>(uint32_t free_index, uint32_t depth)>& f);

/// Head and argument spine of nested applications, outermost-last.
std::pair<Term, std::vector<Term>> unfold_apps(const Term& t);
Term mk_apps(Term head, const std::vector<Term>& args);
Term mk_apps(Term head, std::initializer_list<Term> args);

/// True if metavariable `m` occurs anywhere in `t` (including spines).
bool mentions_meta(const Term& t, MetaId m);
void collect_metas(const Term& t, std::vector<MetaId>& out);

/// Fold a telescope into iterated Pis / Lams around `inner`.
Term pi_telescope(const Telescope& tele, Term inner);
Term lam_telescope(const Telescope& tele, Term inner);

/// Low-level rendering with de Bruijn indices (#0, #1, ...), for internal
/// diagnostics only; user-facing output goes through the printer.
std::string raw_str(const Term& t);

}  // namespace mtt
