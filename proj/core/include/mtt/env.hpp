/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mtt/surface_ast.hpp"
#include "mtt/term.hpp"

namespace mtt {

/// Key of a rigid term for canonical-hint lookup, computed from its whnf head.
struct HeadKey {
    enum class Kind : uint8_t { Const, Sort, Pi } kind = Kind::Const;
    Name name;  // Const only

    static HeadKey constant(Name n) { return HeadKey{Kind::Const, std::move(n)}; }
    static HeadKey sort() { return HeadKey{Kind::Sort, {}}; }
    static HeadKey pi() { return HeadKey{Kind::Pi, {}}; }

    friend bool operator==(const HeadKey& a, const HeadKey& b) {
        return a.kind == b.kind && a.name == b.name;
    }
    friend bool operator<(const HeadKey& a, const HeadKey& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.name < b.name;
    }
    std::string str() const;
};

/// Head of a term in weak-head-normal form, when it has one.
std::optional<HeadKey> head_key(const Term& whnf_term);

struct CoercionClass {
    enum class Kind : uint8_t { Named, Sortclass, Funclass } kind = Kind::Named;
    Name name;  // Named only

    static CoercionClass named(Name n) { return CoercionClass{Kind::Named, std::move(n)}; }
    static CoercionClass sortclass() { return CoercionClass{Kind::Sortclass, {}}; }
    static CoercionClass funclass() { return CoercionClass{Kind::Funclass, {}}; }

    friend bool operator==(const CoercionClass& a, const CoercionClass& b) {
        return a.kind == b.kind && a.name == b.name;
    }
    friend bool operator<(const CoercionClass& a, const CoercionClass& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.name < b.name;
    }
    std::string str() const;
};

enum class ConstKind : uint8_t {
    Definition,   // has a body; delta-unfoldable
    Axiom,        // opaque
    Inductive,    // type former (also record types)
    Constructor,
    Recursor,     // generated; iota rules
    Projection,   // generated; iota rules
    EqRecursor,   // built-in J; singleton iota
};

struct ConstInfo {
    Name name;
    Term type;
    std::optional<Term> body;  // Definition only
    ConstKind kind = ConstKind::Axiom;
    uint32_t decl_index = 0;   // declaration recency, for lazy delta
    Name parent;               // Constructor/Recursor/Projection: owning inductive/record
    uint32_t field_index = 0;  // Projection
    uint32_t ctor_index = 0;   // Constructor
};

struct CtorShape {
    Name name;
    uint32_t n_args = 0;             // not counting params
    std::vector<bool> recursive;     // per arg
};

struct InductiveInfo {
    Name name;
    uint32_t n_params = 0;
    SortLevel arity;
    std::vector<CtorShape> ctors;
    Name recursor;  // empty for records
    bool is_record = false;
    Name ctor_name;               // record constructor
    std::vector<Name> fields;     // record projection names, in order
};

// --- declarations (the replayable list) ---

struct DefinitionDecl { Name name; Term type; Term body; };
struct AxiomDecl { Name name; Term type; };
struct InductiveDecl {
    Name name;
    Telescope params;
    SortLevel arity;
    std::vector<std::pair<Name, Term>> ctors;  // full types (Pi over params included)
    Name recursor_name;
};
struct RecordDecl {
    Name name;
    Telescope params;
    SortLevel sort;
    Name ctor_name;
    Telescope fields;  // types in context params + earlier fields
};
struct CoercionDecl { Name fn; CoercionClass src; CoercionClass dst; };
struct CanonicalHintDecl { Name projection; HeadKey key; Name instance; };
struct NotationDecl {
    std::string token;
    uint32_t level = 40;
    Assoc assoc = Assoc::Left;
    SurfacePtr tmpl;  // SurfaceTerm with Slot(0)/Slot(1)
};
struct ImplicitDecl { Name name; std::vector<bool> flags; };

using Declaration = std::variant<DefinitionDecl, AxiomDecl, InductiveDecl, RecordDecl,
                                 CoercionDecl, CanonicalHintDecl, NotationDecl, ImplicitDecl>;

/// Notation table entry with precomputed printing support.
struct NotationEntry {
    std::string token;
    uint32_t level = 40;
    Assoc assoc = Assoc::Left;
    SurfacePtr tmpl;
    Name print_head;                 // empty when the template is not a printable spine
    std::vector<int32_t> print_pattern;  // per argument: -1 wildcard, 0/1 operand slot
};

/// Ordered global declarations plus derived tables. Immutable value type:
/// declare() returns an extended copy, so environments are safe to share.
class Environment {
public:
    /// Environment holding only the built-in equality (eq, eq_refl, eq_rect).
    static Environment initial();

    /// Extend with one declaration (already elaborated and kernel-checked).
    /// Generated constants (constructor, projections, recursor) are appended.
    Environment declare(const Declaration& d) const;

    const ConstInfo* find(const Name& n) const;
    const ConstInfo& get(const Name& n, const SourceSpan& use = SourceSpan::synthetic()) const;
    bool contains(const Name& n) const { return find(n) != nullptr; }
    const InductiveInfo* inductive(const Name& n) const;

    std::optional<Name> hint_lookup(const Name& projection, const HeadKey& key) const;
    bool has_hints_for(const Name& projection) const;

    const std::map<std::string, NotationEntry>& notations() const { return m_notations; }
    const std::map<Name, std::vector<bool>>& implicits() const { return m_implicits; }
    const std::vector<bool>* implicit_flags(const Name& n) const;

    bool is_coercion_fn(const Name& n) const;
    /// Unique composite coercion path, if any. Never returns identity paths.
    const std::vector<Name>* coercion_path(const CoercionClass& from,
                                           const CoercionClass& to) const;
    const std::vector<CoercionDecl>& coercion_edges() const { return m_edges; }
    const std::map<std::pair<CoercionClass, CoercionClass>, std::vector<Name>>& coercion_paths()
        const { return m_paths; }

    const std::vector<Declaration>& decls() const { return m_decls; }
    size_t size() const { return m_consts.size(); }
    const std::map<Name, ConstInfo>& consts() const { return m_consts; }

private:
    void apply(const Declaration& d);  // mutating core of declare()
    void add_const(ConstInfo info);
    void add_inductive(const InductiveDecl& d);
    void add_record(const RecordDecl& d);
    void add_coercion(const CoercionDecl& d);

    std::vector<Declaration> m_decls;
    std::map<Name, ConstInfo> m_consts;
    std::map<Name, InductiveInfo> m_inductives;
    std::map<std::pair<Name, HeadKey>, Name> m_hints;
    std::map<std::string, NotationEntry> m_notations;
    std::vector<CoercionDecl> m_edges;
    std::map<std::pair<CoercionClass, CoercionClass>, std::vector<Name>> m_paths;
    std::map<Name, std::vector<bool>> m_implicits;
    uint32_t m_next_index = 0;
};

}  // namespace mtt
