/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mtt/diagnostics.hpp"

namespace mtt {

struct SurfaceTerm;
using SurfacePtr = std::shared_ptr<const SurfaceTerm>;

enum class SurfaceKind : uint8_t {
    Ref,        // identifier
    AtRef,      // @identifier (no implicit insertion)
    Hole,       // _
    Numeral,    // 0, 1, 2, ...
    Sort,       // Prop / Type i
    App,        // f a
    Lam,        // fun binders => body
    Pi,         // forall binders, body   (also -> sugar)
    Infix,      // lhs OP rhs, resolved against the notation table
    Ascribe,    // (t : T)
    Slot,       // operand hole inside a notation template (0 or 1)
};

/// One parsed binder group: `(x y : T)`, `{x : T}`, or bare `x y : T` / `x`.
struct SurfaceBinderGroup {
    std::vector<std::string> names;
    SurfacePtr type;  // null when unannotated
    bool implicit = false;
    SourceSpan span;
};

struct SurfaceTerm {
    SurfaceKind kind;
    SourceSpan span;

    std::string name;       // Ref / AtRef / Infix token
    uint64_t numeral = 0;   // Numeral
    bool sort_is_prop = false;
    uint32_t sort_level = 0;
    SurfacePtr a, b;        // App fn/arg, Infix lhs/rhs, Ascribe term/type
    std::vector<SurfaceBinderGroup> binders;  // Lam / Pi
    SurfacePtr body;        // Lam / Pi
    uint32_t slot = 0;      // Slot
};

SurfacePtr s_ref(std::string name, SourceSpan sp);
SurfacePtr s_at(std::string name, SourceSpan sp);
SurfacePtr s_hole(SourceSpan sp);
SurfacePtr s_numeral(uint64_t n, SourceSpan sp);
SurfacePtr s_sort(bool is_prop, uint32_t level, SourceSpan sp);
SurfacePtr s_app(SurfacePtr f, SurfacePtr a, SourceSpan sp);
SurfacePtr s_lam(std::vector<SurfaceBinderGroup> bs, SurfacePtr body, SourceSpan sp);
SurfacePtr s_pi(std::vector<SurfaceBinderGroup> bs, SurfacePtr body, SourceSpan sp);
SurfacePtr s_arrow(SurfacePtr dom, SurfacePtr cod, SourceSpan sp);
SurfacePtr s_infix(std::string token, SurfacePtr l, SurfacePtr r, SourceSpan sp);
SurfacePtr s_ascribe(SurfacePtr t, SurfacePtr ty, SourceSpan sp);
SurfacePtr s_slot(uint32_t i, SourceSpan sp);

/// Structural equality, spans ignored.
bool surface_eq(const SurfacePtr& a, const SurfacePtr& b);

/// Replace Slot(0)/Slot(1) by the given operands (used when a notation fires).
SurfacePtr fill_slots(const SurfacePtr& tmpl, const SurfacePtr& op0, const SurfacePtr& op1);

/// Copy with every span replaced; diagnostics inside an expanded notation
/// template then point at the use site rather than the declaration.
SurfacePtr retarget_spans(const SurfacePtr& t, const SourceSpan& span);

bool surface_mentions_slot(const SurfacePtr& t, uint32_t slot);

enum class Assoc : uint8_t { Left, Right, None };

/// Vernacular commands.
enum class CommandKind : uint8_t {
    Definition,
    Axiom,
    Record,
    Inductive,
    Coercion,
    Canonical,
    Notation,
    Check,
    Eval,
    Fail,
};

struct RecordFieldSyntax {
    std::string name;
    SurfacePtr type;
    SourceSpan span;
};

struct ConstructorSyntax {
    std::string name;
    SurfacePtr type;
    SourceSpan span;
};

struct Command;
using CommandPtr = std::shared_ptr<const Command>;

struct Command {
    CommandKind kind;
    SourceSpan span;

    std::string name;                      // definition/axiom/record/inductive/coercion fn/canonical
    std::vector<SurfaceBinderGroup> params;  // Definition params, Record/Inductive params
    SurfacePtr type;                       // annotation / arity / axiom type
    SurfacePtr body;                       // Definition body, Check/Eval term
    // Record
    std::string ctor_name;
    std::vector<RecordFieldSyntax> fields;
    // Inductive
    std::vector<ConstructorSyntax> ctors;
    // Coercion: name : src >-> target
    std::string coercion_src;
    std::string coercion_target;           // "Type" => Sortclass, "Funclass", or a named class
    // Notation
    std::string notation_token;
    std::string operand_left, operand_right;
    SurfacePtr notation_template;          // with Slot(0)/Slot(1)
    uint32_t notation_level = 40;
    Assoc notation_assoc = Assoc::Left;
    // Fail
    CommandPtr inner;
    // set when the wrapped command already failed to parse
    std::shared_ptr<Diagnostic> parse_failure;
};

}  // namespace mtt
