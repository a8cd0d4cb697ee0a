/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once
#include <optional>
#include <set>

#include "mtt/kernel.hpp"
#include "mtt/printer.hpp"
#include "mtt/term.hpp"
#include "mtt/trace.hpp"

namespace mtt {

enum class MetaReason : uint8_t { ImplicitArg, Hole, CoercionProbe, NotationHole };

struct MetaOrigin {
    SourceSpan span;
    MetaReason reason = MetaReason::Hole;
    Name about;  // constant whose implicit binder spawned the meta, if any
};

struct MetaDecl {
    MetaId id = 0;
    Telescope ctx;
    Term type;                  // in ctx
    std::optional<Term> value;  // closed lambda-abstraction over ctx; monotone
    MetaOrigin origin;
};

struct Constraint {
    Telescope ctx;
    Term lhs, rhs;
    SourceSpan span;
};

enum class UnifyStatus : uint8_t { Solved, Postponed, Failed };

struct UnifyResult {
    UnifyStatus status = UnifyStatus::Solved;
    std::optional<Diagnostic> failure;
    bool ok() const { return status != UnifyStatus::Failed; }
};

struct UnifyOptions {
    long unify_fuel = 10000;  // resource-4 unfoldings per constraint
    long max_depth = 10000;
};

/// Metavariable context plus the unification procedure. One state per
/// elaboration session; never shared mutably.
///
/// Per constraint the resources are tried in a fixed order:
///   (1) syntactic / rigid-rigid decomposition after instantiation,
///   (2) flex-rigid Miller-pattern solving (non-patterns postpone),
///   (3) canonical hint lookup for `proj ... s` against a keyed rigid side,
///   (4) weak-head reduction of one side, iota/beta before a single delta
///       unfolding of the head, then retry.
/// Flex-flex and reduction-stuck constraints are postponed and re-woken when
/// one of their metavariables is assigned.
class ElabState {
public:
    ElabState(const Kernel& kernel, UnifyOptions opts = {}, TraceSink* trace = nullptr)
        : m_kernel(kernel), m_opts(opts), m_trace(trace) {}

    const Kernel& kernel() const { return m_kernel; }
    const Environment& env() const { return m_kernel.env(); }

    MetaId fresh_meta(const Telescope& ctx, Term type, MetaOrigin origin);
    /// The meta applied to the identity substitution over its context.
    Term meta_term(MetaId id) const;
    const MetaDecl& meta(MetaId id) const { return m_metas[id]; }
    size_t meta_count() const { return m_metas.size(); }
    bool assigned(MetaId id) const { return m_metas[id].value.has_value(); }

    /// Instantiate assigned metavariables. Subterms without metas are
    /// returned unchanged (pointer-identical).
    Term zonk(const Term& t) const;

    /// Solve lhs ≡ rhs; on failure every assignment and postponement made by
    /// this call is rolled back.
    UnifyResult unify(const Telescope& ctx, const Term& lhs, const Term& rhs,
                      const SourceSpan& span);

    /// Miller-pattern step, exposed for tests: assign `m` so that
    /// m[spine] = rhs. Returns false when the spine is not a pattern or the
    /// scope check is blocked by other metas (caller postpones). Throws
    /// OccursCheck / ScopeError.
    bool solve_pattern(MetaId m, const std::vector<Term>& spine, const Term& rhs,
                       const SourceSpan& span);

    /// Final round: wake everything, then report remaining postponed
    /// constraints (StuckConstraint) and unassigned metas (UnresolvedMeta).
    std::vector<Diagnostic> finalize();

    const std::vector<Constraint>& postponed() const { return m_postponed; }
    unsigned steps() const { return m_steps; }

    /// Coercion applications inserted by the elaborator; the printer hides
    /// these nodes unless asked to show them.
    void mark_inserted(const Term& t) { m_inserted.insert(t.raw()); }
    const std::set<const TermData*>& inserted() const { return m_inserted; }

    bool no_hints = false;  // disables resource 3 during coercion probes

private:
    struct Savepoint {
        size_t log_mark;
        std::vector<Constraint> queue;
    };
    Savepoint save() const;
    void rollback(const Savepoint& sp);

    [[noreturn]] void fail(DiagCategory cat, const std::string& msg, const Telescope& ctx,
                           const Term& lhs, const Term& rhs, const SourceSpan& span);
    void trace(int resource, const std::string& action, const std::string& result,
               const std::string& note, const Telescope& ctx, const Term& lhs, const Term& rhs,
               const SourceSpan& span);

    void unify_core(const Telescope& ctx, const Term& lhs, const Term& rhs,
                    const SourceSpan& span, int depth);
    bool try_hint(const Telescope& ctx, const Term& proj_side, const Term& rigid_side,
                  const SourceSpan& span, int depth);
    void assign(MetaId m, Term value, const SourceSpan& span);
    void wake(MetaId m, int depth);
    void postpone(const Telescope& ctx, const Term& lhs, const Term& rhs,
                  const SourceSpan& span);
    bool is_stuck_flex(const Term& t) const;

    const Kernel& m_kernel;
    UnifyOptions m_opts;
    TraceSink* m_trace;
    std::vector<MetaDecl> m_metas;
    std::vector<Constraint> m_postponed;
    std::vector<MetaId> m_assign_log;
    long m_r4_budget = 0;  // per top-level unify call
    unsigned m_steps = 0;
    std::set<const TermData*> m_inserted;
};

}  // namespace mtt
