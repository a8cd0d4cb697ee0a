/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once
#include <optional>
#include <utility>

#include "mtt/kernel.hpp"
#include "mtt/surface_ast.hpp"
#include "mtt/unify.hpp"

namespace mtt {

struct ElabOptions {
    KernelOptions kernel;
    UnifyOptions unify;
    bool explicit_print = false;  // show inserted coercions and implicit args
};

/// Bidirectional elaboration of surface terms into core terms: implicit
/// argument insertion, holes, coercion insertion on mismatches, and
/// finalization. One instance per command; owns the metavariable state.
class Elaborator {
public:
    Elaborator(const Environment& env, ElabOptions opts, TraceSink* trace = nullptr)
        : m_env(env),
          m_kernel(env, opts.kernel),
          m_state(m_kernel, opts.unify, trace),
          m_opts(opts),
          m_trace(trace) {}

    /// Returns (core term, its type). In checking mode the result's type has
    /// been reconciled with `expected`, inserting a coercion if needed.
    std::pair<Term, Term> elaborate(Telescope& ctx, const SurfacePtr& s,
                                    const std::optional<Term>& expected);

    /// Elaborate in type position: the result's type must be a sort, with
    /// the Sortclass coercion as fallback.
    Term elaborate_type(Telescope& ctx, const SurfacePtr& s, SortLevel* sort_out = nullptr);

    std::vector<Diagnostic> finalize() { return m_state.finalize(); }
    Term zonk(const Term& t) const { return m_state.zonk(t); }

    ElabState& state() { return m_state; }
    const Kernel& kernel() const { return m_kernel; }

private:
    struct FlatBinder {
        std::string name;
        SurfacePtr type;  // null: unannotated
        bool group_start = false;
        bool implicit = false;
        SourceSpan span;
    };
    static std::vector<FlatBinder> flatten(const std::vector<SurfaceBinderGroup>& groups);

    std::pair<Term, Term> finish(Telescope& ctx, Term t, Term ty,
                                 const std::optional<Term>& expected, const SourceSpan& span);
    void insert_implicits(Telescope& ctx, Term& t, Term& ty, const Name& name,
                          const SourceSpan& span);
    std::pair<Term, Term> coerce_or_fail(Telescope& ctx, const Term& t, const Term& have,
                                         const Term& want, const SourceSpan& span);
    std::pair<Term, Term> apply_coercion_path(Telescope& ctx, Term t, Term ty,
                                              const std::vector<Name>& path,
                                              const SourceSpan& span);
    std::optional<CoercionClass> class_of(const Term& whnf_ty) const;

    std::pair<Term, Term> elab_lam(Telescope& ctx, const std::vector<FlatBinder>& binders,
                                   size_t i, Term prev_domain, const SurfacePtr& body,
                                   const std::optional<Term>& expected);
    std::pair<Term, SortLevel> elab_pi(Telescope& ctx, const std::vector<FlatBinder>& binders,
                                       size_t i, Term prev_domain, SortLevel prev_sort,
                                       const SurfacePtr& body);
    std::pair<Term, Term> elab_app(Telescope& ctx, const SurfacePtr& s);
    std::pair<Term, Term> elab_ref(Telescope& ctx, const std::string& name, bool at_mode,
                                   const SourceSpan& span);

    void trace_elab(const std::string& action, const std::string& note, const SourceSpan& span);

    const Environment& m_env;
    Kernel m_kernel;
    ElabState m_state;
    ElabOptions m_opts;
    TraceSink* m_trace;
};

struct CommandOutcome {
    Environment env;
    std::vector<std::string> lines;
    unsigned unify_steps = 0;
};

/// Vernacular command processing: elaborate, kernel-check, then declare.
class CommandProcessor {
public:
    CommandProcessor(ElabOptions opts, TraceSink* trace = nullptr)
        : m_opts(opts), m_trace(trace) {}

    CommandOutcome process(const Environment& env, const CommandPtr& cmd);

private:
    CommandOutcome process_definition(const Environment& env, const Command& cmd);
    CommandOutcome process_axiom(const Environment& env, const Command& cmd);
    CommandOutcome process_record(const Environment& env, const Command& cmd);
    CommandOutcome process_inductive(const Environment& env, const Command& cmd);
    CommandOutcome process_coercion(const Environment& env, const Command& cmd);
    CommandOutcome process_canonical(const Environment& env, const Command& cmd);
    CommandOutcome process_notation(const Environment& env, const Command& cmd);
    CommandOutcome process_check(const Environment& env, const Command& cmd);
    CommandOutcome process_eval(const Environment& env, const Command& cmd);
    CommandOutcome process_fail(const Environment& env, const Command& cmd);

    Telescope elaborate_params(Elaborator& el, const std::vector<SurfaceBinderGroup>& groups);
    SortLevel literal_sort(const SurfacePtr& s);
    PrintOptions print_options(const ElabState& state) const;

    ElabOptions m_opts;
    TraceSink* m_trace;
};

/// Leading implicit-binder flags gathered from the written parameters and
/// annotation; empty when nothing is marked implicit.
std::vector<bool> surface_implicit_flags(const std::vector<SurfaceBinderGroup>& params,
                                         const SurfacePtr& annotation);

}  // namespace mtt
