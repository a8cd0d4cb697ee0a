/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once
#include <optional>

#include "mtt/env.hpp"
#include "mtt/term.hpp"

namespace mtt {

struct ReductionFlags {
    bool beta = true;
    bool delta = true;  // unfold Definitions
    bool iota = true;   // recursor/projection rules

    static ReductionFlags all() { return {}; }
    static ReductionFlags no_delta() { return {true, false, true}; }
};

struct KernelOptions {
    long conv_fuel = 100000;  // whnf steps per conversion query
};

/// Meta-free reduction, definitional equality with cumulativity, and the
/// decidable type checker. Pure: no caches, no environment mutation. Terms
/// containing metavariables may be passed to whnf (a flexible head is simply
/// stuck); infer_type and the equality tests require meta-free input.
class Kernel {
public:
    explicit Kernel(const Environment& env, KernelOptions opts = {})
        : m_env(env), m_opts(opts) {}

    Term whnf(const Term& t, ReductionFlags flags = {}) const;
    Term normalize(const Term& t) const;
    bool is_def_eq(const Term& a, const Term& b) const;
    /// Like is_def_eq, but allows cumulativity at the top and through
    /// Pi codomains.
    bool is_sub(const Term& a, const Term& b) const;
    /// Infer the type of a meta-free term; ctx is outermost-first.
    Term infer_type(const Telescope& ctx, const Term& t) const;
    Term infer_type(const Term& t) const { Telescope ctx; return infer_type(ctx, t); }
    /// infer_type + whnf to a sort; errors with SortError otherwise.
    SortLevel sort_of(const Telescope& ctx, const Term& type) const;

    // Shared-fuel variants, for callers that batch many reductions under one
    // budget (the unifier).
    Term whnf(const Term& t, ReductionFlags flags, long& fuel) const;
    bool is_def_eq(const Term& a, const Term& b, long& fuel) const;
    bool is_sub(const Term& a, const Term& b, long& fuel) const;

    /// One delta step: head Definition constant replaced by its body, spine
    /// kept. nullopt when the head is not an unfoldable constant.
    std::optional<Term> unfold_head_once(const Term& t) const;

    const Environment& env() const { return m_env; }
    const KernelOptions& options() const { return m_opts; }

private:
    Term whnf_core(Term t, const ReductionFlags& flags, long& fuel) const;
    bool def_eq_core(const Term& a, const Term& b, long& fuel) const;
    bool is_sub_core(const Term& a, const Term& b, long& fuel) const;
    Term infer_core(Telescope& ctx, const Term& t, long& fuel) const;
    void spend(long& fuel) const;

    const Environment& m_env;
    KernelOptions m_opts;
};

}  // namespace mtt
