/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once
#include <ostream>
#include <string>
#include <vector>

#include "mtt/diagnostics.hpp"

namespace mtt {

/// One audit record. Unification steps carry `resource` 1..4:
///   1 syntactic decomposition, 2 pattern solving / postponement,
///   3 canonical hint lookup, 4 reduction.
/// Elaboration records (implicit/coercion insertion) carry resource 0.
struct TraceRecord {
    std::string phase;       // "unify" | "elab"
    std::string constraint;  // rendered lhs ≡ rhs (unify only)
    int resource = 0;
    std::string action;
    std::string result;      // "ok" | "fail" | "postponed" | "miss"
    std::string note;        // e.g. the hint instance name
    SourceSpan span;
};

class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void record(const TraceRecord& r) = 0;
};

/// Newline-delimited JSON, one object per record.
class NdjsonTraceSink : public TraceSink {
public:
    NdjsonTraceSink(std::ostream& out, bool unify_on, bool elab_on)
        : m_out(out), m_unify(unify_on), m_elab(elab_on) {}
    void record(const TraceRecord& r) override;

private:
    std::ostream& m_out;
    bool m_unify;
    bool m_elab;
};

/// Keeps records in memory; used by tests.
class CollectingTraceSink : public TraceSink {
public:
    void record(const TraceRecord& r) override { records.push_back(r); }
    std::vector<TraceRecord> records;
};

}  // namespace mtt
