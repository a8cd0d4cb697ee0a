/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "mtt/trace.hpp"

#include <json.hpp>

namespace mtt {

void NdjsonTraceSink::record(const TraceRecord& r) {
    if (r.phase == "unify" && !m_unify) return;
    if (r.phase == "elab" && !m_elab) return;
    nlohmann::json j;
    j["phase"] = r.phase;
    if (!r.constraint.empty()) j["constraint"] = r.constraint;
    if (r.resource) j["resource"] = r.resource;
    j["action"] = r.action;
    j["result"] = r.result;
    if (!r.note.empty()) j["note"] = r.note;
    j["span"] = r.span.str();
    m_out << j.dump() << "\n";
}

}  // namespace mtt
