/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "mtt/diagnostics.hpp"

namespace mtt {

std::string SourceSpan::str() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(col);
}

const char* category_name(DiagCategory c) {
    switch (c) {
        case DiagCategory::LexError: return "LexError";
        case DiagCategory::ParseError: return "ParseError";
        case DiagCategory::UnknownIdentifier: return "UnknownIdentifier";
        case DiagCategory::DuplicateName: return "DuplicateName";
        case DiagCategory::IllFormedTelescope: return "IllFormedTelescope";
        case DiagCategory::NotAFunction: return "NotAFunction";
        case DiagCategory::TypeMismatch: return "TypeMismatch";
        case DiagCategory::UnboundVariable: return "UnboundVariable";
        case DiagCategory::SortError: return "SortError";
        case DiagCategory::FuelExhausted: return "FuelExhausted";
        case DiagCategory::Mismatch: return "Mismatch";
        case DiagCategory::OccursCheck: return "OccursCheck";
        case DiagCategory::ScopeError: return "ScopeError";
        case DiagCategory::UnificationFuelExhausted: return "UnificationFuelExhausted";
        case DiagCategory::UnresolvedMeta: return "UnresolvedMeta";
        case DiagCategory::StuckConstraint: return "StuckConstraint";
        case DiagCategory::NoCoercionPath: return "NoCoercionPath";
        case DiagCategory::DuplicateCoercionPath: return "DuplicateCoercionPath";
        case DiagCategory::DuplicateHint: return "DuplicateHint";
        case DiagCategory::BadCoercionTarget: return "BadCoercionTarget";
        case DiagCategory::NotAStructure: return "NotAStructure";
        case DiagCategory::AmbiguousNotation: return "AmbiguousNotation";
        case DiagCategory::FailExpected: return "FailExpected";
        case DiagCategory::IoError: return "IoError";
        case DiagCategory::UsageError: return "UsageError";
    }
    return "Unknown";
}

std::string Diagnostic::str() const {
    std::string s = span.str();
    s += ": ";
    s += category_name(category);
    s += ": ";
    s += message;
    if (!detail.empty()) {
        s += " [";
        s += detail;
        s += "]";
    }
    return s;
}

}  // namespace mtt
