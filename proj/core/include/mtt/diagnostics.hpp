/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtt {

struct SourceSpan {
    std::string file;
    uint32_t start = 0;  // byte offsets
    uint32_t end = 0;
    uint32_t line = 1;  // 1-based position of `start`
    uint32_t col = 1;

    static SourceSpan synthetic(std::string origin = "<internal>") {
        SourceSpan s;
        s.file = std::move(origin);
        return s;
    }
    std::string str() const;
};

enum class DiagCategory {
    LexError,
    ParseError,
    UnknownIdentifier,
    DuplicateName,
    IllFormedTelescope,
    NotAFunction,
    TypeMismatch,
    UnboundVariable,
    SortError,
    FuelExhausted,
    Mismatch,
    OccursCheck,
    ScopeError,
    UnificationFuelExhausted,
    UnresolvedMeta,
    StuckConstraint,
    NoCoercionPath,
    DuplicateCoercionPath,
    DuplicateHint,
    BadCoercionTarget,
    NotAStructure,
    AmbiguousNotation,
    FailExpected,
    IoError,
    UsageError,
};

const char* category_name(DiagCategory c);

/// One structured error or report record. `detail` carries the failing
/// constraint or type pair, already rendered, when there is one.
struct Diagnostic {
    DiagCategory category;
    SourceSpan span;
    std::string message;
    std::string detail;

    /// `file:line:col: category: message` (the editor-integration format).
    std::string str() const;
};

/// Exception wrapper used by all modules; callers that want a verdict
/// rather than an unwind catch it at the command boundary.
class Error : public std::runtime_error {
public:
    explicit Error(Diagnostic d) : std::runtime_error(d.str()), m_diag(std::move(d)) {}
    const Diagnostic& diag() const { return m_diag; }

private:
    Diagnostic m_diag;
};

[[noreturn]] inline void throw_error(DiagCategory c, SourceSpan span, std::string msg,
                                     std::string detail = {}) {
    throw Error(Diagnostic{c, std::move(span), std::move(msg), std::move(detail)});
}

}  // namespace mtt
