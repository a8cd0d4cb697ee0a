/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once
#include <memory>
#include <ostream>

#include "mtt/elab.hpp"
#include "mtt/parser.hpp"
#include "mtt/trace.hpp"

namespace mtt {

enum class TraceMode : uint8_t { Off, Elab, Unify, All };

struct RunOptions {
    std::vector<std::string> prelude_paths;  // empty: run with builtins only
    bool keep_going = false;
    bool deterministic = false;
    bool explicit_print = false;
    long fuel_conv = 100000;
    long fuel_unify = 10000;
    TraceMode trace = TraceMode::Off;
    std::ostream* trace_out = nullptr;  // defaults to std::cerr when tracing

    ElabOptions elab_options() const {
        ElabOptions o;
        o.kernel.conv_fuel = fuel_conv;
        o.unify.unify_fuel = fuel_unify;
        o.explicit_print = explicit_print;
        return o;
    }
};

struct CommandReport {
    SourceSpan span;
    bool ok = true;
    std::vector<std::string> lines;      // Check/Eval/Fail output
    std::optional<Diagnostic> error;
};

struct FileReport {
    std::string path;
    bool ok = true;
    std::vector<CommandReport> commands;
    unsigned unify_steps = 0;
    double elapsed_ms = 0.0;
    std::shared_ptr<const Environment> final_env;

    /// The output block for this file: command lines, diagnostics, summary.
    std::string render(bool deterministic) const;
};

struct RunReport {
    std::vector<FileReport> files;
    bool ok = true;
};

/// Batch driver: loads the prelude once, then checks files against it.
/// Independent files run in parallel; the shared prelude environment is an
/// immutable value.
class Driver {
public:
    explicit Driver(RunOptions opts);

    /// The environment after processing every prelude file (cached).
    std::shared_ptr<const Environment> prelude();

    FileReport run_file(const std::string& path);
    FileReport run_source(const std::string& path, const std::string& source);
    RunReport run_files(const std::vector<std::string>& paths);

    /// Elaborate, normalize and print one term against the prelude.
    std::string eval_term(const std::string& text);

    const RunOptions& options() const { return m_opts; }

private:
    FileReport run_source_with_env(const std::string& path, const std::string& source,
                                   const Environment& start, bool traced = true);

    RunOptions m_opts;
    std::shared_ptr<const Environment> m_prelude;
    std::unique_ptr<NdjsonTraceSink> m_trace_sink;
    TraceSink* trace_sink();
};

std::string read_file(const std::string& path);  // throws IoError

/// Candidate default prelude locations relative to the working directory and
/// the executable; first existing one wins.
std::vector<std::string> default_prelude_paths(const std::string& exe_dir);

}  // namespace mtt
